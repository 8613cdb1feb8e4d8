import os
import socket
from importlib import resources

import pytest

from ptevent.corpus import Argument, EventMention, EventType, Trigger, make_sentence

SYNTHETIC = str(resources.files("ptevent") / "data" / "synthetic")
GOLDEN = os.path.join(os.path.dirname(__file__), "golden")

ELVIS = "Elvis Presley morreu de ataque cardíaco em 1977, Memphis, Tennessee."


def span_of(sentence, text, occurrence=0):
    """Token-aligned span of the n-th occurrence of ``text`` in ``sentence``."""
    start = -1
    for _ in range(occurrence + 1):
        start = sentence.text.index(text, start + 1)
    first = next(i for i, t in enumerate(sentence.tokens) if t.start == start)
    last = next(i for i, t in enumerate(sentence.tokens) if t.end == start + len(text))
    return sentence.token_span(first, last)


@pytest.fixture
def elvis():
    bare = make_sentence("s01", ELVIS, doc_id="d1")
    mention = EventMention(
        Trigger(span_of(bare, "morreu"), EventType.from_label("Life.Die")),
        (
            Argument(span_of(bare, "Elvis Presley"), "Victim"),
            Argument(span_of(bare, "em 1977"), "Time"),
            Argument(span_of(bare, "Memphis, Tennessee"), "Place"),
        ),
        "s01",
    )
    return make_sentence("s01", ELVIS, [mention], doc_id="d1")


@pytest.fixture
def synthetic_dir():
    return SYNTHETIC


@pytest.fixture
def no_network(monkeypatch):
    def refuse(*args, **kwargs):
        raise AssertionError("network access attempted")

    monkeypatch.setattr(socket.socket, "connect", refuse)
    monkeypatch.setattr(socket, "create_connection", refuse)


# --- acceptance summary: one line per criterion ---------------------------

_acceptance = []


def pytest_runtest_logreport(report):
    if "acceptance" not in report.keywords:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{outcome.upper():7s} {name}")
