"""Prediction JSON: the hand-off format between extraction and scoring.

A file is a list of per-sentence records::

    {"sentence_id", "doc_id",
     "triggers":  [{"text", "start", "end", "event_type"}],
     "arguments": [{"trigger_ref", "role", "text", "start", "end", "sentence_id"}]}

Trigger offsets are relative to the record's sentence.  Argument offsets are
relative to the argument's own ``sentence_id``, which differs from the
record's when a context window reached into a neighbouring sentence.
"""

from __future__ import annotations

import json
from typing import NamedTuple

from .errors import FormatError
from .ingestion import Corpus, _load_json, parse_ace_record


class TriggerRecord(NamedTuple):
    sentence_id: str
    start: int
    end: int
    label: str
    text: str = ""

    def key(self, identification: bool = False):
        return (self.sentence_id, self.start, self.end) if identification else self[:4]


class ArgumentRecord(NamedTuple):
    sentence_id: str
    start: int
    end: int
    role: str
    text: str = ""

    def key(self, identification: bool = False):
        return (self.sentence_id, self.start, self.end) if identification else self[:4]


def corpus_records(corpus: Corpus) -> list[dict]:
    """Gold annotations of ``corpus`` in prediction-record shape."""
    records = []
    for s in corpus.sentences:
        record = {"sentence_id": s.id, "doc_id": s.doc_id or s.id, "triggers": [], "arguments": []}
        for ref, m in enumerate(s.mentions):
            t = m.trigger.span
            record["triggers"].append({"text": t.text, "start": t.start, "end": t.end, "event_type": m.trigger.event_type.label})
            for a in m.arguments:
                record["arguments"].append({
                    "trigger_ref": ref, "role": a.role, "text": a.span.text,
                    "start": a.span.start, "end": a.span.end, "sentence_id": s.id,
                })
        records.append(record)
    return records


def write_predictions(records: list[dict], path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(records, f, ensure_ascii=False, indent=2)
        f.write("\n")


def load_records(path) -> list[dict]:
    """Read prediction JSON, or preprocessed-ACE JSON converted to that shape."""
    data = _load_json(path)
    if not isinstance(data, list):
        raise FormatError(f"{path}: expected a list of records")
    if data and "golden-event-mentions" in data[0]:
        return corpus_records(Corpus(tuple(parse_ace_record(r, i) for i, r in enumerate(data))))
    return data


def flatten(records: list[dict]) -> tuple[list[TriggerRecord], list[ArgumentRecord]]:
    triggers, arguments = [], []
    try:
        for r in records:
            sid = r["sentence_id"]
            for t in r.get("triggers", []):
                triggers.append(TriggerRecord(sid, int(t["start"]), int(t["end"]), t["event_type"], t.get("text", "")))
            for a in r.get("arguments", []):
                arguments.append(ArgumentRecord(a.get("sentence_id", sid), int(a["start"]), int(a["end"]), a["role"],
                                                a.get("text", "")))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed prediction record: {exc!r}") from exc
    return triggers, arguments


def read_predictions(path) -> tuple[list[TriggerRecord], list[ArgumentRecord]]:
    return flatten(load_records(path))
