import json
import unicodedata

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ELVIS, span_of
from ptevent.corpus import (
    Document,
    EventMention,
    EventOntology,
    EventType,
    Span,
    Token,
    Trigger,
    group_documents,
    iob_decode,
    iob_encode,
    iob_labels,
    load_ontology,
    make_sentence,
    role_set,
    tokenize,
)
from ptevent.errors import InvalidRole, LengthMismatch, OffsetError, SpanTokenMismatch, UnknownEventType, ValidationError


def test_life_die_roles():
    assert role_set("Life.Die") == ["Agent", "Victim", "Instrument", "Time", "Place"]


def test_unknown_label():
    with pytest.raises(UnknownEventType):
        role_set("Not.AType")


def test_movement_transport_matches_data_file():
    from importlib import resources

    raw = json.loads((resources.files("ptevent") / "data" / "ontology.json").read_text(encoding="utf-8"))
    assert role_set("Movement.Transport") == raw["Movement.Transport"]
    assert role_set("Movement.Transport") == ["Agent", "Artifact", "Vehicle", "Price", "Origin", "Destination", "Time"]


def test_ontology_shape():
    onto = load_ontology()
    assert len(onto.labels) == 33
    # ACE-2005 has 8 top-level types; the ninth class of the label set is "no event"
    assert len(onto.types) == 8
    assert all(onto.role_set(label) for label in onto.labels)
    assert len(iob_labels()) == 67
    assert iob_labels()[0] == "O"


def test_ontology_rejects_empty_role_set():
    with pytest.raises(ValidationError):
        EventOntology({"Life.Die": []})


def test_tokenize_keeps_offsets():
    text = "O ex-banqueiro sênior reuniu-se, em 1977."
    toks = tokenize(text)
    assert [t.text for t in toks] == ["O", "ex-banqueiro", "sênior", "reuniu-se", ",", "em", "1977", "."]
    assert all(text[t.start:t.end] == t.text for t in toks)


def test_sentence_is_nfc_normalized():
    decomposed = unicodedata.normalize("NFD", "cardíaco")
    s = make_sentence("x", decomposed)
    assert s.text == "cardíaco"
    assert len(s.text) == 8


def test_sentence_rejects_untiled_tokens():
    with pytest.raises(ValidationError):
        from ptevent.corpus import Sentence

        Sentence("x", "a b", (Token("a", 0, 1),))


def test_span_checks():
    with pytest.raises(OffsetError):
        Span.of("abc", 2, 2)
    with pytest.raises(OffsetError):
        Span(0, 2, "xx").check("abc")


def test_illegal_role():
    s = make_sentence("x", ELVIS)
    with pytest.raises(InvalidRole):
        from ptevent.corpus import Argument

        EventMention(Trigger(span_of(s, "morreu"), EventType.from_label("Life.Die")),
                     (Argument(span_of(s, "Elvis Presley"), "Buyer"),))


def test_encode_elvis(elvis):
    labels = iob_encode(elvis)
    assert labels[:5] == ["O", "O", "B-Life.Die", "O", "O"]
    assert labels.count("O") == len(labels) - 1


def test_encode_without_mentions():
    assert set(iob_encode(make_sentence("x", ELVIS))) == {"O"}


def test_encode_two_token_trigger():
    bare = make_sentence("x", "Os rebeldes abriram fogo contra a base.")
    m = EventMention(Trigger(span_of(bare, "rebeldes abriram"), EventType.from_label("Conflict.Attack")))
    s = make_sentence("x", bare.text, [m])
    assert iob_encode(s)[:4] == ["O", "B-Conflict.Attack", "I-Conflict.Attack", "O"]


def test_encode_rejects_partial_token():
    bare = make_sentence("x", ELVIS)
    m = EventMention(Trigger(Span.of(bare.text, 14, 19), EventType.from_label("Life.Die")))  # "morre"
    s = make_sentence("x", ELVIS, [m])
    with pytest.raises(SpanTokenMismatch):
        iob_encode(s)


def test_decode_elvis(elvis):
    triggers = iob_decode(["O", "O", "B-Life.Die"] + ["O"] * (len(elvis.tokens) - 3), elvis.tokens, elvis.text)
    assert triggers == elvis.triggers
    assert triggers[0].span.text == "morreu"


def test_decode_all_outside(elvis):
    assert iob_decode(["O"] * len(elvis.tokens), elvis.tokens) == []


def test_decode_orphan_inside_is_promoted():
    toks = tokenize("morreu ontem")
    triggers = iob_decode(["I-Life.Die", "O"], toks)
    assert len(triggers) == 1
    assert triggers[0].span == Span(0, 6, "morreu")


def test_decode_label_change_splits_runs():
    toks = tokenize("a b c")
    triggers = iob_decode(["B-Life.Die", "I-Conflict.Attack", "I-Conflict.Attack"], toks, "a b c")
    assert [(t.span.text, t.event_type.label) for t in triggers] == [("a", "Life.Die"), ("b c", "Conflict.Attack")]


def test_decode_length_mismatch():
    with pytest.raises(LengthMismatch):
        iob_decode(["O"], tokenize("a b"))


def test_decode_rejects_unknown_label():
    with pytest.raises(UnknownEventType):
        iob_decode(["B-Life.Sleep"], tokenize("a"))


WORDS = st.sampled_from(["a", "casa", "morreu", "1977", ",", "ex-rei", "São", "."])


@st.composite
def tag_sequences(draw):
    n = draw(st.integers(1, 12))
    labels = draw(st.lists(st.sampled_from(iob_labels()), min_size=n, max_size=n))
    words = draw(st.lists(WORDS, min_size=n, max_size=n))
    return words, labels


@given(tag_sequences())
def test_encode_decode_roundtrip_from_tags(data):
    words, labels = data
    text = " ".join(words)
    triggers = iob_decode(labels, tokenize(text), text)
    s = make_sentence("x", text, [EventMention(t) for t in triggers])
    assert iob_decode(iob_encode(s), s.tokens, s.text) == triggers
    assert set(iob_encode(s)) <= set(iob_labels())


def test_documents_and_windows():
    a = make_sentence("a", "Um.", doc_id="d")
    b = make_sentence("b", "Dois dois.", doc_id="d")
    c = make_sentence("c", "Três.", doc_id="e")
    docs = group_documents([a, b, c])
    assert [d.id for d in docs] == ["d", "e"]
    doc = docs[0]
    assert doc.text == "Um. Dois dois."
    assert doc.window(1, 0) == (4, 14)
    assert doc.window(1, 1) == (0, 14)
    idx, local = doc.locate(Span(4, 8, "Dois"))
    assert idx == 1 and local == Span(0, 4, "Dois")


def test_sentences_without_doc_id_stay_alone():
    docs = group_documents([make_sentence("a", "Um."), make_sentence("b", "Dois.")])
    assert [len(d.sentences) for d in docs] == [1, 1]


def test_locate_rejects_boundary_crossing():
    doc = Document("d", (make_sentence("a", "Um."), make_sentence("b", "Dois.")))
    with pytest.raises(OffsetError):
        doc.locate(Span(2, 6, ". Do"))
