"""Domain types for event mentions, the ACE ontology and the IOB codec.

All offsets are character offsets into NFC-normalized sentence text,
``start`` inclusive and ``end`` exclusive.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    InvalidRole,
    LengthMismatch,
    OffsetError,
    SpanTokenMismatch,
    UnknownEventType,
    ValidationError,
)

# words keep inner hyphens/apostrophes ("ex-banqueiro"); punctuation is split off
_TOKEN_RE = re.compile(r"\w+(?:[-'’]\w+)*|[^\w\s]")


def normalize_text(text: str) -> str:
    return unicodedata.normalize("NFC", text)


class Token(NamedTuple):
    text: str
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into word and punctuation tokens with char offsets."""
    return [Token(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    text: str

    @classmethod
    def of(cls, source: str, start: int, end: int) -> Span:
        """Cut a span out of ``source``, checking the bounds."""
        if not 0 <= start < end <= len(source):
            raise OffsetError(f"span [{start}, {end}) out of bounds for text of length {len(source)}")
        return cls(start, end, source[start:end])

    def check(self, source: str) -> None:
        if not 0 <= self.start < self.end <= len(source):
            raise OffsetError(f"span [{self.start}, {self.end}) out of bounds")
        if source[self.start:self.end] != self.text:
            raise OffsetError(
                f"span text {self.text!r} != {source[self.start:self.end]!r} at [{self.start}, {self.end})"
            )

    def shifted(self, delta: int) -> Span:
        return Span(self.start + delta, self.end + delta, self.text)

    def overlaps(self, other: Span) -> bool:
        return self.start < other.end and other.start < self.end


class EventOntology:
    """Event subtype labels and their ordered argument role sets."""

    def __init__(self, subtypes: dict[str, Sequence[str]]):
        if not subtypes:
            raise ValidationError("empty ontology")
        for label, roles in subtypes.items():
            if label.count(".") != 1:
                raise ValidationError(f"malformed label {label!r}")
            if not roles:
                raise ValidationError(f"{label} has an empty role set")
        self.subtypes: dict[str, tuple[str, ...]] = {k: tuple(v) for k, v in subtypes.items()}

    @classmethod
    def from_json(cls, path) -> EventOntology:
        with open(path, encoding="utf-8") as f:
            return cls(json.load(f))

    @property
    def labels(self) -> list[str]:
        return sorted(self.subtypes)

    @property
    def types(self) -> list[str]:
        return sorted({label.split(".")[0] for label in self.subtypes})

    def __contains__(self, label: str) -> bool:
        return label in self.subtypes

    def role_set(self, event_label: str) -> list[str]:
        try:
            return list(self.subtypes[event_label])
        except KeyError:
            raise UnknownEventType(f"unknown event type {event_label!r}") from None


@lru_cache(maxsize=None)
def load_ontology() -> EventOntology:
    """The bundled ACE-2005 ontology (``data/ontology.json``)."""
    ref = resources.files("ptevent") / "data" / "ontology.json"
    return EventOntology(json.loads(ref.read_text(encoding="utf-8")))


def role_set(event_label: str) -> list[str]:
    return load_ontology().role_set(event_label)


@dataclass(frozen=True)
class EventType:
    type: str
    subtype: str

    @classmethod
    def from_label(cls, label: str) -> EventType:
        if label not in load_ontology():
            raise UnknownEventType(f"unknown event type {label!r}")
        type_, subtype = label.split(".")
        return cls(type_, subtype)

    @property
    def label(self) -> str:
        return f"{self.type}.{self.subtype}"

    def __post_init__(self):
        if self.label not in load_ontology():
            raise UnknownEventType(f"unknown event type {self.label!r}")


@dataclass(frozen=True)
class Trigger:
    span: Span
    event_type: EventType


@dataclass(frozen=True)
class Argument:
    span: Span
    role: str


@dataclass(frozen=True)
class EventMention:
    trigger: Trigger
    arguments: tuple[Argument, ...] = ()
    sentence_id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "arguments", tuple(self.arguments))
        legal = role_set(self.trigger.event_type.label)
        for arg in self.arguments:
            if arg.role not in legal:
                raise InvalidRole(f"role {arg.role!r} not legal for {self.trigger.event_type.label}")


@dataclass(frozen=True)
class Sentence:
    """A sentence with its tokens and gold (or projected) event mentions.

    ``text`` must already be NFC-normalized; use :func:`make_sentence` to build one
    from raw text.
    """

    id: str
    text: str
    tokens: tuple[Token, ...]
    mentions: tuple[EventMention, ...] = ()
    doc_id: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(Token(*t) for t in self.tokens))
        object.__setattr__(self, "mentions", tuple(self.mentions))
        if self.text != normalize_text(self.text):
            raise ValidationError(f"sentence {self.id!r} text is not NFC-normalized")
        _check_tiling(self.text, self.tokens, self.id)
        for mention in self.mentions:
            mention.trigger.span.check(self.text)
            for arg in mention.arguments:
                arg.span.check(self.text)

    def token_range(self, span: Span) -> range:
        """Indices of the tokens exactly covered by ``span``."""
        starts = [i for i, t in enumerate(self.tokens) if t.start == span.start]
        ends = [i for i, t in enumerate(self.tokens) if t.end == span.end]
        if not starts or not ends or ends[0] < starts[0]:
            raise SpanTokenMismatch(
                f"span {span.text!r} [{span.start}, {span.end}) crosses token boundaries in sentence {self.id!r}"
            )
        return range(starts[0], ends[0] + 1)

    def token_span(self, first: int, last: int) -> Span:
        """Char span covering tokens ``first..last`` inclusive."""
        return Span.of(self.text, self.tokens[first].start, self.tokens[last].end)

    @property
    def triggers(self) -> list[Trigger]:
        return [m.trigger for m in self.mentions]


def _check_tiling(text: str, tokens: Sequence[Token], sentence_id: str) -> None:
    pos = 0
    for tok in tokens:
        if tok.start < pos or tok.end <= tok.start:
            raise ValidationError(f"sentence {sentence_id!r}: token offsets not strictly increasing")
        if text[tok.start:tok.end] != tok.text:
            raise OffsetError(f"sentence {sentence_id!r}: token {tok.text!r} does not match text")
        if text[pos:tok.start].strip():
            raise ValidationError(
                f"sentence {sentence_id!r}: text {text[pos:tok.start]!r} is not covered by any token"
            )
        pos = tok.end
    if text[pos:].strip():
        raise ValidationError(f"sentence {sentence_id!r}: trailing text {text[pos:]!r} is not covered by any token")


def make_sentence(id: str, text: str, mentions: Iterable[EventMention] = (), doc_id: str | None = None) -> Sentence:
    text = normalize_text(text)
    return Sentence(id, text, tuple(tokenize(text)), tuple(mentions), doc_id)


def locate_words(text: str, words: Sequence[str], sentence_id: str = "") -> list[Token]:
    """Find pre-tokenized ``words`` in ``text`` left to right."""
    tokens = []
    pos = 0
    for word in words:
        word = normalize_text(word)
        start = text.find(word, pos)
        if start < 0 or text[pos:start].strip():
            raise OffsetError(f"sentence {sentence_id!r}: word {word!r} not found at offset {pos}")
        tokens.append(Token(word, start, start + len(word)))
        pos = start + len(word)
    return tokens


@dataclass(frozen=True)
class Document:
    """Consecutive sentences of one source document.

    The document text is the sentences joined by single spaces, so a window of
    neighbouring sentences is always a substring of it.
    """

    id: str
    sentences: tuple[Sentence, ...]
    offsets: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        offsets, pos = [], 0
        for s in self.sentences:
            offsets.append(pos)
            pos += len(s.text) + 1
        object.__setattr__(self, "offsets", tuple(offsets))

    @property
    def text(self) -> str:
        return " ".join(s.text for s in self.sentences)

    def window(self, index: int, k: int) -> tuple[int, int]:
        """Document char range ``[start, end)`` of sentences ``index-k .. index+k``."""
        if k < 0:
            raise ValueError("context window must be >= 0")
        lo = max(0, index - k)
        hi = min(len(self.sentences) - 1, index + k)
        return self.offsets[lo], self.offsets[hi] + len(self.sentences[hi].text)

    def to_document(self, sentence_index: int, span: Span) -> Span:
        return span.shifted(self.offsets[sentence_index])

    def locate(self, span: Span) -> tuple[int, Span]:
        """Map a document span back to ``(sentence_index, sentence-relative span)``."""
        for i in range(len(self.sentences) - 1, -1, -1):
            if self.offsets[i] <= span.start:
                local = span.shifted(-self.offsets[i])
                if local.end > len(self.sentences[i].text):
                    raise OffsetError(f"span {span.text!r} crosses a sentence boundary")
                return i, local
        raise OffsetError(f"span {span.text!r} lies outside the document")


def group_documents(sentences: Iterable[Sentence]) -> list[Document]:
    """Group consecutive sentences sharing a ``doc_id``.

    Sentences without a ``doc_id`` each form a document of their own, so context
    windows never cross an unknown boundary.
    """
    docs: list[Document] = []
    current: list[Sentence] = []
    for s in sentences:
        if current and (s.doc_id is None or s.doc_id != current[-1].doc_id):
            docs.append(Document(current[0].doc_id or current[0].id, tuple(current)))
            current = []
        current.append(s)
    if current:
        docs.append(Document(current[0].doc_id or current[0].id, tuple(current)))
    return docs


# --- IOB2 codec ---------------------------------------------------------

OUTSIDE = "O"


@lru_cache(maxsize=None)
def iob_labels() -> tuple[str, ...]:
    """All legal labels in the fixed global order: O, then B-/I- per sorted label."""
    labels = [OUTSIDE]
    for label in load_ontology().labels:
        labels += [f"B-{label}", f"I-{label}"]
    return tuple(labels)


def iob_encode(sentence: Sentence) -> list[str]:
    labels = [OUTSIDE] * len(sentence.tokens)
    for trigger in sentence.triggers:
        rng = sentence.token_range(trigger.span)
        for n, i in enumerate(rng):
            labels[i] = ("B-" if n == 0 else "I-") + trigger.event_type.label
    return labels


def _split_label(tag: str) -> tuple[str, str | None]:
    if tag == OUTSIDE:
        return OUTSIDE, None
    prefix, _, label = tag.partition("-")
    if prefix not in ("B", "I") or not label:
        raise ValidationError(f"malformed IOB tag {tag!r}")
    if label not in load_ontology():
        raise UnknownEventType(f"unknown event type {label!r} in tag {tag!r}")
    return prefix, label


def iob_decode(labels: Sequence[str], tokens: Sequence[Token], text: str | None = None) -> list[Trigger]:
    """Turn a tag sequence back into triggers.

    Orphan ``I-x`` tags (no preceding ``B-x``/``I-x``) open a new trigger.
    ``text`` is the sentence the tokens were cut from; without it the span
    text is rebuilt from the token offsets, assuming single spaces.
    """
    if len(labels) != len(tokens):
        raise LengthMismatch(f"{len(labels)} labels for {len(tokens)} tokens")
    runs: list[tuple[int, int, str]] = []
    for i, tag in enumerate(labels):
        prefix, label = _split_label(tag)
        if label is None:
            continue
        if prefix == "I" and runs and runs[-1][1] == i - 1 and runs[-1][2] == label:
            runs[-1] = (runs[-1][0], i, label)
        else:
            runs.append((i, i, label))
    triggers = []
    for first, last, label in runs:
        start, end = tokens[first].start, tokens[last].end
        if text is not None:
            span = Span.of(text, start, end)
        else:
            span = Span(start, end, _rebuild(tokens[first:last + 1]))
        triggers.append(Trigger(span, EventType.from_label(label)))
    return triggers


def _rebuild(tokens: Sequence[Token]) -> str:
    out = tokens[0].text
    for prev, tok in zip(tokens, tokens[1:]):
        out += " " * (tok.start - prev.end) + tok.text
    return out
