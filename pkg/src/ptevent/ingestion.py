"""Readers and writers for preprocessed-ACE JSON, CoNLL-IOB and SQuAD-v2 JSON."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .corpus import (
    Argument,
    EventMention,
    EventType,
    Sentence,
    Span,
    Trigger,
    group_documents,
    iob_encode,
    iob_labels,
    locate_words,
    normalize_text,
)
from .errors import FormatError, OffsetError, ValidationError

SPLITS = ("train", "dev", "test", "unsplit")


@dataclass(frozen=True)
class Corpus:
    sentences: tuple[Sentence, ...] = ()
    split: str = "unsplit"
    language: str = "en"

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        if self.split not in SPLITS:
            raise ValidationError(f"unknown split {self.split!r}")
        seen = set()
        for s in self.sentences:
            if s.id in seen:
                raise ValidationError(f"duplicate sentence id {s.id!r}")
            seen.add(s.id)

    def __len__(self):
        return len(self.sentences)

    def documents(self):
        return group_documents(self.sentences)


def _dump_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, ensure_ascii=False, indent=2)
        f.write("\n")


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc


# --- preprocessed ACE JSON ---------------------------------------------


def normalize_role(role: str) -> str:
    # ACE time sub-roles (Time-Within, Time-At-End, ...) collapse into Time
    return "Time" if role.startswith("Time-") else role


def _word_span(text, tokens, obj, sentence_id) -> Span:
    try:
        start, end = int(obj["start"]), int(obj["end"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"sentence {sentence_id!r}: bad span record {obj!r}") from exc
    if not 0 <= start < end <= len(tokens):
        raise OffsetError(f"sentence {sentence_id!r}: word span [{start}, {end}) outside {len(tokens)} words")
    span = Span.of(text, tokens[start].start, tokens[end - 1].end)
    claimed = obj.get("text")
    if claimed is not None and "".join(normalize_text(claimed).split()) != "".join(span.text.split()):
        raise OffsetError(f"sentence {sentence_id!r}: span text {claimed!r} != {span.text!r}")
    return span


def parse_ace_record(record: dict, index: int) -> Sentence:
    if not isinstance(record, dict) or "sentence" not in record or "words" not in record:
        raise FormatError(f"record {index}: expected an object with 'sentence' and 'words'")
    sid = str(record.get("id", f"s{index}"))
    text = normalize_text(record["sentence"])
    tokens = locate_words(text, record["words"], sid)
    mentions = []
    for m in record.get("golden-event-mentions", []):
        try:
            event_type = EventType.from_label(m["event_type"])
            trigger = Trigger(_word_span(text, tokens, m["trigger"], sid), event_type)
            args = tuple(
                Argument(_word_span(text, tokens, a, sid), normalize_role(a["role"])) for a in m.get("arguments", [])
            )
        except ValidationError:
            raise
        except (KeyError, TypeError) as exc:
            raise FormatError(f"sentence {sid!r}: malformed event mention {m!r}") from exc
        mentions.append(EventMention(trigger, args, sid))
    return Sentence(sid, text, tuple(tokens), tuple(mentions), record.get("doc_id"))


def read_ace_json(path, split: str = "unsplit", language: str = "en") -> Corpus:
    data = _load_json(path)
    if not isinstance(data, list):
        raise FormatError(f"{path}: top level must be a list of sentence records")
    return Corpus(tuple(parse_ace_record(r, i) for i, r in enumerate(data)), split, language)


def sentence_record(sentence: Sentence) -> dict:
    def word_span(span):
        rng = sentence.token_range(span)
        return {"text": span.text, "start": rng.start, "end": rng.stop}

    record = {"id": sentence.id}
    if sentence.doc_id is not None:
        record["doc_id"] = sentence.doc_id
    record["sentence"] = sentence.text
    record["words"] = [t.text for t in sentence.tokens]
    record["golden-event-mentions"] = [
        {
            "trigger": word_span(m.trigger.span),
            "event_type": m.trigger.event_type.label,
            "arguments": [dict(word_span(a.span), role=a.role) for a in m.arguments],
        }
        for m in sentence.mentions
    ]
    return record


def write_ace_json(corpus: Corpus, path) -> None:
    _dump_json([sentence_record(s) for s in corpus.sentences], path)


# --- CoNLL IOB ------------------------------------------------------------


def conll_lines(sentence: Sentence) -> list[str]:
    return [f"{tok.text}\t{label}\n" for tok, label in zip(sentence.tokens, iob_encode(sentence))]


def write_conll_iob(corpus: Corpus | Iterable[Sentence], path) -> None:
    sentences = corpus.sentences if isinstance(corpus, Corpus) else corpus
    blocks = ["".join(conll_lines(s)) for s in sentences if s.tokens]
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write("\n".join(blocks))


def read_conll_iob(path) -> Iterator[tuple[list[str], list[str]]]:
    legal = set(iob_labels())
    tokens: list[str] = []
    labels: list[str] = []
    with open(path, encoding="utf-8", newline="") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line:
                if tokens:
                    yield tokens, labels
                tokens, labels = [], []
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0]:
                raise FormatError(f"{path}:{lineno}: expected 'token<TAB>label'")
            if parts[1] not in legal:
                raise FormatError(f"{path}:{lineno}: unknown label {parts[1]!r}")
            tokens.append(parts[0])
            labels.append(parts[1])
    if tokens:
        yield tokens, labels


# --- SQuAD v2 -------------------------------------------------------------


class Answer(NamedTuple):
    text: str
    answer_start: int


@dataclass(frozen=True)
class QAItem:
    id: str
    question: str
    context: str
    answers: tuple[Answer, ...] = ()
    is_impossible: bool = False
    title: str = ""

    def __post_init__(self):
        object.__setattr__(self, "answers", tuple(Answer(*a) for a in self.answers))
        if self.is_impossible and self.answers:
            raise ValidationError(f"QA item {self.id!r} is impossible but has answers")
        if not self.is_impossible and not self.answers:
            raise ValidationError(f"QA item {self.id!r} is answerable but has no answers")
        for a in self.answers:
            if self.context[a.answer_start:a.answer_start + len(a.text)] != a.text or not a.text:
                raise OffsetError(f"QA item {self.id!r}: answer {a.text!r} not found at {a.answer_start}")


def write_squad_json(items: Iterable[QAItem], path) -> None:
    data: list[dict] = []
    for item in items:
        if not data or data[-1]["title"] != item.title:
            data.append({"title": item.title, "paragraphs": []})
        paragraphs = data[-1]["paragraphs"]
        if not paragraphs or paragraphs[-1]["context"] != item.context:
            paragraphs.append({"context": item.context, "qas": []})
        paragraphs[-1]["qas"].append(
            {
                "id": item.id,
                "question": item.question,
                "is_impossible": item.is_impossible,
                "answers": [{"text": a.text, "answer_start": a.answer_start} for a in item.answers],
            }
        )
    _dump_json({"version": "v2.0", "data": data}, path)


def read_squad_json(path) -> list[QAItem]:
    doc = _load_json(path)
    items = []
    try:
        for article in doc["data"]:
            for paragraph in article["paragraphs"]:
                for qa in paragraph["qas"]:
                    answers = tuple(Answer(a["text"], int(a["answer_start"])) for a in qa.get("answers", []))
                    impossible = bool(qa.get("is_impossible", False))
                    if impossible:
                        answers = ()  # v2 files may still list plausible answers
                    items.append(
                        QAItem(qa["id"], qa["question"], paragraph["context"], answers, impossible, article.get("title", ""))
                    )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: not SQuAD-v2 shaped ({exc!r})") from exc
    return items


# --- statistics -----------------------------------------------------------


def corpus_stats(corpus: Corpus) -> dict[str, int]:
    mentions = [m for s in corpus.sentences for m in s.mentions]
    return {
        "sentences": len(corpus.sentences),
        "mentions": len(mentions),
        "triggers": len(mentions),
        "arguments": sum(len(m.arguments) for m in mentions),
        "distinct_trigger_surfaces": len({normalize_text(m.trigger.span.text) for m in mentions}),
    }


def read_corpus_dir(directory, language: str = "pt") -> dict[str, Corpus]:
    """Load ``train.json``/``dev.json``/``test.json`` where present."""
    out = {}
    for split in ("train", "dev", "test"):
        path = os.path.join(directory, f"{split}.json")
        if os.path.exists(path):
            out[split] = read_ace_json(path, split, language)
    return out
