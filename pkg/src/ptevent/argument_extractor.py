"""Question-answering argument extraction.

For a trigger of type ``T`` every role of ``T`` is asked as a separate
contextualized question over a window of sentences.  A span-prediction
backend scores start/end positions over ``[CLS] question [SEP] context [SEP]``;
index 0 (``[CLS]``) stands for "no answer".
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from .corpus import Document, Span, Trigger, load_ontology, tokenize
from .errors import BackendError, ShapeMismatch
from .templates import corpus_qa_items, role_question
from .trigger_tagger import TokenLabelBackend, predict_triggers

CLS, SEP = "[CLS]", "[SEP]"


@dataclass(frozen=True)
class QAInput:
    question: str
    context: str
    sequence: tuple[str, ...]
    question_range: range
    context_range: range
    offset_map: dict  # sequence index -> Span in context

    def __len__(self):
        return len(self.sequence)


@dataclass(frozen=True)
class SpanLogits:
    start: np.ndarray
    end: np.ndarray


@dataclass(frozen=True)
class SpanPrediction:
    start_token: int
    end_token: int
    score: float
    char_span: Span


@dataclass(frozen=True)
class ExtractionConfig:
    max_answer_tokens: int = 30
    null_threshold: float = 0.0


class QABackend(Protocol):
    def predict(self, inp: QAInput) -> SpanLogits: ...


def assemble_input(question: str, context_text: str) -> QAInput:
    if not question or not context_text:
        raise ValueError("question and context must be non-empty")
    q_tokens = tokenize(question)
    c_tokens = tokenize(context_text)
    q0 = 1
    c0 = q0 + len(q_tokens) + 1
    sequence = (CLS, *(t.text for t in q_tokens), SEP, *(t.text for t in c_tokens), SEP)
    offset_map = {c0 + n: Span(t.start, t.end, t.text) for n, t in enumerate(c_tokens)}
    return QAInput(question, context_text, sequence, range(q0, q0 + len(q_tokens)),
                   range(c0, c0 + len(c_tokens)), offset_map)


def _check_logits(inp: QAInput, logits: SpanLogits):
    start = np.asarray(logits.start, dtype=float)
    end = np.asarray(logits.end, dtype=float)
    if start.shape != (len(inp),) or end.shape != (len(inp),):
        raise ShapeMismatch(f"logits {start.shape}/{end.shape} for a sequence of length {len(inp)}")
    return start, end


def valid_spans(inp: QAInput, logits: SpanLogits, max_answer_tokens: int = 30) -> list[SpanPrediction]:
    """All answer spans inside the context, best first.

    Ranking: higher ``start[i] + end[j]``, then shorter, then leftmost.
    """
    start, end = _check_logits(inp, logits)
    ctx = np.arange(inp.context_range.start, inp.context_range.stop)
    if len(ctx) == 0 or max_answer_tokens < 1:
        return []
    i, j = np.meshgrid(ctx, ctx, indexing="ij")
    length = j - i + 1
    keep = (length >= 1) & (length <= max_answer_tokens)
    i, j, length = i[keep], j[keep], length[keep]
    score = start[i] + end[j]
    order = np.lexsort((i, length, -score))
    out = []
    for n in order:
        a, b = int(i[n]), int(j[n])
        first, last = inp.offset_map[a], inp.offset_map[b]
        out.append(SpanPrediction(a, b, float(score[n]), Span(first.start, last.end, inp.context[first.start:last.end])))
    return out


def null_score(logits: SpanLogits) -> float:
    return float(logits.start[0] + logits.end[0])


def select_answer(candidates: Sequence[SpanPrediction], logits: SpanLogits, inp: QAInput,
                  null_threshold: float = 0.0) -> Span | None:
    """Best candidate's span, or ``None`` when the question has no answer.

    The best span must beat the ``[CLS]`` score by at least ``null_threshold``:
    ``+inf`` rejects every answer, ``-inf`` accepts whenever a candidate exists.
    """
    if not candidates:
        return None
    best = candidates[0]
    if best.score - null_score(logits) >= null_threshold:
        return best.char_span
    return None


def extract_arguments(trigger: Trigger, document: Document, sentence_index: int, context_window_k: int,
                      backend: QABackend, config: ExtractionConfig = ExtractionConfig()) -> list[tuple[str, Span]]:
    """Ask every role of the trigger's event type; returns document-anchored spans.

    Answers must lie inside a single sentence of the window.
    """
    lo, hi = document.window(sentence_index, context_window_k)
    text = document.text
    context = text[lo:hi]
    # char ranges of the window's sentences, in context coordinates
    bounds = [(document.offsets[n] - lo, document.offsets[n] - lo + len(s.text))
              for n, s in enumerate(document.sentences) if lo <= document.offsets[n] < hi]

    def same_sentence(span: Span) -> bool:
        return any(a <= span.start and span.end <= b for a, b in bounds)

    label = trigger.event_type.label
    sentence_id = document.sentences[sentence_index].id
    found = []
    for role in load_ontology().role_set(label):
        inp = assemble_input(role_question(label, role, trigger.span.text), context)
        try:
            logits = backend.predict(inp)
        except Exception as exc:
            raise BackendError(f"QA backend failed on sentence {sentence_id!r}, role {role!r}: {exc}") from exc
        candidates = [c for c in valid_spans(inp, logits, config.max_answer_tokens) if same_sentence(c.char_span)]
        span = select_answer(candidates, logits, inp, config.null_threshold)
        if span is not None:
            found.append((role, span.shifted(lo)))
    return found


# --- corpus-level extraction --------------------------------------------


def extract_document(document: Document, trigger_backend: TokenLabelBackend, qa_backend: QABackend,
                     context_window_k: int = 0, config: ExtractionConfig = ExtractionConfig()) -> list[dict]:
    """Prediction records (one per sentence) for a document."""
    records = []
    for i, sentence in enumerate(document.sentences):
        triggers = predict_triggers(sentence, trigger_backend)
        record = {
            "sentence_id": sentence.id,
            "doc_id": document.id,
            "triggers": [
                {"text": t.span.text, "start": t.span.start, "end": t.span.end, "event_type": t.event_type.label}
                for t in triggers
            ],
            "arguments": [],
        }
        for ref, trigger in enumerate(triggers):
            for role, doc_span in extract_arguments(trigger, document, i, context_window_k, qa_backend, config):
                n, local = document.locate(doc_span)
                record["arguments"].append({
                    "trigger_ref": ref,
                    "role": role,
                    "text": local.text,
                    "start": local.start,
                    "end": local.end,
                    "sentence_id": document.sentences[n].id,
                })
        records.append(record)
    return records


def extract_corpus(corpus, trigger_backend: TokenLabelBackend, qa_backend: QABackend, context_window_k: int = 0,
                   config: ExtractionConfig = ExtractionConfig(), jobs: int = 1) -> list[dict]:
    """Run extraction over all documents; output order follows the input.

    Backends are only shared across threads when ``jobs > 1``; pass reentrant
    backends in that case.
    """
    docs = corpus.documents()

    def one(doc):
        return extract_document(doc, trigger_backend, qa_backend, context_window_k, config)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(one, docs))
    else:
        parts = [one(doc) for doc in docs]
    return [record for part in parts for record in part]


# --- mock backends --------------------------------------------------------


def _peaked(n: int, start: int, end: int, high: float = 10.0) -> SpanLogits:
    s = np.zeros(n)
    e = np.zeros(n)
    s[start] = high
    e[end] = high
    return SpanLogits(s, e)


class CLSBackend:
    """Always prefers the null answer."""

    def predict(self, inp: QAInput) -> SpanLogits:
        return _peaked(len(inp), 0, 0)


class OracleQABackend:
    """Answers from a table ``(question, context) -> [(char_start, char_end), ...]``.

    Only the first listed answer is used; unknown questions get the null answer.
    """

    def __init__(self, answers: dict[tuple[str, str], list[tuple[int, int]]]):
        self.answers = answers

    @classmethod
    def from_corpus(cls, corpus, context_window: int = 0) -> OracleQABackend:
        table: dict[tuple[str, str], list[tuple[int, int]]] = {}
        for item in corpus_qa_items(corpus, context_window):
            spans = [(a.answer_start, a.answer_start + len(a.text)) for a in item.answers]
            table.setdefault((item.question, item.context), []).extend(spans)
        return cls(table)

    def predict(self, inp: QAInput) -> SpanLogits:
        spans = self.answers.get((inp.question, inp.context))
        if not spans:
            return _peaked(len(inp), 0, 0)
        char_start, char_end = spans[0]
        first = last = None
        for idx, span in inp.offset_map.items():
            if span.start == char_start:
                first = idx
            if span.end == char_end:
                last = idx
        if first is None or last is None:
            return _peaked(len(inp), 0, 0)
        return _peaked(len(inp), first, last)
