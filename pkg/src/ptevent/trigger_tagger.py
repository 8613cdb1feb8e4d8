"""Trigger training data and trigger decoding from a token-classification backend."""

from __future__ import annotations

import os
from typing import Iterable, Protocol, Sequence

import numpy as np

from .corpus import OUTSIDE, Sentence, Trigger, iob_decode, iob_encode, iob_labels
from .errors import BackendError
from .ingestion import Corpus, write_conll_iob


class TokenLabelBackend(Protocol):
    """Scores every word over :func:`iob_labels` (shape ``(n_tokens, 67)``).

    Subword pooling is the adapter's job; the core only sees words.
    """

    def predict(self, tokens: Sequence[str]) -> np.ndarray: ...


def write_label_inventory(path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write("".join(label + "\n" for label in iob_labels()))


def emit_trigger_training(corpus: Corpus, path, skip_sentence_ids: Iterable[str] = (), labels_path=None) -> None:
    """Write the CoNLL-IOB trigger training file plus ``labels.txt`` beside it.

    Mentions whose triggers failed alignment are already absent from a
    projected corpus, so their sentences come out with O labels only.  Pass
    ``skip_sentence_ids`` (e.g. ``report.unaligned_sentence_ids()``) to drop
    those sentences instead.
    """
    skip = set(skip_sentence_ids)
    write_conll_iob([s for s in corpus.sentences if s.id not in skip], path)
    if labels_path is None:
        labels_path = os.path.join(os.path.dirname(os.path.abspath(path)), "labels.txt")
    write_label_inventory(labels_path)


def decode_scores(scores, n_tokens: int) -> list[str]:
    scores = np.asarray(scores, dtype=float)
    labels = iob_labels()
    if scores.shape != (n_tokens, len(labels)):
        raise ValueError(f"expected scores of shape {(n_tokens, len(labels))}, got {scores.shape}")
    if not np.all(np.isfinite(scores)):
        raise ValueError("non-finite label scores")
    # argmax returns the first maximum, i.e. the lower label index on ties
    return [labels[i] for i in scores.argmax(axis=1)] if n_tokens else []


def predict_triggers(sentence: Sentence, backend: TokenLabelBackend) -> list[Trigger]:
    words = [t.text for t in sentence.tokens]
    try:
        labels = decode_scores(backend.predict(words), len(words))
    except Exception as exc:
        raise BackendError(f"trigger backend failed on sentence {sentence.id!r}: {exc}") from exc
    return iob_decode(labels, sentence.tokens, sentence.text)


# --- mock backends ------------------------------------------------------


def one_hot(labels: Sequence[str]) -> np.ndarray:
    index = {label: i for i, label in enumerate(iob_labels())}
    out = np.zeros((len(labels), len(index)))
    for row, label in enumerate(labels):
        out[row, index[label]] = 1.0
    return out


class OracleTokenBackend:
    """Replays gold labels for sentences it was built from; unseen input is all O."""

    def __init__(self, sentences: Iterable[Sentence]):
        self.gold = {tuple(t.text for t in s.tokens): iob_encode(s) for s in sentences}

    def predict(self, tokens):
        return one_hot(self.gold.get(tuple(tokens), [OUTSIDE] * len(tokens)))


class ConstantBackend:
    """Predicts the same label for every token."""

    def __init__(self, label: str = OUTSIDE):
        self.label = label

    def predict(self, tokens):
        return one_hot([self.label] * len(tokens))


class ScriptedTokenBackend:
    def __init__(self, labels: Sequence[str]):
        self.labels = list(labels)

    def predict(self, tokens):
        return one_hot(self.labels)
