"""Exact-match precision/recall/F1 for triggers and arguments.

A trigger counts only if its sentence, offsets and event type all match a gold
trigger; an argument only if sentence, offsets and role match.  Overlapping
but inexact predictions are listed as near misses without earning credit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .predictions import ArgumentRecord, TriggerRecord


@dataclass(frozen=True)
class NearMiss:
    gold: tuple
    pred: tuple
    overlap: str  # pred_contains_gold | gold_contains_pred | partial


@dataclass(frozen=True)
class ScoreReport:
    correct: int
    predicted: int
    gold: int
    near_misses: tuple[NearMiss, ...] = ()
    identification: ScoreReport | None = field(default=None, compare=False)

    @property
    def precision(self) -> float:
        return self.correct / self.predicted if self.predicted else 0.0

    @property
    def recall(self) -> float:
        return self.correct / self.gold if self.gold else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    def to_json(self) -> dict:
        out = {
            "precision": self.precision, "recall": self.recall, "f1": self.f1,
            "correct": self.correct, "predicted": self.predicted, "gold": self.gold,
            "near_misses": [
                {"gold": list(n.gold), "pred": list(n.pred), "overlap": n.overlap} for n in self.near_misses
            ],
        }
        if self.identification is not None:
            out["identification"] = self.identification.to_json()
        return out


def greedy_match(gold_keys: Sequence, pred_keys: Sequence) -> list[int | None]:
    """For each prediction (in order) the index of the gold item it consumes, or None."""
    free: dict = {}
    for i, key in enumerate(gold_keys):
        free.setdefault(key, []).append(i)
    out = []
    for key in pred_keys:
        slots = free.get(key)
        out.append(slots.pop(0) if slots else None)
    return out


def _overlap_kind(g, p) -> str | None:
    # records are (sentence_id, start, end, label, ...)
    if g[0] != p[0] or not (p[1] < g[2] and g[1] < p[2]) or (g[1], g[2]) == (p[1], p[2]):
        return None
    if p[1] <= g[1] and g[2] <= p[2]:
        return "pred_contains_gold"
    if g[1] <= p[1] and p[2] <= g[2]:
        return "gold_contains_pred"
    return "partial"


def _score(gold: Sequence, pred: Sequence, identification: bool, with_id_column: bool) -> ScoreReport:
    matches = greedy_match([g.key(identification) for g in gold], [p.key(identification) for p in pred])
    matched_gold = {m for m in matches if m is not None}
    near = []
    if not identification:
        open_gold = [g for i, g in enumerate(gold) if i not in matched_gold]
        for p, m in zip(pred, matches):
            if m is not None:
                continue
            for g in open_gold:
                kind = _overlap_kind(g, p)
                if kind and g[3] == p[3]:
                    near.append(NearMiss(tuple(g), tuple(p), kind))
    ident = _score(gold, pred, True, False) if with_id_column else None
    return ScoreReport(len(matched_gold), len(pred), len(gold), tuple(near), ident)


def score_triggers(gold: Sequence[TriggerRecord], pred: Sequence[TriggerRecord]) -> ScoreReport:
    return _score(list(gold), list(pred), False, True)


def score_arguments(gold: Sequence[ArgumentRecord], pred: Sequence[ArgumentRecord]) -> ScoreReport:
    return _score(list(gold), list(pred), False, True)


def format_table(reports: dict[str, ScoreReport]) -> str:
    """Plain-text P/R/F1 table, percentages to one decimal."""
    rows = []
    for name, rep in reports.items():
        rows.append((f"{name} classification", rep))
        if rep.identification is not None:
            rows.append((f"{name} identification", rep.identification))
    width = max(len("Task"), *(len(r[0]) for r in rows))
    lines = [f"{'Task':<{width}}  {'P':>5}  {'R':>5}  {'F1':>5}  {'correct':>7}  {'pred':>5}  {'gold':>5}"]
    for name, rep in rows:
        lines.append(
            f"{name:<{width}}  {100 * rep.precision:5.1f}  {100 * rep.recall:5.1f}  {100 * rep.f1:5.1f}"
            f"  {rep.correct:7d}  {rep.predicted:5d}  {rep.gold:5d}"
        )
    return "\n".join(lines) + "\n"
