import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ptevent.predictions import ArgumentRecord, TriggerRecord, flatten
from ptevent.errors import FormatError
from ptevent.scorer import format_table, greedy_match, score_arguments, score_triggers

GOLD_ARG = "ex-banqueiro sênior Callum McCarthy"
SENT = "O " + GOLD_ARG + " reuniu-se com o ministro."


def t(sid, start, end, label="Life.Die"):
    return TriggerRecord(sid, start, end, label)


def test_identity():
    gold = [t("s", 0, 5)]
    rep = score_triggers(gold, gold)
    assert (rep.precision, rep.recall, rep.f1) == (1.0, 1.0, 1.0)


def test_two_predicted_one_correct_four_gold():
    gold = [t("s", 0, 1), t("s", 2, 3), t("s", 4, 5), t("s", 6, 7)]
    pred = [t("s", 0, 1), t("s", 8, 9)]
    rep = score_triggers(gold, pred)
    assert (rep.correct, rep.predicted, rep.gold) == (1, 2, 4)
    assert rep.precision == 0.5 and rep.recall == 0.25
    assert rep.f1 == pytest.approx(1 / 3, abs=1e-12)


def test_wrong_subtype_gets_no_credit():
    rep = score_triggers([t("s", 0, 5, "Life.Die")], [t("s", 0, 5, "Life.Injure")])
    assert rep.correct == 0
    assert rep.identification.correct == 1


def test_determiner_near_miss():
    g_start = SENT.index(GOLD_ARG)
    gold = [ArgumentRecord("s10", g_start, g_start + len(GOLD_ARG), "Entity", GOLD_ARG)]
    pred = [ArgumentRecord("s10", 0, g_start + len(GOLD_ARG), "Entity", "O " + GOLD_ARG)]
    rep = score_arguments(gold, pred)
    assert rep.correct == 0 and rep.f1 == 0.0
    assert len(rep.near_misses) == 1
    assert rep.near_misses[0].overlap == "pred_contains_gold"
    assert rep.near_misses[0].gold == tuple(gold[0])


def test_near_miss_kinds_and_role_rule():
    gold = [ArgumentRecord("s", 5, 10, "Victim")]
    assert score_arguments(gold, [ArgumentRecord("s", 6, 9, "Victim")]).near_misses[0].overlap == "gold_contains_pred"
    assert score_arguments(gold, [ArgumentRecord("s", 8, 12, "Victim")]).near_misses[0].overlap == "partial"
    # different role, other sentence, or disjoint: not a near miss
    assert score_arguments(gold, [ArgumentRecord("s", 6, 9, "Place")]).near_misses == ()
    assert score_arguments(gold, [ArgumentRecord("x", 6, 9, "Victim")]).near_misses == ()
    assert score_arguments(gold, [ArgumentRecord("s", 10, 12, "Victim")]).near_misses == ()


def test_right_span_wrong_role():
    rep = score_arguments([ArgumentRecord("s", 0, 3, "Victim")], [ArgumentRecord("s", 0, 3, "Agent")])
    assert rep.correct == 0 and rep.identification.f1 == 1.0


def test_duplicates_are_not_double_counted():
    rep = score_triggers([t("s", 0, 1)], [t("s", 0, 1), t("s", 0, 1)])
    assert rep.correct == 1 and rep.precision == 0.5


def test_empty_sides():
    assert score_triggers([], []).f1 == 0.0
    assert score_triggers([t("s", 0, 1)], []).f1 == 0.0
    assert score_triggers([], [t("s", 0, 1)]).f1 == 0.0


KEYS = st.lists(st.tuples(st.sampled_from("ab"), st.integers(0, 2), st.sampled_from(["Life.Die", "Life.Injure"])),
                max_size=6)


@given(KEYS, KEYS)
def test_f1_is_one_iff_multisets_equal(g, p):
    gold = [t(s, a, a + 1, l) for s, a, l in g]
    pred = [t(s, a, a + 1, l) for s, a, l in p]
    rep = score_triggers(gold, pred)
    assert (rep.f1 == 1.0) == (bool(gold) and sorted(gold) == sorted(pred))
    for n in rep.near_misses:
        assert n.gold[1] < n.pred[2] and n.pred[1] < n.gold[2]


@given(KEYS, KEYS, st.randoms())
def test_permutation_invariance(g, p, rnd):
    gold = [t(s, a, a + 1, l) for s, a, l in g]
    pred = [t(s, a, a + 1, l) for s, a, l in p]
    base = score_triggers(gold, pred)
    rnd.shuffle(gold)
    rnd.shuffle(pred)
    again = score_triggers(gold, pred)
    assert (again.correct, again.predicted, again.gold) == (base.correct, base.predicted, base.gold)


def test_greedy_equals_bruteforce_small():
    rng = random.Random(3)
    for _ in range(300):
        gold = [rng.choice("abc") for _ in range(rng.randint(0, 6))]
        pred = [rng.choice("abcd") for _ in range(rng.randint(0, 6))]
        matched = sum(m is not None for m in greedy_match(gold, pred))
        assert matched == oracles.max_matching(gold, pred)


def test_format_table():
    rep = score_triggers([t("s", 0, 1), t("s", 2, 3), t("s", 4, 5)], [t("s", 0, 1)])
    lines = format_table({"Trigger": rep}).splitlines()
    assert lines[0].split()[:4] == ["Task", "P", "R", "F1"]
    assert lines[1].split()[:5] == ["Trigger", "classification", "100.0", "33.3", "50.0"]
    assert lines[2].split()[:2] == ["Trigger", "identification"]


def test_flatten_rejects_malformed():
    with pytest.raises(FormatError):
        flatten([{"sentence_id": "s", "triggers": [{"start": 0}]}])
