"""
Exact-match scoring and near misses
===================================

A predicted argument earns credit only if sentence, offsets and role all match
a gold argument.  Overlapping but inexact predictions are listed as near misses
and never change precision, recall or F1.
"""

# %%
from ptevent.predictions import ArgumentRecord
from ptevent.scorer import format_table, score_arguments

sentence = "O tribunal condenou o ex-banqueiro sênior Callum McCarthy por fraude."
gold_text = "ex-banqueiro sênior Callum McCarthy"
g = sentence.index(gold_text)
gold = [ArgumentRecord("s10", g, g + len(gold_text), "Defendant", gold_text)]

# %%
# The prediction includes the determiner "o" and gets no credit.
pred = [ArgumentRecord("s10", g - 2, g + len(gold_text), "Defendant", sentence[g - 2:g + len(gold_text)])]
report = score_arguments(gold, pred)
print(report.correct, report.f1)
print(report.near_misses[0].overlap)

# %%
# Identification ignores the role, classification does not.
wrong_role = [ArgumentRecord("s10", g, g + len(gold_text), "Adjudicator")]
print(format_table({"Argument": score_arguments(gold, wrong_role)}))
