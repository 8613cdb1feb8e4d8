"""
Arguments by question answering
===============================

Every role of the trigger's event type becomes a Portuguese question.  A span
predictor reads ``[CLS] question [SEP] context [SEP]`` and either points at an
answer span or at ``[CLS]``, which means "no answer".
"""

# %%
import numpy as np

from ptevent.corpus import Argument, EventMention, EventType, Trigger, make_sentence
from ptevent.templates import generate_qa_items, question_for, role_question

print(question_for("Life.Die", "Victim"), "|", role_question("Life.Die", "Time", "morreu"))

text = "Elvis Presley morreu de ataque cardíaco em 1977, Memphis, Tennessee."
bare = make_sentence("s01", text)
mention = EventMention(
    Trigger(bare.token_span(2, 2), EventType.from_label("Life.Die")),
    (Argument(bare.token_span(0, 1), "Victim"), Argument(bare.token_span(6, 7), "Time"),
     Argument(bare.token_span(9, 11), "Place")),
    "s01",
)

# %%
# Training items: roles without a gold argument become impossible questions.
for item in generate_qa_items(mention, text, 0):
    print(item.id, item.is_impossible, [a.text for a in item.answers])

# %%
# Span selection on hand-made logits.  Candidates never touch the question
# tokens and are ranked by start + end score.
from ptevent.argument_extractor import SpanLogits, assemble_input, select_answer, valid_spans

inp = assemble_input(role_question("Life.Die", "Time", "morreu"), text)
start, end = np.zeros(len(inp)), np.zeros(len(inp))
em = next(i for i, s in inp.offset_map.items() if s.text == "em")
year = next(i for i, s in inp.offset_map.items() if s.text == "1977")
start[em], end[year] = 4.0, 4.0
start[0], end[0] = 3.0, 3.0  # the no-answer score
candidates = valid_spans(inp, SpanLogits(start, end))
print(candidates[0])
print(select_answer(candidates, SpanLogits(start, end), inp, null_threshold=0.0))
print(select_answer(candidates, SpanLogits(start, end), inp, null_threshold=5.0))

# %%
# Full extraction with the oracle mocks, then exact-match scoring.
from ptevent.argument_extractor import OracleQABackend, extract_corpus
from ptevent.ingestion import Corpus
from ptevent.predictions import corpus_records, flatten
from ptevent.scorer import format_table, score_arguments, score_triggers
from ptevent.trigger_tagger import OracleTokenBackend

corpus = Corpus((make_sentence("s01", text, [mention]),))
records = extract_corpus(corpus, OracleTokenBackend(corpus.sentences), OracleQABackend.from_corpus(corpus))
gold_t, gold_a = flatten(corpus_records(corpus))
pred_t, pred_a = flatten(records)
print(format_table({"Trigger": score_triggers(gold_t, pred_t), "Argument": score_arguments(gold_a, pred_a)}))
