"""
Triggers as IOB token labels
============================

Trigger detection is token classification over 67 labels: ``O`` plus ``B-`` and
``I-`` for each of the 33 ACE event subtypes.
"""

# %%
from ptevent.corpus import EventMention, EventType, Trigger, iob_decode, iob_encode, iob_labels, make_sentence

print(len(iob_labels()), iob_labels()[:3])

text = "Elvis Presley morreu de ataque cardíaco em 1977, Memphis, Tennessee."
bare = make_sentence("s01", text)
died = bare.token_span(2, 2)
sentence = make_sentence("s01", text, [EventMention(Trigger(died, EventType.from_label("Life.Die")))])
labels = iob_encode(sentence)
print(list(zip([t.text for t in sentence.tokens], labels))[:4])

# %%
# Decoding turns label runs back into character spans.  An ``I-`` tag with no
# open run of the same type starts a new trigger.
print(iob_decode(labels, sentence.tokens, text))
print(iob_decode(["I-Life.Die"] + ["O"] * (len(labels) - 1), sentence.tokens, text))

# %%
# A backend scores every word over the label inventory; decoding is a per-word
# argmax.  The oracle mock replays gold labels.
from ptevent.trigger_tagger import OracleTokenBackend, decode_scores, predict_triggers

backend = OracleTokenBackend([sentence])
scores = backend.predict([t.text for t in sentence.tokens])
print(scores.shape, decode_scores(scores, len(sentence.tokens))[:3])
print(predict_triggers(sentence, backend))

# %%
# Training data for a real tagger is CoNLL-style, one ``word<TAB>label`` per line.
import tempfile, os
from ptevent.ingestion import Corpus
from ptevent.trigger_tagger import emit_trigger_training

with tempfile.TemporaryDirectory() as tmp:
    emit_trigger_training(Corpus((sentence,)), os.path.join(tmp, "train.conll"))
    print(open(os.path.join(tmp, "train.conll"), encoding="utf-8").read()[:60])
