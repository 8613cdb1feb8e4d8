"""
Projecting English annotations onto Portuguese
==============================================

Each English sentence and each of its annotation texts are machine-translated
separately.  The translated annotation is then located in the translated
sentence by a cascade of matchers:

    exact -> lemma -> dictionary -> aligner -> fuzzy

The demo replays recorded translator, dictionary and aligner responses from the
bundled caches, so it runs offline.
"""

# %%
import json
import os
from importlib import resources

from ptevent.alignment import (
    AlignmentClients,
    CachedDictionaryClient,
    CachedMTClient,
    CachedWordAligner,
    JsonCache,
    TableLemmatizer,
    align_translations,
    translate_sentences,
)
from ptevent.ingestion import corpus_stats, read_ace_json

data = str(resources.files("ptevent") / "data" / "synthetic")
english = read_ace_json(os.path.join(data, "en_mini.json"))
print(corpus_stats(english))

# %%
# With no inner client the cached wrappers only replay; a cache miss raises.
def cache(name):
    return JsonCache(os.path.join(data, f"en_mini.{name}_cache.json"))

with open(os.path.join(data, "en_mini.lemmas.json"), encoding="utf-8") as f:
    lemmas = TableLemmatizer(json.load(f))

translations = translate_sentences(english, CachedMTClient(None, cache("mt")))
for tr in translations[:2]:
    print(tr.sentence_id, tr.text, tr.annotations)

# %%
# "land" translates in isolation to "terra", which the sentence does not
# contain.  Exact, lemma and dictionary matching fail and the word aligner
# finds "desembarcam".
clients = AlignmentClients(lemmas, CachedDictionaryClient(None, cache("dictionary")),
                           CachedWordAligner(None, cache("aligner")))
portuguese, report = align_translations(english, translations, clients)
for entry in report.annotations:
    print(f"{entry['sentence_id']}  {entry['kind']:8s}  {entry['annotation_text']!r:24} -> {entry['status']}")

# %%
# Counts per stage, how often each stage ran, and what was lost.
print(report.per_stage_counts)
print(report.stage_attempts)
print(report.unaligned)
print(corpus_stats(portuguese))
