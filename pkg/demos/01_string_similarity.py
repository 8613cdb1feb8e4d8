"""
Fuzzy matching for projected annotations
========================================

The last cascade stage compares the translated annotation with every short
n-gram of the translated sentence.  A candidate scores the better of two
character metrics: normalized Levenshtein similarity and the Ratcliff-Obershelp
("gestalt") ratio.
"""

# %%
# Edit distance counts single-character edits.
from ptevent.alignment.strings import gestalt_ratio, levenshtein, levenshtein_similarity, similarity

print(levenshtein("kitten", "sitting"))
print(levenshtein_similarity("desembarcam", "desembarcar"))

# %%
# The gestalt ratio is 2M / (|a| + |b|), where M counts characters in the
# blocks found by recursively splitting on the longest common substring.
print(gestalt_ratio("desembarcam", "desembarcar"))  # 20 / 22

# %%
# The cascade accepts a fuzzy match only above the threshold.  A dropped
# pronoun is the classic failure: "nós" against any n-gram of the Portuguese
# sentence never beats 0.5.
from ptevent.alignment import stage_fuzzy
from ptevent.corpus import make_sentence

sentence = make_sentence("e3", "Discutimos o processo de paz no Médio Oriente.")
print(similarity("nós", "no"), stage_fuzzy(sentence, "Nós", 0.5))

# %%
# A date phrase that the translator hyphenated differently still resolves.
friday = make_sentence("e6", "O presidente renunciou na sexta-feira.")
print(stage_fuzzy(friday, "na sexta feira", 0.5))
