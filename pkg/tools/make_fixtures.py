"""Regenerate the bundled fixture corpora and recorded client caches.

    python tools/make_fixtures.py

Writes into src/ptevent/data/synthetic/ and tests/golden/.  The outputs are
committed; rerunning must leave them byte-identical.
"""

import json
import os
import sys

from ptevent.alignment import (
    AlignmentClients,
    AlignmentConfig,
    CachedDictionaryClient,
    CachedMTClient,
    CachedWordAligner,
    JsonCache,
    StaticAligner,
    StaticDictionaryClient,
    StaticMTClient,
    TableLemmatizer,
    align_translations,
    translate_sentences,
)
from ptevent.corpus import Argument, EventMention, EventType, Trigger, make_sentence, tokenize
from ptevent.ingestion import Corpus, corpus_stats, write_ace_json
from ptevent.trigger_tagger import emit_trigger_training

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
OUT = os.path.join(ROOT, "src", "ptevent", "data", "synthetic")
GOLDEN = os.path.join(ROOT, "tests", "golden")

# (sentence id, doc id, text, [(trigger, label, [(argument, role), ...]), ...])
MINI_PT = [
    ("s01", "d1", "Elvis Presley morreu de ataque cardíaco em 1977, Memphis, Tennessee.",
     [("morreu", "Life.Die", [("Elvis Presley", "Victim"), ("em 1977", "Time"), ("Memphis, Tennessee", "Place")])]),
    ("s02", "d1", "O cantor nasceu em Tupelo em 1935.",
     [("nasceu", "Life.Be-Born", [("O cantor", "Person"), ("Tupelo", "Place"), ("em 1935", "Time")])]),
    ("s03", "d2", "As tropas desembarcam na costa ao amanhecer.",
     [("desembarcam", "Movement.Transport", [("As tropas", "Artifact"), ("costa", "Destination"),
                                             ("ao amanhecer", "Time")])]),
    ("s04", "d2", "Os rebeldes atacaram a base militar com morteiros.",
     [("atacaram", "Conflict.Attack", [("Os rebeldes", "Attacker"), ("a base militar", "Target"),
                                       ("morteiros", "Instrument")])]),
    ("s05", "d2", "Dois soldados ficaram feridos no ataque.",
     [("feridos", "Life.Injure", [("Dois soldados", "Victim")]), ("ataque", "Conflict.Attack", [])]),
    ("s06", "d3", "Discutimos o processo de paz no Médio Oriente.",
     [("Discutimos", "Contact.Meet", [("Médio Oriente", "Place")])]),
    ("s07", "d3", "O ministro reuniu-se com o embaixador em Lisboa na segunda-feira.",
     [("reuniu-se", "Contact.Meet", [("O ministro", "Entity"), ("Lisboa", "Place"), ("na segunda-feira", "Time")])]),
    ("s08", "d4", "A empresa declarou falência em março.",
     [("falência", "Business.Declare-Bankruptcy", [("A empresa", "Org"), ("em março", "Time")])]),
    ("s09", "d4", "A polícia prendeu o suspeito em Braga.",
     [("prendeu", "Justice.Arrest-Jail", [("A polícia", "Agent"), ("o suspeito", "Person"), ("Braga", "Place")])]),
    ("s10", "d4", "O tribunal condenou o ex-banqueiro sênior Callum McCarthy por fraude.",
     [("condenou", "Justice.Convict", [("O tribunal", "Adjudicator"),
                                       ("ex-banqueiro sênior Callum McCarthy", "Defendant"), ("fraude", "Crime")])]),
    ("s11", "d4", "Ele foi multado em dois milhões de euros.",
     [("multado", "Justice.Fine", [("Ele", "Entity"), ("dois milhões de euros", "Money")])]),
    ("s12", "d5", "Maria casou com João no Porto.",
     [("casou", "Life.Marry", [("Maria", "Person"), ("Porto", "Place")])]),
    ("s13", "d5", "O casal divorciou-se cinco anos depois.",
     [("divorciou-se", "Life.Divorce", [("O casal", "Person"), ("cinco anos depois", "Time")])]),
    ("s14", "d5", "A nova presidente foi eleita pelos deputados.",
     [("eleita", "Personnel.Elect", [("A nova presidente", "Person"), ("deputados", "Entity")])]),
    ("s15", "d5", "O diretor demitiu-se da empresa na sexta-feira.",
     [("demitiu-se", "Personnel.End-Position", [("O diretor", "Person"), ("empresa", "Entity"),
                                               ("na sexta-feira", "Time")])]),
    ("s16", "d6", "O banco transferiu cem mil euros para a fundação.",
     [("transferiu", "Transaction.Transfer-Money", [("O banco", "Giver"), ("cem mil euros", "Money"),
                                                   ("a fundação", "Recipient")])]),
    ("s17", "d6", "A câmara vendeu o edifício a um investidor.",
     [("vendeu", "Transaction.Transfer-Ownership", [("A câmara", "Seller"), ("o edifício", "Artifact"),
                                                   ("um investidor", "Buyer")])]),
    ("s18", "d6", "Milhares de pessoas manifestaram-se em Madrid.",
     [("manifestaram-se", "Conflict.Demonstrate", [("Milhares de pessoas", "Entity"), ("Madrid", "Place")])]),
    ("s19", "d6", "O tempo esteve ameno durante toda a semana.", []),
    ("s20", "d6", "O réu será julgado em Coimbra no próximo mês.",
     [("julgado", "Justice.Trial-Hearing", [("O réu", "Defendant"), ("Coimbra", "Place"),
                                            ("no próximo mês", "Time")])]),
]

EN_MINI = [
    ("e1", "en1", "Elvis Presley died of a heart attack in 1977, Memphis, Tennessee.",
     [("died", "Life.Die", [("Elvis Presley", "Victim"), ("in 1977", "Time"), ("Memphis, Tennessee", "Place")])]),
    ("e2", "en2", "The troops land on the shore.",
     [("land", "Movement.Transport", [("The troops", "Artifact"), ("the shore", "Destination")])]),
    ("e3", "en3", "We discussed the Middle East peace process.",
     [("discussed", "Contact.Meet", [("We", "Entity")])]),
    ("e4", "en4", "Two soldiers were injured in the attack.",
     [("injured", "Life.Injure", [("Two soldiers", "Victim")]), ("attack", "Conflict.Attack", [])]),
    ("e5", "en5", "The company went bankrupt in March.",
     [("bankrupt", "Business.Declare-Bankruptcy", [("The company", "Org"), ("in March", "Time")])]),
    ("e6", "en6", "The president resigned on Friday.",
     [("resigned", "Personnel.End-Position", [("The president", "Person"), ("on Friday", "Time")])]),
]

MT_TABLE = {
    "Elvis Presley died of a heart attack in 1977, Memphis, Tennessee.":
        "Elvis Presley morreu de ataque cardíaco em 1977, Memphis, Tennessee.",
    "died": "morreu", "Elvis Presley": "Elvis Presley", "in 1977": "em 1977", "Memphis, Tennessee": "Memphis, Tennessee",
    "The troops land on the shore.": "As tropas desembarcam na costa.",
    "land": "terra", "The troops": "As tropas", "the shore": "a costa",
    "We discussed the Middle East peace process.": "Discutimos o processo de paz no Médio Oriente.",
    "discussed": "discutimos", "We": "Nós",
    "Two soldiers were injured in the attack.": "Dois soldados ficaram feridos no ataque.",
    "injured": "ferido", "Two soldiers": "Dois soldados", "attack": "ataque",
    "The company went bankrupt in March.": "A empresa faliu em março.",
    "bankrupt": "falido", "The company": "A empresa", "in March": "em março",
    "The president resigned on Friday.": "O presidente renunciou na sexta-feira.",
    "resigned": "renunciou", "The president": "O Presidente", "on Friday": "na sexta feira",
}

DICTIONARY_TABLE = {
    "land": ["terra", "solo", "aterrar", "pousar"],
    "bankrupt": ["falido", "faliu", "insolvente"],
    "We": ["nós"],
}

LEMMAS = {
    "desembarcam": "desembarcar", "morreu": "morrer", "feridos": "ferido", "ferido": "ferido",
    "faliu": "falir", "falido": "falido", "discutimos": "discutir", "renunciou": "renunciar",
    "pousar": "pousar", "aterrar": "aterrar",
}


def _aligner_table():
    def toks(s):
        return [t.text for t in tokenize(s)]

    return StaticAligner([
        (toks(EN_MINI[0][2]), toks(MT_TABLE[EN_MINI[0][2]]),
         [(0, 0), (1, 1), (2, 2), (3, 3), (5, 5), (6, 4), (7, 6), (8, 7), (9, 8), (10, 9), (11, 10), (12, 11),
          (13, 12)]),
        # "land" -> "desembarcam"; "on the" both land on the contraction "na"
        (toks(EN_MINI[1][2]), toks(MT_TABLE[EN_MINI[1][2]]),
         [(0, 0), (1, 1), (2, 2), (3, 3), (4, 3), (5, 4), (6, 5)]),
        # the pronoun is absorbed by the verb: no link for "We"
        (toks(EN_MINI[2][2]), toks(MT_TABLE[EN_MINI[2][2]]),
         [(1, 0), (2, 1), (3, 6), (4, 7), (5, 4), (6, 2), (7, 8)]),
        (toks(EN_MINI[3][2]), toks(MT_TABLE[EN_MINI[3][2]]),
         [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (5, 4), (6, 5), (7, 6)]),
        (toks(EN_MINI[4][2]), toks(MT_TABLE[EN_MINI[4][2]]),
         [(0, 0), (1, 1), (2, 2), (3, 2), (4, 3), (5, 4), (6, 5)]),
        # the aligner dropped the date phrase
        (toks(EN_MINI[5][2]), toks(MT_TABLE[EN_MINI[5][2]]),
         [(0, 0), (1, 1), (2, 2), (5, 5)]),
    ])


def _find(sentence, text):
    toks = sentence.tokens
    n = len(tokenize(text))
    for i in range(len(toks) - n + 1):
        if sentence.text[toks[i].start:toks[i + n - 1].end] == text:
            return sentence.token_span(i, i + n - 1)
    raise ValueError(f"{text!r} not found on token boundaries in {sentence.text!r}")


def build(rows):
    sentences = []
    for sid, doc, text, mentions in rows:
        bare = make_sentence(sid, text, doc_id=doc)
        ms = []
        for trig, label, args in mentions:
            trigger = Trigger(_find(bare, trig), EventType.from_label(label))
            ms.append(EventMention(trigger, tuple(Argument(_find(bare, a), r) for a, r in args), sid))
        sentences.append(make_sentence(sid, text, ms, doc_id=doc))
    return sentences


def _dump(obj, path):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, ensure_ascii=False, indent=2)
        f.write("\n")


def main():
    os.makedirs(OUT, exist_ok=True)
    os.makedirs(GOLDEN, exist_ok=True)

    mini = Corpus(tuple(build(MINI_PT)), "unsplit", "pt")
    write_ace_json(mini, os.path.join(OUT, "mini_pt.json"))
    _dump(corpus_stats(mini), os.path.join(OUT, "mini_pt.manifest.json"))
    emit_trigger_training(mini, os.path.join(GOLDEN, "mini_pt.conll"), labels_path=os.path.join(GOLDEN, "labels.txt"))

    en = Corpus(tuple(build(EN_MINI)), "unsplit", "en")
    write_ace_json(en, os.path.join(OUT, "en_mini.json"))
    _dump(LEMMAS, os.path.join(OUT, "en_mini.lemmas.json"))
    for name in ("mt", "dictionary", "aligner"):
        path = os.path.join(OUT, f"en_mini.{name}_cache.json")
        if os.path.exists(path):
            os.remove(path)
    mt = CachedMTClient(StaticMTClient(MT_TABLE), JsonCache(os.path.join(OUT, "en_mini.mt_cache.json")))
    translations = translate_sentences(en, mt)
    clients = AlignmentClients(
        TableLemmatizer(LEMMAS),
        CachedDictionaryClient(StaticDictionaryClient(DICTIONARY_TABLE),
                               JsonCache(os.path.join(OUT, "en_mini.dictionary_cache.json"))),
        CachedWordAligner(_aligner_table(), JsonCache(os.path.join(OUT, "en_mini.aligner_cache.json"))),
    )
    align_translations(en, translations, clients, AlignmentConfig())
    _dump({
        "src_lang": "en",
        "tgt_lang": "pt",
        "mt_cache": "en_mini.mt_cache.json",
        "dictionary_cache": "en_mini.dictionary_cache.json",
        "aligner_cache": "en_mini.aligner_cache.json",
        "lemma_table": "en_mini.lemmas.json",
    }, os.path.join(OUT, "en_mini.config.json"))
    print(f"fixtures written to {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
