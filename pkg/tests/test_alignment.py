import json
import os

import pytest

from conftest import span_of
from ptevent.alignment import (
    STAGES,
    UNALIGNED,
    AlignmentClients,
    AlignmentConfig,
    AlignmentReport,
    CachedDictionaryClient,
    CachedMTClient,
    CachedWordAligner,
    DiagonalAligner,
    JsonCache,
    MicrosoftTranslatorClient,
    SentenceTranslation,
    StaticAligner,
    StaticDictionaryClient,
    StaticMTClient,
    TableLemmatizer,
    align_annotation,
    align_translations,
    cache_key,
    stage_exact,
    stage_fuzzy,
    stage_lemma_match,
    stage_word_aligner,
    translate_sentences,
)
from ptevent.corpus import make_sentence
from ptevent.errors import AlignmentIOError, ConfigError
from ptevent.ingestion import Corpus, corpus_stats, read_ace_json


def replay_clients(synthetic_dir):
    def cache(name):
        return JsonCache(os.path.join(synthetic_dir, f"en_mini.{name}_cache.json"))

    with open(os.path.join(synthetic_dir, "en_mini.lemmas.json"), encoding="utf-8") as f:
        lemmas = json.load(f)
    mt = CachedMTClient(None, cache("mt"))
    clients = AlignmentClients(
        TableLemmatizer(lemmas),
        CachedDictionaryClient(None, cache("dictionary")),
        CachedWordAligner(None, cache("aligner")),
    )
    return mt, clients


@pytest.fixture
def en_mini(synthetic_dir):
    return read_ace_json(os.path.join(synthetic_dir, "en_mini.json"))


@pytest.fixture
def replayed(synthetic_dir, en_mini, no_network):
    mt, clients = replay_clients(synthetic_dir)
    translations = translate_sentences(en_mini, mt)
    return translations, clients


def _pair(en_mini, translations, sid):
    src = next(s for s in en_mini.sentences if s.id == sid)
    tr = next(t for t in translations if t.sentence_id == sid)
    return src, make_sentence(sid, tr.text), tr


# --- single stages --------------------------------------------------------


def test_exact_respects_token_boundaries():
    tgt = make_sentence("t", "Os terroristas atacaram a terra.")
    assert stage_exact(tgt, "Terra").text == "terra"
    assert stage_exact(tgt, "terror") is None
    assert stage_exact(tgt, "") is None


def test_lemma_stage():
    tgt = make_sentence("t", "Dois soldados ficaram feridos no ataque.")
    lem = TableLemmatizer({"feridos": "ferido"})
    assert stage_lemma_match(tgt, ["ferido"], lem).text == "feridos"
    assert stage_lemma_match(tgt, ["ferida"], lem) is None


def test_word_aligner_stage_covers_noncontiguous_links():
    src = make_sentence("s", "a b c")
    tgt = make_sentence("t", "x y z w")
    aligner = StaticAligner([(["a", "b", "c"], ["x", "y", "z", "w"], [(0, 3), (0, 1)])])
    assert stage_word_aligner(src, tgt, range(0, 1), aligner).text == "y z w"
    assert stage_word_aligner(src, tgt, range(1, 2), aligner) is None


def test_fuzzy_stage_threshold_is_strict():
    tgt = make_sentence("t", "Discutimos o processo de paz no Médio Oriente.")
    # "nós" against the best n-gram scores exactly 0.5 and stays unaligned
    assert stage_fuzzy(tgt, "Nós", 0.5) is None
    found = stage_fuzzy(make_sentence("t", "O presidente renunciou na sexta-feira."), "na sexta feira", 0.5)
    assert found[0].text == "na sexta-feira" and found[1] > 0.5


def test_fuzzy_accepts_perfect_match_at_threshold_one():
    tgt = make_sentence("t", "A empresa faliu.")
    span, score = stage_fuzzy(tgt, "faliu", 1.0)
    assert span.text == "faliu" and score == 1.0


def test_config_validation():
    with pytest.raises(ConfigError):
        AlignmentConfig(stages=("fuzzy", "exact"))
    with pytest.raises(ConfigError):
        AlignmentConfig(stages=("exact", "magic"))
    with pytest.raises(ConfigError):
        AlignmentConfig(fuzzy_threshold=0.0)


# --- cascade on recorded fixtures -----------------------------------------


def test_troops_land_resolves_at_aligner(en_mini, replayed):
    translations, clients = replayed
    src, tgt, tr = _pair(en_mini, translations, "e2")
    assert tr.annotations["land"] == "terra"
    res = align_annotation(src, tgt, span_of(src, "land"), "terra", clients)
    assert res.status == "aligner"
    assert res.attempted == ("exact", "lemma", "dictionary", "aligner")
    assert res.span.text == "desembarcam"
    assert res.score >= 0.5


def test_we_stays_unaligned(en_mini, replayed):
    translations, clients = replayed
    src, tgt, tr = _pair(en_mini, translations, "e3")
    res = align_annotation(src, tgt, span_of(src, "We"), tr.annotations["We"], clients)
    assert res.status == UNALIGNED and res.span is None
    assert res.attempted == STAGES


def test_missing_client_skips_stage(en_mini, replayed):
    translations, clients = replayed
    src, tgt, _ = _pair(en_mini, translations, "e2")
    res = align_annotation(src, tgt, span_of(src, "land"), "terra", AlignmentClients())
    assert res.attempted == ("exact", "fuzzy")


def test_stage_subset(en_mini, replayed):
    translations, clients = replayed
    src, tgt, _ = _pair(en_mini, translations, "e2")
    res = align_annotation(src, tgt, span_of(src, "land"), "terra", clients, AlignmentConfig(stages=("exact",)))
    assert res.status == UNALIGNED and res.attempted == ("exact",)


def test_corpus_projection_counts(en_mini, replayed):
    translations, clients = replayed
    corpus, report = align_translations(en_mini, translations, clients)
    assert report.per_stage_counts == {"exact": 12, "lemma": 1, "dictionary": 1, "aligner": 2, "fuzzy": 1,
                                       UNALIGNED: 1}
    assert report.stage_attempts == {"exact": 18, "lemma": 6, "dictionary": 5, "aligner": 4, "fuzzy": 2}
    # short-circuit: every stage is attempted no more often than the one before it
    attempts = [report.stage_attempts[s] for s in STAGES]
    assert attempts == sorted(attempts, reverse=True)
    assert report.unaligned == [{"sentence_id": "e3", "annotation_text": "We", "kind": "argument"}]
    stats = corpus_stats(corpus)
    assert stats["triggers"] == 7 and stats["arguments"] == 10
    assert corpus.language == "pt"
    e2 = next(s for s in corpus.sentences if s.id == "e2")
    assert [(a.span.text, a.role) for a in e2.mentions[0].arguments] == [("As tropas", "Artifact"),
                                                                         ("na costa", "Destination")]


def test_report_roundtrip(en_mini, replayed):
    translations, clients = replayed
    _, report = align_translations(en_mini, translations, clients)
    again = AlignmentReport.from_json(json.loads(report.dumps()))
    assert again.to_json() == report.to_json()


def test_jobs_do_not_change_output(en_mini, replayed):
    translations, clients = replayed
    one = align_translations(en_mini, translations, clients, jobs=1)
    four = align_translations(en_mini, translations, clients, jobs=4)
    assert one[0] == four[0]
    assert one[1].to_json() == four[1].to_json()


def test_unaligned_trigger_drops_mention():
    src = make_sentence("x", "They met.")
    from conftest import span_of as sp
    from ptevent.corpus import EventMention, EventType, Trigger

    m = EventMention(Trigger(sp(src, "met"), EventType.from_label("Contact.Meet")), (), "x")
    src = make_sentence("x", src.text, [m])
    tr = SentenceTranslation("x", "Eles reuniram-se.", {"met": "encontrou"})
    corpus, report = align_translations(Corpus((src,)), [tr], AlignmentClients(), AlignmentConfig(stages=("exact",)))
    assert corpus.sentences[0].mentions == ()
    assert report.unaligned_sentence_ids() == {"x"}


def test_overlapping_projected_triggers_are_reported():
    from ptevent.corpus import EventMention, EventType, Trigger

    bare = make_sentence("x", "He was shot and killed.")
    mentions = [
        EventMention(Trigger(span_of(bare, "shot"), EventType.from_label("Conflict.Attack")), (), "x"),
        EventMention(Trigger(span_of(bare, "killed"), EventType.from_label("Life.Die")), (), "x"),
    ]
    src = make_sentence("x", bare.text, mentions)
    tr = SentenceTranslation("x", "Ele foi morto.", {"shot": "morto", "killed": "morto"})
    corpus, report = align_translations(Corpus((src,)), [tr], AlignmentClients())
    assert len(corpus.sentences[0].mentions) == 1
    assert report.unaligned[0]["reason"] == "overlaps another projected trigger"


def test_missing_translation_is_io_error(en_mini):
    with pytest.raises(AlignmentIOError):
        align_translations(en_mini, [], AlignmentClients())


# --- caching clients ------------------------------------------------------


def test_cache_records_then_replays(tmp_path):
    path = tmp_path / "mt.json"
    live = CachedMTClient(StaticMTClient({"died": "morreu"}), JsonCache(path))
    assert live.translate("died", "en", "pt") == "morreu"
    recorded = json.loads(path.read_text(encoding="utf-8"))
    assert recorded == {cache_key("translate", "died", "en", "pt"): "morreu"}
    replay = CachedMTClient(None, JsonCache(path))
    assert replay.translate("died", "en", "pt") == "morreu"
    with pytest.raises(AlignmentIOError):
        replay.translate("lived", "en", "pt")


def test_inner_failure_is_wrapped():
    client = CachedMTClient(StaticMTClient({}))
    with pytest.raises(AlignmentIOError):
        client.translate("unknown", "en", "pt")


def test_dictionary_and_aligner_caches(tmp_path):
    d = CachedDictionaryClient(StaticDictionaryClient({"land": ["terra", "solo"]}), JsonCache(tmp_path / "d.json"))
    assert d.lookup_alternatives("land", "en", "pt") == ["terra", "solo"]
    assert CachedDictionaryClient(None, JsonCache(tmp_path / "d.json")).lookup_alternatives("land", "en", "pt") == [
        "terra", "solo"]
    a = CachedWordAligner(DiagonalAligner(), JsonCache(tmp_path / "a.json"))
    assert a.align(["a", "b"], ["x", "y", "z"]) == {(0, 0), (1, 1)}
    assert CachedWordAligner(None, JsonCache(tmp_path / "a.json")).align(["a", "b"], ["x", "y", "z"]) == {(0, 0),
                                                                                                       (1, 1)}


def test_aligner_rejects_out_of_range_links():
    bad = CachedWordAligner(StaticAligner([(["a"], ["x"], [(0, 5)])]))
    with pytest.raises(AlignmentIOError):
        bad.align(["a"], ["x"])


def test_partial_failures_are_aggregated(en_mini):
    mt = CachedMTClient(StaticMTClient({}))
    with pytest.raises(AlignmentIOError) as info:
        translate_sentences(en_mini, mt, jobs=3)
    assert len(info.value.failures) == len(en_mini)


class FakeResponse:
    def __init__(self, body, status=200):
        self.body, self.status = body, status

    def raise_for_status(self):
        if self.status >= 400:
            raise RuntimeError(f"HTTP {self.status}")

    def json(self):
        return self.body


class FakeSession:
    def __init__(self, responses):
        self.responses = list(responses)
        self.calls = []

    def post(self, url, **kwargs):
        self.calls.append((url, kwargs))
        return self.responses.pop(0)


def test_microsoft_client_request_shape():
    session = FakeSession([
        FakeResponse([{"translations": [{"text": "morreu", "to": "pt"}]}]),
        FakeResponse([{"translations": [{"normalizedTarget": "terra"}, {"normalizedTarget": "solo"}]}]),
    ])
    client = MicrosoftTranslatorClient("k", "westeurope", session=session)
    assert client.translate("died", "en", "pt") == "morreu"
    assert client.lookup_alternatives("land", "en", "pt") == ["terra", "solo"]
    url, kw = session.calls[0]
    assert url.endswith("/translate")
    assert kw["params"] == {"api-version": "3.0", "from": "en", "to": "pt"}
    assert kw["json"] == [{"Text": "died"}]
    assert kw["headers"]["Ocp-Apim-Subscription-Key"] == "k"
    assert kw["headers"]["Ocp-Apim-Subscription-Region"] == "westeurope"
    assert session.calls[1][0].endswith("/dictionary/lookup")


def test_microsoft_client_errors():
    client = MicrosoftTranslatorClient("k", session=FakeSession([FakeResponse({}, 401), FakeResponse({"odd": 1})]))
    with pytest.raises(AlignmentIOError):
        client.translate("died", "en", "pt")
    with pytest.raises(AlignmentIOError):
        client.translate("died", "en", "pt")
