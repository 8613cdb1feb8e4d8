"""Project source annotations onto machine-translated sentences.

Each translated annotation is re-anchored in the translated sentence by a
cascade of matchers, tried in order until one succeeds:

    exact -> lemma -> dictionary -> aligner -> fuzzy

Every returned span starts and ends on target token boundaries, so projected
triggers can always be IOB-encoded.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from ..corpus import Argument, EventMention, Sentence, Span, Trigger, make_sentence, normalize_text, tokenize
from ..errors import AlignmentIOError, ConfigError
from ..ingestion import Corpus
from .clients import DictionaryClient, Lemmatizer, MTClient, WordAligner
from .strings import similarity

STAGES = ("exact", "lemma", "dictionary", "aligner", "fuzzy")
UNALIGNED = "unaligned"


@dataclass(frozen=True)
class AlignmentConfig:
    src_lang: str = "en"
    tgt_lang: str = "pt"
    stages: tuple[str, ...] = STAGES
    fuzzy_threshold: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        unknown = [s for s in self.stages if s not in STAGES]
        if unknown:
            raise ConfigError(f"unknown alignment stages {unknown}")
        if list(self.stages) != sorted(self.stages, key=STAGES.index):
            raise ConfigError(f"stages must keep cascade order {STAGES}")
        if not 0 < self.fuzzy_threshold <= 1:
            raise ConfigError("fuzzy_threshold must be in (0, 1]")


@dataclass(frozen=True)
class AlignmentClients:
    lemmatizer: Lemmatizer | None = None
    dictionary: DictionaryClient | None = None
    aligner: WordAligner | None = None


@dataclass(frozen=True)
class AlignmentResult:
    span: Span | None
    status: str
    score: float = 1.0
    attempted: tuple[str, ...] = ()

    @property
    def aligned(self) -> bool:
        return self.span is not None


def _fold(text: str) -> str:
    return normalize_text(text).casefold()


def stage_exact(tgt: Sentence, ann_text: str) -> Span | None:
    """Leftmost case-insensitive occurrence of ``ann_text`` on token boundaries."""
    target = _fold(ann_text.strip())
    n = len(tokenize(ann_text))
    if not target or n == 0:
        return None
    toks = tgt.tokens
    for i in range(len(toks) - n + 1):
        j = i + n - 1
        if _fold(tgt.text[toks[i].start:toks[j].end]) == target:
            return tgt.token_span(i, j)
    return None


def stage_lemma_match(tgt: Sentence, ann_tokens: Sequence[str], lemmatizer: Lemmatizer) -> Span | None:
    """Leftmost run of target tokens whose lemmas equal the annotation lemmas."""
    if not ann_tokens or not tgt.tokens:
        return None
    want = [_fold(x) for x in lemmatizer.lemmatize(list(ann_tokens))]
    have = [_fold(x) for x in lemmatizer.lemmatize([t.text for t in tgt.tokens])]
    n = len(want)
    for i in range(len(have) - n + 1):
        if have[i:i + n] == want:
            return tgt.token_span(i, i + n - 1)
    return None


def stage_dictionary(tgt: Sentence, src_ann_text: str, dictionary: DictionaryClient,
                     lemmatizer: Lemmatizer | None, config: AlignmentConfig) -> Span | None:
    for alt in dictionary.lookup_alternatives(src_ann_text, config.src_lang, config.tgt_lang):
        span = stage_exact(tgt, alt)
        if span is None and lemmatizer is not None:
            span = stage_lemma_match(tgt, [t.text for t in tokenize(alt)], lemmatizer)
        if span is not None:
            return span
    return None


def stage_word_aligner(src: Sentence, tgt: Sentence, src_ann_token_range: range, aligner: WordAligner) -> Span | None:
    """Project the annotation's source tokens through word alignments.

    Non-contiguous projections collapse to the minimal covering span.
    """
    links = aligner.align([t.text for t in src.tokens], [t.text for t in tgt.tokens])
    hits = sorted(j for i, j in links if i in src_ann_token_range)
    if not hits:
        return None
    return tgt.token_span(hits[0], hits[-1])


def stage_fuzzy(tgt: Sentence, ann_text: str, threshold: float) -> tuple[Span, float] | None:
    """Most similar token n-gram to ``ann_text``.

    Candidates have between 1 and ``len(ann tokens) + 2`` tokens.  The best one is
    accepted when its score is strictly above ``threshold`` (a perfect 1.0 is
    always accepted).
    """
    n_ann = len(tokenize(ann_text))
    target = _fold(ann_text.strip())
    if not target or not tgt.tokens:
        return None
    best = None  # (score, -n_tokens, -start) ordering
    toks = tgt.tokens
    for i in range(len(toks)):
        for n in range(1, n_ann + 3):
            j = i + n - 1
            if j >= len(toks):
                break
            score = similarity(_fold(tgt.text[toks[i].start:toks[j].end]), target)
            key = (score, -n, -i)
            if best is None or key > best[0]:
                best = (key, i, j)
    (score, _, _), i, j = best
    if score > threshold or score == 1.0:
        return tgt.token_span(i, j), score
    return None


def align_annotation(src: Sentence, tgt: Sentence, src_ann_span: Span, translated_ann_text: str,
                     clients: AlignmentClients, config: AlignmentConfig = AlignmentConfig()) -> AlignmentResult:
    """Run the cascade for one annotation; the first stage that finds a span wins."""
    attempted: list[str] = []
    for stage in config.stages:
        score = 1.0
        if stage == "exact":
            span = stage_exact(tgt, translated_ann_text)
        elif stage == "lemma":
            if clients.lemmatizer is None:
                continue
            span = stage_lemma_match(tgt, [t.text for t in tokenize(translated_ann_text)], clients.lemmatizer)
        elif stage == "dictionary":
            if clients.dictionary is None:
                continue
            span = stage_dictionary(tgt, src_ann_span.text, clients.dictionary, clients.lemmatizer, config)
        elif stage == "aligner":
            if clients.aligner is None:
                continue
            span = stage_word_aligner(src, tgt, src.token_range(src_ann_span), clients.aligner)
        else:
            found = stage_fuzzy(tgt, translated_ann_text, config.fuzzy_threshold)
            span, score = found if found else (None, 0.0)
        attempted.append(stage)
        if span is not None:
            return AlignmentResult(span, stage, score, tuple(attempted))
    return AlignmentResult(None, UNALIGNED, 0.0, tuple(attempted))


# --- corpus-level pipeline ------------------------------------------------


@dataclass(frozen=True)
class SentenceTranslation:
    sentence_id: str
    text: str
    annotations: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.sentence_id, "translation": self.text, "annotations": dict(self.annotations)}

    @classmethod
    def from_json(cls, obj) -> SentenceTranslation:
        return cls(obj["id"], obj["translation"], dict(obj.get("annotations", {})))


@dataclass
class AlignmentReport:
    per_stage_counts: dict[str, int] = field(default_factory=lambda: {s: 0 for s in (*STAGES, UNALIGNED)})
    stage_attempts: dict[str, int] = field(default_factory=lambda: {s: 0 for s in STAGES})
    unaligned: list[dict] = field(default_factory=list)
    annotations: list[dict] = field(default_factory=list)

    def add(self, sentence_id: str, kind: str, source_text: str, translated: str, result: AlignmentResult,
            reason: str | None = None) -> None:
        status = result.status if reason is None else UNALIGNED
        self.per_stage_counts[status] += 1
        for stage in result.attempted:
            self.stage_attempts[stage] += 1
        entry = {
            "sentence_id": sentence_id,
            "kind": kind,
            "annotation_text": source_text,
            "translated_text": translated,
            "status": status,
            "score": round(result.score, 6),
            "start": result.span.start if result.span and reason is None else None,
            "end": result.span.end if result.span and reason is None else None,
        }
        self.annotations.append(entry)
        if status == UNALIGNED:
            item = {"sentence_id": sentence_id, "annotation_text": source_text, "kind": kind}
            if reason:
                item["reason"] = reason
            self.unaligned.append(item)

    def unaligned_sentence_ids(self, kind: str = "trigger") -> set[str]:
        return {u["sentence_id"] for u in self.unaligned if u["kind"] == kind}

    def to_json(self) -> dict:
        return {
            "per_stage_counts": dict(self.per_stage_counts),
            "stage_attempts": dict(self.stage_attempts),
            "unaligned": list(self.unaligned),
            "annotations": list(self.annotations),
        }

    @classmethod
    def from_json(cls, obj) -> AlignmentReport:
        report = cls()
        report.per_stage_counts.update(obj.get("per_stage_counts", {}))
        report.stage_attempts.update(obj.get("stage_attempts", {}))
        report.unaligned = list(obj.get("unaligned", []))
        report.annotations = list(obj.get("annotations", []))
        return report

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, indent=2) + "\n"


def _annotation_texts(sentence: Sentence) -> list[str]:
    texts = []
    for m in sentence.mentions:
        for text in [m.trigger.span.text, *(a.span.text for a in m.arguments)]:
            if text not in texts:
                texts.append(text)
    return texts


def _map_ordered(fn, items, jobs):
    """``map`` that keeps input order but collects failures per item."""
    def safe(item):
        try:
            return fn(item), None
        except AlignmentIOError as exc:
            return None, exc

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(safe, items))
    else:
        results = [safe(item) for item in items]
    failures = [(item, exc) for item, (_, exc) in zip(items, results) if exc is not None]
    if failures:
        err = AlignmentIOError(
            "; ".join(f"sentence {item.id if hasattr(item, 'id') else item[0].id!r}: {exc}" for item, exc in failures)
        )
        err.failures = failures
        raise err
    return [value for value, _ in results]


def translate_sentences(corpus: Corpus, mt: MTClient, config: AlignmentConfig = AlignmentConfig(),
                        jobs: int = 1) -> list[SentenceTranslation]:
    """Translate each sentence and, in isolation, each annotation text."""
    def one(sentence):
        text = mt.translate(sentence.text, config.src_lang, config.tgt_lang)
        anns = {t: mt.translate(t, config.src_lang, config.tgt_lang) for t in _annotation_texts(sentence)}
        return SentenceTranslation(sentence.id, text, anns)

    return _map_ordered(one, list(corpus.sentences), jobs)


def _align_sentence(src: Sentence, tr: SentenceTranslation, clients: AlignmentClients, config: AlignmentConfig):
    tgt = make_sentence(src.id, tr.text, doc_id=src.doc_id)
    events = []  # (kind, source text, translated text, result, reason)
    mentions = []
    taken: list[Span] = []
    for mention in src.mentions:
        src_text = mention.trigger.span.text
        translated = tr.annotations.get(src_text, src_text)
        res = align_annotation(src, tgt, mention.trigger.span, translated, clients, config)
        reason = None
        if res.aligned and any(res.span.overlaps(t) for t in taken):
            reason = "overlaps another projected trigger"
        events.append(("trigger", src_text, translated, res, reason))
        if not res.aligned or reason:
            continue
        taken.append(res.span)
        args = []
        for arg in mention.arguments:
            a_translated = tr.annotations.get(arg.span.text, arg.span.text)
            a_res = align_annotation(src, tgt, arg.span, a_translated, clients, config)
            events.append(("argument", arg.span.text, a_translated, a_res, None))
            if a_res.aligned:
                args.append(Argument(a_res.span, arg.role))
        mentions.append(EventMention(Trigger(res.span, mention.trigger.event_type), tuple(args), src.id))
    sentence = Sentence(tgt.id, tgt.text, tgt.tokens, tuple(mentions), tgt.doc_id)
    return sentence, events


def align_translations(corpus: Corpus, translations: Sequence[SentenceTranslation], clients: AlignmentClients,
                       config: AlignmentConfig = AlignmentConfig(), jobs: int = 1) -> tuple[Corpus, AlignmentReport]:
    """Project every annotation of ``corpus`` onto its recorded translation.

    Unaligned triggers drop their whole mention and unaligned arguments drop
    only themselves; both are listed in the report.
    """
    by_id = {t.sentence_id: t for t in translations}
    missing = [s.id for s in corpus.sentences if s.id not in by_id]
    if missing:
        raise AlignmentIOError(f"no translation for sentences {missing}")
    pairs = [(s, by_id[s.id]) for s in corpus.sentences]
    done = _map_ordered(lambda p: _align_sentence(p[0], p[1], clients, config), pairs, jobs)
    report = AlignmentReport()
    for sentence, events in done:
        for kind, src_text, translated, res, reason in events:
            report.add(sentence.id, kind, src_text, translated, res, reason)
    return Corpus(tuple(s for s, _ in done), corpus.split, config.tgt_lang), report


def translate_corpus(corpus: Corpus, mt: MTClient, dictionary: DictionaryClient | None, aligner: WordAligner | None,
                     lemmatizer: Lemmatizer | None, config: AlignmentConfig = AlignmentConfig(),
                     jobs: int = 1) -> tuple[Corpus, AlignmentReport]:
    translations = translate_sentences(corpus, mt, config, jobs)
    clients = AlignmentClients(lemmatizer, dictionary, aligner)
    return align_translations(corpus, translations, clients, config, jobs)
