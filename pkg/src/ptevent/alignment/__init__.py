"""Translation of annotated corpora and re-anchoring of annotations."""

from .cascade import (
    STAGES,
    UNALIGNED,
    AlignmentClients,
    AlignmentConfig,
    AlignmentReport,
    AlignmentResult,
    SentenceTranslation,
    align_annotation,
    align_translations,
    stage_dictionary,
    stage_exact,
    stage_fuzzy,
    stage_lemma_match,
    stage_word_aligner,
    translate_corpus,
    translate_sentences,
)
from .clients import (
    CachedDictionaryClient,
    CachedMTClient,
    CachedWordAligner,
    DiagonalAligner,
    IdentityMTClient,
    JsonCache,
    MicrosoftTranslatorClient,
    StaticAligner,
    StaticDictionaryClient,
    StaticMTClient,
    TableLemmatizer,
    cache_key,
)
from .strings import gestalt_ratio, levenshtein, levenshtein_similarity, similarity
