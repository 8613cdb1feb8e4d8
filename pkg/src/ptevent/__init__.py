"""QA-driven event extraction for Portuguese.

Corpus translation with annotation re-alignment, IOB trigger tagging,
template-driven question answering for arguments, and exact-match scoring.
"""

from .corpus import (
    Argument,
    Document,
    EventMention,
    EventOntology,
    EventType,
    Sentence,
    Span,
    Token,
    Trigger,
    iob_decode,
    iob_encode,
    iob_labels,
    load_ontology,
    make_sentence,
    role_set,
    tokenize,
)
from .errors import (
    AlignmentIOError,
    BackendError,
    FormatError,
    LengthMismatch,
    MissingTemplate,
    OffsetError,
    ShapeMismatch,
    SpanTokenMismatch,
    UnknownEventType,
)
from .ingestion import Corpus, QAItem, corpus_stats, read_ace_json, read_squad_json, write_squad_json
from .templates import contextualize, generate_qa_items, question_for

__version__ = "0.1.0"
