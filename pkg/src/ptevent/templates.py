"""Portuguese question templates and SQuAD-v2 item generation.

Questions live in ``data/templates.pt.json`` without the trailing "?"; the
Life.Die set is the published one, the rest were written from the ACE role
descriptions.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .corpus import EventMention, load_ontology
from .errors import MissingTemplate, ValidationError
from .ingestion import Answer, QAItem

PREPOSITION = "em"


class QuestionTemplateSet:
    def __init__(self, templates: dict[str, dict[str, str]]):
        self.templates = {label: dict(roles) for label, roles in templates.items()}

    @classmethod
    def from_json(cls, path) -> QuestionTemplateSet:
        with open(path, encoding="utf-8") as f:
            return cls(json.load(f))

    def question_for(self, event_label: str, role: str) -> str:
        try:
            return self.templates[event_label][role]
        except KeyError:
            raise MissingTemplate(f"no question for ({event_label!r}, {role!r})") from None

    def check_coverage(self, ontology=None) -> None:
        """Raise unless the template domain equals the ontology's (label, role) pairs."""
        ontology = ontology or load_ontology()
        want = {(l, r) for l in ontology.labels for r in ontology.role_set(l)}
        have = {(l, r) for l, roles in self.templates.items() for r in roles}
        if want != have:
            raise ValidationError(f"template coverage mismatch: missing {sorted(want - have)}, extra {sorted(have - want)}")


@lru_cache(maxsize=None)
def load_templates() -> QuestionTemplateSet:
    ref = resources.files("ptevent") / "data" / "templates.pt.json"
    return QuestionTemplateSet(json.loads(ref.read_text(encoding="utf-8")))


def question_for(event_label: str, role: str) -> str:
    return load_templates().question_for(event_label, role)


def contextualize(question: str, trigger_text: str) -> str:
    """Attach the trigger word: ``"Quem morre", "morreu" -> "Quem morre em morreu?"``."""
    if not trigger_text:
        raise ValueError("trigger_text must be non-empty")
    return f"{question.rstrip().rstrip('?').rstrip()} {PREPOSITION} {trigger_text.strip()}?"


def role_question(event_label: str, role: str, trigger_text: str) -> str:
    return contextualize(question_for(event_label, role), trigger_text)


def generate_qa_items(mention: EventMention, context_text: str, context_offset_base: int,
                      mention_index: int = 0, title: str = "") -> list[QAItem]:
    """One QA item per role of the mention's event type.

    ``context_offset_base`` is where the mention's sentence starts inside
    ``context_text``.  Roles without a gold argument become impossible items;
    repeated roles become one item with several answers.
    """
    label = mention.trigger.event_type.label
    items = []
    for role in load_ontology().role_set(label):
        answers = tuple(
            Answer(a.span.text, a.span.start + context_offset_base) for a in mention.arguments if a.role == role
        )
        items.append(
            QAItem(
                id=f"{mention.sentence_id}:{label}:{role}:{mention_index}",
                question=role_question(label, role, mention.trigger.span.text),
                context=context_text,
                answers=answers,
                is_impossible=not answers,
                title=title,
            )
        )
    return items


def corpus_qa_items(corpus, context_window: int = 0) -> list[QAItem]:
    """QA items for every mention of a corpus, contexts windowed like inference."""
    items = []
    for doc in corpus.documents():
        text = doc.text
        for i, sentence in enumerate(doc.sentences):
            lo, hi = doc.window(i, context_window)
            context = text[lo:hi]
            base = doc.offsets[i] - lo
            for n, mention in enumerate(sentence.mentions):
                items += generate_qa_items(mention, context, base, n, title=doc.id)
    return items
