"""Hugging Face ``transformers`` adapters for the two backend interfaces.

Word-level pooling rules:

* token classification scores a word with its first subword;
* span prediction takes the start logit of a word's first subword and the end
  logit of its last subword.

Words cut off by truncation get an O-only score row (triggers) or the minimum
logit (answers).  ``transformers`` and ``torch`` are imported lazily.
"""

from __future__ import annotations

import numpy as np

from .argument_extractor import QAInput, SpanLogits
from .corpus import OUTSIDE, iob_labels


def _load(model_cls_name, path_or_model, tokenizer):
    import transformers

    if isinstance(path_or_model, str):
        model = getattr(transformers, model_cls_name).from_pretrained(path_or_model)
        tokenizer = tokenizer or transformers.AutoTokenizer.from_pretrained(path_or_model)
    else:
        model = path_or_model
    if tokenizer is None:
        raise ValueError("a tokenizer is required with an in-memory model")
    model.eval()
    return model, tokenizer


class TransformersTokenBackend:
    def __init__(self, model, tokenizer=None, max_length: int = 512):
        self.model, self.tokenizer = _load("AutoModelForTokenClassification", model, tokenizer)
        self.max_length = max_length
        labels = iob_labels()
        id2label = {int(k): v for k, v in self.model.config.id2label.items()}
        unknown = sorted(set(id2label.values()) - set(labels))
        if unknown:
            raise ValueError(f"model labels outside the IOB inventory: {unknown[:5]}")
        # column in our label order for every model output index
        self.columns = np.array([labels.index(id2label[i]) for i in range(len(id2label))])

    def predict(self, tokens):
        import torch

        labels = iob_labels()
        out = np.full((len(tokens), len(labels)), -1e9)
        out[:, labels.index(OUTSIDE)] = 0.0
        if not tokens:
            return out
        enc = self.tokenizer(list(tokens), is_split_into_words=True, truncation=True,
                             max_length=self.max_length, return_tensors="pt")
        with torch.no_grad():
            logits = self.model(**enc).logits[0].numpy()
        seen = set()
        for pos, word in enumerate(enc.word_ids()):
            if word is None or word in seen:
                continue
            seen.add(word)
            row = np.full(len(labels), -1e9)
            row[self.columns] = logits[pos]
            out[word] = row
        return out


class TransformersQABackend:
    def __init__(self, model, tokenizer=None, max_length: int = 512):
        self.model, self.tokenizer = _load("AutoModelForQuestionAnswering", model, tokenizer)
        self.max_length = max_length

    def predict(self, inp: QAInput) -> SpanLogits:
        import torch

        q_words = [inp.sequence[i] for i in inp.question_range]
        c_words = [inp.sequence[i] for i in inp.context_range]
        enc = self.tokenizer(q_words, c_words, is_split_into_words=True, truncation="only_second",
                             max_length=self.max_length, return_tensors="pt")
        with torch.no_grad():
            res = self.model(**enc)
        s_sub = res.start_logits[0].numpy()
        e_sub = res.end_logits[0].numpy()
        floor = float(min(s_sub.min(), e_sub.min()))
        start = np.full(len(inp), floor)
        end = np.full(len(inp), floor)
        start[0], end[0] = s_sub[0], e_sub[0]  # [CLS]
        bases = {0: inp.question_range.start, 1: inp.context_range.start}
        seen = set()
        for pos, (seq, word) in enumerate(zip(enc.sequence_ids(), enc.word_ids())):
            if seq is None or word is None:
                continue
            idx = bases[seq] + word
            if idx not in seen:
                start[idx] = s_sub[pos]
                seen.add(idx)
            end[idx] = e_sub[pos]
        return SpanLogits(start, end)
