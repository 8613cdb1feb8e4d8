"""Pipeline configuration: JSON file, every key optional, unknown keys rejected."""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from dataclasses import dataclass

from .alignment import STAGES, AlignmentConfig
from .argument_extractor import ExtractionConfig
from .errors import ConfigError

# relative paths in a config file resolve against the file's directory
PATH_KEYS = ("mt_cache", "dictionary_cache", "aligner_cache", "lemma_table", "trigger_model", "qa_model")


@dataclass(frozen=True)
class Config:
    src_lang: str = "en"
    tgt_lang: str = "pt"
    stages: tuple[str, ...] = STAGES
    fuzzy_threshold: float = 0.5
    context_window: int = 0
    null_threshold: float = 0.0
    max_answer_tokens: int = 30
    jobs: int = 1
    # live Microsoft Translator access; without a key only cached responses replay
    mt_endpoint: str = "https://api.cognitive.microsofttranslator.com"
    mt_region: str | None = None
    mt_key_env: str = "PTEVENT_MT_KEY"
    mt_cache: str | None = None
    dictionary_cache: str | None = None
    aligner_cache: str | None = None
    lemma_table: str | None = None
    trigger_model: str | None = None
    qa_model: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        if self.context_window < 0:
            raise ConfigError("context_window must be >= 0")
        if self.max_answer_tokens < 1:
            raise ConfigError("max_answer_tokens must be >= 1")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        self.alignment()  # validates stages and threshold

    @classmethod
    def from_dict(cls, data: dict) -> Config:
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - names)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path) -> Config:
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: config must be a JSON object")
        base = os.path.dirname(os.path.abspath(path))
        for key in PATH_KEYS:
            if isinstance(data.get(key), str) and not os.path.isabs(data[key]):
                data[key] = os.path.join(base, data[key])
        return cls.from_dict(data)

    def override(self, **values) -> Config:
        values = {k: v for k, v in values.items() if v is not None}
        return dataclasses.replace(self, **values) if values else self

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["stages"] = list(self.stages)
        return d

    def digest(self) -> str:
        # jobs never changes outputs, so it stays out of the provenance hash
        d = self.to_dict()
        d.pop("jobs")
        blob = json.dumps(d, sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()

    def alignment(self) -> AlignmentConfig:
        return AlignmentConfig(self.src_lang, self.tgt_lang, self.stages, self.fuzzy_threshold)

    def extraction(self) -> ExtractionConfig:
        return ExtractionConfig(self.max_answer_tokens, self.null_threshold)
