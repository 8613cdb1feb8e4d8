"""External client interfaces, their on-disk caches and deterministic stubs.

The pipeline only ever talks to the ``Cached*`` wrappers.  With ``inner=None`` a
wrapper replays recorded responses and treats a cache miss as a client failure,
which keeps test and fixture runs network-free.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import threading
from typing import Iterable, Protocol, Sequence

from ..errors import AlignmentIOError

logger = logging.getLogger(__name__)


class MTClient(Protocol):
    def translate(self, text: str, src_lang: str, tgt_lang: str) -> str: ...


class DictionaryClient(Protocol):
    def lookup_alternatives(self, text: str, src_lang: str, tgt_lang: str) -> list[str]: ...


class WordAligner(Protocol):
    def align(self, src_tokens: Sequence[str], tgt_tokens: Sequence[str]) -> set[tuple[int, int]]: ...


class Lemmatizer(Protocol):
    def lemmatize(self, tokens: Sequence[str]) -> list[str]: ...


def cache_key(operation: str, text: str, src: str, tgt: str) -> str:
    payload = json.dumps([operation, text, src, tgt], ensure_ascii=False)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class JsonCache:
    """A JSON object on disk mapping cache keys to recorded responses.

    Writes are serialized by a lock and land atomically, so concurrent
    pipeline workers can share one cache.
    """

    def __init__(self, path=None):
        self.path = path
        self._lock = threading.Lock()
        self._data: dict = {}
        if path is not None and os.path.exists(path):
            with open(path, encoding="utf-8") as f:
                self._data = json.load(f)

    def __contains__(self, key):
        return key in self._data

    def __len__(self):
        return len(self._data)

    def get(self, key, default=None):
        return self._data.get(key, default)

    def put(self, key, value) -> None:
        with self._lock:
            self._data[key] = value
            if self.path is not None:
                self._flush()

    def _flush(self):
        directory = os.path.dirname(os.path.abspath(self.path))
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            json.dump(dict(sorted(self._data.items())), f, ensure_ascii=False, indent=1)
            f.write("\n")
        os.replace(tmp, self.path)


class _CachedClient:
    def __init__(self, inner=None, cache: JsonCache | None = None):
        self.inner = inner
        self.cache = cache if cache is not None else JsonCache()

    def _call(self, operation, text, src, tgt, fn):
        key = cache_key(operation, text, src, tgt)
        if key in self.cache:
            return self.cache.get(key)
        if self.inner is None:
            raise AlignmentIOError(f"no recorded {operation} response for {text!r} ({src}->{tgt})")
        try:
            value = fn()
        except AlignmentIOError:
            raise
        except Exception as exc:
            raise AlignmentIOError(f"{operation} failed for {text!r}: {exc}") from exc
        self.cache.put(key, value)
        return value


class CachedMTClient(_CachedClient):
    def translate(self, text: str, src_lang: str, tgt_lang: str) -> str:
        return self._call("translate", text, src_lang, tgt_lang, lambda: self.inner.translate(text, src_lang, tgt_lang))


class CachedDictionaryClient(_CachedClient):
    def lookup_alternatives(self, text: str, src_lang: str, tgt_lang: str) -> list[str]:
        return list(
            self._call(
                "lookup", text, src_lang, tgt_lang, lambda: list(self.inner.lookup_alternatives(text, src_lang, tgt_lang))
            )
        )


class CachedWordAligner(_CachedClient):
    """Alignment links are cached under the JSON-encoded token lists."""

    def align(self, src_tokens, tgt_tokens) -> set[tuple[int, int]]:
        src = json.dumps(list(src_tokens), ensure_ascii=False)
        tgt = json.dumps(list(tgt_tokens), ensure_ascii=False)
        links = self._call(
            "align", "", src, tgt, lambda: sorted(map(list, self.inner.align(list(src_tokens), list(tgt_tokens))))
        )
        out = {(int(i), int(j)) for i, j in links}
        for i, j in out:
            if not (0 <= i < len(src_tokens) and 0 <= j < len(tgt_tokens)):
                raise AlignmentIOError(f"aligner returned out-of-range link ({i}, {j})")
        return out


# --- deterministic stubs ------------------------------------------------


class StaticMTClient:
    """Translations from a fixed table; unknown text raises."""

    def __init__(self, table: dict[str, str]):
        self.table = dict(table)

    def translate(self, text, src_lang, tgt_lang):
        try:
            return self.table[text]
        except KeyError:
            raise AlignmentIOError(f"no translation for {text!r}") from None


class IdentityMTClient:
    def translate(self, text, src_lang, tgt_lang):
        return text


class StaticDictionaryClient:
    def __init__(self, table: dict[str, list[str]] | None = None):
        self.table = dict(table or {})

    def lookup_alternatives(self, text, src_lang, tgt_lang):
        return list(self.table.get(text, []))


class DiagonalAligner:
    """Links token i to token i; useful when source and target are the same sentence."""

    def align(self, src_tokens, tgt_tokens):
        return {(i, i) for i in range(min(len(src_tokens), len(tgt_tokens)))}


class StaticAligner:
    """Links looked up by ``(src_tokens, tgt_tokens)``; unknown pairs have no links."""

    def __init__(self, table: Iterable[tuple[Sequence[str], Sequence[str], Iterable[tuple[int, int]]]] = ()):
        self.table = {(tuple(s), tuple(t)): {tuple(link) for link in links} for s, t, links in table}

    def align(self, src_tokens, tgt_tokens):
        return set(self.table.get((tuple(src_tokens), tuple(tgt_tokens)), set()))


class TableLemmatizer:
    """Case-insensitive lemma table; unknown words lemmatize to their casefolded form."""

    def __init__(self, table: dict[str, str] | None = None):
        self.table = {k.casefold(): v.casefold() for k, v in (table or {}).items()}

    def lemmatize(self, tokens):
        return [self.table.get(t.casefold(), t.casefold()) for t in tokens]


# --- live HTTP client ---------------------------------------------------


class MicrosoftTranslatorClient:
    """Microsoft Translator v3 ``translate`` and ``dictionary/lookup`` endpoints.

    Implements both :class:`MTClient` and :class:`DictionaryClient`.  Wrap it in
    the cached clients; responses are recorded verbatim for replay.
    """

    def __init__(self, key: str, region: str | None = None,
                 endpoint: str = "https://api.cognitive.microsofttranslator.com",
                 session=None, timeout: float = 30.0):
        if session is None:
            import requests

            session = requests.Session()
        self.session = session
        self.endpoint = endpoint.rstrip("/")
        self.timeout = timeout
        self.headers = {"Ocp-Apim-Subscription-Key": key, "Content-Type": "application/json"}
        if region:
            self.headers["Ocp-Apim-Subscription-Region"] = region

    def _post(self, route, text, src, tgt):
        params = {"api-version": "3.0", "from": src, "to": tgt}
        try:
            resp = self.session.post(
                f"{self.endpoint}/{route}", params=params, headers=self.headers,
                json=[{"Text": text}], timeout=self.timeout,
            )
            resp.raise_for_status()
            return resp.json()
        except Exception as exc:
            raise AlignmentIOError(f"{route} request failed: {exc}") from exc

    def translate(self, text, src_lang, tgt_lang):
        body = self._post("translate", text, src_lang, tgt_lang)
        try:
            return body[0]["translations"][0]["text"]
        except (KeyError, IndexError, TypeError) as exc:
            raise AlignmentIOError(f"unexpected translate response: {body!r}") from exc

    def lookup_alternatives(self, text, src_lang, tgt_lang):
        body = self._post("dictionary/lookup", text, src_lang, tgt_lang)
        try:
            return [t["normalizedTarget"] for t in body[0]["translations"]]
        except (KeyError, IndexError, TypeError) as exc:
            raise AlignmentIOError(f"unexpected lookup response: {body!r}") from exc
