"""Character-level string similarity: Levenshtein and Ratcliff-Obershelp."""

from __future__ import annotations


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance (insert, delete, substitute)."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def levenshtein_similarity(a: str, b: str) -> float:
    """``1 - d / max(|a|, |b|)``; two empty strings are identical."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def longest_common_substring(a: str, b: str) -> tuple[int, int, int]:
    """Return ``(i, j, size)`` of the longest block ``a[i:i+size] == b[j:j+size]``.

    Ties go to the block starting earliest in ``a``, then earliest in ``b``.
    """
    best = (0, 0, 0)
    prev = [0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        cur = [0] * (len(b) + 1)
        ca = a[i - 1]
        for j in range(1, len(b) + 1):
            if ca == b[j - 1]:
                size = prev[j - 1] + 1
                cur[j] = size
                if size > best[2]:
                    best = (i - size, j - size, size)
                elif size == best[2] and (i - size, j - size) < best[:2]:
                    best = (i - size, j - size, size)
        prev = cur
    return best


def matched_characters(a: str, b: str) -> int:
    """Total size of the blocks found by recursive longest-common-substring splits."""
    total = 0
    stack = [(0, len(a), 0, len(b))]
    while stack:
        alo, ahi, blo, bhi = stack.pop()
        if alo >= ahi or blo >= bhi:
            continue
        i, j, k = longest_common_substring(a[alo:ahi], b[blo:bhi])
        if k == 0:
            continue
        total += k
        stack.append((alo, alo + i, blo, blo + j))
        stack.append((alo + i + k, ahi, blo + j + k, bhi))
    return total


def gestalt_ratio(a: str, b: str) -> float:
    """Ratcliff-Obershelp similarity ``2M / (|a| + |b|)``.

    >>> round(gestalt_ratio("desembarcam", "desembarcar"), 3)
    0.909
    """
    total = len(a) + len(b)
    if total == 0:
        return 1.0
    return 2.0 * matched_characters(a, b) / total


def similarity(a: str, b: str) -> float:
    """Best of normalized Levenshtein similarity and the gestalt ratio."""
    return max(levenshtein_similarity(a, b), gestalt_ratio(a, b))
