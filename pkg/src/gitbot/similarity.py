"""Message normalization and the compound similarity metric.

The compound similarity of two normalized messages is the arithmetic
mean of their token-set Jaccard similarity and their normalized
Levenshtein similarity. This exact composition is recorded in saved
model files (see model_io.SIMILARITY_ID) so that training and
prediction always agree on the metric.

Pairwise matrices over a corpus are the hot path: a JIT-compiled
kernel is used when numba is available, with a plain-Python fallback.
Set GITBOT_DISABLE_NUMBA=1 to force the fallback. Both backends
produce bit-identical float64 results.
"""

import os

import numpy as np

from . import _kernels

SIMILARITY_ID = "mean(token-jaccard, normalized-levenshtein)"

_numba_default = _kernels.NUMBA_AVAILABLE and os.environ.get(
    "GITBOT_DISABLE_NUMBA", ""
).strip() in ("", "0")


def normalize_message(raw: str) -> str:
    """Lowercase, trim, and collapse internal whitespace runs."""
    return " ".join(raw.split()).lower()


def is_empty(raw: str) -> bool:
    """True iff the message normalizes to the empty string."""
    return normalize_message(raw) == ""


def jaccard_similarity(a: str, b: str) -> float:
    """Token-set Jaccard similarity of two normalized messages.

    Returns 1.0 when both token sets are empty.
    """
    sa = set(a.split())
    sb = set(b.split())
    union = len(sa | sb)
    if union == 0:
        return 1.0
    return len(sa & sb) / union


def _edit_distance(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        curr = [i]
        for j, cb in enumerate(b, start=1):
            d = prev[j - 1] + (0 if ca == cb else 1)
            if prev[j] + 1 < d:
                d = prev[j] + 1
            if curr[j - 1] + 1 < d:
                d = curr[j - 1] + 1
            curr.append(d)
        prev = curr
    return prev[-1]


def levenshtein_similarity(a: str, b: str) -> float:
    """1 - edit_distance / max length, over Unicode code points.

    Returns 1.0 when both strings are empty.
    """
    m = max(len(a), len(b))
    if m == 0:
        return 1.0
    return 1.0 - _edit_distance(a, b) / m


def compound_similarity(a: str, b: str) -> float:
    """Mean of Jaccard and Levenshtein similarity, in [0, 1]."""
    return 0.5 * (jaccard_similarity(a, b) + levenshtein_similarity(a, b))


def _pairwise_python(messages):
    n = len(messages)
    out = np.ones((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            sim = compound_similarity(messages[i], messages[j])
            out[i, j] = sim
            out[j, i] = sim
    return out


def pairwise_similarity(messages, backend: str | None = None) -> np.ndarray:
    """Symmetric n x n compound-similarity matrix for normalized messages.

    backend is "numba", "python", or None for the module default
    (numba when available and not disabled via GITBOT_DISABLE_NUMBA).
    """
    if backend is None:
        backend = "numba" if _numba_default else "python"
    if backend == "python":
        return _pairwise_python(messages)
    if backend == "numba":
        if not _kernels.NUMBA_AVAILABLE:
            raise RuntimeError("numba backend requested but numba is not installed")
        chars, char_lens, tokens, token_lens = _kernels.encode_corpus(messages)
        return _kernels.pairwise_kernel(chars, char_lens, tokens, token_lens)
    raise ValueError(f"unknown backend {backend!r}")
