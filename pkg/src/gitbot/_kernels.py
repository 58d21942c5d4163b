"""JIT-compiled kernels for the pairwise message similarity matrix.

Importing this module must not fail when numba is absent; callers check
NUMBA_AVAILABLE before using the kernel. Both the kernel here and the
plain-Python fallback in similarity.py evaluate the exact same float64
expressions, so the two backends are bit-identical.
"""

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return wrap


def encode_corpus(messages):
    """Pack normalized messages into padded integer arrays.

    Returns (chars, char_lens, tokens, token_lens) where chars holds
    code points and tokens holds sorted unique vocabulary ids assigned
    in first-occurrence order (collision-free, unlike hashing).
    """
    n = len(messages)
    vocab = {}
    token_rows = []
    for msg in messages:
        ids = set()
        for tok in msg.split():
            idx = vocab.get(tok)
            if idx is None:
                idx = len(vocab)
                vocab[tok] = idx
            ids.add(idx)
        token_rows.append(sorted(ids))

    max_chars = max((len(m) for m in messages), default=0)
    max_tokens = max((len(r) for r in token_rows), default=0)
    chars = np.zeros((n, max(max_chars, 1)), dtype=np.int32)
    char_lens = np.zeros(n, dtype=np.int64)
    tokens = np.zeros((n, max(max_tokens, 1)), dtype=np.int32)
    token_lens = np.zeros(n, dtype=np.int64)
    for i, msg in enumerate(messages):
        char_lens[i] = len(msg)
        for k, ch in enumerate(msg):
            chars[i, k] = ord(ch)
        row = token_rows[i]
        token_lens[i] = len(row)
        for k, idx in enumerate(row):
            tokens[i, k] = idx
    return chars, char_lens, tokens, token_lens


@njit(cache=True)
def _edit_distance(a, la, b, lb):
    if la == 0:
        return lb
    if lb == 0:
        return la
    prev = np.arange(lb + 1)
    curr = np.empty(lb + 1, dtype=np.int64)
    for i in range(1, la + 1):
        curr[0] = i
        ca = a[i - 1]
        for j in range(1, lb + 1):
            d = prev[j - 1] + (0 if ca == b[j - 1] else 1)
            if prev[j] + 1 < d:
                d = prev[j] + 1
            if curr[j - 1] + 1 < d:
                d = curr[j - 1] + 1
            curr[j] = d
        prev, curr = curr, prev
    return prev[lb]


@njit(cache=True)
def _intersection_size(a, la, b, lb):
    i = 0
    j = 0
    count = 0
    while i < la and j < lb:
        if a[i] == b[j]:
            count += 1
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return count


@njit(cache=True)
def pairwise_kernel(chars, char_lens, tokens, token_lens):
    """Full symmetric matrix of compound similarities, diagonal 1."""
    n = chars.shape[0]
    out = np.ones((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            inter = _intersection_size(tokens[i], token_lens[i], tokens[j], token_lens[j])
            union = token_lens[i] + token_lens[j] - inter
            jac = 1.0 if union == 0 else inter / union
            m = max(char_lens[i], char_lens[j])
            if m == 0:
                lev = 1.0
            else:
                dist = _edit_distance(chars[i], char_lens[i], chars[j], char_lens[j])
                lev = 1.0 - dist / m
            sim = 0.5 * (jac + lev)
            out[i, j] = sim
            out[j, i] = sim
    return out
