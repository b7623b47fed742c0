"""Numba-compiled collapsed Gibbs sampling kernels.

Token-topic assignments are swept in document order, tokens in
bag-of-words expansion order (ascending term id, repeats adjacent).
All randomness comes from the kernel-local Mersenne Twister (MT19937)
state, seeded at kernel entry, so a given seed yields a bit-identical
run on any platform.  Keep these kernels single-threaded; the sweep is
inherently sequential and the determinism contract depends on it.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _draw(cum: np.ndarray, total: float, k: int) -> int:
    # Inverse-CDF draw from an unnormalized cumulative weight array.
    # A degenerate all-zero mass (possible only under hand-built phi
    # with exact zeros) falls back to a uniform draw.
    if total <= 0.0:
        return np.random.randint(0, k)
    u = np.random.random() * total
    t = 0
    while u > cum[t] and t < k - 1:
        t += 1
    return t


@njit(cache=True)
def _joint_log_likelihood(n_dk, n_kw, n_k, n_d, alpha, beta):
    # Collapsed joint log p(w, z | alpha, beta): Dirichlet-multinomial
    # terms for both the topic-word and document-topic counts.
    k, v = n_kw.shape
    n_docs = n_dk.shape[0]
    ll = k * (math.lgamma(v * beta) - v * math.lgamma(beta))
    for t in range(k):
        s = 0.0
        for w in range(v):
            s += math.lgamma(n_kw[t, w] + beta)
        ll += s - math.lgamma(n_k[t] + v * beta)
    ll += n_docs * (math.lgamma(k * alpha) - k * math.lgamma(alpha))
    for d in range(n_docs):
        s = 0.0
        for t in range(k):
            s += math.lgamma(n_dk[d, t] + alpha)
        ll += s - math.lgamma(n_d[d] + k * alpha)
    return ll


@njit(cache=True)
def train_kernel(doc_ids, word_ids, n_docs, k, v, alpha, beta, iterations, seed):
    """Run collapsed Gibbs over flattened (doc, word) token pairs.

    Returns final (n_dk, n_kw) count matrices plus the log-likelihood
    trace sampled at iteration 1 and every 50th iteration thereafter.
    """
    np.random.seed(seed)
    n_tokens = doc_ids.shape[0]
    z = np.empty(n_tokens, dtype=np.int32)
    n_dk = np.zeros((n_docs, k), dtype=np.int64)
    n_kw = np.zeros((k, v), dtype=np.int64)
    n_k = np.zeros(k, dtype=np.int64)
    n_d = np.zeros(n_docs, dtype=np.int64)
    for i in range(n_tokens):
        t = np.random.randint(0, k)
        z[i] = t
        n_dk[doc_ids[i], t] += 1
        n_kw[t, word_ids[i]] += 1
        n_k[t] += 1
        n_d[doc_ids[i]] += 1

    n_trace = 1 + iterations // 50
    ll_iters = np.zeros(n_trace, dtype=np.int64)
    ll_values = np.zeros(n_trace, dtype=np.float64)
    trace_pos = 0

    cum = np.empty(k, dtype=np.float64)
    vbeta = v * beta
    for it in range(1, iterations + 1):
        for i in range(n_tokens):
            d = doc_ids[i]
            w = word_ids[i]
            t = z[i]
            n_dk[d, t] -= 1
            n_kw[t, w] -= 1
            n_k[t] -= 1
            total = 0.0
            for j in range(k):
                total += (n_kw[j, w] + beta) / (n_k[j] + vbeta) * (n_dk[d, j] + alpha)
                cum[j] = total
            t = _draw(cum, total, k)
            z[i] = t
            n_dk[d, t] += 1
            n_kw[t, w] += 1
            n_k[t] += 1
        if it == 1 or it % 50 == 0:
            ll_iters[trace_pos] = it
            ll_values[trace_pos] = _joint_log_likelihood(n_dk, n_kw, n_k, n_d, alpha, beta)
            trace_pos += 1

    return n_dk, n_kw, ll_iters[:trace_pos], ll_values[:trace_pos]


@njit(cache=True)
def fold_in_kernel(word_ids, phi, alpha, iterations, seed):
    """Infer topic counts for one document with phi held fixed.

    Assignments are initialized by sampling each token's conditional
    given the tokens placed before it, then swept for `iterations`
    full passes.  Returns the final per-topic count vector.
    """
    np.random.seed(seed)
    k = phi.shape[0]
    n = word_ids.shape[0]
    z = np.empty(n, dtype=np.int32)
    n_k = np.zeros(k, dtype=np.int64)
    cum = np.empty(k, dtype=np.float64)
    for i in range(n):
        w = word_ids[i]
        total = 0.0
        for j in range(k):
            total += phi[j, w] * (n_k[j] + alpha)
            cum[j] = total
        t = _draw(cum, total, k)
        z[i] = t
        n_k[t] += 1
    for _ in range(iterations):
        for i in range(n):
            w = word_ids[i]
            t = z[i]
            n_k[t] -= 1
            total = 0.0
            for j in range(k):
                total += phi[j, w] * (n_k[j] + alpha)
                cum[j] = total
            t = _draw(cum, total, k)
            z[i] = t
            n_k[t] += 1
    return n_k


def warm_up() -> None:
    """Force JIT compilation of the kernels (kept out of timed paths)."""
    doc_ids = np.zeros(2, dtype=np.int32)
    word_ids = np.array([0, 1], dtype=np.int32)
    train_kernel(doc_ids, word_ids, 1, 2, 2, 0.5, 0.01, 1, 0)
    fold_in_kernel(word_ids, np.full((2, 2), 0.5), 0.5, 1, 0)
