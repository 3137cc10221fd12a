"""Independent reference computations used to freeze expected values.

Nothing here imports the package's arithmetic: binomials come from
factorials and products from a dense convolution over all index pairs.
"""

from itertools import product
from math import factorial


def binom(n, k):
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def multi_binom(k, i):
    out = 1
    for a, b in zip(k, i):
        out *= binom(a, b)
    return out


def indices(m, N):
    return [k for k in product(range(N + 1), repeat=m) if sum(k) <= N]


def dense_mul(f, g, p, m, N):
    """``f``, ``g``: dicts index -> int. Returns the Hurwitz product as a dict."""
    out = {}
    for k in indices(m, N):
        s = 0
        for i in indices(m, N):
            j = tuple(a - b for a, b in zip(k, i))
            if min(j) < 0:
                continue
            s += multi_binom(k, i) * f.get(i, 0) * g.get(j, 0)
        if s % p:
            out[k] = s % p
    return out


def dense_power(f, e, p, m, N):
    out = {(0,) * m: 1}
    for _ in range(e):
        out = dense_mul(out, f, p, m, N)
    return out
