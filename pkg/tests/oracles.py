"""Brute-force reference computations, deliberately independent of olcomp internals."""

from fractions import Fraction
from itertools import combinations

import sympy


def iterate(targets, i, m):
    for _ in range(m):
        i = targets[i]
    return i


def pushforward_bruteforce(weights, targets, m):
    n = len(weights)
    return [sum((Fraction(weights[y]) for y in range(n) if iterate(targets, y, m) == x), Fraction(0)) for x in range(n)]


def all_subsets(n):
    for r in range(n + 1):
        yield from combinations(range(n), r)


def bound_k_bruteforce(weights, targets):
    """min K over all 2^n subsets; None for unbounded."""
    n = len(weights)
    k = Fraction(0)
    for A in all_subsets(n):
        a = set(A)
        nuA = sum((Fraction(weights[i]) for i in a), Fraction(0))
        pre = sum((Fraction(weights[i]) for i in range(n) if targets[i] in a), Fraction(0))
        if nuA == 0:
            if pre > 0:
                return None
        else:
            k = max(k, pre / nuA)
    return k


def sympy_chain(weights, targets, length):
    """Kernel dims of C^m over the support via sympy exact ranks."""
    sup = [i for i, w in enumerate(weights) if w > 0]
    pos = {i: k for k, i in enumerate(sup)}
    n = len(sup)
    if n == 0:
        return [0] * length, [0] * length
    M = sympy.zeros(n, n)
    for i in sup:
        M[pos[i], pos[targets[i]]] = 1
    kernel, ranks = [], []
    P = sympy.eye(n)
    for _ in range(length):
        r = P.rank()
        ranks.append(r)
        kernel.append(n - r)
        P = P * M
    return kernel, ranks


def first_stable(dims):
    return next(m for m in range(len(dims) - 1) if dims[m] == dims[m + 1])


def brute_seq_image(psi, m, limit):
    """psi^m(N) intersected with {1..limit}; points n >= threshold never decrease so K = limit suffices."""
    K = max(limit, psi.threshold - 1)
    return {v for v in (psi.iterate(k, m) for k in range(1, K + 1)) if v <= limit}
