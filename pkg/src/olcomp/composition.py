"""Composition operator f -> f o psi as an exact matrix, with kernel/range chains.

The operator acts on a.e.-classes of functions, so the basis is indexed by the
positive-weight atoms. Ranks of the matrix powers are computed by exact
rational Gaussian elimination; there is no tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotWellDefinedAE
from .measure import AtomicSpace, TransformMap, _pushforward_values


class _Unbounded:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unbounded"

    __str__ = __repr__

    def __reduce__(self):
        return (_Unbounded, ())


UNBOUNDED = _Unbounded()


def rank(matrix: Sequence[Sequence]) -> int:
    """Rank over the rationals; pivot is the first nonzero entry in column order."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f != 0:
                q = f / p[c]
                row = rows[i]
                for j in range(c, ncols):
                    if p[j] != 0:
                        row[j] -= q * p[j]
        r += 1
        if r == len(rows):
            break
    return r


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = []
    for i in range(n):
        ai = a[i]
        row = [0] * m
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        row[j] += x * bt[j]
        out.append(row)
    return out


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class CompositionMatrix:
    """Row x carries a single 1 in column psi(x); basis = support atoms."""

    basis: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def power(self, m: int) -> list[list[int]]:
        out = identity_matrix(self.dimension)
        for _ in range(m):
            out = matmul(out, self.rows)
        return out

    def apply(self, vector: Sequence, m: int = 1) -> list:
        """(C^m f)(x) = f(psi^m(x)) with f given on the basis."""
        out = list(vector)
        cols = [row.index(1) for row in self.rows]
        for _ in range(m):
            out = [out[c] for c in cols]
        return out


def composition_matrix(space: AtomicSpace, psi: TransformMap) -> CompositionMatrix:
    w = space.weights
    for i, t in enumerate(psi.targets):
        if w[i] > 0 and w[t] == 0:
            raise NotWellDefinedAE(space.atoms[i], space.atoms[t])
    sup = space.support_indices
    pos = {a: k for k, a in enumerate(sup)}
    n = len(sup)
    rows = []
    for i in sup:
        row = [0] * n
        row[pos[psi.targets[i]]] = 1
        rows.append(tuple(row))
    return CompositionMatrix(tuple(space.atoms[i] for i in sup), tuple(rows))


@dataclass(frozen=True)
class ChainReport:
    kernel_dims: tuple[int, ...]
    range_dims: tuple[int, ...]
    ascent: int
    descent: int

    def to_json(self) -> dict:
        return {
            "kernel_dims": list(self.kernel_dims),
            "range_dims": list(self.range_dims),
            "ascent": self.ascent,
            "descent": self.descent,
        }


def _first_stable(dims: Sequence[int]) -> int:
    for m in range(len(dims) - 1):
        if dims[m] == dims[m + 1]:
            return m
    raise ValueError("chain did not stabilize within the computed powers")


def chain_report(M: CompositionMatrix, cap: int) -> ChainReport:
    """Kernel and range dimensions of M^m for m = 0..cap, with ascent and descent."""
    n = M.dimension
    if cap < n:
        raise ValueError(f"cap must be at least the dimension ({n})")
    ranks = []
    power = identity_matrix(n)
    # one extra power so stabilization at m = cap is still observable
    for m in range(cap + 2):
        if m:
            power = matmul(power, M.rows)
        ranks.append(rank(power) if n else 0)
    kernel = [n - r for r in ranks]
    return ChainReport(
        kernel_dims=tuple(kernel[: cap + 1]),
        range_dims=tuple(ranks[: cap + 1]),
        ascent=_first_stable(kernel),
        descent=_first_stable(ranks),
    )


def boundedness_constant(space: AtomicSpace, psi: TransformMap):
    """Least K with nu(psi^-1 A) <= K nu(A) for every A, or UNBOUNDED.

    The worst ratio over sets is attained on a singleton (ratios of sums are
    bounded by the largest summand ratio), so K is the largest value of the
    RN derivative of nu o psi^-1 on the support. With an empty support there is
    no constraint and 0 is returned.
    """
    pushed = _pushforward_values(space.weights, psi.targets, 1)
    k = Fraction(0)
    for w, p in zip(space.weights, pushed):
        if w == 0:
            if p > 0:
                return UNBOUNDED
        elif p / w > k:
            k = p / w
    return k
