"""Eventually affine self-maps of N = {1, 2, ...} and their iterated images.

A map is given by an explicit table on {1..N-1} and n -> a*n + b on n >= N
(a >= 1, b >= 0). Because the tail maps {n >= N} into itself injectively, every
image psi^m(N) is a finite set together with one arithmetic progression, which
`StructuredSubset` represents exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

ALL_INJECTIVE = "AllInjective"


@dataclass(frozen=True)
class EventuallyAffineMap:
    prefix: tuple[int, ...]
    a: int = 1
    b: int = 0

    def __post_init__(self):
        prefix = tuple(int(t) for t in self.prefix)
        if any(t < 1 for t in prefix):
            raise ValueError("prefix targets must be natural numbers (>= 1)")
        if self.a < 1 or self.b < 0:
            raise ValueError("tail needs a >= 1 and b >= 0")
        object.__setattr__(self, "prefix", prefix)

    @classmethod
    def from_table(cls, table: Mapping[int, int], a: int, b: int, threshold: int) -> "EventuallyAffineMap":
        if threshold < 1:
            raise ValueError("threshold must be >= 1")
        keys = {int(k) for k in table}
        if keys != set(range(1, threshold)):
            raise ValueError(f"prefix table must cover exactly 1..{threshold - 1}")
        return cls(tuple(int(table[k]) for k in sorted(table, key=int)), a, b)

    @classmethod
    def identity(cls) -> "EventuallyAffineMap":
        return cls((), 1, 0)

    @classmethod
    def shift(cls) -> "EventuallyAffineMap":
        return cls((), 1, 1)

    @classmethod
    def doubling(cls) -> "EventuallyAffineMap":
        return cls((), 2, 0)

    @property
    def threshold(self) -> int:
        return len(self.prefix) + 1

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ValueError("maps act on natural numbers starting at 1")
        if n < self.threshold:
            return self.prefix[n - 1]
        return self.a * n + self.b

    def iterate(self, n: int, m: int) -> int:
        for _ in range(m):
            n = self(n)
        return n

    def to_json(self) -> dict:
        return {
            "prefix": {str(i + 1): t for i, t in enumerate(self.prefix)},
            "a": self.a,
            "b": self.b,
            "threshold": self.threshold,
        }


@dataclass(frozen=True)
class StructuredSubset:
    """finite ∪ {A*n + C : n >= M} (tail optional); finite part kept disjoint from the tail."""

    finite: frozenset[int] = field(default_factory=frozenset)
    tail: tuple[int, int, int] | None = None

    def __post_init__(self):
        if self.tail is not None:
            A, C, M = self.tail
            if A < 1 or C < 0 or M < 1:
                raise ValueError("tail needs A >= 1, C >= 0, M >= 1")
        finite = frozenset(x for x in self.finite if not self._in_tail(x))
        object.__setattr__(self, "finite", finite)

    @classmethod
    def naturals(cls) -> "StructuredSubset":
        return cls(frozenset(), (1, 0, 1))

    def _in_tail(self, x: int) -> bool:
        if self.tail is None:
            return False
        A, C, M = self.tail
        return x >= A * M + C and (x - C) % A == 0

    @property
    def tail_start(self) -> int | None:
        if self.tail is None:
            return None
        A, C, M = self.tail
        return A * M + C

    def __contains__(self, x: int) -> bool:
        return x in self.finite or self._in_tail(x)

    def is_finite(self) -> bool:
        return self.tail is None

    def iter_sorted(self) -> Iterator[int]:
        """Elements in increasing order (infinite when there is a tail)."""
        fin = sorted(self.finite)
        if self.tail is None:
            yield from fin
            return
        A, C, M = self.tail
        n = M
        nxt = A * n + C
        for x in fin:
            while nxt < x:
                yield nxt
                n += 1
                nxt = A * n + C
            yield x
        while True:
            yield nxt
            n += 1
            nxt = A * n + C

    def upto(self, limit: int) -> set[int]:
        out = {x for x in self.finite if x <= limit}
        if self.tail is not None:
            A, C, M = self.tail
            out.update(range(A * M + C, limit + 1, A))
        return out

    def least_not_in(self, other: "StructuredSubset") -> int | None:
        """min(self \\ other), or None when self is contained in other."""
        best = min((x for x in self.finite if x not in other), default=None)
        if self.tail is None:
            return best
        A, C, M = self.tail
        # past every finite element and both tail starts, membership in `other`
        # along this progression is periodic with period lcm(A, A_other) / A
        horizon = max([A * M + C, *other.finite, other.tail_start or 0])
        period = A if other.tail is None else math.lcm(A, other.tail[0])
        limit = horizon + period + A
        n = M
        x = A * n + C
        while x <= limit and (best is None or x < best):
            if x not in other:
                return x
            n += 1
            x = A * n + C
        return best

    def issubset(self, other: "StructuredSubset") -> bool:
        return self.least_not_in(other) is None

    def to_json(self) -> dict:
        out: dict = {"finite": sorted(self.finite)}
        if self.tail is not None:
            A, C, M = self.tail
            out["tail"] = {"A": A, "C": C, "M": M}
        else:
            out["tail"] = None
        return out

    def __str__(self):
        parts = [str(x) for x in sorted(self.finite)]
        if self.tail is not None:
            A, C, M = self.tail
            parts.append(f"{{{A}n+{C} : n>={M}}}")
        return " ∪ ".join(parts) if parts else "∅"


def _step(psi: EventuallyAffineMap, s: StructuredSubset) -> StructuredSubset:
    """psi(s) for s whose tail lies in {n >= threshold}."""
    finite = frozenset(psi(x) for x in s.finite)
    if s.tail is None:
        return StructuredSubset(finite, None)
    A, C, M = s.tail
    return StructuredSubset(finite, (psi.a * A, psi.a * C + psi.b, M))


def _initial(psi: EventuallyAffineMap) -> StructuredSubset:
    N = psi.threshold
    return StructuredSubset(frozenset(range(1, N)), (1, 0, N))


def image_chain(psi: EventuallyAffineMap, m_max: int) -> list[StructuredSubset]:
    """[psi^0(N), psi^1(N), ..., psi^m_max(N)]."""
    chain = [_initial(psi)]
    for _ in range(m_max):
        chain.append(_step(psi, chain[-1]))
    return chain


def image_power(psi: EventuallyAffineMap, m: int) -> StructuredSubset:
    if m < 0:
        raise ValueError("m must be nonnegative")
    s = _initial(psi)
    for _ in range(m):
        s = _step(psi, s)
    return s


@dataclass(frozen=True)
class WitnessResult:
    """n_m = min(psi^(m-1)(N) \\ psi^m(N)) for m = 1, 2, ...; `absent_at` is the first empty m."""

    witnesses: tuple[int, ...]
    absent_at: int | None = None
    note: str | None = None

    def to_json(self) -> dict:
        return {"witnesses": list(self.witnesses), "absent_at": self.absent_at, "note": self.note}


def witness_sequence(psi: EventuallyAffineMap, count: int) -> WitnessResult:
    if count < 1:
        raise ValueError("count must be >= 1")
    prev = _initial(psi)
    out = []
    for m in range(1, count + 1):
        cur = _step(psi, prev)
        n = prev.least_not_in(cur)
        if n is None:
            return WitnessResult(tuple(out), absent_at=m)
        out.append(n)
        prev = cur
    note = None
    if len(set(out)) != len(out):
        note = "duplicate witnesses"
    return WitnessResult(tuple(out), None, note)


@dataclass(frozen=True)
class SeqAscent:
    """kind is one of zero, finite, certified_infinite, at_least."""

    kind: str
    value: int | None = None
    certificate: str | None = None
    witnesses: tuple[int, ...] = ()

    def __str__(self):
        if self.kind == "zero":
            return "Zero"
        if self.kind == "finite":
            return f"Finite({self.value})"
        if self.kind == "certified_infinite":
            return "CertifiedInfinite"
        return f"AtLeast({self.value})"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "value": self.value,
            "certificate": self.certificate,
            "witnesses": list(self.witnesses),
            "display": str(self),
        }


def infinite_ascent_certificate(psi: EventuallyAffineMap) -> str | None:
    """A reason why psi^(m-1)(N) \\ psi^m(N) is nonempty for every m, if one applies.

    a >= 2: the tail progression thins by a factor a each step, leaving
    infinitely many dropped points, and only finitely many prefix orbit points
    can refill them. a = 1, b >= 1: psi cannot be a bijection of any image
    (the backward orbit of a tail point would be an infinite injective sequence
    inside a finite interval).
    """
    if psi.a >= 2:
        return f"tail multiplier a={psi.a} >= 2"
    if psi.b >= 1:
        return f"tail shift b={psi.b} >= 1 with a=1"
    return None


def seq_ascent(psi: EventuallyAffineMap, cap: int) -> SeqAscent:
    """Ascent of f -> f o psi on sequences over N with counting measure.

    ker C^m consists of sequences vanishing on psi^m(N), so the chain stabilizes
    at the least m with psi^m(N) = psi^(m+1)(N).
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    wit = witness_sequence(psi, cap)
    if wit.absent_at is not None:
        m = wit.absent_at - 1
        return SeqAscent("zero" if m == 0 else "finite", m, None, wit.witnesses)
    cert = infinite_ascent_certificate(psi)
    if cert is not None:
        return SeqAscent("certified_infinite", None, cert, wit.witnesses)
    return SeqAscent("at_least", cap, None, wit.witnesses)


def _collides(psi: EventuallyAffineMap, image: StructuredSubset) -> bool:
    N = psi.threshold
    seen: set[int] = set()
    for p in sorted(x for x in image.finite if x < N):
        t = psi(p)
        if t in seen:
            return True
        seen.add(t)
    # two points >= N never collide (the affine tail is injective)
    for t in seen:
        if t >= psi.a * N + psi.b and (t - psi.b) % psi.a == 0:
            if (t - psi.b) // psi.a in image:
                return True
    return False


def injectivity_on_images(psi: EventuallyAffineMap, cap: int) -> list[bool]:
    """Entry m: is psi injective on psi^m(N)?"""
    return [not _collides(psi, s) for s in image_chain(psi, cap)]


def seq_descent_bound(psi: EventuallyAffineMap, cap: int):
    """Largest m <= cap where psi is not injective on psi^m(N) (so descent > m), else ALL_INJECTIVE."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    profile = injectivity_on_images(psi, cap)
    bad = [m for m, ok in enumerate(profile) if not ok]
    return bad[-1] if bad else ALL_INJECTIVE


def map_from_json(obj: dict) -> EventuallyAffineMap:
    table = {int(k): int(v) for k, v in obj.get("prefix", {}).items()}
    N = int(obj.get("threshold", len(table) + 1))
    return EventuallyAffineMap.from_table(table, int(obj.get("a", 1)), int(obj.get("b", 0)), N)


__all__: Sequence[str] = [
    "EventuallyAffineMap",
    "StructuredSubset",
    "image_power",
    "image_chain",
    "witness_sequence",
    "seq_ascent",
    "seq_descent_bound",
    "ALL_INJECTIVE",
]
