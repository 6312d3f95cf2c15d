"""Finite atomic measure spaces, self-maps, pushforwards and RN derivatives.

Every set of atoms is measurable (the sigma-algebra is the power set), so all
predicates that quantify over measurable sets reduce to singleton checks by
finite additivity. Arithmetic is exact (`fractions.Fraction`) throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import AbsoluteContinuityViolated, IndexMismatch, ValidationError


def as_fraction(value) -> Fraction:
    """Exact rational from an int, Fraction or "p/q" string (floats are rejected)."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class AtomicSpace:
    """Named atoms with nonnegative rational weights (the measure of each singleton)."""

    atoms: tuple[str, ...]
    weights: tuple[Fraction, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        atoms = tuple(str(a) for a in self.atoms)
        weights = tuple(as_fraction(w) for w in self.weights)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)
        if not atoms:
            raise ValidationError("space.atoms", "at least one atom is required")
        if len(atoms) != len(weights):
            raise ValidationError("space.weights", "one weight per atom is required")
        index = {}
        for i, a in enumerate(atoms):
            if a in index:
                raise ValidationError(f"space.atoms[{i}]", f"duplicate atom {a!r}")
            index[a] = i
        for a, w in zip(atoms, weights):
            if w < 0:
                raise ValidationError(f"space.weights[{a}]", f"negative weight {w} for atom {a!r}")
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_weights(cls, weights: Sequence, atoms: Sequence[str] | None = None) -> "AtomicSpace":
        if atoms is None:
            atoms = [str(i + 1) for i in range(len(weights))]
        return cls(tuple(atoms), tuple(weights))

    def __len__(self):
        return len(self.atoms)

    def index(self, atom: str) -> int:
        try:
            return self._index[str(atom)]
        except KeyError:
            raise ValidationError("atom", f"{atom!r} is not an atom of this space") from None

    def __contains__(self, atom) -> bool:
        return str(atom) in self._index

    def weight(self, atom: str) -> Fraction:
        return self.weights[self.index(atom)]

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(a for a, w in zip(self.atoms, self.weights) if w > 0)

    @property
    def support_indices(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w > 0)

    @property
    def total_mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def measure(self) -> "Measure":
        return Measure(self.atoms, self.weights)

    def mass(self, subset: Iterable[str]) -> Fraction:
        return sum((self.weight(a) for a in set(subset)), Fraction(0))


@dataclass(frozen=True)
class Measure:
    atoms: tuple[str, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.values):
            raise IndexMismatch("measure values do not match the atom list")
        if any(v < 0 for v in self.values):
            raise ValueError("measure values must be nonnegative")

    def __getitem__(self, atom: str) -> Fraction:
        return self.values[self.atoms.index(atom)]

    @property
    def support(self) -> frozenset[str]:
        return frozenset(a for a, v in zip(self.atoms, self.values) if v > 0)

    def of(self, subset: Iterable[str]) -> Fraction:
        wanted = set(subset)
        return sum((v for a, v in zip(self.atoms, self.values) if a in wanted), Fraction(0))

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))


@dataclass(frozen=True)
class TransformMap:
    """A total self-map of the atoms of a space, stored as target indices."""

    space: AtomicSpace
    targets: tuple[int, ...]

    def __post_init__(self):
        n = len(self.space)
        targets = tuple(int(t) for t in self.targets)
        if len(targets) != n:
            raise ValidationError("map", f"expected {n} targets, got {len(targets)}")
        for i, t in enumerate(targets):
            if not 0 <= t < n:
                raise ValidationError(f"map[{self.space.atoms[i]}]", f"target index {t} out of range")
        object.__setattr__(self, "targets", targets)

    @classmethod
    def from_table(cls, space: AtomicSpace, table: Mapping[str, str]) -> "TransformMap":
        missing = [a for a in space.atoms if a not in table]
        if missing:
            raise ValidationError(f"map[{missing[0]}]", "atom has no image")
        extra = [a for a in table if str(a) not in space]
        if extra:
            raise ValidationError(f"map[{extra[0]}]", "source is not an atom of the space")
        targets = []
        for a in space.atoms:
            t = str(table[a])
            if t not in space:
                raise ValidationError(f"map[{a}]", f"target {t!r} is not an atom of the space")
            targets.append(space.index(t))
        return cls(space, tuple(targets))

    @classmethod
    def identity(cls, space: AtomicSpace) -> "TransformMap":
        return cls(space, tuple(range(len(space))))

    def __call__(self, atom: str) -> str:
        return self.space.atoms[self.targets[self.space.index(atom)]]

    def table(self) -> dict[str, str]:
        atoms = self.space.atoms
        return {atoms[i]: atoms[t] for i, t in enumerate(self.targets)}

    def compose(self, other: "TransformMap") -> "TransformMap":
        """self o other."""
        return TransformMap(self.space, tuple(self.targets[t] for t in other.targets))

    def power(self, m: int) -> "TransformMap":
        if m < 0:
            raise ValueError("m must be nonnegative")
        targets = list(range(len(self.space)))
        for _ in range(m):
            targets = [self.targets[t] for t in targets]
        return TransformMap(self.space, tuple(targets))

    def preimage(self, subset: Iterable[str]) -> frozenset[str]:
        wanted = {self.space.index(a) for a in subset}
        atoms = self.space.atoms
        return frozenset(atoms[i] for i, t in enumerate(self.targets) if t in wanted)

    def image(self, subset: Iterable[str]) -> frozenset[str]:
        return frozenset(self(a) for a in subset)


@dataclass(frozen=True)
class PointFunction:
    """Per-atom values; `exact` is False when any value is a binary float."""

    atoms: tuple[str, ...]
    values: tuple

    @property
    def exact(self) -> bool:
        return not any(isinstance(v, float) for v in self.values)

    def __getitem__(self, atom: str):
        return self.values[self.atoms.index(atom)]

    def zero_set(self) -> frozenset[str]:
        return frozenset(a for a, v in zip(self.atoms, self.values) if v == 0)

    @classmethod
    def indicator(cls, space: AtomicSpace, subset: Iterable[str]) -> "PointFunction":
        s = set(subset)
        return cls(space.atoms, tuple(Fraction(1 if a in s else 0) for a in space.atoms))


def _pushforward_values(weights: Sequence[Fraction], targets: Sequence[int], m: int) -> list[Fraction]:
    mass = list(weights)
    for _ in range(m):
        nxt = [Fraction(0)] * len(mass)
        for i, w in enumerate(mass):
            if w:
                nxt[targets[i]] += w
        mass = nxt
    return mass


def pushforward_power(space: AtomicSpace, psi: TransformMap, m: int) -> Measure:
    """The measure A -> nu(psi^-m(A)): mass of each atom is carried m steps along psi."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return Measure(space.atoms, tuple(_pushforward_values(space.weights, psi.targets, m)))


def rn_derivative(space: AtomicSpace, psi: TransformMap, m: int) -> PointFunction:
    """Density of nu o psi^-m with respect to nu.

    On an atom of positive weight this is pushforward mass over weight; on a
    null atom it is 0, which is only legitimate if that atom receives no mass.
    """
    pushed = _pushforward_values(space.weights, psi.targets, m)
    values = []
    for a, w, p in zip(space.atoms, space.weights, pushed):
        if w > 0:
            values.append(p / w)
        elif p > 0:
            raise AbsoluteContinuityViolated(a, m)
        else:
            values.append(Fraction(0))
    return PointFunction(space.atoms, tuple(values))


def is_nonsingular(space: AtomicSpace, psi: TransformMap) -> bool:
    """Null sets have null preimages: no positive-weight atom lands on a null atom."""
    w = space.weights
    return all(w[t] > 0 for i, t in enumerate(psi.targets) if w[i] > 0)


def is_measure_preserving(space: AtomicSpace, psi: TransformMap) -> bool:
    return tuple(_pushforward_values(space.weights, psi.targets, 1)) == space.weights


def is_pre_positive(space: AtomicSpace, psi: TransformMap) -> bool:
    """Every positive-weight atom has a preimage of positive measure."""
    pushed = _pushforward_values(space.weights, psi.targets, 1)
    return all(p > 0 for w, p in zip(space.weights, pushed) if w > 0)


def measure_order(mu: Measure, nu: Measure) -> dict[str, bool]:
    """Absolute continuity both ways; on atoms this is inclusion of supports."""
    if mu.atoms != nu.atoms:
        raise IndexMismatch("measures are defined over different atom lists")
    smu, snu = mu.support, nu.support
    mu_ac_nu = smu <= snu
    nu_ac_mu = snu <= smu
    return {"mu_ac_nu": mu_ac_nu, "nu_ac_mu": nu_ac_mu, "equivalent": mu_ac_nu and nu_ac_mu}
