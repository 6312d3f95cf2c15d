"""Young functions, weights, rearrangements and the Luxemburg norm on atomic spaces."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NumericNonconvergence
from .measure import AtomicSpace, PointFunction, as_fraction

REL_TOL = 1e-12
MAX_BISECT = 200
MAX_DOUBLINGS = 1024

_CONVEXITY_GRID = [j / 8 for j in range(0, 41)]


@dataclass(frozen=True)
class YoungFunction:
    """`Power(p)`: x**p with p >= 1, or `ExpM1`: exp(x) - 1."""

    family: str
    p: Fraction | None = None

    def __post_init__(self):
        if self.family == "power":
            if self.p is None:
                raise ValueError("power family needs an exponent")
            p = self.p if isinstance(self.p, Fraction) else Fraction(str(self.p))
            if p < 1:
                raise ValueError("power exponent must be >= 1 for convexity")
            object.__setattr__(self, "p", p)
        elif self.family == "expm1":
            object.__setattr__(self, "p", None)
        else:
            raise ValueError(f"unknown Young family {self.family!r}")
        if not self.convexity_spot_check():
            raise ValueError(f"{self} failed the convexity spot-check")

    @classmethod
    def power(cls, p) -> "YoungFunction":
        return cls("power", p if isinstance(p, Fraction) else Fraction(str(p)))

    @classmethod
    def expm1(cls) -> "YoungFunction":
        return cls("expm1")

    def __call__(self, x: float) -> float:
        if x <= 0:
            return 0.0
        if self.family == "power":
            if self.p.denominator == 1:
                try:
                    return float(x) ** int(self.p)
                except OverflowError:
                    return math.inf
            try:
                return float(x) ** float(self.p)
            except OverflowError:
                return math.inf
        try:
            return math.expm1(x)
        except OverflowError:
            return math.inf

    def convexity_spot_check(self) -> bool:
        xs = _CONVEXITY_GRID
        vals = [self(x) for x in xs]
        if vals[0] != 0.0 or any(b <= a for a, b in zip(vals, vals[1:])):
            return False
        # second differences on a uniform grid, relative slack for rounding
        for a, b, c in zip(vals, vals[1:], vals[2:]):
            if a - 2 * b + c < -1e-12 * max(1.0, c):
                return False
        return True

    def to_json(self) -> dict:
        if self.family == "power":
            return {"family": "power", "parameters": {"p": _rat_str(self.p)}}
        return {"family": "expm1", "parameters": {}}

    def __str__(self):
        return f"Power({self.p})" if self.family == "power" else "ExpM1"


@dataclass(frozen=True)
class WeightFunction:
    """Non-increasing weight with a closed-form antiderivative W, W(0) = 0.

    `constant`: omega = c.  `power_decay`: omega(t) = t**-alpha, 0 <= alpha < 1.
    `step`: omega = levels[k] on [breakpoints[k-1], breakpoints[k]), with the last
    level extending to infinity.
    """

    family: str
    c: Fraction | None = None
    alpha: Fraction | None = None
    breakpoints: tuple[Fraction, ...] = ()
    levels: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.family == "constant":
            c = as_fraction(self.c)
            if c <= 0:
                raise ValueError("constant weight must be positive")
            object.__setattr__(self, "c", c)
        elif self.family == "power_decay":
            alpha = as_fraction(self.alpha)
            if not 0 <= alpha < 1:
                raise ValueError("power decay exponent must lie in [0, 1)")
            object.__setattr__(self, "alpha", alpha)
        elif self.family == "step":
            bps = tuple(as_fraction(b) for b in self.breakpoints)
            lvls = tuple(as_fraction(v) for v in self.levels)
            if len(lvls) != len(bps) + 1:
                raise ValueError("step weight needs one more level than breakpoints")
            if any(b <= 0 for b in bps) or any(b2 <= b1 for b1, b2 in zip(bps, bps[1:])):
                raise ValueError("breakpoints must be positive and strictly increasing")
            if any(v2 > v1 for v1, v2 in zip(lvls, lvls[1:])):
                raise ValueError("step levels must be non-increasing")
            if lvls[-1] <= 0:
                raise ValueError("final step level must be positive")
            object.__setattr__(self, "breakpoints", bps)
            object.__setattr__(self, "levels", lvls)
        else:
            raise ValueError(f"unknown weight family {self.family!r}")

    @classmethod
    def constant(cls, c=1) -> "WeightFunction":
        return cls("constant", c=c)

    @classmethod
    def power_decay(cls, alpha) -> "WeightFunction":
        return cls("power_decay", alpha=alpha)

    @classmethod
    def step(cls, breakpoints, levels) -> "WeightFunction":
        return cls("step", breakpoints=tuple(breakpoints), levels=tuple(levels))

    @property
    def exact(self) -> bool:
        """True when W maps rationals to rationals."""
        return self.family != "power_decay" or self.alpha == 0

    def __call__(self, t: float) -> float:
        if self.family == "constant":
            return float(self.c)
        if self.family == "power_decay":
            return math.inf if t == 0 and self.alpha > 0 else float(t) ** -float(self.alpha)
        for b, v in zip(self.breakpoints, self.levels):
            if t < b:
                return float(v)
        return float(self.levels[-1])

    def antiderivative(self, t):
        """W(t) = integral of omega over [0, t]; exact Fraction when `exact`."""
        if self.family == "constant":
            return self.c * t
        if self.family == "power_decay":
            if self.alpha == 0:
                return Fraction(t)
            beta = 1 - self.alpha
            return float(t) ** float(beta) / float(beta)
        total = Fraction(0)
        left = Fraction(0)
        for b, v in zip(self.breakpoints, self.levels):
            if t <= b:
                return total + v * (t - left)
            total += v * (b - left)
            left = b
        return total + self.levels[-1] * (t - left)

    def to_json(self) -> dict:
        if self.family == "constant":
            params = {"c": _rat_str(self.c)}
        elif self.family == "power_decay":
            params = {"alpha": _rat_str(self.alpha)}
        else:
            params = {
                "breakpoints": [_rat_str(b) for b in self.breakpoints],
                "levels": [_rat_str(v) for v in self.levels],
            }
        return {"family": self.family, "parameters": params}

    def __str__(self):
        if self.family == "constant":
            return f"Constant({self.c})"
        if self.family == "power_decay":
            return f"PowerDecay({self.alpha})"
        return f"Step({list(map(str, self.breakpoints))}, {list(map(str, self.levels))})"


@dataclass(frozen=True)
class StepFunction:
    """Non-increasing step function: (width, value) pairs, zero after the total width."""

    steps: tuple[tuple[Fraction, object], ...]

    def __post_init__(self):
        for w, _ in self.steps:
            if w <= 0:
                raise ValueError("step widths must be positive")
        vals = [v for _, v in self.steps]
        if any(b > a for a, b in zip(vals, vals[1:])):
            raise ValueError("step values must be non-increasing")

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def total_width(self) -> Fraction:
        return sum((w for w, _ in self.steps), Fraction(0))

    def __call__(self, t) -> object:
        left = Fraction(0)
        for w, v in self.steps:
            if t < left + w:
                return v
            left += w
        return 0

    def level_measure(self, s) -> Fraction:
        """Lebesgue measure of {t : f*(t) > s}."""
        return sum((w for w, v in self.steps if v > s), Fraction(0))


def _rat_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def distribution(space: AtomicSpace, f: PointFunction, s) -> Fraction:
    """nu{|f| > s}, strict inequality."""
    return sum((w for w, v in zip(space.weights, f.values) if abs(v) > s), Fraction(0))


def rearrangement(space: AtomicSpace, f: PointFunction) -> StepFunction:
    """Decreasing rearrangement of |f| as a step function."""
    mass: dict = {}
    for w, v in zip(space.weights, f.values):
        a = abs(v)
        if w > 0 and a != 0:
            mass[a] = mass.get(a, Fraction(0)) + w
    return StepFunction(tuple((mass[v], v) for v in sorted(mass, reverse=True)))


def weight_increments(fstar: StepFunction, omega: WeightFunction) -> list:
    """W(t_k) - W(t_{k-1}) for the cumulative step endpoints t_k."""
    out = []
    t = Fraction(0)
    prev = omega.antiderivative(t)
    for w, _ in fstar:
        t += w
        cur = omega.antiderivative(t)
        out.append(cur - prev)
        prev = cur
    return out


def modular(fstar: StepFunction, phi: YoungFunction, omega: WeightFunction, eps, increments=None) -> float:
    """Integral of phi(f*/eps) * omega over (0, inf) for step f*."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if increments is None:
        increments = weight_increments(fstar, omega)
    eps = float(eps)
    total = 0.0
    for (_, v), dw in zip(fstar, increments):
        total += phi(float(v) / eps) * float(dw)
    return total


def luxemburg_norm(space: AtomicSpace, f: PointFunction, phi: YoungFunction, omega: WeightFunction) -> float:
    return luxemburg_norm_of_rearrangement(rearrangement(space, f), phi, omega)


def luxemburg_norm_of_rearrangement(fstar: StepFunction, phi: YoungFunction, omega: WeightFunction) -> float:
    """Smallest eps with modular <= 1, by doubling/halving from 1 then bisection."""
    if len(fstar) == 0:
        return 0.0
    inc = weight_increments(fstar, omega)

    def rho(eps):
        return modular(fstar, phi, omega, eps, inc)

    lo = hi = 1.0
    if rho(1.0) > 1.0:
        for _ in range(MAX_DOUBLINGS):
            hi *= 2.0
            if rho(hi) <= 1.0:
                break
            lo = hi
        else:
            raise NumericNonconvergence("modular stays above 1 up to eps = 2**1024")
    else:
        for _ in range(MAX_DOUBLINGS):
            lo /= 2.0
            if lo == 0.0:
                break
            if rho(lo) > 1.0:
                break
            hi = lo
        else:
            lo = 0.0
        if lo == 0.0:
            raise NumericNonconvergence("modular stays below 1 down to eps = 2**-1024")
    # invariant: rho(lo) > 1 >= rho(hi)
    for _ in range(MAX_BISECT):
        if hi - lo <= REL_TOL * hi:
            break
        mid = 0.5 * (lo + hi)
        if rho(mid) > 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def young_inverse(phi: YoungFunction, y: float) -> float:
    """x >= 0 with phi(x) = y; closed form for powers, bisection otherwise."""
    if y < 0:
        raise ValueError("y must be nonnegative")
    if y == 0:
        return 0.0
    if phi.family == "power":
        return float(y) ** (1.0 / float(phi.p))
    lo, hi = 0.0, 1.0
    while phi(hi) < y:
        lo, hi = hi, 2.0 * hi
    for _ in range(MAX_BISECT):
        if hi - lo <= REL_TOL * hi:
            break
        mid = 0.5 * (lo + hi)
        if phi(mid) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def indicator_norm_closed_form(nuS, phi: YoungFunction, omega: WeightFunction) -> float:
    """Norm of the indicator of a set of measure nuS: 1 / phi^-1(1 / W(nuS))."""
    if nuS <= 0:
        raise ValueError("nuS must be positive")
    return 1.0 / young_inverse(phi, 1.0 / float(omega.antiderivative(nuS)))


def unweighted_indicator_norm(nuS, phi: YoungFunction) -> float:
    """1 / phi^-1(1 / nuS); equals the weighted value only for omega == 1."""
    return 1.0 / young_inverse(phi, 1.0 / float(nuS))


def delta2_report(phi: YoungFunction) -> dict:
    """Decide phi(2x) <= k phi(x): analytically for powers, grid heuristic otherwise."""
    if phi.family == "power":
        p = phi.p
        k = 2 ** p.numerator if p.denominator == 1 else 2.0 ** float(p)
        return {"satisfied": True, "k_sup": k, "method": "analytic"}
    ratios = []
    for j in range(-20, 21):
        x = 2.0 ** j
        num, den = phi(2 * x), phi(x)
        ratios.append(num / den if math.isfinite(num) else math.inf)
    lo, hi = min(ratios), max(ratios)
    if hi > 10 * lo:
        return {"satisfied": False, "k_sup": "unbounded", "method": "grid"}
    return {"satisfied": True, "k_sup": hi, "method": "grid"}


def young_from_json(obj: dict) -> YoungFunction:
    fam = obj["family"]
    params = obj.get("parameters", {})
    if fam == "power":
        return YoungFunction.power(params["p"])
    if fam == "expm1":
        return YoungFunction.expm1()
    raise ValueError(f"unknown Young family {fam!r}")


def weight_from_json(obj: dict) -> WeightFunction:
    fam = obj["family"]
    params = obj.get("parameters", {})
    if fam == "constant":
        return WeightFunction.constant(params.get("c", 1))
    if fam == "power_decay":
        return WeightFunction.power_decay(params["alpha"])
    if fam == "step":
        return WeightFunction.step(params["breakpoints"], params["levels"])
    raise ValueError(f"unknown weight family {fam!r}")


def step_function_json(fstar: StepFunction) -> list:
    return [[_rat_str(w), _value_json(v)] for w, v in fstar]


def _value_json(v):
    if isinstance(v, float):
        return v
    return _rat_str(v)


__all__: Sequence[str] = [
    "YoungFunction",
    "WeightFunction",
    "StepFunction",
    "distribution",
    "rearrangement",
    "modular",
    "luxemburg_norm",
    "luxemburg_norm_of_rearrangement",
    "young_inverse",
    "indicator_norm_closed_form",
    "unweighted_indicator_norm",
    "delta2_report",
]
