"""Measure-theoretic ascent/descent criteria, checked against exact linear algebra.

Each criterion is evaluated on its own and then compared with `chain_report`
in `cross_validate`. Verdict names describe what is checked:

    kernel_characterization        ker C^m is spanned by indicators of E_m
    kernel_sets_monotone           E_m is contained in E_{m+1}
    ascent_oracles_agree           least m with nu_m ~ nu_{m+1} equals the matrix ascent
    sufficient_ascent_zero         measure-preserving or surjective => ascent 0
    prepositive_finite_ascent      pre-positive => finite ascent
    prepositive_ascent_zero        pre-positive => ascent 0
    never_equivalent_iff_infinite  vacuous on finite spaces (see seqmaps)
    witness_sets_infinite_ascent   vacuous on finite spaces (see seqmaps)
    descent_needs_injectivity      finite descent => psi injective on some psi^m(E)
    descent_at_most_m_injective    descent <= m => psi injective on psi^m(E)
    descent_lower_bound            psi not injective on psi^m(E) => descent > m
    descent_zero_conjecture        injective a.e. + bounded away from zero => descent 0
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .composition import chain_report, composition_matrix
from .errors import PositiveWeightsRequired
from .measure import (
    AtomicSpace,
    TransformMap,
    _pushforward_values,
    is_measure_preserving,
    is_pre_positive,
    measure_order,
    pushforward_power,
    rn_derivative,
)

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"


def instance_json(space: AtomicSpace, psi: TransformMap) -> dict:
    from .orlicz import _rat_str

    return {
        "space": {"atoms": list(space.atoms), "weights": [_rat_str(w) for w in space.weights]},
        "map": psi.table(),
    }


def restrict_to_support(space: AtomicSpace, psi: TransformMap) -> tuple[AtomicSpace, TransformMap]:
    """Drop null atoms; psi must already map the support into itself."""
    sup = space.support_indices
    if not sup:
        raise ValueError("the support is empty")
    pos = {i: k for k, i in enumerate(sup)}
    sub = AtomicSpace(tuple(space.atoms[i] for i in sup), tuple(space.weights[i] for i in sup))
    return sub, TransformMap(sub, tuple(pos[psi.targets[i]] for i in sup))


def kernel_set(space: AtomicSpace, psi: TransformMap, m: int) -> frozenset[str]:
    """E_m: positive-weight atoms where the RN derivative of nu o psi^-m vanishes."""
    f = rn_derivative(space, psi, m)
    return frozenset(a for a, w, v in zip(space.atoms, space.weights, f.values) if w > 0 and v == 0)


def ascent_by_measures(space: AtomicSpace, psi: TransformMap, cap: int) -> int:
    """Least m <= cap with nu o psi^-m and nu o psi^-(m+1) mutually absolutely continuous."""
    rn_derivative(space, psi, 1)  # raises if psi is singular
    prev = pushforward_power(space, psi, 0)
    for m in range(cap + 1):
        nxt = pushforward_power(space, psi, m + 1)
        if measure_order(prev, nxt)["equivalent"]:
            return m
        prev = nxt
    raise ValueError(f"pushforward supports did not stabilize within cap={cap}")


def is_surjective_on_support(space: AtomicSpace, psi: TransformMap) -> bool:
    sup = space.support_indices
    return {psi.targets[i] for i in sup} >= set(sup)


def ascent_zero_sufficient(space: AtomicSpace, psi: TransformMap) -> dict:
    reasons = []
    if is_measure_preserving(space, psi):
        reasons.append("measure-preserving")
    if is_surjective_on_support(space, psi):
        reasons.append("surjective")
    if is_pre_positive(space, psi):
        reasons.append("pre-positive")
    return {"applies": bool(reasons), "reasons": reasons}


def _injective_on(targets, subset) -> bool:
    return len({targets[i] for i in subset}) == len(subset)


def descent_injectivity_profile(space: AtomicSpace, psi: TransformMap, cap: int) -> list[bool]:
    """Entry m: is psi injective on the set image psi^m(atoms)?"""
    if any(w == 0 for w in space.weights):
        raise PositiveWeightsRequired("every singleton must have positive measure")
    targets = psi.targets
    image = set(range(len(space)))
    out = []
    for _ in range(cap + 1):
        out.append(_injective_on(targets, image))
        image = {targets[i] for i in image}
    return out


def _bounded_away_from_zero(space: AtomicSpace, psi: TransformMap) -> bool:
    f = rn_derivative(space, psi, 1)
    nonzero = [v for v in f.values if v != 0]
    # finitely many values: any positive minimum serves as epsilon
    return not nonzero or min(nonzero) > 0


def descent_zero_conjecture_check(space: AtomicSpace, psi: TransformMap) -> dict:
    """Injective a.e. and bounded away from zero should force descent 0.

    psi^-1(power set) is the sigma-algebra of unions of fibres, which is the
    whole power set of the support exactly when psi is injective there.
    """
    sup = space.support_indices
    full = _injective_on(psi.targets, sup)
    hypothesis = _bounded_away_from_zero(space, psi) and full
    M = composition_matrix(space, psi)
    descent = chain_report(M, max(1, M.dimension)).descent
    conclusion = descent == 0
    return {"hypothesis": hypothesis, "conclusion": conclusion, "consistent": (not hypothesis) or conclusion}


@dataclass
class CriteriaReport:
    ascent_measure: int
    ascent_matrix: int
    descent_matrix: int
    kernel_sets: list[list[str]]
    kernel_dims: list[int]
    range_dims: list[int]
    measure_preserving: bool
    surjective: bool
    pre_positive: bool
    psi_hat_injective_at: list[bool]
    bounded_away_from_zero: bool
    inverse_sigma_algebra_full: bool
    verdicts: dict[str, str]
    notes: dict[str, str] = field(default_factory=dict)
    counterexample: dict | None = None

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if v == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_json(self) -> dict:
        return asdict(self)


def _verdict(cond: bool) -> str:
    return PASS if cond else FAIL


def cross_validate(space: AtomicSpace, psi: TransformMap, cap: int | None = None) -> CriteriaReport:
    """Evaluate every criterion and compare each with the exact matrix chains."""
    rn_derivative(space, psi, 1)  # singular psi: the operator is unbounded
    M = composition_matrix(space, psi)
    n = M.dimension
    if cap is None:
        cap = n + 1
    cap = max(cap, n, 1)
    chains = chain_report(M, cap)
    asc_meas = ascent_by_measures(space, psi, cap)

    pushed = [space.weights]
    for _ in range(cap):
        pushed.append(_pushforward_values(pushed[-1], psi.targets, 1))
    sup = space.support_indices
    basis_pos = {i: k for k, i in enumerate(sup)}
    kernel_sets = []
    kernel_ok = True
    for m in range(cap + 1):
        e_m = [i for i in sup if pushed[m][i] == 0]
        kernel_sets.append(e_m)
        ok_dim = len(e_m) == chains.kernel_dims[m]
        ok_ann = True
        for i in e_m:
            vec = [0] * n
            vec[basis_pos[i]] = 1
            if any(M.apply(vec, m)):
                ok_ann = False
                break
        kernel_ok = kernel_ok and ok_dim and ok_ann
    monotone = all(set(a) <= set(b) for a, b in zip(kernel_sets, kernel_sets[1:]))

    suff = ascent_zero_sufficient(space, psi)
    mp = "measure-preserving" in suff["reasons"]
    surj = "surjective" in suff["reasons"]
    prepos = "pre-positive" in suff["reasons"]
    asc = chains.ascent

    if sup:
        sub_space, sub_psi = restrict_to_support(space, psi)
        profile = descent_injectivity_profile(sub_space, sub_psi, cap)
    else:
        profile = [True] * (cap + 1)
    d = chains.descent
    conj = descent_zero_conjecture_check(space, psi)

    verdicts = {
        "kernel_characterization": _verdict(kernel_ok),
        "kernel_sets_monotone": _verdict(monotone),
        "ascent_oracles_agree": _verdict(asc_meas == asc),
        "sufficient_ascent_zero": _verdict(not (mp or surj) or asc == 0),
        "prepositive_finite_ascent": _verdict(not prepos or asc <= cap),
        "prepositive_ascent_zero": _verdict(not prepos or asc == 0),
        "never_equivalent_iff_infinite": VACUOUS,
        "witness_sets_infinite_ascent": VACUOUS,
        "descent_needs_injectivity": _verdict(any(profile)),
        "descent_at_most_m_injective": _verdict(all(profile[m] for m in range(d, cap + 1))),
        "descent_lower_bound": _verdict(all(d > m for m, inj in enumerate(profile) if not inj)),
        "descent_zero_conjecture": _verdict(conj["consistent"]),
    }
    atoms = space.atoms
    report = CriteriaReport(
        ascent_measure=asc_meas,
        ascent_matrix=asc,
        descent_matrix=d,
        kernel_sets=[[atoms[i] for i in e] for e in kernel_sets],
        kernel_dims=list(chains.kernel_dims),
        range_dims=list(chains.range_dims),
        measure_preserving=mp,
        surjective=surj,
        pre_positive=prepos,
        psi_hat_injective_at=profile,
        bounded_away_from_zero=_bounded_away_from_zero(space, psi),
        inverse_sigma_algebra_full=_injective_on(psi.targets, sup),
        verdicts=verdicts,
        notes={
            "ascent_convention": "indices start at m = 0 with N(C^0) = {0}",
            "descent_profile": "computed on the support (null atoms removed)",
            "inverse_sigma_algebra": "psi^-1(power set) = power set read as psi injective on the support",
            "vacuous": "infinite ascent cannot occur on a finite space; see seq-ascent",
        },
    )
    if not report.ok:
        report.counterexample = instance_json(space, psi)
    return report
