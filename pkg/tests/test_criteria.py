import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from olcomp import (
    AbsoluteContinuityViolated,
    AtomicSpace,
    PositiveWeightsRequired,
    TransformMap,
    ascent_by_measures,
    ascent_zero_sufficient,
    chain_report,
    composition_matrix,
    cross_validate,
    descent_injectivity_profile,
    descent_zero_conjecture_check,
    is_nonsingular,
    kernel_set,
)
from olcomp.harness import exhaustive_instances, fuzz, random_instances


def inst(weights, targets):
    space = AtomicSpace.from_weights(weights)
    return space, TransformMap(space, tuple(t - 1 for t in targets))


CHAIN = inst([1, 1, 1], [1, 1, 2])
COLLAPSE = inst([1, 1, 1], [2, 2, 2])


def test_kernel_set_examples():
    space, psi = inst([1, 1, 1], [1, 2, 3])
    assert all(kernel_set(space, psi, m) == frozenset() for m in range(4))
    assert kernel_set(*CHAIN, 1) == {"3"}
    assert kernel_set(*CHAIN, 2) == {"2", "3"}
    assert kernel_set(*COLLAPSE, 1) == {"1", "3"}


def test_ascent_by_measures_examples():
    assert ascent_by_measures(*inst([1, 1, 1], [1, 2, 3]), 3) == 0
    assert ascent_by_measures(*CHAIN, 3) == 2
    assert ascent_by_measures(*COLLAPSE, 3) == 1
    with pytest.raises(AbsoluteContinuityViolated):
        ascent_by_measures(*inst([1, 0], [2, 2]), 2)


def test_ascent_zero_sufficient_examples():
    r = ascent_zero_sufficient(*inst([1, 1, 1], [2, 3, 1]))
    assert r["applies"] and set(r["reasons"]) >= {"measure-preserving", "surjective", "pre-positive"}
    assert ascent_zero_sufficient(*CHAIN) == {"applies": False, "reasons": []}
    assert ascent_zero_sufficient(*inst([1, 1], [2, 1]))["applies"]


def test_surjective_means_onto_the_support():
    # the null atom 3 reaches atom 2, but the support's image misses it
    space, psi = inst([1, 1, 0], [1, 1, 2])
    assert "surjective" not in ascent_zero_sufficient(space, psi)["reasons"]
    assert chain_report(composition_matrix(space, psi), 2).ascent == 1


def test_descent_profile_examples():
    assert descent_injectivity_profile(*inst([1, 1, 1], [1, 2, 3]), 3) == [True] * 4
    prof = descent_injectivity_profile(*CHAIN, 3)
    assert prof[:3] == [False, False, True]
    assert chain_report(composition_matrix(*CHAIN), 3).descent == 2
    prof = descent_injectivity_profile(*inst([1, 1], [2, 2]), 2)
    assert prof[0] is False
    r = chain_report(composition_matrix(*inst([1, 1], [2, 2])), 2)
    assert r.range_dims[:3] == (2, 1, 1) and r.descent == 1
    with pytest.raises(PositiveWeightsRequired):
        descent_injectivity_profile(*inst([1, 0], [1, 1]), 2)


def test_conjecture_check_examples():
    assert descent_zero_conjecture_check(*inst([1, 2, 3], [2, 1, 3])) == {
        "hypothesis": True,
        "conclusion": True,
        "consistent": True,
    }
    r = descent_zero_conjecture_check(*inst([1, 1], [1, 1]))
    assert r["hypothesis"] is False and r["consistent"]
    r = descent_zero_conjecture_check(*inst([1, 1, 1], [2, 3, 1]))
    assert r == {"hypothesis": True, "conclusion": True, "consistent": True}


def test_cross_validate_examples():
    r = cross_validate(*inst([1, 1, 1], [1, 2, 3]))
    assert r.ok and r.ascent_matrix == r.descent_matrix == 0
    r = cross_validate(*CHAIN, 4)
    assert r.ascent_measure == r.ascent_matrix == 2 and r.descent_matrix == 2 and r.ok
    assert r.counterexample is None
    with pytest.raises(AbsoluteContinuityViolated):
        cross_validate(*inst([1, 0], [2, 2]))


def test_empty_support_instance():
    r = cross_validate(*inst([0, 0], [2, 1]))
    assert r.ok and r.ascent_matrix == r.descent_matrix == 0


def test_exhaustive_three_atoms():
    count = 0
    for space, psi in exhaustive_instances(3):
        r = cross_validate(space, psi)
        assert r.ok, (r.verdicts, r.counterexample)
        count += 1
    assert count > 0


@settings(max_examples=300)
@given(st.integers(1, 8), st.randoms(use_true_random=False))
def test_kernel_sets_monotone_and_profiles(n, rnd):
    weights = [rnd.randint(0, 3) for _ in range(n)]
    targets = [rnd.randrange(n) for _ in range(n)]
    space = AtomicSpace.from_weights(weights)
    psi = TransformMap(space, tuple(targets))
    if not is_nonsingular(space, psi):
        return
    sets = [kernel_set(space, psi, m) for m in range(n + 2)]
    assert all(a <= b for a, b in zip(sets, sets[1:]))
    r = cross_validate(space, psi)
    assert r.ok
    d = r.descent_matrix
    assert r.psi_hat_injective_at[d]
    assert all(d > m for m, ok in enumerate(r.psi_hat_injective_at) if not ok)


def test_random_population_is_deterministic():
    a = [(s.weights, p.targets) for s, p in random_instances(50, seed=3)]
    b = [(s.weights, p.targets) for s, p in random_instances(50, seed=3)]
    assert a == b
    assert all(is_nonsingular(s, p) for s, p in random_instances(50, seed=3))


def test_fuzz_is_deterministic():
    one, two = fuzz(5, 300, seed=11), fuzz(5, 300, seed=11)
    assert one.digest == two.digest and one.ok
    assert one.accepted + one.rejected == 300
    assert fuzz(5, 300, seed=12).digest != one.digest
