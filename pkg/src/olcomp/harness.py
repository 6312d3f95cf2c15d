"""Instance populations and the seeded fuzz harness for `cross_validate`."""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

from .criteria import cross_validate
from .measure import AtomicSpace, TransformMap, is_nonsingular


def make_instance(weights, targets) -> tuple[AtomicSpace, TransformMap]:
    space = AtomicSpace.from_weights(list(weights))
    return space, TransformMap(space, tuple(targets))


def exhaustive_instances(max_atoms: int = 4, weight_values=(0, 1, 2)) -> Iterator[tuple[AtomicSpace, TransformMap]]:
    """Every non-singular (space, map) with 1..max_atoms atoms and weights from `weight_values`."""
    for n in range(1, max_atoms + 1):
        for weights in itertools.product(weight_values, repeat=n):
            space = AtomicSpace.from_weights(list(weights))
            for targets in itertools.product(range(n), repeat=n):
                psi = TransformMap(space, targets)
                if is_nonsingular(space, psi):
                    yield space, psi


def trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"olcomp:{seed}:{index}")


def random_instance(rng: random.Random, n: int, weight_values=(0, 1, 2, 3)) -> tuple[AtomicSpace, TransformMap]:
    weights = [rng.choice(weight_values) for _ in range(n)]
    targets = [rng.randrange(n) for _ in range(n)]
    return make_instance(weights, targets)


def random_instances(count: int, seed: int, max_atoms: int = 8) -> Iterator[tuple[AtomicSpace, TransformMap]]:
    """`count` non-singular instances, resampling singular draws."""
    produced = 0
    index = 0
    while produced < count:
        rng = trial_rng(seed, index)
        index += 1
        space, psi = random_instance(rng, rng.randint(1, max_atoms))
        if is_nonsingular(space, psi):
            produced += 1
            yield space, psi


@dataclass
class FuzzSummary:
    atoms: int
    trials: int
    seed: int
    accepted: int = 0
    rejected: int = 0
    digest: str = ""
    failures: list = field(default_factory=list)
    conjecture_counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.conjecture_counterexamples

    def to_json(self) -> dict:
        return {
            "atoms": self.atoms,
            "trials": self.trials,
            "seed": self.seed,
            "accepted": self.accepted,
            "rejected_not_well_defined": self.rejected,
            "digest": self.digest,
            "failures": self.failures,
            "conjecture_counterexamples": self.conjecture_counterexamples,
        }


def _trial(atoms: int, seed: int, index: int):
    rng = trial_rng(seed, index)
    space, psi = random_instance(rng, atoms)
    if not is_nonsingular(space, psi):
        return index, None, None
    report = cross_validate(space, psi)
    line = f"{index}:{','.join(map(str, psi.targets))}|{','.join(map(str, space.weights))}|a{report.ascent_matrix}|d{report.descent_matrix}"
    return index, line, report


def fuzz(atoms: int, trials: int, seed: int = 0) -> FuzzSummary:
    """Weights uniform on {0,1,2,3}, maps uniform over all n**n functions; singular draws rejected."""
    summary = FuzzSummary(atoms=atoms, trials=trials, seed=seed)
    h = hashlib.sha256()
    for i in range(trials):
        index, line, report = _trial(atoms, seed, i)
        if report is None:
            summary.rejected += 1
            h.update(f"{index}:rejected\n".encode())
            continue
        summary.accepted += 1
        h.update((line + "\n").encode())
        if report.verdicts["descent_zero_conjecture"] == "fail":
            summary.conjecture_counterexamples.append({"trial": index, **report.counterexample})
        other = [k for k in report.failed if k != "descent_zero_conjecture"]
        if other:
            summary.failures.append({"trial": index, "verdicts": other, **report.counterexample})
    summary.digest = h.hexdigest()
    return summary
