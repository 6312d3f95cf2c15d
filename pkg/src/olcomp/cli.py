"""Command-line front end: `olcomp <command> [instance.json] [options]`."""

from __future__ import annotations

import argparse
import datetime as _dt
import sys
from fractions import Fraction

from . import __version__
from .composition import UNBOUNDED, boundedness_constant, chain_report, composition_matrix
from .criteria import ascent_by_measures, cross_validate, descent_injectivity_profile, kernel_set, restrict_to_support
from .errors import OlcompError
from .harness import fuzz
from .instance import InstanceFile, emit_report, parse_instance
from .measure import pushforward_power, rn_derivative
from .orlicz import (
    _rat_str,
    delta2_report,
    indicator_norm_closed_form,
    luxemburg_norm_of_rearrangement,
    modular,
    rearrangement,
    step_function_json,
    unweighted_indicator_norm,
)
from .seqmaps import image_power, seq_ascent, seq_descent_bound, witness_sequence

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2

NEEDS = {
    "ascent": ("space",),
    "descent": ("space",),
    "rnd": ("space",),
    "bound-k": ("space",),
    "norm": ("space", "young", "weight", "function"),
    "verify": ("space",),
    "fuzz": (),
    "seq-ascent": ("seq",),
    "seq-witness": ("seq",),
    "seq-descent": ("seq",),
}


class CommandInputError(OlcompError):
    pass


def _q(x):
    if isinstance(x, Fraction):
        return _rat_str(x)
    return x


def _atom_values(atoms, values):
    return {a: _q(v) for a, v in zip(atoms, values)}


def _cmd_ascent(inst, opts):
    space, psi = inst.space, inst.map
    M = composition_matrix(space, psi)
    cap = max(opts.cap or 0, M.dimension, 1)
    chains = chain_report(M, cap)
    by_measures = ascent_by_measures(space, psi, cap)
    results = {
        "ascent_matrix": chains.ascent,
        "ascent_measure": by_measures,
        "kernel_dims": list(chains.kernel_dims),
        "kernel_sets": [sorted(kernel_set(space, psi, m), key=space.index) for m in range(cap + 1)],
    }
    return results, {"ascent_oracles_agree": "pass" if by_measures == chains.ascent else "fail"}


def _cmd_descent(inst, opts):
    space, psi = inst.space, inst.map
    M = composition_matrix(space, psi)
    cap = max(opts.cap or 0, M.dimension, 1)
    chains = chain_report(M, cap)
    results = {"descent": chains.descent, "range_dims": list(chains.range_dims)}
    verdicts = {}
    if space.support:
        sub, sub_psi = restrict_to_support(space, psi)
        profile = descent_injectivity_profile(sub, sub_psi, cap)
        results["injective_on_images"] = profile
        ok = all(chains.descent > m for m, inj in enumerate(profile) if not inj) and profile[chains.descent]
        verdicts["descent_lower_bound"] = "pass" if ok else "fail"
    return results, verdicts


def _cmd_rnd(inst, opts):
    space, psi = inst.space, inst.map
    m = opts.m
    pushed = pushforward_power(space, psi, m)
    f = rn_derivative(space, psi, m)
    return {"m": m, "pushforward": _atom_values(space.atoms, pushed.values), "rn_derivative": _atom_values(space.atoms, f.values)}, {}


def _cmd_bound_k(inst, opts):
    k = boundedness_constant(inst.space, inst.map)
    return {"K": "Unbounded" if k is UNBOUNDED else _q(k), "bounded": k is not UNBOUNDED}, {}


def _cmd_norm(inst, opts):
    space, f, phi, omega = inst.space, inst.function, inst.young, inst.weight
    fstar = rearrangement(space, f)
    norm = luxemburg_norm_of_rearrangement(fstar, phi, omega)
    results = {
        "norm": norm,
        "rearrangement": step_function_json(fstar),
        "young": str(phi),
        "weight": str(omega),
        "values_exact": f.exact,
        "delta2": delta2_report(phi),
    }
    if norm > 0:
        results["modular_at_norm"] = modular(fstar, phi, omega, norm)
    # indicator functions also get the closed form, and the unweighted formula for comparison
    if len(fstar) == 1 and fstar.steps[0][1] == 1:
        nuS = fstar.steps[0][0]
        closed = indicator_norm_closed_form(nuS, phi, omega)
        plain = unweighted_indicator_norm(nuS, phi)
        results["indicator"] = {
            "measure": _q(nuS),
            "closed_form": closed,
            "unweighted_formula": plain,
            "unweighted_formula_differs": abs(plain - closed) > 1e-9 * closed,
        }
    k = results["delta2"]["k_sup"]
    if isinstance(k, Fraction):
        results["delta2"]["k_sup"] = _q(k)
    return results, {}


def _cmd_verify(inst, opts):
    report = cross_validate(inst.space, inst.map, opts.cap)
    body = report.to_json()
    verdicts = body.pop("verdicts")
    cex = body.pop("counterexample")
    return body, verdicts, ([cex] if cex else [])


def _cmd_fuzz(inst, opts):
    summary = fuzz(opts.atoms, opts.trials, opts.seed)
    body = summary.to_json()
    cexs = body.pop("failures") + body.pop("conjecture_counterexamples")
    verdicts = {
        "all_criteria_checks": "pass" if not summary.failures else "fail",
        "descent_zero_conjecture": "pass" if not summary.conjecture_counterexamples else "fail",
    }
    return body, verdicts, cexs


def _cmd_seq_ascent(inst, opts):
    res = seq_ascent(inst.seq, opts.cap)
    out = res.to_json()
    out["naturals_start_at"] = 1
    if res.witnesses:
        out["witness_sets"] = [[n] for n in res.witnesses]
    return out, {}


def _cmd_seq_witness(inst, opts):
    res = witness_sequence(inst.seq, opts.count)
    out = res.to_json()
    out["naturals_start_at"] = 1
    return out, {"witnesses_distinct": "pass" if res.note is None else "fail"}


def _cmd_seq_descent(inst, opts):
    bound = seq_descent_bound(inst.seq, opts.cap)
    images = [str(image_power(inst.seq, m)) for m in range(opts.cap + 1)]
    out = {"bound": bound, "naturals_start_at": 1, "images": images}
    if isinstance(bound, int):
        out["descent_greater_than"] = bound
    return out, {}


COMMANDS = {
    "ascent": _cmd_ascent,
    "descent": _cmd_descent,
    "rnd": _cmd_rnd,
    "bound-k": _cmd_bound_k,
    "norm": _cmd_norm,
    "verify": _cmd_verify,
    "fuzz": _cmd_fuzz,
    "seq-ascent": _cmd_seq_ascent,
    "seq-witness": _cmd_seq_witness,
    "seq-descent": _cmd_seq_descent,
}


def _options_echo(opts) -> dict:
    keys = ("cap", "m", "atoms", "trials", "count")
    return {k: getattr(opts, k) for k in keys if getattr(opts, k, None) is not None}


def run_command(cmd: str, instance: InstanceFile | None, opts) -> tuple[dict, int]:
    """Run one command; returns (report, exit code). Input errors propagate as exceptions."""
    for field in NEEDS[cmd]:
        if instance is None or getattr(instance, field) is None:
            raise CommandInputError(f"`{cmd}` needs an instance with `{field}`")
    out = COMMANDS[cmd](instance, opts)
    results, verdicts = out[0], out[1]
    counterexamples = out[2] if len(out) > 2 else []
    failed = any(v == "fail" for v in verdicts.values()) or bool(counterexamples)
    body = {
        "command": {"name": cmd, "options": _options_echo(opts)},
        "instance_digest": instance.digest() if instance is not None else None,
        "results": results,
        "verdicts": verdicts,
        "counterexamples": counterexamples,
        "seed": opts.seed,
        "tool_version": __version__,
    }
    report = {
        "header": {"generated_at": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")},
        "body": body,
    }
    return report, EXIT_VIOLATION if failed else EXIT_OK


def render_human(report: dict) -> str:
    body = report["body"]
    lines = [f"olcomp {body['tool_version']}  command: {body['command']['name']}  seed: {body['seed']}"]
    if body["instance_digest"]:
        lines.append(f"instance sha256: {body['instance_digest']}")
    lines.append("results:")
    for k, v in body["results"].items():
        lines.append(f"  {k}: {v}")
    if body["verdicts"]:
        lines.append("verdicts:")
        for k, v in body["verdicts"].items():
            lines.append(f"  {k:32s} {v}")
    for cex in body["counterexamples"]:
        lines.append(f"counterexample: {cex}")
    return "\n".join(lines) + "\n"


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="olcomp", description=__doc__)
    parser.add_argument("--version", action="version", version=f"olcomp {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, instance=True):
        p = sub.add_parser(name, help=help, parents=[common])
        if instance:
            p.add_argument("instance", help="instance JSON file ('-' for stdin)")
        return p

    add("ascent", "ascent by matrix ranks and by pushforward supports").add_argument("--cap", type=_positive)
    add("descent", "descent and injectivity on iterated images").add_argument("--cap", type=_positive)
    add("rnd", "pushforward nu o psi^-m and its RN derivative").add_argument("-m", type=_nonneg, required=True)
    add("bound-k", "least K with nu(psi^-1 A) <= K nu(A)")
    add("norm", "Luxemburg norm of the instance function")
    add("verify", "cross-validate every criterion against the matrix chains").add_argument("--cap", type=_positive)
    p = add("fuzz", "seeded random cross-validation", instance=False)
    p.add_argument("--atoms", type=_positive, required=True)
    p.add_argument("--trials", type=_positive, required=True)
    add("seq-ascent", "ascent of an eventually affine map of N").add_argument("--cap", type=_positive, required=True)
    add("seq-witness", "witnesses n_m in psi^(m-1)(N) minus psi^m(N)").add_argument("--count", type=_positive, required=True)
    add("seq-descent", "largest m with psi not injective on psi^m(N)").add_argument("--cap", type=_nonneg, required=True)
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    parser = build_parser()
    opts = parser.parse_args(argv)
    for name in ("cap", "m", "atoms", "trials", "count"):
        if not hasattr(opts, name):
            setattr(opts, name, None)
    try:
        instance = parse_instance(_read(opts.instance)) if getattr(opts, "instance", None) else None
        report, code = run_command(opts.command, instance, opts)
    except OSError as exc:
        print(f"olcomp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OlcompError as exc:
        print(f"olcomp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = emit_report(report) if opts.format == "json" else render_human(report)
    if opts.output:
        with open(opts.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
