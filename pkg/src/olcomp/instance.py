"""JSON instance files and machine-readable run reports."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, ValidationError
from .measure import AtomicSpace, PointFunction, TransformMap
from .orlicz import WeightFunction, YoungFunction
from .seqmaps import EventuallyAffineMap

TOP_LEVEL = {"space", "map", "young", "weight", "function", "seq"}
YOUNG_PARAMS = {"power": {"p"}, "expm1": set()}
WEIGHT_PARAMS = {"constant": {"c"}, "power_decay": {"alpha"}, "step": {"breakpoints", "levels"}}


@dataclass(frozen=True)
class InstanceFile:
    space: AtomicSpace | None = None
    map: TransformMap | None = None
    young: YoungFunction | None = None
    weight: WeightFunction | None = None
    function: PointFunction | None = None
    seq: EventuallyAffineMap | None = None
    raw: dict | None = None

    def digest(self) -> str:
        canonical = json.dumps(self.raw or {}, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _rational(value, locus: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValidationError(locus, f"expected an integer or a 'p/q' string, got {json.dumps(value)}")
    try:
        return Fraction(value.strip()) if isinstance(value, str) else Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(locus, f"not a rational: {value!r}") from None


def _real(value, locus: str):
    if isinstance(value, float):
        return value
    return _rational(value, locus)


def _check_keys(obj, allowed: set, locus: str, required: set = frozenset()):
    if not isinstance(obj, dict):
        raise ValidationError(locus, "expected an object")
    for k in obj:
        if k not in allowed:
            raise ValidationError(f"{locus}.{k}" if locus else k, "unknown field")
    for k in required:
        if k not in obj:
            raise ValidationError(f"{locus}.{k}" if locus else k, "missing required field")


def _natural(value, locus: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ValidationError(locus, f"expected an integer >= {minimum}")
    return value


def parse_instance(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    _check_keys(doc, TOP_LEVEL, "")
    if "space" not in doc and "seq" not in doc:
        raise ValidationError("space", "missing required field (only seq-only documents may omit it)")

    space = psi = young = weight = function = seq = None
    if "space" in doc:
        sp = doc["space"]
        _check_keys(sp, {"atoms", "weights"}, "space", {"atoms", "weights"})
        atoms, weights = sp["atoms"], sp["weights"]
        if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
            raise ValidationError("space.atoms", "expected a list of strings")
        if not isinstance(weights, list) or len(weights) != len(atoms):
            raise ValidationError("space.weights", "expected one weight per atom")
        ws = []
        for a, w in zip(atoms, weights):
            q = _rational(w, f"space.weights[{a}]")
            if q < 0:
                raise ValidationError(f"space.weights[{a}]", f"negative weight {w} for atom {a!r}")
            ws.append(q)
        space = AtomicSpace(tuple(atoms), tuple(ws))
        if "map" not in doc:
            raise ValidationError("map", "missing required field")
        table = doc["map"]
        if not isinstance(table, dict):
            raise ValidationError("map", "expected an object mapping atom -> atom")
        for k, v in table.items():
            if not isinstance(v, str):
                raise ValidationError(f"map[{k}]", "target must be an atom identifier string")
        psi = TransformMap.from_table(space, table)
    elif "map" in doc or "function" in doc:
        raise ValidationError("space", "map and function need a space")

    if "young" in doc:
        y = doc["young"]
        _check_keys(y, {"family", "parameters"}, "young", {"family"})
        fam = y["family"]
        if fam not in YOUNG_PARAMS:
            raise ValidationError("young.family", f"unknown family {fam!r}")
        params = y.get("parameters", {})
        _check_keys(params, YOUNG_PARAMS[fam], "young.parameters", YOUNG_PARAMS[fam])
        try:
            young = YoungFunction.power(_rational(params["p"], "young.parameters.p")) if fam == "power" else YoungFunction.expm1()
        except ValueError as exc:
            raise ValidationError("young.parameters", str(exc)) from None

    if "weight" in doc:
        w = doc["weight"]
        _check_keys(w, {"family", "parameters"}, "weight", {"family"})
        fam = w["family"]
        if fam not in WEIGHT_PARAMS:
            raise ValidationError("weight.family", f"unknown family {fam!r}")
        params = w.get("parameters", {})
        _check_keys(params, WEIGHT_PARAMS[fam], "weight.parameters", WEIGHT_PARAMS[fam])
        try:
            if fam == "constant":
                weight = WeightFunction.constant(_rational(params["c"], "weight.parameters.c"))
            elif fam == "power_decay":
                weight = WeightFunction.power_decay(_rational(params["alpha"], "weight.parameters.alpha"))
            else:
                bps = [_rational(b, f"weight.parameters.breakpoints[{i}]") for i, b in enumerate(params["breakpoints"])]
                lvls = [_rational(v, f"weight.parameters.levels[{i}]") for i, v in enumerate(params["levels"])]
                weight = WeightFunction.step(bps, lvls)
        except (ValueError, TypeError) as exc:
            raise ValidationError("weight.parameters", str(exc)) from None

    if "function" in doc:
        f = doc["function"]
        if not isinstance(f, dict):
            raise ValidationError("function", "expected an object mapping atom -> value")
        for k in f:
            if k not in space:
                raise ValidationError(f"function[{k}]", "not an atom of the space")
        values = tuple(_real(f[a], f"function[{a}]") if a in f else Fraction(0) for a in space.atoms)
        function = PointFunction(space.atoms, values)

    if "seq" in doc:
        s = doc["seq"]
        _check_keys(s, {"prefix", "a", "b", "threshold"}, "seq", {"prefix", "a", "b", "threshold"})
        N = _natural(s["threshold"], "seq.threshold", 1)
        a = _natural(s["a"], "seq.a", 1)
        b = _natural(s["b"], "seq.b", 0)
        prefix = s["prefix"]
        if not isinstance(prefix, dict):
            raise ValidationError("seq.prefix", "expected an object n -> psi(n)")
        table = {}
        for k, v in prefix.items():
            try:
                n = int(k)
            except ValueError:
                raise ValidationError(f"seq.prefix[{k}]", "key must be a natural number") from None
            if not 1 <= n < N:
                raise ValidationError(f"seq.prefix[{k}]", f"prefix keys must lie in 1..{N - 1}")
            table[n] = _natural(v, f"seq.prefix[{k}]", 1)
        missing = sorted(set(range(1, N)) - set(table))
        if missing:
            raise ValidationError(f"seq.prefix[{missing[0]}]", "missing prefix entry")
        seq = EventuallyAffineMap.from_table(table, a, b, N)

    return InstanceFile(space, psi, young, weight, function, seq, raw=doc)


def emit_report(report: dict) -> str:
    """Canonical JSON text of a report; stable under parse/emit round trips."""
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse_report(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
