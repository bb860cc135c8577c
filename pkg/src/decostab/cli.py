"""Batch front end: one JSON job in, one JSON report out.

    decostab --job job.json [--seed N] [--out report.json] [--verify-walls]

Exit codes: 0 on success (whatever the verdict), 2 for unusable input,
3 when the input is well formed but the computation's preconditions fail.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction
from typing import Any, Optional

import jsonschema

from . import __version__
from .decor import (
    ConfigClass,
    DecoratedConfig,
    ParameterError,
    WallReport,
    asymptotically_semistable,
    candidate_walls,
    chamber_report,
    default_family,
    delta_bounds,
    delta_semistable,
    verify_walls,
)
from .fans import PreconditionError, chamber_fan, product_instability_probe, product_threshold, test_set
from .kempf import SemistableError, instability_ops
from .ratcore import DimensionError, RatPolynomial, fmt_rat, rat
from .rep import InvalidPointError, TensorPoint, enumerate_weights, state_weights

COMMANDS = ("walls", "check", "instability", "fan", "testset", "thresholds", "probe")

_RAT = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+(/\d+)?\s*$"}]}
_POLY = {"oneOf": [_RAT, {"type": "array", "items": _RAT, "minItems": 1}]}
_NAT = {"type": "integer", "minimum": 0}
_POS = {"type": "integer", "minimum": 1}
_POINT = {
    "type": "object",
    "required": ["r", "a", "coeffs"],
    "properties": {
        "r": _POS, "a": _NAT, "b": _POS, "c": _NAT,
        "coeffs": {"type": "array", "minItems": 1, "items": {
            "type": "object", "required": ["idx", "val"],
            "properties": {"idx": {"type": "array", "items": _POS}, "copy": _POS, "val": _RAT},
        }},
    },
}
_BOUNDS = {"type": "object", "patternProperties": {r"^\d+$": {"type": "array", "items": {"type": "integer"},
                                                             "minItems": 2, "maxItems": 2}},
           "additionalProperties": False}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _RAT}}
_CLASS = {"r": {"type": "integer", "minimum": 2}, "d": {"type": "integer"}, "a": _NAT, "b": _POS, "c": _NAT,
          "dLambda": {"type": "integer"}, "dimX": _POS, "genus": _NAT}

SCHEMAS = {
    "testset": {"type": "object", "required": ["a", "b", "c", "r"],
                "properties": {"a": _NAT, "b": _POS, "c": _NAT, "r": _POS}},
    "fan": {"type": "object", "required": ["r"],
            "properties": {"r": {"type": "integer", "minimum": 2}, "a": _NAT, "b": _POS, "c": _NAT,
                           "weight_sets": {"type": "array", "minItems": 1, "items": {
                               "type": "array", "items": {"type": "array", "items": {"type": "integer"}}}}},
            "oneOf": [{"required": ["weight_sets"]}, {"required": ["a", "b", "c"]}]},
    "walls": {"type": "object", "required": ["r", "d", "a", "b", "c", "bounds"],
              "properties": dict(_CLASS, bounds=_BOUNDS, matched={"type": "boolean"}, delta=_POLY,
                                 point=_POINT)},
    "check": {"type": "object", "required": ["r", "d", "a", "b", "c", "point", "bounds"],
              "properties": dict(_CLASS, bounds=_BOUNDS, point=_POINT, delta=_POLY, basis_changes={
                  "type": "array", "items": _MATRIX})},
    "thresholds": {"type": "object", "required": ["r", "d", "a", "b", "c"],
                   "properties": dict(_CLASS, n_per_rank={"type": "object", "patternProperties": {
                       r"^\d+$": _RAT}, "additionalProperties": False})},
    "instability": {"type": "object", "required": ["point"],
                    "properties": {"point": _POINT, "basis_changes": {"type": "array", "items": _MATRIX}}},
    "probe": {"type": "object", "required": ["w1", "w2"],
              "properties": {"w1": _POINT, "w2": _POINT, "eta": _RAT}},
}

JOB_SCHEMA = {
    "type": "object",
    "required": ["command", "payload"],
    "properties": {"command": {"enum": list(COMMANDS)}, "payload": {"type": "object"},
                   "seed": {"type": "integer"}},
}


class UsageError(Exception):
    pass


def _class(p) -> ConfigClass:
    return ConfigClass(p["r"], p["d"], p["a"], p["b"], p["c"], p.get("dLambda", 0), p.get("dimX", 1), p.get("genus", 0))


def _bounds(p) -> dict:
    return {int(k): tuple(v) for k, v in p["bounds"].items()}


def _poly(x) -> RatPolynomial:
    return RatPolynomial.from_json(x if isinstance(x, list) else rat(x))


def _point(data) -> TensorPoint:
    return TensorPoint.from_json(data)


def _config(p) -> DecoratedConfig:
    cc = _class(p)
    return DecoratedConfig(cc.sheaf(), cc.a, cc.b, cc.c, cc.dLambda, _point(p["point"]), _bounds(p),
                           tuple(p.get("basis_changes", ())))


def _walls(p, opts):
    report = candidate_walls(_class(p), _bounds(p), matched=p.get("matched", True))
    if opts.get("verify_walls"):
        config = _config(p) if "point" in p else None
        report = verify_walls(report, config)
    out = report.to_json()
    if "delta" in p:
        out["chamber"] = chamber_report(report, _poly(p["delta"])).to_json()
    return out


def _check(p, opts):
    config = _config(p)
    family = default_family(config)
    if "delta" in p:
        verdict = delta_semistable(config, _poly(p["delta"]), family)
        return {"mode": "delta", "delta": _poly(p["delta"]).to_json(), **verdict.to_json()}
    return {"mode": "asymptotic", **asymptotically_semistable(config, family).to_json()}


def _thresholds(p, opts):
    return delta_bounds(_class(p), n_per_rank=p.get("n_per_rank")).to_json()


def _testset(p, opts):
    return test_set(p["a"], p["b"], p["c"], p["r"]).to_json()


def _fan(p, opts):
    if "weight_sets" in p:
        sets = [[tuple(w) for w in ws] for ws in p["weight_sets"]]
    else:
        sets = [list(enumerate_weights(p["a"], p["b"], p["c"], p["r"]))]
    for ws in sets:
        if any(len(w) != p["r"] for w in ws):
            raise DimensionError("weight length differs from r")
    return chamber_fan(sets, p["r"]).to_json()


def _instability(p, opts):
    return instability_ops(_point(p["point"]), p.get("basis_changes")).to_json()


def _probe(p, opts):
    w1, w2 = _point(p["w1"]), _point(p["w2"])
    if w1.r != w2.r:
        raise DimensionError("points live over different ranks")
    threshold = product_threshold(state_weights(w1), state_weights(w2), w1.r)
    eta = rat(p["eta"]) if "eta" in p else threshold + 1
    out = product_instability_probe(w1, w2, eta).to_json()
    out["threshold"] = fmt_rat(threshold)
    return out


HANDLERS = {"walls": _walls, "check": _check, "thresholds": _thresholds, "testset": _testset,
            "fan": _fan, "instability": _instability, "probe": _probe}

DOMAIN_ERRORS = (SemistableError, PreconditionError, ParameterError, DimensionError, InvalidPointError,
                 ValueError, TypeError, ZeroDivisionError)


def run(job: dict, seed: Optional[int] = None, verify_walls: bool = False) -> dict:
    """Validate and execute one job; returns the report document."""
    try:
        jsonschema.validate(job, JOB_SCHEMA)
        jsonschema.validate(job["payload"], SCHEMAS[job["command"]])
    except jsonschema.ValidationError as exc:
        raise UsageError(f"schema: {exc.message}") from exc
    if seed is None:
        seed = job.get("seed")
    result = HANDLERS[job["command"]](job["payload"], {"verify_walls": verify_walls, "seed": seed})
    return {"command": job["command"], "payload": job["payload"], "seed": seed,
            "version": __version__, "result": result}


def dumps(report: Any) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".decostab-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fail(code: int, kind: str, reason: str) -> int:
    sys.stderr.write(json.dumps({"error": {"kind": kind, "reason": reason}}, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="decostab", description=__doc__.splitlines()[0])
    parser.add_argument("--job", required=True, help="JSON job file ('-' for stdin)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", default=None, help="report file; stdout when omitted")
    parser.add_argument("--verify-walls", action="store_true")
    args = parser.parse_args(argv)

    try:
        if args.job == "-":
            job = json.load(sys.stdin)
        else:
            with open(args.job) as fh:
                job = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(2, "usage", str(exc))

    try:
        report = run(job, args.seed, args.verify_walls)
    except UsageError as exc:
        return _fail(2, "usage", str(exc))
    except DOMAIN_ERRORS as exc:
        return _fail(3, type(exc).__name__, str(exc))

    text = dumps(report)
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
