"""Command-line front end.

Exit codes: 0 completed, 2 completed with a counterexample or discovery,
1 input error. Reports are deterministic: the same arguments and seed give
byte-identical output whatever the worker count.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from fractions import Fraction

import numpy as np

from .concave import (
    COUNTEREXAMPLE,
    concavity_scan,
    determinant_check,
    p2_certificate,
    set_membership,
)
from .hyperb import conjecture_trial
from .identities import run_identity_suite
from .polyexact import parse_poly, parse_scalars
from .rootcrit import CriteriaInconsistency, battery
from .symfun import CoeffVec

EXIT_OK, EXIT_INPUT, EXIT_DISCOVERY = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# -- emission ----------------------------------------------------------------


def _jsonable(obj):
    if hasattr(obj, "as_dict"):
        return _jsonable(obj.as_dict())
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _json_scalar(v) -> str:
    if v is None:
        return "null"
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            return '"' + repr(v) + '"'
        s = format(v, ".17g")
        return s if any(ch in s for ch in ".en") else s + ".0"
    s = str(v)
    out = ['"']
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with stable key order, floats at 17 significant digits."""
    pad, inner = " " * (indent * _level), " " * (indent * (_level + 1))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{_json_scalar(k)}: {to_json(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_json_scalar(v) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + to_json(v, indent, _level + 1) for v in obj) \
            + "\n" + pad + "]"
    return _json_scalar(obj)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}.{i}")
    elif isinstance(obj, list):
        yield prefix, ";".join(_json_scalar(v).strip('"') for v in obj)
    else:
        yield prefix, _json_scalar(obj).strip('"')


def to_csv(obj, header=("field", "value")) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for k, v in _flatten(obj):
        w.writerow([k, v])
    return buf.getvalue()


def to_pretty(obj) -> str:
    return "\n".join(f"{k:<40} {v}" for k, v in _flatten(obj)) + "\n"


def emit(report, fmt: str = "json", csv_header=("field", "value")) -> bytes:
    data = _jsonable(report)
    if fmt == "json":
        text = to_json(data) + "\n"
    elif fmt == "csv":
        text = to_csv(data, csv_header)
    elif fmt == "pretty":
        text = to_pretty(data)
    else:
        raise InputError(f"unknown format {fmt!r}")
    return text.encode("utf-8")


# -- configuration -------------------------------------------------------------


def read_config(path: str) -> dict:
    """Flat key=value file; '#' starts a comment; keys use CLI spellings."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read config {path!r}: {exc.strerror}") from None
    for no, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InputError(f"config line {no}: expected key=value, got {line!r}")
        out[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return out


_INT_KEYS = {"n", "p", "samples", "seed", "trials", "points", "max_p", "max_n",
             "instances", "workers", "R", "tp_order", "id"}
_FLOAT_KEYS = {"tol"}
_BOOL_KEYS = {"descending", "timing"}

_DEFAULTS = {
    "battery": {"tp_order": None},
    "certify-p2": {},
    "concavity": {"p": None, "samples": 1000, "seed": 0, "tol": 1e-9, "workers": 1},
    "membership": {"p": None, "samples": 1000, "seed": 0},
    "identities": {"max_p": 6, "max_n": 6, "instances": 100, "seed": 0},
    "conjecture": {"p": 2, "n": 3, "trials": 1000, "seed": 0, "R": 10, "samples": 500,
                   "workers": 1},
    "detcheck": {"n": None, "points": 100, "seed": 0},
}


def _convert(key, value):
    if not isinstance(value, str):
        return value
    try:
        if key in _INT_KEYS:
            return int(value)
        if key in _FLOAT_KEYS:
            return float(value)
    except ValueError:
        raise InputError(f"invalid value {value!r} for {key}") from None
    if key in _BOOL_KEYS:
        if value.lower() in ("1", "true", "yes", "on"):
            return True
        if value.lower() in ("0", "false", "no", "off"):
            return False
        raise InputError(f"invalid value {value!r} for {key}")
    return value


def resolve(args: argparse.Namespace) -> dict:
    """Merge command line over config file over defaults; SIGMA_SEED wins for the seed."""
    cfg = read_config(args.config) if args.config else {}
    out = dict(_DEFAULTS.get(args.command, {}))
    for k, v in cfg.items():
        out[k] = _convert(k, v)
    for k, v in vars(args).items():
        if v is not None:
            out[k] = v
    for k in _BOOL_KEYS:
        out.setdefault(k, False)
    env = os.environ.get("SIGMA_SEED")
    if env is not None and "seed" in out:
        out["seed"] = _convert("seed", env)
    return out


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "pretty"], default=None)
    common.add_argument("--output", default=None)
    common.add_argument("--config", default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--descending", action="store_true", default=None,
                        help="coefficient lists are given highest degree first")

    ap = _Parser(prog="sigmaconc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("battery", parents=[common], help="real-rootedness criteria")
    s.add_argument("poly", nargs="?", help="coefficients, ascending, e.g. 0,1/3,1,1")
    s.add_argument("--tp-order", dest="tp_order", type=int)

    s = sub.add_parser("certify-p2", parents=[common], help="exact p=2 certificate")
    s.add_argument("--a")
    s.add_argument("--n", type=int)

    s = sub.add_parser("concavity", parents=[common], help="sampled concavity scan")
    s.add_argument("--a")
    s.add_argument("--p", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--samples", type=int)
    s.add_argument("--tol", type=float)
    s.add_argument("--workers", type=int)

    s = sub.add_parser("membership", parents=[common], help="membership in Xi, X and K")
    s.add_argument("--a")
    s.add_argument("--n", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--samples", type=int)

    s = sub.add_parser("identities", parents=[common], help="exact identity suites")
    s.add_argument("--max-p", dest="max_p", type=int)
    s.add_argument("--max-n", dest="max_n", type=int)
    s.add_argument("--instances", type=int)

    s = sub.add_parser("conjecture", parents=[common], help="randomized conjecture trials")
    s.add_argument("id", nargs="?", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--trials", type=int)
    s.add_argument("--R", dest="R", type=int)
    s.add_argument("--samples", type=int)
    s.add_argument("--workers", type=int)
    s.add_argument("--timing", action="store_true", default=None,
                   help="include elapsed_ms (makes output run-dependent)")

    s = sub.add_parser("detcheck", parents=[common], help="closed-form determinant signs")
    s.add_argument("--kind", choices=["p3", "sparse-n"])
    s.add_argument("--a")
    s.add_argument("--n", type=int)
    s.add_argument("--points", type=int)
    return ap


def _need(cfg, *keys):
    for k in keys:
        if cfg.get(k) is None:
            raise InputError(f"missing required option --{k.replace('_', '-')}")


def _coeffs(cfg, key="a") -> CoeffVec:
    cs = parse_scalars(cfg[key])
    if cfg.get("descending"):
        cs = cs[::-1]
    if not cs:
        raise InputError(f"empty coefficient list for --{key}")
    return CoeffVec(tuple(cs))


def _pad(a: CoeffVec, p) -> CoeffVec:
    if p is None:
        return a
    if a.p > p:
        raise InputError(f"--a has {len(a)} entries, more than p+1={p + 1}")
    return CoeffVec(a.a + (Fraction(0),) * (p - a.p))


# -- subcommands -------------------------------------------------------------------


def cmd_battery(cfg):
    _need(cfg, "poly")
    P = parse_poly(cfg["poly"], descending=cfg.get("descending", False))
    try:
        rep = battery(P, tp_order=cfg.get("tp_order"))
    except CriteriaInconsistency as exc:
        return {"polynomial": cfg["poly"], "inconsistency": str(exc)}, EXIT_DISCOVERY
    return rep, EXIT_OK


def cmd_certify_p2(cfg):
    _need(cfg, "a", "n")
    return p2_certificate(_coeffs(cfg), cfg["n"]), EXIT_OK


def cmd_concavity(cfg):
    _need(cfg, "a", "n")
    a = _pad(_coeffs(cfg), cfg.get("p"))
    v = concavity_scan(a, cfg["n"], samples=cfg["samples"], seed=cfg["seed"],
                       p=cfg.get("p"), tol=cfg["tol"], workers=cfg["workers"])
    return v, EXIT_DISCOVERY if v.status == COUNTEREXAMPLE else EXIT_OK


def cmd_membership(cfg):
    _need(cfg, "a", "n")
    a = _pad(_coeffs(cfg), cfg.get("p"))
    m = set_membership(a, cfg["n"], samples=cfg["samples"], seed=cfg["seed"])
    discovery = any(f.startswith("refutes") or f.startswith("inconsistent") for f in m.flags)
    return m, EXIT_DISCOVERY if discovery else EXIT_OK


def cmd_identities(cfg):
    r = run_identity_suite(cfg["max_p"], cfg["max_n"], cfg["instances"], cfg["seed"])
    return r, EXIT_DISCOVERY if r.failures else EXIT_OK


def cmd_conjecture(cfg):
    _need(cfg, "id")
    if cfg["workers"] < 1:
        raise InputError("--workers must be >= 1")
    r = conjecture_trial(cfg["id"], trials=cfg["trials"], seed=cfg["seed"],
                         workers=cfg["workers"], timing=cfg.get("timing", False),
                         p=cfg["p"], n=cfg["n"], R=cfg["R"], samples=cfg["samples"])
    return r, EXIT_DISCOVERY if r.counterexamples else EXIT_OK


def cmd_detcheck(cfg):
    _need(cfg, "kind", "a")
    r = determinant_check(_coeffs(cfg), cfg["kind"], cfg.get("n"), cfg["points"], cfg["seed"])
    return r, EXIT_DISCOVERY if r.disagree else EXIT_OK


COMMANDS = {
    "battery": cmd_battery,
    "certify-p2": cmd_certify_p2,
    "concavity": cmd_concavity,
    "membership": cmd_membership,
    "identities": cmd_identities,
    "conjecture": cmd_conjecture,
    "detcheck": cmd_detcheck,
}


def _battery_csv(report) -> bytes:
    d = _jsonable(report)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["criterion", "value"])
    for k, v in d.items():
        if k != "polynomial":
            w.writerow([k, _json_scalar(v).strip('"')])
    return buf.getvalue().encode("utf-8")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = resolve(args)
        report, code = COMMANDS[args.command](cfg)
        fmt = cfg.get("format") or "json"
        if fmt == "csv" and args.command == "battery" and hasattr(report, "as_dict"):
            data = _battery_csv(report)
        else:
            data = emit(report, fmt)
    except (InputError, ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    out = cfg.get("output")
    if out:
        try:
            with open(out, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            print(f"error: cannot write {out!r}: {exc.strerror}", file=stderr)
            return EXIT_INPUT
    else:
        stdout.write(data)
        stdout.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
