"""Command line entry point: ``run`` executes suites, ``show`` dumps objects.

    python -m appellsys run --config cfg.json --suite appell-identities --out report.json --seed 7
    python -m appellsys show --object appell:gaussian1d --format table
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

import numpy as np

from .calculus import reorder_monomial_to_p
from .sequence import KernelSequence
from .suites import SUITES, RunContext
from .tensor import SymKernel
from .transforms import c_transform, delta, radon_nikodym, s_transform_test

SCHEMA = 1


class ConfigError(ValueError):
    pass


def load_config(path: Optional[str]) -> dict:
    if path is None:
        return {"schema": SCHEMA}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict) or cfg.get("schema") != SCHEMA:
        raise ConfigError(f"config must be a JSON object with \"schema\": {SCHEMA}")
    if "suites" in cfg and not isinstance(cfg["suites"], list):
        raise ConfigError("'suites' must be a list of suite names")
    return cfg


def run_suites(cfg: dict, suites: list[str], seed: Optional[int] = None, timings: bool = False) -> dict:
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise ConfigError(f"unknown suite(s): {', '.join(unknown)}; known: {', '.join(SUITES)}")
    ctx = RunContext.from_config(cfg, seed)
    report = {"schema": SCHEMA, "seed": ctx.seed, "N": ctx.N, "suites": []}
    for name in suites:
        t0 = time.perf_counter()
        cases = SUITES[name](ctx)
        entry = {"suite": name, "cases": [c.to_dict() for c in cases],
                 "pass": all(c.passed for c in cases)}
        if timings:
            entry["seconds"] = round(time.perf_counter() - t0, 3)
        report["suites"].append(entry)
    report["pass"] = all(s["pass"] for s in report["suites"])
    return report


def _num(z: complex):
    z = complex(z)
    return z.real + 0.0 if z.imag == 0 else [z.real + 0.0, z.imag + 0.0]


def _parse_object(obj: str) -> tuple[str, Optional[str], Optional[list[float]]]:
    kind, _, rest = obj.partition(":")
    name, _, at = rest.partition("@")
    z = [float(v) for v in at.split(",")] if at else None
    return kind, name or None, z


def show_object(obj: str, cfg: dict, N: int) -> dict:
    """Objects: appell:<m>, moments:<m>, delta:<m>[@z], rn:<m>@z, transforms:<m>, empty[:d]."""
    kind, name, z = _parse_object(obj)
    if kind == "empty":
        d = int(name) if name else 1
        return {"object": obj, "sequence": KernelSequence.zeros(d, N, "Q").to_dict()}
    if name is None:
        raise ConfigError(f"object {obj!r} needs a measure name, e.g. {kind}:gaussian1d")
    ctx = RunContext.from_config({**cfg, "N": N}, seed=0)
    sys_ = ctx.system(name)
    if kind in ("appell", "moments"):
        table = sys_.B if kind == "appell" else sys_.M
        if sys_.d == 1:
            return {"object": obj, "values": [_num(k.coeffs[0]) for k in table]}
        return {"object": obj, "sequence": KernelSequence(sys_.d, "monomial", tuple(table), sys_.measure_id).to_dict()}
    if kind == "delta":
        return {"object": obj, "sequence": delta(sys_, z if z is not None else np.zeros(sys_.d)).to_dict()}
    if kind == "rn":
        if z is None:
            raise ConfigError("rn objects need a point, e.g. rn:gaussian1d@0.5")
        return {"object": obj, "sequence": radon_nikodym(sys_, z).to_dict()}
    if kind == "transforms":
        if sys_.d != 1:
            raise ConfigError("transforms report is one-dimensional")
        # x^2 in the P-basis; S and C coincide for Gaussian measures only
        f = KernelSequence.from_kernels([SymKernel.zeros(1, 0), SymKernel.zeros(1, 1),
                                         SymKernel.tensor_power([1.0], 2)], "monomial", sys_.measure_id)
        phi = reorder_monomial_to_p(f, sys_)
        rows = []
        for th in np.linspace(-0.5, 0.5, 5):
            S = s_transform_test(phi, sys_, [th])
            C = c_transform(phi, [th])
            rows.append({"theta": float(th), "S": _num(S), "C": _num(C), "diff": abs(S - C)})
        return {"object": obj, "test_function": "x^2", "rows": rows}
    raise ConfigError(f"unknown object kind {kind!r}")


def _fmt(v) -> str:
    return f"{v:.10g}" if not isinstance(v, list) else f"{v[0]:.10g}{v[1]:+.10g}j"


def _table(out: dict) -> str:
    lines = [f"# {out['object']}"]
    if "values" in out:
        lines += [f"{n:3d}  {_fmt(v)}" for n, v in enumerate(out["values"])]
    elif "sequence" in out:
        seq = KernelSequence.from_dict(out["sequence"])
        lines.append(seq.table())
    elif "rows" in out:
        lines.append(f"test function {out['test_function']}")
        lines.append(f"{'theta':>8} {'S':>14} {'C':>14} {'|S-C|':>10}")
        for r in out["rows"]:
            lines.append(f"{r['theta']:8.3f} {_fmt(r['S']):>14} {_fmt(r['C']):>14} {r['diff']:10.3e}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="appellsys", description="Appell system experiments")
    sub = ap.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="run identity and oracle suites")
    r.add_argument("--config", required=True)
    r.add_argument("--suite", nargs="*", default=None, help="suite names; overrides the config list")
    r.add_argument("--out", default=None, help="report path (stdout if omitted)")
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--timings", action="store_true", help="record wall time per suite (breaks byte stability)")
    s = sub.add_parser("show", help="dump a kernel table, sequence or transform report")
    s.add_argument("--object", required=True)
    s.add_argument("--format", choices=("json", "table"), default="json")
    s.add_argument("--config", default=None)
    s.add_argument("--N", type=int, default=None)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "run":
            cfg = load_config(args.config)
            suites = args.suite if args.suite is not None else cfg.get("suites", [])
            if args.seed is not None and not 0 <= args.seed < 2 ** 64:
                raise ConfigError("seed must be an unsigned 64-bit integer")
            report = run_suites(cfg, suites, args.seed, args.timings)
            text = json.dumps(report, indent=2, sort_keys=False) + "\n"
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            for s in report["suites"]:
                for c in s["cases"]:
                    if not c["pass"]:
                        print(f"FAIL {s['suite']}/{c['name']}: {c['residual']:.3e} > {c['tolerance']:.1e}",
                              file=sys.stderr)
            return 0 if report["pass"] else 1
        cfg = load_config(args.config)
        N = args.N if args.N is not None else int(cfg.get("N", 8))
        out = show_object(args.object, cfg, N)
        print(json.dumps(out, indent=2) if args.format == "json" else _table(out))
        return 0
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
