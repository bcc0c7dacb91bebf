"""Command-line front end: configuration, solver runs, claim verification.

Exit codes: 0 all checks passed, 1 a verification claim failed, 2 usage or
configuration error, 3 numerical failure or I/O error.  Every failure also
writes a single-line JSON object {"error": ..., "exit_code": ...} to stderr.

Configuration precedence is flags > JSON config file > defaults, and the
resolved configuration is echoed into every output.  Floats are serialized
with 17 significant digits, which round-trips binary doubles exactly.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from math import isfinite
from typing import Optional

import numpy as np

from .galerkin import solve_2d_spectrum
from .harness import CLAIMS, resolve_claim_id, run_claim, run_suite, suite_passed
from .model import (BC_DIRICHLET, BC_NEUMANN, CapabilityError, Domain,
                    InvalidArgumentError, NumericalError, PhlabError, RunConfig,
                    Spectrum, merge_config, validate_config)
from .oned import solve_1d_spectrum

SPECTRUM_FORMATS = ("json", "csv")
REPORT_FORMATS = ("json", "markdown")


class _Parser(argparse.ArgumentParser):
    """Argument parser whose failures map onto the usage exit code."""

    def error(self, message):
        raise InvalidArgumentError(message)


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("problem configuration")
    g.add_argument("--m", type=int, default=None, help="operator order (1..3)")
    g.add_argument("--bc", choices=(BC_DIRICHLET, BC_NEUMANN), default=None,
                   help="boundary condition family")
    g.add_argument("--n", type=int, default=None, help="basis size per axis (2D)")
    g.add_argument("--count", type=int, default=None, help="number of eigenvalues")
    g.add_argument("--k-max", dest="k_max", type=int, default=None,
                   help="largest eigenvalue index a claim compares")
    g.add_argument("--length", type=float, default=None, help="interval length (1D)")
    g.add_argument("--lx", type=float, default=None, help="rectangle width")
    g.add_argument("--ly", type=float, default=None, help="rectangle height")
    g.add_argument("--domain", choices=("square", "rectangle"), default=None,
                   help="square forces ly = lx")
    g.add_argument("--seed", type=int, default=None, help="sample generator seed")
    g.add_argument("--perturb", type=float, default=None,
                   help="failure injection: relative scaling of computed free "
                        "eigenvalues inside claims")
    g.add_argument("--tol-zero", dest="tol_zero", type=float, default=None)
    g.add_argument("--tol-root", dest="tol_root", type=float, default=None)
    g.add_argument("--tol-identity", dest="tol_identity", type=float, default=None)
    g.add_argument("--margin-factor", dest="margin_factor", type=float, default=None)
    o = common.add_argument_group("output")
    o.add_argument("--config", default=None, metavar="PATH",
                   help="JSON config file (flags override it)")
    o.add_argument("--format", choices=("json", "csv", "markdown"), default=None)
    o.add_argument("--out", default=None, metavar="PATH",
                   help="write output here instead of stdout")
    o.add_argument("--stable-output", dest="stable_output", action="store_true",
                   help="omit runtime metadata so repeated runs are byte-identical")

    top = _Parser(prog="phlab",
                  description="Eigenvalue comparisons for clamped and free "
                              "polyharmonic problems on intervals and rectangles.")
    sub = top.add_subparsers(dest="command", metavar="command")
    sub.add_parser("oned", parents=[common],
                   help="exact interval spectrum via the boundary determinant")
    sub.add_parser("spectrum2d", parents=[common],
                   help="rectangle spectrum via the conforming Galerkin method")
    p_verify = sub.add_parser("verify", parents=[common],
                              help="run one or more verification claims")
    p_verify.add_argument("claims", nargs="+", metavar="claim",
                          help="claim ids or aliases; see --list")
    sub.add_parser("report", parents=[common],
                   help="run the full suite and render a Markdown report")
    sub.add_parser("all", parents=[common],
                   help="run the full verification suite")
    return top


def thread_count() -> Optional[int]:
    """Worker count from PHLAB_THREADS; default is the logical processor count."""
    raw = os.environ.get("PHLAB_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        val = int(raw)
    except ValueError:
        val = 0
    if val < 1:
        raise InvalidArgumentError(
            f"PHLAB_THREADS must be a positive integer, got {raw!r}")
    return val


def _resolve_config(ns: argparse.Namespace) -> RunConfig:
    file_layer: dict = {}
    if ns.config is not None:
        try:
            with open(ns.config, "r", encoding="utf-8") as fh:
                file_layer = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f"config file {ns.config}: {exc}") from exc
        if not isinstance(file_layer, dict):
            raise InvalidArgumentError("config file must hold a JSON object")
    flag_layer = {k: getattr(ns, k) for k in
                  ("m", "bc", "n", "count", "k_max", "length", "lx", "ly", "seed",
                   "perturb", "tol_zero", "tol_root", "tol_identity", "margin_factor")}
    cfg = validate_config(merge_config(file_layer, flag_layer))
    if ns.domain == "square":
        cfg = cfg.with_overrides(ly=cfg.lx)
    return cfg


def config_as_json(cfg: RunConfig) -> dict:
    return {
        "m": cfg.m, "bc": cfg.bc, "n": cfg.n, "count": cfg.count,
        "k_max": cfg.k_max, "length": cfg.length, "lx": cfg.lx, "ly": cfg.ly,
        "seed": cfg.seed, "perturb": cfg.perturb,
        "tol_zero": cfg.tol.tol_zero, "tol_root": cfg.tol.tol_root,
        "tol_identity": cfg.tol.tol_identity, "margin_factor": cfg.tol.margin_factor,
    }


# --- serialization ----------------------------------------------------------

def dumps17(obj, indent: int = 0) -> str:
    """JSON text with dict keys sorted and floats at 17 significant digits."""
    pad, pad1 = "  " * indent, "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not isfinite(v):
            raise NumericalError(f"non-finite value {v!r} in output")
        return format(v, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [f"{pad1}{json.dumps(str(k))}: {dumps17(obj[k], indent + 1)}"
                for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(rows) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        rows = [f"{pad1}{dumps17(v, indent + 1)}" for v in seq]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    raise InvalidArgumentError(f"cannot serialize {type(obj).__name__}")


def spectrum_csv(spec: Spectrum) -> str:
    lines = ["k,value"]
    for k, v in enumerate(spec.values, start=1):
        lines.append(f"{k},{format(float(v), '.17g')}")
    return "\n".join(lines) + "\n"


def parse_spectrum_csv(text: str) -> tuple[list[int], list[float]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "k,value":
        raise InvalidArgumentError("CSV header must be exactly 'k,value'")
    ks, vals = [], []
    for ln in lines[1:]:
        a, b = ln.split(",")
        ks.append(int(a))
        vals.append(float(b))
    return ks, vals


def _badge(passed: bool) -> str:
    return "**PASS**" if passed else "**FAIL**"


def markdown_report(reports, cfg: RunConfig, runtime_ms: Optional[int]) -> str:
    out = ["# verification report", ""]
    out.append("| claim | result | margin |")
    out.append("| --- | --- | --- |")
    for r in reports:
        out.append(f"| {r.claim_id} | {_badge(r.passed)} | {format(r.margin, '.17g')} |")
    out.append("")
    for r in reports:
        out.append(f"## {r.claim_id}")
        out.append("")
        claim = CLAIMS.get(r.claim_id)
        if claim is not None:
            out.append(claim.statement)
            out.append("")
        out.append(f"{_badge(r.passed)} with margin {format(r.margin, '.17g')}")
        out.append("")
        if r.notes:
            out.append(r.notes)
            out.append("")
        out.append("| k | lhs | rhs | slack |")
        out.append("| --- | --- | --- | --- |")
        for rec in r.details:
            out.append(f"| {rec.k} | {format(rec.lhs, '.17g')} | "
                       f"{format(rec.rhs, '.17g')} | {format(rec.slack, '.17g')} |")
        out.append("")
        out.append("```json")
        out.append(dumps17(r.config_echo))
        out.append("```")
        out.append("")
    out.append("## resolved configuration")
    out.append("")
    out.append("```json")
    out.append(dumps17(config_as_json(cfg)))
    out.append("```")
    if runtime_ms is not None:
        out.append("")
        out.append(f"runtime: {runtime_ms} ms")
    return "\n".join(out) + "\n"


# --- command execution ------------------------------------------------------

def _pick_format(ns, allowed: tuple[str, ...], default: str) -> str:
    fmt = ns.format or default
    if fmt not in allowed:
        raise InvalidArgumentError(
            f"format {fmt!r} is not valid for this command; choose from {allowed}")
    return fmt


def _spectrum_command(ns, cfg: RunConfig, t0: float) -> tuple[str, bool]:
    if cfg.bc is None:
        raise InvalidArgumentError("this command needs --bc dirichlet or --bc neumann")
    if ns.command == "oned":
        spec = solve_1d_spectrum(cfg.m, cfg.bc, cfg.count, cfg.length, cfg.tol)
    else:
        dom = Domain.rectangle(cfg.lx, cfg.ly)
        spec = solve_2d_spectrum(cfg.m, cfg.bc, cfg.n, dom, cfg.count, cfg.tol)
    fmt = _pick_format(ns, SPECTRUM_FORMATS, "json")
    if fmt == "csv":
        return spectrum_csv(spec), True
    payload = spec.as_json()
    payload["config"] = config_as_json(cfg)
    if not ns.stable_output:
        payload["runtime_ms"] = int(round(1000.0 * (time.perf_counter() - t0)))
    return dumps17(payload) + "\n", True


def _report_command(ns, cfg: RunConfig, t0: float) -> tuple[str, bool]:
    workers = thread_count()
    if ns.command == "verify":
        tokens = [resolve_claim_id(t) for t in ns.claims]
        if workers == 1 or len(tokens) == 1:
            reports = [run_claim(t, cfg) for t in tokens]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                reports = list(pool.map(lambda t: run_claim(t, cfg), tokens))
    else:
        reports = run_suite(cfg, max_workers=workers)
    passed = suite_passed(reports)
    runtime = None if ns.stable_output else int(round(1000.0 * (time.perf_counter() - t0)))
    default = "markdown" if ns.command == "report" else "json"
    fmt = _pick_format(ns, REPORT_FORMATS, default)
    if fmt == "markdown":
        return markdown_report(reports, cfg, runtime), passed
    payload = {
        "schema_version": "1",
        "command": ns.command,
        "passed": passed,
        "claims": [r.as_json() for r in reports],
        "config": config_as_json(cfg),
    }
    if runtime is not None:
        payload["runtime_ms"] = runtime
    return dumps17(payload) + "\n", passed


def _deliver(text: str, out_path: Optional[str]) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv: Optional[list[str]] = None) -> int:
    t0 = time.perf_counter()
    try:
        ns = _build_parser().parse_args(argv)
        if ns.command is None:
            raise InvalidArgumentError("missing command; try 'phlab --help'")
        cfg = _resolve_config(ns)
        if ns.command in ("oned", "spectrum2d"):
            text, passed = _spectrum_command(ns, cfg, t0)
        else:
            text, passed = _report_command(ns, cfg, t0)
        _deliver(text, ns.out)
        return 0 if passed else 1
    except (InvalidArgumentError, CapabilityError) as exc:
        return _fail(str(exc), 2)
    except (NumericalError, OSError) as exc:
        return _fail(str(exc), 3)
    except PhlabError as exc:
        return _fail(str(exc), 3)


def _fail(message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": message, "exit_code": code}) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
