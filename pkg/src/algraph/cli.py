"""``alg`` command line: one binary, one subcommand per operation.

Exit codes: 0 success, 2 precondition or input error, 1 internal error.
``--json`` prints a versioned report in which every number carries a method
tag. ``ALG_OUTPUT_DIR`` sets the default directory for experiment output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .al_graph import (
    DEFAULT_BFS_BUDGET,
    DEFAULT_BOUND,
    distance_bounds,
    is_absorbable,
    lambda_projection,
    preferred_path,
    vertex_of,
)
from .coxeter import CoxeterError, classify, parse_matrix, parse_type
from .garside import GarsideError, context, gcd, gcd_suffix, lcm, lcm_suffix
from .generic import ExperimentConfig, TooManySimples, run_experiment
from .lox import CertificateReport, NotFound, axis_displacement, search_xG, verify_xG, wpd_enumerate
from .words import ParseError, element_to_json, format_element, format_simple, parse_element

REPORT_SCHEMA = "algraph.report/1"
OUTPUT_ENV = "ALG_OUTPUT_DIR"

PRECONDITION_ERRORS = (CoxeterError, GarsideError, ParseError, NotFound, TooManySimples, ValueError)


@dataclass
class Report:
    command: str
    inputs: dict[str, Any]
    outputs: dict[str, Any] = field(default_factory=dict)
    text: list[str] = field(default_factory=list)
    started: float = field(default_factory=time.perf_counter)

    def num(self, key: str, value, method: str) -> None:
        self.outputs[key] = {"value": value, "method": method}

    def to_json(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "timing": {"seconds": round(time.perf_counter() - self.started, 6), "method": "wall-clock"},
        }


def _ctx(args):
    return context(parse_type(args.type))


def _el(ctx, text: str):
    return parse_element(ctx, text)


# ----------------------------------------------------------------- commands


def cmd_classify(args, rep: Report) -> None:
    t = classify(parse_matrix(args.matrix)) if args.matrix else parse_type(args.type)
    rep.outputs["type"] = str(t)
    rep.num("order", t.order, "exact")
    rep.num("o", t.tau_order, "exact")
    rep.text.append(str(t))


def cmd_nf(args, rep: Report) -> None:
    ctx = _ctx(args)
    x = _el(ctx, args.word)
    rep.outputs["left"] = format_element(x)
    rep.outputs["element"] = element_to_json(x)
    rep.num("inf", x.inf, "exact")
    rep.num("sup", x.sup, "exact")
    rep.num("canonical_length", x.canonical_length, "exact")
    if args.right:
        rfs, p = x.right_normal_form()
        right = " . ".join([format_simple(ctx, f) for f in rfs] + [f"D^{p}"])
        rep.outputs["right"] = right
        rep.text.append(right)
    else:
        rep.text.append(format_element(x))


def _binary(op_prefix: Callable, op_suffix: Callable):
    def run(args, rep: Report) -> None:
        ctx = _ctx(args)
        a, b = _el(ctx, args.a), _el(ctx, args.b)
        res = (op_suffix if args.suffix else op_prefix)(a, b)
        rep.outputs["result"] = format_element(res)
        rep.outputs["element"] = element_to_json(res)
        rep.text.append(format_element(res))

    return run


def cmd_absorb(args, rep: Report) -> None:
    ctx = _ctx(args)
    y = _el(ctx, args.element)
    res = is_absorbable(y, args.bound)
    rep.outputs["verdict"] = res.verdict.value
    rep.outputs["reason"] = res.reason
    rep.outputs["method"] = "certified-search" if res.witness is not None else "theorem-bound" if res.verdict.value == "certified-not" else "heuristic"
    if res.witness is not None:
        rep.outputs["witness"] = format_element(res.witness)
    rep.text.append(res.verdict.value + (f" witness {format_element(res.witness)}" if res.witness is not None else f" ({res.reason})"))


def cmd_path(args, rep: Report) -> None:
    ctx = _ctx(args)
    u, v = vertex_of(_el(ctx, args.src)), vertex_of(_el(ctx, args.dst))
    p = preferred_path(u, v)
    labels = [format_simple(ctx, s) for s in p.labels]
    rep.outputs["labels"] = labels
    rep.outputs["vertices"] = [format_element(w.rep) for w in p.vertices]
    rep.num("length", p.length, "certified-search:preferred-path")
    rep.text.append(" | ".join(labels) if labels else "(empty path)")


def _candidate(ctx, cap: int):
    c = search_xG(ctx, cap)
    r = verify_xG(c)
    if not r.ok:
        raise NotFound(f"candidate failed {r.failures}")
    return c, r


def cmd_lambda(args, rep: Report) -> None:
    ctx = _ctx(args)
    c, _ = _candidate(ctx, args.cap)
    v = vertex_of(_el(ctx, args.element))
    lam = lambda_projection(v, c)
    rep.outputs["xG"] = format_element(c.xG)
    rep.num("lambda", lam, "exact:prefix-criterion")
    rep.text.append(str(lam))


def cmd_dist(args, rep: Report) -> None:
    ctx = _ctx(args)
    c, _ = _candidate(ctx, args.cap)
    u, v = vertex_of(_el(ctx, args.src)), vertex_of(_el(ctx, args.dst))
    d = distance_bounds(u, v, c, args.bound, args.bfs_budget)
    rep.outputs["bounds"] = d.to_json()
    rep.text.append(f"{d.lower} <= d_AL <= {d.upper}  [{d.lower_method}; {d.upper_method}]")


def cmd_xg(args, rep: Report) -> None:
    ctx = _ctx(args)
    c = search_xG(ctx, args.cap)
    cert: CertificateReport = verify_xG(c, args.bound)
    rep.outputs["candidate"] = c.to_json()
    rep.num("r", c.r, "certified-search")
    rep.outputs["certificate"] = cert.to_json()
    rep.outputs["axis_example"] = axis_displacement(c, 10).to_json()
    rep.text.append(format_element(c.xG))
    rep.text.append(f"r = {c.r}  a = {ctx.type.atom_names()[c.atom_a]}  b = {ctx.type.atom_names()[c.atom_b]}")
    for name, ok, detail in cert.items:
        rep.text.append(f"  [{'ok' if ok else 'FAIL'}] {name}" + (f"  {detail}" if detail else ""))
    if not cert.ok:
        raise NotFound(f"certificate failed: {cert.failures}")


def cmd_wpd(args, rep: Report) -> None:
    ctx = _ctx(args)
    c, _ = _candidate(ctx, args.cap)
    if args.N is not None and args.N < 4 * args.kappa + 319:
        print("warning: N below 4κ+319, results are outside the theorem regime", file=sys.stderr)
    r = wpd_enumerate(c, args.kappa, args.N, args.brute, args.bound, allow_small_N=args.N is not None)
    rep.outputs["wpd"] = r.to_json()
    rep.text.append(json.dumps(r.to_json(), indent=2))


def cmd_generic(args, rep: Report) -> None:
    cfg = ExperimentConfig(
        type=str(parse_type(args.type)),
        sampler=args.sampler,
        eta=args.eta,
        l=args.l,
        radius=args.radius,
        N=args.N,
        samples=args.samples,
        seed=args.seed,
        m_max=args.m_max,
        power=args.power,
        window=args.window,
        workers=args.workers,
    )
    r = run_experiment(cfg)
    out = args.out
    if out is None:
        out = Path(os.environ.get(OUTPUT_ENV, ".")) / f"generic_{cfg.type}_{cfg.sampler}_{cfg.seed}.json"
    jp, cp = r.write(out)
    rep.outputs["proportions"] = r.proportions
    rep.outputs["files"] = {"json": str(jp), "csv": str(cp)}
    for k, v in r.proportions.items():
        rep.text.append(f"{k}: {v['k']}/{v['n']}" + (f"  ci95 [{v['ci95'][0]:.3f}, {v['ci95'][1]:.3f}]" if v["ci95"] else ""))
    rep.text.append(f"wrote {jp} and {cp}")


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="alg", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"alg {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help: str, typed: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--json", action="store_true", help="print a JSON report")
        if typed:
            sp.add_argument("--type", required=True, help='type string such as "A3", "I2_7", "E8"')
        sp.set_defaults(fn=fn)
        return sp

    sp = add("classify", cmd_classify, "classify a Coxeter matrix", typed=False)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--matrix", help='rows separated by ";", e.g. "1 3;3 1" (0 or inf for ∞)')
    g.add_argument("--type")

    sp = add("nf", cmd_nf, "normal form of a word")
    sp.add_argument("--word", required=True)
    sp.add_argument("--right", action="store_true", help="print the right normal form")

    for name, pre, suf in (("gcd", gcd, gcd_suffix), ("lcm", lcm, lcm_suffix)):
        sp = add(name, _binary(pre, suf), f"{name} in the prefix order (suffix order with --suffix)")
        sp.add_argument("--a", required=True)
        sp.add_argument("--b", required=True)
        sp.add_argument("--suffix", action="store_true")

    sp = add("absorb", cmd_absorb, "absorbability with a bounded witness search")
    sp.add_argument("--element", required=True)
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)

    sp = add("path", cmd_path, "preferred path between two vertices")
    sp.add_argument("--from", dest="src", default="")
    sp.add_argument("--to", dest="dst", required=True)

    sp = add("lambda", cmd_lambda, "projection to the x_G axis")
    sp.add_argument("--element", required=True)
    sp.add_argument("--cap", type=int, default=12)

    sp = add("dist", cmd_dist, "two-sided bounds on d_AL")
    sp.add_argument("--from", dest="src", default="")
    sp.add_argument("--to", dest="dst", required=True)
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    sp.add_argument("--bfs-budget", type=int, default=DEFAULT_BFS_BUDGET)
    sp.add_argument("--cap", type=int, default=12)

    sp = add("xg", cmd_xg, "search and certify x_G")
    sp.add_argument("--cap", type=int, default=12)
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)

    sp = add("wpd", cmd_wpd, "bounded WPD enumeration")
    sp.add_argument("--kappa", type=int, default=1)
    sp.add_argument("--N", type=int, default=None, help="defaults to 4κ+319")
    sp.add_argument("--brute", type=int, default=6)
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    sp.add_argument("--cap", type=int, default=12)

    sp = add("generic", cmd_generic, "genericity experiment")
    sp.add_argument("--sampler", choices=["ball", "ball-radius", "walk"], default="ball")
    sp.add_argument("--eta", type=int, default=0)
    sp.add_argument("--l", type=int, default=10)
    sp.add_argument("--radius", type=int, default=10)
    sp.add_argument("--N", type=int, default=20)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--m-max", type=int, default=40)
    sp.add_argument("--power", type=int, default=390)
    sp.add_argument("--window", type=float, default=0.2)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", default=None)
    return p


def dispatch(argv: list[str] | None = None) -> tuple[int, Report | None]:
    args = build_parser().parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k not in ("fn", "json")}
    rep = Report(args.command, inputs)
    try:
        args.fn(args, rep)
    except PRECONDITION_ERRORS as exc:
        rep.outputs["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        _emit(args, rep, error=exc)
        return 2, rep
    except Exception as exc:  # internal failure
        rep.outputs["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        _emit(args, rep, error=exc)
        return 1, rep
    _emit(args, rep)
    return 0, rep


def _emit(args, rep: Report, error: Exception | None = None) -> None:
    if args.json:
        print(json.dumps(rep.to_json(), indent=2, default=str))
        return
    for line in rep.text:
        print(line)
    if error is not None:
        print(f"error: {type(error).__name__}: {error}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    code, _ = dispatch(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
