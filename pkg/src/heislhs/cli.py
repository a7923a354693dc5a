"""Command-line interface: ``heislhs {e2,e3,einf,verify,poincare}``.

Exit codes: 0 success, 2 invalid configuration, 3 a verification failed.
Output is deterministic for a fixed configuration; per-check timings are
only emitted with ``--timings``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from . import chain_maps, poincare, resolution
from .pages import checks
from .pages.e2 import build_e2, check_params, generator_table
from .pages.e3 import build_e3, generator_survival
from .pages.weights import build_einfinity, column0_weight_check
from .report import Report

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 2, 3
SUITE_NAMES = ("chain_maps", "resolution", "products", "differentials", "all")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    p: int
    n: int
    r_cap: int
    s_cap: int
    bar_cap: int
    terms: int
    fmt: str
    seed: int
    timings: bool = False
    allow_n1: bool = False


def _is_odd_prime(p: int) -> bool:
    return p >= 3 and all(p % d for d in range(2, int(p**0.5) + 1))


def make_config(args: argparse.Namespace, command: str) -> RunConfig:
    p, n = args.p, args.n
    if not _is_odd_prime(p):
        raise UsageError(f"--p must be an odd prime, got {p}")
    if n < 1 or (n == 1 and not (args.allow_n1 and command == "verify" and args.suite == "chain_maps")):
        raise UsageError("--n must be >= 2 (n = 1 only with --allow-n1 for --suite chain_maps)")
    default_s = 6 if command == "verify" else 2 * p + 4
    cfg = RunConfig(
        p=p,
        n=n,
        r_cap=args.r_cap if args.r_cap is not None else 6,
        s_cap=args.s_cap if args.s_cap is not None else default_s,
        bar_cap=args.bar_cap,
        terms=args.terms,
        fmt=args.format,
        seed=args.seed,
        timings=args.timings,
        allow_n1=args.allow_n1,
    )
    for name in ("r_cap", "s_cap", "bar_cap", "terms"):
        if getattr(cfg, name) < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    return cfg


# -- page commands ------------------------------------------------------

def _cells_doc(page, label_attr: str) -> List[dict]:
    out = []
    for (r, s), c in sorted(page.cells.items()):
        labels = getattr(c, label_attr)
        out.append({"r": r, "s": s, "dim": c.dim, "basis": list(labels)})
    return out


def cmd_e2(cfg: RunConfig):
    page = build_e2(cfg.p, cfg.n, cfg.r_cap, cfg.s_cap)
    rep = checks.check_e2_dimensions(page)
    doc = {
        "page": 2,
        "p": cfg.p,
        "n": cfg.n,
        "r_cap": cfg.r_cap,
        "s_cap": cfg.s_cap,
        "cells": _cells_doc(page, "label_strings"),
        "generators": generator_table(cfg.p, cfg.n, 2),
        "verification": _report_doc(rep, cfg),
    }
    return doc, rep.passed


def _e3_doc(cfg: RunConfig, page, number):
    rep = checks.check_e3_table(page)
    return {
        "page": number,
        "p": cfg.p,
        "n": cfg.n,
        "r_cap": cfg.r_cap,
        "s_cap": cfg.s_cap,
        "cells": _cells_doc(page, "label_names"),
        "generators": generator_survival(page),
        "verification": _report_doc(rep, cfg),
    }, rep


def cmd_e3(cfg: RunConfig):
    page = build_e3(cfg.p, cfg.n, cfg.r_cap, cfg.s_cap)
    doc, rep = _e3_doc(cfg, page, 3)
    return doc, rep.passed


def cmd_einf(cfg: RunConfig):
    e3 = build_e3(cfg.p, cfg.n, cfg.r_cap, cfg.s_cap)
    page, cert = build_einfinity(cfg.p, cfg.n, cfg.r_cap, cfg.s_cap, e3=e3)
    doc, rep = _e3_doc(cfg, page, "infinity")
    doc["certificate"] = cert.as_dict()
    doc["column0_weights"] = [
        {"name": r["name"], "phi": r["weights"][0], "psi": r["weights"][1], "Phi_ok": r["Phi"], "Psi_ok": r["Psi"]}
        for r in column0_weight_check(cfg.p, cfg.n)
    ]
    ok = rep.passed and all(v for k, v in cert.premises.items() if isinstance(v, bool))
    return doc, ok


# -- verification suites ------------------------------------------------

def suite_chain_maps(cfg: RunConfig, tau_fn=None) -> Report:
    p, n, cap = cfg.p, cfg.n, cfg.s_cap
    rep = Report(f"chain_maps p={p} n={n} cap={cap}")
    rep.extend(chain_maps.verify_alpha_chain_map(p, n, cap), "alpha: ")
    rep.extend(chain_maps.verify_homotopy(p, n, cap, tau_fn=tau_fn), "homotopy: ")
    rep.extend(chain_maps.verify_alpha_power_closed_form(p, n, cap, [1, 2, p, p**n]), "alpha powers: ")
    rng = np.random.default_rng(cfg.seed)
    rep.extend(chain_maps.verify_twisted_linearity(p, n, 2, min(cap, 4), rng), "alpha: ")
    if p**n <= 27:
        rep.extend(chain_maps.verify_bar_maps(p, n, cfg.bar_cap), "bar: ")
    return rep


def suite_resolution(cfg: RunConfig, tau_fn=None) -> Report:
    return resolution.verify_exactness(cfg.p, cfg.n, cfg.s_cap)


def suite_products(cfg: RunConfig, tau_fn=None) -> Report:
    p, n = cfg.p, cfg.n
    rep = Report(f"products p={p} n={n}")
    rep.extend(checks.check_cup_properties(p, min(cfg.s_cap, 12)), "H(M): ")
    rep.extend(checks.check_odd_odd_vanishing(p, n, cfg.s_cap), "E2: ")
    rep.extend(checks.check_e2_multiplication(p, n, cfg.r_cap, cfg.s_cap), "E2: ")
    return rep


def suite_differentials(cfg: RunConfig, tau_fn=None) -> Report:
    p, n = cfg.p, cfg.n
    rep = Report(f"differentials p={p} n={n} seed={cfg.seed}")
    rep.extend(checks.d2_formula_table(p, n), "d2 table: ")
    rep.extend(checks.check_d2_squared(p, n, cfg.r_cap, cfg.s_cap))
    rep.extend(checks.check_leibniz(p, n, cfg.r_cap, cfg.s_cap, seed=cfg.seed))
    rep.extend(checks.row0_contract_check(p, n, cfg.r_cap))
    return rep


SUITES: Dict[str, Callable[..., Report]] = {
    "chain_maps": suite_chain_maps,
    "resolution": suite_resolution,
    "products": suite_products,
    "differentials": suite_differentials,
}


def run_verify(cfg: RunConfig, suite: str, tau_fn=None) -> Report:
    names = list(SUITES) if suite == "all" else [suite]
    rep = Report(f"verify {suite} p={cfg.p} n={cfg.n} seed={cfg.seed}")
    for name in names:
        if cfg.n == 1 and name != "chain_maps":
            continue
        rep.extend(SUITES[name](cfg, tau_fn=tau_fn), f"{name}: ")
    return rep


def cmd_verify(cfg: RunConfig, suite: str, tau_fn=None):
    rep = run_verify(cfg, suite, tau_fn=tau_fn)
    doc = {"suite": suite, "p": cfg.p, "n": cfg.n, "seed": cfg.seed, **_report_doc(rep, cfg)}
    return doc, rep.passed


# -- poincare -------------------------------------------------------------

def cmd_poincare(cfg: RunConfig):
    if cfg.p < 5:
        raise UsageError(
            "poincare needs p >= 5: for p = 3 the collapse at the third page is only conditional"
        )
    p = cfg.p
    k_page = min(cfg.terms - 1, cfg.s_cap)
    page = build_e3(p, cfg.n, k_page, k_page)
    rep = poincare.compare(p, cfg.terms, page.dims(), k_page)
    coeffs = poincare.poincare_series(p).coefficients(cfg.terms)
    diag = poincare.diagonal_sums(page.dims(), k_page)
    doc = {
        "p": p,
        "n": cfg.n,
        "series": str(poincare.poincare_series(p)),
        "coefficients": coeffs,
        "comparison": [
            {"k": k, "formula": coeffs[k], "lemma": poincare.lemma_convolution(k, p), "page": diag[k]}
            for k in range(k_page + 1)
        ],
        "verification": _report_doc(rep, cfg),
    }
    return doc, rep.passed


# -- rendering ------------------------------------------------------------

def _report_doc(rep: Report, cfg: RunConfig) -> dict:
    d = rep.as_dict()
    for c in d["checks"]:
        if not cfg.timings:
            c.pop("seconds", None)
    return d


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"not serializable: {type(x)}")


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True, default=_jsonable)
    if "cells" in doc:
        return _render_page(doc, fmt)
    if "comparison" in doc:
        rows = [[str(r["k"]), str(r["formula"]), str(r["lemma"]), str(r["page"])] for r in doc["comparison"]]
        extra = [f"P(t) = {doc['series']}", "coefficients: " + ", ".join(map(str, doc["coefficients"]))]
        return _table(["k", "formula", "lemma", "page"], rows, fmt, extra + _check_lines(doc["verification"]))
    rows = [[c["name"], "PASS" if c["passed"] else "FAIL", _short(c.get("detail"))] for c in doc["checks"]]
    return _table(["check", "result", "detail"], rows, fmt, [])


def _short(detail) -> str:
    if detail in (None, [], {}):
        return ""
    return json.dumps(detail, sort_keys=True, default=_jsonable)


def _check_lines(rep: dict) -> List[str]:
    return [f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}" for c in rep["checks"]]


def _render_page(doc: dict, fmt: str) -> str:
    if fmt == "tsv":
        rows = [[str(c["r"]), str(c["s"]), str(c["dim"]), "; ".join(c["basis"])] for c in doc["cells"]]
        return _table(["r", "s", "dim", "basis"], rows, fmt, _check_lines(doc["verification"]))
    # markdown grid: rows s from the top down, columns r
    grid = {(c["r"], c["s"]): c for c in doc["cells"]}
    rs = sorted({r for r, _ in grid})
    ss = sorted({s for _, s in grid}, reverse=True)
    head = ["s \\ r"] + [str(r) for r in rs]
    rows = []
    for s in ss:
        rows.append([str(s)] + [", ".join(grid[(r, s)]["basis"]) or "0" for r in rs])
    extra = [f"E_{doc['page']}, p = {doc['p']}, n = {doc['n']}"] + _check_lines(doc["verification"])
    if "certificate" in doc:
        cert = doc["certificate"]
        extra.append(f"certificate: {cert['status']} (mod p reading: {cert['mod_p_status']})")
        extra += [f"UNDETERMINED {u['source']} d_{u['m']} -> {u['target']}" for u in cert["undetermined"]]
    return _table(head, rows, fmt, extra)


def _table(head: List[str], rows: List[List[str]], fmt: str, extra: List[str]) -> str:
    if fmt == "tsv":
        lines = ["\t".join(head)] + ["\t".join(r) for r in rows]
        return "\n".join(lines + ["# " + e for e in extra])
    lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    lines += ["| " + " | ".join(c.replace("|", "\\|") for c in r) + " |" for r in rows]
    return "\n".join(lines + [""] + extra) if extra else "\n".join(lines)


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=5, help="odd prime (default 5)")
    common.add_argument("--n", type=int, default=2, help="exponent, n >= 2 (default 2)")
    common.add_argument("--r-cap", type=int, default=None, help="largest column r (default 6)")
    common.add_argument("--s-cap", type=int, default=None, help="largest row s (default 2p+4; 6 for verify)")
    common.add_argument("--bar-cap", type=int, default=3, help="bar degree for the comparison maps")
    common.add_argument("--terms", type=int, default=30, help="series coefficients for poincare")
    common.add_argument("--format", choices=("json", "tsv", "markdown"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--timings", action="store_true", help="include per-check timings")
    common.add_argument("--allow-n1", action="store_true", help="permit n = 1 for --suite chain_maps")

    parser = argparse.ArgumentParser(prog="heislhs", description="LHS spectral sequence of Heis(p^n) over F_p")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("e2", parents=[common], help="second page with labeled bases")
    sub.add_parser("e3", parents=[common], help="third page as d2-homology")
    sub.add_parser("einf", parents=[common], help="E_infinity with the collapse certificate")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=SUITE_NAMES, default="all")
    sub.add_parser("poincare", parents=[common], help="Poincare series and comparison")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command != "verify":
        args.suite = None
    try:
        cfg = make_config(args, args.command)
        if args.command == "e2":
            doc, ok = cmd_e2(cfg)
        elif args.command == "e3":
            doc, ok = cmd_e3(cfg)
        elif args.command == "einf":
            doc, ok = cmd_einf(cfg)
        elif args.command == "verify":
            doc, ok = cmd_verify(cfg, args.suite)
        else:
            doc, ok = cmd_poincare(cfg)
    except UsageError as exc:
        print(f"heislhs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(doc, cfg.fmt) + "\n")
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
