"""Command-line front end.

Subcommands: invariants, predict, check, compute, verify, catalog.
Case files are flat key = value text; arrays are whitespace-separated.
Exit code 0 iff every requested identity holds.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import invariants as inv
from .detschemes import HomMatrix, build_flag, dimension_estimate, minors
from .gfpoly import MultiPoly, PolyRing, PrimeField
from .gradedhom import (
    QuotientView,
    SubquotientView,
    coker_tensor_dim,
    ext1_MI_dim,
    hf_quotient,
    hom_dim,
    syzygy_generators,
)
from .invariants import DegreeData
from .verifier import MatrixSpec, run_case, verify_catalog, catalog_names

__all__ = ["main", "parse_case_text", "parse_explicit_matrix"]

_CASE_KEYS = {"t", "c", "r", "n", "a", "b", "matrix", "seed", "prime",
              "window", "checks", "entries"}


@dataclass
class CaseSpec:
    data: DegreeData
    matrix: MatrixSpec
    prime: int
    window: tuple[int, int]
    checks: set[str] | None


def parse_case_text(text: str) -> CaseSpec:
    """Parse the flat key = value case grammar.

    Recognized keys: t, c, r, n (integers); a, b (integer lists);
    matrix (generic|power|random|explicit); seed, prime (integers);
    window (two integers d0 d1); checks (identity names);
    entries (semicolon-separated rows of comma-separated polynomials,
    for matrix = explicit).  Unknown keys are rejected.
    """
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in _CASE_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        values[key] = val.strip()
    for req in ("t", "c", "r", "n", "a", "b"):
        if req not in values:
            raise ValueError(f"missing required key {req!r}")
    data = DegreeData(
        int(values["t"]), int(values["c"]), int(values["r"]), int(values["n"]),
        tuple(int(x) for x in values["a"].split()),
        tuple(int(x) for x in values["b"].split()),
    )
    kind = values.get("matrix", "generic")
    entries = None
    if kind == "explicit":
        if "entries" not in values:
            raise ValueError("matrix = explicit requires an entries key")
        entries = tuple(
            tuple(cell.strip() for cell in row.split(","))
            for row in values["entries"].split(";")
        )
    spec = MatrixSpec(kind=kind, seed=int(values.get("seed", "0")),
                      entries=entries)
    window = (-3, 0)
    if "window" in values:
        parts = values["window"].replace("..", " ").split()
        window = (int(parts[0]), int(parts[1]))
    checks = None
    if "checks" in values:
        checks = set(values["checks"].split())
    return CaseSpec(data, spec, int(values.get("prime", "101")), window, checks)


_TERM_RE = re.compile(r"^\s*(\d+)?\s*\*?\s*((?:x\d+(?:\^\d+)?\s*\*?\s*)*)$")


def parse_poly(text: str, nvars: int, field: PrimeField) -> MultiPoly:
    """Parse '3*x0*x1^2 + x2' style polynomials."""
    text = text.strip()
    if text in {"0", ""}:
        return MultiPoly.zero(nvars, field)
    total = MultiPoly.zero(nvars, field)
    for chunk in re.split(r"\+", text.replace("-", "+-")):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:].strip()
        coeff = 1
        exp = [0] * nvars
        for factor in (f for f in chunk.split("*") if f.strip()):
            factor = factor.strip()
            if factor.isdigit():
                coeff *= int(factor)
                continue
            mm = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
            if not mm:
                raise ValueError(f"cannot parse monomial factor {factor!r}")
            v = int(mm.group(1))
            if v >= nvars:
                raise ValueError(f"variable x{v} out of range (n+1 = {nvars})")
            exp[v] += int(mm.group(2) or 1)
        total = total + MultiPoly(nvars, field, {tuple(exp): sign * coeff})
    return total


def parse_explicit_matrix(data: DegreeData, field: PrimeField,
                          entries) -> HomMatrix:
    nvars = data.n + 1
    ring = PolyRing(nvars, field)
    grid = [[parse_poly(cell, nvars, field) for cell in row] for row in entries]
    return HomMatrix(data, ring, grid, kind="explicit")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _load_spec(args) -> CaseSpec:
    if args.case:
        with open(args.case, "r", encoding="utf-8") as fh:
            spec = parse_case_text(fh.read())
    else:
        if None in (args.t, args.c, args.r, args.n) or not args.a or not args.b:
            raise SystemExit("provide --case FILE or all of --t --c --r --n --a --b")
        data = DegreeData(args.t, args.c, args.r, args.n,
                          tuple(args.a), tuple(args.b))
        spec = CaseSpec(data, MatrixSpec(kind=args.matrix, seed=args.seed or 0),
                        args.prime if args.prime is not None else 101,
                        (-3, 0), None)
    if args.prime is not None:
        spec = CaseSpec(spec.data, spec.matrix, args.prime, spec.window, spec.checks)
    if args.seed is not None and spec.matrix.kind == "random":
        spec = CaseSpec(spec.data, MatrixSpec("random", args.seed, None),
                        spec.prime, spec.window, spec.checks)
    if args.window:
        lo, hi = (int(x) for x in args.window.replace("..", " ").split())
        spec = CaseSpec(spec.data, spec.matrix, spec.prime, (lo, hi), spec.checks)
    return spec


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def cmd_invariants(args) -> int:
    spec = _load_spec(args)
    d = spec.data
    out: dict = {
        "lambda_c": inv.lambda_c(d),
        "s_r": inv.s_r(d),
        "mdg": inv.mdg(d),
        "mdr": inv.mdr(d),
        "ell": {i: inv.ell(d, i) for i in range(1, max(d.c, 1) + 1) if d.t + i - 1 <= d.ncols},
        "K": {i: inv.K(d, i) for i in range(3, d.c + 1)},
        "K_prime": {i: inv.K_prime(d, i) for i in range(3, d.r + 1)},
    }
    if d.c == 1 and d.r == 2:
        out["kappa_1"] = inv.kappa_1(d)
    if d.r >= 2 and d.c == 3 - d.r:
        try:
            out["kappa_prime"] = inv.kappa_prime(d)
        except ValueError as err:
            out["kappa_prime"] = f"unavailable: {err}"
    lines = [f"lambda_c = {out['lambda_c']}", f"s_r = {out['s_r']}",
             f"mdg = {out['mdg']}", f"mdr = {out['mdr']}"]
    for fam in ("ell", "K", "K_prime"):
        for i, val in out[fam].items():
            lines.append(f"{fam}_{i} = {val}")
    for key in ("kappa_1", "kappa_prime"):
        if key in out:
            lines.append(f"{key} = {out[key]}")
    _emit(args, out, "\n".join(lines))
    return 0


def cmd_predict(args) -> int:
    spec = _load_spec(args)
    p = inv.predict_dim(spec.data)
    payload = {"value": p.value, "status": p.status, "source": p.source,
               "corrections": p.corrections}
    _emit(args, payload,
          f"dim W(b;a;r) = {p.value}  [{p.status}; rule: {p.source}]"
          + (f"  corrections: {p.corrections}" if p.corrections else ""))
    return 0


def cmd_check(args) -> int:
    spec = _load_spec(args)
    conds = inv.check_conditions(spec.data)
    _emit(args, conds,
          "\n".join(f"{k} = {v}" for k, v in conds.items()))
    return 0


def cmd_compute(args) -> int:
    spec = _load_spec(args)
    d = spec.data
    field = PrimeField(spec.prime)
    m = spec.matrix.build(d, field)
    lo, hi = spec.window
    quantity = args.quantity
    payload: dict = {"quantity": quantity}
    if quantity == "hf":
        top = minors(m, d.minor_size)
        vals = {v: hf_quotient(top, v) for v in range(lo, hi + 1)}
        payload["values"] = {str(k): v for k, v in vals.items()}
        text = "hf(R/I): " + " ".join(f"{k}:{v}" for k, v in vals.items())
    elif quantity == "hom":
        top = minors(m, d.minor_size)
        vals = {v: hom_dim(top, QuotientView(top), v) for v in range(lo, hi + 1)}
        payload["values"] = {str(k): v for k, v in vals.items()}
        text = "hom(I_A, A): " + " ".join(f"{k}:{v}" for k, v in vals.items())
    elif quantity in {"fib1", "fib2"}:
        flag = build_flag(m)
        if len(flag.stages) < 2:
            raise SystemExit("fiber dimensions need at least one flag step")
        A, B = flag.top, flag.stages[-2]
        if quantity == "fib1":
            vals = {v: hom_dim(B, SubquotientView(A, B), v)
                    for v in range(lo, hi + 1)}
        else:
            vals = {v: coker_tensor_dim(m, A, d.a[-1] + v)
                    for v in range(lo, hi + 1)}
        payload["values"] = {str(k): v for k, v in vals.items()}
        text = f"{quantity}: " + " ".join(f"{k}:{v}" for k, v in vals.items())
    elif quantity == "ext1":
        vals = {v: ext1_MI_dim(m, v) for v in range(lo, hi + 1)}
        payload["values"] = {str(k): v for k, v in vals.items()}
        text = "ext1(MI, MI): " + " ".join(f"{k}:{v}" for k, v in vals.items())
    elif quantity == "syz":
        top = minors(m, d.minor_size)
        block = syzygy_generators(top)
        gens = sorted(block.gens.degrees)
        payload.update({"generator_degrees": gens,
                        "syzygy_degrees": block.syzygy_degrees(),
                        "bound": block.bound, "complete": block.complete})
        text = (f"generators: {gens}\nsyzygies: {block.syzygy_degrees()} "
                f"(bound {block.bound}, complete={block.complete})")
    elif quantity == "dim":
        top = minors(m, d.minor_size)
        est = dimension_estimate(top)
        payload.update({"dim": est, "codim": d.n + 1 - est,
                        "expected_codim": d.expected_codim})
        text = f"dim R/I ~ {est} (codim {d.n + 1 - est}; expected {d.expected_codim})"
    else:
        raise SystemExit(f"unknown quantity {quantity!r}")
    _emit(args, payload, text)
    return 0


def cmd_verify(args) -> int:
    if args.catalog:
        results = verify_catalog(args.catalog, prime=args.prime,
                                 include_heavy=not args.skip_heavy,
                                 parallel=args.parallel)
        ok = True
        payload = []
        for name, rep, bad in results:
            match = not bad
            ok = ok and match
            payload.append({"name": name, "match": match,
                            "mismatches": bad, "report": rep.to_dict()})
            if not args.json:
                line = "match" if match else f"MISMATCH: {bad}"
                print(f"{name:28s} [{line}]  ({rep.elapsed:.1f}s)")
                if args.verbose:
                    print(rep.render())
        if args.json:
            print(json.dumps(payload, sort_keys=True, indent=2))
        return 0 if ok else 1
    specs = []
    if args.case:
        for path in args.case if isinstance(args.case, list) else [args.case]:
            with open(path, "r", encoding="utf-8") as fh:
                specs.append(parse_case_text(fh.read()))
    else:
        specs = [_load_spec(args)]

    def one(spec: CaseSpec):
        return run_case(spec.data, spec.matrix, spec.prime, spec.window,
                        spec.checks)

    if len(specs) > 1:
        with ThreadPoolExecutor() as pool:
            reports = list(pool.map(one, specs))
    else:
        reports = [one(specs[0])]
    ok = all(r.verdict == "pass" for r in reports)
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2))
    else:
        for r in reports:
            print(r.render())
    return 0 if ok else 1


def cmd_catalog(args) -> int:
    from .catalog import CATALOG
    if args.json:
        print(json.dumps([
            {"name": e.name, "description": e.description, "prime": e.prime,
             "heavy": e.heavy}
            for e in CATALOG], indent=2))
    else:
        for e in CATALOG:
            mark = " (heavy)" if e.heavy else ""
            print(f"{e.name:28s}{mark}  {e.description}")
    return 0


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--case", help="case file (flat key = value)")
    sp.add_argument("--t", type=int)
    sp.add_argument("--c", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--a", type=int, nargs="+")
    sp.add_argument("--b", type=int, nargs="+")
    sp.add_argument("--matrix", default="generic",
                    choices=["generic", "power", "random", "explicit"])
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--prime", type=int, default=None)
    sp.add_argument("--window", help="degree window, e.g. -3..5")
    sp.add_argument("--json", action="store_true")


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="detloci",
        description="invariants and exact verification for determinantal loci",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn in (("invariants", cmd_invariants), ("predict", cmd_predict),
                     ("check", cmd_check)):
        sp = sub.add_parser(name)
        _add_common(sp)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("compute")
    sp.add_argument("quantity",
                    choices=["hf", "hom", "fib1", "fib2", "ext1", "syz", "dim"])
    _add_common(sp)
    sp.set_defaults(fn=cmd_compute)

    sp = sub.add_parser("verify")
    _add_common(sp)
    sp.add_argument("--catalog", help="catalog entry name or 'all'")
    sp.add_argument("--skip-heavy", action="store_true")
    sp.add_argument("--parallel", action="store_true")
    sp.add_argument("--verbose", action="store_true")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("catalog")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_catalog)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
