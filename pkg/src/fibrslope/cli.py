"""Command-line front end.

Exit codes: 0 success, 1 validation or parse error, 2 a certified bound
contradicted by an example, 3 I/O error. Data goes to stdout, diagnostics
to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import io
from .double_cover import (
    BoundsProfile,
    DoubleCoverData,
    SingularityForest,
    all_bounds,
    branch_positivity_check,
    classify_singularities,
    invariants_from_double_cover,
    irregular_constraint,
    lambda_decomposition,
)
from .errors import DegenerateFibrationError, FibrSlopeError, ParseError
from .families import (
    FAMILY_PARAMS,
    ExampleRecord,
    build_example,
    canonical_family,
    family_grid,
    violation_report,
)
from .invariants import GlobalSurfaceData, check_noether, classify_basic, conjecture_bound, relative_invariants, slope
from .numeric import format_rational, parse_rational
from .xiao import WEIGHT_GRID, HNData, chi_from_hn, combined_bound, optimize_combined, xiao_bound

EXIT_OK, EXIT_INVALID, EXIT_CONTRADICTION, EXIT_IO = 0, 1, 2, 3

TSV_COLUMNS = ("family", "params", "g", "q_f", "omega2", "chi", "slope", "rhs", "margin")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"{self.prog}: {message}")


class _Contradiction(Exception):
    pass


def _maybe_slope(inv):
    try:
        return slope(inv)
    except (DegenerateFibrationError, FibrSlopeError):
        return None


def _inv_json(inv) -> dict:
    return {"g": inv.g, "b": inv.b, "q_f": inv.q_f, "omega2": inv.omega2, "chi": inv.chi, "e": inv.e}


def cmd_invariants(args) -> object:
    data = GlobalSurfaceData.from_dict(io.load_json(args.input))
    inv = relative_invariants(data)
    out = {
        "invariants": _inv_json(inv),
        "slope": _maybe_slope(inv),
        "validity": classify_basic(inv),
        "conjecture": None,
    }
    if inv.q_f is not None and inv.q_f < inv.g:
        out["conjecture"] = conjecture_bound(inv.g, inv.q_f)
    return out


def cmd_double_cover(args) -> object:
    data = DoubleCoverData.from_dict(io.load_json(args.input))
    inv = invariants_from_double_cover(data)
    out = {
        "invariants": _inv_json(inv),
        "slope": _maybe_slope(inv),
        "noether": check_noether(inv),
        "branch_positivity": branch_positivity_check(data),
        "irregular_constraints": {},
    }
    if data.q_pi is not None and data.q_pi > 0:
        out["irregular_constraints"]["positive_qpi"] = _verdict(irregular_constraint(data, "positive_qpi"))
        g_prime = args.g_prime if args.g_prime is not None else data.q_pi
        out["irregular_constraints"]["image_genus"] = {
            "g_prime": g_prime,
            **_verdict(irregular_constraint(data, "image_genus", g_prime)),
        }
    elif args.g_prime is not None:
        out["irregular_constraints"]["image_genus"] = {
            "g_prime": args.g_prime,
            **_verdict(irregular_constraint(data, "image_genus", args.g_prime)),
        }
    if args.lam is not None:
        lam = parse_rational(args.lam)
        br = lambda_decomposition(data, lam)
        out["lambda_decomposition"] = {
            "lambda": lam,
            "terms": [{"name": t.name, "coefficient": t.coefficient, "quantity": t.quantity, "value": t.value} for t in br.terms],
            "total": br.total,
            "expected": (2 * data.g + 1 - 3 * data.gamma) * (inv.omega2 - lam * inv.chi),
        }
    return out


def _verdict(v) -> dict:
    return {"lhs": v.lhs, "rhs": v.rhs, "slack": v.slack, "satisfied": v.satisfied}


def cmd_resolve(args) -> object:
    forest = SingularityForest.from_dict(io.load_json(args.forest))
    idx = classify_singularities(forest)
    for w in idx.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return {
        "s2_correction": idx.s2_correction,
        "s_odd": idx.s_odd,
        "s_even": idx.s_even,
        "n2_total": idx.n2_total,
        "minus1_curves": idx.minus1_curves,
        "warnings": list(idx.warnings),
    }


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"malformed index list {text!r}") from None


def cmd_xiao(args) -> object:
    hn = HNData.from_dict(io.load_json(args.hn))
    sub = None if args.subsequence is None else _parse_int_list(args.subsequence)
    res = xiao_bound(hn, sub)
    out = {
        "chi": chi_from_hn(hn),
        "bound": res.bound,
        "subsequence": ",".join(map(str, res.subsequence)),
    }
    if args.combined:
        best = optimize_combined(hn)
        out["combined"] = {
            "weights": [{"weight": w, "bound": combined_bound(hn, w)} for w in WEIGHT_GRID],
            "best": {
                "bound": best.bound,
                "weight": best.weight,
                "subsequence": ",".join(map(str, best.subsequence)),
            },
        }
    return out


def _report_json(r) -> dict:
    return {
        "theorem_id": r.theorem_id,
        "hypotheses_met": r.hypotheses_met,
        "hypotheses": r.hypotheses,
        "bound": r.bound,
        "strict": r.strict,
    }


def cmd_bounds(args) -> object:
    profile = BoundsProfile.from_dict(io.load_json(args.profile))
    return [_report_json(r) for r in all_bounds(profile)]


def _parse_params(text: str | None) -> dict[str, int]:
    out: dict[str, int] = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise ParseError(f"malformed parameter {item!r}; expected name=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = int(v)
        except ValueError:
            raise ParseError(f"parameter {k.strip()} must be an integer, got {v!r}") from None
    return out


def _parse_ranges(text: str | None) -> dict[str, tuple[int, int]]:
    out: dict[str, tuple[int, int]] = {}
    if not text:
        return out
    for item in text.split(","):
        try:
            k, span = item.split("=", 1)
            lo, hi = span.split(":", 1)
            out[k.strip()] = (int(lo), int(hi))
        except ValueError:
            raise ParseError(f"malformed range {item!r}; expected name=lo:hi") from None
    return out


def _max_g() -> int | None:
    raw = os.environ.get("FIBRSLOPE_MAX_G")
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"FIBRSLOPE_MAX_G must be an integer, got {raw!r}") from None
    if value < 2:
        raise ParseError("FIBRSLOPE_MAX_G must be at least 2")
    return value


def _record_row(rec: ExampleRecord, margin) -> dict:
    return {
        "family": rec.family,
        "params": rec.params,
        "g": rec.inv.g,
        "b": rec.inv.b,
        "q_f": rec.q_f,
        "q_pi": rec.q_pi,
        "gamma": rec.gamma,
        "omega2": rec.inv.omega2,
        "chi": rec.inv.chi,
        "e": rec.inv.e,
        "slope": rec.slope,
        "rhs": rec.conjecture_rhs,
        "margin": margin,
        "violates_conjecture": rec.violates_conjecture,
    }


def _points(family: str, params: dict, ranges: dict) -> list[dict]:
    names = FAMILY_PARAMS[family]
    unknown = [k for k in list(params) + list(ranges) if k not in names]
    if unknown:
        raise ParseError(f"unknown parameter(s) {unknown} for family {family}")
    if all(k in params for k in names) and not ranges:
        return [params]
    pts = []
    for p in family_grid(family, _max_g()):
        if any(p[k] != v for k, v in params.items()):
            continue
        if any(not lo <= p[k] <= hi for k, (lo, hi) in ranges.items()):
            continue
        pts.append(p)
    return pts


def cmd_examples(args) -> object:
    family = canonical_family(args.family)
    pts = _points(family, _parse_params(args.params), {})
    rows = []
    for p in pts:
        rec = build_example(family, p)
        margin = None if rec.conjecture_rhs is None else rec.conjecture_rhs - rec.slope
        rows.append(_record_row(rec, margin))
    return rows


def _search_point(job):
    family, params = job
    rec = build_example(family, params)
    v = violation_report(rec)
    row = _record_row(rec, v.margin)
    row["best_bound"] = None if v.best is None else {
        "theorem_id": v.best.theorem_id,
        "bound": v.best.bound,
        "gap": v.best_gap,
    }
    row["contradictions"] = list(v.contradictions)
    return row


def cmd_search(args) -> object:
    family = canonical_family(args.family)
    pts = _points(family, _parse_params(args.params), _parse_ranges(args.range))
    jobs = [(family, p) for p in pts]
    workers = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    if workers < 1:
        raise ParseError("--jobs must be at least 1")
    if workers == 1 or len(jobs) < 64:
        rows = [_search_point(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_search_point, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    bad = [r for r in rows if r["contradictions"]]
    if bad:
        for r in bad:
            print(
                f"consistency failure: {r['family']} {r['params']} slope {format_rational(r['slope'])} "
                f"breaks {', '.join(r['contradictions'])}",
                file=sys.stderr,
            )
        raise _Contradiction(rows)
    return rows


def _tsv(rows: list[dict]) -> str:
    def cell(v):
        if v is None:
            return ""
        if isinstance(v, Fraction):
            return format_rational(v)
        if isinstance(v, dict):
            return ";".join(f"{k}={val}" for k, val in v.items())
        return str(v)

    lines = ["\t".join(TSV_COLUMNS)]
    lines += ["\t".join(cell(r.get(c)) for c in TSV_COLUMNS) for r in rows]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fibrslope", description="Exact slope invariants and bounds for fibred surfaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("invariants", help="relative invariants of a fibration record")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("double-cover", help="invariants of a double cover fibration")
    s.add_argument("--input", required=True)
    s.add_argument("--lambda", dest="lam", metavar="P/Q")
    s.add_argument("--g-prime", dest="g_prime", type=int, help="genus of the Albanese-type image curve")
    s.set_defaults(func=cmd_double_cover)

    s = sub.add_parser("resolve", help="singularity indices of a branch-curve forest")
    s.add_argument("--forest", required=True)
    s.set_defaults(func=cmd_resolve)

    s = sub.add_parser("xiao", help="Xiao-type bounds from Harder-Narasimhan data")
    s.add_argument("--hn", required=True)
    s.add_argument("--subsequence", metavar="I,J,K")
    s.add_argument("--combined", action="store_true")
    s.set_defaults(func=cmd_xiao)

    s = sub.add_parser("bounds", help="all slope bounds applicable to a profile")
    s.add_argument("--profile", required=True)
    s.set_defaults(func=cmd_bounds)

    for name, func, help_text in (
        ("examples", cmd_examples, "closed-form example records"),
        ("search", cmd_search, "scan a family and audit every point"),
    ):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("--family", required=True, help="5.1|5.2|5.3 or product_quotient|pencil_cover|base_change")
        s.add_argument("--params", metavar="K=V,...")
        if name == "search":
            s.add_argument("--range", metavar="K=LO:HI,...")
            s.add_argument("--jobs", type=int)
        s.add_argument("--tsv", action="store_true")
        s.set_defaults(func=func)
    return p


def run(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
        code = EXIT_OK
    except _Contradiction as exc:
        result, code = exc.args[0], EXIT_CONTRADICTION
        args = build_parser().parse_args(argv)
    except FibrSlopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    if getattr(args, "tsv", False):
        print(_tsv(result))
    else:
        print(io.dumps(result))
    return code


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
