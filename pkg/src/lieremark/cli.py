"""Command-line interface and structured report emission.

Subcommands: dim, prolong, check, rank, locus, verdict, hierarchy, catalog.
Text output is plain (NO_COLOR trivially honored; nothing is colorized).
--json emits one object {command, spec, inputs, result, samples, warnings}
with every rational rendered as a string, deterministic byte for byte for
fixed inputs and seed.

Exit codes: 0 success, 1 usage or parse errors, 2 verification mismatch
between computed values and the expectations attached to a catalog entry.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .algebras import AlgebraSpec, affine_generators, projective_generators
from .analysis import (
    Parametrization,
    PdeSystem,
    generic_rank,
    is_admitted,
    prolong,
    rank_at_point,
    rank_drop_locus_report,
    rank_on_manifold,
    verdict as compute_verdict,
)
from .errors import Intractable, LieremarkError
from .jetspace import JetSpec, algebra_dims, coord_str, dimension, enumerate_coords
from .parsing import expr_to_str, field_to_str, parse_expr, parse_field, poly_to_str
from .ratexpr import RatExpr, try_divide
from .vfield import VectorField

DEFAULT_SAMPLES = 5
DEFAULT_SEED = 0

W_HESSIAN_RANK = (
    "scalar second-order case: the affine algebra dimension (n+1)(n+2) exceeds "
    "the jet dimension, so the distribution rank is capped by the jet dimension; "
    "the sampled exact rank is reported"
)
W_NM2_DIM = (
    "closed-form dimension n^2+2n+3m-2+mn(1-n)/2 gives {formula}, while the "
    "equation dimension jet_dim - q is {computed}; the computed value is used"
)
W_BETA_SLIP = (
    "the derived pair consequence is verified in the form "
    "u_a,ij u_b,pq - u_a,pq u_b,ij (one printed index reads b+1 where b is meant)"
)
W_PROJ_DISPLAY = (
    "projective residual combinations are verified by direct on-shell "
    "normalization rather than by matching the displayed Kronecker-delta layout"
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# input loading
# ---------------------------------------------------------------------------

def _read_lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                yield line


def load_algebra(spec_text: str, n: int, m: int) -> AlgebraSpec:
    if spec_text == "affine":
        return affine_generators(n, m)
    if spec_text == "projective":
        return projective_generators(n, m)
    base = JetSpec(n, m, 1)
    gens = tuple(parse_field(line, base) for line in _read_lines(spec_text))
    if not gens:
        raise _UsageError(f"no generators found in {spec_text}")
    return AlgebraSpec("custom", n, m, gens)


def load_system(path: str, spec: JetSpec, name=None) -> PdeSystem:
    deltas = tuple(parse_expr(line, spec) for line in _read_lines(path))
    if not deltas:
        raise _UsageError(f"no equations found in {path}")
    return PdeSystem(spec, deltas, name=name or path)


def load_parametrization(path: str, spec: JetSpec) -> Parametrization:
    solved = {}
    for line in _read_lines(path):
        lhs, _, rhs = line.partition("=")
        if not rhs:
            raise _UsageError(f"parametrization line without '=': {line!r}")
        target = parse_expr(lhs.strip(), spec)
        key = _single_coord(target, line)
        solved[key] = parse_expr(rhs.strip(), spec)
    free = tuple(c for c in enumerate_coords(spec) if c not in solved)
    excluded = tuple({e.den for e in solved.values() if not e.den.is_constant})
    return Parametrization(free=free, solved=solved, excluded=excluded)


def _single_coord(e: RatExpr, line: str):
    terms = e.num.terms
    if e.den.is_constant and len(terms) == 1:
        (mono, coeff), = terms.items()
        if coeff == 1 and len(mono) == 1 and mono[0][1] == 1:
            return mono[0][0]
    raise _UsageError(f"left side must be a single coordinate: {line!r}")


def _mov_point_source(rng):
    a = 0
    while a == 0:
        a = rng.randint(-9, 9)
    return catalog.mov_point_family(a, rng.randint(-9, 9), seed=rng.randint(0, 10**6))


def _entry_point_source(entry):
    if entry.system.param is None and entry.name == "mov3":
        return _mov_point_source
    return None


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------

def _payload(command, spec=None, inputs=None, result=None, samples=None, warnings=None):
    return {
        "command": command,
        "spec": {"n": spec.n, "m": spec.m, "r": spec.r} if spec else None,
        "inputs": inputs or {},
        "result": result or {},
        "samples": samples or [],
        "warnings": warnings or [],
    }


def _sample_rows(report):
    rows = []
    for s in report.per_sample:
        rows.append({
            "seed_index": s.index,
            "rank": s.rank,
            "on_manifold": s.kind == "on_manifold",
            "point_hash": s.point_hash,
        })
    return rows


def _hierarchy_warnings(n, m):
    computed = dimension(JetSpec(n, m, 2)) - catalog.strongnm2_delta_count(n, m)
    formula = n * n + 2 * n + 3 * m - 2 + m * n * (1 - n) // 2
    out = [W_BETA_SLIP]
    if formula != computed:
        out.insert(0, W_NM2_DIM.format(formula=formula, computed=computed))
    return out


def _context_warnings(algebra, spec, system_name=None):
    out = []
    if algebra.m == 1 and spec.r == 2 and (algebra.n + 2) * (algebra.n + 1) > dimension(spec):
        out.append(W_HESSIAN_RANK)
    if system_name and system_name.startswith("strong") and system_name.endswith("2") and len(system_name) == 9:
        out.extend(_hierarchy_warnings(spec.n, spec.m))
    if system_name and system_name.startswith("strong") and algebra.kind == "projective":
        out.append(W_PROJ_DISPLAY)
    return out


def _print_text(lines):
    for line in lines:
        print(line)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_dim(args):
    spec = JetSpec(args.n, args.m, args.r)
    aff, proj = algebra_dims(args.n, args.m)
    result = {"jet_dim": dimension(spec), "affine_dim": aff, "projective_dim": proj}
    lines = [
        f"jet space J^{args.r}(R^{args.n + args.m}, {args.n}): dimension {result['jet_dim']}",
        f"affine algebra of R^{args.n + args.m}: dimension {aff}",
        f"projective algebra of R^{args.n + args.m}: dimension {proj}",
    ]
    inputs = {"n": args.n, "m": args.m, "r": args.r}
    return 0, _payload("dim", spec, inputs, result), lines


def cmd_prolong(args):
    spec = JetSpec(args.n, args.m, args.r)
    if args.expr:
        field = parse_field(args.expr, JetSpec(args.n, args.m, 1))
    elif args.field:
        field = parse_field(" ; ".join(_read_lines(args.field)), JetSpec(args.n, args.m, 1))
    else:
        raise _UsageError("prolong needs --field FILE or -e TEXT")
    p = prolong(field, args.r)
    coords = enumerate_coords(spec)
    if args.coord:
        target = parse_expr(args.coord, spec)
        key = _single_coord(target, args.coord)
        coords = [key]
    coeffs = {coord_str(c): expr_to_str(p.coeffs[c]) for c in coords}
    lines = [f"prolongation of {field_to_str(field)} to order {args.r}:"]
    for c in coords:
        e = p.coeffs[c]
        if args.coord or not e.is_zero:
            lines.append(f"  {coord_str(c)}: {expr_to_str(e)}")
    inputs = {"field": field_to_str(field), "coord": args.coord}
    return 0, _payload("prolong", spec, inputs, {"coefficients": coeffs}), lines


def _resolve_checked_system(args):
    """(system, spec, point_source, expected) for check/verdict style commands."""
    if args.catalog:
        entry = catalog.get(args.catalog)
        return entry.system, entry.system.spec, _entry_point_source(entry), entry.expected
    if not args.system:
        raise _UsageError("need --catalog NAME or --system FILE")
    if args.n is None or args.m is None or args.r is None:
        raise _UsageError("--system needs explicit --n, --m, --r")
    spec = JetSpec(args.n, args.m, args.r)
    sys_ = load_system(args.system, spec)
    if args.param:
        sys_.param = load_parametrization(args.param, spec)
    return sys_, spec, None, None


def cmd_check(args):
    sys_, spec, _, _ = _resolve_checked_system(args)
    algebra = load_algebra(args.algebra, spec.n, spec.m)
    rows = []
    all_ok = True
    for i, g in enumerate(algebra.generators):
        ok = is_admitted(sys_, g)
        all_ok = all_ok and ok
        rows.append((i, ok, field_to_str(g)))
    lines = [
        f"admittance of {algebra.label()} by {sys_.name}:",
    ]
    for i, ok, text in rows:
        lines.append(f"  [{'ok' if ok else 'REJECTED'}] generator {i}: {text}")
    lines.append(f"admitted: {sum(1 for _, ok, _ in rows if ok)}/{len(rows)}")
    result = {
        "system": sys_.name,
        "algebra": algebra.label(),
        "admitted_all": all_ok,
        "rejected": [i for i, ok, _ in rows if not ok],
    }
    warnings = _context_warnings(algebra, spec, sys_.name)
    payload = _payload("check", spec, {"algebra": args.algebra, "catalog": args.catalog,
                                       "system": args.system}, result, warnings=warnings)
    return (0 if all_ok else 2), payload, lines


def cmd_rank(args):
    spec = JetSpec(args.n, args.m, args.r)
    algebra = load_algebra(args.algebra, args.n, args.m)
    expected = None
    sys_ = None
    point_source = None
    if args.on:
        try:
            entry = catalog.get(args.on)
        except LieremarkError:
            entry = None
        if entry is not None:
            sys_ = entry.system
            if sys_.spec != spec:
                raise _UsageError(
                    f"catalog entry {args.on} lives on {sys_.spec}, not {spec}"
                )
            point_source = _entry_point_source(entry)
            if algebra.kind == entry.expected.algebra:
                expected = entry.expected
        else:
            sys_ = load_system(args.on, spec)
            if args.param:
                sys_.param = load_parametrization(args.param, spec)
    if sys_ is None:
        report = generic_rank(algebra, args.r, samples=args.samples, seed=args.seed)
    else:
        report = rank_on_manifold(algebra, sys_, samples=args.samples,
                                  seed=args.seed, point_source=point_source)
    result = {
        "algebra": algebra.label(),
        "jet_dim": report.jet_dim,
        "algebra_dim": report.algebra_dim,
        "generic_rank": report.generic_rank,
        "on_manifold_rank": report.on_manifold_rank,
        "on": args.on,
    }
    mismatch = False
    if expected is not None:
        result["expected_generic"] = expected.generic_rank
        result["expected_on_manifold"] = expected.on_manifold_rank
        mismatch = (report.generic_rank != expected.generic_rank
                    or report.on_manifold_rank != expected.on_manifold_rank)
        result["verified"] = not mismatch
    lines = [
        f"distribution of {algebra.label()} prolonged to order {args.r}",
        f"jet dimension {report.jet_dim}, algebra dimension {report.algebra_dim}",
        f"generic rank: {report.generic_rank}  ({args.samples} samples, seed {args.seed})",
    ]
    if report.on_manifold_rank is not None:
        lines.append(f"on-manifold rank ({sys_.name}): {report.on_manifold_rank}")
    if expected is not None:
        lines.append("verified against catalog: " + ("ok" if not mismatch else "MISMATCH"))
    warnings = _context_warnings(algebra, spec, sys_.name if sys_ else None)
    payload = _payload("rank", spec, {"algebra": args.algebra, "on": args.on,
                                      "samples": args.samples, "seed": args.seed},
                       result, samples=_sample_rows(report), warnings=warnings)
    return (2 if mismatch else 0), payload, lines


def cmd_locus(args):
    spec = JetSpec(args.n, args.m, args.r)
    algebra = load_algebra(args.algebra, args.n, args.m)
    warnings = _context_warnings(algebra, spec)
    inputs = {"algebra": args.algebra, "verify": args.verify,
              "samples": args.samples, "seed": args.seed}
    try:
        report = rank_drop_locus_report(algebra, args.r, samples=args.samples,
                                        seed=args.seed)
    except Intractable as exc:
        report = None
        warnings.append(f"symbolic elimination unavailable: {exc}")
    if report is not None:
        factors = [
            {"factor": poly_to_str(f), "multiplicity": m, "status": st}
            for f, m, st in report.candidates
        ]
        result = {
            "generic_rank": report.generic_rank,
            "candidates": factors,
            "confirmed": [poly_to_str(f) for f in report.confirmed],
            "mode": "elimination",
        }
        lines = [
            f"rank-drop locus of {algebra.label()} at order {args.r}",
            f"generic rank {report.generic_rank}; final pivot factors:",
        ]
        for f, m, st in report.candidates:
            lines.append(f"  [{st}] multiplicity {m}: {poly_to_str(f)}")
    else:
        result = {"mode": "verification", "candidates": [], "confirmed": []}
        lines = [f"rank-drop locus of {algebra.label()} at order {args.r}: elimination skipped"]
    code = 0
    if args.verify:
        entry = catalog.get(args.verify)
        ok = _verify_locus(entry, algebra, args, report, lines)
        result["verified"] = ok
        code = 0 if ok else 2
    payload = _payload("locus", spec, inputs, result, warnings=warnings)
    return code, payload, lines


def _verify_locus(entry, algebra, args, report, lines):
    deltas = entry.system.deltas
    if report is not None and len(deltas) == 1 and deltas[0].is_polynomial:
        target = deltas[0].num
        for f in report.confirmed:
            q = try_divide(f, target) or try_divide(target, f)
            if q is not None and q.is_constant:
                lines.append(f"verified: {entry.name} recovered up to a constant factor")
                return True
        lines.append(f"MISMATCH: {entry.name} not among confirmed factors")
        return False
    # sampled verification: generic rank and on-manifold drop
    point_source = _entry_point_source(entry)
    rep = rank_on_manifold(algebra, entry.system, samples=args.samples,
                           seed=args.seed, point_source=point_source)
    ok = (rep.generic_rank == entry.expected.generic_rank
          and rep.on_manifold_rank is not None
          and rep.on_manifold_rank < rep.generic_rank)
    lines.append(
        f"sampled verification: generic {rep.generic_rank}, on-manifold "
        f"{rep.on_manifold_rank} -> {'ok' if ok else 'MISMATCH'}"
    )
    return ok


def cmd_verdict(args):
    entry = catalog.get(args.catalog)
    sys_ = entry.system
    spec = sys_.spec
    algebra = load_algebra(args.algebra, spec.n, spec.m)
    v = compute_verdict(algebra, sys_, samples=args.samples, seed=args.seed,
                        point_source=_entry_point_source(entry))
    result = {
        "system": sys_.name,
        "algebra": algebra.label(),
        "equation_dim": v.equation_dim,
        "algebra_dim": v.algebra_dim,
        "necessary_strong": v.necessary_strong,
        "necessary_weak": v.necessary_weak,
        "rank_off_manifold_exceeds_dim": v.rank_off_manifold_exceeds_dim,
        "rank_on_manifold_equals_dim": v.rank_on_manifold_equals_dim,
        "admitted_all": v.admitted_all,
        "conclusion": v.conclusion,
        "evidence": "off-manifold rank excess is sampled evidence, not a pointwise proof",
    }
    lines = [
        f"verdict for {sys_.name} with respect to {algebra.label()}:",
        f"  equation dim {v.equation_dim}, algebra dim {v.algebra_dim}",
        f"  necessary condition (strong): {'holds' if v.necessary_strong else 'fails'}",
        f"  necessary condition (weak): {'holds' if v.necessary_weak else 'fails'}",
    ]
    if v.report is not None:
        lines.append(
            f"  sampled ranks: generic {v.report.generic_rank}, "
            f"on-manifold {v.report.on_manifold_rank}"
        )
    if v.admitted_all is not None:
        lines.append(f"  all generators admitted: {v.admitted_all}")
    lines.append(f"  conclusion: {v.conclusion} (off-manifold excess checked on samples)")
    mismatch = False
    if algebra.kind in entry.expected.admitted:
        mismatch = v.conclusion != "strong"
        result["expected_conclusion"] = "strong"
        lines.append("verified against catalog: " + ("ok" if not mismatch else "MISMATCH"))
    warnings = _context_warnings(algebra, spec, sys_.name)
    samples = _sample_rows(v.report) if v.report is not None else []
    payload = _payload("verdict", spec, {"catalog": args.catalog, "algebra": args.algebra,
                                         "samples": args.samples, "seed": args.seed},
                       result, samples=samples, warnings=warnings)
    return (2 if mismatch else 0), payload, lines


def cmd_hierarchy(args):
    sys_ = catalog.strongnm2_system(args.n, args.m)
    spec = sys_.spec
    warnings = _hierarchy_warnings(args.n, args.m)
    eqs = [expr_to_str(d) for d in sys_.deltas]
    result = {
        "name": sys_.name,
        "count": len(eqs),
        "equation_dim": sys_.equation_dim,
        "equations": eqs,
    }
    lines = [
        f"second-order hierarchy member for n={args.n}, m={args.m}: "
        f"{len(eqs)} equations, equation dimension {sys_.equation_dim}",
    ]
    lines.extend(f"  {e} = 0" for e in eqs)
    for w in warnings:
        lines.append(f"warning: {w}")
    payload = _payload("hierarchy", spec, {"n": args.n, "m": args.m}, result,
                       warnings=warnings)
    return 0, payload, lines


def cmd_catalog(args):
    if args.action != "list":
        raise _UsageError("supported: catalog list")
    rows = []
    lines = ["catalog entries:"]
    for name in catalog.names():
        e = catalog.get(name)
        s = e.system.spec
        rows.append({
            "name": name,
            "n": s.n, "m": s.m, "r": s.r,
            "deltas": len(e.system.deltas),
            "equation_dim": e.expected.equation_dim,
            "algebra": e.expected.algebra,
            "generic_rank": e.expected.generic_rank,
            "on_manifold_rank": e.expected.on_manifold_rank,
        })
        lines.append(
            f"  {name}: n={s.n} m={s.m} r={s.r}, {len(e.system.deltas)} equation(s), "
            f"dim {e.expected.equation_dim}, {e.expected.algebra} ranks "
            f"{e.expected.generic_rank}/{e.expected.on_manifold_rank}"
        )
    return 0, _payload("catalog", None, {"action": "list"}, {"entries": rows}), lines


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def _add_common(p, need_spec=True, sampling=False):
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    if need_spec:
        p.add_argument("--n", type=int, required=False)
        p.add_argument("--m", type=int, required=False)
        p.add_argument("--r", type=int, required=False)
    if sampling:
        p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser() -> _Parser:
    root = _Parser(prog="lieremark",
                   description="exact rank analysis of Lie symmetry distributions on jet spaces")
    sub = root.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("dim", help="jet and algebra dimensions")
    _add_common(p)
    p.set_defaults(func=cmd_dim, need_nmr=True)

    p = sub.add_parser("prolong", help="prolong a vector field")
    _add_common(p)
    p.add_argument("--field", help="file with the field in grammar syntax")
    p.add_argument("-e", "--expr", help="inline field text")
    p.add_argument("--coord", help="report only this jet coordinate, e.g. 'u[1;1,2]'")
    p.set_defaults(func=cmd_prolong, need_nmr=True)

    p = sub.add_parser("check", help="verify that an algebra is admitted")
    _add_common(p)
    p.add_argument("--catalog", help="catalog entry name")
    p.add_argument("--system", help="file with one equation per line")
    p.add_argument("--param", help="file with a solved form, one 'coord = expr' per line")
    p.add_argument("--algebra", required=True, help="affine | projective | FILE")
    p.set_defaults(func=cmd_check, need_nmr=False)

    p = sub.add_parser("rank", help="exact sampled distribution ranks")
    _add_common(p, sampling=True)
    p.add_argument("--algebra", required=True)
    p.add_argument("--on", help="catalog entry or system file for on-manifold rank")
    p.add_argument("--param", help="solved-form file for --on FILE")
    p.set_defaults(func=cmd_rank, need_nmr=True)

    p = sub.add_parser("locus", help="extract the rank-drop locus")
    _add_common(p, sampling=True)
    p.add_argument("--algebra", required=True)
    p.add_argument("--verify", help="catalog entry the locus should reproduce")
    p.set_defaults(func=cmd_locus, need_nmr=True)

    p = sub.add_parser("verdict", help="Lie-remarkability verdict for a catalog entry")
    _add_common(p, need_spec=False, sampling=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_verdict, need_nmr=False)

    p = sub.add_parser("hierarchy", help="print a second-order hierarchy member")
    _add_common(p)
    p.set_defaults(func=cmd_hierarchy, need_nmr=False, need_nm=True)

    p = sub.add_parser("catalog", help="catalog operations")
    p.add_argument("action", choices=["list"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog, need_nmr=False)

    return root


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "need_nmr", False):
            missing = [k for k in ("n", "m", "r") if getattr(args, k, None) is None]
            if missing:
                raise _UsageError(f"missing required --{', --'.join(missing)}")
        if getattr(args, "need_nm", False):
            if args.n is None or args.m is None:
                raise _UsageError("hierarchy needs --n and --m")
        code, payload, lines = args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except LieremarkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        _print_text(lines)
    return code


if __name__ == "__main__":
    sys.exit(main())
