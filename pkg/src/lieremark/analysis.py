"""Symmetry residuals, exact distribution ranks, rank-drop loci, verdicts.

Ranks are computed exactly over the rationals: the prolonged-generator
matrix is evaluated at random rational jet points and reduced by
fraction-free elimination.  Sampling is deterministic for a fixed seed
(sample k draws from a generator derived from (seed, k)), so reports are
reproducible byte for byte.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebras import AlgebraSpec
from .errors import (
    EvaluationPole,
    Intractable,
    MissingParametrization,
    PersistentPole,
)
from .jetspace import JetSpec, dimension, enumerate_coords
from .linalg import rank_exact, symbolic_bareiss
from .ratexpr import Poly, RatExpr, squarefree_factors, try_divide
from .vfield import VectorField, prolong

__all__ = [
    "PdeSystem",
    "Parametrization",
    "RankReport",
    "SampleRecord",
    "Verdict",
    "LocusReport",
    "symmetry_residual",
    "is_admitted",
    "distribution_matrix",
    "generic_rank",
    "rank_on_manifold",
    "rank_at_point",
    "rank_drop_locus",
    "rank_drop_locus_report",
    "verdict",
    "random_rational",
    "sample_jet_point",
    "sample_on_parametrization",
    "parametrization_is_sound",
    "system_independent_at",
]

MAX_RESAMPLE = 100


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Parametrization:
    """Rational solved form of the equation submanifold in one chart."""

    free: tuple
    solved: dict  # CoordId -> RatExpr in the free coordinates
    excluded: tuple = ()  # Polys that must not vanish in the chart

    def all_coords(self):
        return set(self.free) | set(self.solved)


@dataclass
class PdeSystem:
    """Equations Delta_i = 0 on a jet space, optionally with a chart."""

    spec: JetSpec
    deltas: tuple
    name: str | None = None
    param: Parametrization | None = None

    @property
    def equation_dim(self) -> int:
        return dimension(self.spec) - len(self.deltas)


@dataclass(frozen=True)
class SampleRecord:
    index: int
    kind: str  # "generic" | "on_manifold"
    point_hash: str
    rank: int


@dataclass
class RankReport:
    generic_rank: int
    on_manifold_rank: int | None
    samples: int
    seed: int
    per_sample: tuple
    jet_dim: int
    algebra_dim: int


@dataclass
class Verdict:
    equation_dim: int
    algebra_dim: int
    necessary_strong: bool
    necessary_weak: bool
    rank_off_manifold_exceeds_dim: bool
    rank_on_manifold_equals_dim: bool
    conclusion: str  # strong | weak | inconclusive | fails-necessary
    admitted_all: bool | None = None
    report: RankReport | None = None


@dataclass
class LocusReport:
    generic_rank: int
    pivot: Poly
    candidates: tuple  # (factor, multiplicity, status) status: confirmed|rejected|unconfirmed
    confirmed: tuple


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def random_rational(rng: random.Random) -> Fraction:
    """p/q with p uniform in [-20, 20] minus 0 and q uniform in [1, 10]."""
    p = 0
    while p == 0:
        p = rng.randint(-20, 20)
    return Fraction(p, rng.randint(1, 10))


def _rng_for(seed, tag, k) -> random.Random:
    return random.Random(f"{seed}:{tag}:{k}")


def point_hash(point: dict) -> str:
    blob = ";".join(f"{c}={Fraction(v)}" for c, v in sorted(point.items()))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def sample_jet_point(spec: JetSpec, rng: random.Random) -> dict:
    return {c: random_rational(rng) for c in enumerate_coords(spec)}


def sample_on_parametrization(param: Parametrization, rng: random.Random) -> dict:
    """Random chart point: free coordinates random, solved ones computed."""
    for _ in range(MAX_RESAMPLE):
        point = {c: random_rational(rng) for c in param.free}
        if any(p.eval_at(point) == 0 for p in param.excluded):
            continue
        try:
            solved_vals = {c: e.eval_at(point) for c, e in param.solved.items()}
        except EvaluationPole:
            continue
        point.update(solved_vals)
        return point
    raise PersistentPole("could not sample a chart point off the excluded locus")


# ---------------------------------------------------------------------------
# residuals and admittance
# ---------------------------------------------------------------------------

def symmetry_residual(sys: PdeSystem, v: VectorField) -> list:
    """Unrestricted (off-shell) residuals of the prolonged action on each delta."""
    p = prolong(v, sys.spec.r)
    return [p.apply(d) for d in sys.deltas]


def is_admitted(sys: PdeSystem, v: VectorField) -> bool:
    """True iff every residual vanishes on the equation submanifold.

    With a parametrization the residuals are substituted through the solved
    form.  A single polynomial equation without a chart (the third-order
    scalar case, which is quadratic in every top-order coordinate and has no
    rational solved form) is handled by exact divisibility instead.
    """
    residuals = symmetry_residual(sys, v)
    if sys.param is not None:
        bindings = sys.param.solved
        return all(r.is_zero or r.subs(bindings).is_zero for r in residuals)
    if len(sys.deltas) == 1 and sys.deltas[0].is_polynomial:
        delta = sys.deltas[0].num
        for r in residuals:
            if r.is_zero:
                continue
            if not r.is_polynomial:
                raise MissingParametrization(
                    "rational residual needs a parametrization"
                )
            if try_divide(r.num, delta) is None:
                return False
        return True
    raise MissingParametrization(f"system {sys.name!r} carries no parametrization")


# ---------------------------------------------------------------------------
# distribution ranks
# ---------------------------------------------------------------------------

def distribution_matrix(algebra: AlgebraSpec, r: int):
    """Rows = generators, columns = jet coordinates, entries = coefficients."""
    coords = enumerate_coords(JetSpec(algebra.n, algebra.m, r))
    rows = []
    for g in algebra.generators:
        p = prolong(g, r)
        rows.append([p.coeffs[c] for c in coords])
    return rows


def _eval_matrix(matrix, point):
    return [[e.eval_at(point) for e in row] for row in matrix]


def rank_at_point(algebra: AlgebraSpec, r: int, point: dict) -> int:
    return rank_exact(_eval_matrix(distribution_matrix(algebra, r), point))


def _sampled_ranks(matrix, spec, samples, seed, tag, point_fn):
    records = []
    for k in range(samples):
        rng = _rng_for(seed, tag, k)
        for _ in range(MAX_RESAMPLE):
            try:
                point = point_fn(rng)
                rows = _eval_matrix(matrix, point)
            except (EvaluationPole, PersistentPole):
                continue
            records.append(SampleRecord(k, tag, point_hash(point), rank_exact(rows)))
            break
        else:
            raise PersistentPole(f"sampling kept failing after {MAX_RESAMPLE} tries")
    return records


def generic_rank(algebra: AlgebraSpec, r: int, samples: int = 5, seed: int = 0) -> RankReport:
    """Maximum exact rank over random rational jet points."""
    spec = JetSpec(algebra.n, algebra.m, r)
    matrix = distribution_matrix(algebra, r)
    records = _sampled_ranks(matrix, spec, samples, seed, "generic",
                             lambda rng: sample_jet_point(spec, rng))
    return RankReport(
        generic_rank=max(s.rank for s in records),
        on_manifold_rank=None,
        samples=samples,
        seed=seed,
        per_sample=tuple(records),
        jet_dim=dimension(spec),
        algebra_dim=algebra.dim,
    )


def rank_on_manifold(algebra: AlgebraSpec, sys: PdeSystem, samples: int = 5,
                     seed: int = 0, point_source=None) -> RankReport:
    """Generic rank plus the rank restricted to the equation submanifold.

    point_source(rng) -> point overrides the parametrization when the system
    carries none (used for point-family oracles).
    """
    spec = sys.spec
    if point_source is None:
        if sys.param is None:
            raise MissingParametrization(
                f"system {sys.name!r} carries no parametrization"
            )
        point_source = lambda rng: sample_on_parametrization(sys.param, rng)  # noqa: E731
    matrix = distribution_matrix(algebra, spec.r)
    generic = _sampled_ranks(matrix, spec, samples, seed, "generic",
                             lambda rng: sample_jet_point(spec, rng))
    onman = _sampled_ranks(matrix, spec, samples, seed, "on_manifold", point_source)
    records = tuple(generic + onman)
    return RankReport(
        generic_rank=max(s.rank for s in records),
        on_manifold_rank=max(s.rank for s in onman),
        samples=samples,
        seed=seed,
        per_sample=records,
        jet_dim=dimension(spec),
        algebra_dim=algebra.dim,
    )


# ---------------------------------------------------------------------------
# rank-drop locus
# ---------------------------------------------------------------------------

def _polynomial_matrix(matrix):
    """Clear rational entries row by row; any factor a row scaling introduces
    into the pivot fails the sampled rank filter later."""
    rows = []
    for row in matrix:
        dens = []
        for e in row:
            if not e.den.is_constant and e.den not in dens:
                dens.append(e.den)
        if not dens:
            rows.append([e.num for e in row])
            continue
        scale = Poly.one()
        for d in dens:
            scale = scale * d
        sc = RatExpr.from_poly(scale)
        rows.append([(e * sc).num for e in row])
    return rows


def _variety_point(factor: Poly, rng: random.Random, depth: int = 2, pins=None):
    """A rational point on factor = 0, or None.

    Solves for a coordinate of degree one when available; otherwise pins a
    coordinate to zero and retries on the restriction.
    """
    pins = dict(pins or {})
    coords = sorted(factor.coords())
    for v in coords:
        if factor.degree_in(v) != 1:
            continue
        uni = factor.as_univariate(v)
        a = uni.get(1, Poly.zero())
        b = uni.get(0, Poly.zero())
        others = sorted((factor.coords() - {v}))
        for _ in range(MAX_RESAMPLE):
            point = {c: random_rational(rng) for c in others}
            av = a.eval_at(point) if not a.is_constant else a.constant_value()
            if av == 0:
                continue
            bv = b.eval_at(point) if not b.is_constant else b.constant_value()
            point[v] = -bv / av
            point.update(pins)
            return point
        return None
    if depth == 0:
        return None
    for w in coords:
        restricted = factor.restrict({w: 0})
        if restricted.is_zero:
            point = {c: random_rational(rng) for c in coords if c != w}
            point[w] = Fraction(0)
            point.update(pins)
            return point
        if restricted.is_constant:
            continue
        sub = _variety_point(restricted, rng, depth - 1,
                             pins={**pins, w: Fraction(0)})
        if sub is not None:
            sub[w] = Fraction(0)
            return sub
    return None


def rank_drop_locus_report(algebra: AlgebraSpec, r: int, *, samples: int = 5,
                           seed: int = 0, term_guard: int = 200000) -> LocusReport:
    """Symbolic fraction-free elimination and confirmation of drop factors."""
    spec = JetSpec(algebra.n, algebra.m, r)
    coords = enumerate_coords(spec)
    matrix = distribution_matrix(algebra, r)
    generic = generic_rank(algebra, r, samples=samples, seed=seed).generic_rank
    poly_rows = _polynomial_matrix(matrix)
    elim = symbolic_bareiss(poly_rows, term_guard=term_guard)
    if elim.rank != generic:
        raise Intractable(
            f"symbolic elimination rank {elim.rank} disagrees with sampled rank {generic}"
        )
    pivot = elim.last_pivot
    factors = squarefree_factors(pivot)
    candidates = []
    confirmed = []
    for fi, (f, mult) in enumerate(factors):
        if f.is_constant:
            continue
        status = "unconfirmed"
        drops = 0
        found = 0
        for k in range(samples):
            rng = _rng_for(seed, f"locus:{fi}", k)
            vp = _variety_point(f, rng)
            if vp is None:
                break
            assert f.eval_at(vp) == 0
            point = dict(vp)
            fill = _rng_for(seed, "locus-fill", k)
            for c in coords:
                if c not in point:
                    point[c] = random_rational(fill)
            found += 1
            if rank_exact(_eval_matrix(matrix, point)) < generic:
                drops += 1
        if found:
            status = "confirmed" if drops == found else "rejected"
        candidates.append((f, mult, status))
        if status == "confirmed":
            confirmed.append(f)
    return LocusReport(
        generic_rank=generic,
        pivot=pivot,
        candidates=tuple(candidates),
        confirmed=tuple(confirmed),
    )


def rank_drop_locus(algebra: AlgebraSpec, r: int, *, samples: int = 5,
                    seed: int = 0, term_guard: int = 200000) -> list:
    return list(rank_drop_locus_report(
        algebra, r, samples=samples, seed=seed, term_guard=term_guard
    ).confirmed)


# ---------------------------------------------------------------------------
# verdict
# ---------------------------------------------------------------------------

def verdict(algebra: AlgebraSpec, sys: PdeSystem, samples: int = 5, seed: int = 0,
            point_source=None, check_admittance: bool = True) -> Verdict:
    """Lie-remarkability assessment of sys with respect to algebra.

    The off-manifold part of the sufficient condition is sampled evidence:
    the report flags it as such rather than claiming a pointwise proof.
    """
    eq_dim = sys.equation_dim
    alg_dim = algebra.dim
    necessary_strong = alg_dim > eq_dim
    necessary_weak = alg_dim >= eq_dim
    if not necessary_weak:
        return Verdict(
            equation_dim=eq_dim,
            algebra_dim=alg_dim,
            necessary_strong=False,
            necessary_weak=False,
            rank_off_manifold_exceeds_dim=False,
            rank_on_manifold_equals_dim=False,
            conclusion="fails-necessary",
        )
    admitted = None
    if check_admittance:
        admitted = all(is_admitted(sys, g) for g in algebra.generators)
    report = rank_on_manifold(algebra, sys, samples=samples, seed=seed,
                              point_source=point_source)
    off = report.generic_rank > eq_dim
    on = report.on_manifold_rank == eq_dim
    if admitted is False:
        conclusion = "inconclusive"
    elif on and necessary_strong and off:
        conclusion = "strong"
    elif on:
        conclusion = "weak"
    else:
        conclusion = "inconclusive"
    return Verdict(
        equation_dim=eq_dim,
        algebra_dim=alg_dim,
        necessary_strong=necessary_strong,
        necessary_weak=necessary_weak,
        rank_off_manifold_exceeds_dim=off,
        rank_on_manifold_equals_dim=on,
        conclusion=conclusion,
        admitted_all=admitted,
        report=report,
    )


# ---------------------------------------------------------------------------
# validation helpers
# ---------------------------------------------------------------------------

def parametrization_is_sound(sys: PdeSystem) -> bool:
    """Substituting the solved form into every delta gives the zero form."""
    if sys.param is None:
        raise MissingParametrization(f"system {sys.name!r} carries no parametrization")
    return all(d.subs(sys.param.solved).is_zero for d in sys.deltas)


def system_independent_at(sys: PdeSystem, seed: int = 0) -> bool:
    """Jacobian of the deltas has full row rank at a sampled chart point."""
    if sys.param is None:
        raise MissingParametrization(f"system {sys.name!r} carries no parametrization")
    rng = _rng_for(seed, "jacobian", 0)
    point = sample_on_parametrization(sys.param, rng)
    coords = enumerate_coords(sys.spec)
    rows = [[d.diff(c).eval_at(point) for c in coords] for d in sys.deltas]
    return rank_exact(rows) == len(sys.deltas)
