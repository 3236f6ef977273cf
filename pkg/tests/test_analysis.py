"""Residuals, admittance, exact ranks, locus extraction, verdicts."""

from itertools import product

import pytest

from conftest import U, UD, X, field
from lieremark.algebras import affine_generators, projective_generators
from lieremark.analysis import (
    Parametrization,
    PdeSystem,
    distribution_matrix,
    generic_rank,
    is_admitted,
    parametrization_is_sound,
    rank_drop_locus_report,
    rank_on_manifold,
    symmetry_residual,
    system_independent_at,
    verdict,
)
from lieremark.catalog import _pair_delta, get, mov_point_family, strongnm2_system
from lieremark.errors import MissingParametrization
from lieremark.jetspace import JetSpec, coord_u, coord_ud, coord_x, enumerate_coords
from lieremark.parsing import parse_expr
from lieremark.ratexpr import RatExpr
from lieremark.vfield import prolong


def mov_source(rng):
    a = 0
    while a == 0:
        a = rng.randint(-9, 9)
    return mov_point_family(a, rng.randint(-9, 9), seed=rng.randint(0, 999))


# ---------------------------------------------------------------------------
# residuals: the exact off-shell combinations of the proof displays
# ---------------------------------------------------------------------------

class TestOffShellIdentities:
    """Each affine generator class acts on the pair equations as an exact
    combination of pair equations.  The displayed combinations for the two
    x-direction classes come out with the opposite overall sign of the
    actual prolonged action; the identities below are the computed ones."""

    @pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (2, 3)])
    def test_linear_x_fields(self, n, m):
        sysnm = strongnm2_system(n, m)
        pairs = [(al, p, q) for al in range(1, m)
                 for p in range(1, n + 1) for q in range(p, n + 1)
                 if (p, q) != (1, 1)]
        for i, j in product(range(1, n + 1), repeat=2):
            pr = prolong(field(n, m, {coord_x(i): X(j)}), 2)
            for al, p, q in pairs:
                res = pr.apply(_pair_delta(al, al + 1, 1, 1, p, q))
                combo = RatExpr.zero()
                if j == 1:
                    combo = combo + 2 * _pair_delta(al, al + 1, 1, i, p, q)
                if j == p:
                    combo = combo + _pair_delta(al, al + 1, 1, 1, i, q)
                if j == q:
                    combo = combo + _pair_delta(al, al + 1, 1, 1, i, p)
                assert (res + combo).is_zero

    @pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (2, 3)])
    def test_u_to_x_fields(self, n, m):
        pairs = [(al, p, q) for al in range(1, m)
                 for p in range(1, n + 1) for q in range(p, n + 1)
                 if (p, q) != (1, 1)]
        for i in range(1, n + 1):
            for b in range(1, m + 1):
                pr = prolong(field(n, m, {coord_x(i): U(b)}), 2)
                for al, p, q in pairs:
                    res = pr.apply(_pair_delta(al, al + 1, 1, 1, p, q))
                    combo = (UD(al, i) * _pair_delta(b, al + 1, 1, 1, p, q)
                             + UD(al + 1, i) * _pair_delta(al, b, 1, 1, p, q)
                             + 2 * UD(b, 1) * _pair_delta(al, al + 1, 1, i, p, q)
                             + UD(b, p) * _pair_delta(al, al + 1, 1, 1, i, q)
                             + UD(b, q) * _pair_delta(al, al + 1, 1, 1, i, p))
                    assert (res + combo).is_zero

    @pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (2, 3)])
    def test_x_to_u_fields_annihilate(self, n, m):
        pairs = [(al, p, q) for al in range(1, m)
                 for p in range(1, n + 1) for q in range(p, n + 1)
                 if (p, q) != (1, 1)]
        for i in range(1, n + 1):
            for b in range(1, m + 1):
                pr = prolong(field(n, m, {coord_u(b): X(i)}), 2)
                for al, p, q in pairs:
                    assert pr.apply(_pair_delta(al, al + 1, 1, 1, p, q)).is_zero

    @pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (2, 3)])
    def test_linear_u_fields(self, n, m):
        pairs = [(al, p, q) for al in range(1, m)
                 for p in range(1, n + 1) for q in range(p, n + 1)
                 if (p, q) != (1, 1)]
        for g in range(1, m + 1):
            for b in range(1, m + 1):
                pr = prolong(field(n, m, {coord_u(b): U(g)}), 2)
                for al, p, q in pairs:
                    res = pr.apply(_pair_delta(al, al + 1, 1, 1, p, q))
                    combo = RatExpr.zero()
                    if al == b:
                        combo = combo + _pair_delta(g, al + 1, 1, 1, p, q)
                    if al + 1 == b:
                        combo = combo + _pair_delta(al, g, 1, 1, p, q)
                    assert (res - combo).is_zero

    @pytest.mark.parametrize("n,m", [(2, 2), (3, 2)])
    def test_projective_x_fields(self, n, m):
        """Homogeneity identity, with the stray Kronecker delta relocated:
        the action of x_j * (Euler field) carries coefficient -2 x_j on the
        equation itself."""
        base = [coord_x(i) for i in range(1, n + 1)]
        base += [coord_u(a) for a in range(1, m + 1)]
        pairs = [(al, p, q) for al in range(1, m)
                 for p in range(1, n + 1) for q in range(p, n + 1)
                 if (p, q) != (1, 1)]
        for j in range(1, n + 1):
            comp = {c: X(j) * RatExpr.coord(c) for c in base}
            pr = prolong(field(n, m, comp), 2)
            for al, p, q in pairs:
                res = pr.apply(_pair_delta(al, al + 1, 1, 1, p, q))
                combo = -2 * X(j) * _pair_delta(al, al + 1, 1, 1, p, q)
                for w in range(1, n + 1):
                    part = RatExpr.zero()
                    if j == p:
                        part = part + _pair_delta(al, al + 1, 1, 1, w, q)
                    if j == q:
                        part = part + _pair_delta(al, al + 1, 1, 1, w, p)
                    if j == 1:
                        part = part + 2 * _pair_delta(al, al + 1, 1, w, p, q)
                    combo = combo - X(w) * part
                assert (res - combo).is_zero
                # restriction to the system vanishes
                sysnm = strongnm2_system(n, m)
                assert res.subs(sysnm.param.solved).is_zero


class TestResiduals:
    def test_translation_off_shell_zero(self):
        ma2 = get("ma2").system
        v = field(2, 1, {coord_u(1): RatExpr.one()})
        assert all(r.is_zero for r in symmetry_residual(ma2, v))

    def test_quadratic_field_rejected(self):
        ma2 = get("ma2").system
        v = field(2, 1, {coord_x(1): X(1) * X(1)})
        residual = symmetry_residual(ma2, v)[0]
        assert not residual.is_zero
        assert not residual.subs(ma2.param.solved).is_zero
        assert not is_admitted(ma2, v)

    def test_strong222_residual_is_delta_combination(self):
        sysnm = get("strong222").system
        v = field(2, 2, {coord_x(1): X(2)})
        res = symmetry_residual(sysnm, v)
        # action on u11*u222 - u122*u211 is -2 times the first equation
        assert res[1] == -2 * sysnm.deltas[0]
        assert all(r.subs(sysnm.param.solved).is_zero for r in res)


class TestAdmittance:
    @pytest.mark.parametrize("name,n,m", [
        ("strong222", 2, 2), ("strong322", 3, 2), ("strong232", 2, 3),
    ])
    def test_hierarchy_admits_affine_and_projective(self, name, n, m):
        sysnm = get(name).system
        for alg in (affine_generators(n, m), projective_generators(n, m)):
            assert all(is_admitted(sysnm, g) for g in alg.generators)

    def test_ma2_and_mov_admit_r3_algebras(self):
        for name in ("ma2", "mov3"):
            sysnm = get(name).system
            for alg in (affine_generators(2, 1), projective_generators(2, 1)):
                assert all(is_admitted(sysnm, g) for g in alg.generators)

    def test_missing_parametrization(self):
        spec = JetSpec(2, 2, 2)
        two = PdeSystem(spec, (parse_expr("u[1;1,1]", spec),
                               parse_expr("u[2;1,1]", spec)))
        with pytest.raises(MissingParametrization):
            is_admitted(two, field(2, 2, {coord_x(1): X(1)}))


# ---------------------------------------------------------------------------
# distribution matrix and ranks
# ---------------------------------------------------------------------------

class TestDistributionMatrix:
    def test_affine_1_1_r1(self):
        rows = distribution_matrix(affine_generators(1, 1), 1)
        assert len(rows) == 6 and len(rows[0]) == 3
        # row of x d/du: (0, x1, 1)
        assert rows[4] == [RatExpr.zero(), X(1), RatExpr.one()]

    def test_shapes(self):
        assert (len(distribution_matrix(affine_generators(2, 1), 2)),
                len(distribution_matrix(affine_generators(2, 1), 2)[0])) == (12, 8)
        assert (len(distribution_matrix(projective_generators(2, 1), 3)),
                len(distribution_matrix(projective_generators(2, 1), 3)[0])) == (15, 12)


RANK_TABLE = [
    ("affine", 2, 2, 2, "strong222", 14, 12),
    ("affine", 3, 2, 2, "strong322", 23, 18),
    ("affine", 2, 3, 2, "strong232", 20, 16),
    ("projective", 2, 2, 3, "strong223", 22, 20),
    ("affine", 2, 1, 2, "ma2", 8, 7),
    ("affine", 3, 1, 2, "det_hessian3", 13, 12),
]


class TestRanks:
    @pytest.mark.parametrize("kind,n,m,r,name,gen,onman", RANK_TABLE)
    def test_rank_table(self, kind, n, m, r, name, gen, onman):
        alg = affine_generators(n, m) if kind == "affine" else projective_generators(n, m)
        rep = rank_on_manifold(alg, get(name).system, samples=5, seed=0)
        assert rep.generic_rank == gen
        assert rep.on_manifold_rank == onman

    def test_projective_3_1_r3(self):
        assert generic_rank(projective_generators(3, 1), 3, 5, 0).generic_rank == 20

    def test_mov_rank_via_point_family(self):
        rep = rank_on_manifold(affine_generators(2, 1), get("mov3").system,
                               samples=5, seed=0, point_source=mov_source)
        assert rep.generic_rank == 12 and rep.on_manifold_rank == 11

    def test_per_sample_bounded_by_generic(self):
        rep = rank_on_manifold(affine_generators(2, 2), get("strong222").system)
        assert all(s.rank <= rep.generic_rank for s in rep.per_sample)
        assert rep.generic_rank <= min(rep.jet_dim, rep.algebra_dim)
        assert rep.on_manifold_rank <= rep.generic_rank

    def test_more_samples_never_lower(self):
        alg = affine_generators(2, 2)
        r3 = generic_rank(alg, 2, samples=3, seed=0).generic_rank
        r8 = generic_rank(alg, 2, samples=8, seed=0).generic_rank
        assert r8 >= r3

    def test_more_generators_never_lower(self):
        aff = generic_rank(affine_generators(2, 2), 2, 5, 0).generic_rank
        proj = generic_rank(projective_generators(2, 2), 2, 5, 0).generic_rank
        assert proj >= aff

    def test_deterministic_for_fixed_seed(self):
        a = generic_rank(affine_generators(2, 1), 2, 5, 7)
        b = generic_rank(affine_generators(2, 1), 2, 5, 7)
        assert a.per_sample == b.per_sample


# ---------------------------------------------------------------------------
# locus extraction
# ---------------------------------------------------------------------------

class TestLocus:
    def test_ma2_recovered(self):
        rep = rank_drop_locus_report(affine_generators(2, 1), 2)
        ma2 = get("ma2").system.deltas[0].num
        assert any(_proportional(f, ma2) for f in rep.confirmed)
        # spurious single-coordinate factors are filtered out
        for f, _, status in rep.candidates:
            if not _proportional(f, ma2):
                assert status == "rejected"

    def test_hessian3_recovered(self):
        rep = rank_drop_locus_report(affine_generators(3, 1), 2)
        hess = get("det_hessian3").system.deltas[0].num
        assert any(_proportional(f, hess) for f in rep.confirmed)

    def test_mov_recovered(self):
        rep = rank_drop_locus_report(affine_generators(2, 1), 3)
        mov = get("mov3").system.deltas[0].num
        assert rep.generic_rank == 12
        assert any(_proportional(f, mov) for f in rep.confirmed)


def _proportional(a, b):
    from lieremark.ratexpr import try_divide

    q = try_divide(a, b) or try_divide(b, a)
    return q is not None and q.is_constant


# ---------------------------------------------------------------------------
# verdicts and system validation
# ---------------------------------------------------------------------------

class TestVerdict:
    def test_strong222_affine(self):
        v = verdict(affine_generators(2, 2), get("strong222").system)
        assert v.conclusion == "strong"
        assert (v.equation_dim, v.algebra_dim) == (12, 20)
        assert v.necessary_strong and v.rank_off_manifold_exceeds_dim
        assert v.rank_on_manifold_equals_dim and v.admitted_all

    def test_strong223_projective(self):
        v = verdict(projective_generators(2, 2), get("strong223").system)
        assert v.conclusion == "strong"
        assert (v.report.generic_rank, v.report.on_manifold_rank) == (22, 20)

    def test_fails_necessary(self):
        spec = JetSpec(3, 1, 3)
        delta = parse_expr("u[1;1,1,1]", spec)
        solved = {coord_ud(1, (1, 1, 1)): RatExpr.zero()}
        free = tuple(c for c in enumerate_coords(spec) if c not in solved)
        sysnm = PdeSystem(spec, (delta,), name="hyper22",
                          param=Parametrization(free, solved))
        v = verdict(affine_generators(3, 1), sysnm)
        assert v.conclusion == "fails-necessary"
        assert (v.algebra_dim, v.equation_dim) == (20, 22)
        assert not v.necessary_weak


class TestSystemValidation:
    def test_parametrizations_sound(self):
        for name in ("ma2", "det_hessian3", "strong222", "strong322",
                     "strong232", "strong223"):
            assert parametrization_is_sound(get(name).system)

    def test_independence(self):
        for name in ("ma2", "strong222", "strong223"):
            assert system_independent_at(get(name).system)
