"""The named equations: constructors, chart parametrizations, expected data.

Every entry packages a PdeSystem together with the values its ranks and
dimensions are expected to take, so the CLI can verify computed results
against the catalog.  The second-order hierarchy members are generated from
the pair pattern

    u_{a,11} u_{a+1,pq} - u_{a,pq} u_{a+1,11} = 0,
    a = 1..m-1,  (p,q) != (1,1),  p <= q

solved on the chart u_{1,11} != 0.  The two third-order systems are stored as
term-for-term transcriptions guarded by checksum tests.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .analysis import Parametrization, PdeSystem
from .errors import InvalidShape, UnknownName
from .jetspace import (
    JetSpec,
    coord_u,
    coord_ud,
    coord_x,
    dimension,
    enumerate_coords,
)
from .parsing import parse_expr
from .ratexpr import Poly, RatExpr

__all__ = [
    "CatalogEntry",
    "ExpectedStats",
    "SurfaceInvariants",
    "get",
    "names",
    "strongnm2_system",
    "strongnm2_delta_count",
    "mov_point_family",
    "ganchev_milousheva",
    "MOV_TEXT",
    "STRONG223_TEXT",
]


@dataclass(frozen=True)
class ExpectedStats:
    algebra: str  # characterizing algebra kind
    generic_rank: int
    on_manifold_rank: int
    equation_dim: int
    admitted: tuple  # algebra kinds admitted


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    system: PdeSystem
    expected: ExpectedStats


# ---------------------------------------------------------------------------
# second-order hierarchy
# ---------------------------------------------------------------------------

def strongnm2_delta_count(n: int, m: int) -> int:
    """(m-1)(n^2+n-2)/2 independent equations."""
    return (m - 1) * (n * n + n - 2) // 2


def _pair_delta(alpha: int, beta: int, i: int, j: int, p: int, q: int) -> RatExpr:
    """u_{alpha,ij} u_{beta,pq} - u_{alpha,pq} u_{beta,ij}."""
    uij = Poly.coord(coord_ud(alpha, tuple(sorted((i, j)))))
    upq = Poly.coord(coord_ud(beta, tuple(sorted((p, q)))))
    vij = Poly.coord(coord_ud(beta, tuple(sorted((i, j)))))
    vpq = Poly.coord(coord_ud(alpha, tuple(sorted((p, q)))))
    return RatExpr.from_poly(uij * upq - vpq * vij)


def strongnm2_system(n: int, m: int) -> PdeSystem:
    if n < 2 or m < 2:
        raise InvalidShape("the second-order hierarchy needs n >= 2 and m >= 2")
    spec = JetSpec(n, m, 2)
    deltas = []
    for alpha in range(1, m):
        for p in range(1, n + 1):
            for q in range(p, n + 1):
                if (p, q) == (1, 1):
                    continue
                deltas.append(_pair_delta(alpha, alpha + 1, 1, 1, p, q))
    assert len(deltas) == strongnm2_delta_count(n, m)
    solved = {}
    u111 = RatExpr.coord(coord_ud(1, (1, 1)))
    for beta in range(2, m + 1):
        ub11 = RatExpr.coord(coord_ud(beta, (1, 1)))
        for p in range(1, n + 1):
            for q in range(p, n + 1):
                if (p, q) == (1, 1):
                    continue
                u1pq = RatExpr.coord(coord_ud(1, (p, q)))
                solved[coord_ud(beta, (p, q))] = ub11 * u1pq / u111
    free = tuple(c for c in enumerate_coords(spec) if c not in solved)
    param = Parametrization(
        free=free,
        solved=solved,
        excluded=(Poly.coord(coord_ud(1, (1, 1))),),
    )
    return PdeSystem(spec, tuple(deltas), name=f"strong{n}{m}2", param=param)


# ---------------------------------------------------------------------------
# scalar Monge-Ampere and Hessian determinants
# ---------------------------------------------------------------------------

def _hessian_det(n: int) -> Poly:
    """Determinant of the symmetric second-derivative matrix, expanded."""

    def minor(rows, cols) -> Poly:
        if len(rows) == 1:
            return Poly.coord(coord_ud(1, tuple(sorted((rows[0], cols[0])))))
        total = Poly.zero()
        r0 = rows[0]
        for k, c in enumerate(cols):
            entry = Poly.coord(coord_ud(1, tuple(sorted((r0, c)))))
            sub = minor(rows[1:], cols[:k] + cols[k + 1:])
            term = entry * sub
            total = total + (term if k % 2 == 0 else -term)
        return total

    idx = list(range(1, n + 1))
    return minor(idx, idx)


def _det_hessian_system(n: int, name: str) -> PdeSystem:
    spec = JetSpec(n, 1, 2)
    det = _hessian_det(n)
    unn = coord_ud(1, (n, n))
    lead = det.coefficient_of(unn, 1)  # principal (n-1)-minor
    rest = det.restrict({unn: 0})
    solved = {unn: RatExpr(-rest, lead)}
    free = tuple(c for c in enumerate_coords(spec) if c != unn)
    param = Parametrization(free=free, solved=solved, excluded=(lead,))
    return PdeSystem(spec, (RatExpr.from_poly(det),), name=name, param=param)


# ---------------------------------------------------------------------------
# third-order equations, transcribed term for term
# ---------------------------------------------------------------------------

MOV_TEXT = (
    "u[1;1,1]^3*u[1;2,2,2]^2 + u[1;2,2]^3*u[1;1,1,1]^2"
    " + 6*u[1;1,1]*u[1;1,2]*u[1;2,2]*u[1;1,1,1]*u[1;2,2,2]"
    " - 6*u[1;1,2]*u[1;2,2]^2*u[1;1,1,1]*u[1;1,1,2]"
    " - 6*u[1;1,1]*u[1;2,2]^2*u[1;1,1,1]*u[1;1,2,2]"
    " - 6*u[1;1,1]^2*u[1;1,2]*u[1;1,2,2]*u[1;2,2,2]"
    " - 6*u[1;1,1]^2*u[1;2,2]*u[1;1,1,2]*u[1;2,2,2]"
    " - 8*u[1;1,2]^3*u[1;1,1,1]*u[1;2,2,2]"
    " + 9*u[1;1,1]*u[1;2,2]^2*u[1;1,1,2]^2"
    " + 9*u[1;1,1]^2*u[1;2,2]*u[1;1,2,2]^2"
    " + 12*u[1;1,2]^2*u[1;2,2]*u[1;1,1,1]*u[1;1,2,2]"
    " + 12*u[1;1,1]*u[1;1,2]^2*u[1;1,1,2]*u[1;2,2,2]"
    " - 18*u[1;1,1]*u[1;1,2]*u[1;2,2]*u[1;1,1,2]*u[1;1,2,2]"
)

STRONG223_TEXT = (
    # first equation
    "(u[1;2,2]*u[2;1,2] - u[1;1,2]*u[2;2,2])"
    "*((u[1;2,2]*u[2;1,1] - u[1;1,2]*u[2;1,2])^2"
    " - (u[1;1,1]*u[1;2,2] - u[1;1,2]^2)*(u[2;1,1]*u[2;2,2] - u[2;1,2]^2))"
    "*u[1;1,1,1]"
    " + 3*(u[1;1,1]*u[2;1,2] - u[1;1,2]*u[2;1,1])"
    "*(u[1;1,2]*u[2;1,2] - u[1;2,2]*u[2;1,1])"
    "*(u[1;1,2]*u[2;2,2] - u[1;2,2]*u[2;1,2])*u[1;1,1,2]"
    " + 3*(u[1;1,1]*u[2;1,2] - u[1;1,2]*u[2;1,1])^2"
    "*(u[1;2,2]*u[2;1,2] - u[1;1,2]*u[2;2,2])*u[1;1,2,2]"
    " + (u[1;1,1]*u[2;1,2] - u[1;1,2]*u[2;1,1])^2"
    "*(u[1;1,1]*u[2;2,2] - u[1;1,2]*u[2;1,2])*u[1;2,2,2]"
    " + (u[1;1,1]*u[1;2,2] - u[1;1,2]^2)"
    "*(u[1;2,2]*u[2;1,1] - u[1;1,1]*u[2;2,2])"
    "*(u[1;1,2]*u[2;2,2] - u[1;2,2]*u[2;1,2])*u[2;1,1,1]"
    " + 3*(u[1;1,2]^2 - u[1;1,1]*u[1;2,2])"
    "*(u[1;1,2]*u[2;1,1] - u[1;1,1]*u[2;1,2])"
    "*(u[1;1,2]*u[2;2,2] - u[1;2,2]*u[2;1,2])*u[2;1,1,2]"
    " + (u[1;1,2]^2 - u[1;1,1]*u[1;2,2])"
    "*(u[1;1,2]*u[2;1,1] - u[1;1,1]*u[2;1,2])^2*u[2;2,2,2]",
    # second equation
    "3*(u[1;2,2]*u[2;1,2] - u[1;1,2]*u[2;2,2])^2"
    "*(u[2;1,1]*u[2;2,2] - u[2;1,2]^2)*u[1;1,1,2]"
    " + 3*(u[1;1,1]*u[2;2,2] - u[1;2,2]*u[2;1,1])"
    "*(u[1;2,2]*u[2;1,2] - u[1;1,2]*u[2;2,2])"
    "*(u[2;1,1]*u[2;2,2] - u[2;1,2]^2)*u[1;1,2,2]"
    " + (u[2;1,1]*u[2;2,2] - u[2;1,2]^2)"
    "*((u[1;1,1]*u[2;2,2] - u[1;2,2]*u[2;1,1])^2"
    " + (u[1;1,2]*u[2;2,2] - u[1;2,2]*u[2;1,2])"
    "*(u[1;1,2]*u[2;1,1] - u[1;1,1]*u[2;1,2]))*u[1;2,2,2]"
    " + (u[1;2,2]*u[2;1,2] - u[1;1,2]*u[2;2,2])^3*u[2;1,1,1]"
    " + 3*(u[1;1,2]*u[2;1,2] - u[1;2,2]*u[2;1,1])"
    "*(u[1;2,2]*u[2;1,2] - u[1;1,2]*u[2;2,2])^2*u[2;1,1,2]"
    " + 3*(u[1;2,2]*u[2;1,2] - u[1;1,2]*u[2;2,2])"
    "*((u[1;2,2]*u[2;1,1] - u[1;1,2]*u[2;1,2])^2"
    " - (u[1;1,1]*u[1;2,2] - u[1;1,2]^2)*(u[2;1,1]*u[2;2,2] - u[2;1,2]^2))*u[2;1,2,2]"
    " + ((u[1;1,2]*u[2;1,2] - u[1;2,2]*u[2;1,1])^3"
    " - (u[1;1,1]*u[2;2,2] + u[1;1,2]*u[2;1,2] - 2*u[1;2,2]*u[2;1,1])"
    "*(u[1;1,1]*u[1;2,2] - u[1;1,2]^2)*(u[2;1,1]*u[2;2,2] - u[2;1,2]^2))*u[2;2,2,2]",
)


def _mov_system() -> PdeSystem:
    spec = JetSpec(2, 1, 3)
    delta = parse_expr(MOV_TEXT, spec)
    # quadratic in every third-order coordinate: no rational solved form,
    # so the entry carries no chart; sampling uses mov_point_family
    return PdeSystem(spec, (delta,), name="mov3", param=None)


def _strong223_system() -> PdeSystem:
    spec = JetSpec(2, 2, 3)
    d1 = parse_expr(STRONG223_TEXT[0], spec)
    d2 = parse_expr(STRONG223_TEXT[1], spec)
    v1 = coord_ud(1, (1, 1, 1))
    v2 = coord_ud(2, (1, 1, 1))
    a1 = d1.num.coefficient_of(v1, 1)
    b1 = d1.num.coefficient_of(v2, 1)
    a2 = d2.num.coefficient_of(v1, 1)
    b2 = d2.num.coefficient_of(v2, 1)
    r1 = d1.num.restrict({v1: 0, v2: 0})
    r2 = d2.num.restrict({v1: 0, v2: 0})
    det = a1 * b2 - a2 * b1
    sol1 = RatExpr(b1 * r2 - b2 * r1, det)
    sol2 = RatExpr(a2 * r1 - a1 * r2, det)
    solved = {v1: sol1, v2: sol2}
    free = tuple(c for c in enumerate_coords(spec) if c not in solved)
    excluded = tuple({sol1.den, sol2.den})
    param = Parametrization(free=free, solved=solved, excluded=excluded)
    return PdeSystem(spec, (d1, d2), name="strong223", param=param)


def mov_point_family(a, t, seed: int = 0) -> dict:
    """Jet point of J^3(R^3, 2) lying on the third-order scalar equation.

    With the mixed second and third derivatives pinned to zero and
    u_11 = a = -u_22, u_111 = u_222 = t, the two surviving terms cancel as
    a^3 t^2 - a^3 t^2; the remaining coordinates are sampled freely.
    """
    a = Fraction(a)
    t = Fraction(t)
    if a == 0:
        raise ValueError("a must be nonzero")
    rng = random.Random(f"mov:{a}:{t}:{seed}")
    point = {
        coord_ud(1, (1, 2)): Fraction(0),
        coord_ud(1, (1, 1, 2)): Fraction(0),
        coord_ud(1, (1, 2, 2)): Fraction(0),
        coord_ud(1, (1, 1)): a,
        coord_ud(1, (2, 2)): -a,
        coord_ud(1, (1, 1, 1)): t,
        coord_ud(1, (2, 2, 2)): t,
    }
    for c in enumerate_coords(JetSpec(2, 1, 3)):
        if c not in point:
            point[c] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return point


# ---------------------------------------------------------------------------
# Weingarten-type surface invariants for n = m = 2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceInvariants:
    """The two scalar invariants of a surface u_1(x_1,x_2), u_2(x_1,x_2)."""

    k_num: RatExpr
    k_den: RatExpr
    kappa_num: RatExpr
    kappa_den: RatExpr

    def k(self) -> RatExpr:
        return self.k_num / self.k_den

    def kappa(self) -> RatExpr:
        return self.kappa_num / self.kappa_den

    def eval_at(self, point):
        return self.k().eval_at(point), self.kappa().eval_at(point)


_GM_W = (
    "1 + u[1;1]^2 + u[1;2]^2 + u[2;1]^2 + u[2;2]^2"
    " + (u[1;1]*u[2;2] + u[1;2]*u[2;1])^2"
)
_GM_K_NUM = (
    "4*(u[1;1,1]*u[2;1,2] - u[1;1,2]*u[2;1,1])"
    "*(u[1;1,2]*u[2;2,2] - u[1;2,2]*u[2;1,2])"
    " - (u[1;1,1]*u[2;2,2] - u[1;2,2]*u[2;1,1])^2"
)
_GM_KAPPA_NUM = (
    "(1 + u[1;1]^2 + u[2;1]^2)*(u[1;1,2]*u[2;2,2] - u[1;2,2]*u[2;1,2])"
    " + (1 + u[1;2]^2 + u[2;2]^2)*(u[1;1,1]*u[2;1,2] - u[1;1,2]*u[2;1,1])"
    " - (u[1;1]*u[1;2] - u[2;1]*u[2;2])*(u[1;1,1]*u[2;2,2] - u[1;2,2]*u[2;1,1])"
)


def ganchev_milousheva(point=None):
    """Symbolic surface invariants; evaluated pair when a point is given."""
    spec = JetSpec(2, 2, 2)
    w = parse_expr(_GM_W, spec)
    inv = SurfaceInvariants(
        k_num=parse_expr(_GM_K_NUM, spec),
        k_den=w ** 3,
        kappa_num=parse_expr(_GM_KAPPA_NUM, spec),
        kappa_den=w ** 2,
    )
    if point is None:
        return inv
    return inv.eval_at(point)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def _expected_second_order(n: int, m: int) -> ExpectedStats:
    jet = dimension(JetSpec(n, m, 2))
    q = strongnm2_delta_count(n, m)
    aff = (n + m) * (n + m + 1)
    return ExpectedStats(
        algebra="affine",
        generic_rank=min(jet, aff),
        on_manifold_rank=jet - q,
        equation_dim=jet - q,
        admitted=("affine", "projective"),
    )


def _expected_det_hessian(n: int) -> ExpectedStats:
    jet = dimension(JetSpec(n, 1, 2))
    return ExpectedStats(
        algebra="affine",
        generic_rank=min(jet, (n + 1) * (n + 2)),
        on_manifold_rank=jet - 1,
        equation_dim=jet - 1,
        admitted=("affine", "projective"),
    )


_FIXED = {
    "ma2": lambda: CatalogEntry(
        "ma2", _det_hessian_system(2, "ma2"), _expected_det_hessian(2)
    ),
    "strong222": lambda: CatalogEntry(
        "strong222", strongnm2_system(2, 2), _expected_second_order(2, 2)
    ),
    "strong322": lambda: CatalogEntry(
        "strong322", strongnm2_system(3, 2), _expected_second_order(3, 2)
    ),
    "strong232": lambda: CatalogEntry(
        "strong232", strongnm2_system(2, 3), _expected_second_order(2, 3)
    ),
    "mov3": lambda: CatalogEntry(
        "mov3",
        _mov_system(),
        ExpectedStats(
            algebra="affine",
            generic_rank=12,
            on_manifold_rank=11,
            equation_dim=11,
            admitted=("affine", "projective"),
        ),
    ),
    "strong223": lambda: CatalogEntry(
        "strong223",
        _strong223_system(),
        ExpectedStats(
            algebra="projective",
            generic_rank=22,
            on_manifold_rank=20,
            equation_dim=20,
            admitted=("affine", "projective"),
        ),
    ),
}

_DET_HESSIAN = re.compile(r"^det_hessian(\d+)$")


def names() -> list:
    """Stable CLI identifiers (det_hessianN for any N >= 2)."""
    return ["ma2", "det_hessian3", "strong222", "strong322", "strong232",
            "mov3", "strong223"]


def get(name: str) -> CatalogEntry:
    if name in _FIXED:
        return _FIXED[name]()
    m = _DET_HESSIAN.match(name)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise UnknownName(f"det_hessian needs n >= 2, got {n}")
        return CatalogEntry(
            name, _det_hessian_system(n, name), _expected_det_hessian(n)
        )
    raise UnknownName(f"unknown catalog entry {name!r}")
