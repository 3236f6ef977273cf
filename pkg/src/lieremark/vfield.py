"""Point vector fields, the truncated total derivative, and prolongation.

A field xi_i d/dx_i + eta_a d/du_a on the base lifts to the order-r jet space
with derivative-coordinate coefficients built by the recursion

    eta_[a, J + (j,)] = D(eta_[a, J])/Dx_j - sum_l D(xi_l)/Dx_j * u_{a, J+(l,)}

seeded with eta_[a] = eta_a.  The recursion is evaluated along the canonical
sorted multi-index; that the result does not depend on the build order is a
tested property, not a runtime code path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from .errors import JetCoordinateInBase, OrderOverflow
from .jetspace import (
    JetSpec,
    coord_order,
    coord_u,
    coord_ud,
    coord_x,
    enumerate_coords,
    is_ud,
    ud_parts,
)
from .ratexpr import Poly, RatExpr

__all__ = ["VectorField", "ProlongedField", "total_derivative", "prolong", "apply_field", "bracket"]


def _as_ratexpr(e) -> RatExpr:
    if isinstance(e, RatExpr):
        return e
    if isinstance(e, Poly):
        return RatExpr.from_poly(e)
    return RatExpr.const(e)


@dataclass(frozen=True)
class VectorField:
    """Base vector field; components depend on base coordinates only."""

    n: int
    m: int
    xi: tuple
    eta: tuple

    def __post_init__(self):
        if len(self.xi) != self.n or len(self.eta) != self.m:
            raise ValueError("component count does not match (n, m)")
        for e in self.xi + self.eta:
            for c in e.coords():
                if is_ud(c):
                    raise JetCoordinateInBase(
                        "vector-field components must not mention derivative coordinates"
                    )

    @classmethod
    def from_components(cls, n: int, m: int, components: dict) -> "VectorField":
        """Build from a {coordinate id: expression} map; missing parts are 0."""
        xi = [RatExpr.zero()] * n
        eta = [RatExpr.zero()] * m
        for c, e in components.items():
            e = _as_ratexpr(e)
            if c[0] == 0:
                xi[c[1] - 1] = e
            elif c[0] == 1:
                eta[c[1] - 1] = e
            else:
                raise JetCoordinateInBase(f"{c} is not a base coordinate")
        return cls(n, m, tuple(xi), tuple(eta))

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.xi + self.eta)

    def __add__(self, other: "VectorField") -> "VectorField":
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError("vector fields live on different base spaces")
        return VectorField(
            self.n,
            self.m,
            tuple(a + b for a, b in zip(self.xi, other.xi)),
            tuple(a + b for a, b in zip(self.eta, other.eta)),
        )

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + other.scale(-1)

    def scale(self, c) -> "VectorField":
        c = RatExpr.const(c) if not isinstance(c, RatExpr) else c
        return VectorField(
            self.n,
            self.m,
            tuple(c * e for e in self.xi),
            tuple(c * e for e in self.eta),
        )

    def component(self, c) -> RatExpr:
        if c[0] == 0:
            return self.xi[c[1] - 1]
        if c[0] == 1:
            return self.eta[c[1] - 1]
        raise JetCoordinateInBase(f"{c} is not a base coordinate")


def _max_order(e: RatExpr) -> int:
    cs = e.coords()
    return max((coord_order(c) for c in cs), default=0)


def total_derivative(e: RatExpr, i: int, spec: JetSpec) -> RatExpr:
    """Truncated total derivative D/Dx_i on expressions of order <= r-1."""
    e = _as_ratexpr(e)
    if _max_order(e) >= spec.r:
        raise OrderOverflow(
            f"total derivative would exceed jet order {spec.r}"
        )
    if e.den.is_constant:
        return RatExpr(_poly_total_derivative(e.num, i), e.den)
    dn = _poly_total_derivative(e.num, i)
    dd = _poly_total_derivative(e.den, i)
    return RatExpr(dn * e.den - e.num * dd, e.den * e.den)


def _poly_total_derivative(p: Poly, i: int) -> Poly:
    out = p.diff(coord_x(i))
    for c in p.coords():
        if c[0] == 0:
            continue
        if c[0] == 1:
            lifted = coord_ud(c[1], (i,))
        else:
            alpha, index = ud_parts(c)
            lifted = coord_ud(alpha, tuple(sorted(index + (i,))))
        out = out + Poly.coord(lifted) * p.diff(c)
    return out


@dataclass(frozen=True)
class ProlongedField:
    """Order-r lift of a base field; one coefficient per jet coordinate."""

    base: VectorField
    order: int
    coeffs: dict

    @property
    def spec(self) -> JetSpec:
        return JetSpec(self.base.n, self.base.m, self.order)

    def coefficient(self, c) -> RatExpr:
        return self.coeffs[c]

    def apply(self, e: RatExpr) -> RatExpr:
        """Derivation action: sum of coeff(c) * de/dc over jet coordinates."""
        e = _as_ratexpr(e)
        if _max_order(e) > self.order:
            raise OrderOverflow(
                f"expression order exceeds prolongation order {self.order}"
            )
        out = RatExpr.zero()
        for c in sorted(e.coords()):
            out = out + self.coeffs[c] * e.diff(c)
        return out


@lru_cache(maxsize=None)
def prolong(v: VectorField, r: int) -> ProlongedField:
    """Lift v to order r.  Cached: prolongations are reused heavily."""
    if r < 1:
        raise OrderOverflow("prolongation order must be >= 1")
    spec = JetSpec(v.n, v.m, r)
    coeffs = {}
    for i in range(1, v.n + 1):
        coeffs[coord_x(i)] = v.xi[i - 1]
    for a in range(1, v.m + 1):
        coeffs[coord_u(a)] = v.eta[a - 1]
    for k in range(1, r + 1):
        kspec = JetSpec(v.n, v.m, k)
        for a in range(1, v.m + 1):
            for index in combinations_with_replacement(range(1, v.n + 1), k):
                j = index[-1]
                parent = index[:-1]
                prev = coeffs[coord_ud(a, parent)] if parent else coeffs[coord_u(a)]
                coeff = total_derivative(prev, j, kspec)
                for l in range(1, v.n + 1):
                    dxi = total_derivative(v.xi[l - 1], j, kspec)
                    if not dxi.is_zero:
                        lifted = coord_ud(a, tuple(sorted(parent + (l,))))
                        coeff = coeff - dxi * RatExpr.coord(lifted)
                coeffs[coord_ud(a, index)] = coeff
    return ProlongedField(v, r, coeffs)


def apply_field(p: ProlongedField, e: RatExpr) -> RatExpr:
    return p.apply(e)


def bracket(a: VectorField, b: VectorField) -> VectorField:
    """Lie bracket [a, b] on the base."""
    if (a.n, a.m) != (b.n, b.m):
        raise ValueError("vector fields live on different base spaces")
    base_coords = [coord_x(i) for i in range(1, a.n + 1)]
    base_coords += [coord_u(al) for al in range(1, a.m + 1)]

    def act(v: VectorField, f: RatExpr) -> RatExpr:
        out = RatExpr.zero()
        for z in base_coords:
            comp = v.component(z)
            if not comp.is_zero:
                out = out + comp * f.diff(z)
        return out

    xi = tuple(act(a, b.xi[i]) - act(b, a.xi[i]) for i in range(a.n))
    eta = tuple(act(a, b.eta[al]) - act(b, a.eta[al]) for al in range(a.m))
    return VectorField(a.n, a.m, xi, eta)
