"""Affine and projective symmetry algebras of R^(n+m), with closure checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotClosed
from .jetspace import algebra_dims, coord_u, coord_x
from .linalg import solve_exact
from .ratexpr import Poly, RatExpr
from .vfield import VectorField, bracket

__all__ = ["AlgebraSpec", "affine_generators", "projective_generators", "verify_closure"]


@dataclass(frozen=True)
class AlgebraSpec:
    kind: str  # affine | projective | custom
    n: int
    m: int
    generators: tuple

    def __len__(self):
        return len(self.generators)

    @property
    def dim(self) -> int:
        return len(self.generators)

    def label(self) -> str:
        return f"{self.kind}(n={self.n}, m={self.m}, dim={self.dim})"


def _base_coords(n, m):
    return [coord_x(i) for i in range(1, n + 1)] + [coord_u(a) for a in range(1, m + 1)]


def affine_generators(n: int, m: int) -> AlgebraSpec:
    """Translations, then all linear fields (target outer, source inner)."""
    coords = _base_coords(n, m)
    gens = []
    for target in coords:
        gens.append(VectorField.from_components(n, m, {target: RatExpr.one()}))
    for target in coords:
        for source in coords:
            gens.append(
                VectorField.from_components(n, m, {target: RatExpr.coord(source)})
            )
    assert len(gens) == algebra_dims(n, m)[0]
    return AlgebraSpec("affine", n, m, tuple(gens))


def projective_generators(n: int, m: int) -> AlgebraSpec:
    """Affine generators plus a * (sum x_i d/dx_i + sum u_a d/du_a)."""
    coords = _base_coords(n, m)
    gens = list(affine_generators(n, m).generators)
    for a in coords:
        comp = {
            c: RatExpr.coord(a) * RatExpr.coord(c) for c in coords
        }
        gens.append(VectorField.from_components(n, m, comp))
    assert len(gens) == algebra_dims(n, m)[1]
    return AlgebraSpec("projective", n, m, tuple(gens))


def _component_vector(v: VectorField, slots):
    """Flatten field components over a fixed (component, monomial) slot list."""
    out = []
    for ci, mono in slots:
        comp = v.xi[ci] if ci < v.n else v.eta[ci - v.n]
        if not comp.den.is_constant:
            raise NotClosed(-1, -1)  # rational components cannot sit in a poly span
        out.append(Fraction(comp.num.terms.get(mono, 0)))
    return out


def verify_closure(alg: AlgebraSpec) -> dict:
    """Structure constants {(i, j): {k: c}}; raises NotClosed when a bracket
    cannot be written exactly in the span of the generators."""
    gens = alg.generators
    count = len(gens)
    ncomp = alg.n + alg.m
    brackets = {}
    for i in range(count):
        for j in range(i + 1, count):
            brackets[(i, j)] = bracket(gens[i], gens[j])
    # slot universe: every monomial appearing in any generator or bracket component
    monos = [set() for _ in range(ncomp)]

    def collect(v):
        for ci in range(ncomp):
            comp = v.xi[ci] if ci < v.n else v.eta[ci - v.n]
            if not comp.den.is_constant:
                raise NotClosed(-1, -1)
            monos[ci].update(comp.num.terms.keys())

    for g in gens:
        collect(g)
    for br in brackets.values():
        collect(br)
    slots = [(ci, m) for ci in range(ncomp) for m in sorted(monos[ci])]
    columns = [_component_vector(g, slots) for g in gens]
    constants = {}
    for (i, j), br in sorted(brackets.items()):
        target = _component_vector(br, slots)
        sol = solve_exact(columns, target)
        if sol is None:
            raise NotClosed(i, j)
        constants[(i, j)] = sol
    return constants
