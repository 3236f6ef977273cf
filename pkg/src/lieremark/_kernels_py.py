"""Pure-Python kernel: hot loops of the sparse polynomial engine.

The compiled twin (_kernels_cy.pyx) implements the exact same functions;
lieremark.kernels picks one of the two at import time.  Everything here works
on plain data so both backends stay trivially interchangeable:

  monomial     tuple of (coordinate key, exponent) pairs, sorted by key,
               no zero exponents; the empty tuple is the constant monomial
  term dict    {monomial: coefficient}, no zero coefficients; {} is zero
  coefficient  int, or Fraction when non-integral

Coordinate keys only need to be hashable and mutually sortable; the jet-space
layer uses small int tuples whose natural order is the global coordinate
enumeration.  Coefficient arithmetic relies on int/Fraction interoperating,
which keeps the common all-integer case on the fast int path.
"""

from fractions import Fraction


BACKEND_NAME = "python"


def _store(c):
    # collapse integral Fractions so later products stay on the int path
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def mono_mul(ma, mb):
    """Product of two monomials."""
    if not ma:
        return mb
    if not mb:
        return ma
    d = dict(ma)
    for k, e in mb:
        v = d.get(k)
        d[k] = e if v is None else v + e
    return tuple(sorted(d.items()))


def poly_add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    get = out.get
    for m, c in b.items():
        s = get(m)
        if s is None:
            out[m] = c
        else:
            s = s + c
            if s:
                out[m] = _store(s)
            else:
                del out[m]
    return out


def poly_sub(a, b):
    if not b:
        return dict(a)
    out = dict(a)
    get = out.get
    for m, c in b.items():
        s = get(m)
        if s is None:
            out[m] = -c
        else:
            s = s - c
            if s:
                out[m] = _store(s)
            else:
                del out[m]
    return out


def poly_neg(a):
    return {m: -c for m, c in a.items()}


def poly_scale(a, c):
    """Multiply every coefficient by the nonzero scalar c."""
    if not c:
        return {}
    if c == 1:
        return dict(a)
    return {m: _store(v * c) for m, v in a.items()}


def poly_mul_term(a, mono, c):
    """Multiply by the single term c*mono."""
    if not c:
        return {}
    if not mono:
        return poly_scale(a, c)
    if c == 1:
        return {mono_mul(m, mono): v for m, v in a.items()}
    return {mono_mul(m, mono): _store(v * c) for m, v in a.items()}


def poly_mul(a, b):
    if not a or not b:
        return {}
    if len(a) == 1:
        (m, c), = a.items()
        return poly_mul_term(b, m, c)
    if len(b) == 1:
        (m, c), = b.items()
        return poly_mul_term(a, m, c)
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    items_b = list(b.items())
    for ma, ca in a.items():
        for mb, cb in items_b:
            m = mono_mul(ma, mb)
            c = ca * cb
            s = get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
    for m, c in out.items():
        out[m] = _store(c)
    return out


def poly_diff(a, key):
    """Partial derivative with respect to one coordinate."""
    out = {}
    for m, c in a.items():
        for idx, (k, e) in enumerate(m):
            if k == key:
                if e == 1:
                    dm = m[:idx] + m[idx + 1:]
                else:
                    dm = m[:idx] + ((k, e - 1),) + m[idx + 1:]
                out[dm] = _store(c * e)
                break
    return out


def poly_eval(a, env):
    """Evaluate at a full point {key: value}; raises KeyError when unbound."""
    total = 0
    powers = {}
    for m, c in a.items():
        v = c
        for k, e in m:
            p = powers.get((k, e))
            if p is None:
                p = env[k] ** e
                powers[(k, e)] = p
            v = v * p
        total = total + v
    return _store(total) if isinstance(total, Fraction) else total


def bareiss_rank(rows):
    """Exact rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    prev = 1
    for c in range(nc):
        if rank == nr:
            break
        piv_r = -1
        best = None
        for i in range(rank, nr):
            v = m[i][c]
            if v:
                a = -v if v < 0 else v
                if best is None or a < best:
                    best = a
                    piv_r = i
        if piv_r < 0:
            continue
        if piv_r != rank:
            m[rank], m[piv_r] = m[piv_r], m[rank]
        piv = m[rank][c]
        row_k = m[rank]
        for i in range(rank + 1, nr):
            row_i = m[i]
            f = row_i[c]
            if f:
                for j in range(c + 1, nc):
                    row_i[j] = (piv * row_i[j] - f * row_k[j]) // prev
                row_i[c] = 0
            elif prev != 1 or piv != 1:
                for j in range(c + 1, nc):
                    row_i[j] = (piv * row_i[j]) // prev
        prev = piv
        rank += 1
    return rank
