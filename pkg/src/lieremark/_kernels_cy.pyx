# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel: same contract as _kernels_py, tighter loops.

Coefficients stay Python ints/Fractions (arbitrary precision is mandatory:
fraction-free pivots grow), so the win here is loop and dict overhead, which
dominates for the small exact coefficients these computations produce.
"""

from fractions import Fraction

BACKEND_NAME = "cython"

cdef object _FRACTION = Fraction


cdef inline object _store(object c):
    if type(c) is _FRACTION and c.denominator == 1:
        return c.numerator
    return c


def mono_mul(tuple ma, tuple mb):
    """Product of two monomials (linear merge of sorted pair tuples)."""
    if not ma:
        return mb
    if not mb:
        return ma
    cdef list out = []
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t na = len(ma), nb = len(mb)
    cdef tuple pa, pb
    cdef object ka, kb
    while i < na and j < nb:
        pa = <tuple> ma[i]
        pb = <tuple> mb[j]
        ka = pa[0]
        kb = pb[0]
        if ka == kb:
            out.append((ka, pa[1] + pb[1]))
            i += 1
            j += 1
        elif ka < kb:
            out.append(pa)
            i += 1
        else:
            out.append(pb)
            j += 1
    while i < na:
        out.append(ma[i])
        i += 1
    while j < nb:
        out.append(mb[j])
        j += 1
    return tuple(out)


def poly_add(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object m, c, s
    for m, c in b.items():
        s = out.get(m)
        if s is None:
            out[m] = c
        else:
            s = s + c
            if s:
                out[m] = _store(s)
            else:
                del out[m]
    return out


def poly_sub(dict a, dict b):
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object m, c, s
    for m, c in b.items():
        s = out.get(m)
        if s is None:
            out[m] = -c
        else:
            s = s - c
            if s:
                out[m] = _store(s)
            else:
                del out[m]
    return out


def poly_neg(dict a):
    cdef dict out = {}
    cdef object m, c
    for m, c in a.items():
        out[m] = -c
    return out


def poly_scale(dict a, object c):
    """Multiply every coefficient by the nonzero scalar c."""
    if not c:
        return {}
    if c == 1:
        return dict(a)
    cdef dict out = {}
    cdef object m, v
    for m, v in a.items():
        out[m] = _store(v * c)
    return out


def poly_mul_term(dict a, tuple mono, object c):
    """Multiply by the single term c*mono."""
    if not c:
        return {}
    if not mono:
        return poly_scale(a, c)
    cdef dict out = {}
    cdef object m, v
    cdef bint unit = c == 1
    for m, v in a.items():
        if unit:
            out[mono_mul(<tuple> m, mono)] = v
        else:
            out[mono_mul(<tuple> m, mono)] = _store(v * c)
    return out


def poly_mul(dict a, dict b):
    if not a or not b:
        return {}
    cdef object m0, c0
    if len(a) == 1:
        (m0, c0), = a.items()
        return poly_mul_term(b, <tuple> m0, c0)
    if len(b) == 1:
        (m0, c0), = b.items()
        return poly_mul_term(a, <tuple> m0, c0)
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef list items_b = list(b.items())
    cdef object ma, ca, mb, cb, m, c, s
    cdef Py_ssize_t i, nb = len(items_b)
    for ma, ca in a.items():
        for i in range(nb):
            mb, cb = <tuple> items_b[i]
            m = mono_mul(<tuple> ma, <tuple> mb)
            c = ca * cb
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
    for m in out:
        out[m] = _store(out[m])
    return out


def poly_diff(dict a, object key):
    """Partial derivative with respect to one coordinate."""
    cdef dict out = {}
    cdef tuple m, dm
    cdef object c, k
    cdef Py_ssize_t idx, n
    cdef long e
    for m, c in a.items():
        n = len(m)
        for idx in range(n):
            k = (<tuple> m[idx])[0]
            if k == key:
                e = (<tuple> m[idx])[1]
                if e == 1:
                    dm = m[:idx] + m[idx + 1:]
                else:
                    dm = m[:idx] + ((k, e - 1),) + m[idx + 1:]
                out[dm] = _store(c * e)
                break
    return out


def poly_eval(dict a, dict env):
    """Evaluate at a full point {key: value}; raises KeyError when unbound."""
    cdef object total = 0
    cdef dict powers = {}
    cdef tuple m, pair
    cdef object c, v, p, k
    cdef Py_ssize_t i, n
    for m, c in a.items():
        v = c
        n = len(m)
        for i in range(n):
            pair = <tuple> m[i]
            p = powers.get(pair)
            if p is None:
                p = env[pair[0]] ** <long> pair[1]
                powers[pair] = p
            v = v * p
        total = total + v
    return _store(total) if type(total) is _FRACTION else total


def bareiss_rank(list rows):
    """Exact rank of an integer matrix by fraction-free elimination."""
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t nr = len(m)
    cdef Py_ssize_t nc = len(<list> m[0]) if nr else 0
    cdef Py_ssize_t rank = 0, c, i, j, piv_r
    cdef object prev = 1
    cdef object piv, f, v, a, best
    cdef list row_i, row_k
    for c in range(nc):
        if rank == nr:
            break
        piv_r = -1
        best = None
        for i in range(rank, nr):
            v = (<list> m[i])[c]
            if v:
                a = -v if v < 0 else v
                if best is None or a < best:
                    best = a
                    piv_r = i
        if piv_r < 0:
            continue
        if piv_r != rank:
            m[rank], m[piv_r] = m[piv_r], m[rank]
        row_k = <list> m[rank]
        piv = row_k[c]
        for i in range(rank + 1, nr):
            row_i = <list> m[i]
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
