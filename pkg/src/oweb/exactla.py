"""Fraction-free exact linear algebra over Q(q) and over Q.

Rows are sparse dicts ``column -> value``.  Over Q(q) each row is first
scaled to have coefficients in Z[q]; elimination then works with
polynomial cross-multiplication (no field division) followed by removal
of the row's common polynomial factor, which keeps entries small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Dict, List, Optional, Sequence, Tuple

from .qratfun import (
    Poly,
    RatFun,
    p_divexact,
    p_gcd,
    p_mul,
    p_neg,
    p_sub,
    ZERO,
)

__all__ = [
    "SingularMatrixError",
    "poly_row",
    "rank_qq",
    "rank_rational",
    "invert",
    "components",
]


class SingularMatrixError(ArithmeticError):
    """Raised when an inversion meets a singular matrix."""


def _lcm(a: Poly, b: Poly) -> Poly:
    if a == (1,):
        return b
    if b == (1,):
        return a
    return p_divexact(p_mul(a, b), p_gcd(a, b))


def poly_row(row: Dict[int, RatFun]) -> Dict[int, Poly]:
    """Scale a RatFun row by the lcm of its denominators to get Z[q] entries."""
    den: Poly = (1,)
    for v in row.values():
        den = _lcm(den, v.den)
    out = {}
    for c, v in row.items():
        if v:
            out[c] = p_mul(v.num, p_divexact(den, v.den))
    return _primitive_row(out)


def _primitive_row(row: Dict[int, Poly]) -> Dict[int, Poly]:
    g: Optional[Poly] = None
    for v in row.values():
        g = v if g is None else p_gcd(g, v)
        if g == (1,):
            return row
    if g is None or g == (1,):
        return row
    return {c: p_divexact(v, g) for c, v in row.items()}


def _cost(p: Poly) -> Tuple[int, int]:
    return (len(p), sum(1 for x in p if x))


def rank_qq(rows: Sequence[Dict[int, RatFun]]) -> int:
    """Rank over Q(q) of a sparse matrix given as rows."""
    work: List[Dict[int, Poly]] = [poly_row(r) for r in rows if any(r.values())]
    rank = 0
    while work:
        # pivot: shortest row, cheapest entry
        bi = min(range(len(work)), key=lambda i: len(work[i]))
        prow = work.pop(bi)
        pc = min(prow, key=lambda c: _cost(prow[c]))
        pv = prow[pc]
        rank += 1
        nxt = []
        for row in work:
            rv = row.get(pc)
            if rv is None:
                nxt.append(row)
                continue
            g = p_gcd(pv, rv)
            a = p_divexact(pv, g)
            b = p_divexact(rv, g)
            new: Dict[int, Poly] = {}
            for c, v in row.items():
                if c != pc:
                    new[c] = p_mul(a, v)
            for c, v in prow.items():
                if c == pc:
                    continue
                t = p_mul(b, v)
                cur = new.get(c)
                s = p_neg(t) if cur is None else p_sub(cur, t)
                if s:
                    new[c] = s
                else:
                    new.pop(c, None)
            new = {c: v for c, v in new.items() if v}
            if new:
                nxt.append(_primitive_row(new))
        work = nxt
    return rank


def rank_rational(rows: Sequence[Dict[int, Fraction]]) -> int:
    """Rank over Q by integer fraction-free elimination."""
    work: List[Dict[int, int]] = []
    for r in rows:
        r = {c: Fraction(v) for c, v in r.items() if v}
        if not r:
            continue
        den = 1
        for v in r.values():
            den = den * v.denominator // igcd(den, v.denominator)
        work.append({c: int(v * den) for c, v in r.items()})
    rank = 0
    while work:
        bi = min(range(len(work)), key=lambda i: len(work[i]))
        prow = work.pop(bi)
        pc = min(prow, key=lambda c: abs(prow[c]))
        pv = prow[pc]
        rank += 1
        nxt = []
        for row in work:
            rv = row.get(pc)
            if rv is None:
                nxt.append(row)
                continue
            g = igcd(pv, rv)
            a, b = pv // g, rv // g
            new = {c: a * v for c, v in row.items() if c != pc}
            for c, v in prow.items():
                if c != pc:
                    new[c] = new.get(c, 0) - b * v
            new = {c: v for c, v in new.items() if v}
            if new:
                cg = 0
                for v in new.values():
                    cg = igcd(cg, v)
                nxt.append({c: v // cg for c, v in new.items()})
        work = nxt
    return rank


def components(rows: Dict[int, Dict[int, RatFun]], n: int) -> List[Tuple[List[int], List[int]]]:
    """Connected components of the bipartite row/column support graph."""
    parent = list(range(2 * n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r, row in rows.items():
        for c in row:
            ra, cb = find(r), find(n + c)
            if ra != cb:
                parent[ra] = cb
    groups: Dict[int, Tuple[List[int], List[int]]] = {}
    for x in range(2 * n):
        g = groups.setdefault(find(x), ([], []))
        if x < n:
            g[0].append(x)
        else:
            g[1].append(x - n)
    return [g for g in groups.values()]


def _invert_block(a: List[List[RatFun]]) -> List[List[RatFun]]:
    """Inverse by fraction-free Gauss-Jordan on the denominator-cleared matrix."""
    n = len(a)
    den: Poly = (1,)
    for row in a:
        for v in row:
            den = _lcm(den, v.den)
    mat: List[List[Poly]] = []
    for i, row in enumerate(a):
        prow = [p_mul(v.num, p_divexact(den, v.den)) if v else () for v in row]
        prow += [(1,) if j == i else () for j in range(n)]
        mat.append(prow)
    prev: Poly = (1,)
    for k in range(n):
        piv = None
        for r in range(k, n):
            if mat[r][k]:
                if piv is None or _cost(mat[r][k]) < _cost(mat[piv][k]):
                    piv = r
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        mat[k], mat[piv] = mat[piv], mat[k]
        pk = mat[k]
        akk = pk[k]
        for i in range(n):
            if i == k:
                continue
            ri = mat[i]
            aik = ri[k]
            for j in range(2 * n):
                if j == k:
                    continue
                if aik:
                    val = p_sub(p_mul(akk, ri[j]), p_mul(aik, pk[j]))
                else:
                    val = p_mul(akk, ri[j])
                ri[j] = p_divexact(val, prev) if val else ()
            ri[k] = ()
        prev = akk
    # now mat = [d I | adj'] with d = prev on every diagonal entry
    dscale = RatFun(den, (1,))
    out = []
    for i in range(n):
        d = mat[i][i]
        out.append([RatFun(mat[i][n + j], d) * dscale for j in range(n)])
    return out


def invert(rows: Dict[int, Dict[int, RatFun]], n: int) -> Dict[int, Dict[int, RatFun]]:
    """Inverse of an n x n sparse matrix over Q(q), block by block."""
    out: Dict[int, Dict[int, RatFun]] = {}
    for rs, cs in components(rows, n):
        if len(rs) != len(cs):
            raise SingularMatrixError("matrix is singular")
        rs.sort()
        cs.sort()
        block = [[rows.get(r, {}).get(c, ZERO) for c in cs] for r in rs]
        inv = _invert_block(block)
        # inverse maps row-space indices back: inv[i][j] is entry (cs[i], rs[j])
        for i, c in enumerate(cs):
            for j, r in enumerate(rs):
                v = inv[i][j]
                if v:
                    out.setdefault(c, {})[r] = v
    return out
