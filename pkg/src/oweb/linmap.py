"""Sparse matrices over Q(q) between tensor words of exterior powers.

A word is a tuple of labels; label k names the factor Lambda^k.  Label 0
is the unit and is dropped, and any label above m makes the whole word the
zero space.  Basis vectors of a word are tuples of subsets, indexed in
mixed radix with the leftmost factor most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .exactla import invert, rank_qq
from .extalg import basis
from .qratfun import ONE, RatFun, RatFunError, ZERO

__all__ = [
    "canon_word",
    "word_dim",
    "word_basis",
    "word_index",
    "LinearMap",
    "SpecializationError",
]

Rows = Dict[int, Dict[int, RatFun]]


def canon_word(word: Iterable[int]) -> Tuple[int, ...]:
    out = []
    for k in word:
        k = int(k)
        if k < 0:
            raise ValueError(f"negative label {k}")
        if k:
            out.append(k)
    return tuple(out)


def word_dim(m: int, word: Sequence[int]) -> int:
    d = 1
    for k in word:
        d *= comb(m, k) if k <= m else 0
    return d


@lru_cache(maxsize=None)
def word_basis(m: int, word: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    """Basis of the tensor word as tuples of monomials, in index order."""
    return tuple(product(*(basis(m, k) for k in word)))


@lru_cache(maxsize=None)
def word_index(m: int, word: Tuple[int, ...]) -> Dict[Tuple[Tuple[int, ...], ...], int]:
    return {b: i for i, b in enumerate(word_basis(m, word))}


class SpecializationError(RatFunError):
    """An entry has a pole at q = 1."""


def _acc(row: Dict[int, RatFun], c: int, v: RatFun):
    cur = row.get(c)
    v = v if cur is None else cur + v
    if v:
        row[c] = v
    else:
        row.pop(c, None)


@dataclass(eq=False)
class LinearMap:
    """Sparse matrix from the space of ``src`` to the space of ``tgt``."""

    m: int
    src: Tuple[int, ...]
    tgt: Tuple[int, ...]
    rows: Rows

    def __post_init__(self):
        self.src = canon_word(self.src)
        self.tgt = canon_word(self.tgt)
        self.rows = {r: {c: v for c, v in row.items() if v}
                     for r, row in self.rows.items()}
        self.rows = {r: row for r, row in self.rows.items() if row}

    # shape -----------------------------------------------------------------
    @property
    def nrows(self) -> int:
        return word_dim(self.m, self.tgt)

    @property
    def ncols(self) -> int:
        return word_dim(self.m, self.src)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def entry(self, r: int, c: int) -> RatFun:
        return self.rows.get(r, {}).get(c, ZERO)

    def entries(self) -> Iterator[Tuple[int, int, RatFun]]:
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def column(self, c: int) -> Dict[int, RatFun]:
        return {r: row[c] for r, row in self.rows.items() if c in row}

    # constructors ------------------------------------------------------------
    @classmethod
    def zero(cls, m: int, src, tgt) -> "LinearMap":
        return cls(m, tuple(src), tuple(tgt), {})

    @classmethod
    def identity(cls, m: int, word) -> "LinearMap":
        word = canon_word(word)
        return cls(m, word, word, {i: {i: ONE} for i in range(word_dim(m, word))})

    @classmethod
    def scalar(cls, m: int, c) -> "LinearMap":
        c = RatFun.const(c)
        return cls(m, (), (), {0: {0: c}} if c else {})

    @classmethod
    def from_dense(cls, m: int, src, tgt, mat: Sequence[Sequence]) -> "LinearMap":
        rows = {}
        for r, line in enumerate(mat):
            rows[r] = {c: RatFun.const(v) for c, v in enumerate(line) if v}
        return cls(m, tuple(src), tuple(tgt), rows)

    # algebra -----------------------------------------------------------------
    def _check_same(self, other: "LinearMap"):
        if self.m != other.m or self.src != other.src or self.tgt != other.tgt:
            raise ValueError(
                f"shape mismatch: {self.src}->{self.tgt} vs {other.src}->{other.tgt}")

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._check_same(other)
        rows = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            tgt = rows.setdefault(r, {})
            for c, v in row.items():
                _acc(tgt, c, v)
        return LinearMap(self.m, self.src, self.tgt, rows)

    def __neg__(self) -> "LinearMap":
        return self.scale(-ONE)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + (-other)

    def scale(self, c) -> "LinearMap":
        c = RatFun.const(c)
        if not c:
            return LinearMap.zero(self.m, self.src, self.tgt)
        return LinearMap(self.m, self.src, self.tgt,
                         {r: {k: v * c for k, v in row.items()} for r, row in self.rows.items()})

    def __rmul__(self, c) -> "LinearMap":
        return self.scale(c)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        """Matrix product self * other, i.e. apply ``other`` first."""
        if self.m != other.m or other.tgt != self.src:
            raise ValueError(f"cannot compose {other.src}->{other.tgt} with {self.src}->{self.tgt}")
        out: Rows = {}
        orows = other.rows
        for r, row in self.rows.items():
            acc: Dict[int, RatFun] = {}
            for k, v in row.items():
                orow = orows.get(k)
                if not orow:
                    continue
                for c, w in orow.items():
                    _acc(acc, c, v * w)
            if acc:
                out[r] = acc
        return LinearMap(self.m, other.src, self.tgt, out)

    def then(self, other: "LinearMap") -> "LinearMap":
        """Apply self, then other."""
        return other @ self

    def tensor(self, other: "LinearMap") -> "LinearMap":
        """Kronecker product with self as the left (most significant) factor."""
        if self.m != other.m:
            raise ValueError("mixed m")
        on, oc = other.nrows, other.ncols
        rows: Rows = {}
        for r1, row1 in self.rows.items():
            for r2, row2 in other.rows.items():
                acc = {}
                for c1, v1 in row1.items():
                    base = c1 * oc
                    for c2, v2 in row2.items():
                        acc[base + c2] = v1 * v2
                rows[r1 * on + r2] = acc
        return LinearMap(self.m, self.src + other.src, self.tgt + other.tgt, rows)

    def transpose(self) -> "LinearMap":
        rows: Rows = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return LinearMap(self.m, self.tgt, self.src, rows)

    def inverse(self) -> "LinearMap":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square map")
        return LinearMap(self.m, self.tgt, self.src, invert(self.rows, self.nrows))

    def rank(self) -> int:
        return rank_qq(list(self.rows.values()))

    def apply(self, vec: Dict[int, RatFun]) -> Dict[int, RatFun]:
        out: Dict[int, RatFun] = {}
        for r, row in self.rows.items():
            acc = ZERO
            for c, v in row.items():
                w = vec.get(c)
                if w is not None:
                    acc = acc + v * w
            if acc:
                out[r] = acc
        return out

    # comparison --------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.m == other.m and self.src == other.src
                and self.tgt == other.tgt and self.rows == other.rows)

    __hash__ = None

    def scalar_value(self) -> RatFun:
        """The single entry of a map between one-dimensional spaces."""
        if self.shape != (1, 1):
            raise ValueError(f"map of shape {self.shape} is not a scalar")
        return self.entry(0, 0)

    def as_multiple_of(self, other: "LinearMap") -> Optional[RatFun]:
        """c with self == c * other, or None if no such scalar exists."""
        self._check_same(other)
        if other.is_zero():
            return ZERO if self.is_zero() else None
        r0, row0 = next(iter(other.rows.items()))
        c0, v0 = next(iter(row0.items()))
        c = self.entry(r0, c0) / v0
        return c if self == other.scale(c) else None

    # specialization ----------------------------------------------------------
    def irregular_entries(self) -> List[Tuple[int, int]]:
        return [(r, c) for r, c, v in self.entries() if not v.is_regular_at_one()]

    def specialize(self) -> Dict[int, Dict[int, Fraction]]:
        out: Dict[int, Dict[int, Fraction]] = {}
        for r, c, v in self.entries():
            if not v.is_regular_at_one():
                raise SpecializationError(
                    f"entry ({r},{c}) = {v} of {self.src}->{self.tgt} is not regular at q=1")
            x = v.eval_at_one()
            if x:
                out.setdefault(r, {})[c] = x
        return out

    def to_dense(self) -> List[List[RatFun]]:
        mat = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.entries():
            mat[r][c] = v
        return mat

    def __repr__(self) -> str:
        return f"LinearMap(m={self.m}, {self.src}->{self.tgt}, nnz={self.nnz()})"
