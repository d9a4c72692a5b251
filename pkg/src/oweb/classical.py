"""The q = 1 layer: specialized matrices, antisymmetrizers and clasps.

Everything here is exact over Q.  Maps on V^{(x)k} use the same index
convention as the quantum side (leftmost factor most significant), so a
specialized web matrix can be compared with a permutation sum directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .exactla import rank_rational
from .intertwiners import intertwiners
from .linmap import LinearMap, canon_word, word_dim
from .qcombinat import named_coefficient
from .qratfun import ONE
from .qrep import RepContext, SizeCapError, max_dim_from_env

__all__ = [
    "RationalMatrix",
    "specialize",
    "flip",
    "permutation_matrix",
    "antisymmetrizer",
    "antisymmetrizer_unnormalized",
    "clasp_raw",
    "clasp",
    "doublecoset_recursion_check",
    "classical_crossing_check",
    "integrality_scan",
    "classical_equivariance",
    "DEFAULT_CLASSICAL_MAX_M",
]

# antisymmetrizer and clasp checks stay at m <= 4 unless asked otherwise
DEFAULT_CLASSICAL_MAX_M = 4

QRows = Dict[int, Dict[int, Fraction]]


@dataclass(eq=False)
class RationalMatrix:
    """Sparse matrix over Q between tensor words."""

    m: int
    src: Tuple[int, ...]
    tgt: Tuple[int, ...]
    rows: QRows

    def __post_init__(self):
        self.src = canon_word(self.src)
        self.tgt = canon_word(self.tgt)
        clean = {}
        for r, row in self.rows.items():
            row = {c: Fraction(v) for c, v in row.items() if v}
            if row:
                clean[r] = row
        self.rows = clean

    @property
    def shape(self) -> Tuple[int, int]:
        return word_dim(self.m, self.tgt), word_dim(self.m, self.src)

    @classmethod
    def identity(cls, m: int, word) -> "RationalMatrix":
        d = word_dim(m, canon_word(word))
        return cls(m, tuple(word), tuple(word), {i: {i: Fraction(1)} for i in range(d)})

    def is_zero(self) -> bool:
        return not self.rows

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def _same(self, other: "RationalMatrix"):
        if (self.m, self.src, self.tgt) != (other.m, other.src, other.tgt):
            raise ValueError(f"shape mismatch: {self.src}->{self.tgt} vs {other.src}->{other.tgt}")

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same(other)
        rows = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            tgt = rows.setdefault(r, {})
            for c, v in row.items():
                tgt[c] = tgt.get(c, 0) + v
        return RationalMatrix(self.m, self.src, self.tgt, rows)

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix(self.m, self.src, self.tgt,
                              {r: {k: v * c for k, v in row.items()} for r, row in self.rows.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        """Apply ``other`` first."""
        if other.tgt != self.src or self.m != other.m:
            raise ValueError(f"cannot compose {other.src}->{other.tgt} with {self.src}->{self.tgt}")
        out: QRows = {}
        for r, row in self.rows.items():
            acc: Dict[int, Fraction] = {}
            for k, v in row.items():
                for c, w in other.rows.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + v * w
            out[r] = acc
        return RationalMatrix(self.m, other.src, self.tgt, out)

    def tensor(self, other: "RationalMatrix") -> "RationalMatrix":
        on, oc = other.shape
        rows: QRows = {}
        for r1, row1 in self.rows.items():
            for r2, row2 in other.rows.items():
                rows[r1 * on + r2] = {c1 * oc + c2: v1 * v2
                                      for c1, v1 in row1.items() for c2, v2 in row2.items()}
        return RationalMatrix(self.m, self.src + other.src, self.tgt + other.tgt, rows)

    def rank(self) -> int:
        return rank_rational(list(self.rows.values()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.m, self.src, self.tgt, self.rows) == (other.m, other.src, other.tgt, other.rows)

    __hash__ = None

    def to_dense(self) -> List[List[Fraction]]:
        nr, nc = self.shape
        mat = [[Fraction(0)] * nc for _ in range(nr)]
        for r, row in self.rows.items():
            for c, v in row.items():
                mat[r][c] = v
        return mat

    def __repr__(self) -> str:
        return f"RationalMatrix(m={self.m}, {self.src}->{self.tgt}, nnz={self.nnz()})"


def specialize(f: LinearMap) -> RationalMatrix:
    """Entrywise q -> 1.  Raises SpecializationError naming any entry with a pole."""
    return RationalMatrix(f.m, f.src, f.tgt, f.specialize())


# ---------------------------------------------------------------------------
# symmetric group side


def _check_power(m: int, k: int, max_dim: Optional[int]):
    cap = max_dim_from_env() if max_dim is None else max_dim
    if m ** k > cap:
        raise SizeCapError(f"V^(x){k} has dimension {m ** k} for m={m}, above the cap {cap}")


def _digits(m: int, k: int, idx: int) -> List[int]:
    out = []
    for _ in range(k):
        idx, d = divmod(idx, m)
        out.append(d)
    return out[::-1]


def _index(m: int, digits: Sequence[int]) -> int:
    idx = 0
    for d in digits:
        idx = idx * m + d
    return idx


def permutation_matrix(m: int, perm: Sequence[int]) -> RationalMatrix:
    """Places the tensor factor in slot i into slot perm[i]."""
    k = len(perm)
    rows: QRows = {}
    for c in range(m ** k):
        d = _digits(m, k, c)
        out = [0] * k
        for i, p in enumerate(perm):
            out[p] = d[i]
        rows.setdefault(_index(m, out), {})[c] = Fraction(1)
    return RationalMatrix(m, (1,) * k, (1,) * k, rows)


def flip(m: int) -> RationalMatrix:
    return permutation_matrix(m, (1, 0))


def _sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    s = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def antisymmetrizer_unnormalized(m: int, k: int, max_dim: Optional[int] = None) -> RationalMatrix:
    """A_k = sum over S_k of sign(w) w, acting on V^{(x)k}."""
    if k < 1:
        raise ValueError("k must be at least 1")
    _check_power(m, k, max_dim)
    perms = [(p, _sign(p)) for p in permutations(range(k))]
    rows: QRows = {}
    for c in range(m ** k):
        d = _digits(m, k, c)
        if len(set(d)) < k:
            continue  # a repeated vector is killed
        for p, s in perms:
            out = [0] * k
            for i, t in enumerate(p):
                out[t] = d[i]
            r = _index(m, out)
            rows.setdefault(r, {})[c] = Fraction(s)
    return RationalMatrix(m, (1,) * k, (1,) * k, rows)


def antisymmetrizer(m: int, k: int, max_dim: Optional[int] = None) -> RationalMatrix:
    """a_k = A_k / k!, the idempotent onto the k-th exterior power."""
    return antisymmetrizer_unnormalized(m, k, max_dim).scale(Fraction(1, factorial(k)))


# ---------------------------------------------------------------------------
# clasps


def clasp_raw(ctx: Union[RepContext, int], k: int) -> LinearMap:
    """Merge strands one at a time up to label k, then split back down."""
    itw = intertwiners(ctx)
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1:
        return itw.id(1)
    down = itw.id(*(1,) * k)
    for j in range(1, k):
        rest = (1,) * (k - j - 1)
        down = itw.mul(j, 1).tensor(itw.id(*rest)) @ down
    up = itw.id(k)
    for j in range(k - 1, 0, -1):
        rest = (1,) * (k - j - 1)
        up = itw.split(j, 1).tensor(itw.id(*rest)) @ up
    return up @ down


def clasp(ctx: Union[RepContext, int], k: int) -> LinearMap:
    """The idempotent clasp: clasp_raw divided by the product of bigons [2j]/[2]."""
    itw = intertwiners(ctx)
    raw = clasp_raw(itw.ctx, k)
    if k > itw.m:
        return raw  # routed through a zero object
    norm = ONE
    for j in range(2, k + 1):
        norm = norm * named_coefficient("bigon", itw.m, j)
    return raw.scale(ONE / norm)


def doublecoset_recursion_check(m: int, k: int, max_dim: Optional[int] = None,
                                via_webs: bool = True) -> bool:
    """A_{k+1} = A_k(x)1 - (1/(k-1)!) (A_k(x)1) s_k (A_k(x)1) with s_k the flip.

    Here A_k is the signed permutation sum; with ``via_webs`` the boxes are
    additionally taken from the specialized raw clasp, tying the identity to
    the web side.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    big = antisymmetrizer_unnormalized(m, k + 1, max_dim)
    boxes = [antisymmetrizer_unnormalized(m, k, max_dim)]
    if via_webs:
        boxes.append(specialize(clasp_raw(m, k)))
    one = RationalMatrix.identity(m, (1,))
    sk = RationalMatrix.identity(m, (1,) * (k - 1)).tensor(flip(m))
    for a in boxes:
        ak = a.tensor(one)
        rhs = ak - (ak @ sk @ ak).scale(Fraction(1, factorial(k - 1)))
        if rhs != big:
            return False
    return True


def classical_crossing_check(ctx: Union[RepContext, int]) -> bool:
    """At q = 1 the braiding is the flip, equal to id - m;s and to cap;cup - H_2."""
    itw = intertwiners(ctx)
    m = itw.m
    fl = flip(m)
    beta = specialize(itw.braiding(1))
    beta_inv = specialize(itw.braiding(-1))
    ms = specialize(itw.split(1, 1) @ itw.mul(1, 1))
    cc = specialize(itw.cup(1) @ itw.cap(1))
    h2 = specialize(itw.h_rung2())
    ident = RationalMatrix.identity(m, (1, 1))
    return (beta == fl and beta_inv == fl
            and ident - ms == fl
            and cc - h2 == fl)


# ---------------------------------------------------------------------------
# integrality and classical equivariance


def integrality_scan(ctx: Union[RepContext, int], extra: Iterable[Tuple[str, LinearMap]] = ()) -> List[str]:
    """Names of cached intertwiners (and extras) with an entry singular at q = 1."""
    itw = intertwiners(ctx)
    bad = []
    maps = list(itw.named_maps()) + list(extra)
    for k in range(0, itw.m + 1):
        maps.append((f"psi({k})", itw.psi(k)))
        maps.append((f"phi({k})", itw.phi(k)))
    for name, f in maps:
        if f.irregular_entries():
            bad.append(name)
    return bad


def classical_equivariance(ctx: Union[RepContext, int]) -> List[str]:
    """Specialized intertwiners that fail to commute with E_i, F_i and sigma at q = 1."""
    itw = intertwiners(ctx)
    c = itw.ctx
    gens = [g for g in c.generators if g.kind in ("E", "F", "sigma")]
    bad = []
    for name, f in itw.named_maps():
        fs = specialize(f)
        for g in gens:
            xs = specialize(c.act_on_word(g, f.src))
            xt = specialize(c.act_on_word(g, f.tgt))
            if fs @ xs != xt @ fs:
                bad.append(f"{name}:{g}")
    return bad
