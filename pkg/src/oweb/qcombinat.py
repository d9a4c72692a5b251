"""Quantum integers, binomials and the named relation coefficients.

Every ratio of the shape [2a]/[a] is written as ``two(a) = q^a + q^-a``
before any arithmetic, so each coefficient has a value for every
1 <= k <= m, including the parameters where the raw bracket fraction is 0/0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

from .qratfun import ONE, Q, RatFun, ZERO

__all__ = [
    "QBase",
    "qint",
    "qfactorial",
    "qbinom",
    "two",
    "COEFFICIENTS",
    "named_coefficient",
    "raw_coefficient",
    "identity_checks",
    "IdentityReport",
]


@dataclass(frozen=True)
class QBase:
    """The base v = q^e of a quantum integer."""

    e: int = 1

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("base exponent must be positive")


Q1 = QBase(1)
Q2 = QBase(2)


def _base(base) -> int:
    if isinstance(base, QBase):
        return base.e
    if isinstance(base, int) and base >= 1:
        return base
    raise ValueError(f"invalid quantum base {base!r}")


@lru_cache(maxsize=None)
def qint(n: int, base=Q1) -> RatFun:
    """[n]_v = (v^n - v^-n)/(v - v^-1) with v = q^e."""
    e = _base(base)
    if n == 0:
        return ZERO
    if n < 0:
        return -qint(-n, e)
    return RatFun.laurent({e * (n - 1 - 2 * j): 1 for j in range(n)})


@lru_cache(maxsize=None)
def qfactorial(n: int, base=Q1) -> RatFun:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    out = ONE
    for j in range(2, n + 1):
        out = out * qint(j, base)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, k: int, base=Q1) -> RatFun:
    if k < 0 or k > n:
        raise ValueError(f"qbinom needs 0 <= k <= n, got n={n}, k={k}")
    e = _base(base)
    # Gaussian polynomial in t = v^2 via prod (1 - t^(n-k+i)) / (1 - t^i)
    g = [1]
    for i in range(1, k + 1):
        s = n - k + i
        g = g + [0] * s
        for j in range(len(g) - 1, s - 1, -1):
            g[j] -= g[j - s]
        for j in range(i, len(g)):
            g[j] += g[j - i]
        while len(g) > 1 and g[-1] == 0:
            g.pop()
    shift = k * (n - k)
    return RatFun.laurent({e * (2 * j - shift): c for j, c in enumerate(g) if c})


@lru_cache(maxsize=None)
def two(a: int) -> RatFun:
    """q^a + q^-a; equals [2a]/[a] whenever [a] is nonzero, and 2 at a = 0."""
    if a == 0:
        return RatFun.const(2)
    return RatFun.laurent({a: 1, -a: 1})


# ---------------------------------------------------------------------------
# named coefficients


def _loop1(m, k):
    return two(m - 2) * qint(m) / qint(2)


def _loopk(m, k):
    return two(m - 2 * k) / two(m) * qbinom(m, k, Q2)


def _bigon(m, k):
    return qint(2 * k) / qint(2)


def _reverse_bigon(m, k):
    return qint(2 * m - 2 * k) * two(m - 2 * k - 2) / (qint(2) * two(m - 2 * k))


def _ih_y(m, k):
    return two(m - 2 * k - 2) / two(m - 2 * k)


def _ih_z(m, k):
    return two(m - 2 * k - 2) / two(m - 2)


def _tau(m, k):
    return two(m - 2 * k) / two(m - 2 * k - 2)


def _gamma(m, k):
    return two(m - 2) / two(m)


def _quad(m, k):
    return two(m - 4) / two(m - 2)


def _qdiff():
    return Q ** 2 - Q ** -2


def _braid_pos(m, k):
    return _qdiff() * Q ** (2 - m) / two(m - 2)


def _braid_neg(m, k):
    return _qdiff() * Q ** (m - 2) / two(m - 2)


def _triangle211(m, k):
    return qint(2 * m) / (two(m - 2) * qint(m))


def _trbysq(m, k):
    return qint(2 * k + 2) * qint(2 * m) / (qint(2) * two(m - 2) * qint(m))


@dataclass(frozen=True)
class CoefficientSpec:
    name: str
    formula: Callable[[int, int], RatFun]
    uses_k: bool
    k_min: int = 0
    k_max_offset: int = 0  # largest k is m + offset
    description: str = ""


COEFFICIENTS: Dict[str, CoefficientSpec] = {
    c.name: c
    for c in [
        CoefficientSpec("loop1", _loop1, False, description="circle labelled 1"),
        CoefficientSpec("loopk", _loopk, True, description="circle labelled k"),
        CoefficientSpec("bigon", _bigon, True, description="bigon removal on label k"),
        CoefficientSpec("reverse_bigon", _reverse_bigon, True,
                        description="bigon through k+1 closed by a 1-strand"),
        CoefficientSpec("ih_y", _ih_y, True, description="IH coefficient of the k-1 rung"),
        CoefficientSpec("ih_z", _ih_z, True, description="IH coefficient of the cup-cap"),
        CoefficientSpec("tau", _tau, True, description="ratio of the two (k+1,2,k+1) triangles"),
        CoefficientSpec("gamma", _gamma, False, description="boundary IH scalar for k+1=m"),
        CoefficientSpec("quad", _quad, False, description="quadrivalent vertex correction"),
        CoefficientSpec("braid_cupcap_pos", _braid_pos, False,
                        description="cup-cap term of the positive crossing"),
        CoefficientSpec("braid_cupcap_neg", _braid_neg, False,
                        description="cup-cap term of the negative crossing"),
        CoefficientSpec("triangle211", _triangle211, False,
                        description="triangle with boundary 1,1,2"),
        CoefficientSpec("trbysq", _trbysq, True, description="triangle next to a square"),
    ]
}


def _check_range(spec: CoefficientSpec, m: int, k: int):
    if m < 1:
        raise ValueError(f"coefficient {spec.name}: m must be >= 1, got {m}")
    if spec.uses_k and not (0 <= k <= m):
        raise ValueError(f"coefficient {spec.name}: k={k} outside 0..{m}")


@lru_cache(maxsize=None)
def named_coefficient(name: str, m: int, k: int = 0) -> RatFun:
    """Value of a named relation coefficient in regularized form."""
    spec = COEFFICIENTS.get(name)
    if spec is None:
        raise ValueError(f"unknown coefficient {name!r}")
    _check_range(spec, m, k)
    return spec.formula(m, k)


def _ratio(a: int, b: int):
    """[a]/[b] or None when [b] = 0."""
    den = qint(b)
    if not den:
        return None
    return qint(a) / den


def raw_coefficient(name: str, m: int, k: int = 0):
    """The unregularized bracket expression, or None where it is 0/0.

    Used to confirm that the two(.) form agrees with the bracket form
    wherever the latter is defined.
    """
    b = qint
    try:
        if name == "loop1":
            r = _ratio(2 * m - 4, m - 2)
            return None if r is None else r * b(m) / b(2)
        if name == "loopk":
            r1 = _ratio(2 * m - 4 * k, m - 2 * k)
            r2 = _ratio(m, 2 * m)
            if r1 is None or r2 is None:
                return None
            return r1 * r2 * qbinom(m, k, Q2)
        if name == "bigon":
            return b(2 * k) / b(2)
        if name == "reverse_bigon":
            r1 = _ratio(2 * m - 4 * k - 4, m - 2 * k - 2)
            r2 = _ratio(m - 2 * k, 2 * m - 4 * k)
            if r1 is None or r2 is None:
                return None
            return b(2 * m - 2 * k) * r1 * r2 / b(2)
        if name == "ih_y":
            r1 = _ratio(2 * m - 4 * k - 4, m - 2 * k - 2)
            r2 = _ratio(m - 2 * k, 2 * m - 4 * k)
            return None if r1 is None or r2 is None else r1 * r2
        if name == "ih_z":
            r1 = _ratio(2 * m - 4 * k - 4, m - 2 * k - 2)
            r2 = _ratio(m - 2, 2 * m - 4)
            return None if r1 is None or r2 is None else r1 * r2
        if name == "tau":
            r1 = _ratio(2 * m - 4 * k, m - 2 * k)
            r2 = _ratio(m - 2 * k - 2, 2 * m - 4 * k - 4)
            return None if r1 is None or r2 is None else r1 * r2
        if name == "gamma":
            r1 = _ratio(2 * m - 4, m - 2)
            r2 = _ratio(m, 2 * m)
            return None if r1 is None or r2 is None else r1 * r2
        if name == "quad":
            r1 = _ratio(2 * m - 8, m - 4)
            r2 = _ratio(m - 2, 2 * m - 4)
            return None if r1 is None or r2 is None else r1 * r2
        if name in ("braid_cupcap_pos", "braid_cupcap_neg"):
            r = _ratio(m - 2, 2 * m - 4)
            if r is None:
                return None
            sign = 2 - m if name == "braid_cupcap_pos" else m - 2
            return r * _qdiff() * Q ** sign
        if name == "triangle211":
            r1 = _ratio(2 * m, m)
            r2 = _ratio(m - 2, 2 * m - 4)
            return None if r1 is None or r2 is None else r1 * r2
        if name == "trbysq":
            r1 = _ratio(2 * m, m)
            r2 = _ratio(m - 2, 2 * m - 4)
            if r1 is None or r2 is None:
                return None
            return b(2 * k + 2) * r1 * r2 / b(2)
    except ZeroDivisionError:
        return None
    raise ValueError(f"unknown coefficient {name!r}")


# ---------------------------------------------------------------------------
# identity report


@dataclass
class IdentityReport:
    entries: List[Tuple[str, dict, bool, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e[2] for e in self.entries)

    def add(self, name, params, lhs, rhs):
        self.entries.append((name, params, lhs == rhs, str(lhs), str(rhs)))


def identity_checks(m_values=range(1, 9), a_values=range(1, 9)) -> IdentityReport:
    """Check the crossing-coefficient identities and the [2a]/[a] rule."""
    rep = IdentityReport()
    for m in m_values:
        quad = named_coefficient("quad", m)
        pos = named_coefficient("braid_cupcap_pos", m)
        neg = named_coefficient("braid_cupcap_neg", m)
        rep.add("neg_braid_pos_equals_qm2_minus_quad", {"m": m}, -pos, Q ** -2 - quad)
        rep.add("braid_neg_equals_q2_minus_quad", {"m": m}, neg, Q ** 2 - quad)
    for a in a_values:
        for s in (a, -a):
            rep.add("double_over_single_equals_two", {"a": s}, qint(2 * s) / qint(s), two(s))
    return rep
