"""The quantum exterior algebra on m generators as a rewriting system.

Generators are stored by position 1..m.  With n = m // 2 the position p
stands for a_p when p <= n, for u when m is odd and p = n + 1, and for
b_{m+1-p} otherwise.  A word is in normal form when its positions are
strictly increasing; every other adjacent pair is a redex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .qratfun import ONE, Q, RatFun

__all__ = [
    "Word",
    "Monomial",
    "gen_kind",
    "gen_label",
    "a_pos",
    "b_pos",
    "u_pos",
    "rewrite_step",
    "nf_word",
    "nf_word_random",
    "ExtElement",
    "basis",
    "multiply",
    "ambiguity_check",
    "AmbiguityReport",
    "presentation_relations",
]

Word = Tuple[int, ...]
Monomial = Tuple[int, ...]
Terms = Dict[Monomial, RatFun]

MINUS_Q2 = -(Q ** 2)
QDIFF = Q ** 2 - Q ** -2


def gen_kind(m: int, p: int) -> Tuple[str, int]:
    """('a', i), ('u', 0) or ('b', i) for position p."""
    if not 1 <= p <= m:
        raise ValueError(f"generator index {p} out of range 1..{m}")
    n = m // 2
    if p <= n:
        return ("a", p)
    if m % 2 == 1 and p == n + 1:
        return ("u", 0)
    return ("b", m + 1 - p)


def gen_label(m: int, p: int) -> str:
    kind, i = gen_kind(m, p)
    return "u" if kind == "u" else f"{kind}{i}"


def a_pos(m: int, i: int) -> int:
    return i


def b_pos(m: int, i: int) -> int:
    return m + 1 - i


def u_pos(m: int) -> int:
    if m % 2 == 0:
        raise ValueError("u exists only for odd m")
    return m // 2 + 1


@lru_cache(maxsize=None)
def _ba_rule(m: int, i: int) -> Tuple[Tuple[RatFun, Word], ...]:
    out = [(-ONE, (a_pos(m, i), b_pos(m, i)))]
    for k in range(1, i):
        c = -(MINUS_Q2 ** (-k + 1)) * QDIFF
        out.append((c, (a_pos(m, i - k), b_pos(m, i - k))))
    return tuple(out)


@lru_cache(maxsize=None)
def _uu_rule(m: int) -> Tuple[Tuple[RatFun, Word], ...]:
    n = m // 2
    out = []
    for k in range(1, n + 1):
        c = Q * MINUS_Q2 ** (-k) * QDIFF
        out.append((c, (a_pos(m, n + 1 - k), b_pos(m, n + 1 - k))))
    return tuple(out)


@lru_cache(maxsize=None)
def pair_rule(m: int, x: int, y: int) -> Optional[Tuple[Tuple[RatFun, Word], ...]]:
    """Replacement for the adjacent pair (x, y), or None if it is already ordered."""
    if x < y:
        return None
    kx, ix = gen_kind(m, x)
    if x == y:
        return _uu_rule(m) if kx == "u" else ()
    ky, iy = gen_kind(m, y)
    if kx == "b" and ky == "a" and ix == iy:
        return _ba_rule(m, ix)
    return ((MINUS_Q2, (y, x)),)


def redexes(m: int, word: Word) -> List[int]:
    return [i for i in range(len(word) - 1) if word[i] >= word[i + 1]]


def rewrite_step(m: int, word: Word, i: int) -> List[Tuple[RatFun, Word]]:
    """Apply the rule at the pair (word[i], word[i+1])."""
    rule = pair_rule(m, word[i], word[i + 1])
    if rule is None:
        raise ValueError(f"position {i} of {word} is not a redex")
    head, tail = word[:i], word[i + 2:]
    return [(c, head + w + tail) for c, w in rule]


def _accumulate(acc: Terms, mono, c: RatFun):
    v = acc.get(mono)
    v = c if v is None else v + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


@lru_cache(maxsize=None)
def _nf_cached(m: int, word: Word) -> Tuple[Tuple[Monomial, RatFun], ...]:
    for i in range(len(word) - 1):
        if word[i] >= word[i + 1]:
            acc: Terms = {}
            for c, w in rewrite_step(m, word, i):
                for mono, d in _nf_cached(m, w):
                    _accumulate(acc, mono, c * d)
            return tuple(sorted(acc.items()))
    return ((word, ONE),)


def nf_word(m: int, word: Sequence[int]) -> "ExtElement":
    """Normal form of the product of the generators at the given positions."""
    word = tuple(word)
    for p in word:
        gen_kind(m, p)
    return ExtElement(m, dict(_nf_cached(m, word)))


def nf_terms(m: int, word: Word) -> Tuple[Tuple[Monomial, RatFun], ...]:
    """Normal form as a sorted tuple of (monomial, coefficient); no validation."""
    return _nf_cached(m, word)


def nf_word_random(m: int, word: Sequence[int], rng: random.Random) -> "ExtElement":
    """Normal form reached by rewriting a randomly chosen redex at every step."""
    pending: List[Tuple[RatFun, Word]] = [(ONE, tuple(word))]
    acc: Terms = {}
    while pending:
        c, w = pending.pop()
        rs = redexes(m, w)
        if not rs:
            _accumulate(acc, w, c)
            continue
        i = rng.choice(rs)
        for d, w2 in rewrite_step(m, w, i):
            pending.append((c * d, w2))
    return ExtElement(m, acc)


@dataclass(frozen=True)
class ExtElement:
    """Linear combination of normal monomials v_S with nonzero coefficients."""

    m: int
    terms: Dict[Monomial, RatFun] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(k): v for k, v in self.terms.items() if v}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def monomial(cls, m: int, s: Iterable[int], c=ONE) -> "ExtElement":
        return cls(m, {tuple(s): RatFun.const(c)})

    @classmethod
    def one(cls, m: int) -> "ExtElement":
        return cls(m, {(): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {len(k) for k in self.terms}

    def _same(self, other: "ExtElement"):
        if self.m != other.m:
            raise ValueError(f"mixed exterior algebras m={self.m} and m={other.m}")

    def __add__(self, other: "ExtElement") -> "ExtElement":
        self._same(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(acc, k, v)
        return ExtElement(self.m, acc)

    def __neg__(self):
        return ExtElement(self.m, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExtElement":
        c = RatFun.const(c)
        return ExtElement(self.m, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ExtElement):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, tuple(sorted(self.terms.items()))))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda s: (len(s), s)):
            c = self.terms[k]
            mono = "v{" + ",".join(map(str, k)) + "}"
            parts.append(mono if c.is_one() else f"({c})*{mono}")
        return " + ".join(parts)


def multiply(x: ExtElement, y: ExtElement) -> ExtElement:
    x._same(y)
    acc: Terms = {}
    for s, c in x.terms.items():
        for t, d in y.terms.items():
            cd = c * d
            for mono, e in _nf_cached(x.m, s + t):
                _accumulate(acc, mono, cd * e)
    return ExtElement(x.m, acc)


@lru_cache(maxsize=None)
def basis(m: int, k: int) -> Tuple[Monomial, ...]:
    """k-subsets of 1..m in lexicographic order; empty when k > m."""
    if k < 0:
        raise ValueError("negative degree")
    if k > m:
        return ()
    return tuple(combinations(range(1, m + 1), k))


@lru_cache(maxsize=None)
def basis_index(m: int, k: int) -> Dict[Monomial, int]:
    return {s: i for i, s in enumerate(basis(m, k))}


# ---------------------------------------------------------------------------
# diamond-lemma overlap check


@dataclass
class AmbiguityReport:
    m: int
    entries: List[Tuple[Word, str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e[2] for e in self.entries)

    @property
    def classes(self) -> Dict[str, Tuple[int, int]]:
        """class name -> (number of words, number resolved)."""
        out: Dict[str, List[int]] = {}
        for _, cls, ok in self.entries:
            rec = out.setdefault(cls, [0, 0])
            rec[0] += 1
            rec[1] += int(ok)
        return {k: (v[0], v[1]) for k, v in out.items()}


def _class_name(m: int, word: Word) -> str:
    return "".join(gen_kind(m, p)[0] for p in word)


def _resolve(m: int, word: Word, i: int) -> ExtElement:
    acc: Terms = {}
    for c, w in rewrite_step(m, word, i):
        for mono, d in _nf_cached(m, w):
            _accumulate(acc, mono, c * d)
    return ExtElement(m, acc)


def ambiguity_check(m: int) -> AmbiguityReport:
    """Resolve every overlap word x y z where both xy and yz are redexes."""
    if m < 1:
        raise ValueError("m must be >= 1")
    rep = AmbiguityReport(m)
    for word in product(range(1, m + 1), repeat=3):
        if word[0] >= word[1] and word[1] >= word[2]:
            left = _resolve(m, word, 0)
            right = _resolve(m, word, 1)
            rep.entries.append((word, _class_name(m, word), left == right))
    return rep


# ---------------------------------------------------------------------------
# the longer relation presentation


def _gen(m: int, kind: str, i: int = 0) -> ExtElement:
    p = {"a": a_pos(m, i), "b": b_pos(m, i)}.get(kind) if kind != "u" else u_pos(m)
    return ExtElement.monomial(m, (p,))


def presentation_relations(m: int) -> List[Tuple[str, ExtElement]]:
    """The relations of the longer presentation, each evaluated to normal form."""
    n = m // 2
    a = lambda i: _gen(m, "a", i)
    b = lambda i: _gen(m, "b", i)
    out: List[Tuple[str, ExtElement]] = []
    for i in range(1, n + 1):
        out.append((f"a{i}^2", a(i) * a(i)))
        out.append((f"b{i}^2", b(i) * b(i)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.append((f"a{j}a{i}", a(j) * a(i) + (Q ** 2) * (a(i) * a(j))))
            out.append((f"b{i}b{j}", b(i) * b(j) + (Q ** 2) * (b(j) * b(i))))
        for j in range(1, n + 1):
            if i != j:
                out.append((f"b{j}a{i}", b(j) * a(i) + (Q ** 2) * (a(i) * b(j))))
    if m % 2 == 1:
        u = _gen(m, "u")
        for i in range(1, n + 1):
            out.append((f"ua{i}", u * a(i) + (Q ** 2) * (a(i) * u)))
            out.append((f"b{i}u", b(i) * u + (Q ** 2) * (u * b(i))))
    for i in range(1, n):
        rel = (b(i + 1) * a(i + 1) + a(i + 1) * b(i + 1)
               + (Q ** -2) * (b(i) * a(i)) + (Q ** 2) * (a(i) * b(i)))
        out.append((f"b{i+1}a{i+1}_chain", rel))
    if m % 2 == 1:
        u = _gen(m, "u")
        uu = u * u
        if n >= 1:
            out.append(("bnan_odd", b(n) * a(n) + (Q ** 4) * (a(n) * b(n)) + (Q ** 3) * uu))
        rel = (MINUS_Q2 ** n / (Q + Q ** -1)) * uu
        for i in range(1, n + 1):
            rel = rel + (MINUS_Q2 ** (i - 1)) * (a(i) * b(i)) - (MINUS_Q2 ** (2 * n - i)) * (b(i) * a(i))
        out.append(("quadratic_form_odd", rel))
    else:
        rel = ExtElement(m, {})
        for i in range(1, n + 1):
            rel = rel + (MINUS_Q2 ** (i - 1)) * (a(i) * b(i)) + (MINUS_Q2 ** (2 * n - i - 1)) * (b(i) * a(i))
        out.append(("quadratic_form_even", rel))
    return out
