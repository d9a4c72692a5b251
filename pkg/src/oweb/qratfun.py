"""Exact arithmetic in the rational function field Q(q).

Polynomials are tuples of Python ints, lowest degree first, with no
trailing zeros; the zero polynomial is the empty tuple.  A ``RatFun`` is a
reduced fraction of two such polynomials.  Laurent polynomials are just
fractions whose denominator is ``c*q^k``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd
from typing import Dict, Tuple, Union

Poly = Tuple[int, ...]

__all__ = [
    "Poly",
    "RatFun",
    "RatFunError",
    "normalize",
    "eval_at_one",
    "bar",
    "parse_ratfun",
    "format_ratfun",
    "Q",
    "ZERO",
    "ONE",
]


class RatFunError(ValueError):
    """Raised for arithmetic that has no value in Q(q) or at a given point."""


# ---------------------------------------------------------------------------
# dense integer polynomials


def p_trim(a) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def p_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return p_trim(out)


def p_neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_scale(a: Poly, c: int) -> Poly:
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return p_scale(b, a[0])
    if len(b) == 1:
        return p_scale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def p_shift(a: Poly, k: int) -> Poly:
    """Multiply by q^k (k >= 0)."""
    if not a or k == 0:
        return a
    return (0,) * k + a


def p_val(a: Poly) -> int:
    """Largest k with q^k dividing a (a nonzero)."""
    k = 0
    while a[k] == 0:
        k += 1
    return k


def p_content(a: Poly) -> int:
    g = 0
    for c in a:
        if c:
            g = igcd(g, c)
            if g == 1:
                break
    return g


def p_divexact(a: Poly, b: Poly) -> Poly:
    """Quotient a/b in Z[q]; raises if b does not divide a exactly."""
    if not b:
        raise RatFunError("division by zero polynomial")
    if not a:
        return ()
    if len(b) == 1:
        c = b[0]
        out = []
        for x in a:
            qv, r = divmod(x, c)
            if r:
                raise RatFunError("inexact polynomial division")
            out.append(qv)
        return tuple(out)
    db = len(b) - 1
    lead = b[-1]
    rem = list(a)
    n = len(a) - 1 - db
    if n < 0:
        raise RatFunError("inexact polynomial division")
    quo = [0] * (n + 1)
    for i in range(n, -1, -1):
        c, r = divmod(rem[i + db], lead)
        if r:
            raise RatFunError("inexact polynomial division")
        quo[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    if any(rem):
        raise RatFunError("inexact polynomial division")
    return tuple(quo)


def _prem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder of a by b."""
    db = len(b) - 1
    lead = b[-1]
    r = list(a)
    if lead in (1, -1):
        # monic divisor: plain remainder, touching only the affected slice
        for top in range(len(r) - 1, db - 1, -1):
            c = r[top] * lead
            if c:
                shift = top - db
                for j, y in enumerate(b):
                    r[shift + j] -= c * y
        del r[db:]
        while r and r[-1] == 0:
            r.pop()
        return tuple(r)
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        c = r[-1]
        r = [x * lead for x in r]
        for j, y in enumerate(b):
            r[shift + j] -= c * y
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def _primitive(a: Poly) -> Poly:
    c = p_content(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return a
    return tuple(x // c for x in a)


_GCD_PRIME = (1 << 61) - 1


def _gcd_degree_mod_p(a: Poly, b: Poly, p: int = _GCD_PRIME) -> int:
    """Degree of gcd(a, b) over GF(p); both leading coefficients must be units mod p."""
    a = [x % p for x in a]
    b = [x % p for x in b]
    while b:
        inv = pow(b[-1], p - 2, p)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            c = a[-1] * inv % p
            shift = len(a) - 1 - db
            for j, y in enumerate(b):
                a[shift + j] = (a[shift + j] - c * y) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


@lru_cache(maxsize=1 << 16)
def p_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor in Z[q], normalized to positive leading coefficient."""
    if not a:
        return _primitive(b) if b else ()
    if not b:
        return _primitive(a)
    v = min(p_val(a), p_val(b))
    c = igcd(p_content(a), p_content(b))
    a = a[p_val(a):]
    b = b[p_val(b):]
    if len(a) == 1 or len(b) == 1:
        return p_shift((c,), v)
    a = _primitive(a)
    b = _primitive(b)
    # coprime modulo a prime that keeps both degrees means coprime over Z
    if a[-1] % _GCD_PRIME and b[-1] % _GCD_PRIME and _gcd_degree_mod_p(a, b) == 0:
        return p_shift((c,), v)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r else ())
        if b and len(b) == 1:
            return p_shift((c,), v)
    g = _primitive(a)
    return p_shift(p_scale(g, c), v)


def p_eval(a: Poly, x) -> Union[int, Fraction]:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# rational functions


def _canon(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if not den:
        raise RatFunError("division by zero polynomial")
    if not num:
        return (), (1,)
    g = p_gcd(num, den)
    if g != (1,):
        num = p_divexact(num, g)
        den = p_divexact(den, g)
    if den[-1] < 0:
        num = p_neg(num)
        den = p_neg(den)
    return num, den


class RatFun:
    """Immutable element of Q(q) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly = (), den: Poly = (1,), _canonical: bool = False):
        if not _canonical:
            num, den = _canon(p_trim(num), p_trim(den))
        self.num = num
        self.den = den
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, c) -> "RatFun":
        if isinstance(c, RatFun):
            return c
        if isinstance(c, int):
            return cls((c,) if c else (), (1,), True)
        if isinstance(c, Fraction):
            return cls((c.numerator,), (c.denominator,), True) if c else ZERO
        raise TypeError(f"cannot convert {type(c).__name__} to RatFun")

    @classmethod
    def qpow(cls, e: int, c: int = 1) -> "RatFun":
        """c*q^e."""
        if c == 0:
            return ZERO
        if e >= 0:
            return cls(p_shift((c,), e), (1,), True)
        return cls((c,), p_shift((1,), -e), True)

    @classmethod
    def laurent(cls, terms: Dict[int, int]) -> "RatFun":
        """Build sum c*q^e from an exponent -> integer coefficient map."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo = min(terms)
        hi = max(terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = c
        num = tuple(coeffs)
        if lo >= 0:
            return cls(p_shift(num, lo), (1,), True)
        return cls(num, p_shift((1,), -lo))

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,)

    def is_laurent(self) -> bool:
        """True when the denominator is c*q^k."""
        return sum(1 for c in self.den if c) == 1

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFun.const(other)
        return NotImplemented

    def __add__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RatFun(p_add(self.num, other.num), self.den)
        g = p_gcd(self.den, other.den)
        if g == (1,):
            num = p_add(p_mul(self.num, other.den), p_mul(other.num, self.den))
            return RatFun(num, p_mul(self.den, other.den))
        d1 = p_divexact(self.den, g)
        d2 = p_divexact(other.den, g)
        num = p_add(p_mul(self.num, d2), p_mul(other.num, d1))
        return RatFun(num, p_mul(d1, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFun(p_neg(self.num), self.den, True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if self.den == (1,) and other.den == (1,):
            return RatFun(p_mul(self.num, other.num), (1,), True)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g1 = p_gcd(n1, d2)
        if g1 != (1,):
            n1 = p_divexact(n1, g1)
            d2 = p_divexact(d2, g1)
        g2 = p_gcd(n2, d1)
        if g2 != (1,):
            n2 = p_divexact(n2, g2)
            d1 = p_divexact(d1, g2)
        num = p_mul(n1, n2)
        den = p_mul(d1, d2)
        if den[-1] < 0:
            num, den = p_neg(num), p_neg(den)
        return RatFun(num, den, True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if not self.num:
            raise RatFunError("division by zero polynomial")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = p_neg(num), p_neg(den)
        return RatFun(num, den, True)

    def __truediv__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = ONE
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == RatFun.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # specialization -------------------------------------------------------
    def is_regular_at_one(self) -> bool:
        return p_eval(self.den, 1) != 0

    def eval_at_one(self) -> Fraction:
        return self.evaluate(1)

    def evaluate(self, x) -> Fraction:
        """Value at a rational point x; raises at a pole."""
        d = p_eval(self.den, Fraction(x))
        if d == 0:
            if x == 1:
                raise RatFunError("not regular at q=1")
            raise RatFunError(f"not regular at q={x}")
        return Fraction(p_eval(self.num, Fraction(x))) / d

    def bar(self) -> "RatFun":
        """Substitute q -> q^-1."""
        if not self.num:
            return self
        dn = len(self.num) - 1
        dd = len(self.den) - 1
        num = tuple(reversed(self.num))
        den = tuple(reversed(self.den))
        if dd >= dn:
            num = p_shift(num, dd - dn)
        else:
            den = p_shift(den, dn - dd)
        return RatFun(num, den)

    # text -----------------------------------------------------------------
    def __str__(self) -> str:
        return format_ratfun(self)

    def __repr__(self) -> str:
        return f"RatFun({format_ratfun(self)!r})"


ZERO = RatFun((), (1,), True)
ONE = RatFun((1,), (1,), True)
Q = RatFun((0, 1), (1,), True)


def normalize(num, den) -> RatFun:
    """Canonical representative of num/den for integer coefficient sequences."""
    return RatFun(tuple(num), tuple(den))


def eval_at_one(f: RatFun) -> Fraction:
    return f.eval_at_one()


def bar(f: RatFun) -> RatFun:
    return f.bar()


# ---------------------------------------------------------------------------
# printing


def _term(c: Fraction, e: int) -> str:
    mag = abs(c)
    cs = str(mag)
    if e == 0:
        body = cs
    else:
        qs = "q" if e == 1 else f"q^{e}"
        body = qs if mag == 1 else f"{cs}*{qs}"
    return body


def _format_terms(terms) -> str:
    """terms: list of (coefficient, exponent) sorted by descending exponent."""
    if not terms:
        return "0"
    parts = []
    for i, (c, e) in enumerate(terms):
        body = _term(c, e)
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def _poly_terms(p: Poly, shift: int = 0, scale=1):
    return [(Fraction(c) / scale if scale != 1 else Fraction(c), i + shift)
            for i, c in reversed(list(enumerate(p))) if c]


def format_ratfun(f: RatFun) -> str:
    if not f.num:
        return "0"
    nz = [i for i, c in enumerate(f.den) if c]
    if len(nz) == 1:
        k = nz[0]
        c = f.den[k]
        return _format_terms(_poly_terms(f.num, -k, c))
    return f"({_format_terms(_poly_terms(f.num))})/({_format_terms(_poly_terms(f.den))})"


# ---------------------------------------------------------------------------
# parsing


class _ScalarParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise RatFunError(f"{msg} at position {self.pos} in {self.text!r}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def parse(self) -> RatFun:
        v = self.expr()
        if self.peek():
            self.error("unexpected character")
        return v

    def expr(self) -> RatFun:
        v = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self) -> RatFun:
        v = self.unary()
        while self.peek() in ("*", "/") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.unary()
            v = v * rhs if op == "*" else v / rhs
        return v

    def unary(self) -> RatFun:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.unary()
        if ch == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self) -> RatFun:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            sign = 1
            if self.peek() in ("-", "+") and self.peek():
                sign = -1 if self.text[self.pos] == "-" else 1
                self.pos += 1
            return base ** (sign * self.integer())
        return base

    def atom(self) -> RatFun:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            v = self.expr()
            self.take(")")
            return v
        if ch == "q":
            self.pos += 1
            return Q
        if ch.isdigit():
            return RatFun.const(self.integer())
        self.error("expected scalar atom")


def parse_ratfun(text: str) -> RatFun:
    """Parse the scalar syntax: integers, q, ^, + - * / and parentheses."""
    return _ScalarParser(text).parse()
