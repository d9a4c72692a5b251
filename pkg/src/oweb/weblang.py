"""A small typed language for web morphisms and its matrix evaluator.

Grammar (``*`` binds tighter than ``;``, which binds tighter than ``+``/``-``)::

    expr   := comp (('+' | '-') comp)*
    comp   := tensor (';' tensor)*          first ; then
    tensor := factor ('*' factor)*
    factor := '[' ratfun ']' factor | atom
    atom   := id(k) | m(i,j) | s(i,j) | cup(k) | cap(k) | x+ | x- | '(' expr ')'

Words are tuples of labels with 0 erased; a label above m is the zero
object, so any expression routed through it evaluates to a zero matrix.
"""

from __future__ import annotations

import ast
import re
import time
from functools import lru_cache
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .intertwiners import Intertwiners, intertwiners
from .linmap import LinearMap, canon_word, word_dim
from .qcombinat import named_coefficient
from .qratfun import ONE, Q, RatFun, RatFunError, format_ratfun, parse_ratfun
from .qrep import RepContext, build_context, max_dim_from_env

__all__ = [
    "Id", "Merge", "Split", "Cup", "Cap", "CrossPos", "CrossNeg",
    "Tensor", "Compose", "Scale", "Sum", "WebExpr",
    "WebSyntaxError", "WebTypeError",
    "parse", "print_expr", "canonical", "typecheck", "evaluate",
    "expand_crossings", "max_word_dim", "structurally_zero",
    "Relation", "RELATIONS", "render", "relation_envs", "relation_instances", "run_instance",
    "relation_suite", "SuiteRecord",
]

Word = Tuple[int, ...]


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Id:
    k: int


@dataclass(frozen=True)
class Merge:
    i: int
    j: int


@dataclass(frozen=True)
class Split:
    i: int
    j: int


@dataclass(frozen=True)
class Cup:
    k: int


@dataclass(frozen=True)
class Cap:
    k: int


@dataclass(frozen=True)
class CrossPos:
    pass


@dataclass(frozen=True)
class CrossNeg:
    pass


@dataclass(frozen=True)
class Tensor:
    left: "WebExpr"
    right: "WebExpr"


@dataclass(frozen=True)
class Compose:
    first: "WebExpr"
    then: "WebExpr"


@dataclass(frozen=True)
class Scale:
    coef: RatFun
    expr: "WebExpr"


@dataclass(frozen=True)
class Sum:
    terms: Tuple["WebExpr", ...]


WebExpr = Union[Id, Merge, Split, Cup, Cap, CrossPos, CrossNeg, Tensor, Compose, Scale, Sum]
ATOMS = (Id, Merge, Split, Cup, Cap, CrossPos, CrossNeg)


class WebSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, text: str):
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<here>{text[pos:]}")
        self.pos = pos


class WebTypeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(x[+-])|(id|cup|cap|m|s)\b|(\d+)|([()\[\],;*+-]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: Optional[int] = None):
        raise WebSyntaxError(msg, self.pos if pos is None else pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> Optional[str]:
        self.skip()
        if self.pos >= len(self.text):
            return None
        mt = _TOKEN.match(self.text, self.pos)
        if not mt:
            return self.text[self.pos]
        return next(g for g in mt.groups() if g is not None)

    def take(self, tok: Optional[str] = None) -> str:
        self.skip()
        mt = _TOKEN.match(self.text, self.pos)
        if not mt:
            self.error("unexpected character")
        got = next(g for g in mt.groups() if g is not None)
        if tok is not None and got != tok:
            self.error(f"expected {tok!r}, found {got!r}")
        self.pos = mt.end()
        return got

    def number(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            self.pos -= len(tok)
            self.error("expected a nonnegative integer label")
        return int(tok)

    def parse(self) -> WebExpr:
        e = self.expr()
        if self.peek() is not None:
            self.error("trailing input")
        return e

    def expr(self) -> WebExpr:
        terms = [self.comp()]
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.comp()
            terms.append(t if op == "+" else Scale(-ONE, t))
        return _flat_sum(terms) if len(terms) > 1 else terms[0]

    def comp(self) -> WebExpr:
        e = self.tensor()
        while self.peek() == ";":
            self.take()
            e = Compose(e, self.tensor())
        return e

    def tensor(self) -> WebExpr:
        e = self.factor()
        while self.peek() == "*":
            self.take()
            e = Tensor(e, self.factor())
        return e

    def factor(self) -> WebExpr:
        self.skip()
        if self.peek() == "[":
            start = self.pos
            end = self.text.find("]", start)
            if end < 0:
                self.error("unclosed '['")
            try:
                c = parse_ratfun(self.text[start + 1:end])
            except (RatFunError, ZeroDivisionError) as exc:
                self.error(f"bad scalar ({exc})", start + 1)
            self.pos = end + 1
            return Scale(c, self.factor())
        return self.atom()

    def atom(self) -> WebExpr:
        self.skip()
        start = self.pos
        tok = self.take()
        if tok == "x+":
            return CrossPos()
        if tok == "x-":
            return CrossNeg()
        if tok == "(":
            e = self.expr()
            self.take(")")
            return e
        if tok in ("id", "cup", "cap"):
            self.take("(")
            k = self.number()
            self.take(")")
            return {"id": Id, "cup": Cup, "cap": Cap}[tok](k)
        if tok in ("m", "s"):
            self.take("(")
            i = self.number()
            self.take(",")
            j = self.number()
            self.take(")")
            return Merge(i, j) if tok == "m" else Split(i, j)
        self.error(f"unexpected {tok!r}", start)


def parse(text: str) -> WebExpr:
    """Parse web-expression text into an AST."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# canonical form and printing


def _flat_sum(terms: Iterable[WebExpr]) -> Sum:
    out: List[WebExpr] = []
    for t in terms:
        if isinstance(t, Sum):
            out.extend(t.terms)
        else:
            out.append(t)
    return Sum(tuple(out))


def canonical(e: WebExpr) -> WebExpr:
    """Flatten nested sums, merge nested scalars, drop unit scalars."""
    if isinstance(e, ATOMS):
        return e
    if isinstance(e, Tensor):
        return Tensor(canonical(e.left), canonical(e.right))
    if isinstance(e, Compose):
        return Compose(canonical(e.first), canonical(e.then))
    if isinstance(e, Scale):
        inner = canonical(e.expr)
        c = e.coef
        if isinstance(inner, Scale):
            c, inner = c * inner.coef, inner.expr
        return inner if c == ONE else Scale(c, inner)
    if isinstance(e, Sum):
        terms = _flat_sum(canonical(t) for t in e.terms).terms
        if len(terms) == 1:
            return terms[0]
        return Sum(terms)
    raise TypeError(f"not a web expression: {e!r}")


def _atom_text(e: WebExpr) -> str:
    if isinstance(e, Id):
        return f"id({e.k})"
    if isinstance(e, Merge):
        return f"m({e.i},{e.j})"
    if isinstance(e, Split):
        return f"s({e.i},{e.j})"
    if isinstance(e, Cup):
        return f"cup({e.k})"
    if isinstance(e, Cap):
        return f"cap({e.k})"
    return "x+" if isinstance(e, CrossPos) else "x-"


def _p(e: WebExpr, wrap: tuple) -> str:
    s = _print(e)
    return f"({s})" if isinstance(e, wrap) else s


def _print(e: WebExpr) -> str:
    if isinstance(e, ATOMS):
        return _atom_text(e)
    if isinstance(e, Scale):
        return f"[{format_ratfun(e.coef)}]" + _p(e.expr, (Tensor, Compose, Sum))
    if isinstance(e, Tensor):
        return _p(e.left, (Compose, Sum)) + "*" + _p(e.right, (Tensor, Compose, Sum))
    if isinstance(e, Compose):
        return _p(e.first, (Sum,)) + ";" + _p(e.then, (Compose, Sum))
    if isinstance(e, Sum):
        return " + ".join(_p(t, (Sum,)) for t in e.terms)
    raise TypeError(f"not a web expression: {e!r}")


def print_expr(e: WebExpr) -> str:
    """Canonical text; parse(print_expr(e)) == canonical(e)."""
    return _print(canonical(e))


# ---------------------------------------------------------------------------
# typing


def _atom_type(e: WebExpr) -> Tuple[Word, Word]:
    if isinstance(e, Id):
        w = canon_word((e.k,))
        return w, w
    if isinstance(e, Merge):
        return canon_word((e.i, e.j)), canon_word((e.i + e.j,))
    if isinstance(e, Split):
        return canon_word((e.i + e.j,)), canon_word((e.i, e.j))
    if isinstance(e, Cup):
        return (), canon_word((e.k, e.k))
    if isinstance(e, Cap):
        return canon_word((e.k, e.k)), ()
    return (1, 1), (1, 1)


def _internal_words(e: WebExpr) -> List[Word]:
    """Words the matrix construction of an atom passes through."""
    if isinstance(e, Split) and e.i and e.j:
        return [canon_word((e.i, e.j, e.j, e.i, e.i + e.j))]
    if isinstance(e, Cup) and e.k > 1:
        return [canon_word((e.k - 1, 1, 1, e.k - 1))]
    if isinstance(e, (CrossPos, CrossNeg)):
        return [(1, 1, 1, 1, 2)]
    return []


def _words(e: WebExpr, seen: List[Word]) -> Tuple[Word, Word]:
    if isinstance(e, ATOMS):
        s, t = _atom_type(e)
        seen.extend(_internal_words(e))
    elif isinstance(e, Tensor):
        s1, t1 = _words(e.left, seen)
        s2, t2 = _words(e.right, seen)
        s, t = s1 + s2, t1 + t2
    elif isinstance(e, Compose):
        s, mid = _words(e.first, seen)
        mid2, t = _words(e.then, seen)
        if mid != mid2:
            raise WebTypeError(
                f"composition mismatch in {print_expr(e)}: {print_expr(e.first)} ends at "
                f"{list(mid)} but {print_expr(e.then)} starts at {list(mid2)}")
    elif isinstance(e, Scale):
        s, t = _words(e.expr, seen)
    elif isinstance(e, Sum):
        types = [_words(x, seen) for x in e.terms]
        s, t = types[0]
        for x, ty in zip(e.terms, types):
            if ty != (s, t):
                raise WebTypeError(
                    f"sum mismatch in {print_expr(e)}: {print_expr(x)} has type "
                    f"{list(ty[0])}->{list(ty[1])}, expected {list(s)}->{list(t)}")
    else:
        raise TypeError(f"not a web expression: {e!r}")
    seen.append(s)
    seen.append(t)
    return s, t


def typecheck(e: WebExpr) -> Tuple[Word, Word]:
    """(source word, target word) of a well-typed expression."""
    return _words(e, [])


def max_word_dim(m: int, e: WebExpr) -> int:
    """Largest dimension of any intermediate word; a proxy for cost."""
    seen: List[Word] = []
    _words(e, seen)
    return max([1] + [word_dim(m, w) for w in seen])


# ---------------------------------------------------------------------------
# evaluation


def _eval(itw: Intertwiners, e: WebExpr, memo: Dict[WebExpr, LinearMap]) -> LinearMap:
    hit = memo.get(e)
    if hit is not None:
        return hit
    m = itw.m
    if isinstance(e, Id):
        out = itw.id(e.k)
    elif isinstance(e, Merge):
        out = itw.mul(e.i, e.j)
    elif isinstance(e, Split):
        out = itw.split(e.i, e.j)
    elif isinstance(e, Cup):
        out = itw.cup(e.k)
    elif isinstance(e, Cap):
        out = itw.cap(e.k)
    elif isinstance(e, CrossPos):
        out = itw.braiding(1)
    elif isinstance(e, CrossNeg):
        out = itw.braiding(-1)
    elif isinstance(e, Tensor):
        out = _eval(itw, e.left, memo).tensor(_eval(itw, e.right, memo))
    elif isinstance(e, Compose):
        out = _eval(itw, e.then, memo) @ _eval(itw, e.first, memo)
    elif isinstance(e, Scale):
        out = _eval(itw, e.expr, memo).scale(e.coef)
    elif isinstance(e, Sum):
        out = _eval(itw, e.terms[0], memo)
        for t in e.terms[1:]:
            out = out + _eval(itw, t, memo)
    else:
        raise TypeError(f"not a web expression: {e!r}")
    if out.m != m:
        raise ValueError("mixed m")
    memo[e] = out
    return out


def evaluate(ctx: Union[RepContext, int], e: Union[WebExpr, str]) -> LinearMap:
    """The matrix of a web expression under the representation functor."""
    if isinstance(e, str):
        e = parse(e)
    typecheck(e)
    return _eval(intertwiners(ctx), e, {})


def expand_crossings(e: WebExpr, m: int) -> WebExpr:
    """Replace each crossing atom by its linear combination of webs."""
    if isinstance(e, (CrossPos, CrossNeg)):
        pos = isinstance(e, CrossPos)
        ms = Compose(Merge(1, 1), Split(1, 1))
        cc = Compose(Cap(1), Cup(1))
        ident = Tensor(Id(1), Id(1))
        if pos:
            c = named_coefficient("braid_cupcap_pos", m)
            return Sum((Scale(Q ** 2, ident), Scale(-ONE, ms), Scale(-c, cc)))
        c = named_coefficient("braid_cupcap_neg", m)
        return Sum((Scale(Q ** -2, ident), Scale(-ONE, ms), Scale(c, cc)))
    if isinstance(e, ATOMS):
        return e
    if isinstance(e, Tensor):
        return Tensor(expand_crossings(e.left, m), expand_crossings(e.right, m))
    if isinstance(e, Compose):
        return Compose(expand_crossings(e.first, m), expand_crossings(e.then, m))
    if isinstance(e, Scale):
        return Scale(e.coef, expand_crossings(e.expr, m))
    return Sum(tuple(expand_crossings(t, m) for t in e.terms))


# ---------------------------------------------------------------------------
# relation templates
#
# ``{expr}`` is an integer expression in the parameters (and m); ``$name(args)``
# inside a scalar is a named coefficient evaluated at (m, args).

_INT_OPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
            ast.Mult: lambda a, b: a * b, ast.FloorDiv: lambda a, b: a // b}


def _int_eval(text: str, env: Dict[str, int]) -> int:
    def go(node):
        if isinstance(node, ast.Expression):
            return go(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id in env:
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _INT_OPS:
            return _INT_OPS[type(node.op)](go(node.left), go(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -go(node.operand)
        raise ValueError(f"bad parameter expression {text!r}")
    return go(_parse_int_expr(text))


@lru_cache(maxsize=None)
def _parse_int_expr(text: str) -> ast.Expression:
    return ast.parse(text, mode="eval")


_BRACE = re.compile(r"\{([^{}]+)\}")
_COEF = re.compile(r"\$(\w+)(?:\(([^()]*)\))?")


def render(template: str, env: Dict[str, int], coefficients: bool = True) -> str:
    """Instantiate a relation template at concrete parameters.

    With ``coefficients=False`` every named coefficient becomes 1, which is
    enough to type and size an instance without computing its scalars.
    """
    m = env["m"]

    def coef(mt):
        if not coefficients:
            return "(1)"
        args = mt.group(2)
        k = _int_eval(args, env) if args else 0
        return f"({format_ratfun(named_coefficient(mt.group(1), m, k))})"

    text = _BRACE.sub(lambda mt: str(_int_eval(mt.group(1), env)), template)
    return _COEF.sub(coef, text)


@dataclass(frozen=True)
class Relation:
    """An equation between two web templates over a parameter range.

    ``params`` lists (name, low, high) with bounds as expressions in m and
    earlier parameters; ``webs_variant`` marks relations that are also run
    with every crossing rewritten as its web combination.
    """

    name: str
    lhs: str
    rhs: str
    params: Tuple[Tuple[str, str, str], ...] = ()
    m_min: int = 1
    webs_variant: bool = False


# building blocks shared by several templates (k is the parameter)
_L1 = "(cup(1)*id({k}));(id(1)*m(1,{k}))"                    # k -> (1, k+1)
_R1 = "(s(1,{k})*id({k}));(id(1)*cap({k}))"                  # (k+1, k) -> 1
_H_UP = f"(({_L1})*id({{k}}));(id(1)*({_R1}))"               # (k,k) -> (1,1) via k+1
_H_DOWN = ("(s(1,{k-1})*id({k}));(id(1)*id({k-1})*s({k-1},1));"
           "(id(1)*cap({k-1})*id(1))")                        # (k,k) -> (1,1) via k-1
_DPRIME = "(s({k-1},1)*id(1));(id({k-1})*cap(1))"             # (k,1) -> k-1
_UPRIME = "(id({k-1})*cup(1));(m({k-1},1)*id(1))"             # k-1 -> (k,1)


def _rotated(f: str, a: str, b: str, c: str, d: str) -> str:
    """Rotation of f : (a,b) -> (c,d) to a map (b,d) -> (a,c)."""
    return (f"(cup({a})*id({b})*id({d}));(id({a})*({f})*id({d}));"
            f"(id({a})*id({c})*cap({d}))")


_SKEIN_X = f"{_H_DOWN};m(1,1);s(1,1)"

RELATIONS: Tuple[Relation, ...] = (
    # defining relations
    Relation("1a_circle", "cup(1);cap(1)", "[$loop1]id(0)"),
    Relation("1b_lollipop_cap", "s(1,1);cap(1)", "[0]s(1,1);cap(1)"),
    Relation("1b_lollipop_cup", "cup(1);m(1,1)", "[0]cup(1);m(1,1)"),
    Relation("1c_bigon", "s(1,{k-1});m(1,{k-1})", "[$bigon(k)]id({k})",
             (("k", "2", "m"),)),
    Relation("1d_associativity", "(id(1)*m({k},1));m(1,{k+1})",
             "(m(1,{k})*id(1));m({k+1},1)", (("k", "1", "m"),)),
    Relation("1e_ih", _H_UP,
             f"{_SKEIN_X} + [-$ih_y(k)]({_H_DOWN}) + [$ih_z(k)](cap({{k}});cup(1))",
             (("k", "1", "m"),)),
    Relation("ih_rotated",
             _rotated(_SKEIN_X, "{k}", "{k}", "1", "1"),
             f"m({{k}},1);s({{k}},1) + [$ih_y(k)](({_DPRIME});({_UPRIME})) + [-$ih_z(k)]id({{k}})*id(1)",
             (("k", "1", "m"),)),
    # derived relations
    Relation("reverse_bigon",
             f"{_L1};(id(1)*s(1,{{k}}));(cap(1)*id({{k}}))", "[$reverse_bigon(k)]id({k})",
             (("k", "1", "m"),)),
    Relation("thick_circle", "cup({k});cap({k})", "[$loopk(k)]id(0)", (("k", "0", "m"),)),
    Relation("triangle_top", "(s(1,{m-1})*id({m}));(id(1)*id({m-1})*s({m-1},1));"
             "(id(1)*cap({m-1})*id(1));m(1,1)", "[0]cap({m});cup(1);m(1,1)", m_min=2),
    Relation("merge_split_top", "(s(1,{m-1})*id({m}));(id(1)*id({m-1})*s({m-1},1));"
             "(id(1)*cap({m-1})*id(1))", "[1/$gamma](cap({m});cup(1))", m_min=2),
    Relation("boundary_gamma", "id({m})*id(1)",
             "[$gamma](((s({m-1},1)*id(1));(id({m-1})*cap(1)));"
             "((id({m-1})*cup(1));(m({m-1},1)*id(1))))", m_min=2),
    Relation("triangle211", f"({_H_UP.replace('{k}', '1')});m(1,1)",
             "[$triangle211]m(1,1)", m_min=2),
    Relation("triangle_by_square",
             f"(({_L1.replace('{k}', '1')})*s(1,{{k}}));"
             f"(id(1)*({_R1.replace('{k}', '1')})*id({{k}}));(id(1)*m(1,{{k}}));m(1,{{k+1}})",
             "[$trbysq(k)]m(1,{k+1})", (("k", "1", "m-1"),), m_min=2),
    Relation("tau_triangle",
             "(id({k+1})*s(1,1));(m({k+1},1)*id(1));(s({k+1},1)*id(1));(id({k+1})*cap(1))",
             "[$tau(k)]((id({k+1})*s(1,1));(s({k},1)*id(1)*id(1));"
             "(id({k})*cap(1)*id(1));m({k},1))",
             (("k", "0", "m-1"),), m_min=2),
    Relation("quad_vertex",
             "m(1,1);s(1,1) + [$quad](cap(1);cup(1))",
             f"{_H_UP.replace('{k}', '1')} + [$quad](id(1)*id(1))"),
    Relation("quad_rotation_invariant",
             _rotated("m(1,1);s(1,1) + [$quad](cap(1);cup(1))", "1", "1", "1", "1"),
             "m(1,1);s(1,1) + [$quad](cap(1);cup(1))"),
    Relation("associativity_general", "(m({i},{j})*id({l}));m({i+j},{l})",
             "(id({i})*m({j},{l}));m({i},{j+l})",
             (("i", "1", "m"), ("j", "1", "m-i"), ("l", "1", "m-i-j"))),
    Relation("split_rotation_independence",
             "(cup({i})*id({i+j}));(id({i})*cup({j})*id({i})*id({i+j}));"
             "(id({i})*id({j})*m({j},{i})*id({i+j}));(id({i})*id({j})*cap({i+j}))",
             "(id({i+j})*cup({j}));(id({i+j})*id({j})*cup({i})*id({j}));"
             "(id({i+j})*m({j},{i})*id({i})*id({j}));(cap({i+j})*id({i})*id({j}))",
             (("i", "1", "m-1"), ("j", "1", "m-i"))),
    Relation("split_is_rotated_merge", "s({i},{j})",
             "(cup({i})*id({i+j}));(id({i})*cup({j})*id({i})*id({i+j}));"
             "(id({i})*id({j})*m({j},{i})*id({i+j}));(id({i})*id({j})*cap({i+j}))",
             (("i", "1", "m-1"), ("j", "1", "m-i"))),
    # braiding
    Relation("braid_definition_pos", "x+",
             "[q^2](id(1)*id(1)) + [-1](m(1,1);s(1,1)) + [-$braid_cupcap_pos](cap(1);cup(1))"),
    Relation("braid_definition_neg", "x-",
             "[q^-2](id(1)*id(1)) + [-1](m(1,1);s(1,1)) + [$braid_cupcap_neg](cap(1);cup(1))"),
    Relation("bmw_skein", "x+ - x-",
             "[q^2-q^-2](id(1)*id(1) - cap(1);cup(1))", webs_variant=True),
    Relation("reidemeister_1_pos", "(id(1)*cup(1));(x+*id(1));(id(1)*cap(1))",
             "[q^{2*m-2}]id(1)", webs_variant=True),
    Relation("reidemeister_1_neg", "(id(1)*cup(1));(x-*id(1));(id(1)*cap(1))",
             "[q^{2-2*m}]id(1)", webs_variant=True),
    Relation("kink_cup_pos", "cup(1);x+", "[q^{2-2*m}]cup(1)", webs_variant=True),
    Relation("kink_cup_neg", "cup(1);x-", "[q^{2*m-2}]cup(1)", webs_variant=True),
    Relation("kink_vertex_pos", "x+;m(1,1)", "[-q^-2]m(1,1)", webs_variant=True),
    Relation("kink_vertex_neg", "x-;m(1,1)", "[-q^2]m(1,1)", webs_variant=True),
    Relation("reidemeister_2", "x+;x-", "id(1)*id(1)", webs_variant=True),
    Relation("reidemeister_2_other", "x-;x+", "id(1)*id(1)", webs_variant=True),
    Relation("reidemeister_3", "(x+*id(1));(id(1)*x+);(x+*id(1))",
             "(id(1)*x+);(x+*id(1));(id(1)*x+)", webs_variant=True),
    Relation("braid_squared_skein", "x+;x+",
             "id(1)*id(1) + [q^2-q^-2]x+ + [-(q^2-q^-2)*q^{2-2*m}](cap(1);cup(1))",
             webs_variant=True),
    Relation("braid_rotation", _rotated("x+", "1", "1", "1", "1"), "x-",
             webs_variant=True),
    Relation("braid_minimal_polynomial",
             "(x+ - [q^2](id(1)*id(1)));(x+ + [q^-2](id(1)*id(1)));"
             "(x+ - [q^{2-2*m}](id(1)*id(1)))",
             "[0](id(1)*id(1))", m_min=1, webs_variant=True),
)


def relation_instances(m: int, relations: Iterable[Relation] = RELATIONS):
    """Yield (relation, params, lhs_text, rhs_text) for every valid instance."""
    for rel, env in relation_envs(m, relations):
        yield rel, env, render(rel.lhs, env), render(rel.rhs, env)


def relation_envs(m: int, relations: Iterable[Relation] = RELATIONS):
    """Yield (relation, params) for every valid instance."""
    for rel in relations:
        if m < rel.m_min:
            continue
        envs: List[Dict[str, int]] = [{"m": m}]
        for name, lo, hi in rel.params:
            nxt = []
            for env in envs:
                for v in range(_int_eval(lo, env), _int_eval(hi, env) + 1):
                    nxt.append({**env, name: v})
            envs = nxt
        for env in envs:
            yield rel, env
            if rel.webs_variant:
                yield rel, {**env, "webs": 1}


@dataclass
class SuiteRecord:
    relation: str
    params: Dict[str, int]
    status: str
    lhs_nnz: int = 0
    rhs_nnz: int = 0
    residual_nnz: int = 0
    seconds: float = 0.0
    irregular: int = 0
    message: str = ""

    def to_json(self, timing: bool = False) -> dict:
        out = {"relation": self.relation, "params": dict(self.params), "status": self.status,
               "lhs_nnz": self.lhs_nnz, "rhs_nnz": self.rhs_nnz,
               "residual_nnz": self.residual_nnz}
        if self.message:
            out["message"] = self.message
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _summands(e: WebExpr) -> List[WebExpr]:
    e = canonical(e)
    return list(e.terms) if isinstance(e, Sum) else [e]


def structurally_zero(e: WebExpr, m: int) -> bool:
    """True when e vanishes for a formal reason: a zero scalar or a label above m."""
    if isinstance(e, ATOMS):
        s, t = _atom_type(e)
        return any(k > m for k in s + t)
    if isinstance(e, Tensor):
        return structurally_zero(e.left, m) or structurally_zero(e.right, m)
    if isinstance(e, Compose):
        return structurally_zero(e.first, m) or structurally_zero(e.then, m)
    if isinstance(e, Scale):
        return not e.coef or structurally_zero(e.expr, m)
    return all(structurally_zero(t, m) for t in e.terms)


def run_instance(ctx: RepContext, name: str, params: Dict[str, int], lhs: str, rhs: str,
                 max_dim: Optional[int] = None,
                 maps: Optional[Dict[str, LinearMap]] = None) -> SuiteRecord:
    """Evaluate one relation instance and classify it.

    Statuses: ``pass``, ``fail``, ``degenerate`` (both sides are zero maps,
    e.g. routed through a label above m) and ``skipped`` (size cap).
    ``irregular`` counts entries of either side with a pole at q = 1.
    """
    m = ctx.m
    cap = max_dim_from_env() if max_dim is None else max_dim
    t0 = time.perf_counter()
    le, re_ = parse(lhs), parse(rhs)
    if params.get("webs"):
        le, re_ = expand_crossings(le, m), expand_crossings(re_, m)
    if typecheck(le) != typecheck(re_):
        return SuiteRecord(name, params, "fail", message="sides have different types")
    big = max(max_word_dim(m, le), max_word_dim(m, re_))
    if big > cap:
        return SuiteRecord(name, params, "skipped",
                           message=f"intermediate dimension {big} exceeds cap {cap}")
    memo: Dict[WebExpr, LinearMap] = {}
    itw = intertwiners(ctx)
    a, b = _eval(itw, le, memo), _eval(itw, re_, memo)
    if maps is not None:
        maps["lhs"], maps["rhs"] = a, b
    res = a - b
    irregular = len(a.irregular_entries()) + len(b.irregular_entries())
    if irregular:
        return SuiteRecord(name, params, "fail", a.nnz(), b.nnz(), res.nnz(),
                           time.perf_counter() - t0, irregular,
                           message=f"{irregular} entries singular at q=1")
    if all(structurally_zero(t, m) for t in _summands(le) + _summands(re_)):
        status = "degenerate"
    else:
        status = "pass" if res.is_zero() else "fail"
    return SuiteRecord(name, params, status, a.nnz(), b.nnz(), res.nnz(),
                       time.perf_counter() - t0, irregular)


_ATOM_LABELS = re.compile(r"(?:id|cup|cap|m|s)\((\d+)(?:,(\d+))?\)")


def _label_bound(m: int, text: str) -> int:
    """Cheap lower bound for max_word_dim: each atom's label spaces occur in some word."""
    best = 1
    for mt in _ATOM_LABELS.finditer(text):
        for g in mt.groups():
            if g is not None:
                best = max(best, word_dim(m, (int(g),)))
    return best


def relation_suite(ctx: Union[RepContext, int], max_dim: Optional[int] = None,
                   relations: Iterable[Relation] = RELATIONS,
                   names: Optional[Iterable[str]] = None) -> List[SuiteRecord]:
    """Run every relation instance at this m; failures are data, not errors."""
    if isinstance(ctx, int):
        ctx = build_context(ctx)
    cap = max_dim_from_env() if max_dim is None else max_dim
    wanted = None if names is None else set(names)
    m = ctx.m
    out = []
    for rel, env in relation_envs(m, relations):
        if wanted is not None and rel.name not in wanted:
            continue
        params = dict(env)
        texts = [render(t, env, coefficients=False) for t in (rel.lhs, rel.rhs)]
        big = max(_label_bound(m, t) for t in texts)
        if big <= cap:
            big = max(max_word_dim(m, parse(t)) for t in texts)
        if big > cap:
            out.append(SuiteRecord(rel.name, params, "skipped",
                                   message=f"intermediate dimension {big} exceeds cap {cap}"))
            continue
        lhs, rhs = render(rel.lhs, env), render(rel.rhs, env)
        out.append(run_instance(ctx, rel.name, params, lhs, rhs, cap))
    return out
