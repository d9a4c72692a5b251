"""The quantum orthogonal algebra acting on V, on exterior powers and on words.

Conventions:

* coproduct  E -> E(x)1 + K(x)E  and  F -> 1(x)F + F(x)K^-1, iterated so that
  E on a word is sum_j K..K E_(j) 1..1 and F is sum_j 1..1 F_(j) K^-1..K^-1;
* K_i acts on a weight vector of weight w by q^(2 (alpha_i, w)) with
  (e_i, e_j) = delta_ij, so the short generator of odd m has q_n = q and
  every other generator has q_i = q^2;
* sigma is -1 on V for odd m and swaps a_n with b_n for even m.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .exactla import rank_qq, rank_rational
from .extalg import a_pos, b_pos, basis, basis_index, gen_kind, nf_terms, u_pos
from .linmap import LinearMap, canon_word, word_basis, word_dim
from .qratfun import ONE, Q, RatFun, ZERO
from .qcombinat import qint

__all__ = [
    "Generator",
    "RepContext",
    "build_context",
    "SizeCapError",
    "DEFAULT_MAX_DIM",
    "max_dim_from_env",
    "antipode_dual",
]

DEFAULT_MAX_DIM = 65536


def max_dim_from_env(default: int = DEFAULT_MAX_DIM) -> int:
    raw = os.environ.get("OWEB_MAX_DIM")
    if raw is None or raw == "":
        return default
    try:
        val = int(raw)
    except ValueError as exc:
        raise ValueError(f"OWEB_MAX_DIM must be an integer, got {raw!r}") from exc
    if val <= 0:
        raise ValueError("OWEB_MAX_DIM must be positive")
    return val


class SizeCapError(ValueError):
    """A computation would exceed the configured size cap."""


@dataclass(frozen=True, order=True)
class Generator:
    kind: str  # 'E', 'F', 'K', 'Kinv', 'sigma'
    index: int = 0

    def __str__(self) -> str:
        return "sigma" if self.kind == "sigma" else f"{self.kind}{self.index}"


SIGMA = Generator("sigma")

Weight = Tuple[int, ...]


def _qpow(e: int) -> RatFun:
    return RatFun.qpow(e)


class RepContext:
    """Bases, weights and generator matrices for one value of m."""

    def __init__(self, m: int):
        if not isinstance(m, int) or m < 1:
            raise ValueError(f"m must be a positive integer, got {m!r}")
        self.m = m
        self.n = m // 2
        self.odd = m % 2 == 1
        self._lambda_cache: Dict[Tuple[Generator, int], LinearMap] = {}
        self._word_cache: Dict[Tuple[Generator, Tuple[int, ...]], LinearMap] = {}
        self._build_v()

    # -- V --------------------------------------------------------------------
    def vec_weight(self, p: int) -> Weight:
        kind, i = gen_kind(self.m, p)
        w = [0] * self.n
        if kind == "a":
            w[i - 1] = 1
        elif kind == "b":
            w[i - 1] = -1
        return tuple(w)

    def simple_root(self, i: int) -> Weight:
        n = self.n
        r = [0] * n
        if i < n:
            r[i - 1], r[i] = 1, -1
        elif self.odd or n == 1:
            # short root e_n; for m = 2 the single K is attached to e_1
            r[n - 1] = 1
        else:
            r[n - 2], r[n - 1] = 1, 1
        return tuple(r)

    def k_exponent(self, i: int, w: Weight) -> int:
        return 2 * sum(a * b for a, b in zip(self.simple_root(i), w))

    def q_i(self, i: int) -> RatFun:
        return Q if (self.odd and i == self.n) else Q ** 2

    @property
    def generators(self) -> List[Generator]:
        gens: List[Generator] = []
        if self.m >= 3:
            for i in range(1, self.n + 1):
                gens += [Generator("E", i), Generator("F", i)]
        if self.m >= 2:
            for i in range(1, self.n + 1):
                gens += [Generator("K", i), Generator("Kinv", i)]
        gens.append(SIGMA)
        return gens

    @property
    def ef_indices(self) -> List[int]:
        return list(range(1, self.n + 1)) if self.m >= 3 else []

    def _build_v(self):
        m, n = self.m, self.n
        # action on positions: gen -> {p: [(coeff, p')]}
        act: Dict[Generator, Dict[int, List[Tuple[RatFun, int]]]] = {}
        two_q = qint(2)
        if m >= 3:
            for i in range(1, n):
                e: Dict[int, List] = {}
                f: Dict[int, List] = {}
                f[a_pos(m, i)] = [(ONE, a_pos(m, i + 1))]
                e[a_pos(m, i + 1)] = [(ONE, a_pos(m, i))]
                f[b_pos(m, i + 1)] = [(ONE, b_pos(m, i))]
                e[b_pos(m, i)] = [(ONE, b_pos(m, i + 1))]
                act[Generator("E", i)] = e
                act[Generator("F", i)] = f
            e, f = {}, {}
            if self.odd:
                u = u_pos(m)
                f[a_pos(m, n)] = [(ONE, u)]
                f[u] = [(two_q, b_pos(m, n))]
                e[u] = [(two_q, a_pos(m, n))]
                e[b_pos(m, n)] = [(ONE, u)]
            else:
                f[a_pos(m, n - 1)] = [(ONE, b_pos(m, n))]
                f[a_pos(m, n)] = [(ONE, b_pos(m, n - 1))]
                e[b_pos(m, n)] = [(ONE, a_pos(m, n - 1))]
                e[b_pos(m, n - 1)] = [(ONE, a_pos(m, n))]
            act[Generator("E", n)] = e
            act[Generator("F", n)] = f
        if m >= 2:
            for i in range(1, n + 1):
                act[Generator("K", i)] = {
                    p: [(_qpow(self.k_exponent(i, self.vec_weight(p))), p)] for p in range(1, m + 1)}
                act[Generator("Kinv", i)] = {
                    p: [(_qpow(-self.k_exponent(i, self.vec_weight(p))), p)] for p in range(1, m + 1)}
        sig: Dict[int, List] = {}
        for p in range(1, m + 1):
            if self.odd:
                sig[p] = [(-ONE, p)]
            elif p == a_pos(m, n):
                sig[p] = [(ONE, b_pos(m, n))]
            elif p == b_pos(m, n):
                sig[p] = [(ONE, a_pos(m, n))]
            else:
                sig[p] = [(ONE, p)]
        act[SIGMA] = sig
        self.v_action = act

    def k_eigen(self, i: int, p: int, inverse: bool = False) -> RatFun:
        e = self.k_exponent(i, self.vec_weight(p))
        return _qpow(-e if inverse else e)

    # -- exterior powers --------------------------------------------------------
    def weight_of(self, mono: Sequence[int]) -> Weight:
        w = [0] * self.n
        for p in mono:
            for j, x in enumerate(self.vec_weight(p)):
                w[j] += x
        return tuple(w)

    def word_weight(self, vec: Sequence[Sequence[int]]) -> Weight:
        w = [0] * self.n
        for mono in vec:
            for j, x in enumerate(self.weight_of(mono)):
                w[j] += x
        return tuple(w)

    def _lift_act(self, g: Generator, mono: Tuple[int, ...]) -> List[Tuple[RatFun, Tuple[int, ...]]]:
        """Delta^(k)(g) applied to v_{s1} (x) ... (x) v_{sk}, as words with coefficients."""
        act = self.v_action.get(g)
        if act is None:
            raise ValueError(f"generator {g} does not exist for m={self.m}")
        k = len(mono)
        out: List[Tuple[RatFun, Tuple[int, ...]]] = []
        if g.kind in ("K", "Kinv"):
            c = ONE
            for p in mono:
                c = c * act[p][0][0]
            return [(c, mono)]
        if g.kind == "sigma":
            words = [(ONE, ())]
            for p in mono:
                words = [(c * d, w + (p2,)) for c, w in words for d, p2 in act[p]]
            return words
        i = g.index
        for j in range(k):
            imgs = act.get(mono[j])
            if not imgs:
                continue
            if g.kind == "E":
                pre = ONE
                for p in mono[:j]:
                    pre = pre * self.k_eigen(i, p)
            else:
                pre = ONE
                for p in mono[j + 1:]:
                    pre = pre * self.k_eigen(i, p, inverse=True)
            for c, p2 in imgs:
                out.append((pre * c, mono[:j] + (p2,) + mono[j + 1:]))
        return out

    def act_on_lambda(self, g: Generator, k: int) -> LinearMap:
        """Matrix of g on Lambda^k by lifting, acting on the tensor, multiplying back."""
        if not 0 <= k:
            raise ValueError(f"degree {k} out of range")
        key = (g, k)
        hit = self._lambda_cache.get(key)
        if hit is not None:
            return hit
        if k > self.m:
            res = LinearMap.zero(self.m, (k,), (k,))
        else:
            idx = basis_index(self.m, k)
            rows: Dict[int, Dict[int, RatFun]] = {}
            for col, mono in enumerate(basis(self.m, k)):
                for c, w in self._lift_act(g, mono):
                    for mono2, d in nf_terms(self.m, w):
                        r = idx[mono2]
                        row = rows.setdefault(r, {})
                        v = row.get(col, ZERO) + c * d
                        if v:
                            row[col] = v
                        else:
                            row.pop(col, None)
            res = LinearMap(self.m, (k,), (k,), rows)
        self._lambda_cache[key] = res
        return res

    def act_on_word(self, g: Generator, word: Sequence[int]) -> LinearMap:
        """Matrix of g on a tensor word via the iterated coproduct."""
        word = canon_word(word)
        key = (g, word)
        hit = self._word_cache.get(key)
        if hit is not None:
            return hit
        m = self.m
        if not word:
            val = ONE if g.kind in ("K", "Kinv", "sigma") else ZERO
            res = LinearMap.scalar(m, val)
        elif g.kind in ("K", "Kinv", "sigma"):
            res = self.act_on_lambda(g, word[0])
            for k in word[1:]:
                res = res.tensor(self.act_on_lambda(g, k))
        else:
            i = g.index
            kg = Generator("K", i)
            kig = Generator("Kinv", i)
            res = LinearMap.zero(m, word, word)
            for j in range(len(word)):
                parts = []
                for l, k in enumerate(word):
                    if l == j:
                        parts.append(self.act_on_lambda(g, k))
                    elif g.kind == "E":
                        parts.append(self.act_on_lambda(kg, k) if l < j else LinearMap.identity(m, (k,)))
                    else:
                        parts.append(LinearMap.identity(m, (k,)) if l < j else self.act_on_lambda(kig, k))
                term = parts[0]
                for p in parts[1:]:
                    term = term.tensor(p)
                res = res + term
        self._word_cache[key] = res
        return res

    def act_on_tensor(self, g: Generator, word: Sequence[int], vec: Dict[int, RatFun]) -> Dict[int, RatFun]:
        word = canon_word(word)
        dim = word_dim(self.m, word)
        if any(not 0 <= i < dim for i in vec):
            raise ValueError(f"vector index out of range for dimension {dim}")
        return self.act_on_word(g, word).apply(vec)

    def act_on_word_right_nested(self, g: Generator, word: Sequence[int]) -> LinearMap:
        """Same action built as (id (x) Delta) iterated from the right."""
        word = canon_word(word)
        m = self.m
        if len(word) <= 1:
            return self.act_on_word(g, word)
        head, rest = word[0], word[1:]
        if g.kind in ("K", "Kinv", "sigma"):
            return self.act_on_lambda(g, head).tensor(self.act_on_word_right_nested(g, rest))
        i = g.index
        if g.kind == "E":
            left = self.act_on_lambda(g, head).tensor(LinearMap.identity(m, rest))
            right = self.act_on_lambda(Generator("K", i), head).tensor(
                self.act_on_word_right_nested(g, rest))
        else:
            left = self.act_on_lambda(g, head).tensor(
                self.act_on_word_right_nested(Generator("Kinv", i), rest))
            right = LinearMap.identity(m, (head,)).tensor(self.act_on_word_right_nested(g, rest))
        return left + right

    # -- weights ----------------------------------------------------------------
    def weight_multiplicities(self, word: Sequence[int]) -> Dict[Weight, int]:
        word = canon_word(word)
        out: Dict[Weight, int] = {}
        for vec in word_basis(self.m, word):
            w = self.word_weight(vec)
            out[w] = out.get(w, 0) + 1
        return out

    def word_weights(self, word: Sequence[int]) -> List[Weight]:
        return [self.word_weight(v) for v in word_basis(self.m, canon_word(word))]

    # -- equivariance -------------------------------------------------------------
    def commutator_defect(self, f: LinearMap, g: Generator) -> LinearMap:
        return f @ self.act_on_word(g, f.src) - self.act_on_word(g, f.tgt) @ f

    def equivariance_check(self, f: LinearMap) -> bool:
        return all(self.commutator_defect(f, g).is_zero() for g in self.generators)

    def failing_generators(self, f: LinearMap) -> List[str]:
        return [str(g) for g in self.generators if not self.commutator_defect(f, g).is_zero()]

    def dual_action(self, g: Generator, k: int) -> LinearMap:
        return antipode_dual(self, g, k)

    # -- hom spaces -----------------------------------------------------------------
    def _constraint_rows(self, src, tgt, max_dim: Optional[int]):
        src, tgt = canon_word(src), canon_word(tgt)
        ds, dt = word_dim(self.m, src), word_dim(self.m, tgt)
        cap = max_dim_from_env() if max_dim is None else max_dim
        if ds * dt > cap:
            raise SizeCapError(
                f"hom space {src}->{tgt} has {ds * dt} unknowns, above the cap {cap}")
        ws, wt = self.word_weights(src), self.word_weights(tgt)
        by_w: Dict[Weight, List[int]] = {}
        for c, w in enumerate(ws):
            by_w.setdefault(w, []).append(c)
        unknowns: Dict[Tuple[int, int], int] = {}
        for r, w in enumerate(wt):
            for c in by_w.get(w, ()):
                unknowns[(r, c)] = len(unknowns)
        gens = [g for g in self.generators if g.kind in ("E", "F", "sigma")]
        all_rows = []
        for g in gens:
            xs = self.act_on_word(g, src)
            xt = self.act_on_word(g, tgt).transpose()  # rows indexed by column of X_t
            cons: Dict[Tuple[int, int], Dict[int, RatFun]] = {}
            for (r, k), u in unknowns.items():
                # f[r][k] * Xs[k][c]
                for c, v in xs.rows.get(k, {}).items():
                    row = cons.setdefault((r, c), {})
                    row[u] = row.get(u, ZERO) + v
            for (k, c), u in unknowns.items():
                # - Xt[r][k] * f[k][c]
                for r, v in xt.rows.get(k, {}).items():
                    row = cons.setdefault((r, c), {})
                    row[u] = row.get(u, ZERO) - v
            for key in sorted(cons):
                row = {u: v for u, v in cons[key].items() if v}
                if row:
                    all_rows.append(row)
        return len(unknowns), all_rows

    def hom_dim(self, src, tgt, max_dim: Optional[int] = None) -> int:
        """Dimension over Q(q) of the equivariant maps src -> tgt."""
        nunk, rows = self._constraint_rows(src, tgt, max_dim)
        if nunk == 0:
            return 0
        return nunk - rank_qq(rows)

    def hom_dim_classical(self, src, tgt, max_dim: Optional[int] = None) -> int:
        """Same count after setting q = 1 in the constraint system."""
        nunk, rows = self._constraint_rows(src, tgt, max_dim)
        if nunk == 0:
            return 0
        spec = [{u: v.eval_at_one() for u, v in row.items()} for row in rows]
        return nunk - rank_rational(spec)


def antipode_dual(ctx: RepContext, g: Generator, k: int) -> LinearMap:
    """Matrix of g on (Lambda^k)^*: the transpose of S(g) on Lambda^k."""
    act = ctx.act_on_lambda
    if g.kind == "E":
        s = -(act(Generator("Kinv", g.index), k) @ act(g, k))
    elif g.kind == "F":
        s = -(act(g, k) @ act(Generator("K", g.index), k))
    elif g.kind == "K":
        s = act(Generator("Kinv", g.index), k)
    elif g.kind == "Kinv":
        s = act(Generator("K", g.index), k)
    else:
        s = act(g, k)
    return s.transpose()


@lru_cache(maxsize=None)
def build_context(m: int) -> RepContext:
    return RepContext(m)
