"""Explicit intertwiners between tensor words of exterior powers.

All maps are memoized per context.  Cups are built by the recursion
c_k = ([2]/[2k]) (m_{k-1,1} (x) m_{1,k-1}) o (id (x) c_1 (x) id) o c_{k-1};
with C the coefficient matrix of c_k, the cap is C^-1 read as a row vector,
psi_k has matrix C^T and phi_k = psi_k^-1.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .exactla import SingularMatrixError
from .extalg import basis, basis_index, gen_kind, nf_terms
from .linmap import LinearMap, word_dim
from .qcombinat import named_coefficient, qint
from .qratfun import ONE, Q, RatFun
from .qrep import RepContext, antipode_dual, build_context

__all__ = ["Intertwiners", "intertwiners", "tensor_all", "PsiSingularError"]


class PsiSingularError(SingularMatrixError):
    """psi_k turned out singular; this contradicts the duality theory."""


def tensor_all(maps: Sequence[LinearMap]) -> LinearMap:
    out = maps[0]
    for f in maps[1:]:
        out = out.tensor(f)
    return out


MINUS_Q2 = -(Q ** 2)


class Intertwiners:
    """Memoized constructors for the named morphisms at fixed m."""

    def __init__(self, ctx: RepContext):
        self.ctx = ctx
        self.m = ctx.m
        self._cache: Dict[tuple, LinearMap] = {}

    def _memo(self, key, build):
        hit = self._cache.get(key)
        if hit is None:
            hit = build()
            self._cache[key] = hit
        return hit

    def id(self, *labels: int) -> LinearMap:
        return LinearMap.identity(self.m, labels)

    # -- multiplication ---------------------------------------------------------
    def mul(self, i: int, j: int) -> LinearMap:
        return self._memo(("mul", i, j), lambda: self._mul(i, j))

    def _mul(self, i: int, j: int) -> LinearMap:
        m = self.m
        if i < 0 or j < 0:
            raise ValueError("labels must be nonnegative")
        if i + j > m:
            return LinearMap.zero(m, (i, j), (i + j,))
        tidx = basis_index(m, i + j)
        rows: Dict[int, Dict[int, RatFun]] = {}
        col = 0
        for s in basis(m, i):
            for t in basis(m, j):
                for mono, c in nf_terms(m, s + t):
                    rows.setdefault(tidx[mono], {})[col] = c
                col += 1
        return LinearMap(m, (i, j), (i + j,), rows)

    # -- duality -------------------------------------------------------------------
    def phi1_scalar(self, p: int) -> RatFun:
        """t with phi_1(v_p) = t * v_{p'}^*, p' = m + 1 - p."""
        m, n = self.m, self.ctx.n
        kind, i = gen_kind(m, p)
        if kind == "a":
            return MINUS_Q2 ** (i - 1)
        if kind == "u":
            return -(MINUS_Q2 ** (n - 1)) * qint(2)
        if m % 2 == 1:
            return Q ** 2 * MINUS_Q2 ** (2 * n - 1 - i)
        return MINUS_Q2 ** (m - i - 1)

    def phi1(self) -> LinearMap:
        """phi_1 : V -> V^*, column p is the image of v_p in the dual basis."""
        def build():
            m = self.m
            rows = {}
            for p in range(1, m + 1):
                rows[m - p] = {p - 1: self.phi1_scalar(p)}
            return LinearMap(m, (1,), (1,), rows)
        return self._memo(("phi1",), build)

    def cup1(self) -> LinearMap:
        def build():
            m = self.m
            rows = {}
            for p in range(1, m + 1):
                # v_p (x) phi_1^-1(v_p^*);  phi_1(v_{p'}) = t v_p^*
                pp = m + 1 - p
                rows[(p - 1) * m + (pp - 1)] = {0: ONE / self.phi1_scalar(pp)}
            return LinearMap(m, (), (1, 1), rows)
        return self._memo(("cup1",), build)

    def cup(self, k: int) -> LinearMap:
        return self._memo(("cup", k), lambda: self._cup(k))

    def _cup(self, k: int) -> LinearMap:
        m = self.m
        if k < 0:
            raise ValueError("negative label")
        if k == 0:
            return LinearMap.scalar(m, ONE)
        if k > m:
            return LinearMap.zero(m, (), (k, k))
        if k == 1:
            return self.cup1()
        prev = self.cup(k - 1)
        step = tensor_all([self.id(k - 1), self.cup1(), self.id(k - 1)])
        merge = self.mul(k - 1, 1).tensor(self.mul(1, k - 1))
        return (merge @ step @ prev).scale(qint(2) / qint(2 * k))

    def cup_matrix(self, k: int) -> LinearMap:
        """C with C[S, T] the coefficient of v_S (x) v_T in c_k, as a map (k) -> (k)."""
        def build():
            m = self.m
            d = word_dim(m, (k,))
            rows: Dict[int, Dict[int, RatFun]] = {}
            for r, _, v in self.cup(k).entries():
                rows.setdefault(r // d, {})[r % d] = v
            return LinearMap(m, (k,), (k,), rows)
        return self._memo(("C", k), build)

    def psi(self, k: int) -> LinearMap:
        return self._memo(("psi", k), lambda: self.cup_matrix(k).transpose())

    def phi(self, k: int) -> LinearMap:
        def build():
            try:
                return self.psi(k).inverse()
            except SingularMatrixError as exc:
                raise PsiSingularError(f"psi_{k} is singular for m={self.m}") from exc
        return self._memo(("phi", k), build)

    def cap(self, k: int) -> LinearMap:
        return self._memo(("cap", k), lambda: self._cap(k))

    def _cap(self, k: int) -> LinearMap:
        m = self.m
        if k == 0:
            return LinearMap.scalar(m, ONE)
        if k > m:
            return LinearMap.zero(m, (k, k), ())
        d = word_dim(m, (k,))
        phi = self.phi(k)  # phi[B][A] = e_k(v_A (x) v_B)
        row = {}
        for b, a, v in phi.entries():
            row[a * d + b] = v
        return LinearMap(m, (k, k), (), {0: row})

    # -- splits -------------------------------------------------------------------
    def split(self, i: int, j: int) -> LinearMap:
        return self._memo(("split", i, j), lambda: self._split(i, j))

    def _split(self, i: int, j: int) -> LinearMap:
        m = self.m
        if i + j > m:
            return LinearMap.zero(m, (i + j,), (i, j))
        if i == 0 or j == 0:
            return self.id(i + j)
        s = i + j
        f = self.cup(i).tensor(self.id(s))
        f = tensor_all([self.id(i), self.cup(j), self.id(i), self.id(s)]) @ f
        f = tensor_all([self.id(i), self.id(j), self.mul(j, i), self.id(s)]) @ f
        f = tensor_all([self.id(i), self.id(j), self.cap(s)]) @ f
        return f

    def split_other_rotation(self, i: int, j: int) -> LinearMap:
        """The split obtained by bending the legs of m_{j,i} the other way round."""
        m = self.m
        if i + j > m:
            return LinearMap.zero(m, (i + j,), (i, j))
        if i == 0 or j == 0:
            return self.id(i + j)
        s = i + j
        f = self.id(s).tensor(self.cup(j))
        f = tensor_all([self.id(s), self.id(j), self.cup(i), self.id(j)]) @ f
        f = tensor_all([self.id(s), self.mul(j, i), self.id(i), self.id(j)]) @ f
        f = tensor_all([self.cap(s), self.id(i), self.id(j)]) @ f
        return f

    # -- braiding --------------------------------------------------------------------
    def projectors(self) -> Tuple[LinearMap, LinearMap, LinearMap]:
        """(P_sym, P_wedge, P_triv): the eigenprojectors of V (x) V."""
        def build():
            m = self.m
            ms = self.split(1, 1) @ self.mul(1, 1)
            cc = self.cup(1) @ self.cap(1)
            p_wedge = ms.scale(ONE / named_coefficient("bigon", m, 2)) if m >= 2 else ms
            p_triv = cc.scale(ONE / named_coefficient("loop1", m))
            p_sym = self.id(1, 1) - p_wedge - p_triv
            return (p_sym, p_wedge, p_triv)
        return self._memo(("proj",), build)  # type: ignore[return-value]

    def braiding(self, sign: int = 1) -> LinearMap:
        """beta (sign=+1) or beta^-1 (sign=-1) from the eigenvalue decomposition."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

        def build():
            p_sym, p_wedge, p_triv = self.projectors()
            e = sign
            return (p_sym.scale(Q ** (2 * e)) - p_wedge.scale(Q ** (-2 * e))
                    + p_triv.scale(Q ** (e * (2 - 2 * self.m))))
        return self._memo(("braid", sign), build)

    def braiding_from_webs(self, sign: int = 1) -> LinearMap:
        """beta^{+-1} = q^{+-2} id - m;s -+ c (cap;cup) with the crossing coefficients."""
        m = self.m
        ms = self.split(1, 1) @ self.mul(1, 1)
        cc = self.cup(1) @ self.cap(1)
        if sign == 1:
            return self.id(1, 1).scale(Q ** 2) - ms - cc.scale(named_coefficient("braid_cupcap_pos", m))
        return self.id(1, 1).scale(Q ** -2) - ms + cc.scale(named_coefficient("braid_cupcap_neg", m))

    # -- quadrivalent vertex ------------------------------------------------------------
    def h_rung2(self) -> LinearMap:
        """(1,1) -> (1,1) through a horizontal rung labelled 2."""
        def build():
            left = self.cup(1).tensor(self.id(1))
            left = self.id(1).tensor(self.mul(1, 1)) @ left        # 1 -> (1, 2)
            right = self.split(1, 1).tensor(self.id(1))
            right = self.id(1).tensor(self.cap(1)) @ right          # (2, 1) -> 1
            return self.id(1).tensor(right) @ left.tensor(self.id(1))
        return self._memo(("h2",), build)

    def quad_vertex(self) -> LinearMap:
        return self._memo(("quad",), lambda: self.quad_vertex_pair()[0])

    def quad_vertex_pair(self) -> Tuple[LinearMap, LinearMap]:
        """The two expressions of the quadrivalent vertex; they must agree."""
        m = self.m
        c = named_coefficient("quad", m)
        ms = self.split(1, 1) @ self.mul(1, 1)
        cc = self.cup(1) @ self.cap(1)
        first = ms + cc.scale(c)
        second = self.h_rung2() + self.id(1, 1).scale(c)
        return first, second

    # -- rotation ---------------------------------------------------------------------
    def rotate(self, f: LinearMap) -> LinearMap:
        """For f : (a, b) -> (c, d), the rotated map (b, d) -> (a, c)."""
        if len(f.src) != 2 or len(f.tgt) != 2:
            raise ValueError("rotation needs two labels on each side")
        a, b = f.src
        c, d = f.tgt
        g = self.cup(a).tensor(self.id(b, d))
        g = tensor_all([self.id(a), f, self.id(d)]) @ g
        g = self.id(a, c).tensor(self.cap(d)) @ g
        return g

    # -- inventory -------------------------------------------------------------------
    def named_maps(self, max_label: Optional[int] = None) -> List[Tuple[str, LinearMap]]:
        """Every cached-kind intertwiner with labels up to max_label (default m)."""
        m = self.m
        top = m if max_label is None else max_label
        out: List[Tuple[str, LinearMap]] = []
        for i in range(0, top + 1):
            for j in range(0, top + 1 - i):
                out.append((f"mul({i},{j})", self.mul(i, j)))
                out.append((f"split({i},{j})", self.split(i, j)))
        for k in range(0, top + 1):
            out.append((f"cup({k})", self.cup(k)))
            out.append((f"cap({k})", self.cap(k)))
        out.append(("braid+", self.braiding(1)))
        out.append(("braid-", self.braiding(-1)))
        out.append(("quad", self.quad_vertex()))
        return out

    def dual_equivariance(self, k: int) -> Dict[str, bool]:
        """psi_k : (Lambda^k)^* -> Lambda^k and phi_k in the other direction."""
        ctx = self.ctx
        res = {}
        psi, phi = self.psi(k), self.phi(k)
        ok_psi = ok_phi = True
        for g in ctx.generators:
            x = ctx.act_on_lambda(g, k)
            xd = antipode_dual(ctx, g, k)
            ok_psi &= (psi @ xd) == (x @ psi)
            ok_phi &= (phi @ x) == (xd @ phi)
        res[f"psi({k})"] = ok_psi
        res[f"phi({k})"] = ok_phi
        return res

    def phi1_matches_phi(self) -> bool:
        return self.phi(1) == self.phi1()


_REGISTRY: Dict[int, Intertwiners] = {}


def intertwiners(m_or_ctx) -> Intertwiners:
    ctx = m_or_ctx if isinstance(m_or_ctx, RepContext) else build_context(m_or_ctx)
    hit = _REGISTRY.get(ctx.m)
    if hit is None or hit.ctx is not ctx:
        hit = Intertwiners(ctx)
        _REGISTRY[ctx.m] = hit
    return hit
