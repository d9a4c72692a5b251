from math import comb, prod

import pytest

from oweb.linmap import LinearMap, word_dim
from oweb.qratfun import ONE, Q, ZERO
from oweb.qrep import SIGMA, Generator, SizeCapError, build_context, max_dim_from_env

E1, F1, K1 = Generator("E", 1), Generator("F", 1), Generator("K", 1)


def dense(f):
    return f.to_dense()


class TestVectorRepresentation:
    def test_sigma_odd_is_minus_one(self):
        ctx = build_context(3)
        assert ctx.act_on_lambda(SIGMA, 1) == LinearMap.identity(3, (1,)).scale(-ONE)

    def test_sigma_even_swaps_last_pair(self):
        got = dense(build_context(4).act_on_lambda(SIGMA, 1))
        assert got == [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]

    def test_m2_k_eigenvalues(self):
        ctx = build_context(2)
        assert [ctx.k_eigen(1, p) for p in (1, 2)] == [Q ** 2, Q ** -2]
        assert [str(g) for g in ctx.generators] == ["K1", "Kinv1", "sigma"]

    def test_m1_has_only_sigma(self):
        assert [str(g) for g in build_context(1).generators] == ["sigma"]

    def test_odd_short_root_matrices(self):
        # positions for m = 3 are a1, u, b1
        ctx = build_context(3)
        two = Q + Q ** -1
        assert dense(ctx.act_on_lambda(F1, 1)) == [[0, 0, 0], [1, 0, 0], [0, two, 0]]
        assert dense(ctx.act_on_lambda(E1, 1)) == [[0, two, 0], [0, 0, 1], [0, 0, 0]]

    def test_even_chain(self):
        ctx = build_context(4)
        f1 = ctx.act_on_lambda(F1, 1)
        assert f1.column(0) == {1: ONE}   # F1 a1 = a2
        assert f1.column(2) == {3: ONE}   # F1 b2 = b1
        f2 = ctx.act_on_lambda(Generator("F", 2), 1)
        assert f2.column(0) == {2: ONE}   # F2 a1 = b2

    def test_bad_m(self):
        with pytest.raises(ValueError):
            build_context(0)


class TestTensorAction:
    def test_e1_on_a2_a2(self):
        # m = 5: a1 a2 u b2 b1; E1 (a2 (x) a2) = a1 (x) a2 + K1(a2) a2 (x) a1
        e = build_context(5).act_on_word(E1, (1, 1))
        assert e.column(6) == {1: ONE, 5: Q ** -2}

    def test_e1_on_u_u(self):
        e = build_context(3).act_on_word(E1, (1, 1))
        assert e.column(4) == {1: Q + Q ** -1, 3: Q + Q ** -1}

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_k_grouplike_and_sigma_involution(self, m):
        ctx = build_context(m)
        word = (1, 2)
        k = ctx.act_on_word(K1, word)
        assert k == ctx.act_on_lambda(K1, 1).tensor(ctx.act_on_lambda(K1, 2))
        s = ctx.act_on_word(SIGMA, word)
        assert s @ s == LinearMap.identity(m, word)

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_coassociativity(self, m):
        ctx = build_context(m)
        for g in ctx.generators:
            assert ctx.act_on_word(g, (1, 1, 1)) == ctx.act_on_word_right_nested(g, (1, 1, 1))

    def test_act_on_tensor_vector(self):
        ctx = build_context(5)
        out = ctx.act_on_tensor(E1, (1, 1), {6: ONE})
        assert out == {1: ONE, 5: Q ** -2}


class TestExteriorPowers:
    @pytest.mark.parametrize("m", range(1, 7))
    def test_trivial_and_determinant(self, m):
        ctx = build_context(m)
        for g in ctx.generators:
            a0 = ctx.act_on_lambda(g, 0)
            expect = ZERO if g.kind in ("E", "F") else ONE
            assert a0.entry(0, 0) == expect
        assert ctx.act_on_lambda(SIGMA, m).entry(0, 0) == -ONE

    @pytest.mark.parametrize("m", range(1, 7))
    def test_sl2_triples(self, m):
        ctx = build_context(m)
        for k in range(0, m + 1):
            for i in ctx.ef_indices:
                e = ctx.act_on_lambda(Generator("E", i), k)
                f = ctx.act_on_lambda(Generator("F", i), k)
                kk = ctx.act_on_lambda(Generator("K", i), k)
                ki = ctx.act_on_lambda(Generator("Kinv", i), k)
                qi = ctx.q_i(i)
                assert e @ f - f @ e == (kk - ki).scale(ONE / (qi - qi ** -1))
                assert kk @ ki == LinearMap.identity(m, (k,))

    def test_k_conjugation(self):
        ctx = build_context(5)
        for k in range(0, 6):
            for i in ctx.ef_indices:
                e = ctx.act_on_lambda(Generator("E", i), k)
                kk = ctx.act_on_lambda(Generator("K", i), k)
                ki = ctx.act_on_lambda(Generator("Kinv", i), k)
                qi = ctx.q_i(i)
                assert kk @ e @ ki == e.scale(qi ** 2)


class TestWeights:
    def test_vector_weights(self):
        assert build_context(3).weight_multiplicities((1,)) == {(1,): 1, (0,): 1, (-1,): 1}

    @pytest.mark.parametrize("m", [4, 5, 6])
    def test_highest_weight_multiplicity_one(self, m):
        ctx = build_context(m)
        for k in range(1, m // 2 + 1):
            top = tuple([1] * k + [0] * (m // 2 - k))
            assert ctx.weight_multiplicities((k,))[top] == 1

    def test_total_count(self):
        ctx = build_context(5)
        word = (1, 2, 3)
        assert sum(ctx.weight_multiplicities(word).values()) == prod(comb(5, k) for k in word)


class TestHomDim:
    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_examples(self, m):
        ctx = build_context(m)
        assert ctx.hom_dim((1, 1), (1, 1)) == 3
        assert ctx.hom_dim((1,), (1, 1)) == 0
        assert ctx.hom_dim((), (1, 1)) == 1
        assert ctx.hom_dim((), (2,)) == 0

    def test_m3_top_labels(self):
        assert build_context(3).hom_dim((3, 3), (2,)) == 0

    def test_frozen_table_m4(self):
        ctx = build_context(4)
        table = {((2,), (2,)): 1, ((1, 1), (2,)): 1, ((2,), (1, 1, 2)): 3, ((), (1, 1, 1, 1)): 3,
                 ((1,), (1, 2)): 1, ((1, 1, 1), (1, 1, 1)): 15}
        for (s, t), d in table.items():
            assert ctx.hom_dim(s, t) == d
            assert ctx.hom_dim_classical(s, t) == d

    def test_size_cap(self):
        with pytest.raises(SizeCapError, match="above the cap"):
            build_context(5).hom_dim((1, 1, 1), (1, 1, 1), max_dim=100)

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("OWEB_MAX_DIM", "1234")
        assert max_dim_from_env() == 1234
        monkeypatch.delenv("OWEB_MAX_DIM")
        assert max_dim_from_env() == 65536


class TestEquivarianceCheck:
    def test_identity(self):
        ctx = build_context(4)
        assert ctx.equivariance_check(LinearMap.identity(4, (1, 2)))

    def test_elementary_matrix_fails(self):
        ctx = build_context(4)
        f = LinearMap(4, (1,), (1,), {0: {0: ONE}})
        assert not ctx.equivariance_check(f)
        assert ctx.failing_generators(f)

    def test_word_dim(self):
        assert word_dim(4, (2, 5)) == 0
        assert word_dim(4, (2, 1)) == 24
