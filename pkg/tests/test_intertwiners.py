import pytest

from oweb.extalg import basis
from oweb.intertwiners import intertwiners, tensor_all
from oweb.linmap import LinearMap
from oweb.qcombinat import named_coefficient, qint
from oweb.qratfun import ONE, Q


@pytest.fixture(params=range(1, 6), ids=lambda m: f"m{m}")
def itw(request):
    return intertwiners(request.param)


class TestPhi1:
    def test_even_values(self):
        i4 = intertwiners(4)
        assert [i4.phi1_scalar(p) for p in (1, 2, 3, 4)] == [ONE, -Q ** 2, -Q ** 2, Q ** 4]

    def test_odd_values(self):
        # forced by equivariance for odd m; a_1 still maps to b_1^*
        i3 = intertwiners(3)
        assert [i3.phi1_scalar(p) for p in (1, 2, 3)] == [ONE, -qint(2), Q ** 2]
        i5 = intertwiners(5)
        assert i5.phi1_scalar(1) == ONE
        assert i5.phi1_scalar(2) == -Q ** 2
        assert i5.phi1_scalar(3) == qint(2) * Q ** 2
        assert intertwiners(1).phi1_scalar(1) == Q ** -1 + Q ** -3

    def test_a1_goes_to_b1_star(self, itw):
        if itw.m == 1:
            pytest.skip("V is spanned by u alone")
        assert itw.phi1().column(0) == {itw.m - 1: ONE}

    def test_agrees_with_inverse_of_psi(self, itw):
        assert itw.phi1_matches_phi()


class TestMulSplit:
    def test_top_monomials_multiply_with_coefficient_one(self):
        i5 = intertwiners(5)
        for i in range(1, 5):
            for j in range(1, 5 - i + 1):
                f = i5.mul(i, j)
                src = basis(5, i).index(tuple(range(1, i + 1))) * len(basis(5, j)) \
                    + basis(5, j).index(tuple(range(i + 1, i + j + 1)))
                tgt = basis(5, i + j).index(tuple(range(1, i + j + 1)))
                assert f.entry(tgt, src) == ONE

    def test_above_m_is_zero(self):
        assert intertwiners(3).mul(2, 2).is_zero()
        assert intertwiners(3).split(2, 2).is_zero()

    def test_label_zero(self, itw):
        for k in range(0, itw.m + 1):
            assert itw.split(0, k) == itw.id(k)
            assert itw.mul(k, 0) == itw.id(k)

    def test_bigon(self, itw):
        for k in range(1, itw.m + 1):
            assert itw.mul(1, k - 1) @ itw.split(1, k - 1) == itw.id(k).scale(
                named_coefficient("bigon", itw.m, k))

    def test_associativity(self, itw):
        m = itw.m
        for i in range(1, m):
            for j in range(1, m - i + 1):
                for k in range(1, m - i - j + 1):
                    lhs = itw.mul(i + j, k) @ itw.mul(i, j).tensor(itw.id(k))
                    rhs = itw.mul(i, j + k) @ itw.id(i).tensor(itw.mul(j, k))
                    assert lhs == rhs

    def test_rotation_direction_irrelevant(self, itw):
        for k in range(0, itw.m + 1):
            for i in range(0, k + 1):
                assert itw.split(i, k - i) == itw.split_other_rotation(i, k - i)


class TestCupCap:
    def test_circles(self, itw):
        for k in range(0, itw.m + 1):
            loop = (itw.cap(k) @ itw.cup(k)).scalar_value()
            assert loop == named_coefficient("loopk", itw.m, k)
        assert (itw.cap(1) @ itw.cup(1)).scalar_value() == named_coefficient("loop1", itw.m)

    def test_zigzag(self, itw):
        for k in range(0, itw.m + 1):
            assert itw.id(k).tensor(itw.cap(k)) @ itw.cup(k).tensor(itw.id(k)) == itw.id(k)
            assert itw.cap(k).tensor(itw.id(k)) @ itw.id(k).tensor(itw.cup(k)) == itw.id(k)

    def test_cups_nonzero(self, itw):
        for k in range(0, itw.m + 1):
            assert not itw.cup(k).is_zero()

    def test_psi_inverse(self, itw):
        for k in range(0, itw.m + 1):
            assert itw.phi(k) @ itw.psi(k) == LinearMap.identity(itw.m, (k,))
            assert itw.psi(k) @ itw.phi(k) == LinearMap.identity(itw.m, (k,))

    def test_dual_maps_equivariant(self, itw):
        for k in range(0, itw.m + 1):
            assert all(itw.dual_equivariance(k).values())


class TestBraiding:
    def test_inverse(self, itw):
        assert itw.braiding(1) @ itw.braiding(-1) == itw.id(1, 1)

    def test_projector_and_web_forms_agree(self, itw):
        assert itw.braiding(1) == itw.braiding_from_webs(1)
        assert itw.braiding(-1) == itw.braiding_from_webs(-1)

    def test_skein(self, itw):
        diff = itw.braiding(1) - itw.braiding(-1)
        cc = itw.cup(1) @ itw.cap(1)
        assert diff == (itw.id(1, 1) - cc).scale(Q ** 2 - Q ** -2)

    def test_minimal_polynomial(self, itw):
        b, i = itw.braiding(1), itw.id(1, 1)
        m = itw.m
        prod = (b - i.scale(Q ** 2)) @ (b + i.scale(Q ** -2)) @ (b - i.scale(Q ** (2 - 2 * m)))
        assert prod.is_zero()

    def test_reidemeister_three(self, itw):
        b, i = itw.braiding(1), itw.id(1)
        left = b.tensor(i) @ i.tensor(b) @ b.tensor(i)
        right = i.tensor(b) @ b.tensor(i) @ i.tensor(b)
        assert left == right

    def test_twist(self, itw):
        m = itw.m
        twist = itw.id(1).tensor(itw.cap(1)) @ itw.braiding(1).tensor(itw.id(1)) \
            @ itw.id(1).tensor(itw.cup(1))
        assert twist == itw.id(1).scale(Q ** (2 * m - 2))


class TestQuad:
    def test_two_expressions_agree(self, itw):
        a, b = itw.quad_vertex_pair()
        assert a == b

    def test_rotation_invariant(self, itw):
        assert itw.rotate(itw.quad_vertex()) == itw.quad_vertex()


def test_all_named_maps_equivariant(itw):
    ctx = itw.ctx
    for name, f in itw.named_maps():
        assert ctx.equivariance_check(f), name


def test_tensor_all():
    i3 = intertwiners(3)
    f = tensor_all([i3.id(1), i3.cup(1), i3.id(2)])
    assert (f.src, f.tgt) == ((1, 2), (1, 1, 1, 2))
