import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _webgen import layer_from, random_nested
from oweb.intertwiners import intertwiners
from oweb.qcombinat import named_coefficient
from oweb.qratfun import ONE, Q
from oweb.qrep import build_context
from oweb.weblang import (RELATIONS, Cap, Compose, CrossPos, Cup, Id, Merge, Scale, Split, Sum,
                          Tensor, WebSyntaxError, WebTypeError, canonical, evaluate,
                          expand_crossings, max_word_dim, parse, print_expr, relation_envs,
                          relation_suite, render, run_instance, structurally_zero,
                          typecheck)


class TestParse:
    def test_precedence(self):
        e = parse("[q]m(1,1);s(1,1) + cup(1)*id(0) - x+")
        assert e == Sum((Compose(Scale(Q, Merge(1, 1)), Split(1, 1)),
                         Tensor(Cup(1), Id(0)), Scale(-ONE, CrossPos())))

    def test_tensor_binds_tighter_than_compose(self):
        assert parse("id(1)*cup(1);x+*id(1)") == Compose(Tensor(Id(1), Cup(1)),
                                                         Tensor(CrossPos(), Id(1)))

    def test_parentheses(self):
        assert parse("((id(1)))") == Id(1)

    @pytest.mark.parametrize("text,pos", [("m(1,", 4), ("foo", 0), ("id(1) +", 7),
                                          ("[q id(1)", 0), ("id(1))", 5)])
    def test_syntax_errors_carry_position(self, text, pos):
        with pytest.raises(WebSyntaxError) as info:
            parse(text)
        assert info.value.pos == pos


class TestPrint:
    def test_unit_scale_dropped(self):
        assert print_expr(Scale(ONE, Cup(1))) == "cup(1)"

    def test_nested_sums_flatten(self):
        e = Sum((Sum((Id(1), Id(1))), Sum((Scale(Q, Id(1)),))))
        assert print_expr(e) == "id(1) + id(1) + [q]id(1)"
        assert canonical(e) == Sum((Id(1), Id(1), Scale(Q, Id(1))))

    def test_nested_scales_merge(self):
        assert canonical(Scale(Q, Scale(Q ** -1, Cap(2)))) == Cap(2)

    def test_grouping(self):
        e = Tensor(Compose(Cup(1), Cap(1)), Id(1))
        assert print_expr(e) == "(cup(1);cap(1))*id(1)"
        assert parse(print_expr(e)) == e


class TestTypecheck:
    @pytest.mark.parametrize("text,src,tgt", [
        ("cup(1);cap(1)", (), ()),
        ("m(1,2);s(1,2)", (1, 2), (1, 2)),
        ("x+;x+;x-", (1, 1), (1, 1)),
        ("m(2,1)", (2, 1), (3,)),
        ("s(2,1)", (3,), (2, 1)),
        ("id(0)*cup(0)", (), ()),
    ])
    def test_words(self, text, src, tgt):
        assert typecheck(parse(text)) == (src, tgt)

    def test_composition_mismatch(self):
        with pytest.raises(WebTypeError, match="composition mismatch"):
            typecheck(parse("m(1,1);cup(1)"))

    def test_sum_mismatch(self):
        with pytest.raises(WebTypeError, match="sum mismatch"):
            typecheck(parse("id(1) + id(2)"))

    def test_internal_words_counted(self):
        assert max_word_dim(4, parse("x+")) == 4 ** 4 * 6
        assert max_word_dim(4, parse("cup(3)")) == 6 * 4 * 4 * 6  # through (2,1,1,2)


class TestEvaluate:
    def test_m1_circle(self):
        assert evaluate(1, "cup(1);cap(1)").scalar_value() == ONE

    def test_thick_circles(self):
        for m in range(1, 6):
            for k in range(0, m + 1):
                got = evaluate(m, f"cup({k});cap({k})").scalar_value()
                assert got == named_coefficient("loopk", m, k)

    def test_ih_instance(self):
        env = {"m": 4, "k": 2}
        rel = next(r for r in RELATIONS if r.name == "1e_ih")
        lhs, rhs = evaluate(4, render(rel.lhs, env)), evaluate(4, render(rel.rhs, env))
        assert (lhs - rhs).is_zero()
        assert not lhs.is_zero()

    def test_zero_object(self):
        f = evaluate(2, "m(1,2);s(2,1)")  # routed through Lambda^3 = 0
        assert f.is_zero() and f.shape == (2, 2)
        assert evaluate(3, "s(2,2);m(2,2)").shape == (0, 0)
        assert evaluate(2, "cup(3);cap(3)").is_zero()

    def test_crossing_expansion(self):
        for m in (2, 3, 4):
            for text in ("x+", "x-", "x+;x-*id(0)"):
                e = parse(text)
                assert evaluate(m, expand_crossings(e, m)) == evaluate(m, e)

    def test_generators_equivariant(self):
        itw = intertwiners(4)
        for text in ("m(1,2)", "s(2,1)", "cup(2)", "cap(3)", "x-"):
            assert itw.ctx.equivariance_check(evaluate(4, text))

    def test_general_merges_are_conservative(self):
        # both merge orders into Lambda^3 agree
        for m in (3, 4):
            atom = evaluate(m, "(m(1,1)*id(1));m(2,1)")
            via = evaluate(m, "(id(1)*m(1,1));m(1,2)")
            assert atom == via


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_functoriality(seed, m):
    rng = random.Random(seed)
    a, s, t = random_nested(rng, top=2, depth=2, max_len=2)
    b, t2 = layer_from(rng, tuple(x for x in t if x), 2)
    assert evaluate(m, Compose(a, b)) == evaluate(m, b) @ evaluate(m, a)
    c, _, _ = random_nested(rng, top=2, depth=1, max_len=2)
    assert evaluate(m, Tensor(a, c)) == evaluate(m, a).tensor(evaluate(m, c))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_interchange_law(seed, m):
    rng = random.Random(seed)
    a, sa, ta = random_nested(rng, top=2, depth=1, max_len=2)
    b, sb, tb = random_nested(rng, top=2, depth=1, max_len=2)
    left = Compose(Tensor(a, _ids(sb)), Tensor(_ids(ta), b))
    right = Compose(Tensor(_ids(sa), b), Tensor(a, _ids(tb)))
    assert evaluate(m, left) == evaluate(m, right)


def _ids(word):
    if not word:
        return Id(0)
    out = Id(word[0])
    for k in word[1:]:
        out = Tensor(out, Id(k))
    return out


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_round_trip(seed):
    e, _, _ = random_nested(random.Random(seed))
    assert parse(print_expr(e)) == canonical(e)


class TestSuite:
    def test_m3_all_pass(self):
        recs = relation_suite(3)
        assert {r.status for r in recs} <= {"pass", "degenerate"}
        assert sum(r.status == "degenerate" for r in recs) == 4

    def test_m1_non_degenerate(self):
        recs = relation_suite(1, names=("1a_circle", "1b_lollipop_cap", "1b_lollipop_cup",
                                        "1c_bigon", "1d_associativity", "1e_ih"))
        live = sorted((r.relation, r.params.get("k")) for r in recs if r.status == "pass")
        assert live == [("1a_circle", None), ("1e_ih", 1)]

    def test_record_schema(self):
        rec = relation_suite(2, names=("1a_circle",))[0].to_json()
        assert list(rec) == ["relation", "params", "status", "lhs_nnz", "rhs_nnz", "residual_nnz"]
        assert rec["params"] == {"m": 2} and rec["status"] == "pass"

    def test_size_cap_skips(self):
        recs = relation_suite(4, max_dim=10, names=("reidemeister_3",))
        assert recs and all(r.status == "skipped" for r in recs)

    def test_a_wrong_relation_fails(self):
        rec = run_instance(build_context(3), "bad", {"m": 3}, "cup(1);cap(1)", "[3]id(0)")
        assert rec.status == "fail" and rec.residual_nnz == 1

    def test_parameter_ranges(self):
        envs = [e for r, e in relation_envs(4) if r.name == "associativity_general"]
        assert {(e["i"], e["j"], e["l"]) for e in envs} == {
            (i, j, l) for i in range(1, 5) for j in range(1, 5) for l in range(1, 5)
            if i + j + l <= 4}

    def test_render(self):
        assert render("m({k},{k+1})", {"m": 5, "k": 2}) == "m(2,3)"
        assert render("[$bigon(k)]id({k})", {"m": 4, "k": 2}) == "[(q^2 + q^-2)]id(2)"
        assert render("[$bigon(k)]id({k})", {"m": 4, "k": 2}, coefficients=False) == "[(1)]id(2)"

    def test_structural_zero(self):
        assert structurally_zero(parse("cup(4);cap(4)"), 3)
        assert structurally_zero(parse("[0]id(1)"), 3)
        assert not structurally_zero(parse("cup(3);cap(3)"), 3)
