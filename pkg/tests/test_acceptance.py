"""The nine acceptance criteria, each run exactly and reported on one line.

Every test prints ``ACCEPTANCE <n> PASS|FAIL <title> (<seconds>s) <detail>``
directly to the terminal before asserting, so the verdict is visible even
under output capture.  Results from criteria 1-7 are kept so that the
integrality criterion can reuse them instead of recomputing.
"""

from __future__ import annotations

import random
import time
from math import comb


from _webgen import random_nested
from oweb.classical import (antisymmetrizer, clasp, classical_crossing_check,
                            doublecoset_recursion_check, flip, integrality_scan, specialize)
from oweb.extalg import a_pos, ambiguity_check, basis, presentation_relations, u_pos
from oweb.intertwiners import intertwiners
from oweb.linmap import LinearMap
from oweb.qcombinat import COEFFICIENTS, named_coefficient, two
from oweb.qratfun import ONE
from oweb.qrep import SIGMA, Generator, build_context
from oweb.weblang import (RELATIONS, WebTypeError, canonical, evaluate, parse, print_expr,
                          relation_suite, typecheck)

M_RANGE = range(1, 6)
DEFINING = ("1a_circle", "1b_lollipop_cap", "1b_lollipop_cup", "1c_bigon",
            "1d_associativity", "1e_ih")
BRAID = tuple(r.name for r in RELATIONS if r.name.startswith(("braid", "bmw", "reidemeister", "kink")))
DERIVED = tuple(r.name for r in RELATIONS if r.name not in DEFINING + BRAID)

# shared between criteria: suite records and every map whose integrality is checked
_STORE = {"records": {}, "maps": []}


def _report(capsys, n: int, title: str, ok: bool, seconds: float, detail: str = ""):
    line = f"ACCEPTANCE {n} {'PASS' if ok else 'FAIL'} {title} ({seconds:.2f}s)"
    if detail:
        line += f" {detail}"
    with capsys.disabled():
        print("\n" + line)


def _suite(m: int, names):
    key = (m, names)
    if key not in _STORE["records"]:
        _STORE["records"][key] = relation_suite(build_context(m), max_dim=1 << 20, names=names)
    return _STORE["records"][key]


def _bad(records):
    return [f"{r.relation}{r.params}:{r.status}" for r in records
            if r.status not in ("pass", "degenerate")]


# ---------------------------------------------------------------------------


def test_criterion_1_defining_relations(capsys):
    t0 = time.perf_counter()
    problems = []
    for m in M_RANGE:
        recs = _suite(m, DEFINING)
        problems += [f"m={m} {b}" for b in _bad(recs)]
        # the regularized IH coefficients at m = 2k and m = 2k + 2 are real checks
        for k in (m // 2, m // 2 - 1):
            if m % 2 == 0 and k >= 1:
                hit = [r for r in recs if r.relation == "1e_ih" and r.params.get("k") == k]
                if len(hit) != 1 or hit[0].status != "pass":
                    problems.append(f"m={m} 1e_ih k={k} not a passing instance")
    m1 = {(r.relation, r.params.get("k")) for r in _suite(1, DEFINING) if r.status == "pass"}
    if m1 != {("1a_circle", None), ("1e_ih", 1)}:
        problems.append(f"m=1 non-degenerate set {sorted(m1, key=str)}")
    dt = time.perf_counter() - t0
    ok = not problems and dt < 120
    _report(capsys, 1, "defining relations m=1..5", ok, dt, "; ".join(problems[:5]))
    assert not problems
    assert dt < 120


def test_criterion_2_derived_relations(capsys):
    t0 = time.perf_counter()
    problems = []
    for m in M_RANGE:
        problems += [f"m={m} {b}" for b in _bad(_suite(m, DERIVED))]
        for k in range(1, m + 1):
            if named_coefficient("reverse_bigon", m, k).eval_at_one() != m - k:
                problems.append(f"reverse_bigon({m},{k}) at q=1")
        for k in range(0, m + 1):
            loop = evaluate(m, f"cup({k});cap({k})").scalar_value()
            if loop != named_coefficient("loopk", m, k):
                problems.append(f"thick circle m={m} k={k}")
            if loop.eval_at_one() != comb(m, k):
                problems.append(f"thick circle at q=1 m={m} k={k}")
        for k in range(0, m):
            if named_coefficient("tau", m, k) != two(m - 2 * k) / two(m - 2 * k - 2):
                problems.append(f"tau({m},{k}) formula")
        if named_coefficient("gamma", m) != two(m - 2) / two(m):
            problems.append(f"gamma({m}) formula")
        if m >= 2:
            tri = [r for r in _suite(m, DERIVED) if r.relation == "triangle_top"]
            if len(tri) != 1 or tri[0].status != "pass" or tri[0].lhs_nnz != 0:
                problems.append(f"m={m} k=m triangle is not zero")
    dt = time.perf_counter() - t0
    ok = not problems
    _report(capsys, 2, "derived relations m<=5", ok, dt, "; ".join(problems[:5]))
    assert not problems


def test_criterion_3_braid_suite(capsys):
    t0 = time.perf_counter()
    problems = []
    for m in M_RANGE:
        recs = _suite(m, BRAID)
        problems += [f"m={m} {b}" for b in _bad(recs)]
        names = {r.relation for r in recs if r.status == "pass"}
        missing = set(BRAID) - names
        if m == 1:
            # the vertex kinks pass through Lambda^2 = 0 and are degenerate there
            missing -= {"kink_vertex_pos", "kink_vertex_neg"}
        if missing:
            problems.append(f"m={m} no passing instance of {sorted(missing)}")
        if not any(r.params.get("webs") for r in recs if r.status == "pass"):
            problems.append(f"m={m} crossing-expanded variants missing")
    dt = time.perf_counter() - t0
    ok = not problems and dt < 60
    _report(capsys, 3, "braid suite m<=5", ok, dt, "; ".join(problems[:5]))
    assert not problems
    assert dt < 60


def test_criterion_4_exterior_algebra(capsys):
    t0 = time.perf_counter()
    problems = []
    for m in range(1, 7):
        rep = ambiguity_check(m)
        if not rep.ok:
            problems.append(f"m={m} unresolved {[w for w, _, ok in rep.entries if not ok][:3]}")
        if m % 2 == 1:
            word = (u_pos(m), u_pos(m), a_pos(m, 1)) if m >= 3 else None
            if word is not None and not any(w == word and ok for w, _, ok in rep.entries):
                problems.append(f"m={m} (uu)a_1 ambiguity not covered")
        for k in range(0, m + 2):
            if len(basis(m, k)) != comb(m, k):
                problems.append(f"m={m} basis count k={k}")
        for name, val in presentation_relations(m):
            if not val.is_zero():
                problems.append(f"m={m} presentation {name} -> {val}")
    dt = time.perf_counter() - t0
    ok = not problems and dt < 30
    _report(capsys, 4, "exterior algebra m<=6", ok, dt, "; ".join(problems[:5]))
    assert not problems
    assert dt < 30


def _sigma_partner(ctx, g: Generator) -> Generator:
    """sigma g sigma: swaps the last two indices for even m >= 4, inverts K for m = 2."""
    m, n = ctx.m, ctx.n
    if g.kind == "sigma" or m % 2 == 1:
        return g
    if m == 2 and g.kind in ("K", "Kinv"):
        return Generator("Kinv" if g.kind == "K" else "K", g.index)
    if m >= 4 and g.index in (n - 1, n):
        return Generator(g.kind, 2 * n - 1 - g.index)
    return g


def test_criterion_5_equivariance(capsys):
    t0 = time.perf_counter()
    problems = []
    for m in M_RANGE:
        itw = intertwiners(m)
        ctx = itw.ctx
        for name, f in itw.named_maps():
            _STORE["maps"].append((m, name, f))
            if not ctx.equivariance_check(f):
                problems.append(f"m={m} {name}: {ctx.failing_generators(f)}")
        for k in range(0, m + 1):
            for name, good in itw.dual_equivariance(k).items():
                if not good:
                    problems.append(f"m={m} {name}")
            if itw.phi(k) @ itw.psi(k) != LinearMap.identity(m, (k,)):
                problems.append(f"m={m} phi({k}) psi({k}) != id")
            _STORE["maps"] += [(m, f"psi({k})", itw.psi(k)), (m, f"phi({k})", itw.phi(k))]
            s = ctx.act_on_lambda(SIGMA, k)
            if s @ s != LinearMap.identity(m, (k,)):
                problems.append(f"m={m} sigma^2 on Lambda^{k}")
            for g in ctx.generators:
                if s @ ctx.act_on_lambda(g, k) @ s != ctx.act_on_lambda(_sigma_partner(ctx, g), k):
                    problems.append(f"m={m} sigma conjugation of {g} on Lambda^{k}")
            for i in ctx.ef_indices:
                e = ctx.act_on_lambda(Generator("E", i), k)
                f = ctx.act_on_lambda(Generator("F", i), k)
                kk = ctx.act_on_lambda(Generator("K", i), k)
                ki = ctx.act_on_lambda(Generator("Kinv", i), k)
                qi = ctx.q_i(i)
                if e @ f - f @ e != (kk - ki).scale(ONE / (qi - qi ** -1)):
                    problems.append(f"m={m} sl2 relation i={i} on Lambda^{k}")
        if not itw.phi1_matches_phi():
            problems.append(f"m={m} explicit phi_1 differs from inverse of psi_1")
    dt = time.perf_counter() - t0
    ok = not problems and dt < 120
    _report(capsys, 5, "equivariance m<=5", ok, dt, "; ".join(problems[:5]))
    assert not problems
    assert dt < 120


def test_criterion_6_classical_layer(capsys):
    t0 = time.perf_counter()
    problems = []
    for m in range(1, 5):
        itw = intertwiners(m)
        if specialize(itw.braiding(1)) != flip(m) or specialize(itw.braiding(-1)) != flip(m):
            problems.append(f"m={m} braiding at q=1 is not the flip")
        if not classical_crossing_check(m):
            problems.append(f"m={m} classical crossing")
        for k in range(1, m + 1):
            a = antisymmetrizer(m, k)
            if a @ a != a or a.rank() != comb(m, k):
                problems.append(f"m={m} k={k} antisymmetrizer not an idempotent of rank C(m,k)")
            c = clasp(m, k)
            _STORE["maps"].append((m, f"clasp({k})", c))
            if specialize(c) != a:
                problems.append(f"m={m} k={k} clasp at q=1")
        if not antisymmetrizer(m, m + 1).is_zero():
            problems.append(f"m={m} a_(m+1) nonzero")
        if not clasp(m, m + 1).is_zero():
            problems.append(f"m={m} clasp(m+1) nonzero")
        for k in range(2, m + 1):
            if not doublecoset_recursion_check(m, k):
                problems.append(f"m={m} k={k} double coset recursion")
    dt = time.perf_counter() - t0
    ok = not problems and dt < 60
    _report(capsys, 6, "classical layer m<=4", ok, dt, "; ".join(problems[:5]))
    assert not problems
    assert dt < 60


HOM_WORDS = [((), (1, 1)), ((1, 1), (1, 1)), ((1,), (1,)), ((1,), (2,)), ((2,), (2,)),
             ((1,), (1, 2)), ((1, 1), (2,)), ((2,), (1, 1, 2)), ((), (1, 1, 1, 1)),
             ((1,), (1, 1)), ((), (1,)), ((1, 1), (1, 1, 1)), ((2,), (1,)), ((), (2,))]
ODD_PARITY = [((1,), (1, 1)), ((), (1,)), ((1, 1), (1, 1, 1)), ((2,), (1,)), ((1,), (2, 2))]


def test_criterion_7_hom_dimensions(capsys):
    t0 = time.perf_counter()
    problems = []
    for m in M_RANGE:
        ctx = build_context(m)
        if m >= 3 and ctx.hom_dim((1, 1), (1, 1)) != 3:
            problems.append(f"m={m} dim End(V(x)V)")
        for s, t in ODD_PARITY:
            if ctx.hom_dim(s, t) != 0:
                problems.append(f"m={m} odd parity {s}->{t}")
        if ctx.hom_dim((), (2,)) != 0:
            problems.append(f"m={m} Hom(Lambda^0, Lambda^2)")
        for s, t in HOM_WORDS:
            dq, d1 = ctx.hom_dim(s, t), ctx.hom_dim_classical(s, t)
            if dq != d1:
                problems.append(f"m={m} {s}->{t}: {dq} over Q(q), {d1} at q=1")
    if build_context(3).hom_dim((3, 3), (2,)) != 0:
        problems.append("m=3 (3,3)->(2)")
    dt = time.perf_counter() - t0
    ok = not problems and dt < 60
    _report(capsys, 7, "hom dimensions m<=5", ok, dt, "; ".join(problems[:5]))
    assert not problems
    assert dt < 60


def test_criterion_8_integrality(capsys):
    t0 = time.perf_counter()
    problems = []
    groups = (DEFINING, DERIVED, BRAID)
    for m in M_RANGE:
        for names in groups:
            for r in _suite(m, names):
                if r.irregular:
                    problems.append(f"m={m} {r.relation}{r.params}: {r.irregular} poles")
        bad = integrality_scan(m)
        problems += [f"m={m} {b}" for b in bad]
    if not _STORE["maps"]:
        for m in M_RANGE:
            _STORE["maps"] += [(m, n, f) for n, f in intertwiners(m).named_maps()]
    for m, name, f in _STORE["maps"]:
        if f.irregular_entries():
            problems.append(f"m={m} {name} has poles at q=1")
    for m in range(1, 9):
        for name, spec in COEFFICIENTS.items():
            for k in (range(0, m + 1) if spec.uses_k else [0]):
                try:
                    val = named_coefficient(name, m, k)
                except ValueError:
                    continue  # outside the coefficient's own range
                if not val.is_regular_at_one():
                    problems.append(f"{name}({m},{k}) has a pole at q=1")
    dt = time.perf_counter() - t0
    ok = not problems
    _report(capsys, 8, "integrality at q=1", ok, dt, "; ".join(problems[:5]))
    assert not problems


GRAMMAR_EXAMPLES = [
    ("cup(1);cap(1)", (), ()),
    ("m(1,2);s(1,2)", (1, 2), (1, 2)),
    ("x+;x+;x-", (1, 1), (1, 1)),
    ("m(2,3)", (2, 3), (5,)),
    ("s(2,3)", (5,), (2, 3)),
    ("[q+q^-1]id(1)*id(1)*id(2) - cap(1)*id(2);cup(1)*id(2)", (1, 1, 2), (1, 1, 2)),
]


def test_criterion_9_parser_round_trip(capsys):
    t0 = time.perf_counter()
    problems = []
    rng = random.Random(20260)
    for i in range(1000):
        e, s, t = random_nested(rng)
        text = print_expr(e)
        back = parse(text)
        if back != canonical(e):
            problems.append(f"#{i} {text}")
        elif print_expr(back) != text:
            problems.append(f"#{i} unstable print {text}")
        elif typecheck(back) != (tuple(x for x in s if x), tuple(x for x in t if x)):
            problems.append(f"#{i} type of {text}")
    for text, src, tgt in GRAMMAR_EXAMPLES:
        if typecheck(parse(text)) != (src, tgt):
            problems.append(f"{text!r} has type {typecheck(parse(text))}")
    try:
        typecheck(parse("m(1,1);cup(1)"))
        problems.append("m(1,1);cup(1) typechecked")
    except WebTypeError:
        pass
    dt = time.perf_counter() - t0
    ok = not problems and dt < 5
    _report(capsys, 9, "parser round trip", ok, dt, "; ".join(problems[:5]))
    assert not problems
    assert dt < 5
