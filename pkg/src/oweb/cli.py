"""Command-line front end: ``oweb verify | eval | dim | dump``.

Exit codes: 0 when everything executed passed, 1 when a check failed,
2 for usage errors and size-cap refusals.  Reports are built as JSON
first; the human table is rendered from the same records.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from math import comb
from typing import List, Optional, Sequence

from . import __version__
from .classical import (
    DEFAULT_CLASSICAL_MAX_M,
    antisymmetrizer,
    clasp,
    classical_crossing_check,
    classical_equivariance,
    doublecoset_recursion_check,
    flip,
    integrality_scan,
    specialize,
)
from .extalg import ambiguity_check, basis, presentation_relations
from .intertwiners import intertwiners
from .linmap import LinearMap, SpecializationError, word_dim
from .qcombinat import COEFFICIENTS, identity_checks, named_coefficient, raw_coefficient
from .qratfun import format_ratfun
from .qrep import SizeCapError, build_context, max_dim_from_env
from .weblang import (WebSyntaxError, WebTypeError, evaluate, max_word_dim, parse,
                      relation_suite, typecheck)

SUITES = ("relations", "extalg", "classical", "coefficients", "all")
STATUSES = ("pass", "fail", "degenerate", "skipped")
OPS = ("id", "mul", "split", "cup", "cap", "psi", "phi", "phi1", "braiding",
       "braiding_inv", "quad", "clasp")


class UsageError(Exception):
    pass


def _rec(suite: str, relation: str, params: dict, status: str, **extra) -> dict:
    out = {"suite": suite, "relation": relation, "params": params, "status": status}
    out.update(extra)
    return out


# ---------------------------------------------------------------------------
# suites


def suite_relations(m: int, max_dim: int) -> List[dict]:
    ctx = build_context(m)
    out = []
    for r in relation_suite(ctx, max_dim=max_dim):
        d = r.to_json()
        out.append({"suite": "relations", **d})
    return out


def suite_extalg(m: int, max_dim: int) -> List[dict]:
    out = []
    p = {"m": m}
    if m ** 3 > max_dim:
        msg = f"{m ** 3} overlap words exceed the cap {max_dim}"
        return [_rec("extalg", "ambiguities", p, "skipped", message=msg),
                _rec("extalg", "presentation", p, "skipped", message=msg),
                _rec("extalg", "basis_counts", p, "skipped", message=msg)]
    rep = ambiguity_check(m)
    for cls, (total, good) in sorted(rep.classes.items()):
        out.append(_rec("extalg", "ambiguity", {"m": m, "class": cls},
                        "pass" if good == total else "fail", words=total, resolved=good))
    for name, val in presentation_relations(m):
        out.append(_rec("extalg", "presentation", {"m": m, "rel": name},
                        "pass" if val.is_zero() else "fail"))
    counts_ok = all(len(basis(m, k)) == comb(m, k) for k in range(0, m + 2))
    out.append(_rec("extalg", "basis_counts", p, "pass" if counts_ok else "fail"))
    return out


def suite_coefficients(m: int, max_dim: int) -> List[dict]:
    out = []
    rep = identity_checks()
    out.append(_rec("coefficients", "identities", {}, "pass" if rep.ok else "fail"))
    for name, spec in sorted(COEFFICIENTS.items()):
        ks = range(0, m + 1) if spec.uses_k else [0]
        for k in ks:
            params = {"m": m, "k": k} if spec.uses_k else {"m": m}
            if spec.uses_k and comb(m, k) > max_dim:
                out.append(_rec("coefficients", name, params, "skipped",
                                message=f"Lambda^{k} has dimension above the cap"))
                continue
            val = named_coefficient(name, m, k)
            raw = raw_coefficient(name, m, k)
            ok = val.is_regular_at_one() and (raw is None or raw == val)
            out.append(_rec("coefficients", name, params, "pass" if ok else "fail",
                            value=format_ratfun(val)))
    return out


def suite_classical(m: int, max_dim: int, max_k: Optional[int]) -> List[dict]:
    out = []
    p = {"m": m}
    # the crossing check needs V^(x)4 (x) Lambda^2 for the braiding projectors
    if word_dim(m, (1, 1, 1, 1, 2)) > max_dim:
        msg = f"braiding construction exceeds the cap {max_dim}"
        out.append(_rec("classical", "crossing", p, "skipped", message=msg))
        out.append(_rec("classical", "flip", p, "skipped", message=msg))
        out.append(_rec("classical", "integrality", p, "skipped", message=msg))
        out.append(_rec("classical", "equivariance_q1", p, "skipped", message=msg))
    else:
        itw = intertwiners(m)
        try:
            ok_flip = specialize(itw.braiding(1)) == flip(m)
        except SpecializationError:
            ok_flip = False
        out.append(_rec("classical", "flip", p, "pass" if ok_flip else "fail"))
        out.append(_rec("classical", "crossing", p,
                        "pass" if classical_crossing_check(m) else "fail"))
        bad = integrality_scan(m)
        out.append(_rec("classical", "integrality", p, "fail" if bad else "pass",
                        **({"message": ", ".join(bad)} if bad else {})))
        bad = classical_equivariance(m)
        out.append(_rec("classical", "equivariance_q1", p, "fail" if bad else "pass",
                        **({"message": ", ".join(bad)} if bad else {})))
    top_k = max_k if max_k is not None else (m + 1 if m <= DEFAULT_CLASSICAL_MAX_M else 0)
    for k in range(1, m + 2):
        params = {"m": m, "k": k}
        if k > top_k or m ** k > max_dim:
            why = (f"k={k} above --max-k" if k > top_k else f"m^k={m ** k} above the cap")
            for name in ("antisymmetrizer", "clasp", "doublecoset"):
                if name == "doublecoset" and not 2 <= k <= m:
                    continue
                out.append(_rec("classical", name, params, "skipped", message=why))
            continue
        a = antisymmetrizer(m, k, max_dim)
        expect = comb(m, k)
        ok = a @ a == a and a.rank() == expect
        out.append(_rec("classical", "antisymmetrizer", params, "pass" if ok else "fail"))
        c = clasp(m, k)
        out.append(_rec("classical", "clasp", params,
                        "pass" if specialize(c) == a else "fail"))
        if 2 <= k <= m:
            if m ** (k + 1) > max_dim:
                out.append(_rec("classical", "doublecoset", params, "skipped",
                                message=f"m^(k+1)={m ** (k + 1)} above the cap"))
            else:
                ok = doublecoset_recursion_check(m, k, max_dim)
                out.append(_rec("classical", "doublecoset", params, "pass" if ok else "fail"))
    return out


def build_report(m: int, suite: str, max_dim: int, max_k: Optional[int]) -> dict:
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if m < 1:
        raise UsageError("--m must be at least 1")
    names = SUITES[:-1] if suite == "all" else (suite,)
    records: List[dict] = []
    for name in names:
        if name == "relations":
            records += suite_relations(m, max_dim)
        elif name == "extalg":
            records += suite_extalg(m, max_dim)
        elif name == "classical":
            records += suite_classical(m, max_dim, max_k)
        else:
            records += suite_coefficients(m, max_dim)
    summary = {s: sum(1 for r in records if r["status"] == s) for s in STATUSES}
    return {"tool": "oweb", "version": __version__, "m": m, "suite": suite,
            "records": records, "summary": summary}


def render_table(report: dict) -> str:
    lines = [f"oweb {report['version']}  m={report['m']}  suite={report['suite']}"]
    rows = []
    for r in report["records"]:
        params = ",".join(f"{k}={v}" for k, v in r["params"].items() if k != "m")
        rows.append((r["suite"], r["relation"], params, r["status"], r.get("message", "")))
    widths = [max([len(h)] + [len(x[i]) for x in rows])
              for i, h in enumerate(("suite", "relation", "params", "status"))]
    head = ("suite", "relation", "params", "status")
    lines.append("  ".join(h.ljust(w) for h, w in zip(head, widths)))
    for row in rows:
        text = "  ".join(x.ljust(w) for x, w in zip(row[:4], widths))
        if row[4]:
            text += "  " + row[4]
        lines.append(text.rstrip())
    s = report["summary"]
    lines.append("summary: " + "  ".join(f"{k}={s[k]}" for k in STATUSES))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# matrices


def _parse_labels(text: Optional[str]) -> List[int]:
    if text is None:
        return []
    text = text.strip()
    if not text:
        return []
    try:
        labels = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"labels must be comma-separated integers, got {text!r}") from exc
    if any(x < 0 for x in labels):
        raise UsageError("labels must be nonnegative")
    return labels


def named_op(m: int, op: str, labels: Sequence[int]) -> LinearMap:
    itw = intertwiners(m)
    need = {"mul": 2, "split": 2, "cup": 1, "cap": 1, "psi": 1, "phi": 1, "clasp": 1}
    if op not in OPS:
        raise UsageError(f"unknown op {op!r}; choose from {', '.join(OPS)}")
    if op == "id":
        return itw.id(*labels)
    if op in need and len(labels) != need[op]:
        raise UsageError(f"op {op} takes {need[op]} label(s) via --labels")
    if op == "mul":
        return itw.mul(*labels)
    if op == "split":
        return itw.split(*labels)
    if op in ("cup", "cap", "psi", "phi"):
        return getattr(itw, op)(labels[0])
    if op == "clasp":
        return clasp(m, labels[0])
    if op == "phi1":
        return itw.phi1()
    if op == "braiding":
        return itw.braiding(1)
    if op == "braiding_inv":
        return itw.braiding(-1)
    return itw.quad_vertex()


def matrix_json(f: LinearMap, **meta) -> str:
    nr, nc = f.shape
    mat = [[format_ratfun(v) for v in row] for row in f.to_dense()] if nr * nc else []
    obj = dict(meta)
    obj.update({"m": f.m, "source": list(f.src), "target": list(f.tgt),
                "rows": nr, "cols": nc})
    head = json.dumps(obj, indent=1)[:-2]
    body = ",\n".join("  " + json.dumps(row) for row in mat)
    return head + ',\n "matrix": [\n' + body + ("\n ]\n}" if mat else " ]\n}")


def matrix_csv(f: LinearMap) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "value"])
    for r, c, v in f.entries():
        w.writerow([r, c, format_ratfun(v)])
    return buf.getvalue().rstrip("\n")


def _matrix_text(f: LinearMap, fmt: str, **meta) -> str:
    if fmt == "csv":
        return matrix_csv(f)
    if fmt == "json":
        return matrix_json(f, **meta)
    raise UsageError(f"unknown format {fmt!r}; choose json or csv")


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    report = build_report(args.m, args.suite, args.max_dim, args.max_k)
    if args.json:
        print(json.dumps(report, indent=1))
    else:
        print(render_table(report))
    return 1 if report["summary"]["fail"] else 0


def cmd_eval(args) -> int:
    try:
        e = parse(args.expr)
        src, tgt = typecheck(e)
    except (WebSyntaxError, WebTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    big = max_word_dim(args.m, e)
    if big > args.max_dim:
        print(f"error: intermediate dimension {big} exceeds the cap {args.max_dim}", file=sys.stderr)
        return 2
    f = evaluate(build_context(args.m), e)
    if f.shape == (1, 1) and not src and not tgt:
        print(format_ratfun(f.scalar_value()))
    else:
        print(_matrix_text(f, args.format, expr=args.expr))
    return 0


def cmd_dim(args) -> int:
    src, tgt = _parse_labels(args.source), _parse_labels(args.target)
    try:
        d = build_context(args.m).hom_dim(src, tgt, max_dim=args.max_dim)
    except SizeCapError as exc:
        print(f"error: too large: {exc}", file=sys.stderr)
        return 2
    print(d)
    return 0


def cmd_dump(args) -> int:
    labels = _parse_labels(args.labels)
    f = named_op(args.m, args.op, labels)
    print(_matrix_text(f, args.format, op=args.op, labels=labels))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oweb", description="Exact checks for orthogonal webs.")
    p.add_argument("--version", action="version", version=f"oweb {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--m", type=int, required=True, help="rank parameter m >= 1")
        sp.add_argument("--max-dim", type=int, default=None,
                        help="size cap on dimensions (default: OWEB_MAX_DIM or 65536)")

    v = sub.add_parser("verify", help="run a verification suite")
    common(v)
    v.add_argument("--suite", default="all", help="relations | extalg | classical | coefficients | all")
    v.add_argument("--json", action="store_true", help="emit the JSON report")
    v.add_argument("--max-k", type=int, default=None,
                   help="largest tensor power for antisymmetrizer and clasp checks "
                        f"(default m+1 when m <= {DEFAULT_CLASSICAL_MAX_M}, otherwise none)")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate a web expression")
    common(e)
    e.add_argument("expr")
    e.add_argument("--format", default="json", choices=("json", "csv"))
    e.set_defaults(func=cmd_eval)

    d = sub.add_parser("dim", help="dimension of an equivariant hom space")
    common(d)
    d.add_argument("--source", default="", help="comma-separated labels")
    d.add_argument("--target", default="", help="comma-separated labels")
    d.set_defaults(func=cmd_dim)

    u = sub.add_parser("dump", help="dump a named intertwiner")
    common(u)
    u.add_argument("--op", required=True, help=" | ".join(OPS))
    u.add_argument("--labels", default=None, help="comma-separated labels for the op")
    u.add_argument("--format", default="json", choices=("json", "csv"))
    u.set_defaults(func=cmd_dump)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.max_dim is None:
            args.max_dim = max_dim_from_env()
        if args.max_dim <= 0:
            raise UsageError("--max-dim must be positive")
        if args.m < 1:
            raise UsageError("--m must be at least 1")
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
