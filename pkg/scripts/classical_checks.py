"""Clasps against antisymmetrizers, the double-coset recursion and the q = 1 crossing."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb
from typing import Optional, Tuple

from _config import dump_json, parse_config
from oweb.classical import (antisymmetrizer, clasp, classical_crossing_check,
                            doublecoset_recursion_check, integrality_scan, specialize)


@dataclass(frozen=True)
class ClassicalConfig:
    m_values: Tuple[int, ...] = (1, 2, 3, 4)
    max_k: int = 0           # 0 means m + 1
    max_dim: int = 65536
    output: Optional[str] = None


def run(cfg: ClassicalConfig) -> dict:
    results = []

    def note(m, k, name, ok):
        results.append({"m": m, "k": k, "check": name, "ok": bool(ok)})
        print(f"m={m} k={k if k is not None else '-':<2} {name:<28} {'ok' if ok else 'FAIL'}")

    for m in cfg.m_values:
        note(m, None, "crossing at q=1", classical_crossing_check(m))
        note(m, None, "integrality of intertwiners", not integrality_scan(m))
        top = cfg.max_k or m + 1
        for k in range(1, top + 1):
            if m ** (k + 1) > cfg.max_dim:
                break
            a = antisymmetrizer(m, k, cfg.max_dim)
            note(m, k, "antisymmetrizer rank C(m,k)", a @ a == a and a.rank() == comb(m, k))
            note(m, k, "clasp at q=1 = antisymmetrizer", specialize(clasp(m, k)) == a)
            if 2 <= k <= m:
                note(m, k, "double-coset recursion", doublecoset_recursion_check(m, k, cfg.max_dim))
    bad = [r for r in results if not r["ok"]]
    print(f"\n{len(results) - len(bad)}/{len(results)} checks passed")
    out = {"config": asdict(cfg), "results": results}
    if cfg.output:
        dump_json(cfg.output, out)
    return out


if __name__ == "__main__":
    run(parse_config(ClassicalConfig, description=__doc__))
