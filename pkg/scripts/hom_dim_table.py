"""Dimensions of equivariant hom spaces over Q(q) and at q = 1, side by side."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional, Tuple

from _config import dump_json, parse_config
from oweb.qrep import SizeCapError, build_context

WORD_PAIRS = (
    ((), (1, 1)), ((1,), (1,)), ((1, 1), (1, 1)), ((1,), (1, 1)), ((), (2,)),
    ((2,), (2,)), ((1, 1), (2,)), ((1,), (1, 2)), ((), (1, 1, 1, 1)), ((2,), (1, 1, 2)),
    ((1, 1, 1), (1, 1, 1)),
)


@dataclass(frozen=True)
class HomTableConfig:
    m_values: Tuple[int, ...] = (1, 2, 3, 4, 5)
    max_dim: int = 20000
    output: Optional[str] = None


def _w(word) -> str:
    return "(" + ",".join(map(str, word)) + ")"


def run(cfg: HomTableConfig) -> dict:
    rows = []
    print("source -> target".ljust(22) + "".join(f"  m={m:<8}" for m in cfg.m_values))
    for src, tgt in WORD_PAIRS:
        cells = []
        for m in cfg.m_values:
            ctx = build_context(m)
            try:
                dq = ctx.hom_dim(src, tgt, cfg.max_dim)
                d1 = ctx.hom_dim_classical(src, tgt, cfg.max_dim)
            except SizeCapError:
                cells.append("cap")
                rows.append({"m": m, "source": src, "target": tgt, "status": "skipped"})
                continue
            cells.append(f"{dq}" if dq == d1 else f"{dq}|{d1}!")
            rows.append({"m": m, "source": src, "target": tgt, "generic": dq, "at_one": d1})
        print(f"{_w(src)} -> {_w(tgt)}".ljust(22) + "".join(f"  {c:<10}" for c in cells))
    mismatches = [r for r in rows if "generic" in r and r["generic"] != r["at_one"]]
    print(f"\n{len(mismatches)} pairs where Q(q) and q=1 dimensions differ")
    out = {"config": asdict(cfg), "rows": rows}
    if cfg.output:
        dump_json(cfg.output, out)
    return out


if __name__ == "__main__":
    run(parse_config(HomTableConfig, description=__doc__))
