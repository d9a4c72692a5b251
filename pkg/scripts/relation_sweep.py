"""Run the relation suite over a range of m and tabulate statuses per relation."""

from __future__ import annotations

import time
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass
from typing import Optional, Tuple

from _config import dump_json, parse_config
from oweb.weblang import relation_suite


@dataclass(frozen=True)
class SweepConfig:
    m_values: Tuple[int, ...] = (1, 2, 3, 4, 5)
    max_dim: int = 65536
    relations: Optional[str] = None  # comma-separated names; all when unset
    output: Optional[str] = None     # optional JSON file with every record


def run(cfg: SweepConfig) -> dict:
    names = cfg.relations.split(",") if cfg.relations else None
    table = defaultdict(Counter)
    records = []
    for m in cfg.m_values:
        t0 = time.perf_counter()
        recs = relation_suite(m, max_dim=cfg.max_dim, names=names)
        dt = time.perf_counter() - t0
        for r in recs:
            table[r.relation][(m, r.status)] += 1
            records.append({"m": m, **r.to_json()})
        total = Counter(r.status for r in recs)
        print(f"m={m}: {len(recs)} instances in {dt:.2f}s  " +
              "  ".join(f"{k}={total[k]}" for k in ("pass", "fail", "degenerate", "skipped")))
    print()
    width = max(len(n) for n in table)
    print("relation".ljust(width) + "".join(f"  m={m:<6}" for m in cfg.m_values))
    for name in table:
        cells = []
        for m in cfg.m_values:
            c = table[name]
            ok = c[(m, "pass")] + c[(m, "degenerate")]
            bad = c[(m, "fail")]
            cells.append(f"{ok}/{ok + bad + c[(m, 'skipped')]}" + ("!" if bad else ""))
        print(name.ljust(width) + "".join(f"  {x:<8}" for x in cells))
    out = {"config": asdict(cfg), "records": records}
    if cfg.output:
        dump_json(cfg.output, out)
    return out


if __name__ == "__main__":
    run(parse_config(SweepConfig, description=__doc__))
