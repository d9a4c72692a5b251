"""Named relation coefficients in regularized form and their values at q = 1."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional, Tuple

from _config import dump_json, parse_config
from oweb.qcombinat import COEFFICIENTS, named_coefficient
from oweb.qratfun import format_ratfun


@dataclass(frozen=True)
class CoefficientConfig:
    m_values: Tuple[int, ...] = (2, 3, 4, 5, 6)
    names: Optional[str] = None  # comma-separated subset
    output: Optional[str] = None


def run(cfg: CoefficientConfig) -> dict:
    wanted = cfg.names.split(",") if cfg.names else sorted(COEFFICIENTS)
    rows = []
    for name in wanted:
        spec = COEFFICIENTS[name]
        print(f"{name}: {spec.description}")
        for m in cfg.m_values:
            for k in (range(0, m + 1) if spec.uses_k else [None]):
                val = named_coefficient(name, m, k or 0)
                at1 = val.eval_at_one()
                label = f"m={m}" + (f" k={k}" if k is not None else "")
                print(f"  {label:<10} {format_ratfun(val):<60} q=1: {at1}")
                rows.append({"name": name, "m": m, "k": k, "value": format_ratfun(val),
                             "at_one": str(at1)})
    out = {"config": asdict(cfg), "rows": rows}
    if cfg.output:
        dump_json(cfg.output, out)
    return out


if __name__ == "__main__":
    run(parse_config(CoefficientConfig, description=__doc__))
