"""Turn a dataclass config into command-line overrides."""

from __future__ import annotations

import argparse
import dataclasses
import json
from typing import Sequence, Type, TypeVar

T = TypeVar("T")


def _int_list(text: str):
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x]


def parse_config(cls: Type[T], argv: Sequence[str] = None, description: str = "") -> T:
    """Every field becomes ``--field-name``; int tuples accept ``1,2,3`` or ``1..5``."""
    p = argparse.ArgumentParser(description=description)
    defaults = cls()
    for f in dataclasses.fields(cls):
        flag = "--" + f.name.replace("_", "-")
        cur = getattr(defaults, f.name)
        if isinstance(cur, bool):
            p.add_argument(flag, action=argparse.BooleanOptionalAction, default=cur)
        elif isinstance(cur, tuple):
            p.add_argument(flag, type=_int_list, default=None, help=f"default {cur}")
        elif cur is None or isinstance(cur, str):
            p.add_argument(flag, type=str, default=cur)
        else:
            p.add_argument(flag, type=type(cur), default=cur)
    ns = vars(p.parse_args(argv))
    kwargs = {}
    for f in dataclasses.fields(cls):
        v = ns[f.name]
        if v is None and isinstance(getattr(defaults, f.name), tuple):
            continue
        kwargs[f.name] = tuple(v) if isinstance(v, list) else v
    return cls(**kwargs)


def dump_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")
