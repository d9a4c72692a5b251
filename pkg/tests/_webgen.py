"""Random well-typed web expressions for round-trip and functoriality tests."""

from __future__ import annotations

import random
from typing import Tuple

from oweb.qratfun import Q, RatFun
from oweb.weblang import (Cap, Compose, CrossNeg, CrossPos, Cup, Id, Merge, Scale, Split,
                          Sum, Tensor)

Word = Tuple[int, ...]


def random_scalar(rng: random.Random) -> RatFun:
    num = RatFun.laurent({rng.randint(-3, 3): rng.choice([-3, -2, -1, 1, 2, 5])
                          for _ in range(rng.randint(1, 3))})
    if rng.random() < 0.3:
        den = Q ** rng.randint(1, 2) + RatFun.const(rng.choice([1, -2, 3]))
        return num / den
    return num


def _tensor_all(parts):
    out = parts[0]
    for p in parts[1:]:
        out = Tensor(out, p)
    return out


def layer_from(rng: random.Random, word: Word, top: int):
    """One tensor layer whose source is ``word``; returns (expr, target)."""
    parts, tgt = [], []
    i = 0
    if not word:
        k = rng.randint(0, top)
        return (Cup(k), (k, k) if k else ()) if rng.random() < 0.7 else (Id(0), ())
    while i < len(word):
        a = word[i]
        b = word[i + 1] if i + 1 < len(word) else None
        choices = ["id", "split"] if a > 1 else ["id"]
        if b is not None:
            if a + b <= top:
                choices.append("merge")
            if a == b:
                choices.append("cap")
            if a == b == 1:
                choices.append("cross")
        if rng.random() < 0.15 and len(word) < 4:
            k = rng.randint(1, top)
            parts.append(Cup(k))
            tgt += [k, k]
        c = rng.choice(choices)
        if c == "id":
            parts.append(Id(a))
            tgt.append(a)
            i += 1
        elif c == "split":
            j = rng.randint(1, a - 1)
            parts.append(Split(j, a - j))
            tgt += [j, a - j]
            i += 1
        elif c == "merge":
            parts.append(Merge(a, b))
            tgt.append(a + b)
            i += 2
        elif c == "cap":
            parts.append(Cap(a))
            i += 2
        else:
            parts.append(rng.choice([CrossPos(), CrossNeg()]))
            tgt += [1, 1]
            i += 2
    return _tensor_all(parts), tuple(tgt)


def random_word(rng: random.Random, top: int, max_len: int = 3) -> Word:
    return tuple(rng.randint(1, top) for _ in range(rng.randint(0, max_len)))


def random_expr(rng: random.Random, top: int = 3, depth: int = 3, max_len: int = 3):
    """A random well-typed expression; returns (expr, source, target)."""
    src = random_word(rng, top, max_len)
    return random_expr_from(rng, src, top, depth, max_len)


def random_expr_from(rng: random.Random, src: Word, top: int, depth: int, max_len: int):
    e, t = layer_from(rng, src, top)
    for _ in range(rng.randint(0, depth)):
        if len(t) > max_len + 1:
            break
        nxt, t = layer_from(rng, t, top)
        e = Compose(e, nxt)
    r = rng.random()
    if r < 0.2:
        e = Scale(random_scalar(rng), e)
    elif r < 0.35:
        other = Compose(e, _tensor_all([Id(k) for k in t])) if t else Scale(random_scalar(rng), e)
        e = Sum((e, Scale(random_scalar(rng), other)))
    return e, src, t


def random_nested(rng: random.Random, top: int = 3, depth: int = 3, max_len: int = 3):
    """Like random_expr, but sometimes the tensor product of two independent pieces."""
    if rng.random() < 0.25 and depth > 0:
        a, s1, t1 = random_nested(rng, top, depth - 1, max_len)
        b, s2, t2 = random_nested(rng, top, depth - 1, max_len)
        return Tensor(a, b), s1 + s2, t1 + t2
    return random_expr(rng, top, depth, max_len)
