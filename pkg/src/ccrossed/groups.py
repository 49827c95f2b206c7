"""Small named groups used by fixtures and the CLI."""

from __future__ import annotations

import itertools
import re

from .cgroup import PlainGroup
from .setoid import pair_id


def cyclic(n: int) -> PlainGroup:
    elems = [str(k) for k in range(n)]
    return PlainGroup.from_operation(elems, lambda a, b: str((int(a) + int(b)) % n), f"Z{n}")


def symmetric(n: int) -> PlainGroup:
    """S_n on one-line permutation strings, ``(s+t)(i) = s(t(i))``; identity first."""
    perms = ["".join(map(str, p)) for p in itertools.permutations(range(n))]

    def op(s, t):
        return "".join(s[int(t[i])] for i in range(n))

    return PlainGroup.from_operation(perms, op, f"S{n}")


def direct_product(G: PlainGroup, H: PlainGroup) -> PlainGroup:
    pairs = {pair_id(g, h): (g, h) for g in G.elements for h in H.elements}

    def op(x, y):
        (g, h), (g2, h2) = pairs[x], pairs[y]
        return pair_id(G.add[g, g2], H.add[h, h2])

    return PlainGroup.from_operation(list(pairs), op, f"{G.name}x{H.name}")


def klein() -> PlainGroup:
    return PlainGroup.from_operation(["0", "a", "b", "c"],
                                     lambda x, y: x if y == "0" else y if x == "0" else
                                     "0" if x == y else ({"a", "b", "c"} - {x, y}).pop(), "V4")


def trivial() -> PlainGroup:
    return PlainGroup.from_operation(["0"], lambda a, b: "0", "1")


def by_name(name: str) -> PlainGroup:
    """``Z<n>``, ``S<n>`` (n <= 4), ``V4`` or ``1``."""
    m = re.fullmatch(r"([ZS])(\d+)", name)
    if m and m.group(1) == "Z" and int(m.group(2)) >= 1:
        return cyclic(int(m.group(2)))
    if m and m.group(1) == "S" and 1 <= int(m.group(2)) <= 4:
        return symmetric(int(m.group(2)))
    if name == "V4":
        return klein()
    if name == "1":
        return trivial()
    raise ValueError(f"unknown group {name!r}")
