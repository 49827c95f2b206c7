"""Finite sets equipped with an equivalence relation, and maps between them.

A setoid is stored as a partition of its carrier. Blocks are normalised so
that each block lists its members in carrier order and blocks are ordered by
their first member; two setoids with the same relation therefore compare
equal however their partitions were written down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .report import StructureError, ValidationReport


def pair_id(x: str, y: str) -> str:
    """Element id used for the pair ``(x, y)`` in product carriers."""
    return f"({x},{y})"


class _UnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: str, y: str) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


@dataclass(frozen=True)
class FiniteSetoid:
    elements: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]
    _block_of: dict = field(init=False, repr=False, compare=False)

    def __init__(self, elements: Sequence[str], partition: Iterable[Iterable[str]]):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise StructureError("duplicate element ids in carrier")
        position = {x: k for k, x in enumerate(elements)}
        block_of: dict[str, int] = {}
        raw = []
        for block in partition:
            block = list(block)
            if not block:
                raise StructureError("empty block in partition")
            for x in block:
                if x not in position:
                    raise StructureError(f"unknown element {x!r} in partition")
                if x in block_of:
                    raise StructureError(f"element {x!r} lies in two blocks")
                block_of[x] = -1
            raw.append(sorted(set(block), key=position.__getitem__))
        missing = [x for x in elements if x not in block_of]
        if missing:
            raise StructureError(f"partition does not cover {missing[0]!r}")
        raw.sort(key=lambda b: position[b[0]])
        blocks = tuple(tuple(b) for b in raw)
        for k, b in enumerate(blocks):
            for x in b:
                block_of[x] = k
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_block_of", block_of)

    @classmethod
    def discrete(cls, elements: Sequence[str]) -> "FiniteSetoid":
        return cls(elements, [[x] for x in elements])

    @classmethod
    def indiscrete(cls, elements: Sequence[str]) -> "FiniteSetoid":
        return cls(elements, [list(elements)])

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._block_of

    def block_index(self, x: str) -> int:
        try:
            return self._block_of[x]
        except KeyError:
            raise StructureError(f"unknown element {x!r}") from None

    def block(self, x: str) -> tuple[str, ...]:
        return self.blocks[self.block_index(x)]

    def related(self, a: str, b: str) -> bool:
        return self.block_index(a) == self.block_index(b)

    def is_discrete(self) -> bool:
        return len(self.blocks) == len(self.elements)

    def saturate(self, subset: Iterable[str]) -> list[str]:
        """Every element related to some member of ``subset``, in carrier order."""
        hit = {self.block_index(x) for x in subset}
        return [x for x in self.elements if self._block_of[x] in hit]

    def related_pairs(self):
        for b in self.blocks:
            for x in b:
                for y in b:
                    yield x, y

    def restrict(self, subset: Iterable[str]) -> "FiniteSetoid":
        """The induced relation on ``subset`` (kept in carrier order)."""
        keep = set(subset)
        elems = [x for x in self.elements if x in keep]
        if len(elems) != len(keep):
            raise StructureError("subset is not contained in the carrier")
        blocks = [[x for x in b if x in keep] for b in self.blocks]
        return FiniteSetoid(elems, [b for b in blocks if b])

    def refines(self, other: "FiniteSetoid") -> bool:
        """True if every related pair here is related in ``other``."""
        return self.elements == other.elements and all(
            other.related(b[0], x) for b in self.blocks for x in b
        )


def build_congruence(elements: Sequence[str], generating_pairs: Iterable[tuple[str, str]]) -> FiniteSetoid:
    """Finest equivalence relation on ``elements`` containing the given pairs."""
    elements = tuple(elements)
    uf = _UnionFind(elements)
    for a, b in generating_pairs:
        for x in (a, b):
            if x not in uf.parent:
                raise StructureError(f"unknown element {x!r} in generating pair")
        uf.union(a, b)
    groups: dict[str, list[str]] = {}
    for x in elements:
        groups.setdefault(uf.find(x), []).append(x)
    return FiniteSetoid(elements, groups.values())


def related(S: FiniteSetoid, a: str, b: str) -> bool:
    return S.related(a, b)


def product_setoid(S: FiniteSetoid, T: FiniteSetoid) -> FiniteSetoid:
    """Cartesian product with the componentwise relation."""
    elements = [pair_id(s, t) for s in S.elements for t in T.elements]
    blocks = [[pair_id(s, t) for s in bs for t in bt] for bs in S.blocks for bt in T.blocks]
    return FiniteSetoid(elements, blocks)


@dataclass(frozen=True)
class SetoidMap:
    source: FiniteSetoid
    target: FiniteSetoid
    table: Mapping[str, str]

    def __post_init__(self):
        for x in self.source.elements:
            if x not in self.table:
                raise StructureError(f"map undefined on {x!r}")
            if self.table[x] not in self.target:
                raise StructureError(f"image {self.table[x]!r} of {x!r} is not in the target")

    def __call__(self, x: str) -> str:
        return self.table[x]


def is_setoid_map(f: SetoidMap) -> ValidationReport:
    report = ValidationReport("setoid map")
    report.check_all(
        "setoid_map.preserves_relation",
        ((f.target.related(f(x), f(y)), (x, y)) for x, y in f.source.related_pairs()),
    )
    return report
