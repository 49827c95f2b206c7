"""Groups up to a congruence relation (c-groups) and their morphisms.

A :class:`CGroup` carries explicit ``add`` and ``neg`` tables over a
:class:`FiniteSetoid`. Nothing about the group axioms is assumed at
construction time; :func:`validate_cgroup` certifies them exhaustively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .report import ConstructionError, SearchNotAttempted, StructureError, ValidationReport
from .setoid import FiniteSetoid, SetoidMap, _UnionFind, is_setoid_map

SEARCH_LIMIT = 12


def _check_table(elements: Sequence[str], add: Mapping, neg: Mapping, zero: str, what: str) -> None:
    members = set(elements)
    if zero not in members:
        raise StructureError(f"{what}: zero {zero!r} is not an element")
    for a in elements:
        if neg.get(a) not in members:
            raise StructureError(f"{what}: neg[{a!r}] missing or outside the carrier")
        for b in elements:
            if add.get((a, b)) not in members:
                raise StructureError(f"{what}: add[{a!r}, {b!r}] missing or outside the carrier")
    if len(add) != len(elements) ** 2 or len(neg) != len(elements):
        raise StructureError(f"{what}: table mentions ids outside the carrier")


@dataclass(frozen=True)
class CGroup:
    carrier: FiniteSetoid
    add: Mapping[tuple[str, str], str]
    zero: str
    neg: Mapping[str, str]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        _check_table(self.carrier.elements, self.add, self.neg, self.zero, self.name or "c-group")

    @property
    def elements(self) -> tuple[str, ...]:
        return self.carrier.elements

    def __len__(self) -> int:
        return len(self.carrier)

    def plus(self, a: str, b: str) -> str:
        return self.add[a, b]

    def minus(self, a: str, b: str) -> str:
        """``a - b`` read as ``a + (-b)``."""
        return self.add[a, self.neg[b]]

    def conj(self, g: str, h: str) -> str:
        """``g + (h - g)``, the bracketing used for actions throughout."""
        return self.add[g, self.add[h, self.neg[g]]]

    def related(self, a: str, b: str) -> bool:
        return self.carrier.related(a, b)

    def in_up_to(self, a: str, subset: Iterable[str]) -> bool:
        """``a`` is related to some member of ``subset``."""
        k = self.carrier.block_index(a)
        return any(self.carrier.block_index(h) == k for h in subset)


@dataclass(frozen=True)
class PlainGroup:
    """A finite group with exact axioms (relation is equality)."""

    elements: tuple[str, ...]
    add: Mapping[tuple[str, str], str]
    zero: str
    neg: Mapping[str, str]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        _check_table(self.elements, self.add, self.neg, self.zero, self.name or "group")

    @classmethod
    def from_operation(cls, elements: Sequence[str], op, name: str = "") -> "PlainGroup":
        """Tabulate ``op`` and locate the identity and inverses by search."""
        elements = tuple(elements)
        add = {(a, b): op(a, b) for a in elements for b in elements}
        zeros = [e for e in elements if all(add[e, a] == a == add[a, e] for a in elements)]
        if not zeros:
            raise ConstructionError(f"{name or 'operation'} has no identity")
        zero = zeros[0]
        neg = {}
        for a in elements:
            inv = [b for b in elements if add[a, b] == zero == add[b, a]]
            if not inv:
                raise ConstructionError(f"{a!r} has no inverse")
            neg[a] = inv[0]
        return cls(elements, add, zero, neg, name)

    def __len__(self) -> int:
        return len(self.elements)

    def plus(self, a: str, b: str) -> str:
        return self.add[a, b]

    def as_cgroup(self) -> CGroup:
        return CGroup(FiniteSetoid.discrete(self.elements), dict(self.add), self.zero,
                      dict(self.neg), self.name)


def validate_group(G: PlainGroup) -> ValidationReport:
    """Exact group axioms."""
    E = G.elements
    add, neg, zero = G.add, G.neg, G.zero
    report = ValidationReport(f"group {G.name}".strip())
    report.check_all("group.associativity", (
        (add[add[a, b], c] == add[a, add[b, c]], (a, b, c)) for a in E for b in E for c in E))
    report.check_all("group.zero", ((add[a, zero] == a == add[zero, a], (a,)) for a in E))
    report.check_all("group.neg", ((add[a, neg[a]] == zero == add[neg[a], a], (a,)) for a in E))
    return report


@dataclass(frozen=True)
class CGroupHom:
    source: CGroup
    target: CGroup
    table: Mapping[str, str]

    def __post_init__(self):
        for a in self.source.elements:
            if self.table.get(a) not in self.target.carrier:
                raise StructureError(f"hom undefined or out of range at {a!r}")

    def __call__(self, a: str) -> str:
        return self.table[a]

    def as_setoid_map(self) -> SetoidMap:
        return SetoidMap(self.source.carrier, self.target.carrier, self.table)


def identity_hom(G: CGroup) -> CGroupHom:
    return CGroupHom(G, G, {a: a for a in G.elements})


def compose(g: CGroupHom, f: CGroupHom) -> CGroupHom:
    """``g ∘ f``."""
    return CGroupHom(f.source, g.target, {a: g(f(a)) for a in f.source.elements})


def validate_cgroup(C: CGroup) -> ValidationReport:
    E = C.elements
    S = C.carrier
    add, neg, zero = C.add, C.neg, C.zero
    rel = S.related
    report = ValidationReport(f"c-group {C.name}".strip())

    # The two one-sided conditions give the two-sided one by transitivity.
    def compat():
        for a, b in S.related_pairs():
            for c in E:
                yield rel(add[a, c], add[b, c]), (a, b, c, c)
                yield rel(add[c, a], add[c, b]), (c, c, a, b)

    report.check_all("cgroup.compatibility", compat())
    report.check_all("cgroup.associativity", (
        (rel(add[a, add[b, c]], add[add[a, b], c]), (a, b, c)) for a in E for b in E for c in E))
    report.check_all("cgroup.zero", ((rel(add[a, zero], a) and rel(add[zero, a], a), (a,)) for a in E))
    report.check_all("cgroup.neg", ((rel(add[a, neg[a]], zero) and rel(add[neg[a], a], zero), (a,))
                                    for a in E))
    return report


def validate_hom(f: CGroupHom) -> ValidationReport:
    G, H = f.source, f.target
    E = G.elements
    report = ValidationReport("c-group morphism")
    report.check_all("hom.additive", (
        (f(G.add[a, b]) == H.add[f(a), f(b)], (a, b)) for a in E for b in E))
    report.merge(is_setoid_map(f.as_setoid_map()), prefix="hom.")
    report.check_all("hom.zero", [(H.related(f(G.zero), H.zero), (G.zero,))])
    report.check_all("hom.neg", ((H.related(f(G.neg[a]), H.neg[f(a)]), (a,)) for a in E))
    return report


def kernel_image(f: CGroupHom) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """The c-kernel and c-image of ``f``, each in carrier order."""
    G, H = f.source, f.target
    ker = tuple(a for a in G.elements if H.related(f(a), H.zero))
    image_blocks = {H.carrier.block_index(f(a)) for a in G.elements}
    im = tuple(b for b in H.elements if H.carrier.block_index(b) in image_blocks)
    return ker, im


def subcgroup(G: CGroup, H: Iterable[str], name: str = "") -> CGroup:
    """``H`` with the addition, relation, zero and inverses induced from ``G``.

    Raises ConstructionError if ``H`` is not closed under addition or lacks a
    zero or inverses inside ``H``.
    """
    members = set(H)
    elems = [a for a in G.elements if a in members]
    if not elems or len(elems) != len(members):
        raise ConstructionError("subset is empty or not contained in the carrier")
    add = {}
    for a in elems:
        for b in elems:
            s = G.add[a, b]
            if s not in members:
                raise ConstructionError(f"not closed under addition: {a!r}+{b!r}={s!r}")
            add[a, b] = s
    rel = G.related
    if G.zero in members:
        zero = G.zero
    else:
        zs = [z for z in elems if all(rel(add[a, z], a) and rel(add[z, a], a) for a in elems)]
        if not zs:
            raise ConstructionError("no zero element inside the subset")
        zero = zs[0]
    neg = {}
    for a in elems:
        if G.neg[a] in members:
            neg[a] = G.neg[a]
            continue
        cands = [b for b in elems if rel(add[a, b], zero) and rel(add[b, a], zero)]
        if not cands:
            raise ConstructionError(f"no inverse of {a!r} inside the subset")
        neg[a] = cands[0]
    return CGroup(G.carrier.restrict(elems), add, zero, neg, name)


def inclusion(sub: CGroup, G: CGroup) -> CGroupHom:
    return CGroupHom(sub, G, {a: a for a in sub.elements})


@dataclass(frozen=True)
class SubgroupProfile:
    c_subgroup: bool
    normal: bool
    perfect: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def perfect_normal(self) -> bool:
        return self.c_subgroup and self.normal and self.perfect


def subgroup_profile(G: CGroup, H: Iterable[str]) -> SubgroupProfile:
    H = [a for a in G.elements if a in set(H)]
    witnesses: dict = {}
    try:
        c_sub = validate_cgroup(subcgroup(G, H)).passed
    except ConstructionError as exc:
        c_sub = False
        witnesses["c_subgroup"] = str(exc)
    normal = True
    for g in G.elements:
        bad = next((h for h in H if not G.in_up_to(G.conj(g, h), H)), None)
        if bad is not None:
            normal = False
            witnesses["normal"] = (g, bad)
            break
    inside = set(H)
    escaped = next((g for g in G.carrier.saturate(H) if g not in inside), None)
    if escaped is not None:
        witnesses["perfect"] = (escaped,)
    return SubgroupProfile(c_sub, normal, escaped is None, witnesses)


@dataclass(frozen=True)
class GroupProfile:
    connected: bool
    c_abelian: bool
    witnesses: dict = field(default_factory=dict, compare=False)


def group_profile(G: CGroup) -> GroupProfile:
    witnesses = {}
    connected = len(G.carrier.blocks) == 1
    if not connected:
        witnesses["connected"] = (G.carrier.blocks[0][0], G.carrier.blocks[1][0])
    pair = next(((a, b) for a in G.elements for b in G.elements
                 if not G.related(G.add[a, b], G.add[b, a])), None)
    if pair is not None:
        witnesses["c_abelian"] = pair
    return GroupProfile(connected, pair is None, witnesses)


def _quotient_table(G: CGroup, class_of: Mapping[str, str], names: Sequence[str], name: str):
    add: dict = {}
    for a in G.elements:
        for b in G.elements:
            key = class_of[a], class_of[b]
            val = class_of[G.add[a, b]]
            if add.setdefault(key, val) != val:
                raise ConstructionError(f"induced addition is ill-defined at {(a, b)!r}")
    neg: dict = {}
    for a in G.elements:
        val = class_of[G.neg[a]]
        if neg.setdefault(class_of[a], val) != val:
            raise ConstructionError(f"induced negation is ill-defined at {a!r}")
    Q = PlainGroup(tuple(names), add, class_of[G.zero], neg, name)
    rep = validate_group(Q)
    if not rep.passed:
        raise ConstructionError(f"quotient fails the group axioms:\n{rep}")
    Qc = Q.as_cgroup()
    return Q, CGroupHom(G, Qc, dict(class_of))


def quotient_by_relation(G: CGroup) -> tuple[PlainGroup, CGroupHom]:
    """The group of blocks, ``[a] + [b] = [a + b]``, with the projection."""
    class_of = {a: f"[{G.carrier.block(a)[0]}]" for a in G.elements}
    names = [f"[{b[0]}]" for b in G.carrier.blocks]
    return _quotient_table(G, class_of, names, f"{G.name}/~" if G.name else "")


def quotient_by_normal(G: CGroup, H: Iterable[str]) -> tuple[PlainGroup, CGroupHom]:
    """``G/H`` as the group of saturated cosets ``cl(g + H)``.

    Overlapping classes are merged before the table is built.
    """
    H = [a for a in G.elements if a in set(H)]
    prof = subgroup_profile(G, H)
    if not (prof.c_subgroup and prof.normal):
        raise ConstructionError(f"subset is not a normal c-subgroup: {prof.witnesses}")
    uf = _UnionFind(G.elements)
    for g in G.elements:
        cl = G.carrier.saturate(G.add[g, h] for h in H)
        for x in cl:
            uf.union(cl[0], x)
    groups: dict[str, list[str]] = {}
    for x in G.elements:
        groups.setdefault(uf.find(x), []).append(x)
    class_of = {}
    names = []
    for members in groups.values():
        label = f"[{members[0]}]"
        names.append(label)
        for x in members:
            class_of[x] = label
    return _quotient_table(G, class_of, names, f"{G.name}/H" if G.name else "")


def universal_factorization(f: CGroupHom, H: Iterable[str], table_limit: int = 200_000) -> CGroupHom:
    """The unique ``theta`` with ``theta ∘ p = f`` for ``p: G -> G/H``.

    ``f`` must land in an exact group (discrete relation) and vanish on ``H``.
    Uniqueness is confirmed by enumerating every candidate table; when ``H``
    is also perfect, ``cKer p = H`` is confirmed as well.
    """
    G, T = f.source, f.target
    if not T.carrier.is_discrete():
        raise ConstructionError("target of f must be an exact group")
    H = [a for a in G.elements if a in set(H)]
    killed = [h for h in H if f(h) != T.zero]
    if killed:
        raise ConstructionError(f"f does not vanish on H at {killed[0]!r}")
    Q, p = quotient_by_normal(G, H)
    theta: dict[str, str] = {}
    for a in G.elements:
        if theta.setdefault(p(a), f(a)) != f(a):
            raise ConstructionError(f"f is not constant on the class of {a!r}")
    th = CGroupHom(p.target, T, theta)
    if any(th(p(a)) != f(a) for a in G.elements):
        raise ConstructionError("theta ∘ p differs from f")
    if len(T) ** len(Q) <= table_limit:
        solutions = 0
        for values in itertools.product(T.elements, repeat=len(Q)):
            cand = dict(zip(Q.elements, values))
            if all(cand[p(a)] == f(a) for a in G.elements):
                solutions += 1
        if solutions != 1:
            raise ConstructionError(f"factorisation is not unique ({solutions} solutions)")
    prof = subgroup_profile(G, H)
    if prof.perfect:
        ker, _ = kernel_image(p)
        if list(ker) != H:
            raise ConstructionError(f"H is perfect but cKer p = {ker!r}")
    return th


def _magma_generators(G: CGroup) -> list[str]:
    gens: list[str] = []
    reached: set[str] = set()
    for a in G.elements:
        if a in reached:
            continue
        gens.append(a)
        frontier = list(reached | {a})
        reached.add(a)
        while frontier:
            new = []
            for x in list(reached):
                for y in frontier:
                    for z in (G.add[x, y], G.add[y, x]):
                        if z not in reached:
                            reached.add(z)
                            new.append(z)
            frontier = new
    return gens


def iter_homs(D: CGroup, D2: CGroup, *, bijective: bool = False) -> Iterator[CGroupHom]:
    """All c-group morphisms ``D -> D2``, in a deterministic order.

    Images of a magma generating set are enumerated and propagated through
    the addition table; every survivor is re-checked in full.
    """
    gens = _magma_generators(D)
    pool = D2.elements
    choices = itertools.permutations(pool, len(gens)) if bijective else itertools.product(pool, repeat=len(gens))
    for images in choices:
        img = dict(zip(gens, images))
        ok = True
        changed = True
        while ok and changed:
            changed = False
            known = list(img)
            for x in known:
                for y in known:
                    z = D.add[x, y]
                    val = D2.add[img[x], img[y]]
                    if z in img:
                        if img[z] != val:
                            ok = False
                            break
                    else:
                        img[z] = val
                        changed = True
                if not ok:
                    break
        if not ok or len(img) != len(D):
            continue
        if bijective and len(set(img.values())) != len(D2):
            continue
        h = CGroupHom(D, D2, {a: img[a] for a in D.elements})
        if all(h(D.add[a, b]) == D2.add[h(a), h(b)] for a in D.elements for b in D.elements) \
                and all(D2.related(h(x), h(y)) for x, y in D.carrier.related_pairs()):
            yield h


def find_group_isomorphism(G: PlainGroup, H: PlainGroup) -> CGroupHom | None:
    if len(G) != len(H):
        return None
    return next(iter_homs(G.as_cgroup(), H.as_cgroup(), bijective=True), None)


def check_c_isomorphism(f: CGroupHom, f2: CGroupHom) -> bool:
    """``f ∘ f2 ~ 1`` and ``f2 ∘ f ~ 1`` pointwise."""
    D, D2 = f.source, f.target
    if f2.source != D2 or f2.target != D:
        return False
    return all(D2.related(f(f2(b)), b) for b in D2.elements) and \
        all(D.related(f2(f(a)), a) for a in D.elements)


def search_c_isomorphism(D: CGroup, D2: CGroup, limit: int = SEARCH_LIMIT):
    """A c-isomorphism pair ``(f, f2)`` or None; raises above the size cap."""
    if len(D) > limit or len(D2) > limit:
        raise SearchNotAttempted(f"carriers larger than {limit}")
    if len(D.carrier.blocks) != len(D2.carrier.blocks):
        return None
    backward = list(iter_homs(D2, D))
    for f in iter_homs(D, D2):
        for f2 in backward:
            if check_c_isomorphism(f, f2):
                return f, f2
    return None
