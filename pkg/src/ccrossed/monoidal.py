"""Finite categorical groups given by explicit tables.

Morphisms are opaque ids with a source and target object. Composition is a
partial table keyed by ``(g, f)`` meaning ``g ∘ f`` (``f`` first). The
monoidal sum is a pair of total tables on objects and on morphisms, and the
structural isomorphisms (associator, unitors, and the two inverse witnesses)
are tables of component morphisms.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

from .report import ConstructionError, StructureError, ValidationReport
from .setoid import FiniteSetoid, _UnionFind


class UniqueSpecialError(ConstructionError):
    def __init__(self, message: str, source: str, target: str, found: tuple[str, ...]):
        super().__init__(message)
        self.source = source
        self.target = target
        self.found = found


class NoSpecial(UniqueSpecialError):
    pass


class AmbiguousSpecial(UniqueSpecialError):
    pass


@dataclass(frozen=True)
class FiniteGroupoid:
    objects: tuple[str, ...]
    morphisms: Mapping[str, tuple[str, str]]
    comp: Mapping[tuple[str, str], str]
    ident: Mapping[str, str]
    inv: Mapping[str, str]
    _hom: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        obs = set(self.objects)
        if len(obs) != len(self.objects):
            raise StructureError("duplicate object ids")
        hom: dict = {(x, y): [] for x in self.objects for y in self.objects}
        for f, (s, t) in self.morphisms.items():
            if s not in obs or t not in obs:
                raise StructureError(f"morphism {f!r} has unknown endpoint")
            hom[s, t].append(f)
        for x in self.objects:
            if self.ident.get(x) not in self.morphisms:
                raise StructureError(f"identity of {x!r} missing or unknown")
        for f in self.morphisms:
            if self.inv.get(f) not in self.morphisms:
                raise StructureError(f"inverse of {f!r} missing or unknown")
        for (g, f), h in self.comp.items():
            if g not in self.morphisms or f not in self.morphisms:
                raise StructureError(f"composition cell ({g!r}, {f!r}) names an unknown morphism")
            if self.morphisms[f][1] != self.morphisms[g][0]:
                raise StructureError(f"composition cell ({g!r}, {f!r}) is not composable")
            if h not in self.morphisms:
                raise StructureError(f"composition cell ({g!r}, {f!r}) = {h!r} is an unknown morphism")
        for f, (_, t) in self.morphisms.items():
            for g in itertools.chain.from_iterable(hom[t, z] for z in self.objects):
                if (g, f) not in self.comp:
                    raise StructureError(f"composition cell ({g!r}, {f!r}) is missing")
        object.__setattr__(self, "_hom", {k: tuple(v) for k, v in hom.items()})

    def src(self, f: str) -> str:
        return self.morphisms[f][0]

    def tgt(self, f: str) -> str:
        return self.morphisms[f][1]

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._hom[x, y]

    def composable_pairs(self):
        """All ``(g, f)`` with ``tgt f = src g``."""
        return self.comp.keys()


@dataclass(frozen=True)
class MonoidalStructure:
    obj_sum: Mapping[tuple[str, str], str]
    mor_sum: Mapping[tuple[str, str], str]
    zero_obj: str
    alpha: Mapping[tuple[str, str, str], str]
    lam: Mapping[str, str]
    rho: Mapping[str, str]


@dataclass(frozen=True)
class CategoricalGroup:
    groupoid: FiniteGroupoid
    monoidal: MonoidalStructure
    neg_obj: Mapping[str, str]
    eps: Mapping[str, str]
    delta: Mapping[str, str]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        G, M = self.groupoid, self.monoidal
        obs, mors = G.objects, G.morphisms
        if M.zero_obj not in obs:
            raise StructureError("zero object is not an object")
        for x in obs:
            for y in obs:
                if M.obj_sum.get((x, y)) not in obs:
                    raise StructureError(f"object sum ({x!r}, {y!r}) missing or unknown")
            for table, label in ((self.neg_obj, "neg_obj"),):
                if table.get(x) not in obs:
                    raise StructureError(f"{label}[{x!r}] missing or unknown")
            for table, label in ((M.lam, "lambda"), (M.rho, "rho"), (self.eps, "eps"), (self.delta, "delta")):
                if table.get(x) not in mors:
                    raise StructureError(f"{label}[{x!r}] missing or unknown")
        for f in mors:
            for g in mors:
                if M.mor_sum.get((f, g)) not in mors:
                    raise StructureError(f"morphism sum ({f!r}, {g!r}) missing or unknown")
        for x in obs:
            for y in obs:
                for z in obs:
                    if M.alpha.get((x, y, z)) not in mors:
                        raise StructureError(f"alpha[{x!r}, {y!r}, {z!r}] missing or unknown")

    # Shorthand used by the validators and constructions.
    @property
    def objects(self) -> tuple[str, ...]:
        return self.groupoid.objects

    @property
    def morphisms(self) -> tuple[str, ...]:
        return tuple(self.groupoid.morphisms)

    @property
    def zero(self) -> str:
        return self.monoidal.zero_obj

    def src(self, f: str) -> str:
        return self.groupoid.morphisms[f][0]

    def tgt(self, f: str) -> str:
        return self.groupoid.morphisms[f][1]

    def one(self, x: str) -> str:
        return self.groupoid.ident[x]

    def inv(self, f: str) -> str:
        return self.groupoid.inv[f]

    def osum(self, x: str, y: str) -> str:
        return self.monoidal.obj_sum[x, y]

    def msum(self, f: str, g: str) -> str:
        return self.monoidal.mor_sum[f, g]

    def oneg(self, x: str) -> str:
        return self.neg_obj[x]

    def alpha(self, x: str, y: str, z: str) -> str:
        return self.monoidal.alpha[x, y, z]

    def lam(self, x: str) -> str:
        return self.monoidal.lam[x]

    def rho(self, x: str) -> str:
        return self.monoidal.rho[x]

    def seq(self, *fs: str) -> str:
        """``fs[0] ∘ fs[1] ∘ ... ∘ fs[-1]``; raises if some step is not composable."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            try:
                out = self.groupoid.comp[g, out]
            except KeyError:
                raise StructureError(f"cannot compose {g!r} after {out!r}") from None
        return out

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self.groupoid.hom(x, y)


def _groupoid_checks(G: FiniteGroupoid, report: ValidationReport) -> None:
    src, tgt, comp, ident, inv = G.src, G.tgt, G.comp, G.ident, G.inv
    report.check_all("groupoid.composition_endpoints", (
        (src(h) == src(f) and tgt(h) == tgt(g), (g, f)) for (g, f), h in comp.items()))
    report.check_all("groupoid.identity_endpoints", (
        (src(ident[x]) == x == tgt(ident[x]), (x,)) for x in G.objects))
    report.check_all("groupoid.inverse_endpoints", (
        (src(inv[f]) == tgt(f) and tgt(inv[f]) == src(f), (f,)) for f in G.morphisms))
    if not report.passed:
        return

    def assoc():
        for (g, f), gf in comp.items():
            for h in itertools.chain.from_iterable(G.hom(tgt(g), z) for z in G.objects):
                yield comp[h, gf] == comp[comp[h, g], f], (h, g, f)

    report.check_all("groupoid.associativity", assoc())
    report.check_all("groupoid.identity", (
        (comp[ident[tgt(f)], f] == f == comp[f, ident[src(f)]], (f,)) for f in G.morphisms))
    report.check_all("groupoid.inverse", (
        (comp[inv[f], f] == ident[src(f)] and comp[f, inv[f]] == ident[tgt(f)], (f,))
        for f in G.morphisms))


def validate_groupoid(G: FiniteGroupoid) -> ValidationReport:
    report = ValidationReport("groupoid")
    _groupoid_checks(G, report)
    return report


def neg_morphism(C: CategoricalGroup, f: str) -> str:
    """A morphism ``-x -> -x'`` for ``f: x -> x'`` built from the structure maps.

    The composite is ``λ ∘ (ε_x + 1) ∘ α⁻¹ ∘ (1 + (f⁻¹ + 1)) ∘ (1 + δ_{x'}⁻¹) ∘ ρ⁻¹``.
    """
    x, x2 = C.src(f), C.tgt(f)
    nx, nx2 = C.oneg(x), C.oneg(x2)
    return C.seq(
        C.lam(nx2),
        C.msum(C.eps[x], C.one(nx2)),
        C.inv(C.alpha(nx, x, nx2)),
        C.msum(C.one(nx), C.msum(C.inv(f), C.one(nx2))),
        C.msum(C.one(nx), C.inv(C.delta[x2])),
        C.inv(C.rho(nx)),
    )


def validate_categorical_group(C: CategoricalGroup) -> ValidationReport:
    """Staged certification of the categorical-group axioms.

    Stages: groupoid laws, bifunctoriality, component endpoints, naturality,
    then the coherence diagrams. A failing structural stage stops the run,
    since later stages cannot be evaluated on ill-typed data.
    """
    report = ValidationReport(f"categorical group {C.name}".strip())
    G = C.groupoid
    _groupoid_checks(G, report)
    if not report.passed:
        return report

    obs, mors = C.objects, C.morphisms
    src, tgt, one, inv = C.src, C.tgt, C.one, C.inv
    osum, msum, comp = C.osum, C.msum, G.comp

    report.check_all("bifunctor.endpoints", (
        (src(msum(f, g)) == osum(src(f), src(g)) and tgt(msum(f, g)) == osum(tgt(f), tgt(g)), (f, g))
        for f in mors for g in mors))
    report.check_all("bifunctor.identities", (
        (msum(one(x), one(y)) == one(osum(x, y)), (x, y)) for x in obs for y in obs))
    if not report.passed:
        return report
    pairs = list(G.composable_pairs())
    report.check_all("bifunctor.interchange", (
        (comp[msum(f2, g2), msum(f, g)] == msum(comp[f2, f], comp[g2, g]), (f2, f, g2, g))
        for (f2, f) in pairs for (g2, g) in pairs))

    z = C.zero
    nx = C.oneg
    report.check_all("endpoints.alpha", (
        (C.groupoid.morphisms[C.alpha(x, y, w)] == (osum(osum(x, y), w), osum(x, osum(y, w))), (x, y, w))
        for x in obs for y in obs for w in obs))
    report.check_all("endpoints.lambda", ((G.morphisms[C.lam(x)] == (osum(z, x), x), (x,)) for x in obs))
    report.check_all("endpoints.rho", ((G.morphisms[C.rho(x)] == (osum(x, z), x), (x,)) for x in obs))
    report.check_all("endpoints.eps", ((G.morphisms[C.eps[x]] == (osum(nx(x), x), z), (x,)) for x in obs))
    report.check_all("endpoints.delta", ((G.morphisms[C.delta[x]] == (osum(x, nx(x)), z), (x,)) for x in obs))
    if not report.passed:
        return report

    def alpha_nat():
        for f in mors:
            for g in mors:
                fg = msum(f, g)
                for h in mors:
                    lhs = comp[C.alpha(tgt(f), tgt(g), tgt(h)), msum(fg, h)]
                    rhs = comp[msum(f, msum(g, h)), C.alpha(src(f), src(g), src(h))]
                    yield lhs == rhs, (f, g, h)

    report.check_all("naturality.alpha", alpha_nat())
    report.check_all("naturality.lambda", (
        (comp[C.lam(tgt(f)), msum(one(z), f)] == comp[f, C.lam(src(f))], (f,)) for f in mors))
    report.check_all("naturality.rho", (
        (comp[C.rho(tgt(f)), msum(f, one(z))] == comp[f, C.rho(src(f))], (f,)) for f in mors))
    negs = {f: neg_morphism(C, f) for f in mors}
    report.check_all("naturality.eps", (
        (comp[C.eps[tgt(f)], msum(negs[f], f)] == C.eps[src(f)], (f,)) for f in mors))
    report.check_all("naturality.delta", (
        (comp[C.delta[tgt(f)], msum(f, negs[f])] == C.delta[src(f)], (f,)) for f in mors))

    def pentagon():
        a = C.alpha
        for x, y, w, t in itertools.product(obs, repeat=4):
            top = C.seq(a(x, y, osum(w, t)), a(osum(x, y), w, t))
            bottom = C.seq(msum(one(x), a(y, w, t)), a(x, osum(y, w), t), msum(a(x, y, w), one(t)))
            yield top == bottom, (x, y, w, t)

    report.check_all("pentagon", pentagon())
    report.check_all("triangle", (
        (C.seq(msum(one(x), C.lam(y)), C.alpha(x, z, y)) == msum(C.rho(x), one(y)), (x, y))
        for x in obs for y in obs))
    report.add("unit.lambda0_rho0", None if C.lam(z) == C.rho(z) else (z,))
    report.check_all("inverse.left_zigzag", (
        (C.seq(msum(one(x), C.eps[x]), C.alpha(x, nx(x), x), msum(inv(C.delta[x]), one(x)))
         == C.seq(inv(C.rho(x)), C.lam(x)), (x,)) for x in obs))
    report.check_all("inverse.right_zigzag", (
        (C.seq(msum(C.eps[x], one(nx(x))), inv(C.alpha(nx(x), x, nx(x))), msum(one(nx(x)), inv(C.delta[x])))
         == C.seq(inv(C.lam(nx(x))), C.rho(nx(x))), (x,)) for x in obs))
    return report


@dataclass(frozen=True)
class SpecialClosure:
    special: frozenset
    unique_flags: Mapping[tuple[str, str], int]
    _by_pair: dict = field(repr=False, compare=False, default_factory=dict)

    def between(self, x: str, y: str) -> tuple[str, ...]:
        return self._by_pair.get((x, y), ())

    def __contains__(self, f: object) -> bool:
        return f in self.special


def _close(C: CategoricalGroup, seed: set[str]) -> set[str]:
    special = set(seed)
    frontier = set(seed)
    while frontier:
        new: set[str] = set()
        for f in frontier:
            new.add(C.inv(f))
            for g in special:
                new.add(C.msum(f, g))
                new.add(C.msum(g, f))
                if C.tgt(f) == C.src(g):
                    new.add(C.groupoid.comp[g, f])
                if C.tgt(g) == C.src(f):
                    new.add(C.groupoid.comp[f, g])
        frontier = new - special
        special |= frontier
    return special


def special_closure(C: CategoricalGroup) -> SpecialClosure:
    """Least set containing identities and structure components, closed
    under composition, monoidal sum and inverse."""
    M = C.monoidal
    seed = {C.one(x) for x in C.objects}
    seed |= set(M.alpha.values()) | set(M.lam.values()) | set(M.rho.values())
    seed |= set(C.eps.values()) | set(C.delta.values())
    special = _close(C, seed)
    by_pair: dict = {}
    for f in C.morphisms:
        if f in special:
            by_pair.setdefault((C.src(f), C.tgt(f)), []).append(f)
    by_pair = {k: tuple(v) for k, v in by_pair.items()}
    flags = {k: len(v) for k, v in by_pair.items()}
    return SpecialClosure(frozenset(special), flags, by_pair)


def unique_special(C: CategoricalGroup, clo: SpecialClosure, x: str, y: str) -> str:
    found = clo.between(x, y)
    if not found:
        raise NoSpecial(f"no special morphism {x!r} -> {y!r}", x, y, found)
    if len(found) > 1:
        raise AmbiguousSpecial(
            f"{len(found)} special morphisms {x!r} -> {y!r}: {', '.join(found)}", x, y, found)
    return found[0]


def object_iso_setoid(C: CategoricalGroup) -> FiniteSetoid:
    """Objects related when some morphism joins them."""
    uf = _UnionFind(C.objects)
    for f in C.morphisms:
        uf.union(C.src(f), C.tgt(f))
    return _setoid_from(uf, C.objects)


def object_special_setoid(C: CategoricalGroup, clo: SpecialClosure) -> FiniteSetoid:
    """Objects related when some special morphism joins them."""
    uf = _UnionFind(C.objects)
    for f in clo.special:
        uf.union(C.src(f), C.tgt(f))
    return _setoid_from(uf, C.objects)


def _setoid_from(uf: _UnionFind, elements) -> FiniteSetoid:
    groups: dict = {}
    for x in elements:
        groups.setdefault(uf.find(x), []).append(x)
    return FiniteSetoid(elements, groups.values())


def congruence_between_morphisms(C: CategoricalGroup, f: str, g: str, mode: str = "any",
                                 closure: SpecialClosure | None = None):
    """Isomorphisms ``θ0: src f -> src g`` and ``θ1: tgt f -> tgt g`` with
    ``θ1 ∘ f = g ∘ θ0``, or None. ``mode="weak_special"`` restricts both to
    special morphisms."""
    if mode == "weak_special":
        if closure is None:
            closure = special_closure(C)
        cands0 = closure.between(C.src(f), C.src(g))
        cands1 = closure.between(C.tgt(f), C.tgt(g))
    elif mode == "any":
        cands0 = C.hom(C.src(f), C.src(g))
        cands1 = C.hom(C.tgt(f), C.tgt(g))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    comp = C.groupoid.comp
    for t0 in cands0:
        rhs = comp[g, t0]
        for t1 in cands1:
            if comp[t1, f] == rhs:
                return t0, t1
    return None


def morphism_congruence_setoid(C: CategoricalGroup, subset, mode: str = "any",
                               closure: SpecialClosure | None = None) -> FiniteSetoid:
    """The congruence relation on ``subset`` of the morphisms."""
    if mode == "weak_special" and closure is None:
        closure = special_closure(C)
    subset = list(subset)
    uf = _UnionFind(subset)
    for k, f in enumerate(subset):
        for g in subset[k + 1:]:
            if uf.find(f) != uf.find(g) and congruence_between_morphisms(C, f, g, mode, closure):
                uf.union(f, g)
    return _setoid_from(uf, subset)


def _workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("CCROSSED_WORKERS", "1") or 1)
    return max(1, workers)


def _lemma_comm_chunk(C: CategoricalGroup, closure: SpecialClosure, fs, gs):
    checked = 0
    for f in fs:
        for g in gs:
            checked += 1
            if congruence_between_morphisms(C, C.msum(f, g), C.msum(g, f), "weak_special", closure) is None:
                return checked, (f, g)
    return checked, None


def check_lemma_comm(C: CategoricalGroup, kernel: str = "special",
                     workers: int | None = None) -> ValidationReport:
    """``f + g`` and ``g + f`` are weakly specially isomorphic whenever
    ``tgt f`` and ``src g`` are linked to the zero object.

    ``kernel="special"`` links through special morphisms (the reading under
    which the statement holds for non-abelian pair groupoids); ``"iso"``
    accepts any isomorphism.
    """
    clo = special_closure(C)
    if kernel == "special":
        rel = object_special_setoid(C, clo)
    elif kernel == "iso":
        rel = object_iso_setoid(C)
    else:
        raise ValueError(f"unknown kernel reading {kernel!r}")
    near_zero = set(rel.block(C.zero))
    fs = [f for f in C.morphisms if C.tgt(f) in near_zero]
    gs = [g for g in C.morphisms if C.src(g) in near_zero]
    n = _workers(workers)
    report = ValidationReport(f"commutation lemma {C.name}".strip())
    if n == 1 or len(fs) < 2:
        results = [_lemma_comm_chunk(C, clo, fs, gs)]
    else:
        chunks = [fs[k::n] for k in range(n)]
        with ProcessPoolExecutor(n) as pool:
            results = list(pool.map(_lemma_comm_chunk, [C] * n, [clo] * n, chunks, [gs] * n))
    failures = [w for _, w in results if w is not None]
    # Chunks interleave the f list; report the earliest failing f for determinism.
    order = {f: k for k, f in enumerate(fs)}
    failures.sort(key=lambda w: (order[w[0]], gs.index(w[1])))
    report.add("lemma.weak_special_commutation", failures[0] if failures else None,
               note=f"{len(fs)}x{len(gs)} pairs, kernel={kernel}")
    return report
