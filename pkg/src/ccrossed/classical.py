"""Crossed modules of groups, group-groupoids, the standard passage between
them, and the fixture generators used across the test-suite and CLI."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from . import groups
from .cgroup import CGroup, PlainGroup, find_group_isomorphism, iter_homs, validate_group
from .monoidal import CategoricalGroup, FiniteGroupoid, MonoidalStructure, validate_groupoid
from .report import ConstructionError, StructureError, ValidationReport
from .setoid import build_congruence, pair_id

AUT_LIMIT = 8


@dataclass(frozen=True)
class CrossedModule:
    A: PlainGroup
    B: PlainGroup
    mu: Mapping[str, str]
    action: Mapping[tuple[str, str], str]  # (b, a) -> b·a
    name: str = field(default="", compare=False)

    def __post_init__(self):
        for a in self.A.elements:
            if self.mu.get(a) not in self.B.elements:
                raise StructureError(f"mu undefined or out of range at {a!r}")
            for b in self.B.elements:
                if self.action.get((b, a)) not in self.A.elements:
                    raise StructureError(f"action undefined or out of range at {(b, a)!r}")

    def act(self, b: str, a: str) -> str:
        return self.action[b, a]


def validate_crossed_module(X: CrossedModule) -> ValidationReport:
    A, B, mu, act = X.A, X.B, X.mu, X.act
    report = ValidationReport(f"crossed module {X.name}".strip())
    report.merge(validate_group(A), "A.")
    report.merge(validate_group(B), "B.")
    EA, EB = A.elements, B.elements
    report.check_all("xmod.mu_hom", ((mu[A.add[a, c]] == B.add[mu[a], mu[c]], (a, c)) for a in EA for c in EA))
    report.check_all("xmod.action_additive", (
        (act(b, A.add[a, c]) == A.add[act(b, a), act(b, c)], (b, a, c)) for b in EB for a in EA for c in EA))
    report.check_all("xmod.action_composition", (
        (act(B.add[b, b2], a) == act(b, act(b2, a)), (b, b2, a)) for b in EB for b2 in EB for a in EA))
    report.check_all("xmod.action_unit", ((act(B.zero, a) == a, (a,)) for a in EA))
    report.check_all("xmod.equivariance", (
        (mu[act(b, a)] == B.add[b, B.add[mu[a], B.neg[b]]], (b, a)) for b in EB for a in EA))
    report.check_all("xmod.peiffer", (
        (act(mu[a], a1) == A.add[a, A.add[a1, A.neg[a]]], (a, a1)) for a in EA for a1 in EA))
    return report


@dataclass(frozen=True)
class GroupGroupoid:
    groupoid: FiniteGroupoid
    obj_group: PlainGroup
    mor_group: PlainGroup
    name: str = field(default="", compare=False)


def validate_group_groupoid(GG: GroupGroupoid) -> ValidationReport:
    G, O, M = GG.groupoid, GG.obj_group, GG.mor_group
    report = ValidationReport(f"group-groupoid {GG.name}".strip())
    report.merge(validate_groupoid(G))
    report.merge(validate_group(O), "objects.")
    report.merge(validate_group(M), "morphisms.")
    report.add("carriers", None if (set(O.elements) == set(G.objects)
                                    and set(M.elements) == set(G.morphisms)) else ("mismatch",))
    if not report.passed:
        return report
    mors = list(G.morphisms)
    report.check_all("gg.source_hom", ((G.src(M.add[f, g]) == O.add[G.src(f), G.src(g)], (f, g))
                                       for f in mors for g in mors))
    report.check_all("gg.target_hom", ((G.tgt(M.add[f, g]) == O.add[G.tgt(f), G.tgt(g)], (f, g))
                                       for f in mors for g in mors))
    report.check_all("gg.identity_hom", ((M.add[G.ident[x], G.ident[y]] == G.ident[O.add[x, y]], (x, y))
                                         for x in G.objects for y in G.objects))
    if not report.passed:
        return report
    pairs = list(G.composable_pairs())
    report.check_all("gg.interchange", (
        (G.comp[M.add[f2, g2], M.add[f, g]] == M.add[G.comp[f2, f], G.comp[g2, g]], (f2, f, g2, g))
        for (f2, f) in pairs for (g2, g) in pairs))
    return report


def catgroup_from_gg(GG: GroupGroupoid) -> CategoricalGroup:
    """The group-groupoid as a categorical group with identity structure maps."""
    G, O, M = GG.groupoid, GG.obj_group, GG.mor_group
    obs = G.objects
    one = G.ident
    monoidal = MonoidalStructure(
        obj_sum=dict(O.add), mor_sum=dict(M.add), zero_obj=O.zero,
        alpha={(x, y, z): one[O.add[O.add[x, y], z]] for x in obs for y in obs for z in obs},
        lam={x: one[x] for x in obs}, rho={x: one[x] for x in obs})
    return CategoricalGroup(G, monoidal, dict(O.neg), {x: one[O.zero] for x in obs},
                            {x: one[O.zero] for x in obs}, GG.name)


def pair_group_groupoid(X: PlainGroup) -> GroupGroupoid:
    """``X × X`` with one arrow ``x>y`` from ``x`` to ``y``."""
    E = X.elements

    def m(x, y):
        return f"{x}>{y}"

    morphisms = {m(x, y): (x, y) for x in E for y in E}
    comp = {(m(t, y), m(z, t)): m(z, y) for z in E for t in E for y in E}
    G = FiniteGroupoid(E, morphisms, comp, {x: m(x, x) for x in E}, {m(x, y): m(y, x) for x in E for y in E})
    madd = {(m(x, y), m(u, v)): m(X.add[x, u], X.add[y, v]) for x in E for y in E for u in E for v in E}
    M = PlainGroup(tuple(morphisms), madd, m(X.zero, X.zero), {m(x, y): m(X.neg[x], X.neg[y]) for x in E for y in E},
                   f"{X.name}x{X.name}")
    return GroupGroupoid(G, X, M, f"pair({X.name})")


def discrete_group_groupoid(X: PlainGroup) -> GroupGroupoid:
    """Only identity arrows ``1[x]``."""
    E = X.elements

    def m(x):
        return f"1[{x}]"

    G = FiniteGroupoid(E, {m(x): (x, x) for x in E}, {(m(x), m(x)): m(x) for x in E},
                       {x: m(x) for x in E}, {m(x): m(x) for x in E})
    M = PlainGroup(tuple(m(x) for x in E), {(m(x), m(y)): m(X.add[x, y]) for x in E for y in E},
                   m(X.zero), {m(x): m(X.neg[x]) for x in E}, f"1[{X.name}]")
    return GroupGroupoid(G, X, M, f"discrete({X.name})")


def gg_from_xmod(X: CrossedModule) -> GroupGroupoid:
    """Arrows ``(b,a): b -> mu(a)+b`` forming ``B ⋉ A``."""
    rep = validate_crossed_module(X)
    if not rep.passed:
        raise ConstructionError(f"input is not a crossed module:\n{rep}")
    A, B = X.A, X.B
    arrows = [(b, a) for b in B.elements for a in A.elements]
    name = {p: pair_id(*p) for p in arrows}

    def d1(b, a):
        return B.add[X.mu[a], b]

    morphisms = {name[b, a]: (b, d1(b, a)) for b, a in arrows}
    comp = {}
    for b, a in arrows:
        for a2 in A.elements:
            comp[name[d1(b, a), a2], name[b, a]] = name[b, A.add[a2, a]]
    ident = {b: name[b, A.zero] for b in B.elements}
    inv = {name[b, a]: name[d1(b, a), A.neg[a]] for b, a in arrows}
    G = FiniteGroupoid(B.elements, morphisms, comp, ident, inv)
    madd = {(name[b, a], name[b2, a2]): name[B.add[b, b2], A.add[a, X.act(b, a2)]]
            for b, a in arrows for b2, a2 in arrows}
    mneg = {}
    for b, a in arrows:
        nb = B.neg[b]
        mneg[name[b, a]] = name[nb, X.act(nb, A.neg[a])]
    M = PlainGroup(tuple(name[p] for p in arrows), madd, name[B.zero, A.zero], mneg,
                   f"{B.name}⋉{A.name}")
    out = GroupGroupoid(G, B, M, f"gg({X.name})")
    rep = validate_group_groupoid(out)
    if not rep.passed:
        raise ConstructionError(f"constructed group-groupoid fails validation:\n{rep}")
    return out


def xmod_from_gg(GG: GroupGroupoid) -> CrossedModule:
    """Arrows out of zero, mapped by their target, acted on by conjugation
    with identities."""
    rep = validate_group_groupoid(GG)
    if not rep.passed:
        raise ConstructionError(f"input is not a group-groupoid:\n{rep}")
    G, O, M = GG.groupoid, GG.obj_group, GG.mor_group
    ker = [f for f in M.elements if G.src(f) == O.zero]
    A = PlainGroup(tuple(ker), {(f, g): M.add[f, g] for f in ker for g in ker}, M.zero,
                   {f: M.neg[f] for f in ker}, f"Ker({GG.name})")
    action = {}
    for b in O.elements:
        ib = G.ident[b]
        for a in ker:
            action[b, a] = M.add[ib, M.add[a, M.neg[ib]]]
    out = CrossedModule(A, O, {a: G.tgt(a) for a in ker}, action, f"xmod({GG.name})")
    rep = validate_crossed_module(out)
    if not rep.passed:
        raise ConstructionError(f"constructed crossed module fails validation:\n{rep}")
    return out


def find_xmod_isomorphism(X: CrossedModule, Y: CrossedModule):
    """Group isomorphisms ``(phi_A, phi_B)`` commuting with mu and the actions, or None."""
    if len(X.A) != len(Y.A) or len(X.B) != len(Y.B):
        return None
    a_isos = list(iter_homs(X.A.as_cgroup(), Y.A.as_cgroup(), bijective=True))
    for pb in iter_homs(X.B.as_cgroup(), Y.B.as_cgroup(), bijective=True):
        for pa in a_isos:
            if all(pb(X.mu[a]) == Y.mu[pa(a)] for a in X.A.elements) and all(
                    pa(X.act(b, a)) == Y.act(pb(b), pa(a)) for b in X.B.elements for a in X.A.elements):
                return pa.table, pb.table
    return None


def automorphism_group(G: PlainGroup) -> tuple[PlainGroup, dict[str, dict[str, str]]]:
    """``Aut G`` under composition, with the identity listed first."""
    if len(G) > AUT_LIMIT:
        raise ConstructionError(f"automorphism enumeration is capped at order {AUT_LIMIT}")
    tables = [h.table for h in iter_homs(G.as_cgroup(), G.as_cgroup(), bijective=True)]
    ident = {g: g for g in G.elements}
    tables.sort(key=lambda t: t != ident)
    names = [f"aut{k}" for k in range(len(tables))]
    lookup = {tuple(t[g] for g in G.elements): n for n, t in zip(names, tables)}
    maps = dict(zip(names, tables))

    def compose(p, q):
        return lookup[tuple(maps[p][maps[q][g]] for g in G.elements)]

    return PlainGroup.from_operation(names, compose, f"Aut({G.name})"), maps


def inner_xmod(G: PlainGroup) -> CrossedModule:
    """``G -> Aut G`` sending ``g`` to conjugation by ``g``."""
    aut, maps = automorphism_group(G)
    lookup = {tuple(t[x] for x in G.elements): n for n, t in maps.items()}
    mu = {g: lookup[tuple(G.add[g, G.add[x, G.neg[g]]] for x in G.elements)] for g in G.elements}
    action = {(p, g): maps[p][g] for p in aut.elements for g in G.elements}
    return CrossedModule(G, aut, mu, action, f"inner({G.name})")


def normal_inclusion_xmod(G: PlainGroup, N) -> CrossedModule:
    N = [g for g in G.elements if g in set(N)]
    A = PlainGroup(tuple(N), {(a, b): G.add[a, b] for a in N for b in N}, G.zero,
                   {a: G.neg[a] for a in N}, f"N<{G.name}")
    action = {(g, a): G.add[g, G.add[a, G.neg[g]]] for g in G.elements for a in N}
    return CrossedModule(A, G, {a: a for a in N}, action, f"{A.name}")


def identity_xmod(G: PlainGroup) -> CrossedModule:
    return normal_inclusion_xmod(G, G.elements)


def zero_xmod(A: PlainGroup, B: PlainGroup) -> CrossedModule:
    """``mu = 0`` with the trivial action; a crossed module when A is abelian."""
    return CrossedModule(A, B, {a: B.zero for a in A.elements},
                         {(b, a): a for b in B.elements for a in A.elements}, f"0:{A.name}->{B.name}")


def mac_lane_cgroup(G: PlainGroup, N) -> CGroup:
    """``G`` with ``g ~ g'`` iff ``g - g'`` lies in the normal subgroup ``N``."""
    N = set(N)
    pairs = [(g, h) for g in G.elements for h in G.elements if G.add[g, G.neg[h]] in N]
    carrier = build_congruence(G.elements, pairs)
    return CGroup(carrier, dict(G.add), G.zero, dict(G.neg), f"{G.name}~N")


def cyclic_cocycle(n: int, m: int, k: int = 1) -> dict[tuple[str, str, str], str]:
    """``omega(a,b,c) = k·a·carry(b,c)`` on ``Z/n`` with values in ``Z/m``."""
    return {(str(a), str(b), str(c)): str(k * a * ((b + c) // n) % m)
            for a in range(n) for b in range(n) for c in range(n)}


def cocycle_defect(G: PlainGroup, A: PlainGroup, omega) -> tuple | None:
    """First quadruple violating the 3-cocycle identity (trivial action), or None."""
    add, s = G.add, A.add
    for x, y, z, t in itertools.product(G.elements, repeat=4):
        lhs = s[omega[x, y, G.add[z, t]], omega[add[x, y], z, t]]
        rhs = s[s[omega[y, z, t], omega[x, add[y, z], t]], omega[x, y, z]]
        if lhs != rhs:
            return x, y, z, t
    return None


def skeletal_catgroup(G: PlainGroup, A: PlainGroup, omega, *, check_cocycle: bool = True) -> CategoricalGroup:
    """One object per element of ``G``, ``hom(x, x) = A``, associator ``omega``.

    Unitors and ``delta`` are zero; each ``eps_x`` is found by exhausting
    ``A`` against both inverse diagrams. With ``check_cocycle=False`` the
    cocycle and normalisation checks are skipped and ``eps_x`` falls back to
    zero when no solution exists, so deliberately broken associators can be
    fed to the validator.
    """
    if any(A.add[a, b] != A.add[b, a] for a in A.elements for b in A.elements):
        raise ConstructionError("coefficient group must be abelian")
    omega = {k: omega[k] for k in itertools.product(G.elements, repeat=3)}
    if check_cocycle:
        bad = [k for k, v in omega.items() if G.zero in k and v != A.zero]
        if bad:
            raise ConstructionError(f"omega is not normalised at {bad[0]!r}")
        defect = cocycle_defect(G, A, omega)
        if defect:
            raise ConstructionError(f"omega fails the cocycle identity at {defect!r}")

    def m(x, a):
        return f"{x}:{a}"

    E, EA = G.elements, A.elements
    morphisms = {m(x, a): (x, x) for x in E for a in EA}
    comp = {(m(x, b), m(x, a)): m(x, A.add[b, a]) for x in E for a in EA for b in EA}
    groupoid = FiniteGroupoid(E, morphisms, comp, {x: m(x, A.zero) for x in E},
                              {m(x, a): m(x, A.neg[a]) for x in E for a in EA})
    monoidal = MonoidalStructure(
        obj_sum=dict(G.add),
        mor_sum={(m(x, a), m(y, b)): m(G.add[x, y], A.add[a, b]) for x in E for a in EA for y in E for b in EA},
        zero_obj=G.zero,
        alpha={(x, y, z): m(G.add[G.add[x, y], z], omega[x, y, z]) for x in E for y in E for z in E},
        lam={x: m(x, A.zero) for x in E}, rho={x: m(x, A.zero) for x in E})
    delta = {x: m(G.zero, A.zero) for x in E}
    # Both diagrams reduce to linear equations in A for each x separately.
    eps = {}
    for x in E:
        nx = G.neg[x]
        sols = [e for e in EA
                if A.add[e, omega[x, nx, x]] == A.zero
                and A.add[e, A.neg[omega[nx, x, nx]]] == A.zero]
        if not sols and check_cocycle:
            raise ConstructionError(f"no eps component solves the inverse diagrams at {x!r}")
        eps[x] = m(G.zero, sols[0] if sols else A.zero)
    return CategoricalGroup(groupoid, monoidal, dict(G.neg), eps, delta,
                            f"skeletal({G.name},{A.name})")


@dataclass(frozen=True)
class FixtureParams:
    kind: str
    group: str = "Z2"
    coefficients: str = "Z2"
    omega: str = "nontrivial"
    normal: tuple[str, ...] | None = None


FIXTURE_KINDS = ("pair_gg", "discrete_gg", "skeletal", "mac_lane_cgroup", "inner_xmod",
                 "identity_xmod", "normal_inclusion_xmod", "zero_xmod", "xmod_gg")


def make_fixture(p: FixtureParams):
    """Build a named fixture; the result passes its validator."""
    G = groups.by_name(p.group)
    if p.kind == "pair_gg":
        return catgroup_from_gg(pair_group_groupoid(G))
    if p.kind == "discrete_gg":
        return catgroup_from_gg(discrete_group_groupoid(G))
    if p.kind == "skeletal":
        A = groups.by_name(p.coefficients)
        if p.omega == "zero":
            omega = {k: A.zero for k in itertools.product(G.elements, repeat=3)}
        elif p.omega == "nontrivial":
            if not (G.name.startswith("Z") and A.name.startswith("Z")):
                raise ConstructionError("the built-in nontrivial cocycle needs cyclic groups")
            omega = cyclic_cocycle(len(G), len(A))
        else:
            raise ConstructionError(f"unknown omega {p.omega!r}")
        return skeletal_catgroup(G, A, omega)
    if p.kind == "mac_lane_cgroup":
        return mac_lane_cgroup(G, p.normal or (G.zero,))
    if p.kind == "inner_xmod":
        return inner_xmod(G)
    if p.kind == "identity_xmod":
        return identity_xmod(G)
    if p.kind == "normal_inclusion_xmod":
        return normal_inclusion_xmod(G, p.normal or G.elements)
    if p.kind == "zero_xmod":
        return zero_xmod(groups.by_name(p.coefficients), G)
    if p.kind == "xmod_gg":
        return catgroup_from_gg(gg_from_xmod(inner_xmod(G)))
    raise ConstructionError(f"unknown fixture kind {p.kind!r}")


__all__ = [
    "CrossedModule", "GroupGroupoid", "FixtureParams", "FIXTURE_KINDS",
    "validate_crossed_module", "validate_group_groupoid", "catgroup_from_gg",
    "pair_group_groupoid", "discrete_group_groupoid", "gg_from_xmod", "xmod_from_gg",
    "find_xmod_isomorphism", "find_group_isomorphism", "automorphism_group", "inner_xmod",
    "normal_inclusion_xmod", "identity_xmod", "zero_xmod", "mac_lane_cgroup",
    "cyclic_cocycle", "cocycle_defect", "skeletal_catgroup", "make_fixture",
]
