"""c-crossed modules: a c-group morphism ``bd: G -> H`` with an action of
``H`` on ``G``, plus the data needed to speak about special congruences.

``special_H`` is the designated sub-relation of ``H``'s congruence whose
pairs count as special. ``special_G`` optionally pins the weak-special
relation on ``G``; when absent it is derived as the pairs ``g ~ g'`` whose
boundaries are specially related in ``H``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import CAction, validate_caction
from .cgroup import CGroup, CGroupHom, group_profile, inclusion, subcgroup, subgroup_profile, validate_hom
from .classical import CrossedModule
from .report import ConstructionError, StructureError, ValidationReport
from .setoid import FiniteSetoid


@dataclass(frozen=True)
class CCrossedModule:
    G: CGroup
    H: CGroup
    bd: CGroupHom
    act: CAction
    special_H: FiniteSetoid
    special_G: FiniteSetoid | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.bd.source.elements != self.G.elements or self.bd.target.elements != self.H.elements:
            raise StructureError("boundary endpoints do not match G and H")
        if self.act.A.elements != self.G.elements or self.act.B.elements != self.H.elements:
            raise StructureError("action is not an action of H on G")
        if not self.special_H.refines(self.H.carrier):
            raise StructureError("special_H must be a sub-relation of H's congruence")
        if self.special_G is not None and not self.special_G.refines(self.G.carrier):
            raise StructureError("special_G must be a sub-relation of G's congruence")

    def weak_special(self) -> FiniteSetoid:
        if self.special_G is not None:
            return self.special_G
        groups: dict = {}
        for g in self.G.elements:
            key = self.G.carrier.block_index(g), self.special_H.block_index(self.bd(g))
            groups.setdefault(key, []).append(g)
        return FiniteSetoid(self.G.elements, groups.values())


@dataclass(frozen=True)
class CCrossedModuleMorphism:
    source: CCrossedModule
    target: CCrossedModule
    f: CGroupHom  # G -> G'
    g: CGroupHom  # H -> H'


def validate_ccm(X: CCrossedModule, level: str = "base") -> ValidationReport:
    """Boundary and action certified, then the two crossed-module conditions.

    The equivariance condition is always exact. The Peiffer condition is up
    to the relation at ``level="base"`` and exact at ``level="strict"``.
    """
    if level not in ("base", "strict"):
        raise ValueError(f"unknown level {level!r}")
    G, H, bd, act = X.G, X.H, X.bd, X.act
    report = ValidationReport(f"c-crossed module {X.name}".strip())
    report.merge(validate_hom(bd), "bd.")
    report.merge(validate_caction(act), "act.")

    bad = next(((b, a) for b in H.elements for a in G.elements
                if bd(act(b, a)) != H.conj(b, bd(a))), None)
    if bad is None:
        report.add("ccm.equivariance")
    else:
        b, a = bad
        close = H.related(bd(act(b, a)), H.conj(b, bd(a)))
        report.add("ccm.equivariance", bad,
                   note="holds up to the relation only" if close else "")

    if level == "base":
        report.check_all("ccm.peiffer", (
            (G.related(act(bd(a), a1), G.conj(a, a1)), (a, a1)) for a in G.elements for a1 in G.elements))
    else:
        report.check_all("ccm.peiffer.exact", (
            (act(bd(a), a1) == G.conj(a, a1), (a, a1)) for a in G.elements for a1 in G.elements))
    return report


@dataclass(frozen=True)
class CCMClassification:
    connected: bool
    strict: bool
    special: bool
    report: ValidationReport = field(compare=False)

    @property
    def cssc(self) -> bool:
        return self.connected and self.strict and self.special


def lifting_report(X: CCrossedModule) -> ValidationReport:
    """Lifting of congruences ``bd(c) ~ r`` to exact preimages.

    Existence: some ``c' ~ c`` has ``bd(c') = r``. Uniqueness, when the
    congruence is special: exactly one such ``c'`` is weakly specially
    related to ``c``.
    """
    G, H, bd = X.G, X.H, X.bd
    ws = X.weak_special()
    report = ValidationReport("lifting condition")
    missing = None
    clash = None
    for c in G.elements:
        for r in H.carrier.block(bd(c)):
            cands = [c2 for c2 in G.carrier.block(c) if bd(c2) == r]
            if not cands and missing is None:
                missing = (c, r)
            if X.special_H.related(bd(c), r):
                hits = [c2 for c2 in cands if ws.related(c2, c)]
                if len(hits) != 1 and clash is None:
                    clash = (c, r, *hits)
    report.add("lift.existence", missing)
    report.add("lift.uniqueness", clash)
    return report


def classify_ccm(X: CCrossedModule) -> CCMClassification:
    report = ValidationReport(f"classification {X.name}".strip())
    prof = group_profile(X.G)
    report.add("class.connected", None if prof.connected else prof.witnesses["connected"])
    strict = validate_ccm(X, "strict")
    failures = strict.failures()
    report.add("class.strict", None if not failures else (failures[0].name,) + (failures[0].witness or ()))
    lift = lifting_report(X)
    report.merge(lift, "class.")
    return CCMClassification(prof.connected, strict.passed, lift.passed, report)


def validate_ccm_morphism(m: CCrossedModuleMorphism) -> ValidationReport:
    X, Y, f, g = m.source, m.target, m.f, m.g
    report = ValidationReport("c-crossed module morphism")
    report.merge(validate_hom(f), "f.")
    report.merge(validate_hom(g), "g.")
    report.check_all("morphism.square", ((g(X.bd(a)) == Y.bd(f(a)), (a,)) for a in X.G.elements))
    report.check_all("morphism.equivariance", (
        (f(X.act(b, a)) == Y.act(g(b), f(a)), (b, a)) for b in X.H.elements for a in X.G.elements))
    return report


def conjugation_ccm(G: CGroup, H) -> CCrossedModule:
    """Inclusion of a perfect normal c-subgroup, acted on by conjugation."""
    H = [a for a in G.elements if a in set(H)]
    prof = subgroup_profile(G, H)
    if not prof.perfect_normal:
        raise ConstructionError(f"not a perfect normal c-subgroup: {prof}")
    sub = subcgroup(G, H, f"{G.name}>H" if G.name else "")
    members = set(H)
    table = {}
    for g in G.elements:
        for h in H:
            x = G.conj(g, h)
            if x not in members:
                raise ConstructionError(f"conjugate {x!r} of {h!r} by {g!r} escapes H")
            table[g, h] = x
    X = CCrossedModule(sub, G, inclusion(sub, G), CAction(G, sub, table),
                       FiniteSetoid.discrete(G.elements), name=f"conj({G.name})")
    rep = validate_ccm(X)
    if not rep.passed:
        raise ConstructionError(f"conjugation c-crossed module fails validation:\n{rep}")
    return X


def ccm_from_xmod(X: CrossedModule) -> CCrossedModule:
    """A crossed module of groups with equality as every relation."""
    A, B = X.A.as_cgroup(), X.B.as_cgroup()
    return CCrossedModule(A, B, CGroupHom(A, B, dict(X.mu)), CAction(B, A, dict(X.action)),
                          FiniteSetoid.discrete(B.elements), name=X.name)
