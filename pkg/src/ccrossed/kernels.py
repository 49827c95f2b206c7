"""c-crossed modules extracted from a categorical group.

Two kernels of the source map are available. The relaxed kernel keeps every
arrow whose source is isomorphic to zero and inherits the monoidal sum
directly. The strict kernel keeps arrows leaving zero itself; its sum and
negation are corrected by the unique special arrows ``gamma: 0 -> 0+0`` and
``kappa: 0 -> -0`` so that the result stays inside the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import CAction
from .cgroup import CGroup, CGroupHom, validate_cgroup
from .crossed import CCrossedModule, classify_ccm, validate_ccm
from .monoidal import (
    CategoricalGroup, SpecialClosure, morphism_congruence_setoid, neg_morphism,
    object_iso_setoid, object_special_setoid, special_closure, unique_special,
)
from .report import ValidationReport


@dataclass(frozen=True)
class KernelCGroup:
    cgroup: CGroup
    kind: str
    gamma: str | None = None
    kappa: str | None = None


def objects_cgroup(C: CategoricalGroup) -> CGroup:
    """Objects under the monoidal sum, related when isomorphic."""
    return CGroup(object_iso_setoid(C), dict(C.monoidal.obj_sum), C.zero, dict(C.neg_obj),
                  f"Ob({C.name})" if C.name else "")


def relaxed_kernel_cgroup(C: CategoricalGroup) -> KernelCGroup:
    near_zero = set(object_iso_setoid(C).block(C.zero))
    elems = [f for f in C.morphisms if C.src(f) in near_zero]
    add = {(f, g): C.msum(f, g) for f in elems for g in elems}
    neg = {f: neg_morphism(C, f) for f in elems}
    carrier = morphism_congruence_setoid(C, elems, "any")
    return KernelCGroup(CGroup(carrier, add, C.one(C.zero), neg, "relaxed kernel"), "relaxed")


def _conjugation_by_identity(C: CategoricalGroup, r: str, c: str) -> str:
    """``i(r) + (c - i(r))`` computed with the monoidal sum."""
    one_r = C.one(r)
    return C.msum(one_r, C.msum(c, neg_morphism(C, one_r)))


def relaxed_kernel_ccm(C: CategoricalGroup) -> CCrossedModule:
    clo = special_closure(C)
    K = relaxed_kernel_cgroup(C).cgroup
    H = objects_cgroup(C)
    table = {(r, c): _conjugation_by_identity(C, r, c) for r in H.elements for c in K.elements}
    return CCrossedModule(
        K, H, CGroupHom(K, H, {c: C.tgt(c) for c in K.elements}), CAction(H, K, table),
        object_special_setoid(C, clo),
        morphism_congruence_setoid(C, K.elements, "weak_special", clo),
        name=f"relaxed({C.name})")


def strict_kernel_cgroup(C: CategoricalGroup, gamma: str | None = None, kappa: str | None = None,
                         closure: SpecialClosure | None = None) -> KernelCGroup:
    """Arrows out of zero with ``f + f' = (f + f') ∘ gamma`` and ``-f = (-f) ∘ kappa``.

    ``gamma`` and ``kappa`` default to the unique special arrows
    ``0 -> 0+0`` and ``0 -> -0``; NoSpecial / AmbiguousSpecial propagate.
    Passing them explicitly overrides the resolution.
    """
    clo = closure or special_closure(C)
    z = C.zero
    if gamma is None:
        gamma = unique_special(C, clo, z, C.osum(z, z))
    if kappa is None:
        kappa = unique_special(C, clo, z, C.oneg(z))
    elems = [f for f in C.morphisms if C.src(f) == z]
    add = {(f, g): C.seq(C.msum(f, g), gamma) for f in elems for g in elems}
    neg = {f: C.seq(neg_morphism(C, f), kappa) for f in elems}
    carrier = morphism_congruence_setoid(C, elems, "any")
    return KernelCGroup(CGroup(carrier, add, C.one(z), neg, "strict kernel"), "strict", gamma, kappa)


def build_cssc(C: CategoricalGroup) -> tuple[CCrossedModule, ValidationReport]:
    """The c-crossed module on the strict kernel, with its certification.

    Raises NoSpecial / AmbiguousSpecial when a required special arrow
    (``0 -> 0+0``, ``0 -> -0``, ``0 -> r+(0-r)``) is missing or not unique.
    Certification failures are reported, never suppressed.
    """
    clo = special_closure(C)
    kern = strict_kernel_cgroup(C, closure=clo)
    K = kern.cgroup
    H = objects_cgroup(C)
    z = C.zero
    gammas = {r: unique_special(C, clo, z, C.osum(r, C.osum(z, C.oneg(r)))) for r in H.elements}
    table = {(r, c): C.seq(_conjugation_by_identity(C, r, c), gammas[r])
             for r in H.elements for c in K.elements}
    X = CCrossedModule(
        K, H, CGroupHom(K, H, {c: C.tgt(c) for c in K.elements}), CAction(H, K, table),
        object_special_setoid(C, clo),
        morphism_congruence_setoid(C, K.elements, "weak_special", clo),
        name=f"cssc({C.name})")

    report = ValidationReport(f"cssc certification {C.name}".strip())
    report.add("resolve.gamma", None, note=f"{z} -> {C.osum(z, z)}: {kern.gamma}")
    report.add("resolve.kappa", None, note=f"{z} -> {C.oneg(z)}: {kern.kappa}")
    report.merge(validate_cgroup(K), "kernel.")
    report.merge(validate_ccm(X, "strict"))
    cls = classify_ccm(X)
    report.merge(cls.report)
    report.merge(composition_lifts(C, X))
    return X, report


def composition_lifts(C: CategoricalGroup, X: CCrossedModule) -> ValidationReport:
    """For every kernel arrow ``c`` and arrow ``g: tgt c -> r``, the lift
    ``g ∘ c`` stays in the kernel, has boundary ``r`` and is related to ``c``."""
    report = ValidationReport("lifts by composition")
    members = set(X.G.elements)

    def cases():
        for c in X.G.elements:
            for r in C.objects:
                for g in C.hom(C.tgt(c), r):
                    lift = C.seq(g, c)
                    yield lift in members and X.bd(lift) == r and X.G.related(lift, c), (c, g)

    report.check_all("lift.by_composition", cases())
    return report
