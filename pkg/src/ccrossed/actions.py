"""Split extensions of c-groups, the actions they induce, and semidirect
products."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping

from .cgroup import (
    CGroup, CGroupHom, check_c_isomorphism, kernel_image, search_c_isomorphism,
    subcgroup, validate_hom,
)
from .report import ConstructionError, SearchNotAttempted, StructureError, ValidationReport
from .setoid import pair_id, product_setoid


@dataclass(frozen=True)
class SplitExtension:
    A: CGroup
    E: CGroup
    B: CGroup
    i: CGroupHom
    p: CGroupHom
    s: CGroupHom


@dataclass(frozen=True)
class CAction:
    B: CGroup
    A: CGroup
    table: Mapping[tuple[str, str], str]  # (b, a) -> b·a

    def __post_init__(self):
        for b in self.B.elements:
            for a in self.A.elements:
                if self.table.get((b, a)) not in self.A.carrier:
                    raise StructureError(f"action undefined or out of range at {(b, a)!r}")

    def __call__(self, b: str, a: str) -> str:
        return self.table[b, a]


def validate_split_extension(X: SplitExtension) -> ValidationReport:
    report = ValidationReport("split extension")
    for label, h in (("i", X.i), ("p", X.p), ("s", X.s)):
        report.merge(validate_hom(h), f"{label}.")
    hit = {X.p(e) for e in X.E.elements}
    report.check_all("extension.p_surjective", ((b in hit, (b,)) for b in X.B.elements))
    images = [X.i(a) for a in X.A.elements]
    report.add("extension.i_injective",
               None if len(set(images)) == len(images) else tuple(images))
    ker, _ = kernel_image(X.p)
    diff = sorted(set(ker) ^ set(images), key=X.E.elements.index)
    report.add("extension.i_is_ckernel", tuple(diff[:1]) if diff else None)
    report.check_all("extension.split", ((X.p(X.s(b)) == b, (b,)) for b in X.B.elements))
    return report


def _pull_back(X: SplitExtension, e: str) -> str:
    """Preimage under ``i``; falls back to the first ``a`` with ``i(a) ~ e``."""
    for a in X.A.elements:
        if X.i(a) == e:
            return a
    for a in X.A.elements:
        if X.E.related(X.i(a), e):
            return a
    raise ConstructionError(f"{e!r} escapes the c-kernel")


def induced_action(X: SplitExtension) -> CAction:
    """``b·a = s(b) + (a - s(b))`` computed in ``E`` and pulled back along ``i``."""
    E = X.E
    table = {(b, a): _pull_back(X, E.conj(X.s(b), X.i(a))) for b in X.B.elements for a in X.A.elements}
    act = CAction(X.B, X.A, table)
    rep = validate_caction(act)
    if not rep.passed:
        raise ConstructionError(f"induced action fails the action conditions:\n{rep}")
    return act


def validate_caction(act: CAction) -> ValidationReport:
    A, B = act.A, act.B
    EA, EB = A.elements, B.elements
    rel = A.related
    report = ValidationReport("c-action")
    report.check_all("action.additive", (
        (rel(act(b, A.add[a, a1]), A.add[act(b, a), act(b, a1)]), (b, a, a1))
        for b in EB for a in EA for a1 in EA))
    report.check_all("action.composition", (
        (rel(act(B.add[b, b1], a), act(b, act(b1, a))), (b, b1, a)) for b in EB for b1 in EB for a in EA))
    report.check_all("action.unit", ((rel(act(B.zero, a), a), (a,)) for a in EA))

    def compat():
        for b, b1 in B.carrier.related_pairs():
            for a in EA:
                yield rel(act(b, a), act(b1, a)), (a, a, b, b1)
        for a, a1 in A.carrier.related_pairs():
            for b in EB:
                yield rel(act(b, a), act(b, a1)), (a, a1, b, b)

    report.check_all("action.compatible", compat())
    return report


def semidirect(act: CAction) -> tuple[CGroup, CGroupHom, CGroupHom]:
    """``B ⋉ A`` with ``(b',a') + (b,a) = (b'+b, a' + b'·a)``, the projection
    to ``B`` and the section ``b -> (b, 0)``."""
    A, B = act.A, act.B
    carrier = product_setoid(B.carrier, A.carrier)
    add = {}
    for b2 in B.elements:
        for a2 in A.elements:
            for b in B.elements:
                for a in A.elements:
                    add[pair_id(b2, a2), pair_id(b, a)] = pair_id(B.add[b2, b], A.add[a2, act(b2, a)])
    neg = {}
    for b in B.elements:
        nb = B.neg[b]
        for a in A.elements:
            neg[pair_id(b, a)] = pair_id(nb, act(nb, A.neg[a]))
    S = CGroup(carrier, add, pair_id(B.zero, A.zero), neg,
               f"{B.name}⋉{A.name}" if B.name and A.name else "")
    if carrier.is_discrete():
        E = carrier.elements
        bad = next(((x, y, z) for x in E for y in E for z in E
                    if add[x, add[y, z]] != add[add[x, y], z]), None)
        if bad is not None:
            warnings.warn(f"semidirect product of exact inputs is not exactly associative at {bad!r}")
    p = CGroupHom(S, B, {pair_id(b, a): b for b in B.elements for a in A.elements})
    s = CGroupHom(B, S, {b: pair_id(b, A.zero) for b in B.elements})
    return S, p, s


def check_semidirect_iso(X: SplitExtension) -> ValidationReport:
    """``E`` is c-isomorphic to ``B ⋉ A`` and ``cKer p'`` to ``A``.

    The comparison maps are ``e -> (p(e), e - s(p(e)))`` and
    ``(b, a) -> i(a) + s(b)``.
    """
    report = ValidationReport("semidirect comparison")
    act = induced_action(X)
    S, p2, _ = semidirect(act)
    E = X.E
    fwd = CGroupHom(E, S, {e: pair_id(X.p(e), _pull_back(X, E.minus(e, X.s(X.p(e))))) for e in E.elements})
    bwd = CGroupHom(S, E, {pair_id(b, a): E.add[X.i(a), X.s(b)] for b in X.B.elements for a in X.A.elements})
    for label, h in (("iso.forward", fwd), ("iso.backward", bwd)):
        rep = validate_hom(h)
        first = rep.failures()[0] if rep.failures() else None
        report.add(label, None if first is None else (first.name,) + first.witness)
    report.add("iso.c_isomorphism", None if check_c_isomorphism(fwd, bwd) else ("composites",))
    ker, _ = kernel_image(p2)
    K = subcgroup(S, ker, "cKer p'")
    try:
        found = search_c_isomorphism(K, X.A)
        report.add("iso.kernel", None if found else ("no c-isomorphism",))
    except SearchNotAttempted as exc:
        report.add("iso.kernel", ("not attempted",), note=str(exc))
    return report
