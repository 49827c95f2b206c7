import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from ccrossed import groups  # noqa: E402
from ccrossed.actions import SplitExtension  # noqa: E402
from ccrossed.cgroup import (  # noqa: E402
    CGroup, CGroupHom, identity_hom, iter_homs, quotient_by_normal, quotient_by_relation, subcgroup,
)
from ccrossed.classical import FixtureParams, mac_lane_cgroup, make_fixture  # noqa: E402
from ccrossed.setoid import FiniteSetoid  # noqa: E402

CATGROUP_FIXTURES = {
    "pair_z2": FixtureParams("pair_gg", "Z2"),
    "pair_z3": FixtureParams("pair_gg", "Z3"),
    "pair_s3": FixtureParams("pair_gg", "S3"),
    "discrete_z4": FixtureParams("discrete_gg", "Z4"),
    "xmod_gg_z3": FixtureParams("xmod_gg", "Z3"),
    "skeletal": FixtureParams("skeletal", "Z2", "Z2", "nontrivial"),
}

_cache: dict = {}


def catgroup(key):
    if key not in _cache:
        _cache[key] = make_fixture(CATGROUP_FIXTURES[key])
    return _cache[key]


@pytest.fixture(params=sorted(CATGROUP_FIXTURES))
def any_catgroup(request):
    return catgroup(request.param)


def z4_mod2() -> CGroup:
    return mac_lane_cgroup(groups.cyclic(4), ("0", "2"))


def discrete(name: str) -> CGroup:
    return groups.by_name(name).as_cgroup()


def trivial_extension(A: CGroup | None = None) -> SplitExtension:
    A = A or discrete("Z2")
    B = groups.trivial().as_cgroup()
    return SplitExtension(A, A, B, CGroupHom(A, A, {a: a for a in A.elements}),
                          CGroupHom(A, B, {a: B.zero for a in A.elements}), CGroupHom(B, A, {B.zero: A.zero}))


def parity_extension() -> SplitExtension:
    """``{0,2} -> Z4 -> Z4`` with mod-2 blocks, projection and section the identity."""
    E = z4_mod2()
    A = subcgroup(E, ("0", "2"), "2Z4")
    ident = {a: a for a in E.elements}
    return SplitExtension(A, E, E, CGroupHom(A, E, {a: a for a in A.elements}), CGroupHom(E, E, ident),
                          CGroupHom(E, E, ident))


def parity_extension_discrete() -> SplitExtension:
    """The exact ``{0,2} -> Z4 -> Z2`` with ``s(1) = 1``; ``s`` is not additive."""
    E = discrete("Z4")
    A = subcgroup(E, ("0", "2"), "2Z4")
    B = discrete("Z2")
    return SplitExtension(A, E, B, CGroupHom(A, E, {"0": "0", "2": "2"}),
                          CGroupHom(E, B, {e: str(int(e) % 2) for e in E.elements}),
                          CGroupHom(B, E, {"0": "0", "1": "1"}))


R3 = "120"  # a 3-cycle in S3
T01 = "102"  # a transposition in S3


def s3_extension() -> SplitExtension:
    """``Z3 -> S3 -> Z2`` by sign, ``i(k) = r^k``, section hitting a transposition."""
    S3 = groups.symmetric(3)
    E = S3.as_cgroup()
    A, B = discrete("Z3"), discrete("Z2")
    r2 = S3.add[R3, R3]
    i = CGroupHom(A, E, {"0": "012", "1": R3, "2": r2})
    rotations = {"012", R3, r2}
    p = CGroupHom(E, B, {e: "0" if e in rotations else "1" for e in E.elements})
    s = CGroupHom(B, E, {"0": "012", "1": T01})
    return SplitExtension(A, E, B, i, p, s)


def parity(src: CGroup) -> CGroupHom:
    return CGroupHom(src, discrete("Z2"), {a: str(int(a) % 2) for a in src.elements})


def hom_suite():
    G = z4_mod2()
    Z2, Z3, Z4, S3 = (discrete(n) for n in ("Z2", "Z3", "Z4", "S3"))
    homs = [identity_hom(G), parity(G), parity(Z4), identity_hom(S3)]
    homs += list(iter_homs(Z4, Z4)) + list(iter_homs(S3, Z2)) + list(iter_homs(Z3, S3))
    homs += list(iter_homs(Z2, G)) + list(iter_homs(G, Z2)) + list(iter_homs(G, G))
    homs.append(quotient_by_normal(Z4, ["0", "2"])[1])
    homs.append(quotient_by_relation(G)[1])
    return homs


# one summary line per acceptance criterion

def pytest_runtest_makereport(item, call):
    if call.when == "call" and item.get_closest_marker("criterion"):
        item.config._acceptance = getattr(item.config, "_acceptance", [])
        outcome = "PASS" if call.excinfo is None else "FAIL"
        item.config._acceptance.append((item.get_closest_marker("criterion").args[0], outcome,
                                        call.duration, item.name))


def pytest_terminal_summary(terminalreporter, config):
    rows = getattr(config, "_acceptance", [])
    if rows:
        terminalreporter.section("acceptance criteria")
        for number, outcome, duration, name in sorted(rows):
            terminalreporter.write_line(f"criterion {number:>2}: {outcome}  ({duration:.2f}s)  {name}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")
