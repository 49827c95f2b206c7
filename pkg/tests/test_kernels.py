import pytest

from conftest import catgroup
from ccrossed import groups
from ccrossed.actions import validate_caction
from ccrossed.cgroup import group_profile, validate_cgroup
from ccrossed.classical import FixtureParams, make_fixture
from ccrossed.crossed import classify_ccm, validate_ccm
from ccrossed.kernels import (
    build_cssc, composition_lifts, objects_cgroup, relaxed_kernel_ccm, relaxed_kernel_cgroup,
    strict_kernel_cgroup,
)
from ccrossed.monoidal import AmbiguousSpecial

CSSC_KEYS = ["pair_z2", "pair_z3", "pair_s3", "discrete_z4", "xmod_gg_z3"]


def test_objects_cgroup(any_catgroup):
    assert validate_cgroup(objects_cgroup(any_catgroup)).passed


# -------------------------------------------------------------- relaxed kernel

def test_relaxed_kernel_examples():
    K = relaxed_kernel_cgroup(catgroup("pair_z2")).cgroup
    assert sorted(K.elements) == ["0>0", "0>1", "1>0", "1>1"]
    assert group_profile(K).connected
    K = relaxed_kernel_cgroup(catgroup("discrete_z4")).cgroup
    assert K.elements == ("1[0]",)


def test_relaxed_ccm_validates(any_catgroup):
    X = relaxed_kernel_ccm(any_catgroup)
    assert validate_cgroup(X.G).passed
    assert validate_ccm(X, "base").passed
    assert group_profile(X.G).connected


def test_relaxed_action_conditions(any_catgroup):
    rep = validate_caction(relaxed_kernel_ccm(any_catgroup).act)
    assert rep.passed, rep.format()
    assert [c.name for c in rep.checks] == [
        "action.additive", "action.composition", "action.unit", "action.compatible"]


def test_relaxed_ccm_of_xmod_gg_is_connected():
    X = relaxed_kernel_ccm(catgroup("xmod_gg_z3"))
    assert classify_ccm(X).connected


# -------------------------------------------------------------- strict kernel

@pytest.mark.parametrize("name", ["Z2", "Z3", "S3"])
def test_strict_kernel_of_pair_groupoid(name):
    X = groups.by_name(name)
    C = make_fixture(FixtureParams("pair_gg", name))
    K = strict_kernel_cgroup(C).cgroup
    z = X.zero
    assert K.elements == tuple(f"{z}>{y}" for y in X.elements)
    for y in X.elements:
        for y2 in X.elements:
            assert K.add[f"{z}>{y}", f"{z}>{y2}"] == f"{z}>{X.add[y, y2]}"
    assert len(K.carrier.blocks) == 1


def test_strict_kernel_discrete():
    K = strict_kernel_cgroup(catgroup("discrete_z4")).cgroup
    assert K.elements == ("1[0]",)


def test_strict_kernel_skeletal_needs_explicit_gamma():
    C = catgroup("skeletal")
    with pytest.raises(AmbiguousSpecial):
        strict_kernel_cgroup(C)
    kern = strict_kernel_cgroup(C, gamma="0:0", kappa="0:0")
    assert kern.cgroup.elements == ("0:0", "0:1")
    assert validate_cgroup(kern.cgroup).passed
    assert kern.cgroup.add["0:1", "0:1"] == "0:0"


def test_strict_kernel_embeds_in_relaxed(any_catgroup):
    C = any_catgroup
    relaxed = relaxed_kernel_cgroup(C).cgroup
    try:
        strict = strict_kernel_cgroup(C).cgroup
    except AmbiguousSpecial:
        strict = strict_kernel_cgroup(C, gamma=C.one(C.zero), kappa=C.one(C.zero)).cgroup
    assert set(strict.elements) <= set(relaxed.elements)
    for f in strict.elements:
        for g in strict.elements:
            assert strict.related(f, g) == relaxed.related(f, g)
            assert relaxed.related(strict.add[f, g], relaxed.add[f, g])


# -------------------------------------------------------------- cssc construction

@pytest.mark.parametrize("key", CSSC_KEYS)
def test_build_cssc_certifies(key):
    X, rep = build_cssc(catgroup(key))
    assert rep.passed, rep.format()
    cls = classify_ccm(X)
    assert cls.connected and cls.strict and cls.special


def test_build_cssc_pair_z2_tables():
    X, _ = build_cssc(catgroup("pair_z2"))
    assert X.G.elements == ("0>0", "0>1")
    assert X.H.elements == ("0", "1")
    assert X.bd.table == {"0>0": "0", "0>1": "1"}
    assert X.act.table == {(r, c): c for r in X.H.elements for c in X.G.elements}
    assert len(X.G.carrier.blocks) == 1 and len(X.H.carrier.blocks) == 1


def test_build_cssc_discrete_is_trivial():
    X, rep = build_cssc(catgroup("discrete_z4"))
    assert X.G.elements == ("1[0]",)
    assert rep.get("class.connected").passed


def test_build_cssc_skeletal_is_ambiguous():
    C = catgroup("skeletal")
    for _ in range(2):
        with pytest.raises(AmbiguousSpecial) as info:
            build_cssc(C)
        assert (info.value.source, info.value.target, info.value.found) == ("0", "0", ("0:0", "0:1"))


def test_build_cssc_skeletal_zero_cocycle():
    C = make_fixture(FixtureParams("skeletal", "Z2", "Z2", "zero"))
    X, rep = build_cssc(C)
    assert rep.passed, rep.format()
    assert X.G.elements == ("0:0", "0:1")
    assert set(X.bd.table.values()) == {"0"}


@pytest.mark.parametrize("key", CSSC_KEYS)
def test_lifts_by_composition(key):
    C = catgroup(key)
    X, _ = build_cssc(C)
    assert composition_lifts(C, X).passed
