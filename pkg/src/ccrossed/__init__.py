"""Finite c-groups, categorical groups and c-crossed modules as explicit
tables, with exhaustive validators for their axioms and constructions."""

from .actions import (
    CAction, SplitExtension, check_semidirect_iso, induced_action, semidirect,
    validate_caction, validate_split_extension,
)
from .cgroup import (
    CGroup, CGroupHom, PlainGroup, check_c_isomorphism, find_group_isomorphism, group_profile,
    kernel_image, quotient_by_normal, quotient_by_relation, search_c_isomorphism, subcgroup,
    subgroup_profile, universal_factorization, validate_cgroup, validate_group, validate_hom,
)
from .classical import (
    CrossedModule, FixtureParams, GroupGroupoid, catgroup_from_gg, find_xmod_isomorphism,
    gg_from_xmod, make_fixture, skeletal_catgroup, validate_crossed_module,
    validate_group_groupoid, xmod_from_gg,
)
from .crossed import (
    CCrossedModule, CCrossedModuleMorphism, classify_ccm, conjugation_ccm, validate_ccm,
    validate_ccm_morphism,
)
from .kernels import build_cssc, relaxed_kernel_ccm, relaxed_kernel_cgroup, strict_kernel_cgroup
from .monoidal import (
    AmbiguousSpecial, CategoricalGroup, FiniteGroupoid, MonoidalStructure, NoSpecial,
    check_lemma_comm, neg_morphism, special_closure, unique_special, validate_categorical_group,
)
from .report import ConstructionError, SearchNotAttempted, StructureError, ValidationReport
from .setoid import FiniteSetoid, build_congruence
from .structfile import StructureFile, emit_structure, parse_structure

__version__ = "0.1.0"
