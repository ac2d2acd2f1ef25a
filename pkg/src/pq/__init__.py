"""Exact computation with p-subgroup posets of small finite groups."""

from .catalog import build_group, list_catalog
from .complexes import SimplicialComplex, extend_complex, order_complex
from .groups import (
    GroupHandle,
    PermGroup,
    centralizer,
    normalizer,
    p_core,
    p_part,
    sylow_subgroup,
)
from .homology import (
    HomologyProfile,
    homology,
    is_cohen_macaulay,
    is_homology_spherical,
)
from .lie import (
    euler_prediction,
    verify_cross_characteristic,
    verify_field_case,
    verify_main,
    verify_no_field_case,
    verify_solomon_tits,
    verify_spherical_bp,
)
from .posets import (
    Poset,
    all_p_subgroups_poset,
    bouc_poset,
    core_reduce,
    euler_mobius,
    euler_orbit_formula,
    fixed_point_subposet,
    mixed_poset,
    quillen_poset,
)
from .smith import smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "GroupHandle",
    "HomologyProfile",
    "PermGroup",
    "Poset",
    "SimplicialComplex",
    "all_p_subgroups_poset",
    "bouc_poset",
    "build_group",
    "centralizer",
    "core_reduce",
    "euler_mobius",
    "euler_orbit_formula",
    "euler_prediction",
    "extend_complex",
    "fixed_point_subposet",
    "homology",
    "is_cohen_macaulay",
    "is_homology_spherical",
    "list_catalog",
    "mixed_poset",
    "normalizer",
    "order_complex",
    "p_core",
    "p_part",
    "quillen_poset",
    "smith_normal_form",
    "sylow_subgroup",
    "verify_cross_characteristic",
    "verify_field_case",
    "verify_main",
    "verify_no_field_case",
    "verify_solomon_tits",
    "verify_spherical_bp",
]
