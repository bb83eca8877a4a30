"""Verifier and constructor for glued special Lagrangian configurations
on toric hyper-Kaehler quotients."""

from .core import AngleClass, EPS_ANGLE, EPS_GEOM, Quaternion, cyclic_distance, is_z_basis
from .arrangement import Arrangement, TorusDatum, check_smooth, common_intersection, slice_trace
from .localmodel import (
    CharacterizingAngles,
    FlatSubspace,
    characterizing_angles,
    decompose_invariant,
    hk_angles,
    hopf,
    intersection_type,
    standard_form_restriction,
    v_subspace,
)
from .polytope import (
    BasePolytope,
    SlicePolytope,
    check_sigma_delzant,
    classify_intersection,
    tangent_cone,
)
from .quiver import Quiver, betti, cycle_cover, edge_removal_profile, first_betti, glued_topology
from .obstruction import (
    CalibratedSummand,
    hl_obstruction,
    pairing_volume,
    parity_obstruction,
    sl_sigma_candidates,
)
from .config import GlueConfiguration, load_config, parse_config
from .pipeline import build_quiver, classify_all_pairs, verify_all
from .examples_gen import generate_example

__version__ = "0.1.0"
