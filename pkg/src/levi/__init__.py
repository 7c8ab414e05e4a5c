"""Conjugacy classification of (pseudo-)Levi subgroups at the combinatorial
level of root data and Tits indices."""

from .rootsys import (InvalidRootSystem, RootSystem, base_type, build_root_system,
                      cartan_matrix, connected_components, non_multipliable,
                      parabolic_closure, product_system, standard_cartan,
                      subsystem_base, subsystem_type)
from .weyl import (DEFAULT_ORDER_BOUND, DiagramAutomorphism, GroupEnumeration,
                   GroupOrderExceeded, InvalidAutomorphism, WeylElement,
                   apply_automorphism, apply_to_vector, are_associate,
                   are_associate_full, close_automorphisms, close_elements,
                   diagram_automorphism, fixed_subgroup, fixed_subgroup_generators,
                   generate_group, identity_element, longest_element, node_orbits,
                   simple_reflection, simple_reflections, subset_orbit)
from .index import (ClassificationReport, InvalidIndex, RelativeTransform,
                    SplitSpace, TitsIndex, classify, relative_roots,
                    relative_weyl, relative_weyl_generators, split_space,
                    stable_levi_subsets, validate_index, verify_theorem,
                    weyl_order)
from .cases import CaseReport, list_cases, run_paper_case

__version__ = "0.1.0"
