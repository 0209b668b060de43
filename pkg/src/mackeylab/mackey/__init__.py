from .functor import (Edge, MackeyFunctor, MackeyMorphism, MackeyReport, Violation, apply_span,
                      burnside_action, check_mackey_axioms, check_span_functoriality,
                      direct_sum_functor, edge_data, edges_of, evaluate, from_natural,
                      functors_isomorphic_classwise, morphism_cokernel, morphism_kernel,
                      zero_functor)
from .constructions import (burnside_mackey, coinduced_mackey, cyclic_action_matrices,
                            fixed_point_mackey, local_classes)
from .fixed_points import (CategoricalFixedPoints, PhiPsiReport, categorical_fixed_points,
                           geometric_fixed_points, inflation, phi_infl_comparison,
                           phi_infl_is_identity, phi_psi_commute_check, unit_is_surjective,
                           unit_map)
from .fuzz import FuzzReport, mutation_fuzz
from .green import GreenPairing, GreenReport, burnside_green_pairing, check_green

__all__ = [
    "Edge", "MackeyFunctor", "MackeyMorphism", "MackeyReport", "Violation", "apply_span",
    "burnside_action", "check_mackey_axioms", "check_span_functoriality",
    "direct_sum_functor", "edge_data", "edges_of", "evaluate", "from_natural",
    "functors_isomorphic_classwise", "morphism_cokernel", "morphism_kernel", "zero_functor",
    "burnside_mackey", "coinduced_mackey", "cyclic_action_matrices", "fixed_point_mackey",
    "local_classes",
    "CategoricalFixedPoints", "PhiPsiReport", "categorical_fixed_points",
    "geometric_fixed_points", "inflation", "phi_infl_comparison", "phi_infl_is_identity",
    "phi_psi_commute_check", "unit_is_surjective", "unit_map",
    "FuzzReport", "mutation_fuzz",
    "GreenPairing", "GreenReport", "burnside_green_pairing", "check_green",
]
