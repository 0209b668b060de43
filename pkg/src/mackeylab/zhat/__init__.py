from .witt import (WittElement, format_witt, ghost_components, p_local_idempotent,
                   p_local_idempotents, parse_witt, witt_product)
from .profunctor import (ZMackeyTrunc, ZReport, ZViolation, broken_truncation,
                         burnside_truncation, change_ring, check_zmackey, constant_truncation,
                         eps_action, inflate_finite, zero_truncation)
from .fixed import (Filtration, NormalSystemTrunc, RoundtripReport, canonical_filtration,
                    filtration_F, level_fixed_points, level_quotient, normal_system,
                    normal_system_roundtrip)
from .typical import (Decomposition, TypicalCheck, coinvariants, p_typical_component,
                      p_typical_decomposition, p_typical_reconstruct_check)
from .homology import GluingValue, derived_burnside_homology, fixed_orbits, gluing_value

__all__ = [
    "WittElement", "format_witt", "ghost_components", "p_local_idempotent",
    "p_local_idempotents", "parse_witt", "witt_product",
    "ZMackeyTrunc", "ZReport", "ZViolation", "broken_truncation", "burnside_truncation",
    "change_ring", "check_zmackey", "constant_truncation", "eps_action", "inflate_finite",
    "zero_truncation",
    "Filtration", "NormalSystemTrunc", "RoundtripReport", "canonical_filtration",
    "filtration_F", "level_fixed_points", "level_quotient", "normal_system",
    "normal_system_roundtrip",
    "Decomposition", "TypicalCheck", "coinvariants", "p_typical_component",
    "p_typical_decomposition", "p_typical_reconstruct_check",
    "GluingValue", "derived_burnside_homology", "fixed_orbits", "gluing_value",
]
