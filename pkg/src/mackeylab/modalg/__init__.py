from .rings import CoeffRing, IntegersMod, PLocal, QQ, ZZ, is_prime, valuation
from .linalg import smith_normal_form, snf, kernel, solve, rank
from .modules import (FpModule, ModuleMap, direct_sum, homology_at, map_cokernel,
                      map_kernel, modules_isomorphic, subquotient)
from .cyclic import (TateResult, cyclic_homology, cyclic_tate, maximal_tate, norm_map,
                     permutation_module, regular_module, trivial_module)

__all__ = [
    "CoeffRing", "IntegersMod", "PLocal", "QQ", "ZZ", "is_prime", "valuation",
    "smith_normal_form", "snf", "kernel", "solve", "rank",
    "FpModule", "ModuleMap", "direct_sum", "homology_at", "map_cokernel", "map_kernel",
    "modules_isomorphic", "subquotient",
    "TateResult", "cyclic_homology", "cyclic_tate", "maximal_tate", "norm_map",
    "permutation_module", "regular_module", "trivial_module",
]
