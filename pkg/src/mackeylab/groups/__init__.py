from .group import FiniteGroup, SubgroupClass, max_group_order, subgroup_classes
from .builders import (build_group, cyclic, dihedral, direct_product, from_table, group_to_json,
                       klein, parse_group, perm_group, quaternion, symmetric)
from .gsets import (DoubleCosetComponent, GMap, GSet, coset_space, count_gmaps, disjoint_union,
                    double_cosets, fibered_product, fixed_points, from_orbit_form, induce,
                    induce_restrict, orbit_decompose, point, product, restrict)

__all__ = [
    "FiniteGroup", "SubgroupClass", "max_group_order", "subgroup_classes",
    "build_group", "cyclic", "dihedral", "direct_product", "from_table", "group_to_json",
    "klein", "parse_group", "perm_group", "quaternion", "symmetric",
    "DoubleCosetComponent", "GMap", "GSet", "coset_space", "count_gmaps", "disjoint_union",
    "double_cosets", "fibered_product", "fixed_points", "from_orbit_form", "induce",
    "induce_restrict", "orbit_decompose", "point", "product", "restrict",
]
