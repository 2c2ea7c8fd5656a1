"""Finite-group arithmetic: tables, homomorphisms, products and isomorphisms."""

from .catalog import (
    builtin,
    catalog,
    make_alternating,
    make_cyclic,
    make_dihedral,
    make_quaternion8,
    make_symmetric,
    sign,
)
from .groups import (
    FiniteGroup,
    GroupAction,
    Hom,
    Subgroup,
    check_action_by_automorphisms,
    check_group_action,
    generated_subgroup,
    image,
    is_homomorphism,
    is_normal,
    kernel,
    normal_subgroups,
    order_cap,
    subgroups,
    trivial_group,
    validate_group,
)
from .iso import generators, homomorphisms, isomorphism_search, isomorphisms
from .products import (
    ProductGroup,
    SplitDecomposition,
    direct_product,
    semidirect_product,
    split_epi_decompose,
)
