"""catgrp: group objects, crossed modules and internal categories over finite groups."""

from .core import *  # noqa: F401,F403
from .crossed_modules import (
    CrossedModule,
    check_crossed_module,
    image_normal_check,
    inclusion_crossed_module,
    kernel_abelian_check,
)
from .dsl import parse_spec, serialize_spec
from .equivalence import internal_to_xmod, roundtrip_internal, roundtrip_xmod, xmod_to_internal
from .errors import CatGrpError, ContractError, MalformedInputError, NotNormalError, OrderCapExceeded
from .internal_categories import (
    InternalCategory,
    InternalDigraph,
    check_cat_group_structure,
    check_internal_category,
    check_internal_digraph,
    composable_pairs,
    is_internal_groupoid,
)
from .reports import CheckReport

__version__ = "0.1.0"
