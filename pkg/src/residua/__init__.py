"""Finite-group residual toolkit: concrete permutation groups, formation
residuals, mutually permutable factorizations and a verification census."""

from .group import (
    ConcreteGroup,
    GroupFormatError,
    OrderCapExceeded,
    Perm,
    ResiduaError,
    build_group,
    conjugacy_classes,
    element_order,
    load_group_file,
    parse_group_text,
    parse_permutation,
)
from .subgroups import (
    QuotientMap,
    Subgroup,
    SubgroupSeries,
    commutator_subgroup,
    derived_series,
    derived_subgroup,
    generated_subgroup,
    is_normal,
    is_subnormal,
    join,
    lower_central_series,
    meet,
    normal_closure,
    quotient_group,
)
from .classifiers import (
    ChiefFactorProfile,
    chief_series,
    is_nilpotent,
    is_p_nilpotent,
    is_p_supersoluble,
    is_soluble,
    is_supersoluble,
)
from .residuals import FormationSpec, membership, normal_subgroups, parse_formation, residual
from .factorization import (
    Factorization,
    all_subgroups,
    factorizations,
    is_mutually_permutable,
    is_product,
    permutes,
)

__version__ = "0.1.0"
