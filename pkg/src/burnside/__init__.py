"""Burnside rings of finite groups, their crossed variants, idempotents,
quotient towers modelling profinite groups at finite depth, and the action
of crossed G-sets on Mackey functors."""

from .crossed import (
    CrossedBasisElement,
    CrossedElement,
    CrossedRing,
    crossed_basis,
    crossed_fix_n,
    crossed_multiply,
    embed_burnside,
    get_crossed_ring,
    hom_count,
    iso_by_homcount,
    zeta,
)
from .errors import BurnsideError
from .groups import (
    FiniteGroup,
    Homomorphism,
    Subgroup,
    builtin,
    center,
    centralizer,
    derived_series,
    direct_product,
    double_cosets,
    element_classes,
    group_from_cayley,
    group_from_permutations,
    is_perfect,
    is_soluble,
    normalizer,
    o_p,
    perfect_core,
    quotient_group,
    subgroup_generated,
)
from .gsets import (
    GMap,
    GSet,
    disjoint_union,
    from_subgroup,
    orbit_element,
    product,
    pullback,
)
from .hall import HallGroup, hall_truncation
from .lattice import SubgroupLattice, get_lattice, mobius, subgroup_lattice
from .linalg import GF, QQ
from .mackey import (
    CrossedGSet,
    MackeyFunctorInstance,
    Representation,
    burnside_mackey,
    crossed_to_endomorphism,
    eta,
    fixed_point_mackey,
    fixed_quotient_mackey,
    regular_representation,
    trivial_representation,
)
from .ring import (
    BurnsideElement,
    BurnsideRing,
    MarkVector,
    TableOfMarks,
    fix_n,
    from_marks,
    get_ring,
    gluck_idempotent,
    idempotent_census_oracle,
    inflate,
    integral_idempotents,
    marks,
    multiply,
    table_of_marks,
)
from .towers import (
    CompatibleFamily,
    QuotientTower,
    crossed_family_marker_recovery,
    idempotent_family,
    is_compatible,
    prosoluble_census,
    tower_build,
    transition,
)

__version__ = "0.1.0"
