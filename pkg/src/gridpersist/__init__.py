"""Compressed multiplicities and interval-decomposable approximations of
persistence modules over equioriented commutative 2 x n grids, with exact
linear algebra over prime fields."""

from .approximation import (
    SignedIntervalSum,
    dimvec_of_sum,
    interval_approximation,
    l1_norm,
    negative_part,
    positive_part,
    rank_of_sum,
    recover_multiplicities,
)
from .compression import (
    QuiverRep,
    SsShape,
    almost_split_fixtures,
    classify_ss,
    compressed_multiplicity_function,
    hom_dim,
    restrict,
    ss_compressed_multiplicity,
    ss_interval_rep,
    ss_restrict,
)
from .ffmat import (
    GF2,
    FFMatrix,
    FieldSpec,
    ShapeError,
    block2x2,
    hstack,
    kernel_basis,
    mat_inv,
    mat_mul,
    mat_rank,
    pullback_basis,
    random_invertible,
    random_matrix,
    vstack,
)
from .generators import (
    example_module,
    make_rng,
    random_interval_decomposable,
    random_module,
    staircase_family_module,
)
from .grid import (
    Grid,
    PersistenceModule,
    conjugate,
    dimension_vector,
    direct_sum,
    format_dimvec,
    interval_module,
    path_map_table,
    rank_invariant,
    validate,
)
from .intervals import (
    Interval,
    NoJoinError,
    cc_essential,
    convex_closure,
    covers,
    enumerate_intervals,
    intersection_components,
    interval_contains_rectangle,
    join_covers,
    leq,
    meet_over,
    rectangle_from,
    ss_essential,
    upper_set,
)
from .mobius import brute_force_mobius, mobius_invert, mu_prime, zeta_act
from .pmod import (
    PmodError,
    format_interval_function,
    format_signed_sum,
    parse_pmod,
    print_pmod,
)

__version__ = "0.1.0"
