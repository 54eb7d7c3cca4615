"""Parsimonious linear interpolation of vertex functionals on finite
distributive lattices, with a signed (bipolar) extension and reference-level
aggregation on products of chains.

Everything is exact: values are ``fractions.Fraction`` throughout, and every
evaluation has an independent Moebius-form dual path it can be checked
against.
"""

from .errors import (
    BaseMismatch,
    ChoqlatError,
    ContradictoryValue,
    CycleDetected,
    DuplicateLabel,
    FileFormatError,
    InvalidDimensions,
    NegativeScore,
    NotALattice,
    NotAnElement,
    NotComparable,
    NotComplemented,
    NotDistributive,
    NotInBipolarExtension,
    NotInTile,
    NotMonotone,
    NotNonincreasing,
    NotNormalized,
    NotRegularMosaic,
    NotStaircase,
    NotZeroOne,
    OutOfScale,
    ProfileNotInAnyTile,
    RedundantCover,
    SignConstraintViolated,
    SizeLimitExceeded,
    UnknownLabel,
    ValueOutOfRange,
)
from .poset import (
    Component,
    Poset,
    all_downsets,
    connected_components,
    downset_key,
    is_downset,
    linear_extension,
    reduce_order,
    validate_poset,
)
from .birkhoff import (
    BirkhoffForm,
    DownsetLattice,
    disjoint_element_pairs,
    explicit_poset,
    verify_distributive,
)
from .moebius import (
    GeneralizedCapacity,
    MoebiusVector,
    bipolar_moebius_function,
    bipolar_moebius_transform,
    bipolar_unanimity,
    bipolar_zeta_transform,
    lattice_moebius,
    moebius_function,
    moebius_transform,
    rota_moebius,
    unanimity,
    zeta_transform,
)
from .interpolation import (
    ChainDecomposition,
    Profile,
    choquet_classical,
    moebius_form_eval,
    natural_extension,
    triangulate,
    zero_one_maxmin,
)
from .bipolar import (
    BipolarCapacity,
    BipolarElement,
    BipolarEvaluation,
    BipolarProfile,
    Tile,
    admissible_vertex_pairs,
    bicapacity_choquet,
    bipolar_extension,
    bipolar_join_irreducibles,
    bipolar_leq,
    bipolar_moebius_form_eval,
    bipolar_natural_extension,
    embed_profile,
    evaluate_bipolar,
    is_regular_mosaic,
    psi,
    psi_inverse,
    select_tile,
    tile,
)
from .kary import (
    BipolarKaryEvaluation,
    KaryEvaluation,
    LevelIndexing,
    ReferenceScale,
    bipolar_kary_choquet,
    bipolar_level_profile,
    build_kary_base,
    downset_to_node,
    grid_shape,
    interpolate_point,
    interpolate_signed_point,
    kary_choquet,
    label_parts,
    level_label,
    level_profile,
    locate_point,
    node_to_downset,
    staircase_eval,
)
from .rationals import as_fraction

__version__ = "0.1.0"
