"""Truncated matrix models of analytic multiplication operators on the
C^m-valued Hardy space.

The package builds the finite compression of multiplication by a matrix
polynomial to degrees below N = n*K, certifies that multiplication by z^n
is unitarily equivalent to a direct sum of m*n scalar shift blocks via an
explicit permutation intertwiner, computes commutants exactly over Gaussian
rationals, and enumerates the lattice of channel-union reducing subspaces
with per-channel minimality certificates.
"""

from .commutant import (
    CommutantBasis,
    commutant_basis,
    is_block_lower_toeplitz,
    is_lower_toeplitz,
    is_projection,
    restrict,
    selfadjoint_commutant_dim,
)
from .decomposition import (
    Channel,
    ChannelBasis,
    EquivalenceReport,
    all_channel_bases,
    build_intertwiner,
    channel,
    channel_basis,
    channels,
    decomposed_shift,
    partition_check,
    verify_equivalence,
)
from .errors import (
    CapError,
    HardyShiftError,
    InvarianceError,
    RankAmbiguityError,
    ShapeError,
)
from .lattice import (
    ChannelMask,
    ChannelMinimality,
    LatticeCounts,
    LatticeReport,
    MaskEntry,
    check_minimal,
    enumerate_lattice,
    lattice_closure_check,
    mask_projection,
)
from .matrices import (
    DenseMatrix,
    commutator,
    direct_sum,
    is_permutation,
    matrices_close,
)
from .operators import (
    MatrixSymbol,
    apply,
    monomial_symbol,
    power_symbol,
    scalar_shift,
    symbol_from_json,
    symbol_to_json,
    toeplitz_matrix,
    vector_shift,
)
from .scalars import GaussianRational, Mode
from .space import (
    BasisIndex,
    CoeffVector,
    TruncationParams,
    basis_vector,
    flat_index,
    inner_product,
    norm,
    norm_squared,
    unflat_index,
    vector_of,
    zero_vector,
)

__all__ = [
    "BasisIndex",
    "CapError",
    "Channel",
    "ChannelBasis",
    "ChannelMask",
    "ChannelMinimality",
    "CoeffVector",
    "CommutantBasis",
    "DenseMatrix",
    "EquivalenceReport",
    "GaussianRational",
    "HardyShiftError",
    "InvarianceError",
    "LatticeCounts",
    "LatticeReport",
    "MaskEntry",
    "MatrixSymbol",
    "Mode",
    "RankAmbiguityError",
    "ShapeError",
    "TruncationParams",
    "all_channel_bases",
    "apply",
    "basis_vector",
    "build_intertwiner",
    "channel",
    "channel_basis",
    "channels",
    "check_minimal",
    "commutant_basis",
    "commutator",
    "decomposed_shift",
    "direct_sum",
    "enumerate_lattice",
    "flat_index",
    "inner_product",
    "is_block_lower_toeplitz",
    "is_lower_toeplitz",
    "is_permutation",
    "is_projection",
    "lattice_closure_check",
    "mask_projection",
    "matrices_close",
    "monomial_symbol",
    "norm",
    "norm_squared",
    "partition_check",
    "power_symbol",
    "restrict",
    "scalar_shift",
    "selfadjoint_commutant_dim",
    "symbol_from_json",
    "symbol_to_json",
    "toeplitz_matrix",
    "unflat_index",
    "vector_of",
    "vector_shift",
    "verify_equivalence",
    "zero_vector",
]

__version__ = "0.1.0"
