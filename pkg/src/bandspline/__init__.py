"""Band structure of 1D periodic Schrodinger problems via variational
quadratic splines and piecewise truncated-Taylor transfer matrices."""

from .analysis import (
    FourierFit,
    discrete_l2_error,
    fourier_fit,
    lagrange_global_error,
    mathieu_reference,
    mean_square_interp_error,
    relative_percent_error,
)
from .errors import (
    BandSplineError,
    DomainError,
    InvalidInputError,
    NoEigenfunctionError,
    TabulatedParseError,
    UnsupportedOperationError,
)
from .floquet import (
    BandStructure,
    EigenSolution,
    FloquetProblem,
    band_structure,
    classify_parity,
    discriminant,
    eigenfunction,
    find_eigenvalues,
    monodromy,
)
from .potentials import (
    PotentialSpec,
    emit_tabulated,
    free,
    harmonic,
    local_taylor,
    mathieu,
    parse_tabulated,
    power_abs,
    quartic,
    sample,
    tabulated,
)
from .propagator import (
    FundamentalPair,
    QuadraticPiece,
    cac_transfer,
    fundamental_pair,
    propagate,
    spline_pieces,
    transfer_matrices_batch,
    transfer_matrix,
)
from .spline import (
    Grid,
    SplineInterpolant,
    coefficient_matrix,
    compute_r,
    evaluate,
    fit,
    objective,
    variational_a1,
    variational_a1_closed_form,
)

__version__ = "0.1.0"
