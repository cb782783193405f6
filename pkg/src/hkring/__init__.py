"""hkring: exact ring presentations from toric hyperkahler arrangement data.

From an integer normal matrix and a rational lift the package builds the
associated smooth affine hyperplane arrangement and emits verified finite
presentations of the integral cohomology ring and the topological K-ring
of the underlying manifold, backed by an exact Groebner engine over the
rationals (with an optional integer strong-basis mode).
"""

__version__ = "0.1.0"

from .arrangement import (
    Arrangement,
    Datum,
    GiveUpError,
    Hyperplane,
    NonPrimitiveNormalError,
    NotSimpleError,
    NotSplitError,
    SmoothnessReport,
    arrangement_from_datum,
    certify_smooth,
    flat_of,
    minimal_empty_subsets,
    sample_datum,
    vertices,
    vertices_detailed,
)
from .groebner import (
    Budget,
    GroebnerBasis,
    IdealSpec,
    NotHomogeneousError,
    QuotientBasis,
    ResourceBudgetExceeded,
    groebner_basis,
    hilbert_function,
    ideal_equal,
    normal_form,
    quotient_dimension,
    standard_monomials,
    strong_groebner_zz,
    structure_constants,
    zz_module_report,
)
from .linalg import (
    AffineSolution,
    IntMatrix,
    SNFResult,
    is_basis_extendable,
    is_split_surjection,
    smith_normal_form,
    solve_affine,
)
from .polynomials import (
    Monomial,
    MonomialOrder,
    Poly,
    ZeroPolynomialError,
    one_minus_var,
)
from .presentations import (
    CohomPresentation,
    DegenerateUSetError,
    KPresentation,
    NotSmoothError,
    RankSummary,
    VerificationReport,
    cohomology_presentation,
    cotangent_iso_certificate,
    cotangent_projective_datum,
    ktheory_presentation,
    pairing_form,
    product_relation,
    ranks_and_betti,
    run_verification,
    verify_cotangent_iso,
    verify_initial_forms,
    verify_u_stability,
)
