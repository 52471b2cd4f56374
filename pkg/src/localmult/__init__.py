"""Exact determinant criteria for local k-multiplicity of continuous maps.

The package decides, in exact arithmetic over prime fields, the sufficient
cohomological conditions under which every continuous map between two
manifolds admits a local k-multiplicity, and cross-validates the underlying
symmetric-function identities (dual Cauchy expansion, Nagelsbach-Kosta
determinants, tensor-product characteristic classes).
"""

from .fpring import (
    BigradedPoly,
    FpScalar,
    GradedPoly,
    IncompatibleRingsError,
    InvalidModulusError,
    NonInvertibleError,
    RingError,
    RingSpec,
    binom_mod_p,
    format_poly,
    fp_inv,
    poly_inv,
    poly_mul,
    poly_pow,
    tensor,
)
from .manifolds import (
    ManifoldSpec,
    ManifoldSpecError,
    TotalClass,
    dual_total_class,
    parse_manifold_spec,
    parse_total_class,
    total_chern_cp,
    total_sw_rp,
)
from .criteria import (
    FAMILIES,
    CriterionReport,
    HypothesisError,
    StableDifferenceClass,
    chern_fastpath,
    check_local_multiplicity,
    criterion_determinant,
    family_instance,
    ring_determinant,
    shifted_class_determinant,
    stable_difference_class,
    sw_fastpath,
    validate_family,
    validate_k,
)
from .symfun import (
    GeneratorPoly,
    Partition,
    SymPoly,
    box_complement,
    chern_euler_crosscheck,
    conjugate,
    dual_cauchy_check,
    elementary_symmetric,
    nk_class_value,
    partitions_in_box,
    schur_monomial_oracle,
    schur_via_nk,
    tensor_top_class,
)

__version__ = "0.1.0"
