"""Exact algebra over Z[1/N], the generalized ring A_N, projective A_N-modules,
and vector bundles and K^0 of the compactified spectrum obtained by gluing
Spec A_N with Spec Z."""

from .arith import (
    Context,
    NRational,
    PicElement,
    is_unit,
    make_context,
    normalize,
    parse_rational,
    pic_op,
    pic_to_value,
    ring_op,
    unit_log,
)
from .bundles import (
    BundleRep,
    CanonicalForm,
    GLZMatrix,
    K0Element,
    assemble_cofibration,
    double_coset_canonical,
    hnf_coset,
    is_isomorphic,
    k0_op,
    k_class,
    line_bundle,
    validate_bundle,
)
from .monad import ANMatrix, ANVector, apply, check_laws, compose, membership, substitute
from .octahedral import OctMatrix, enumerate_oct
from .projective import (
    FreenessCertificate,
    IdempotentPresentation,
    abs_and_supports,
    block_order,
    decompose_free,
    rank,
    sign_normalize,
    validate_idempotent,
    verify_certificate,
)
from .spectrum import (
    INFINITY,
    ZERO,
    OpenSetDesc,
    Point,
    closure,
    express_in_localization,
    is_open,
    prime_point,
    stalk_predicate,
)

__version__ = "0.1.0"
