"""catgr: exact computations with representations of finite categories,
their flattened (Grothendieck) categories, and twisted category algebras."""

from .errors import (
    CatgrError,
    CategoryMismatch,
    CyclicQuiver,
    DimensionMismatch,
    InvalidFunctor,
    InvalidModule,
    InvalidRepresentation,
    MissingSpec,
    NotAUnit,
    NotInvertible,
    NotRingValued,
    NotSquare,
    NotStrict,
    ObjectMismatch,
    ParseError,
    RingMismatch,
    UnknownObject,
)
from .fincat import FiniteCategory, Quiver, hom_set, linear_quiver, path_category, validate_category
from .ground import (
    GF,
    QQ,
    ZZ,
    FreeModule,
    GroundRing,
    LinearMap,
    compose_linear,
    direct_sum,
    direct_sum_over,
    invert_linear,
    parse_ring,
)
from .groth import (
    AlgLabel,
    GrCategory,
    GrMorphism,
    GrObject,
    StructAlgebra,
    algebra_report,
    check_struct_algebra,
    gr_compose,
    gr_identity,
    grothendieck_construction,
    pseudoskew_algebra,
    skew_specialization_oracle,
)
from .lincat import (
    AdditiveFunctor,
    HomElt,
    LinearCategory,
    ModuleFunctor,
    NatIso,
    NatTransform,
    apply_functor,
    check_functor,
    check_module_functor,
    check_nat_iso,
    compose_functors,
    compose_hom,
    identity_functor,
    identity_transform,
    linearize,
    validate_linear_category,
    whisker,
)
from .rep import (
    Representation,
    constant_representation,
    is_strict,
    one_object_linear_category,
    restrict_module,
    scalar_twisted_constant_representation,
    strict_representation,
    twisted_group_representation,
    validate_representation,
)
from .report import Finding, ValidationReport
from .rmod import (
    AlgebraModule,
    RModule,
    check_algebra_module,
    direct_sum_functors,
    endomorphism_algebra_check,
    functor_to_module,
    module_over_algebra,
    module_to_functor,
    projective_generator,
    representable_functor,
    roundtrip_functor,
    roundtrip_module,
    validate_module,
)

__version__ = "0.1.0"
