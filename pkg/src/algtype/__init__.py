"""Universal-algebra toolkit: term algebras, clones of finite algebras, and
recovery of an algebra type from category-level data."""

from .clone import (
    CloneFragment,
    OperationTable,
    RankEstimate,
    essential_rank,
    generate_clone_fragment,
    is_support,
    minimal_support,
    variety_rank_estimate,
)
from .errors import (
    AlgebraError,
    AlgTypeError,
    EnumerationCapExceeded,
    NoGeneralRepresentative,
    SignatureError,
    SignatureMismatch,
    TermSyntaxError,
)
from .finalg import FiniteAlgebra, enumerate_homomorphisms, evaluate, term_operation_table
from .functor_probe import (
    GeneratorHom,
    all_endos_mono,
    every_epi_has_section,
    hom_set_bijection,
    naturality_check,
)
from .recovery import (
    FreeAlgebraOracle,
    RecoveredType,
    SClasses,
    TermFragmentOracle,
    build_fragment,
    compute_classes,
    most_general_representative,
    recover_type,
    representative_essential_rank,
    verify_roundtrip,
)
from .signature import Signature, are_equivalent, arity_multiset
from .terms import App, Substitution, Var, enumerate_terms, match, parse_term, substitute, vars_of

__version__ = "0.1.0"
