"""Table-based tools for deciding Morita equivalence between finite inverse semigroups.

Builds McAlister sandwich functions, regular and inverse Rees matrix
semigroups, minimum inverse congruences, Cauchy completions and equivalence
bisets, and cross-checks the closed-form descriptions against brute force.
"""

from .errors import AlgebraError, ParseError
from .semigroup import (
    ClassificationReport,
    Congruence,
    FiniteSemigroup,
    classify,
    green_D,
    inverses_of,
    local_submonoid,
    min_inverse_congruence,
    natural_order,
    quotient,
    validate_table,
)
from .morphisms import SemigroupMap, find_isomorphism, is_local_isomorphism
from .rees import (
    InverseReesMatrix,
    McAlisterReport,
    ReesMatrixSemigroup,
    SandwichFunction,
    build_im,
    build_rees,
    enumerate_mcalister,
    gamma_closed_form,
    inverse_triple,
    is_idempotent_triple,
    is_regular_triple,
    validate_mcalister,
)
from .category import (
    CauchyCompletion,
    EquivalenceVerdict,
    FiniteCategory,
    FunctorMap,
    cauchy_completion,
    decide_equivalence,
    functor_checks,
    functor_psi,
    functor_theta,
    skeleton,
)
from .biset import (
    BisetReport,
    EquivalenceBiset,
    epsilon_eta,
    identity_biset,
    mcalister_from_biset,
    synthesize_partner,
    theta_from_biset,
    validate_biset,
)

__version__ = "0.1.0"
