"""Descent Selmer groups of twin-prime elliptic curve families.

Two independent engines decide local solvability of the descent quartics:
a generic real/p-adic oracle (localsolve) and closed-form congruence
criteria (criteria).  On top sit group computation (selmer), claim
verification (theorems), constructive search (search) and a CLI (cli).
"""

from . import arith
from .criteria import (
    ClosedFormVerdict,
    alpha_minus_pq,
    audit_params,
    beta_minus_D,
    closed_form_local,
    membership_closed_form,
)
from .family import (
    INF_PLACE,
    KIND_C,
    KIND_CPRIME,
    PHI,
    PHI_HAT,
    FamilyParams,
    HomogeneousSpace,
    InvalidParamsError,
    SquareClass,
    build_space,
    class_of_integer,
    enumerate_square_classes,
    identity_class,
    validate_params,
)
from .localsolve import (
    LocalVerdict,
    OracleUndecidedError,
    local_verdict,
    padic_solvable,
    real_solvable,
    square_class_qp,
)
from .search import ConstraintSet, demonstrate_large_selmer, find_family
from .selmer import (
    SelmerGroup,
    check_group_closure,
    compute_selmer,
    selmer_dim,
    to_jsonable,
)
from .theorems import (
    THEOREM_IDS,
    TheoremReport,
    index_set_I,
    pi_minus,
    pi_plus,
    pi_prime,
    rho_minus,
    rho_plus,
    rho_prime,
    verify_theorem,
)

__version__ = "0.1.0"
