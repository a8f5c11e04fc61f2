"""Numerical checks of product and sum uncertainty relations and their minimum-uncertainty states."""

from .bounds import BoundReport, mp_sum_bound, product_bound, saturating_perp, weak_sum_bound
from .hilbert import (
    commutator_mean,
    eigenstate_residual,
    expectation,
    hermitian_eigensystem,
    inner,
    normalize,
    project_out,
    variance,
)
from .mus import MusVerdict, is_product_mus, is_sum_mus, mus_verdict
from .operators import ladder_operators, position_momentum, quadratures, spin_operators
from .random_states import haar_unitary, make_rng, random_perp, theta_state

__version__ = "0.1.0"
