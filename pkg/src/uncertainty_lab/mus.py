"""Minimum-uncertainty predicates and the residuals that characterize them.

A state is a product-MUS when ``Delta A Delta B = |<[A, B]>|/2`` and a
sum-MUS when ``Var A + Var B = |i<[A, B]>|``.  Eigenstate tests are done
through residual norms ``||M psi - <M> psi||`` rather than by matching an
eigenbasis, which stays meaningful for degenerate and non-normal ``M``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .bounds import _prepare, perp_term, product_bound, sign_choice, weak_sum_bound
from .errors import AlreadySaturatedError, DegenerateStateError, UncertaintyLabError
from .hilbert import NULL_NORM, commutator_mean, eigenstate_residual, expectation, variance
from .random_states import theta_state

DEFAULT_TOL = 1e-9
FOCK_TOL = 1e-6
GAMMA_MIN_SD = 1e-13

__all__ = [
    "MusVerdict",
    "eigenstate_residual",
    "find_theta_roots",
    "is_product_mus",
    "is_sum_mus",
    "mus_verdict",
    "optimal_perp_eq18",
    "sum_mus_residual",
    "variational_residual_lhs",
    "variational_residual_rhs",
]


@dataclass(frozen=True)
class MusVerdict:
    is_product_mus: bool
    is_sum_mus: bool
    gamma: float | None
    residual_AiB: float
    branch_AiB: int
    residual_AigB: float | None
    residual_A2B2: float
    residual_var_lhs: float | None
    residual_var_rhs: float | None
    tol: float

    def to_dict(self) -> dict:
        return asdict(self)


def is_product_mus(psi, a, b, tol: float = DEFAULT_TOL) -> bool:
    r = product_bound(psi, a, b)
    return abs(r.lhs - r.rhs) <= tol


def is_sum_mus(psi, a, b, tol: float = DEFAULT_TOL) -> bool:
    return weak_sum_bound(psi, a, b).gap <= tol


def _centered_pair(psi, a, b):
    n = a.shape[0]
    c = a - expectation(psi, a) * np.eye(n)
    d = b - expectation(psi, b) * np.eye(n)
    return c, d


def sum_mus_residual(psi, a, b, gamma: float = 1.0) -> tuple[float, int]:
    """Smallest of ``||(C - s*i*gamma*D) psi||`` over ``s = +1, -1``, with that ``s``.

    At ``gamma = 1`` and the conventional sign the squared residual equals
    the weak-sum gap.
    """
    psi, a, b = _prepare(psi, a, b)
    c, d = _centered_pair(psi, a, b)
    cpsi = c @ psi
    dpsi = d @ psi
    plus = float(np.linalg.norm(cpsi - 1j * gamma * dpsi))
    minus = float(np.linalg.norm(cpsi + 1j * gamma * dpsi))
    return (plus, 1) if plus <= minus else (minus, -1)


def variational_residual_lhs(psi, a, b) -> float:
    """``||((C^2 + D^2)/(Var A + Var B)) psi - psi||``.

    Vanishes where the sum of variances is stationary under variations of
    the normalized state.
    """
    psi, a, b = _prepare(psi, a, b)
    c, d = _centered_pair(psi, a, b)
    cpsi = c @ psi
    dpsi = d @ psi
    total = float(np.vdot(cpsi, cpsi).real + np.vdot(dpsi, dpsi).real)
    if not total > NULL_NORM:
        raise DegenerateStateError("degenerate common eigenstate: both variances vanish")
    return float(np.linalg.norm((c @ cpsi + d @ dpsi) / total - psi))


def variational_residual_rhs(psi, a, b, psi_perp) -> float:
    """``||((A^2 + B^2)/(|c| + |<psi|A +/- iB|psi_perp>|^2)) psi - psi||``.

    ``A`` and ``B`` enter uncentered; for states with nonzero means this
    differs from :func:`variational_residual_lhs` even when both describe
    the same extremum.
    """
    psi, a, b = _prepare(psi, a, b)
    psi_perp = np.asarray(psi_perp, dtype=complex)
    c = commutator_mean(psi, a, b)
    s = sign_choice(c)
    denom = abs(c) + perp_term(psi, a, b, psi_perp, s)
    if not denom > NULL_NORM:
        raise UncertaintyLabError("zero denominator in the right-hand-side residual")
    return float(np.linalg.norm((a @ (a @ psi) + b @ (b @ psi)) / denom - psi))


def optimal_perp_eq18(psi, a, b, psi_perp_seed=None, sign: int | None = None) -> np.ndarray:
    """Normalized ``(A - s*iB) psi``, the stationary partner of the right-hand side.

    ``s`` follows the sign convention unless given.  The result is not
    orthogonal to ``psi`` when ``<A>`` or ``<B>`` is nonzero; callers can
    inspect ``abs(inner(psi, result))``.  ``psi_perp_seed`` is accepted for
    interface compatibility; the stationary partner does not depend on it.
    """
    psi, a, b = _prepare(psi, a, b)
    if sign is None:
        sign = sign_choice(commutator_mean(psi, a, b))
    v = a @ psi - sign * 1j * (b @ psi)
    n = np.linalg.norm(v)
    if not n > NULL_NORM:
        raise AlreadySaturatedError("state is annihilated by A -/+ iB")
    return v / n


def mus_verdict(psi, a, b, tol: float = DEFAULT_TOL, psi_perp=None) -> MusVerdict:
    """Collect every MUS predicate and residual for one state.

    ``residual_var_rhs`` needs a partner state and is ``None`` without one;
    ``residual_var_lhs`` is ``None`` for a common eigenstate.
    """
    psi, a, b = _prepare(psi, a, b)
    va = variance(psi, a)
    vb = variance(psi, b)
    res_aib, branch = sum_mus_residual(psi, a, b)
    gamma = None
    res_aigb = None
    if np.sqrt(vb) >= GAMMA_MIN_SD:
        gamma = float(np.sqrt(va / vb))
        res_aigb, _ = sum_mus_residual(psi, a, b, gamma)
    try:
        var_lhs = variational_residual_lhs(psi, a, b)
    except DegenerateStateError:
        var_lhs = None
    var_rhs = None
    if psi_perp is not None:
        try:
            var_rhs = variational_residual_rhs(psi, a, b, psi_perp)
        except UncertaintyLabError:
            var_rhs = None
    return MusVerdict(
        is_product_mus=is_product_mus(psi, a, b, tol),
        is_sum_mus=is_sum_mus(psi, a, b, tol),
        gamma=gamma,
        residual_AiB=res_aib,
        branch_AiB=branch,
        residual_AigB=res_aigb,
        residual_A2B2=eigenstate_residual(psi, a @ a + b @ b),
        residual_var_lhs=var_lhs,
        residual_var_rhs=var_rhs,
        tol=tol,
    )


def find_theta_roots(residual, lo: float = 0.0, hi: float = 2 * np.pi, scan: int = 721,
                     tol: float = 1e-9) -> list[float]:
    """Angles in ``[lo, hi]`` where ``residual(theta)`` vanishes.

    Scans a uniform grid for local minima, polishes each with a bounded
    scalar minimization and keeps those whose residual is below ``tol``.
    """
    grid = np.linspace(lo, hi, scan)
    vals = np.array([residual(t) for t in grid])
    step = grid[1] - grid[0]
    roots: list[float] = []
    for k in range(scan):
        left = vals[k - 1] if k > 0 else np.inf
        right = vals[k + 1] if k < scan - 1 else np.inf
        if vals[k] <= left and vals[k] <= right:
            a = max(lo, grid[k] - step)
            b = min(hi, grid[k] + step)
            res = minimize_scalar(residual, bounds=(a, b), method="bounded",
                                  options={"xatol": 1e-13})
            if res.fun < tol and not any(abs(res.x - r) < step for r in roots):
                roots.append(float(res.x))
    return sorted(roots)


def theta_mus_angles(a, b, lo: float = 0.0, hi: float = 2 * np.pi) -> dict[str, list[float]]:
    """Angles of the theta-family that are eigenstates of ``A -/+ iB`` and of ``A^2 + B^2``."""
    dim = a.shape[0]
    a2b2 = a @ a + b @ b
    return {
        "AiB": find_theta_roots(lambda t: sum_mus_residual(theta_state(t, dim), a, b)[0], lo, hi),
        "A2B2": find_theta_roots(lambda t: eigenstate_residual(theta_state(t, dim), a2b2), lo, hi),
    }
