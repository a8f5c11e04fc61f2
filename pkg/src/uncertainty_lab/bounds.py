"""Product, Maccone-Pati sum and weak sum uncertainty relations.

Sign convention shared by every function here: with ``c = i<[A, B]>`` the
sign is ``+1`` when ``c >= 0`` and ``-1`` otherwise, so ``sign * c = |c|``.
The same sign selects ``A + sign*iB`` inside the orthogonal-partner term and
``C - sign*iD`` for the saturating vector, where ``C = A - <A>`` and
``D = B - <B>``.  With that pairing

    ||(C - sign*iD) psi||^2 = Var A + Var B - |c|,

which is the gap of the weak sum relation.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import AlreadySaturatedError, DimensionError, NotNormalizedError, NotOrthogonalError
from .hilbert import (
    NORM_TOL,
    NULL_NORM,
    as_hermitian,
    as_state,
    check_dims,
    check_normalized,
    commutator_mean,
    expectation,
    project_out,
    variance,
)

PERP_ORTHO_TOL = 1e-8
DEGENERATE_VAR = 1e-12
PERP_NULL_TOL = 1e-12


@dataclass(frozen=True)
class BoundReport:
    relation: str
    lhs: float
    rhs: float
    gap: float
    sign_choice: int
    term_commutator: float
    term_perp: float = 0.0
    # set when psi_perp is orthogonal to (A +/- iB)psi, where term_perp vanishes
    perp_orthogonal: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def sign_choice(c: float) -> int:
    return 1 if c >= 0 else -1


def _prepare(psi, a, b):
    psi = as_state(psi)
    a = as_hermitian(a)
    b = as_hermitian(b)
    check_dims(psi, a, b)
    check_normalized(psi)
    return psi, a, b


def _moments(psi, a, b):
    va = variance(psi, a)
    vb = variance(psi, b)
    c = commutator_mean(psi, a, b)
    return va, vb, c


def _degenerate(va: float, vb: float) -> bool:
    return va < DEGENERATE_VAR and vb < DEGENERATE_VAR


def product_bound(psi, a, b) -> BoundReport:
    """``Delta A Delta B >= |<[A, B]>|/2`` in square-root form."""
    psi, a, b = _prepare(psi, a, b)
    va, vb, c = _moments(psi, a, b)
    s = sign_choice(c)
    if _degenerate(va, vb):
        return BoundReport("product", 0.0, 0.0, 0.0, s, 0.0)
    lhs = float(np.sqrt(va * vb))
    rhs = abs(c) / 2
    return BoundReport("product", lhs, rhs, lhs - rhs, s, abs(c))


def weak_sum_bound(psi, a, b) -> BoundReport:
    """``Var A + Var B >= |i<[A, B]>|``."""
    psi, a, b = _prepare(psi, a, b)
    va, vb, c = _moments(psi, a, b)
    s = sign_choice(c)
    if _degenerate(va, vb):
        return BoundReport("weak_sum", 0.0, 0.0, 0.0, s, 0.0)
    lhs = va + vb
    rhs = abs(c)
    return BoundReport("weak_sum", lhs, rhs, lhs - rhs, s, rhs)


def perp_term(psi, a, b, psi_perp, sign: int) -> float:
    """``|<psi|A + sign*iB|psi_perp>|^2``."""
    return float(abs(np.vdot(psi, (a + sign * 1j * b) @ psi_perp)) ** 2)


def mp_sum_bound(psi, a, b, psi_perp) -> BoundReport:
    """Maccone-Pati relation ``Var A + Var B >= |c| + |<psi|A +/- iB|psi_perp>|^2``.

    ``psi_perp`` must be normalized and orthogonal to ``psi`` within
    ``PERP_ORTHO_TOL``.  A partner orthogonal to ``(A +/- iB)psi`` is accepted;
    the report then has ``term_perp == 0`` and ``perp_orthogonal`` set.
    """
    psi, a, b = _prepare(psi, a, b)
    psi_perp = as_state(psi_perp)
    if psi_perp.shape != psi.shape:
        raise DimensionError(f"psi_perp has shape {psi_perp.shape}, state has {psi.shape}")
    if abs(np.linalg.norm(psi_perp) - 1.0) > NORM_TOL:
        raise NotNormalizedError("psi_perp is not normalized")
    overlap = abs(np.vdot(psi_perp, psi))
    if overlap >= PERP_ORTHO_TOL:
        raise NotOrthogonalError(f"psi_perp overlaps psi by {overlap:.3e}")
    va, vb, c = _moments(psi, a, b)
    s = sign_choice(c)
    if _degenerate(va, vb):
        return BoundReport("mp_sum", 0.0, 0.0, 0.0, s, 0.0)
    lhs = va + vb
    tp = perp_term(psi, a, b, psi_perp, s)
    rhs = abs(c) + tp
    return BoundReport(
        "mp_sum", lhs, rhs, lhs - rhs, s, abs(c), tp,
        perp_orthogonal=tp <= PERP_NULL_TOL * max(1.0, lhs),
    )


def saturating_vector(psi, a, b, sign: int | None = None) -> np.ndarray:
    """Unnormalized ``(C - sign*iD)psi``; ``sign`` defaults to the convention."""
    psi, a, b = _prepare(psi, a, b)
    if sign is None:
        sign = sign_choice(commutator_mean(psi, a, b))
    ma = expectation(psi, a)
    mb = expectation(psi, b)
    return a @ psi - ma * psi - sign * 1j * (b @ psi - mb * psi)


def saturating_perp(psi, a, b) -> np.ndarray:
    """Normalized ``(C -/+ iD)|psi>``, the partner that makes the MP relation tight.

    Raises
    ------
    AlreadySaturatedError
        If ``(C -/+ iD)psi`` vanishes, i.e. psi already saturates the weak
        sum relation and no partner is needed.
    """
    f = saturating_vector(psi, a, b)
    n = np.linalg.norm(f)
    if not n > NULL_NORM:
        raise AlreadySaturatedError("state already saturates; no perp needed")
    psi = as_state(psi)
    v = project_out(psi, f / n)
    return v / np.linalg.norm(v)
