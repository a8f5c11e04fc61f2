"""Dense complex linear algebra for pure states and observables.

States are 1-D ``complex128`` arrays and observables are square
``complex128`` arrays.  Functions validate their inputs and return plain
floats or arrays; nothing here keeps state between calls.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionError,
    NotHermitianError,
    NotNormalizedError,
    NullVectorError,
    UncertaintyLabError,
)

HERMITIAN_TOL = 1e-12
NULL_NORM = 1e-13
NORM_TOL = 1e-8
IMAG_TOL = 1e-10


def as_state(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise DimensionError(f"state must be 1-D, got shape {v.shape}")
    if v.size < 2:
        raise DimensionError("state dimension must be at least 2")
    return v


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"operator must be square, got shape {m.shape}")
    return m


def hermiticity_defect(m: np.ndarray) -> float:
    """Max-norm of ``M - M^dagger``."""
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def as_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = as_matrix(m)
    defect = hermiticity_defect(m)
    if defect >= tol:
        raise NotHermitianError(f"operator is not Hermitian (max |M - M^dagger| = {defect:.3e})")
    return m


def check_dims(psi: np.ndarray, *ops: np.ndarray) -> None:
    for op in ops:
        if op.shape[-1] != psi.shape[0]:
            raise DimensionError(f"dimension mismatch: state {psi.shape[0]} vs operator {op.shape}")


def check_normalized(psi: np.ndarray, tol: float = NORM_TOL) -> None:
    n = np.linalg.norm(psi)
    if abs(n - 1.0) > tol:
        raise NotNormalizedError(f"state norm {n!r} differs from 1")


def _prepare(psi, *ops):
    psi = as_state(psi)
    ops = tuple(as_hermitian(op) for op in ops)
    check_dims(psi, *ops)
    check_normalized(psi)
    return (psi,) + ops


def inner(u, v) -> complex:
    """``<u|v>``, conjugate-linear in ``u``."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise DimensionError(f"dimension mismatch: {u.shape} vs {v.shape}")
    return complex(np.vdot(u, v))


def normalize(v) -> np.ndarray:
    v = as_state(v)
    n = np.linalg.norm(v)
    if not n > NULL_NORM:
        raise NullVectorError(f"null vector (norm {n:.3e}) cannot be normalized")
    return v / n


def project_out(psi, v) -> np.ndarray:
    """Apply ``1 - |psi><psi|`` to ``v``.

    The projection is applied twice; the second pass removes the residual
    overlap left by cancellation when ``v`` is nearly parallel to ``psi``.
    """
    psi = as_state(psi)
    v = np.asarray(v, dtype=complex)
    if v.shape != psi.shape:
        raise DimensionError(f"dimension mismatch: {psi.shape} vs {v.shape}")
    out = v - psi * np.vdot(psi, v)
    return out - psi * np.vdot(psi, out)


def expectation(psi, m) -> float:
    """Real expectation value ``<psi|M|psi>`` of a Hermitian operator.

    Raises
    ------
    DimensionError
        If the state and operator sizes differ.
    NotHermitianError
        If ``M`` fails the Hermiticity check.
    """
    psi, m = _prepare(psi, m)
    z = np.vdot(psi, m @ psi)
    if abs(z.imag) > IMAG_TOL * max(1.0, abs(z.real)):
        raise NotHermitianError(f"expectation has imaginary part {z.imag:.3e}")
    return float(z.real)


def variance(psi, m) -> float:
    """``<M^2> - <M>^2``, clamped at zero.

    Uses ``<M^2> = ||M psi||^2`` for Hermitian ``M``.
    """
    psi, m = _prepare(psi, m)
    mpsi = m @ psi
    mean = np.vdot(psi, mpsi).real
    second = np.vdot(mpsi, mpsi).real
    return float(max(second - mean * mean, 0.0))


def commutator_mean(psi, a, b) -> float:
    """The real number ``i <psi|[A, B]|psi>``.

    With ``z = <A psi|B psi>`` one has ``<[A, B]> = z - conj(z)``, so the
    result is ``-2 Im z`` and carries no imaginary residue.
    """
    psi, a, b = _prepare(psi, a, b)
    z = np.vdot(a @ psi, b @ psi)
    return float(-2.0 * z.imag)


def centered(psi, m) -> np.ndarray:
    """``M - <M>`` for the given state."""
    m = as_matrix(m)
    return m - expectation(psi, m) * np.eye(m.shape[0])


def hermitian_eigensystem(m):
    """Ascending eigenvalues and orthonormal eigenvectors (columns)."""
    m = as_hermitian(m)
    w, v = np.linalg.eigh(m)
    return w, v


def eigenstate_residual(psi, m, normal: bool = False) -> float:
    """``|| M psi - <psi|M|psi> psi ||``; zero exactly when psi is an eigenvector.

    ``M`` need not be Hermitian.  With ``normal=True`` the operator is also
    checked to commute with its adjoint.
    """
    psi = as_state(psi)
    m = as_matrix(m)
    check_dims(psi, m)
    check_normalized(psi)
    if normal:
        defect = np.max(np.abs(m @ m.conj().T - m.conj().T @ m))
        if defect > 1e-10 * max(1.0, np.max(np.abs(m)) ** 2):
            raise UncertaintyLabError(f"operator is not normal (defect {defect:.3e})")
    mpsi = m @ psi
    return float(np.linalg.norm(mpsi - np.vdot(psi, mpsi) * psi))
