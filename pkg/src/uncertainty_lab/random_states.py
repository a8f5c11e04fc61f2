"""Seeded Haar unitaries, random orthogonal partners and the theta-family of spin-1 states."""

from __future__ import annotations

import numpy as np

from .errors import NullVectorError, UncertaintyLabError
from .hilbert import NULL_NORM, as_state, project_out

MAX_RESAMPLES = 16


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Generator for ``seed``; extra integers select an independent sub-stream.

    ``make_rng(seed, row)`` gives the same stream regardless of how many
    other rows were drawn first, which keeps parallel sweeps reproducible.
    """
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.PCG64(ss))


def _fix_phases(q: np.ndarray, r: np.ndarray) -> np.ndarray:
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phase = d / np.abs(d)
    return q * phase[..., None, :]


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR factorization of a Ginibre matrix.

    The columns of ``Q`` are rescaled by the phases of ``diag(R)`` so that
    the triangular factor has a positive diagonal, which makes ``Q`` exactly
    Haar rather than biased by LAPACK's sign convention.
    """
    if int(dim) != dim or dim < 2:
        raise UncertaintyLabError(f"unitary dimension must be >= 2, got {dim!r}")
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return _fix_phases(q, r)


def haar_unitaries(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Stack of ``count`` Haar unitaries, shape ``(count, dim, dim)``."""
    if int(dim) != dim or dim < 2:
        raise UncertaintyLabError(f"unitary dimension must be >= 2, got {dim!r}")
    shape = (count, dim, dim)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return _fix_phases(q, r)


def random_perp(psi, rng: np.random.Generator) -> np.ndarray:
    """Random unit vector orthogonal to ``psi``: ``(1 - |psi><psi|) U |1>``, normalized.

    ``|1>`` is the first basis vector.  Resamples when the projection is
    numerically null and gives up after :data:`MAX_RESAMPLES` attempts.
    """
    psi = as_state(psi)
    for _ in range(MAX_RESAMPLES):
        u = haar_unitary(psi.size, rng)
        v = project_out(psi, u[:, 0])
        n = np.linalg.norm(v)
        if n > NULL_NORM:
            v = v / n
            # one more pass after rescaling keeps the overlap at rounding level
            v = project_out(psi, v)
            return v / np.linalg.norm(v)
    raise NullVectorError(f"{MAX_RESAMPLES} consecutive null projections; random source is broken")


def theta_state(theta: float, dim: int = 3) -> np.ndarray:
    """``(cos(theta)|top> + |middle> + sin(theta)|bottom>)/sqrt(2)``.

    For ``dim == 3`` this is ``(cos t, 1, sin t)/sqrt(2)`` in the basis
    ``|1>, |0>, |-1>``.  Other dimensions put the constant amplitude on
    index ``dim // 2``.
    """
    if not np.isfinite(theta):
        raise UncertaintyLabError("theta must be finite")
    if dim < 3:
        raise UncertaintyLabError("theta family needs dimension >= 3")
    v = np.zeros(dim, dtype=complex)
    v[0] = np.cos(theta)
    v[dim // 2] = 1.0
    v[-1] = np.sin(theta)
    return v / np.sqrt(2)


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Uniformly distributed pure state (normalized complex Gaussian vector)."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """GUE-like random Hermitian matrix; exactly Hermitian in floating point."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (z + z.conj().T) / 2
