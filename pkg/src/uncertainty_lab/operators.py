"""Concrete observables: spin-j triples, truncated ladder operators, quadratures.

Spin matrices use the basis ``|j>, |j-1>, ..., |-j>`` (descending m).
Fock-space objects are truncated at dimension ``N``; the commutator
``[a, a^dagger]`` is the identity except for the corner entry ``1 - N``, so
results built from them are trusted only for low-occupancy states (see
:func:`check_low_occupancy`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from .errors import TruncationError, UncertaintyLabError
from .hilbert import normalize

DEFAULT_FOCK_DIM = 40
TAIL_TOL = 1e-8


@dataclass(frozen=True)
class SpinTriple:
    Jx: np.ndarray
    Jy: np.ndarray
    Jz: np.ndarray
    j: Fraction
    hbar: float = 1.0

    @property
    def dim(self) -> int:
        return self.Jz.shape[0]

    def component(self, axis: str) -> np.ndarray:
        return {"x": self.Jx, "y": self.Jy, "z": self.Jz}[axis]


@dataclass(frozen=True)
class FockAlgebra:
    a: np.ndarray
    a_dagger: np.ndarray
    N: int
    hbar: float = 1.0


def _as_half_integer(j) -> Fraction:
    try:
        exact = Fraction(j)
    except (TypeError, ValueError) as exc:
        raise UncertaintyLabError(f"spin {j!r} is not a number") from exc
    jf = exact.limit_denominator(1000)
    if abs(float(jf - exact)) > 1e-12 or (2 * jf).denominator != 1 or jf <= 0:
        raise UncertaintyLabError(f"spin must be a positive half-integer, got {j!r}")
    return jf


def spin_operators(j=1, hbar: float = 1.0) -> SpinTriple:
    """Angular-momentum matrices for spin ``j``.

    Built from the raising operator
    ``J+ |m> = hbar sqrt(j(j+1) - m(m+1)) |m+1>`` with
    ``Jx = (J+ + J-)/2`` and ``Jy = (J+ - J-)/(2i)``.

    Parameters
    ----------
    j : int, float, str or Fraction
        Positive half-integer spin (``1``, ``0.5``, ``"3/2"``, ...).
    hbar : float
        Scale of the commutator ``[Jx, Jy] = i hbar Jz``.
    """
    jf = _as_half_integer(j)
    if not hbar > 0:
        raise UncertaintyLabError("hbar must be positive")
    dim = int(2 * jf) + 1
    jv = float(jf)
    m = jv - np.arange(dim)
    # entry (k-1, k) raises m_k to m_k + 1
    raise_elems = hbar * np.sqrt(jv * (jv + 1) - m[1:] * (m[1:] + 1))
    jplus = np.diag(raise_elems, k=1).astype(complex)
    jminus = jplus.conj().T
    jx = (jplus + jminus) / 2
    jy = (jplus - jminus) / 2j
    jz = np.diag(hbar * m).astype(complex)
    return SpinTriple(jx, jy, jz, jf, float(hbar))


def ladder_operators(N: int, hbar: float = 1.0) -> FockAlgebra:
    if int(N) != N or N < 2:
        raise UncertaintyLabError(f"Fock truncation must be an integer >= 2, got {N!r}")
    if not hbar > 0:
        raise UncertaintyLabError("hbar must be positive")
    N = int(N)
    a = np.diag(np.sqrt(np.arange(1, N, dtype=float)), k=1).astype(complex)
    return FockAlgebra(a, a.conj().T, N, float(hbar))


def quadratures(alg: FockAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """Dimensionless ``X1 = (a + a^dagger)/2`` and ``X2 = (a - a^dagger)/(2i)``."""
    x1 = (alg.a + alg.a_dagger) / 2
    x2 = (alg.a - alg.a_dagger) / 2j
    return x1, x2


def position_momentum(alg: FockAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """``x = sqrt(hbar/2)(a + a^dagger)``, ``p = i sqrt(hbar/2)(a^dagger - a)``."""
    s = np.sqrt(alg.hbar / 2)
    return s * (alg.a + alg.a_dagger), 1j * s * (alg.a_dagger - alg.a)


def check_low_occupancy(psi, tol: float = TAIL_TOL) -> float:
    """Return the weight on the top two Fock levels, raising if it exceeds ``tol``.

    The weight is the probability ``|c_{N-2}|^2 + |c_{N-1}|^2``.
    """
    psi = np.asarray(psi, dtype=complex)
    tail = float(np.sum(np.abs(psi[-2:]) ** 2))
    if tail > tol:
        raise TruncationError(
            f"state has weight {tail:.3e} on the top two Fock levels; increase the truncation"
        )
    return tail


def fock_state(n: int, N: int) -> np.ndarray:
    if not 0 <= n < N:
        raise UncertaintyLabError(f"Fock level {n} outside truncation {N}")
    v = np.zeros(N, dtype=complex)
    v[n] = 1.0
    return v


def coherent_state(alpha: complex, N: int = DEFAULT_FOCK_DIM) -> np.ndarray:
    """Truncated and renormalized ``exp(-|alpha|^2/2) sum alpha^n/sqrt(n!) |n>``."""
    n = np.arange(N)
    alpha = complex(alpha)
    if alpha == 0:
        return fock_state(0, N)
    logmag = n * np.log(abs(alpha)) - 0.5 * gammaln(n + 1) - abs(alpha) ** 2 / 2
    psi = normalize(np.exp(logmag + 1j * n * np.angle(alpha)))
    check_low_occupancy(psi)
    return psi


def squeezed_vacuum(r: float, N: int = DEFAULT_FOCK_DIM) -> np.ndarray:
    """Squeezed vacuum ``exp(r (a^2 - a^dagger^2)/2)|0>`` in the truncated basis.

    For ``r > 0`` the ``X1`` quadrature is squeezed: ``Var X1 = exp(-2r)/4``.
    """
    psi = np.zeros(N, dtype=complex)
    k = np.arange(0, (N + 1) // 2)
    n = 2 * k
    t = np.tanh(r)
    log_mag = 0.5 * gammaln(n + 1) - gammaln(k + 1) - k * np.log(2.0)
    psi[n] = (-t) ** k * np.exp(log_mag) / np.sqrt(np.cosh(r))
    psi = normalize(psi)
    check_low_occupancy(psi)
    return psi
