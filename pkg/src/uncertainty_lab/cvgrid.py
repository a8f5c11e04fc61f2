"""Position-momentum checks on a uniform 1-D grid.

The Gaussians that extremize the two sides of the sum relation for
``A = x`` and ``B = p = -i hbar d/dx`` are sampled on a grid, and the
differential equations they should satisfy are checked with second-order
central differences.  Moments use fourth-order differences so that their
discretization error stays well below the tolerances of the residual checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridError, UncertaintyLabError

DEFAULT_N = 4001
DEFAULT_HALFWIDTH = 12.0
DECAY_WIDTHS = 8.0
BOUNDARY_TOL = 1e-10


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n_points: int
    hbar: float = 1.0

    def __post_init__(self):
        if self.n_points < 101 or self.n_points % 2 == 0:
            raise GridError(f"grid needs an odd number of points >= 101, got {self.n_points}")
        if not self.x_max > self.x_min:
            raise GridError("grid needs x_max > x_min")
        if not self.hbar > 0:
            raise GridError("hbar must be positive")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def is_symmetric(self) -> bool:
        return abs(self.x_min + self.x_max) <= 1e-12 * max(1.0, abs(self.x_max))


def default_grid(hbar: float = 1.0, center: float = 0.0, halfwidth: float = DEFAULT_HALFWIDTH,
                 n_points: int = DEFAULT_N) -> Grid1D:
    """``[center - halfwidth*sqrt(hbar), center + halfwidth*sqrt(hbar)]`` with ``n_points`` samples."""
    w = halfwidth * np.sqrt(hbar)
    return Grid1D(center - w, center + w, n_points, hbar)


def trapezoid(y: np.ndarray, h: float):
    return h * (np.sum(y) - 0.5 * (y[0] + y[-1]))


@dataclass(frozen=True)
class GridWavefunction:
    grid: Grid1D
    values: np.ndarray = field(repr=False)

    def norm2(self) -> float:
        return float(trapezoid(np.abs(self.values) ** 2, self.grid.h))

    def normalized(self) -> "GridWavefunction":
        """Unit trapezoidal norm, global phase fixed so the peak sample is real positive."""
        v = self.values
        k = int(np.argmax(np.abs(v)))
        phase = v[k] / abs(v[k])
        v = v / phase / np.sqrt(self.norm2())
        return GridWavefunction(self.grid, v)

    def to_rows(self):
        for xi, v in zip(self.grid.x, self.values):
            yield xi, v.real, v.imag


@dataclass(frozen=True)
class RiccatiSolution:
    kind: str
    c_linear: complex
    c_const: complex
    m_value: float

    def u(self, x):
        return self.c_linear * np.asarray(x) + self.c_const


def riccati_solution(kind: str, a_mean: float = 0.0, b_mean: float = 0.0,
                     hbar: float = 1.0) -> RiccatiSolution:
    """Linear solution ``u = c_linear*x + c_const`` of the logarithmic-derivative Riccati equation.

    kind ``"L"``: ``u' + u^2 - (2ib/hbar) u = ((x - a)^2 + b^2 - m)/hbar^2``.
    kind ``"R"``: ``u' + u^2 = (x^2 - m')/hbar^2``.

    Matching powers of ``x`` gives ``c_linear^2 = 1/hbar^2``; the negative
    root is the normalizable one.  The linear and constant powers then fix
    ``c_const`` and the eigenvalue ``m``.
    """
    if not hbar > 0:
        raise UncertaintyLabError("hbar must be positive")
    c1 = -1.0 / hbar
    if kind == "L":
        # x^1: 2 c1 c2 - 2ib c1/hbar = -2a/hbar^2
        c2 = (-a_mean / hbar**2 + 1j * b_mean * c1 / hbar) / c1
        # x^0: c1 + c2^2 - 2ib c2/hbar = (a^2 + b^2 - m)/hbar^2
        m = a_mean**2 + b_mean**2 - hbar**2 * (c1 + c2**2 - 2j * b_mean * c2 / hbar)
    elif kind == "R":
        c2 = 0.0 + 0.0j
        m = -hbar**2 * (c1 + c2**2)
    else:
        raise UncertaintyLabError(f"kind must be 'L' or 'R', got {kind!r}")
    return RiccatiSolution(kind, complex(c1), complex(c2), float(np.real(m)))


def riccati_residual(sol: RiccatiSolution, x, a_mean: float = 0.0, b_mean: float = 0.0,
                     hbar: float = 1.0) -> np.ndarray:
    """Pointwise residual of the Riccati equation for a linear ``u``."""
    x = np.asarray(x, dtype=float)
    u = sol.u(x)
    du = sol.c_linear
    if sol.kind == "L":
        rhs = ((x - a_mean) ** 2 + b_mean**2 - sol.m_value) / hbar**2
        return du + u**2 - 2j * b_mean / hbar * u - rhs
    return du + u**2 - (x**2 - sol.m_value) / hbar**2


def _check_decay(grid: Grid1D, center: float) -> None:
    need = DECAY_WIDTHS * np.sqrt(grid.hbar)
    if grid.x_max - center < need or center - grid.x_min < need:
        raise GridError(
            f"grid too narrow: the Gaussian at {center} needs {need:.3g} on each side"
        )


def gaussian_psi_L(grid: Grid1D, a_mean: float = 0.0, b_mean: float = 0.0) -> GridWavefunction:
    """``exp[-x^2/(2 hbar) + ((a + ib)/hbar) x]``, normalized on the grid.

    Evaluated as ``exp[-(x - a)^2/(2 hbar) + i b x/hbar]``, which differs by
    a constant factor and avoids overflow for large ``a``.
    """
    _check_decay(grid, a_mean)
    x = grid.x
    hb = grid.hbar
    psi = GridWavefunction(grid, np.exp(-((x - a_mean) ** 2) / (2 * hb) + 1j * b_mean * x / hb))
    psi = psi.normalized()
    if max(abs(psi.values[0]), abs(psi.values[-1])) >= BOUNDARY_TOL:
        raise GridError("grid too narrow: wavefunction does not decay at the boundary")
    return psi


def gaussian_psi_R(grid: Grid1D) -> GridWavefunction:
    """``exp[-x^2/(2 hbar)]`` on a grid symmetric about zero."""
    if not grid.is_symmetric:
        raise GridError("gaussian_psi_R needs a grid symmetric about 0")
    _check_decay(grid, 0.0)
    x = grid.x
    psi = GridWavefunction(grid, np.exp(-(x**2) / (2 * grid.hbar)).astype(complex))
    return psi.normalized()


def _d1(v: np.ndarray, h: float) -> np.ndarray:
    """Second-order central first derivative on interior points."""
    return (v[2:] - v[:-2]) / (2 * h)


def _d2(v: np.ndarray, h: float) -> np.ndarray:
    return (v[2:] - 2 * v[1:-1] + v[:-2]) / (h * h)


def _relative(res: np.ndarray, scale: np.ndarray) -> float:
    return float(np.linalg.norm(res) / np.linalg.norm(scale))


def ode_residual_L(psi: GridWavefunction, a_mean: float, b_mean: float, m_value: float) -> float:
    """Relative residual of ``psi'' - (2ib/hbar) psi' - (m/hbar^2)(b^2/m + (x-a)^2/m - 1) psi``.

    Normalized by ``||hbar^2 psi''||`` after multiplying the residual by
    ``hbar^2``; boundary points are excluded.
    """
    if not m_value > 0:
        raise UncertaintyLabError("m must be positive")
    hb = psi.grid.hbar
    h = psi.grid.h
    v = psi.values
    x = psi.grid.x[1:-1]
    d2 = _d2(v, h)
    res = d2 - 2j * b_mean / hb * _d1(v, h) - (b_mean**2 + (x - a_mean) ** 2 - m_value) / hb**2 * v[1:-1]
    return _relative(hb**2 * res, hb**2 * d2)


def eigen_residual_R(psi: GridWavefunction, m_prime: float) -> float:
    """Relative residual of ``(x^2 - m') psi - hbar^2 psi''`` on interior points."""
    if not m_prime > 0:
        raise UncertaintyLabError("m' must be positive")
    hb = psi.grid.hbar
    x = psi.grid.x[1:-1]
    d2 = hb**2 * _d2(psi.values, psi.grid.h)
    res = (x**2 - m_prime) * psi.values[1:-1] - d2
    return _relative(res, d2)


def log_derivative(psi: GridWavefunction) -> np.ndarray:
    """``psi'/psi`` on interior points.

    Uses fourth-order differences: the second-order error grows like
    ``h^2 u^3`` and exceeds 1e-3 a few widths from the peak.
    """
    return _d1_4th(psi.values, psi.grid.h)[1:-1] / psi.values[1:-1]


def _d1_4th(v: np.ndarray, h: float) -> np.ndarray:
    p = np.concatenate([np.zeros(2, v.dtype), v, np.zeros(2, v.dtype)])
    return (-p[4:] + 8 * p[3:-1] - 8 * p[1:-3] + p[:-4]) / (12 * h)


def grid_moments(psi: GridWavefunction) -> dict[str, float]:
    """``<x>``, ``<p>``, ``Var x``, ``Var p`` and their sum on the grid.

    Derivatives use fourth-order central differences with zero padding,
    valid because the wavefunction has decayed at the boundary.
    """
    g = psi.grid
    h = g.h
    hb = g.hbar
    x = g.x
    v = psi.values
    rho = np.abs(v) ** 2
    norm = trapezoid(rho, h)
    mean_x = trapezoid(x * rho, h) / norm
    var_x = trapezoid((x - mean_x) ** 2 * rho, h) / norm
    dv = _d1_4th(v, h)
    mean_p = (trapezoid(np.conj(v) * (-1j * hb) * dv, h) / norm).real
    # <p^2> = hbar^2 ||psi'||^2
    p2 = hb**2 * trapezoid(np.abs(dv) ** 2, h) / norm
    var_p = p2 - mean_p**2
    return {
        "mean_x": float(mean_x),
        "mean_p": float(mean_p),
        "var_x": float(var_x),
        "var_p": float(var_p),
        "var_sum": float(var_x + var_p),
    }
