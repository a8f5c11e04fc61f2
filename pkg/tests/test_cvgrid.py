import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uncertainty_lab.cvgrid import (
    Grid1D,
    GridWavefunction,
    default_grid,
    eigen_residual_R,
    gaussian_psi_L,
    gaussian_psi_R,
    grid_moments,
    log_derivative,
    ode_residual_L,
    riccati_residual,
    riccati_solution,
)
from uncertainty_lab.errors import GridError, UncertaintyLabError
from uncertainty_lab.hilbert import variance
from uncertainty_lab.operators import fock_state, ladder_operators, position_momentum


def psi_l(a=1.0, b=0.5, hbar=1.0, n=4001):
    return gaussian_psi_L(default_grid(hbar, a, n_points=n), a, b)


def psi_r(hbar=1.0, n=4001):
    return gaussian_psi_R(default_grid(hbar, 0.0, n_points=n))


@pytest.mark.parametrize(
    "kind, a, b, hbar, expected",
    [
        ("L", 1.0, 0.5, 1.0, (-1, 1 + 0.5j, 1)),
        ("R", 0.0, 0.0, 1.0, (-1, 0, 1)),
        ("L", 0.0, 0.0, 2.0, (-0.5, 0, 2)),
    ],
)
def test_riccati_examples(kind, a, b, hbar, expected):
    sol = riccati_solution(kind, a, b, hbar)
    assert (sol.c_linear, sol.c_const, sol.m_value) == pytest.approx(expected, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(a=st.floats(-5, 5), b=st.floats(-5, 5), hbar=st.floats(0.1, 5))
def test_riccati_coefficients_and_residual(a, b, hbar):
    sol = riccati_solution("L", a, b, hbar)
    assert sol.c_linear == pytest.approx(-1 / hbar, rel=1e-14)
    assert sol.c_const == pytest.approx((a + 1j * b) / hbar, rel=1e-12, abs=1e-12)
    assert sol.m_value == pytest.approx(hbar, rel=1e-12)
    x = np.linspace(-10, 10, 100)
    scale = 1 + (np.abs(x) + abs(a) + abs(b)) ** 2 / hbar**2
    assert np.max(np.abs(riccati_residual(sol, x, a, b, hbar)) / scale) < 1e-12
    sol_r = riccati_solution("R", hbar=hbar)
    assert np.max(np.abs(riccati_residual(sol_r, x, hbar=hbar)) / scale) < 1e-12


def test_riccati_rejects_bad_input():
    with pytest.raises(UncertaintyLabError):
        riccati_solution("Q")
    with pytest.raises(UncertaintyLabError):
        riccati_solution("L", hbar=0.0)


def test_grid_validation():
    with pytest.raises(GridError):
        Grid1D(-1, 1, 100)
    with pytest.raises(GridError):
        Grid1D(-1, 1, 51)
    with pytest.raises(GridError):
        Grid1D(1, -1, 101)
    g = default_grid()
    assert g.h == pytest.approx(0.006) and g.is_symmetric


def test_psi_l_reduces_to_psi_r():
    g = default_grid()
    assert np.max(np.abs(gaussian_psi_L(g, 0, 0).values - gaussian_psi_R(g).values)) < 1e-12


def test_psi_l_moments():
    mom = grid_moments(psi_l())
    assert mom["mean_x"] == pytest.approx(1.0, abs=1e-6)
    assert mom["mean_p"] == pytest.approx(0.5, abs=1e-6)
    assert mom["var_x"] == pytest.approx(0.5, abs=1e-5)
    assert mom["var_p"] == pytest.approx(0.5, abs=1e-5)


def test_psi_normalization_and_decay():
    for psi in (psi_l(), psi_r(), psi_l(3, -2, 2.0)):
        assert psi.norm2() == pytest.approx(1.0, abs=1e-8)
        assert max(abs(psi.values[0]), abs(psi.values[-1])) < 1e-10
        k = int(np.argmax(np.abs(psi.values)))
        assert psi.values[k].real > 0 and psi.values[k].imag == 0


def test_psi_r_examples():
    psi = psi_r()
    mom = grid_moments(psi)
    assert abs(mom["mean_x"]) < 1e-10 and abs(mom["mean_p"]) < 1e-10
    assert mom["var_sum"] == pytest.approx(1.0, abs=1e-5)
    assert np.argmax(np.abs(psi.values)) == psi.grid.n_points // 2


def test_psi_r_needs_symmetric_grid():
    with pytest.raises(GridError, match="symmetric"):
        gaussian_psi_R(default_grid(center=1.0))


def test_grid_too_narrow():
    with pytest.raises(GridError, match="grid too narrow"):
        gaussian_psi_L(default_grid(), a_mean=5.0)
    with pytest.raises(GridError, match="grid too narrow"):
        gaussian_psi_R(default_grid(halfwidth=6.0))


def test_ode_residual_examples():
    psi = psi_l()
    assert ode_residual_L(psi, 1.0, 0.5, 1.0) < 1e-3
    assert ode_residual_L(psi, 1.0, 0.5, 2.0) > 0.1
    assert ode_residual_L(psi_r(), 0.0, 0.0, 1.0) < 1e-3
    with pytest.raises(UncertaintyLabError):
        ode_residual_L(psi, 1.0, 0.5, 0.0)


def test_eigen_residual_examples():
    psi = psi_r()
    assert eigen_residual_R(psi, 1.0) < 1e-3
    assert eigen_residual_R(psi, 3.0) > 0.1
    g = default_grid()
    h1 = GridWavefunction(g, (g.x * np.exp(-g.x**2 / 2)).astype(complex)).normalized()
    assert eigen_residual_R(h1, 3.0) < 1e-3
    assert eigen_residual_R(h1, 1.0) > 0.1
    with pytest.raises(UncertaintyLabError):
        eigen_residual_R(psi, -1.0)


@pytest.mark.parametrize("hbar", [0.5, 1.0, 2.0])
def test_residuals_scale_with_hbar(hbar):
    assert ode_residual_L(psi_l(1.0, 0.5, hbar), 1.0, 0.5, hbar) < 1e-3
    assert eigen_residual_R(psi_r(hbar), hbar) < 1e-3


def test_second_order_convergence():
    ns = [1001, 2001, 4001, 8001]
    res_l = [ode_residual_L(psi_l(n=n), 1.0, 0.5, 1.0) for n in ns]
    res_r = [eigen_residual_R(psi_r(n=n), 1.0) for n in ns]
    for res in (res_l, res_r):
        ratios = [res[k] / res[k + 1] for k in range(3)]
        assert all(3.5 <= q <= 4.5 for q in ratios), ratios


@pytest.mark.parametrize("hbar", [1.0, 2.0])
def test_consistent_with_fock_vacuum(hbar):
    alg = ladder_operators(30, hbar)
    x, p = position_momentum(alg)
    vac = fock_state(0, 30)
    mom = grid_moments(psi_r(hbar))
    assert mom["var_x"] == pytest.approx(variance(vac, x), abs=1e-4)
    assert mom["var_p"] == pytest.approx(variance(vac, p), abs=1e-4)
    assert mom["var_sum"] == pytest.approx(variance(vac, x) + variance(vac, p), abs=1e-4)


@pytest.mark.parametrize("a, b, hbar", [(1.0, 0.5, 1.0), (-2.0, 1.5, 0.5), (0.5, -1.0, 2.0)])
def test_log_derivative_matches_linear_u(a, b, hbar):
    psi = psi_l(a, b, hbar)
    x = psi.grid.x[1:-1]
    sol = riccati_solution("L", a, b, hbar)
    q = len(x) // 4
    central = slice(q, len(x) - q)
    err = np.abs(log_derivative(psi) - sol.u(x))[central]
    assert np.max(err) < 1e-3


def test_to_rows():
    psi = psi_r(n=101)
    rows = list(psi.to_rows())
    assert len(rows) == 101 and rows[50][0] == pytest.approx(0.0, abs=1e-15)
