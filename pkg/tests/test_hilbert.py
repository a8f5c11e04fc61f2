import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import vacuum
from uncertainty_lab.errors import DimensionError, NotHermitianError, NullVectorError
from uncertainty_lab.hilbert import (
    commutator_mean,
    expectation,
    hermitian_eigensystem,
    inner,
    normalize,
    project_out,
    variance,
)
from uncertainty_lab.random_states import make_rng, random_hermitian, random_state

S2 = np.sqrt(2)
PSI_110 = np.array([1, 1, 0]) / S2


def test_expectation_examples(spin1):
    assert expectation([1, 0, 0], np.diag([1, 0, -1])) == 1.0
    # hand evaluation: <Jz> = (1 + 0)/2, <Jx> = 2 * (1/2)(1/sqrt2)
    assert expectation(PSI_110, spin1.Jz) == pytest.approx(0.5, abs=1e-15)
    assert expectation(PSI_110, spin1.Jx) == pytest.approx(1 / S2, abs=1e-15)


def test_expectation_rejects_bad_input(spin1):
    with pytest.raises(DimensionError):
        expectation([1, 0], spin1.Jz)
    with pytest.raises(NotHermitianError):
        expectation(PSI_110, spin1.Jz + np.triu(np.ones((3, 3)), 1))


def test_variance_examples(spin1, fock20):
    _, x1, _ = fock20
    assert variance([1, 0, 0], np.diag([1, 0, -1])) == 0.0
    assert variance(PSI_110, spin1.Jz) == pytest.approx(0.25, abs=1e-15)
    assert variance(vacuum(20), x1) == pytest.approx(0.25, abs=1e-15)


def test_commutator_mean_examples(spin1, fock20):
    _, x1, x2 = fock20
    assert commutator_mean(PSI_110, spin1.Jy, spin1.Jy) == 0.0
    # [Jz, Jy] = -i Jx, so i<[Jz, Jy]> = <Jx> = +1/sqrt2
    assert commutator_mean(PSI_110, spin1.Jz, spin1.Jy) == pytest.approx(1 / S2, abs=1e-15)
    # [X1, X2] = i/2, so i<[X1, X2]> = -1/2
    assert commutator_mean(vacuum(20), x1, x2) == pytest.approx(-0.5, abs=1e-15)


def test_commutator_mean_matches_dense_commutator(spin1):
    rng = make_rng(3)
    for _ in range(50):
        psi = random_state(3, rng)
        comm = spin1.Jz @ spin1.Jy - spin1.Jy @ spin1.Jz
        raw = 1j * np.vdot(psi, comm @ psi)
        assert abs(raw.imag) < 1e-12
        assert commutator_mean(psi, spin1.Jz, spin1.Jy) == pytest.approx(raw.real, abs=1e-14)


def test_inner_examples():
    e1, e2 = np.eye(2)
    assert inner(e1, e1) == 1
    assert inner(e1, e2) == 0
    assert abs(inner(np.array([1, 1j]) / S2, np.array([1, -1j]) / S2)) < 1e-16
    assert inner([1j, 0], [1, 0]) == -1j
    with pytest.raises(DimensionError):
        inner([1, 0], [1, 0, 0])


def test_normalize_examples():
    np.testing.assert_array_equal(normalize([2, 0, 0]), [1, 0, 0])
    np.testing.assert_allclose(normalize([1, 1, 0]), PSI_110, atol=1e-16)
    with pytest.raises(NullVectorError, match="null vector"):
        normalize([0, 0, 0])


def test_project_out_examples():
    e1, e2 = np.eye(2)
    np.testing.assert_array_equal(project_out(e1, e1), [0, 0])
    np.testing.assert_array_equal(project_out(e1, e2), e2)
    np.testing.assert_allclose(project_out(np.array([1, 1]) / S2, [1, 0]), [0.5, -0.5], atol=1e-16)


def test_eigensystem_examples(spin1, fock20):
    w, _ = hermitian_eigensystem(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_array_equal(w, [1, 2, 3])
    w, _ = hermitian_eigensystem(spin1.Jy)
    np.testing.assert_allclose(w, [-1, 0, 1], atol=1e-14)
    from uncertainty_lab.operators import ladder_operators, quadratures

    x1, _ = quadratures(ladder_operators(2))
    np.testing.assert_allclose(hermitian_eigensystem(x1)[0], [-0.5, 0.5], atol=1e-15)
    with pytest.raises(NotHermitianError):
        hermitian_eigensystem(np.array([[0, 1], [0, 0]]))


states = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=200, deadline=None)
@given(seed=states, dim=st.integers(2, 8))
def test_variance_two_formulas(seed, dim):
    rng = make_rng(seed)
    psi = random_state(dim, rng)
    m = random_hermitian(dim, rng)
    centered = m @ psi - np.vdot(psi, m @ psi) * psi
    v = variance(psi, m)
    assert v >= 0
    assert v == pytest.approx(np.vdot(centered, centered).real, abs=1e-10)


@settings(max_examples=200, deadline=None)
@given(seed=states, dim=st.integers(2, 8))
def test_commutator_antisymmetric(seed, dim):
    rng = make_rng(seed)
    psi = random_state(dim, rng)
    a, b = random_hermitian(dim, rng), random_hermitian(dim, rng)
    assert abs(commutator_mean(psi, a, b) + commutator_mean(psi, b, a)) < 1e-12


@settings(max_examples=200, deadline=None)
@given(seed=states, dim=st.integers(2, 8))
def test_cauchy_schwarz(seed, dim):
    rng = make_rng(seed)
    f = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    g = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    assert (inner(f, f) * inner(g, g)).real - abs(inner(f, g)) ** 2 >= -1e-10


def test_project_out_orthogonal_many_pairs():
    rng = make_rng(11)
    worst = 0.0
    for _ in range(10_000):
        dim = int(rng.integers(2, 9))
        psi = random_state(dim, rng)
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        worst = max(worst, abs(np.vdot(psi, project_out(psi, v))))
    assert worst < 1e-12


@settings(max_examples=100, deadline=None)
@given(seed=states, dim=st.integers(2, 12))
def test_eigen_reconstruction(seed, dim):
    m = random_hermitian(dim, make_rng(seed))
    w, v = hermitian_eigensystem(m)
    assert np.all(np.diff(w) >= 0)
    assert np.max(np.abs(m - (v * w) @ v.conj().T)) < 1e-10 * np.max(np.abs(m))
    assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) < 1e-10
