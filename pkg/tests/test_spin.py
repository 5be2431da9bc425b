"""Angular-momentum algebra: operator identities, states, exponentials."""

import numpy as np
import pytest

from topbath import (
    DenseOperator,
    EnvState,
    InvariantViolation,
    SpinBasis,
    build_jpm,
    build_jx,
    build_jy,
    build_jz,
    coherent_state,
    hermitian_eig,
    unitary_exp,
)

COMMUTATOR_ATOL = 1e-12
CASIMIR_ATOL = 1e-10
UNITARY_ATOL = 1e-10

SPINS = (0.5, 1.0, 1.5, 2.0, 5.0, 20.0)


@pytest.mark.parametrize("j", SPINS)
def test_commutation_relations(j):
    basis = SpinBasis(j)
    jx = build_jx(basis).entries
    jy = build_jy(basis).entries
    jz = build_jz(basis).entries
    for a, b, c in ((jx, jy, jz), (jy, jz, jx), (jz, jx, jy)):
        defect = np.max(np.abs(a @ b - b @ a - 1j * c))
        assert defect <= COMMUTATOR_ATOL


@pytest.mark.parametrize("j", SPINS + (100.0,))
def test_casimir(j):
    basis = SpinBasis(j)
    total = sum(op(basis).entries @ op(basis).entries for op in (build_jx, build_jy, build_jz))
    defect = np.max(np.abs(total - j * (j + 1.0) * np.eye(basis.dim)))
    assert defect <= CASIMIR_ATOL


def test_basis_ordering_and_dim():
    basis = SpinBasis(1.5)
    assert basis.dim == 4
    assert np.array_equal(basis.m_values, [1.5, 0.5, -0.5, -1.5])


@pytest.mark.parametrize("j", (-1.0, 0.7, 1.2))
def test_invalid_spin_rejected(j):
    with pytest.raises(InvariantViolation):
        SpinBasis(j)


def test_ladder_matrix_elements():
    # <3/2, m+1| J_+ |3/2, m> = sqrt(j(j+1) - m(m+1)), worked by hand
    jp = build_jpm(SpinBasis(1.5), "+").entries
    expected = [np.sqrt(3.0), 2.0, np.sqrt(3.0)]
    rows = np.arange(3)
    assert np.allclose(jp[rows, rows + 1], expected, atol=1e-14)
    assert np.count_nonzero(jp) == 3


def test_ladder_sign_validation():
    with pytest.raises(InvariantViolation):
        build_jpm(SpinBasis(1.0), "x")


def test_jz_diagonal():
    jz = build_jz(SpinBasis(2.0))
    assert jz.tag == "diagonal"
    assert np.array_equal(np.diag(jz.entries).real, [2, 1, 0, -1, -2])


def test_operator_tag_enforced():
    basis = SpinBasis(1.0)
    not_unitary = np.diag([2.0, 1.0, 1.0]).astype(complex)
    with pytest.raises(InvariantViolation):
        DenseOperator(basis, not_unitary, tag="unitary")
    not_hermitian = np.triu(np.ones((3, 3), dtype=complex))
    with pytest.raises(InvariantViolation):
        DenseOperator(basis, not_hermitian, tag="hermitian")
    with pytest.raises(InvariantViolation):
        DenseOperator(basis, np.eye(3), tag="bogus")


def test_state_normalization_enforced():
    basis = SpinBasis(1.0)
    with pytest.raises(InvariantViolation):
        EnvState(basis, np.array([1.0, 1.0, 0.0], dtype=complex))
    with pytest.raises(InvariantViolation):
        EnvState(basis, np.zeros(4, dtype=complex))


@pytest.mark.parametrize("j", (1.0, 4.5, 20.0))
def test_unitary_exp_is_unitary(j):
    basis = SpinBasis(j)
    u = unitary_exp(build_jy(basis), 0.73)
    defect = np.max(np.abs(u.entries.conj().T @ u.entries - np.eye(basis.dim)))
    assert defect <= UNITARY_ATOL


def test_unitary_exp_diagonal_fast_path():
    basis = SpinBasis(1.0)
    u = unitary_exp(build_jz(basis), 0.31)
    expected = np.diag(np.exp(-1j * 0.31 * basis.m_values))
    assert np.allclose(u.entries, expected, atol=1e-15)


def test_unitary_exp_zero_scale_is_exact_identity():
    basis = SpinBasis(2.0)
    u = unitary_exp(build_jy(basis), 0.0)
    assert np.array_equal(u.entries, np.eye(basis.dim))


def test_full_turn_parity():
    # a 2 pi rotation is the identity for integer j and -1 for half-integer j
    for j, sign in ((2.0, 1.0), (1.5, -1.0)):
        u = unitary_exp(build_jy(SpinBasis(j)), 2.0 * np.pi)
        assert np.allclose(u.entries, sign * np.eye(u.dim), atol=1e-12)


def test_hermitian_eig_reconstructs():
    basis = SpinBasis(2.5)
    op = build_jx(basis)
    evals, evecs = hermitian_eig(op)
    v = evecs.entries
    assert np.allclose(v @ np.diag(evals) @ v.conj().T, op.entries, atol=1e-12)
    # J_x spectrum is the same m ladder as J_z
    assert np.allclose(np.sort(evals), basis.m_values[::-1], atol=1e-12)


def test_hermitian_eig_rejects_general_tag():
    basis = SpinBasis(1.0)
    with pytest.raises(InvariantViolation):
        hermitian_eig(DenseOperator(basis, np.ones((3, 3), dtype=complex), tag="general"))


@pytest.mark.parametrize("theta,phi", [(0.85, 2.8), (2.1, 0.4), (np.pi / 2, 0.0)])
def test_coherent_state_direction(theta, phi):
    j = 7.0
    state = coherent_state(SpinBasis(j), theta, phi)
    assert abs(np.linalg.norm(state.amplitudes) - 1.0) <= 1e-12
    assert abs(state.expect_jz() - j * np.cos(theta)) <= 1e-9 * j


def test_coherent_state_poles():
    basis = SpinBasis(3.0)
    north = coherent_state(basis, 0.0, 1.1)
    assert abs(abs(north.amplitudes[0]) - 1.0) <= 1e-12
    south = coherent_state(basis, np.pi, 0.3)
    assert abs(abs(south.amplitudes[-1]) - 1.0) <= 1e-10


def test_coherent_state_theta_range():
    with pytest.raises(InvariantViolation):
        coherent_state(SpinBasis(1.0), -0.1, 0.0)
