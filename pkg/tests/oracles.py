"""Slow reference implementations that the fast code paths are checked against.

Everything here is written straight from the defining expressions, with no
shared machinery beyond operator construction: the correlation sums walk the
full double sum over Heisenberg operators, the joint step builds the dense
4N x 4N propagator, and the entanglement quantities go through the
non-hermitian eigenproblem.
"""

import numpy as np

from topbath import TopParams, build_env_floquet


def direct_series(params: TopParams, psi0, n_max: int):
    """O(n^2) evaluation of g, f, phi from the Heisenberg operators themselves.

    V(l) = U^-l J_z U^l is materialized as a dense matrix for every l, and the
    pair sum 1/2 sum_l <V(l)^2> + sum_{l>l'} <V(l)V(l')> - g^2/2 is taken
    term by term.
    """
    u = build_env_floquet(params).entries
    jz = np.diag(params.basis.m_values).astype(complex)
    v0 = np.asarray(psi0.amplitudes, dtype=complex)

    heis = []
    ul = np.eye(u.shape[0], dtype=complex)
    for _ in range(n_max):
        ul = u @ ul
        heis.append(ul.conj().T @ jz @ ul)

    g = np.zeros(n_max + 1)
    f = np.zeros(n_max + 1)
    phi = np.zeros(n_max + 1)
    for n in range(1, n_max + 1):
        means = [float(np.vdot(v0, V @ v0).real) for V in heis[:n]]
        g[n] = sum(means)
        total = 0.0 + 0.0j
        for li in range(n):
            vi_psi = heis[li] @ v0
            total += 0.5 * np.vdot(v0, heis[li] @ vi_psi)
            for lj in range(li):
                total += np.vdot(vi_psi, heis[lj] @ v0)
        total -= 0.5 * g[n] ** 2
        f[n] = total.real
        phi[n] = total.imag
    return g, f, phi


def joint_step_matrix(params: TopParams, coupling) -> np.ndarray:
    """Dense 4N x 4N one-kick propagator: coupling phase times I_4 kron U_env."""
    u_env = build_env_floquet(params).entries
    lam = np.asarray(coupling.lambda_s, dtype=float)
    m = params.basis.m_values
    phase = np.exp(-1j * coupling.alpha * np.kron(lam, m))
    return phase[:, None] * np.kron(np.eye(4), u_env)


def reduced_density_matrix(joint_vector: np.ndarray, env_dim: int) -> np.ndarray:
    """Partial trace over the environment from the flat 4N joint vector."""
    full = np.outer(joint_vector, joint_vector.conj())
    return full.reshape(4, env_dim, 4, env_dim).trace(axis1=1, axis2=3)


_YY = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=complex,
)


def lambda_direct(rho: np.ndarray) -> float:
    """Entanglement precursor via the non-hermitian product rho * rho_tilde."""
    rho_tilde = _YY @ rho.conj() @ _YY
    evals = np.linalg.eigvals(rho @ rho_tilde)
    roots = np.sqrt(np.clip(np.sort(evals.real)[::-1], 0.0, None))
    return float(roots[0] - roots[1] - roots[2] - roots[3])


def concurrence_pure(c: np.ndarray) -> float:
    """Closed form 2 |c00 c11 - c01 c10| for a pure two-qubit state."""
    return 2.0 * abs(c[0] * c[3] - c[1] * c[2])


def random_pure_system(rng) -> np.ndarray:
    c = rng.normal(size=4) + 1j * rng.normal(size=4)
    return c / np.linalg.norm(c)


def random_density_matrix(rng, rank: int = 4) -> np.ndarray:
    a = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_local_unitary(rng) -> np.ndarray:
    """Haar-ish U1 kron U2 from the QR of complex Gaussian 2x2 blocks."""
    blocks = []
    for _ in range(2):
        q, r = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        blocks.append(q * (np.diag(r) / np.abs(np.diag(r))))
    return np.kron(blocks[0], blocks[1])
