"""Joint evolution of a two-qubit pair coupled to a kicked-top environment.

One kick period applies U = U_I (I_S x U_E) to the joint state: the
environment Floquet step U_E = exp(-i(beta J_z + (k/2j) J_z^2)) exp(-i (pi/2) J_y)
followed by the coupling phase U_I = exp(-i alpha h_s x J_z). Because the
qubits have no dynamics of their own and h_s is diagonal in the computational
basis, the joint state splits into four environment blocks that never mix;
one step is four dense mat-vecs plus a diagonal phase pass.
"""

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import InvariantViolation
from .spin import DenseOperator, EnvState, SpinBasis, build_jy, unitary_exp

STEP_NORM_ATOL = 1e-12
# a JointState may have accumulated per-step drift over a long run; keep the
# construction-time check looser than the per-step bound
JOINT_NORM_ATOL = 1e-8

#: h_s eigenvalues of the shipped two-qubit coupling agent, computational-basis order
TWO_QUBIT_LAMBDAS = (-1.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class TopParams:
    """Kicked-top environment parameters: spin size j, chaoticity k, J_z tilt beta."""

    j: float
    k: float
    beta: float
    kick_strength: float = np.pi / 2

    def __post_init__(self):
        if self.j < 0.5:
            raise InvariantViolation(f"environment spin must satisfy j >= 1/2, got {self.j}")

    @property
    def basis(self) -> SpinBasis:
        return SpinBasis(self.j)


@dataclass(frozen=True)
class CouplingSpec:
    """Coupling strength alpha and the h_s eigenvalue vector, computational-basis order."""

    alpha: float
    lambda_s: tuple[float, ...] = TWO_QUBIT_LAMBDAS

    def __post_init__(self):
        if len(self.lambda_s) != 4:
            raise InvariantViolation("lambda_s must list the four h_s eigenvalues")
        object.__setattr__(self, "lambda_s", tuple(float(v) for v in self.lambda_s))


@dataclass(frozen=True)
class JointState:
    """Joint state as four environment blocks indexed by |00>, |01>, |10>, |11>."""

    basis: SpinBasis
    blocks: np.ndarray  # (4, N) complex

    def __post_init__(self):
        blocks = np.asarray(self.blocks, dtype=complex)
        if blocks.shape != (4, self.basis.dim):
            raise InvariantViolation(
                f"blocks shape {blocks.shape} does not match (4, {self.basis.dim})"
            )
        norm = np.linalg.norm(blocks)
        if abs(norm - 1.0) > JOINT_NORM_ATOL:
            raise InvariantViolation(f"joint state norm {norm!r} is not 1 within {JOINT_NORM_ATOL}")
        blocks = np.ascontiguousarray(blocks)
        blocks.setflags(write=False)
        object.__setattr__(self, "blocks", blocks)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.blocks))

    @classmethod
    def from_product(cls, system_amplitudes, env: EnvState) -> "JointState":
        """|psi_S> x |psi_E> with the four system amplitudes in computational-basis order."""
        c = np.asarray(system_amplitudes, dtype=complex)
        if c.shape != (4,):
            raise InvariantViolation("system amplitudes must be a 4-vector")
        if abs(np.linalg.norm(c) - 1.0) > 1e-10:
            raise InvariantViolation("system amplitudes must be normalized")
        return cls(env.basis, np.outer(c, env.amplitudes))


def build_env_floquet(params: TopParams) -> DenseOperator:
    """One-period environment propagator: kick about J_y, then the J_z free phase."""
    basis = params.basis
    m = basis.m_values
    free = np.exp(-1j * (params.beta * m + params.k / (2.0 * params.j) * m**2))
    kick = unitary_exp(build_jy(basis), params.kick_strength)
    return DenseOperator(basis, free[:, None] * kick.entries, tag="unitary")


def build_interaction_phases(coupling: CouplingSpec, basis: SpinBasis) -> np.ndarray:
    """Per-block diagonal coupling phases: entry (s, m) = exp(-i alpha lambda_s m)."""
    lam = np.asarray(coupling.lambda_s, dtype=float)
    return np.exp(-1j * coupling.alpha * lam[:, None] * basis.m_values[None, :])


def step(state: JointState, u_env: DenseOperator, phases: np.ndarray) -> JointState:
    """Advance the joint state by one kick period."""
    if u_env.basis.dim != state.basis.dim:
        raise InvariantViolation("environment operator dimension does not match the state")
    if phases.shape != state.blocks.shape:
        raise InvariantViolation("phase table shape does not match the state blocks")
    new_blocks = phases * (state.blocks @ u_env.entries.T)
    drift = abs(np.linalg.norm(new_blocks) - np.linalg.norm(state.blocks))
    if drift > STEP_NORM_ATOL:
        raise InvariantViolation(f"norm drift {drift:.3e} in one step exceeds {STEP_NORM_ATOL}")
    return JointState(state.basis, new_blocks)


def evolve(
    state0: JointState,
    params: TopParams,
    coupling: CouplingSpec,
    n_steps: int,
) -> Iterator[JointState]:
    """Yield the joint state after each of n_steps kick periods."""
    if n_steps < 0:
        raise InvariantViolation(f"step count must be non-negative, got {n_steps}")
    u_env = build_env_floquet(params)
    phases = build_interaction_phases(coupling, state0.basis)
    state = state0
    for _ in range(n_steps):
        state = step(state, u_env, phases)
        yield state
