"""Two-qubit observables: reduced density matrix, purity, and concurrence."""

from dataclasses import dataclass

import numpy as np

from .dynamics import JointState
from .errors import InvariantViolation, NumericalFailure

RDM_HERMITIAN_ATOL = 1e-12
RDM_TRACE_ATOL = 1e-10
RDM_PSD_ATOL = 1e-10
# eigenvalues of rho * rho_tilde below this are a genuine failure, above it rounding
PRODUCT_EIG_CLAMP = 1e-8
# eigenvalues this far below the largest one are numerically indistinguishable
# from zero; flooring them avoids sqrt-amplified solver dust in Lambda
ZERO_EIG_RTOL = 1e-12

# (sigma_y x sigma_y) in the computational basis: signed antidiagonal
_SIGMA_YY = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class Rdm4:
    """4x4 reduced density matrix of the qubit pair, computational-basis order.

    Construction checks hermiticity, unit trace, and positive semidefiniteness
    (up to rounding tolerances).
    """

    matrix: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.shape != (4, 4):
            raise InvariantViolation(f"density matrix shape {rho.shape} is not (4, 4)")
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > RDM_HERMITIAN_ATOL:
            raise InvariantViolation(f"density matrix not hermitian: defect {herm:.3e}")
        tr = np.trace(rho)
        if abs(tr - 1.0) > RDM_TRACE_ATOL:
            raise InvariantViolation(f"density matrix trace {tr!r} is not 1")
        lo = float(np.linalg.eigvalsh(rho)[0])
        if lo < -RDM_PSD_ATOL:
            raise InvariantViolation(f"density matrix not PSD: min eigenvalue {lo:.3e}")
        rho = np.ascontiguousarray(rho)
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)


@dataclass(frozen=True)
class EntanglementReport:
    """Purity, the concurrence precursor Lambda, and the concurrence itself."""

    purity: float
    lambda_cap: float
    concurrence: float


def partial_trace_env(state: JointState) -> Rdm4:
    """Trace out the environment: rho[s, s'] = <block_s' | block_s>."""
    rho = state.blocks @ state.blocks.conj().T
    rho = (rho + rho.conj().T) / 2.0  # symmetrize away rounding in the gram product
    return Rdm4(rho)


def purity(rho: Rdm4) -> float:
    """Tr(rho^2), i.e. the squared Frobenius norm of a hermitian rho."""
    return float(np.sum(np.abs(rho.matrix) ** 2))


def spin_flip(rho: Rdm4) -> np.ndarray:
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y) in the computational basis."""
    return _SIGMA_YY @ rho.matrix.conj() @ _SIGMA_YY


def lambda_and_concurrence(rho: Rdm4) -> tuple[float, float]:
    """Lambda = sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4) and max(Lambda, 0).

    The l_i are the (descending) eigenvalues of rho * rho_tilde. They are
    computed through the hermitian equivalent sqrt(rho) rho_tilde sqrt(rho),
    which shares the spectrum and is PSD by construction, so tiny negative
    eigenvalues can be clamped with a principled tolerance.
    """
    evals, evecs = np.linalg.eigh(rho.matrix)
    sqrt_rho = (evecs * np.sqrt(np.clip(evals, 0.0, None))) @ evecs.conj().T
    product = sqrt_rho @ spin_flip(rho) @ sqrt_rho
    product = (product + product.conj().T) / 2.0
    lam = np.linalg.eigvalsh(product)
    if lam[0] < -PRODUCT_EIG_CLAMP:
        raise NumericalFailure(
            f"eigenvalue {lam[0]:.3e} of rho*rho_tilde below the -{PRODUCT_EIG_CLAMP} clamp"
        )
    floor = ZERO_EIG_RTOL * max(float(lam[-1]), 0.0)
    lam = np.where(lam > floor, lam, 0.0)
    roots = np.sqrt(lam[::-1])
    lambda_cap = float(roots[0] - roots[1] - roots[2] - roots[3])
    return lambda_cap, max(lambda_cap, 0.0)


def entanglement_report(rho: Rdm4) -> EntanglementReport:
    lam, conc = lambda_and_concurrence(rho)
    return EntanglementReport(purity=purity(rho), lambda_cap=lam, concurrence=conc)
