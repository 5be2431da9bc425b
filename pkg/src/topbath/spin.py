"""Angular-momentum algebra for a single spin j.

Everything lives in the (2j+1)-dimensional irrep with basis states |j, m>
ordered m = j, j-1, ..., -j, so J_z is diagonal with descending entries.
Operators are dense complex matrices carrying a structural tag that is
validated at construction time.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InvariantViolation

HERMITIAN_RTOL = 1e-12
UNITARY_ATOL = 1e-10
STATE_NORM_ATOL = 1e-10

VALID_TAGS = ("hermitian", "unitary", "diagonal", "general")


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SpinBasis:
    """Ladder basis for spin j; dimension 2j+1, m running from j down to -j."""

    j: float

    def __post_init__(self):
        two_j = 2.0 * self.j
        if two_j < 0 or abs(two_j - round(two_j)) > 1e-9:
            raise InvariantViolation(f"spin size must be a non-negative half-integer, got j={self.j}")
        object.__setattr__(self, "j", round(two_j) / 2.0)

    @property
    def dim(self) -> int:
        return round(2.0 * self.j) + 1

    @cached_property
    def m_values(self) -> np.ndarray:
        return _readonly(self.j - np.arange(self.dim, dtype=float))


@dataclass(frozen=True)
class DenseOperator:
    """Dense complex matrix on a SpinBasis with a validated structural tag."""

    basis: SpinBasis
    entries: np.ndarray
    tag: str = "general"

    def __post_init__(self):
        if self.tag not in VALID_TAGS:
            raise InvariantViolation(f"unknown operator tag {self.tag!r}")
        entries = np.asarray(self.entries, dtype=complex)
        n = self.basis.dim
        if entries.shape != (n, n):
            raise InvariantViolation(
                f"operator shape {entries.shape} does not match basis dimension {n}"
            )
        if self.tag == "hermitian":
            scale = max(np.max(np.abs(entries)), 1.0)
            defect = np.max(np.abs(entries - entries.conj().T))
            if defect > HERMITIAN_RTOL * scale:
                raise InvariantViolation(f"hermitian tag violated: |A - A^dag| = {defect:.3e}")
        elif self.tag == "unitary":
            defect = np.max(np.abs(entries.conj().T @ entries - np.eye(n)))
            if defect > UNITARY_ATOL:
                raise InvariantViolation(f"unitary tag violated: |U^dag U - I| = {defect:.3e}")
        elif self.tag == "diagonal":
            off = entries - np.diag(np.diag(entries))
            if np.any(off != 0):
                raise InvariantViolation("diagonal tag violated: off-diagonal entries present")
        object.__setattr__(self, "entries", _readonly(entries))

    @property
    def dim(self) -> int:
        return self.basis.dim


@dataclass(frozen=True)
class EnvState:
    """Pure environment state: a unit-norm complex vector on a SpinBasis."""

    basis: SpinBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.basis.dim,):
            raise InvariantViolation(
                f"state shape {amps.shape} does not match basis dimension {self.basis.dim}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > STATE_NORM_ATOL:
            raise InvariantViolation(f"state norm {norm!r} is not 1 within {STATE_NORM_ATOL}")
        object.__setattr__(self, "amplitudes", _readonly(amps))

    def expect_jz(self) -> float:
        """<J_z> in this state."""
        return float(np.sum(self.basis.m_values * np.abs(self.amplitudes) ** 2))


def build_jz(basis: SpinBasis) -> DenseOperator:
    """J_z: diagonal with entries m = j, j-1, ..., -j."""
    return DenseOperator(basis, np.diag(basis.m_values).astype(complex), tag="diagonal")


def build_jpm(basis: SpinBasis, sign: str) -> DenseOperator:
    """Ladder operator J_+ ('+') or J_- ('-').

    Matrix elements <j, m+-1 | J_+- | j, m> = sqrt(j(j+1) - m(m+-1)); with the
    descending m ordering J_+ sits on the superdiagonal and J_- on the
    subdiagonal.
    """
    if sign not in ("+", "-"):
        raise InvariantViolation(f"ladder sign must be '+' or '-', got {sign!r}")
    j = basis.j
    m = basis.m_values
    out = np.zeros((basis.dim, basis.dim), dtype=complex)
    if basis.dim > 1:
        # elements connecting column m to row m+1 (rows are one index up)
        raising = np.sqrt(j * (j + 1.0) - m[1:] * (m[1:] + 1.0))
        rows = np.arange(basis.dim - 1)
        if sign == "+":
            out[rows, rows + 1] = raising
        else:
            out[rows + 1, rows] = raising
    return DenseOperator(basis, out, tag="general")


def build_jx(basis: SpinBasis) -> DenseOperator:
    """J_x = (J_+ + J_-)/2."""
    jp = build_jpm(basis, "+").entries
    jm = build_jpm(basis, "-").entries
    return DenseOperator(basis, (jp + jm) / 2.0, tag="hermitian")


def build_jy(basis: SpinBasis) -> DenseOperator:
    """J_y = (J_+ - J_-)/(2i)."""
    jp = build_jpm(basis, "+").entries
    jm = build_jpm(basis, "-").entries
    return DenseOperator(basis, (jp - jm) / 2.0j, tag="hermitian")


def hermitian_eig(op: DenseOperator) -> tuple[np.ndarray, DenseOperator]:
    """Eigenvalues (ascending) and eigenvectors of a hermitian operator.

    Accepts hermitian-tagged operators, and diagonal-tagged ones with real
    entries (which are hermitian by inspection). The eigenvector matrix is
    returned as a unitary DenseOperator with op = V diag(e) V^dag.
    """
    if op.tag == "diagonal" and np.max(np.abs(op.entries.imag)) == 0:
        diag = np.real(np.diag(op.entries))
        order = np.argsort(diag, kind="stable")
        vecs = np.eye(op.dim, dtype=complex)[:, order]
        return diag[order].copy(), DenseOperator(op.basis, vecs, tag="unitary")
    if op.tag != "hermitian":
        raise InvariantViolation(f"eigendecomposition requires a hermitian operator, got tag {op.tag!r}")
    evals, evecs = np.linalg.eigh(op.entries)
    return evals, DenseOperator(op.basis, evecs, tag="unitary")


def unitary_exp(op: DenseOperator, scale: float) -> DenseOperator:
    """exp(-i * scale * op) for a hermitian or real-diagonal operator."""
    if op.tag == "diagonal":
        diag = np.diag(op.entries)
        if np.max(np.abs(diag.imag)) != 0:
            raise InvariantViolation("diagonal operator must be real to exponentiate unitarily")
        return DenseOperator(op.basis, np.diag(np.exp(-1j * scale * diag.real)), tag="unitary")
    if op.tag != "hermitian":
        raise InvariantViolation(f"unitary_exp requires a hermitian or diagonal operator, got tag {op.tag!r}")
    if scale == 0.0:
        # exact identity, so a switched-off kick really is the identity
        return DenseOperator(op.basis, np.eye(op.dim, dtype=complex), tag="unitary")
    evals, evecs = np.linalg.eigh(op.entries)
    v = evecs
    u = (v * np.exp(-1j * scale * evals)) @ v.conj().T
    return DenseOperator(op.basis, u, tag="unitary")


def coherent_state(basis: SpinBasis, theta: float, phi: float) -> EnvState:
    """SU(2) coherent state: rotate |j, j> to point (theta, phi) on the sphere.

    Applies R(theta, phi) = exp(i theta (J_x sin(phi) - J_y cos(phi))) to the
    highest-weight state, so <J_z>/j = cos(theta) exactly.
    """
    if not 0.0 <= theta <= np.pi:
        raise InvariantViolation(f"theta must lie in [0, pi], got {theta}")
    generator = np.sin(phi) * build_jx(basis).entries - np.cos(phi) * build_jy(basis).entries
    rot = unitary_exp(DenseOperator(basis, generator, tag="hermitian"), -theta)
    amps = rot.entries[:, 0].copy()
    amps /= np.linalg.norm(amps)
    return EnvState(basis, amps)
