"""Environment correlation sums and the perturbative reduced-density-matrix formula.

The Heisenberg coupling agent V(l) = U_E^{-l} J_z U_E^l, averaged in the
initial environment state, yields three accumulated series per step count n:

    g(n)   = sum_l <V(l)>                                   (mean phase)
    Phi(n) = 1/2 sum_l <V(l)^2> + sum_{l>l'} <V(l)V(l')> - g(n)^2 / 2
    f(n)   = Re Phi(n),  phi(n) = Im Phi(n)

f is the decoherence function: coherences between coupling eigenstates s, s'
decay as exp(-alpha^2 (lambda_s - lambda_s')^2 f(n)). The double sum is
evaluated in O(n) mat-vecs with the accumulator recursion documented at
``env_series``; an O(n^2) evaluation straight from the definition lives in the
test suite as an independent oracle.
"""

from dataclasses import dataclass

import numpy as np

from .dynamics import CouplingSpec, TopParams, build_env_floquet
from .errors import InvariantViolation, NumericalFailure
from .observables import Rdm4
from .spin import EnvState

ORACLE_RTOL = 1e-9


@dataclass(frozen=True)
class DecoherenceSeries:
    """Correlation sums g, f, phi indexed by step number 0..n_max.

    c_diag[l] is the equal-time covariance C(l, l) = Var(J_z(l)); index 0
    holds the variance in the initial state. With ``centered`` set, the
    per-step means are subtracted from V(l) before the sums are formed, which
    zeroes g and leaves f and phi unchanged.
    """

    n_max: int
    g: np.ndarray
    f: np.ndarray
    phi: np.ndarray
    c_diag: np.ndarray
    params: TopParams
    psi0_label: str
    centered: bool

    def __post_init__(self):
        for name in ("g", "f", "phi", "c_diag"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (self.n_max + 1,):
                raise InvariantViolation(f"series {name} must have length n_max + 1")
            arr = np.ascontiguousarray(arr)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class PhenoParams:
    """Covariance plateau c0 and per-kick correlation decay exponent gamma."""

    c0: float
    gamma: float

    def __post_init__(self):
        if not (self.c0 > 0 and self.gamma > 0):
            raise InvariantViolation("pheno parameters require c0 > 0 and gamma > 0")


@dataclass(frozen=True)
class FitResult:
    """Coefficients of the a*n + b*n^2 interpolation and its rms residual."""

    a: float
    b: float
    rms_residual: float


def env_series(
    params: TopParams,
    psi0: EnvState,
    n_max: int,
    centered: bool = False,
    psi0_label: str = "",
) -> DecoherenceSeries:
    """Accumulate g(n), f(n), phi(n) for n = 0..n_max in O(n_max) mat-vecs.

    Maintains psi_l = U_E^l psi_0 together with the accumulator
    A_l = sum_{l'<l} U_E^{l-l'} J_z psi_{l'}, which obeys
    A_{l+1} = U_E (A_l + J_z psi_l) with A_1 = 0; the lower-triangle double
    sum at step l is then <psi_l| J_z |A_l>.
    """
    if n_max < 1:
        raise InvariantViolation(f"n_max must be at least 1, got {n_max}")
    basis = params.basis
    if psi0.basis.dim != basis.dim:
        raise InvariantViolation("initial state dimension does not match the parameters")
    u = build_env_floquet(params).entries
    m = basis.m_values

    g = np.zeros(n_max + 1)
    f = np.zeros(n_max + 1)
    phi = np.zeros(n_max + 1)
    c_diag = np.zeros(n_max + 1)

    prob0 = np.abs(psi0.amplitudes) ** 2
    c_diag[0] = float(np.sum(m**2 * prob0) - np.sum(m * prob0) ** 2)

    psi = u @ psi0.amplitudes
    acc = np.zeros(basis.dim, dtype=complex)
    g_run = 0.0
    sq_run = 0.0
    cross_run = 0.0 + 0.0j
    var_run = 0.0
    cross_centered_run = 0.0 + 0.0j

    for l in range(1, n_max + 1):
        prob = np.abs(psi) ** 2
        mean_l = float(np.sum(m * prob))
        sq_l = float(np.sum(m**2 * prob))
        cross_l = complex(np.vdot(psi, m * acc))

        var_run += sq_l - mean_l**2
        cross_centered_run += cross_l - mean_l * g_run
        g_run += mean_l
        sq_run += sq_l
        cross_run += cross_l

        if centered:
            total = 0.5 * var_run + cross_centered_run
            g[l] = 0.0
        else:
            total = 0.5 * sq_run + cross_run - 0.5 * g_run**2
            g[l] = g_run
        f[l] = total.real
        phi[l] = total.imag
        c_diag[l] = sq_l - mean_l**2

        if l < n_max:
            acc = u @ (acc + m * psi)
            psi = u @ psi

    label = psi0_label or f"environment state on spin j={params.j}"
    return DecoherenceSeries(
        n_max=n_max, g=g, f=f, phi=phi, c_diag=c_diag,
        params=params, psi0_label=label, centered=centered,
    )


def correlation_fn(params: TopParams, psi0: EnvState, l: int, l_prime: int) -> complex:
    """Covariance C(l, l') = <V(l)V(l')> - <V(l)><V(l')> of the uncoupled environment."""
    if l < 1 or l_prime < 1:
        raise InvariantViolation("correlation steps must satisfy l, l' >= 1")
    if l < l_prime:
        return complex(correlation_fn(params, psi0, l_prime, l)).conjugate()
    u = build_env_floquet(params).entries
    m = params.basis.m_values
    psi = psi0.amplitudes
    for _ in range(l_prime):
        psi = u @ psi
    chi = m * psi  # J_z psi_{l'}
    mean_lp = float(np.sum(m * np.abs(psi) ** 2))
    for _ in range(l - l_prime):
        psi = u @ psi
        chi = u @ chi
    mean_l = float(np.sum(m * np.abs(psi) ** 2))
    second = complex(np.vdot(psi, m * chi))
    return second - mean_l * mean_lp


def correlation_profile(
    params: TopParams,
    psi0: EnvState,
    l_min: int,
    l_max: int,
    max_lag: int,
) -> np.ndarray:
    """Mean of |C(l, l + lag)| over l in [l_min, l_max], for lag = 0..max_lag."""
    if not (1 <= l_min <= l_max):
        raise InvariantViolation("require 1 <= l_min <= l_max")
    u = build_env_floquet(params).entries
    m = params.basis.m_values
    psi = psi0.amplitudes
    for _ in range(l_min):
        psi = u @ psi

    sums = np.zeros(max_lag + 1)
    count = l_max - l_min + 1
    for _ in range(count):
        chi = m * psi
        mean_l = float(np.sum(m * np.abs(psi) ** 2))
        psi_fwd = psi
        for lag in range(max_lag + 1):
            mean_fwd = float(np.sum(m * np.abs(psi_fwd) ** 2))
            second = complex(np.vdot(psi_fwd, m * chi))
            sums[lag] += abs(second - mean_fwd * mean_l)
            if lag < max_lag:
                psi_fwd = u @ psi_fwd
                chi = u @ chi
        psi = u @ psi
    return sums / count


def estimate_c0(series: DecoherenceSeries, l_min: int = 10) -> float:
    """Plateau of the equal-time covariance, averaged over l >= l_min."""
    if l_min >= series.n_max:
        raise InvariantViolation("plateau window is empty; lower l_min or lengthen the series")
    return float(np.mean(series.c_diag[l_min:]))


def estimate_gamma(
    params: TopParams,
    psi0: EnvState,
    l_min: int = 10,
    l_max: int = 60,
    max_lag: int = 4,
) -> float:
    """Correlation decay exponent from a log-linear fit of the lag profile."""
    profile = correlation_profile(params, psi0, l_min, l_max, max_lag)
    if not np.all(profile > 0.0):
        raise NumericalFailure("correlation profile vanishes; cannot estimate gamma")
    lags = np.arange(max_lag + 1, dtype=float)
    slope = np.polyfit(lags, np.log(profile), 1)[0]
    if not slope < 0:
        raise NumericalFailure("correlation profile does not decay; cannot estimate gamma")
    return float(-slope)


def perturbative_rdm(
    rho0: Rdm4,
    coupling: CouplingSpec,
    series: DecoherenceSeries,
    n: int,
) -> Rdm4:
    """Exponentiated perturbative RDM at step n.

    Multiplies each coherence of rho0 by
    exp(-i a dl g(n) - a^2 dl^2 f(n) - i a^2 dl2 phi(n)) with
    dl = lambda_s - lambda_s' and dl2 = lambda_s^2 - lambda_s'^2. Entries with
    equal coupling eigenvalues (the diagonal and the degenerate |01>, |10>
    subspace) pick up the factor exp(0) = 1 and are bitwise unchanged.
    """
    if n < 0 or n > series.n_max:
        raise InvariantViolation(f"step {n} outside the computed series 0..{series.n_max}")
    lam = np.asarray(coupling.lambda_s, dtype=float)
    dl = lam[:, None] - lam[None, :]
    dl2 = lam[:, None] ** 2 - lam[None, :] ** 2
    a = coupling.alpha
    factor = np.exp(
        -1j * a * dl * series.g[n]
        - (a**2) * dl**2 * series.f[n]
        - 1j * (a**2) * dl2 * series.phi[n]
    )
    return Rdm4(rho0.matrix * factor)


def pheno_f(p: PhenoParams, n) -> np.ndarray | float:
    """Phenomenological decoherence function for an exponentially decaying covariance.

    Evaluates (c0/2) [n coth(gamma/2) - (1 - exp(-gamma n)) / (sinh(gamma) - 1)]
    as written; the denominator is singular at sinh(gamma) = 1, i.e.
    gamma = log(1 + sqrt(2)) ~ 0.8814, which is rejected.
    """
    den = np.sinh(p.gamma) - 1.0
    if abs(den) < 1e-9:
        raise NumericalFailure(
            f"pheno formula singular: sinh(gamma) - 1 = {den:.3e} at gamma = {p.gamma}"
        )
    n_arr = np.asarray(n, dtype=float)
    out = 0.5 * p.c0 * (n_arr / np.tanh(p.gamma / 2.0) - (1.0 - np.exp(-p.gamma * n_arr)) / den)
    return float(out) if np.isscalar(n) else out


def pheno_rate(p: PhenoParams, n) -> np.ndarray | float:
    """Per-kick growth rate of the phenomenological f: (c0/2)[coth(gamma/2) - gamma e^(-gamma n)/(sinh gamma - 1)]."""
    den = np.sinh(p.gamma) - 1.0
    if abs(den) < 1e-9:
        raise NumericalFailure(f"pheno formula singular at gamma = {p.gamma}")
    n_arr = np.asarray(n, dtype=float)
    out = 0.5 * p.c0 * (1.0 / np.tanh(p.gamma / 2.0) - p.gamma * np.exp(-p.gamma * n_arr) / den)
    return float(out) if np.isscalar(n) else out


def pheno_late_rate(p: PhenoParams) -> float:
    """Asymptotic linear slope (c0/2) coth(gamma/2)."""
    return 0.5 * p.c0 / np.tanh(p.gamma / 2.0)


def pheno_early_curvature(p: PhenoParams) -> float:
    """Leading short-time curvature coefficient (c0/2) gamma^2 / (sinh gamma - 1)."""
    den = np.sinh(p.gamma) - 1.0
    if abs(den) < 1e-9:
        raise NumericalFailure(f"pheno formula singular at gamma = {p.gamma}")
    return 0.5 * p.c0 * p.gamma**2 / den


def fit_linear_quadratic(f_series: np.ndarray, n_min: int, n_max: int) -> FitResult:
    """Least-squares a*n + b*n^2 (no constant term) over f_series[n_min..n_max]."""
    f_series = np.asarray(f_series, dtype=float)
    if not (0 <= n_min <= n_max < len(f_series)):
        raise InvariantViolation(
            f"fit range [{n_min}, {n_max}] outside the series 0..{len(f_series) - 1}"
        )
    ns = np.arange(n_min, n_max + 1, dtype=float)
    if len(ns) < 3:
        raise InvariantViolation("fit needs at least 3 points")
    design = np.column_stack([ns, ns**2])
    if np.linalg.matrix_rank(design) < 2:
        raise InvariantViolation("degenerate design matrix for the linear+quadratic fit")
    target = f_series[n_min : n_max + 1]
    coeffs, _, _, _ = np.linalg.lstsq(design, target, rcond=None)
    residual = target - design @ coeffs
    return FitResult(
        a=float(coeffs[0]),
        b=float(coeffs[1]),
        rms_residual=float(np.sqrt(np.mean(residual**2))),
    )
