"""Configured experiment runs persisted as CSV records plus a manifest sidecar.

Three run kinds are supported: decoherence of a Bell pair, entanglement
generation from a product pair (both exact evolution next to the theory
curve), and the decoherence-function run that records g, f, phi together
with the linear+quadratic interpolation and the phenomenological curve.
"""

import csv
import time
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from ._version import __version__
from .dynamics import (
    CouplingSpec,
    JointState,
    TopParams,
    build_env_floquet,
    build_interaction_phases,
    step,
)
from .errors import ConfigError, InvariantViolation, NumericalFailure
from .observables import Rdm4, lambda_and_concurrence, partial_trace_env, purity
from .perturbation import (
    DecoherenceSeries,
    FitResult,
    PhenoParams,
    env_series,
    estimate_c0,
    estimate_gamma,
    fit_linear_quadratic,
    perturbative_rdm,
    pheno_f,
)
from .spin import SpinBasis, coherent_state

SCENARIOS = ("bell", "product", "fn")
SYSTEM_STATES = ("bell", "product", "custom")

BELL_AMPLITUDES = (1 / np.sqrt(2.0), 0.0, 0.0, -1 / np.sqrt(2.0))
PRODUCT_AMPLITUDES = (0.5, 0.5, -0.5, -0.5)

# plateau and lag windows for the covariance diagnostics of the fn run;
# at strong chaos the covariance falls to its finite-size floor after one
# lag, so only the first lag carries decay-rate information
C0_PLATEAU_START = 10
GAMMA_WINDOW = (10, 60)
GAMMA_MAX_LAG = 1

_CONFIG_KEYS = (
    "j", "k", "beta", "kick_strength", "alphas", "initial_system",
    "custom_amplitudes", "coherent_theta", "coherent_phi", "n_steps",
    "centered", "outputs", "record_every", "scenario", "fit_n_min", "fit_n_max",
)


@dataclass(frozen=True)
class ScenarioConfig:
    """Full description of one run; every physical parameter is explicit."""

    top: TopParams
    alphas: tuple[float, ...]
    initial_system: str
    coherent_theta: float
    coherent_phi: float
    n_steps: int
    centered: bool = False
    outputs: Path = Path("runs")
    record_every: int = 1
    scenario: str | None = None
    custom_amplitudes: tuple[complex, ...] | None = None
    fit_n_min: int = 1
    fit_n_max: int | None = None

    def __post_init__(self):
        if self.initial_system not in SYSTEM_STATES:
            raise ConfigError(f"initial_system must be one of {SYSTEM_STATES}, got {self.initial_system!r}")
        if self.scenario is not None and self.scenario not in SCENARIOS:
            raise ConfigError(f"scenario must be one of {SCENARIOS}, got {self.scenario!r}")
        if not self.alphas:
            raise ConfigError("alphas must list at least one coupling strength")
        if self.n_steps < 1:
            raise ConfigError(f"n_steps must be >= 1, got {self.n_steps}")
        if self.record_every < 1:
            raise ConfigError(f"record_every must be >= 1, got {self.record_every}")
        if not 0.0 <= self.coherent_theta <= np.pi:
            raise ConfigError(f"coherent_theta must lie in [0, pi], got {self.coherent_theta}")
        if self.initial_system == "custom":
            if self.custom_amplitudes is None:
                raise ConfigError("custom_amplitudes is required when initial_system = custom")
            amps = np.asarray(self.custom_amplitudes, dtype=complex)
            if amps.shape != (4,):
                raise ConfigError("custom_amplitudes must list exactly 4 complex amplitudes")
            if abs(np.linalg.norm(amps) - 1.0) > 1e-10:
                raise ConfigError("custom_amplitudes must be normalized to 1 within 1e-10")
        fit_max = self.n_steps if self.fit_n_max is None else self.fit_n_max
        if not (0 <= self.fit_n_min <= fit_max <= self.n_steps):
            raise ConfigError(
                f"fit window [{self.fit_n_min}, {fit_max}] must satisfy 0 <= fit_n_min <= fit_n_max <= n_steps"
            )
        object.__setattr__(self, "outputs", Path(self.outputs))
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))

    def system_amplitudes(self) -> np.ndarray:
        if self.initial_system == "bell":
            return np.asarray(BELL_AMPLITUDES, dtype=complex)
        if self.initial_system == "product":
            return np.asarray(PRODUCT_AMPLITUDES, dtype=complex)
        return np.asarray(self.custom_amplitudes, dtype=complex)

    def effective_pairs(self) -> list[tuple[str, str]]:
        """Normalized key/value echo of the configuration, in a fixed order."""
        pairs = [
            ("j", repr(self.top.j)),
            ("k", repr(self.top.k)),
            ("beta", repr(self.top.beta)),
            ("kick_strength", repr(self.top.kick_strength)),
            ("alphas", ", ".join(repr(a) for a in self.alphas)),
            ("initial_system", self.initial_system),
            ("coherent_theta", repr(self.coherent_theta)),
            ("coherent_phi", repr(self.coherent_phi)),
            ("n_steps", str(self.n_steps)),
            ("centered", "true" if self.centered else "false"),
            ("record_every", str(self.record_every)),
            ("fit_n_min", str(self.fit_n_min)),
            ("fit_n_max", str(self.n_steps if self.fit_n_max is None else self.fit_n_max)),
        ]
        if self.custom_amplitudes is not None:
            pairs.insert(6, ("custom_amplitudes", ", ".join(repr(c) for c in self.custom_amplitudes)))
        return pairs


@dataclass
class RunArtifact:
    """In-memory records of one run plus the paths they were persisted to."""

    kind: str
    config: ScenarioConfig
    n: np.ndarray
    columns: dict[str, np.ndarray]
    records_path: Path
    manifest_path: Path
    fit: FitResult | None = None
    pheno: PhenoParams | None = None


def _parse_bool(value: str, key: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ConfigError(f"config field {key!r}: expected a boolean, got {value!r}")


def _parse_float(value: str, key: str) -> float:
    try:
        return float(value)
    except ValueError as exc:
        raise ConfigError(f"config field {key!r}: expected a number, got {value!r}") from exc


def _parse_int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigError(f"config field {key!r}: expected an integer, got {value!r}") from exc


def load_config(path: str | Path) -> ScenarioConfig:
    """Parse a flat ``key = value`` configuration file with # comments."""
    path = Path(path)
    raw: dict[str, str] = {}
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line.strip()!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown config field {key!r}")
        if key in raw:
            raise ConfigError(f"{path}:{lineno}: duplicate config field {key!r}")
        raw[key] = value

    for key in ("j", "k", "beta", "alphas", "coherent_theta", "coherent_phi", "n_steps"):
        if key not in raw:
            raise ConfigError(f"{path}: missing required config field {key!r}")

    top_kwargs = dict(
        j=_parse_float(raw["j"], "j"),
        k=_parse_float(raw["k"], "k"),
        beta=_parse_float(raw["beta"], "beta"),
    )
    if "kick_strength" in raw:
        top_kwargs["kick_strength"] = _parse_float(raw["kick_strength"], "kick_strength")
    try:
        top = TopParams(**top_kwargs)
    except InvariantViolation as exc:
        raise ConfigError(f"config field 'j': {exc}") from exc

    alphas = tuple(
        _parse_float(tok.strip(), "alphas") for tok in raw["alphas"].split(",") if tok.strip()
    )

    custom = None
    if "custom_amplitudes" in raw:
        try:
            custom = tuple(complex(tok.strip()) for tok in raw["custom_amplitudes"].split(",") if tok.strip())
        except ValueError as exc:
            raise ConfigError(f"config field 'custom_amplitudes': {exc}") from exc

    kwargs = dict(
        top=top,
        alphas=alphas,
        initial_system=raw.get("initial_system", "bell"),
        coherent_theta=_parse_float(raw["coherent_theta"], "coherent_theta"),
        coherent_phi=_parse_float(raw["coherent_phi"], "coherent_phi"),
        n_steps=_parse_int(raw["n_steps"], "n_steps"),
        custom_amplitudes=custom,
    )
    if "centered" in raw:
        kwargs["centered"] = _parse_bool(raw["centered"], "centered")
    if "outputs" in raw:
        kwargs["outputs"] = Path(raw["outputs"])
    if "record_every" in raw:
        kwargs["record_every"] = _parse_int(raw["record_every"], "record_every")
    if "scenario" in raw:
        kwargs["scenario"] = raw["scenario"]
    if "fit_n_min" in raw:
        kwargs["fit_n_min"] = _parse_int(raw["fit_n_min"], "fit_n_min")
    if "fit_n_max" in raw:
        kwargs["fit_n_max"] = _parse_int(raw["fit_n_max"], "fit_n_max")
    return ScenarioConfig(**kwargs)


def _alpha_token(alpha: float) -> str:
    return repr(float(alpha))


def _column_name(field: str, alpha: float) -> str:
    return f"{field}[{_alpha_token(alpha)}]"


def _write_records(path: Path, n: np.ndarray, columns: dict[str, np.ndarray]) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", *columns.keys()])
        for i, step_n in enumerate(n):
            writer.writerow([int(step_n), *(repr(float(columns[name][i])) for name in columns)])


def _write_manifest(
    path: Path,
    kind: str,
    cfg: ScenarioConfig,
    records_name: str,
    wall_clock: float,
    results: list[tuple[str, str]],
) -> None:
    lines = [
        "# topbath run manifest",
        f"version = {__version__}",
        f"scenario = {kind}",
        f"records = {records_name}",
        f"created_utc = {datetime.now(timezone.utc).isoformat()}",
        f"wall_clock_seconds = {wall_clock:.3f}",
    ]
    lines.extend(f"config.{key} = {value}" for key, value in cfg.effective_pairs())
    lines.extend(f"result.{key} = {value}" for key, value in results)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _recorded_steps(cfg: ScenarioConfig) -> np.ndarray:
    return np.arange(0, cfg.n_steps + 1, cfg.record_every, dtype=int)


def run_decoherence_scenario(cfg: ScenarioConfig) -> RunArtifact:
    """Exact joint evolution next to the theory curve, one trace set per alpha."""
    kind = cfg.scenario or cfg.initial_system
    if kind == "fn":
        raise ConfigError("scenario 'fn' must be run through run_fn_scenario")
    if kind in ("bell", "product") and cfg.initial_system != kind:
        cfg = replace(cfg, initial_system=kind, custom_amplitudes=None)

    t0 = time.perf_counter()
    basis = SpinBasis(cfg.top.j)
    psi0 = coherent_state(basis, cfg.coherent_theta, cfg.coherent_phi)
    c_sys = cfg.system_amplitudes()
    rho0 = Rdm4(np.outer(c_sys, c_sys.conj()))
    series = env_series(
        cfg.top, psi0, cfg.n_steps, centered=cfg.centered,
        psi0_label=f"coherent theta={cfg.coherent_theta} phi={cfg.coherent_phi}",
    )
    u_env = build_env_floquet(cfg.top)
    recorded = _recorded_steps(cfg)

    columns: dict[str, np.ndarray] = {}
    for alpha in cfg.alphas:
        coupling = CouplingSpec(alpha=alpha)
        phases = build_interaction_phases(coupling, basis)
        n_rec = len(recorded)
        p_exact = np.zeros(n_rec)
        lam_exact = np.zeros(n_rec)
        p_pert = np.zeros(n_rec)
        lam_pert = np.zeros(n_rec)
        coh_deg = np.zeros(n_rec)

        state = JointState.from_product(c_sys, psi0)
        rec_i = 0
        for n in range(cfg.n_steps + 1):
            if rec_i < n_rec and n == recorded[rec_i]:
                rho = partial_trace_env(state)
                p_exact[rec_i] = purity(rho)
                lam_exact[rec_i] = lambda_and_concurrence(rho)[0]
                coh_deg[rec_i] = abs(rho.matrix[1, 2])
                rho_th = perturbative_rdm(rho0, coupling, series, n)
                p_pert[rec_i] = purity(rho_th)
                lam_pert[rec_i] = lambda_and_concurrence(rho_th)[0]
                rec_i += 1
            if n < cfg.n_steps:
                state = step(state, u_env, phases)

        columns[_column_name("purity_exact", alpha)] = p_exact
        columns[_column_name("lambda_exact", alpha)] = lam_exact
        columns[_column_name("purity_pert", alpha)] = p_pert
        columns[_column_name("lambda_pert", alpha)] = lam_pert
        columns[_column_name("coh_01_10_exact", alpha)] = coh_deg

    cfg.outputs.mkdir(parents=True, exist_ok=True)
    records_path = cfg.outputs / f"{kind}_records.csv"
    manifest_path = cfg.outputs / f"{kind}_manifest.txt"
    _write_records(records_path, recorded, columns)
    _write_manifest(manifest_path, kind, cfg, records_path.name, time.perf_counter() - t0, [])
    return RunArtifact(
        kind=kind, config=cfg, n=recorded, columns=columns,
        records_path=records_path, manifest_path=manifest_path,
    )


def run_fn_scenario(cfg: ScenarioConfig) -> RunArtifact:
    """Decoherence-function run: series, interpolation fit, and pheno diagnostics."""
    t0 = time.perf_counter()
    basis = SpinBasis(cfg.top.j)
    psi0 = coherent_state(basis, cfg.coherent_theta, cfg.coherent_phi)
    series = env_series(
        cfg.top, psi0, cfg.n_steps, centered=cfg.centered,
        psi0_label=f"coherent theta={cfg.coherent_theta} phi={cfg.coherent_phi}",
    )
    jsq = cfg.top.j ** 2
    f_scaled = series.f / jsq
    fit_n_max = cfg.n_steps if cfg.fit_n_max is None else cfg.fit_n_max
    fit = fit_linear_quadratic(f_scaled, cfg.fit_n_min, fit_n_max)

    pheno: PhenoParams | None = None
    try:
        c0_raw = estimate_c0(series, l_min=min(C0_PLATEAU_START, max(1, cfg.n_steps // 2)))
        gamma = estimate_gamma(
            cfg.top, psi0, l_min=GAMMA_WINDOW[0], l_max=GAMMA_WINDOW[1], max_lag=GAMMA_MAX_LAG
        )
        pheno = PhenoParams(c0=c0_raw / jsq, gamma=gamma)
    except (InvariantViolation, NumericalFailure):
        pheno = None  # degenerate environments (zero covariance) have no pheno curve

    recorded = _recorded_steps(cfg)
    ns = recorded.astype(float)
    columns = {
        "g": series.g[recorded],
        "f_raw": series.f[recorded],
        "f_scaled": f_scaled[recorded],
        "phi": series.phi[recorded],
        "c_diag": series.c_diag[recorded],
        "f_fit_scaled": fit.a * ns + fit.b * ns**2,
    }
    if pheno is not None:
        columns["f_pheno_scaled"] = np.asarray(pheno_f(pheno, ns))

    results = [
        ("fit_a", repr(fit.a)),
        ("fit_b", repr(fit.b)),
        ("fit_rms_residual", repr(fit.rms_residual)),
        ("fit_window", f"{cfg.fit_n_min}..{fit_n_max}"),
    ]
    if pheno is not None:
        results.append(("c0_scaled", repr(pheno.c0)))
        results.append(("gamma", repr(pheno.gamma)))
    else:
        results.append(("pheno", "unavailable (degenerate covariance)"))

    cfg.outputs.mkdir(parents=True, exist_ok=True)
    records_path = cfg.outputs / "fn_records.csv"
    manifest_path = cfg.outputs / "fn_manifest.txt"
    _write_records(records_path, recorded, columns)
    _write_manifest(manifest_path, "fn", cfg, records_path.name, time.perf_counter() - t0, results)
    return RunArtifact(
        kind="fn", config=cfg, n=recorded, columns=columns,
        records_path=records_path, manifest_path=manifest_path,
        fit=fit, pheno=pheno,
    )


def load_records(path: str | Path) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """Read a records CSV back into a step array and named columns."""
    path = Path(path)
    try:
        fh = path.open("r", encoding="utf-8", newline="")
    except OSError as exc:
        raise ConfigError(f"cannot read records file {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigError(f"records file {path} is empty") from None
        if not header or header[0] != "n":
            raise ConfigError(f"records file {path} does not start with an 'n' column")
        rows = [row for row in reader if row]
    if not rows:
        raise ConfigError(f"records file {path} contains no data rows")
    data = np.array([[float(v) for v in row] for row in rows])
    n = data[:, 0].astype(int)
    columns = {name: data[:, i + 1] for i, name in enumerate(header[1:])}
    return n, columns


def detect_lambda_crossing(
    records: "RunArtifact | tuple[np.ndarray, dict[str, np.ndarray]]",
) -> list[tuple[float, int]]:
    """First step where each alpha's exact Lambda turns positive after being <= 0.

    Alphas whose series never cross are omitted from the result.
    """
    if isinstance(records, RunArtifact):
        n, columns = records.n, records.columns
    else:
        n, columns = records
    crossings: list[tuple[float, int]] = []
    for name, series in columns.items():
        if not name.startswith("lambda_exact["):
            continue
        alpha = float(name[len("lambda_exact[") : -1])
        for i in range(1, len(series)):
            if series[i] > 0.0 and series[i - 1] <= 0.0:
                crossings.append((alpha, int(n[i])))
                break
    return crossings
