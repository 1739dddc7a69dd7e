"""JSON run configuration: parsing, validation, defaults, canonical form.

The surface units are operator-friendly (powers in dBm, thresholds in dB,
region size in wavelengths); everything is converted to linear SI once at
parse time.  Parsing is strict: unknown keys are rejected and every invalid
value is reported with its full key path.
"""

import json
import math
from dataclasses import asdict, dataclass

from .scenario import ScenarioSpec
from .sca import ScaConfig
from .units import db_to_linear, dbm_to_watts


class ConfigError(ValueError):
    """Raised for malformed or invalid run configuration."""


@dataclass(frozen=True)
class SystemConfig:
    antennas: int = 16
    distances_m: tuple[float, float] = (60.0, 100.0)
    wavelength_m: float = 0.1
    paths: int = 10
    path_loss_exponent: float = 2.8
    noise_dbm: float = -90.0
    sinr_threshold_db: float = 10.0
    region_wavelengths: float = 3.0
    power_dbm: float = 30.0


@dataclass(frozen=True)
class McConfig:
    seed: int = 42
    trials: int = 200
    workers: int = 1


@dataclass(frozen=True)
class SweepsConfig:
    region_wavelengths: tuple[float, ...] = (0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0)
    power_dbm: tuple[float, ...] = (20.0, 25.0, 30.0, 35.0, 40.0)


@dataclass(frozen=True)
class RunConfig:
    system: SystemConfig = SystemConfig()
    sca: ScaConfig = ScaConfig()
    mc: McConfig = McConfig()
    sweeps: SweepsConfig = SweepsConfig()

    def scenario_spec(self) -> ScenarioSpec:
        s = self.system
        return ScenarioSpec(
            n_antennas=s.antennas,
            distances=s.distances_m,
            carrier_wavelength=s.wavelength_m,
            path_count=s.paths,
            path_loss_exponent=s.path_loss_exponent,
            noise_power=dbm_to_watts(s.noise_dbm),
            sinr_threshold=db_to_linear(s.sinr_threshold_db),
            region_half_side=s.region_wavelengths * s.wavelength_m / 2.0,
            total_power=dbm_to_watts(s.power_dbm),
            master_seed=self.mc.seed,
        )

    def to_json(self) -> str:
        """Canonical JSON form: fixed section and key order, two-space indent."""
        payload = {
            "system": {
                "antennas": self.system.antennas,
                "distances_m": list(self.system.distances_m),
                "wavelength_m": self.system.wavelength_m,
                "paths": self.system.paths,
                "path_loss_exponent": self.system.path_loss_exponent,
                "noise_dbm": self.system.noise_dbm,
                "sinr_threshold_db": self.system.sinr_threshold_db,
                "region_wavelengths": self.system.region_wavelengths,
                "power_dbm": self.system.power_dbm,
            },
            "sca": {
                "damping": self.sca.damping,
                "tolerance_m": self.sca.tolerance,
                "max_iterations": self.sca.max_iterations,
                "multistart": self.sca.multistart_count,
                "delta_floor": self.sca.delta_floor,
            },
            "mc": asdict(self.mc),
            "sweeps": {
                "region_wavelengths": list(self.sweeps.region_wavelengths),
                "power_dbm": list(self.sweeps.power_dbm),
            },
        }
        return json.dumps(payload, indent=2) + "\n"


def default_config() -> RunConfig:
    return RunConfig()


def _require(condition: bool, path: str, message: str):
    if not condition:
        raise ConfigError(f"{path}: {message}")


def _as_number(value, path: str) -> float:
    _require(isinstance(value, (int, float)) and not isinstance(value, bool), path, "must be a number")
    _require(math.isfinite(float(value)), path, "must be finite")
    return float(value)


def _as_positive(value, path: str) -> float:
    v = _as_number(value, path)
    _require(v > 0.0, path, "must be positive")
    return v


def _as_count(value, path: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), path, "must be an integer")
    _require(value >= 1, path, "must be >= 1")
    return value


def _section(raw: dict, name: str, known: set[str]) -> dict:
    section = raw.get(name, {})
    _require(isinstance(section, dict), name, "must be an object")
    for key in section:
        if key not in known:
            raise ConfigError(f"unknown key: {name}.{key}")
    return section


def parse_config(text: str) -> RunConfig:
    """Parse and validate JSON text; omitted fields take defaults."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("top level must be a JSON object")
    for key in raw:
        if key not in {"system", "sca", "mc", "sweeps"}:
            raise ConfigError(f"unknown key: {key}")

    defaults = RunConfig()

    sys_raw = _section(raw, "system", {
        "antennas", "distances_m", "wavelength_m", "paths", "path_loss_exponent",
        "noise_dbm", "sinr_threshold_db", "region_wavelengths", "power_dbm",
    })
    d = defaults.system
    distances = sys_raw.get("distances_m", list(d.distances_m))
    _require(isinstance(distances, (list, tuple)) and len(distances) == 2,
             "system.distances_m", "must be a list of two values")
    system = SystemConfig(
        antennas=_as_count(sys_raw.get("antennas", d.antennas), "system.antennas"),
        distances_m=tuple(_as_positive(v, f"system.distances_m[{i}]") for i, v in enumerate(distances)),
        wavelength_m=_as_positive(sys_raw.get("wavelength_m", d.wavelength_m), "system.wavelength_m"),
        paths=_as_count(sys_raw.get("paths", d.paths), "system.paths"),
        path_loss_exponent=_as_positive(
            sys_raw.get("path_loss_exponent", d.path_loss_exponent), "system.path_loss_exponent"),
        noise_dbm=_as_number(sys_raw.get("noise_dbm", d.noise_dbm), "system.noise_dbm"),
        sinr_threshold_db=_as_number(
            sys_raw.get("sinr_threshold_db", d.sinr_threshold_db), "system.sinr_threshold_db"),
        region_wavelengths=_region_size(
            sys_raw.get("region_wavelengths", d.region_wavelengths), "system.region_wavelengths"),
        power_dbm=_as_number(sys_raw.get("power_dbm", d.power_dbm), "system.power_dbm"),
    )

    sca_raw = _section(raw, "sca", {
        "damping", "tolerance_m", "max_iterations", "multistart", "delta_floor",
    })
    ds = defaults.sca
    damping = _as_number(sca_raw.get("damping", ds.damping), "sca.damping")
    _require(0.0 < damping <= 1.0, "sca.damping", "must lie in (0, 1]")
    delta_floor = _as_number(sca_raw.get("delta_floor", ds.delta_floor), "sca.delta_floor")
    _require(delta_floor >= 0.0, "sca.delta_floor", "must be >= 0")
    sca = ScaConfig(
        damping=damping,
        tolerance=_as_positive(sca_raw.get("tolerance_m", ds.tolerance), "sca.tolerance_m"),
        max_iterations=_as_count(sca_raw.get("max_iterations", ds.max_iterations), "sca.max_iterations"),
        multistart_count=_as_count(sca_raw.get("multistart", ds.multistart_count), "sca.multistart"),
        delta_floor=delta_floor,
    )

    mc_raw = _section(raw, "mc", {"seed", "trials", "workers"})
    dm = defaults.mc
    seed = mc_raw.get("seed", dm.seed)
    _require(isinstance(seed, int) and not isinstance(seed, bool), "mc.seed", "must be an integer")
    _require(0 <= seed < 2**64, "mc.seed", "must fit in an unsigned 64-bit integer")
    mc = McConfig(
        seed=seed,
        trials=_as_count(mc_raw.get("trials", dm.trials), "mc.trials"),
        workers=_as_count(mc_raw.get("workers", dm.workers), "mc.workers"),
    )

    sweeps_raw = _section(raw, "sweeps", {"region_wavelengths", "power_dbm"})
    dw = defaults.sweeps
    region_values = sweeps_raw.get("region_wavelengths", list(dw.region_wavelengths))
    power_values = sweeps_raw.get("power_dbm", list(dw.power_dbm))
    _require(isinstance(region_values, (list, tuple)) and len(region_values) >= 1,
             "sweeps.region_wavelengths", "must be a nonempty list")
    _require(isinstance(power_values, (list, tuple)) and len(power_values) >= 1,
             "sweeps.power_dbm", "must be a nonempty list")
    sweeps = SweepsConfig(
        region_wavelengths=tuple(
            _region_size(v, f"sweeps.region_wavelengths[{i}]") for i, v in enumerate(region_values)),
        power_dbm=tuple(
            _as_number(v, f"sweeps.power_dbm[{i}]") for i, v in enumerate(power_values)),
    )

    return RunConfig(system=system, sca=sca, mc=mc, sweeps=sweeps)


def _region_size(value, path: str) -> float:
    v = _as_number(value, path)
    _require(v >= 0.0, path, "must be >= 0")
    return v
