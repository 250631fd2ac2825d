"""Scenario configuration: defaults, file parsing and validation.

Config files are plain key=value text with [sections]; section names are
organisational only, keys must be globally unique. Every key has a default
matching the reference simulation setup, so an empty file is a valid run.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ConfigError

SCHEMES = ("benchmark_oma", "comp_only", "noma_only", "comp_noma_proposed")

_LIST_KEYS = {"bs_density", "user_density", "comp_threshold_db"}
_INT_KEYS = {
    "num_subchannels", "subcarriers_per_subchannel", "symbols_per_subcarrier",
    "num_clusters", "iterations", "master_seed", "threads",
}
_STR_KEYS = {"mcs_table", "msd_mode", "coverage_mode", "fading"}


def _parse_float_list(key: str, value) -> tuple[float, ...]:
    if isinstance(value, (tuple, list)):
        return tuple(float(v) for v in value)
    if isinstance(value, (int, float)):
        return (float(value),)
    # an empty list is a legal (empty) sweep axis
    parts = [p for chunk in str(value).split(",") for p in chunk.split()]
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"{key}: non-numeric value in {value!r}") from exc


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything one sweep needs; defaults reproduce the reference setup."""

    # deployment
    area_km2: float = 25.0
    bs_density: tuple[float, ...] = (16.0,)                  # BSs per km2, sweep axis
    user_density: tuple[float, ...] = (40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 140.0, 150.0)
    num_clusters: int = 10
    # radio
    tx_power_dbm: float = 46.0
    num_subchannels: int = 100
    subchannel_bw_khz: float = 180.0
    noise_psd_dbm_hz: float = -174.0
    pl_intercept_db: float = 133.6
    pl_slope_db: float = 35.0
    shadowing_sigma_db: float = 8.0
    tx_gain_db: float = 0.0
    rx_gain_db: float = 0.0
    penetration_loss_db: float = 0.0
    d_min_km: float = 0.01
    fading: str = "none"                                     # per-iteration fast-fading hook
    # serving schemes
    comp_threshold_db: tuple[float, ...] = (-6.5,)           # sweep axis
    msd_mode: str = "rate_feasibility"                       # or "fixed_gap"
    msd_gap_db: float = 10.0
    fairness_alpha: float = 1.0
    schemes: tuple[str, ...] = SCHEMES
    # link layer
    subcarriers_per_subchannel: int = 12
    symbols_per_subcarrier: int = 14
    subframe_s: float = 1e-3
    mcs_table: str = ""                                      # empty -> bundled default
    coverage_mode: str = "mcs"                               # or "sinr_threshold"
    coverage_threshold_db: float = -6.7
    # engine
    iterations: int = 100
    master_seed: int = 1
    threads: int = 1

    def __post_init__(self):
        # empty axis lists are allowed (a zero-point sweep writes a bare header)
        for key in ("bs_density", "user_density"):
            values = getattr(self, key)
            if any(v <= 0 for v in values):
                raise ConfigError(f"{key}: densities must be positive, got {values}")
        if self.area_km2 <= 0:
            raise ConfigError(f"area_km2: must be positive, got {self.area_km2}")
        if self.iterations < 1:
            raise ConfigError(f"iterations: must be >= 1, got {self.iterations}")
        if self.num_clusters < 1:
            raise ConfigError(f"num_clusters: must be >= 1, got {self.num_clusters}")
        if self.num_subchannels < 1:
            raise ConfigError(f"num_subchannels: must be >= 1, got {self.num_subchannels}")
        if self.subchannel_bw_khz <= 0:
            raise ConfigError(f"subchannel_bw_khz: must be positive, got {self.subchannel_bw_khz}")
        if self.pl_slope_db <= 0:
            raise ConfigError(f"pl_slope_db: must be positive, got {self.pl_slope_db}")
        if self.shadowing_sigma_db < 0:
            raise ConfigError(f"shadowing_sigma_db: must be >= 0, got {self.shadowing_sigma_db}")
        if self.d_min_km <= 0:
            raise ConfigError(f"d_min_km: must be positive, got {self.d_min_km}")
        if self.subframe_s <= 0:
            raise ConfigError(f"subframe_s: must be positive, got {self.subframe_s}")
        if self.fairness_alpha != 1.0:
            raise ConfigError(
                f"fairness_alpha: only the equal-share scheduler (alpha=1) is implemented, got {self.fairness_alpha}"
            )
        if self.msd_mode not in ("rate_feasibility", "fixed_gap"):
            raise ConfigError(f"msd_mode: must be rate_feasibility or fixed_gap, got {self.msd_mode!r}")
        if self.coverage_mode not in ("mcs", "sinr_threshold"):
            raise ConfigError(f"coverage_mode: must be mcs or sinr_threshold, got {self.coverage_mode!r}")
        if self.fading not in ("none", "rayleigh"):
            raise ConfigError(f"fading: must be none or rayleigh, got {self.fading!r}")
        if self.master_seed < 0:
            raise ConfigError(f"master_seed: must be >= 0, got {self.master_seed}")
        if self.threads < 1:
            raise ConfigError(f"threads: must be >= 1, got {self.threads}")
        unknown = [s for s in self.schemes if s not in SCHEMES]
        if unknown:
            raise ConfigError(f"schemes: unknown scheme(s) {unknown}; valid: {list(SCHEMES)}")
        if not self.schemes:
            raise ConfigError("schemes: at least one scheme required")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_mapping(cls, mapping: dict) -> "ScenarioConfig":
        known = {f.name for f in fields(cls)}
        kwargs = {}
        for key, value in mapping.items():
            if key not in known:
                raise ConfigError(f"{key}: unknown configuration key")
            if key in _LIST_KEYS:
                kwargs[key] = _parse_float_list(key, value)
            elif key == "schemes":
                if isinstance(value, str):
                    value = [v for chunk in value.split(",") for v in chunk.split()]
                kwargs[key] = tuple(value)
            elif key in _INT_KEYS:
                try:
                    kwargs[key] = int(str(value))
                except ValueError as exc:
                    raise ConfigError(f"{key}: expected an integer, got {value!r}") from exc
            elif key in _STR_KEYS:
                kwargs[key] = str(value)
            else:
                try:
                    kwargs[key] = float(str(value))
                except ValueError as exc:
                    raise ConfigError(f"{key}: expected a number, got {value!r}") from exc
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str | Path) -> "ScenarioConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        return cls.from_mapping(_read_key_values(path.read_text(), origin=str(path)))

    def with_overrides(self, overrides: dict) -> "ScenarioConfig":
        """Apply flag overrides on top of this config (same coercion rules)."""
        if not overrides:
            return self
        merged = self.to_dict()
        merged.update(overrides)
        return type(self).from_mapping(merged)

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            out[f.name] = list(value) if isinstance(value, tuple) else value
        return out

    # -- sweep geometry ----------------------------------------------------

    def points(self) -> list[tuple[float, float, float]]:
        """Cartesian sweep grid in deterministic order."""
        return [
            (lb, lu, gth)
            for lb in self.bs_density
            for lu in self.user_density
            for gth in self.comp_threshold_db
        ]

    def selected_schemes(self) -> tuple[str, ...]:
        return tuple(s for s in SCHEMES if s in self.schemes)


def _read_key_values(text: str, origin: str) -> dict:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        # tolerate files without any section header
        parser.read_string("[_top]\n" + text, source=origin)
    except configparser.Error as exc:
        raise ConfigError(f"{origin}: {exc}") from exc
    merged: dict[str, str] = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            if key in merged:
                raise ConfigError(f"{origin}: duplicate key {key!r} (sections share one namespace)")
            merged[key] = value
    return merged
