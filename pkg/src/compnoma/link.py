"""SINR to spectral efficiency to bit rate.

The MCS table is a replaceable data file; the shipped default is a 15-row
CQI-style ladder. Rates follow the subframe grid: efficiency * subcarriers *
symbols * subchannels / subframe duration.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class McsTable:
    """Ordered (min_sinr_db, efficiency) rows; lookup is closed at each threshold."""

    min_sinr_db: np.ndarray
    efficiency: np.ndarray

    def __post_init__(self):
        if len(self.min_sinr_db) == 0:
            raise ConfigError("MCS table is empty")
        if len(self.min_sinr_db) != len(self.efficiency):
            raise ConfigError("MCS table columns have different lengths")
        if not np.all(np.diff(self.min_sinr_db) > 0):
            raise ConfigError("MCS thresholds must be strictly increasing")
        if not (np.all(np.diff(self.efficiency) > 0) and self.efficiency[0] > 0):
            raise ConfigError("MCS efficiencies must be positive and strictly increasing")
        # lookups compare in linear units so a SINR sitting exactly on a
        # threshold hits that row (no dB round-trip error)
        object.__setattr__(self, "min_sinr_linear", 10.0 ** (self.min_sinr_db / 10.0))

    @classmethod
    def from_text(cls, text: str, origin: str = "<string>") -> "McsTable":
        thresholds, effs = [], []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ConfigError(f"{origin}:{lineno}: expected 'min_sinr_db efficiency', got {raw!r}")
            try:
                thresholds.append(float(parts[0]))
                effs.append(float(parts[1]))
            except ValueError as exc:
                raise ConfigError(f"{origin}:{lineno}: non-numeric value in {raw!r}") from exc
        return cls(np.asarray(thresholds), np.asarray(effs))

    @classmethod
    def load(cls, path: str | Path) -> "McsTable":
        path = Path(path)
        return cls.from_text(path.read_text(), origin=str(path))

    @classmethod
    def default(cls) -> "McsTable":
        text = resources.files("compnoma.data").joinpath("default_mcs.txt").read_text()
        return cls.from_text(text, origin="default_mcs.txt")


def efficiency(sinr_linear, table: McsTable):
    """Bits/symbol of the highest row whose threshold <= SINR; 0 below the ladder."""
    sinr = np.asarray(sinr_linear, dtype=float)
    idx = np.searchsorted(table.min_sinr_linear, sinr, side="right") - 1
    eta = np.where(idx >= 0, table.efficiency[np.maximum(idx, 0)], 0.0)
    return eta if eta.ndim else float(eta)


@dataclass(frozen=True)
class FrameParams:
    """Subframe grid used to turn spectral efficiency into bit/s."""

    subcarriers_per_subchannel: int = 12
    symbols_per_subcarrier: int = 14
    subframe_s: float = 1e-3
    num_subchannels: int = 100

    def __post_init__(self):
        for name in ("subcarriers_per_subchannel", "symbols_per_subcarrier", "subframe_s", "num_subchannels"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")

    @property
    def symbol_rate(self) -> float:
        """Symbols per second across all subchannels."""
        return (
            self.subcarriers_per_subchannel
            * self.symbols_per_subcarrier
            * self.num_subchannels
            / self.subframe_s
        )


def link_rate(sinr_linear, frame: FrameParams, table: McsTable):
    """Full-buffer link rate in bit/s at the given SINR."""
    return efficiency(sinr_linear, table) * frame.symbol_rate


def user_throughput(rate_bps, airtime):
    """Rate scaled by the scheduled time fraction."""
    airtime = np.asarray(airtime, dtype=float)
    if np.any(airtime < 0) or np.any(airtime > 1):
        raise ValueError("airtime must lie in [0, 1]")
    return rate_bps * airtime
