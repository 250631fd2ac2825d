"""Channel gains and the SINR family.

Four serving modes share one received-power table: single-BS OMA, cluster
joint transmission, and the power-split NOMA variants of both. All math is in
linear units (mW); dB only enters at configuration and reporting boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def db_to_linear(x_db):
    return 10.0 ** (np.asarray(x_db, dtype=float) / 10.0)


def linear_to_db(x):
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(x)


def dbm_to_mw(p_dbm):
    return 10.0 ** (np.asarray(p_dbm, dtype=float) / 10.0)


@dataclass(frozen=True)
class LinkBudget:
    """Log-distance path loss plus the fixed dB terms of the link equation.

    pl(d) = pl_intercept_db + pl_slope_db * log10(d_km), with d clamped below
    at d_min_km to keep the model finite near the transmitter.
    """

    pl_intercept_db: float = 133.6
    pl_slope_db: float = 35.0
    tx_gain_db: float = 0.0
    rx_gain_db: float = 0.0
    penetration_loss_db: float = 0.0
    shadowing_sigma_db: float = 8.0
    d_min_km: float = 0.01

    def __post_init__(self):
        if not self.pl_slope_db > 0:
            raise ValueError(f"pl_slope_db must be positive, got {self.pl_slope_db}")
        if self.shadowing_sigma_db < 0:
            raise ValueError(f"shadowing_sigma_db must be >= 0, got {self.shadowing_sigma_db}")
        if not self.d_min_km > 0:
            raise ValueError(f"d_min_km must be positive, got {self.d_min_km}")


def path_loss_db(d_km, budget: LinkBudget):
    """Deterministic log-distance loss in dB; d below d_min_km is clamped."""
    d = np.maximum(np.asarray(d_km, dtype=float), budget.d_min_km)
    return budget.pl_intercept_db + budget.pl_slope_db * np.log10(d)


def channel_gain(d_km, budget: LinkBudget, shadowing_db):
    """Linear power gain 10^((-pl + g_t + g_r - shadowing - penetration)/10)."""
    exponent = (
        -path_loss_db(d_km, budget)
        + budget.tx_gain_db
        + budget.rx_gain_db
        - np.asarray(shadowing_db, dtype=float)
        - budget.penetration_loss_db
    )
    return 10.0 ** (exponent / 10.0)


@dataclass(frozen=True)
class NoisePower:
    """Thermal noise over one subchannel."""

    psd_dbm_hz: float = -174.0
    subchannel_bw_hz: float = 180e3

    @property
    def sigma2_mw(self) -> float:
        return 10.0 ** ((self.psd_dbm_hz + 10.0 * np.log10(self.subchannel_bw_hz)) / 10.0)


@dataclass(frozen=True)
class SubchannelPlan:
    """Equal split of the BS budget across subchannels."""

    total_power_dbm: float = 46.0
    num_subchannels: int = 100

    def __post_init__(self):
        if self.num_subchannels < 1:
            raise ValueError(f"num_subchannels must be >= 1, got {self.num_subchannels}")

    @property
    def per_subchannel_mw(self) -> float:
        return float(dbm_to_mw(self.total_power_dbm)) / self.num_subchannels


@dataclass(frozen=True)
class RadioContext:
    """Per-subchannel received power rx_mw[user, bs] plus the noise floor.

    rx_mw already folds the per-subchannel transmit power into the channel
    gain, so every SINR below is a ratio of entries of this one table.
    """

    rx_mw: np.ndarray
    noise_mw: float

    @property
    def total_rx_mw(self) -> np.ndarray:
        return self.rx_mw.sum(axis=1)


def _served_power(ctx: RadioContext, serving) -> np.ndarray:
    serving = np.asarray(serving)
    return np.take_along_axis(ctx.rx_mw, serving[:, None], axis=1)[:, 0]


def sinr_oma(ctx: RadioContext, serving) -> np.ndarray:
    """Serving-BS power over the sum of every other BS plus noise, per user.

    All BSs load all subchannels, so the whole deployment interferes.
    """
    p = _served_power(ctx, serving)
    return p / (ctx.total_rx_mw - p + ctx.noise_mw)


def sinr_comp(ctx: RadioContext, members) -> np.ndarray:
    """Joint-transmission SINR: in-cluster power over out-of-cluster power + noise.

    `members` are the BS indices of one cluster; returns the value every user
    would see if served jointly by that cluster.
    """
    s = ctx.rx_mw[:, np.asarray(members)].sum(axis=1)
    return s / (ctx.total_rx_mw - s + ctx.noise_mw)


def sinr_comp_per_user(ctx: RadioContext, clusters, serving_cluster) -> np.ndarray:
    """Joint-transmission SINR of each user under its own serving cluster."""
    out = np.empty(ctx.rx_mw.shape[0])
    for cluster in clusters:
        mask = np.asarray(serving_cluster) == cluster.id
        if mask.any():
            out[mask] = sinr_comp(ctx, cluster.member_bs)[mask]
    return out


def _check_fraction(zeta_strong: float):
    if not 0.0 < zeta_strong < 1.0:
        raise ValueError(f"strong-user power fraction must lie in (0, 1), got {zeta_strong}")


def sinr_noma_noncomp(ctx: RadioContext, serving, zeta_strong: float, role: str) -> np.ndarray:
    """Post-pairing SINR for a single-BS NOMA pair member with perfect SIC.

    strong: zeta * P * g / (other-cell interference + noise)
    weak:   (1 - zeta) * P * g / (zeta * P * g + other-cell interference + noise)
    """
    _check_fraction(zeta_strong)
    p = _served_power(ctx, serving)
    inter = ctx.total_rx_mw - p
    if role == "strong":
        return zeta_strong * p / (inter + ctx.noise_mw)
    if role == "weak":
        return (1.0 - zeta_strong) * p / (zeta_strong * p + inter + ctx.noise_mw)
    raise ValueError(f"role must be 'strong' or 'weak', got {role!r}")


def sinr_noma_comp(ctx: RadioContext, members, zeta_strong: float, role: str) -> np.ndarray:
    """Post-pairing SINR for a jointly-transmitted NOMA pair member.

    Every BS in the cluster applies the same strong-user fraction; the weak
    member's denominator keeps the cluster's strong-signal power (no SIC),
    the strong member's keeps only out-of-cluster interference (perfect SIC).
    """
    _check_fraction(zeta_strong)
    s = ctx.rx_mw[:, np.asarray(members)].sum(axis=1)
    out_of_cluster = ctx.total_rx_mw - s
    if role == "strong":
        return zeta_strong * s / (out_of_cluster + ctx.noise_mw)
    if role == "weak":
        return (1.0 - zeta_strong) * s / (zeta_strong * s + out_of_cluster + ctx.noise_mw)
    raise ValueError(f"role must be 'strong' or 'weak', got {role!r}")


def post_pairing_sinr(raw_sinr, zeta_strong, role: str):
    """NOMA SINR expressed through the member's raw (pre-pairing) SINR.

    Dividing numerator and denominator of the pair SINRs by the raw
    denominator gives strong = zeta * raw and weak = (1-zeta) raw / (zeta raw + 1),
    which is what the sweep engine evaluates; the explicit direct-sum forms
    above exist for the oracle route.
    """
    raw = np.asarray(raw_sinr, dtype=float)
    z = np.asarray(zeta_strong, dtype=float)
    if role == "strong":
        return z * raw
    if role == "weak":
        return (1.0 - z) * raw / (z * raw + 1.0)
    raise ValueError(f"role must be 'strong' or 'weak', got {role!r}")
