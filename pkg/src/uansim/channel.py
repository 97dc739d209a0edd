"""Underwater acoustic link model: delay, Thorp path loss, SNR-driven frame loss."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

SNR_SIGMOID = "snr-sigmoid"
FIXED_RANGE = "fixed-range"


@dataclass
class ChannelParams:
    """Acoustic channel constants.

    Defaults satisfy the documented targets for 64-byte frames:
    PER < 1% at 100 m and PER > 50% at 400 m.
    """
    sound_speed: float = 1500.0        # m/s
    frequency_khz: float = 10.0
    spreading_exponent: float = 1.5    # geometric spreading, in [1, 2]
    source_level_db: float = 140.0     # dB re uPa at 1 m
    noise_level_db: float = 89.0       # dB re uPa
    ber_midpoint_db: float = 0.0       # SNR where BER = 0.25
    ber_slope_db: float = 2.0          # logistic width
    per_model: str = SNR_SIGMOID
    max_range_m: float = 250.0         # used by the fixed-range model only
    data_rate_bps: float = 512.0 / 1.5  # so a 64 B frame takes 1.5 s on air

    def validate(self):
        if self.sound_speed <= 0:
            raise ValueError("channel.sound_speed must be > 0")
        if self.frequency_khz <= 0:
            raise ValueError("channel.frequency_khz must be > 0")
        if not 1.0 <= self.spreading_exponent <= 2.0:
            raise ValueError("channel.spreading_exponent must be in [1, 2]")
        if self.per_model not in (SNR_SIGMOID, FIXED_RANGE):
            raise ValueError(f"channel.per_model unknown: {self.per_model!r}")
        if self.data_rate_bps <= 0:
            raise ValueError("channel.data_rate_bps must be > 0")


@dataclass
class LinkSample:
    distance: float
    delay: float
    per: float
    snr_db: float


class Delivered:
    __slots__ = ("delay",)

    def __init__(self, delay: float):
        self.delay = delay


LOST = None  # frame_delivery returns Delivered(...) or LOST


def propagation_delay(distance: float, params: ChannelParams) -> float:
    if distance < 0:
        raise ValueError("distance must be >= 0")
    return distance / params.sound_speed


def thorp_absorption(frequency_khz: float) -> float:
    """Thorp absorption coefficient in dB/km for f in kHz."""
    if frequency_khz <= 0:
        raise ValueError("frequency must be > 0")
    f2 = frequency_khz * frequency_khz
    return 0.11 * f2 / (1.0 + f2) + 44.0 * f2 / (4100.0 + f2) + 2.75e-4 * f2 + 0.003


def transmission_loss_db(distance: float, params: ChannelParams) -> float:
    # spreading + absorption; clamp below 1 m so TL(0) is finite
    d = max(distance, 1.0)
    spreading = 10.0 * params.spreading_exponent * math.log10(d)
    absorption = thorp_absorption(params.frequency_khz) * d / 1000.0
    return spreading + absorption


def snr_db(distance: float, params: ChannelParams) -> float:
    return params.source_level_db - params.noise_level_db - transmission_loss_db(distance, params)


def bit_error_rate(snr: float, params: ChannelParams) -> float:
    # logistic in SNR: 0.5 at -inf, 0 at +inf, 0.25 at the midpoint
    x = (snr - params.ber_midpoint_db) / params.ber_slope_db
    if x > 60.0:
        return 0.0
    return 0.5 / (1.0 + math.exp(x))


def packet_error_rate(distance: float, frame_bits: int, params: ChannelParams) -> float:
    if params.per_model == FIXED_RANGE:
        return 0.0 if distance <= params.max_range_m else 1.0
    if distance <= 0.0:
        return 0.0
    ber = bit_error_rate(snr_db(distance, params), params)
    return 1.0 - (1.0 - ber) ** frame_bits


def link_sample(distance: float, frame_bits: int, params: ChannelParams) -> LinkSample:
    return LinkSample(
        distance=distance,
        delay=propagation_delay(distance, params),
        per=packet_error_rate(distance, frame_bits, params),
        snr_db=snr_db(distance, params),
    )


def frame_delivery(distance: float, frame_bits: int, params: ChannelParams,
                   rng: random.Random):
    """One Bernoulli delivery decision; Delivered(delay) or LOST."""
    if distance < 0:
        raise ValueError("distance must be >= 0")
    if frame_bits <= 0:
        raise ValueError("frame_bits must be > 0")
    per = packet_error_rate(distance, frame_bits, params)
    if per >= 1.0:
        return LOST
    if per > 0.0 and rng.random() < per:
        return LOST
    return Delivered(propagation_delay(distance, params))


def delivery_cutoff_m(frame_bits: int, params: ChannelParams,
                      per_ceiling: float = 0.999) -> float:
    """Distance beyond which PER exceeds per_ceiling; receivers past it are skipped."""
    if params.per_model == FIXED_RANGE:
        return params.max_range_m
    lo, hi = 1.0, 1.0
    while packet_error_rate(hi, frame_bits, params) < per_ceiling and hi < 1e7:
        hi *= 2.0
    if hi >= 1e7:
        return hi
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if packet_error_rate(mid, frame_bits, params) < per_ceiling:
            lo = mid
        else:
            hi = mid
    return hi


def airtime_s(size_bytes: int, params: ChannelParams) -> float:
    return size_bytes * 8.0 / params.data_rate_bps
