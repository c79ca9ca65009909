"""Deterministic audio channel impairments and a frame success-rate harness.

Noise comes from numpy's PCG64 bit generator (``np.random.Generator`` with
``standard_normal``), seeded from ``ChannelSpec.seed``.  Per-trial streams in
:func:`frame_success_rate` use ``np.random.SeedSequence([seed, trial])``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import ax25
from .afsk import AudioBuffer, ModemConfig
from .errors import ConfigError
from .hdlc import FramingConfig
from .modem import decode_audio, encode_frame

# Samples below this fraction of the peak are treated as silence when
# measuring the reference signal power.
SILENCE_FRACTION = 1e-3


@dataclass(frozen=True)
class ChannelSpec:
    snr_db: float | None = None
    gain: float = 1.0
    dc_offset: float = 0.0
    rate_skew_ppm: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.gain <= 0:
            raise ConfigError("gain must be positive")


@dataclass(frozen=True)
class ChannelReport:
    clipped: int
    signal_rms: float
    noise_rms: float

    @property
    def measured_snr_db(self) -> float:
        if self.noise_rms == 0:
            return float("inf")
        return 20 * np.log10(self.signal_rms / self.noise_rms)


def make_rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def signal_rms(x: np.ndarray) -> float:
    """RMS over the non-silent samples of ``x``."""
    if not x.size:
        return 0.0
    active = np.abs(x) > SILENCE_FRACTION * np.max(np.abs(x))
    return float(np.sqrt(np.mean(x[active] ** 2))) if active.any() else 0.0


def resample_skew(x: np.ndarray, ppm: float) -> np.ndarray:
    """Linear-interpolation resample as if the receiver clock were off by ``ppm``."""
    if ppm == 0 or x.size < 2:
        return x.copy()
    ratio = 1 + ppm * 1e-6
    points = np.arange(0, x.size - 1, ratio)
    return np.interp(points, np.arange(x.size), x)


def apply_channel(audio: AudioBuffer, spec: ChannelSpec) -> tuple[AudioBuffer, ChannelReport]:
    """Resample, scale, add noise and DC, then clip to [-1, 1].

    The noise level is set against the RMS of the non-silent signal as it
    reaches the noise stage (after skew and gain).
    """
    y = resample_skew(audio.samples, spec.rate_skew_ppm) * spec.gain
    ref = signal_rms(y)
    noise_rms = 0.0
    if spec.snr_db is not None and ref > 0:
        noise = make_rng(spec.seed).standard_normal(y.size) * ref * 10 ** (-spec.snr_db / 20)
        noise_rms = float(np.sqrt(np.mean(noise ** 2)))
        y = y + noise
    y = y + spec.dc_offset
    clipped = int(np.count_nonzero(np.abs(y) > 1.0))
    y = np.clip(y, -1.0, 1.0)
    return AudioBuffer(y, audio.sample_rate), ChannelReport(clipped, ref, noise_rms)


def trial_seed(seed: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed, trial]).generate_state(1, np.uint64)[0])


def frame_success_rate(frame: ax25.UiFrame, spec: ChannelSpec, trials: int,
                       cfg: ModemConfig = ModemConfig(),
                       framing: FramingConfig = FramingConfig()) -> float:
    """Fraction of trials in which ``frame`` comes back intact through the channel."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    clean = encode_frame(frame, cfg, framing)
    ok = 0
    for trial in range(trials):
        impaired, _ = apply_channel(clean, replace(spec, seed=trial_seed(spec.seed, trial)))
        if frame in decode_audio(impaired, cfg):
            ok += 1
    return ok / trials
