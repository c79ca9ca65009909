"""Bell 202 AFSK: continuous-phase modulator and correlator demodulator."""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InsufficientSignal
from .hdlc import BitStream, Stage

SUPPORTED_RATES = (8000, 11025, 22050, 44100, 48000)


@dataclass(frozen=True)
class ModemConfig:
    baud: int = 1200
    mark_hz: float = 1200.0
    space_hz: float = 2200.0
    sample_rate: int = 48000
    amplitude: float = 0.8

    def __post_init__(self):
        if self.baud <= 0:
            raise ConfigError("baud must be positive")
        if self.mark_hz == self.space_hz:
            raise ConfigError("mark and space frequencies must differ")
        if min(self.mark_hz, self.space_hz) <= 0:
            raise ConfigError("tone frequencies must be positive")
        # Nyquist, not 8x oversampling: 8 kHz audio must stay usable.
        if self.sample_rate <= 2 * max(self.mark_hz, self.space_hz):
            raise ConfigError(
                f"sample rate {self.sample_rate} Hz cannot carry a "
                f"{max(self.mark_hz, self.space_hz)} Hz tone"
            )
        if self.sample_rate < self.baud:
            raise ConfigError("need at least one sample per symbol")
        if not 0 < self.amplitude <= 1:
            raise ConfigError("amplitude must be in (0, 1]")

    @property
    def samples_per_symbol(self) -> float:
        return self.sample_rate / self.baud


@dataclass(frozen=True, eq=False)
class AudioBuffer:
    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64).ravel()
        if samples.size and np.max(np.abs(samples)) > 1.0:
            raise ValueError("samples must lie within [-1, 1]")
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate

    def __add__(self, other: "AudioBuffer") -> "AudioBuffer":
        if other.sample_rate != self.sample_rate:
            raise ValueError("cannot join buffers with different sample rates")
        return AudioBuffer(np.concatenate([self.samples, other.samples]), self.sample_rate)


def silence(seconds: float, sample_rate: int) -> AudioBuffer:
    return AudioBuffer(np.zeros(int(round(seconds * sample_rate))), sample_rate)


def _symbol_index(n_symbols: int, cfg: ModemConfig) -> np.ndarray:
    """Symbol number of every output sample, with exact fractional timing."""
    fs, baud = cfg.sample_rate, cfg.baud
    if isinstance(fs, (int, np.integer)) and isinstance(baud, (int, np.integer)):
        total = -(-n_symbols * fs // baud)
        return np.arange(total, dtype=np.int64) * baud // fs
    total = int(np.ceil(n_symbols * fs / baud))
    return np.minimum(np.floor(np.arange(total) * baud / fs).astype(np.int64), n_symbols - 1)


def modulate(levels: BitStream, cfg: ModemConfig = ModemConfig()) -> AudioBuffer:
    """Synthesize AFSK audio, mark tone for level 1 and space tone for level 0."""
    if levels.stage is not Stage.NRZI:
        raise ConfigError(f"modulate expects NRZI levels, got a {levels.stage.value} stream")
    if not len(levels):
        return AudioBuffer(np.zeros(0), cfg.sample_rate)
    per_sample = levels.bits[_symbol_index(len(levels), cfg)]
    freq = np.where(per_sample == 1, cfg.mark_hz, cfg.space_hz)
    step = 2 * np.pi * freq / cfg.sample_rate
    # phase of sample n is the sum of increments before it: no jumps at symbol edges
    phase = np.concatenate([[0.0], np.cumsum(step[:-1])])
    return AudioBuffer(cfg.amplitude * np.sin(phase), cfg.sample_rate)


def _tone_magnitude(x: np.ndarray, freq: float, fs: float, width: int) -> np.ndarray:
    n = np.arange(x.size)
    prod = x * np.exp(-2j * np.pi * freq / fs * n)
    csum = np.concatenate([[0], np.cumsum(prod)])
    start = np.clip(n - width // 2, 0, x.size)
    stop = np.clip(start + width, 0, x.size)
    return np.abs(csum[stop] - csum[start])


def discriminator(audio: AudioBuffer, cfg: ModemConfig = ModemConfig()) -> np.ndarray:
    """Mark minus space correlator magnitude over a one-symbol window
    centred on each sample. Positive means mark."""
    width = max(2, int(round(cfg.samples_per_symbol)))
    x = audio.samples
    return (_tone_magnitude(x, cfg.mark_hz, cfg.sample_rate, width)
            - _tone_magnitude(x, cfg.space_hz, cfg.sample_rate, width))


def demodulate(audio: AudioBuffer, cfg: ModemConfig = ModemConfig()) -> BitStream:
    """Recover NRZI levels from AFSK audio.

    Decisions are taken once per symbol at the current clock estimate.  When
    a decision differs from the previous one, the discriminator zero
    crossing between the two instants is located (to sub-sample precision)
    and the clock is pulled toward it by at most 1/16 symbol.
    """
    if audio.sample_rate != cfg.sample_rate:
        raise ConfigError(
            f"audio is {audio.sample_rate} Hz but modem is configured for {cfg.sample_rate} Hz"
        )
    d = discriminator(audio, cfg)
    n = d.size
    sps = cfg.samples_per_symbol
    width = max(2, int(round(sps)))
    # an even-length window centred on n balances one sample later
    bias = 0.5 if width % 2 == 0 else 0.0
    max_step = sps / 16
    positive = d > 0
    crossings = np.flatnonzero(positive[1:] != positive[:-1]).tolist()

    levels = []
    prev = 1
    t = sps / 2 - 0.5
    prev_i = 0
    while t < n - 0.5:
        i = int(t + 0.5)
        v = d[i]
        bit = prev if v == 0 else int(v > 0)
        if bit != prev and levels:
            lo = bisect_left(crossings, prev_i)
            hi = bisect_right(crossings, i - 1)
            if lo < hi:
                expected = t - sps / 2 + bias
                c = min(crossings[lo:hi], key=lambda k: abs(k - expected))
                z = c + d[c] / (d[c] - d[c + 1])
                err = z - expected
                t += min(max(err, -max_step), max_step)
        levels.append(bit)
        prev = bit
        prev_i = i
        t += sps
    return BitStream(np.array(levels, dtype=np.uint8), Stage.NRZI)


def spectrum(audio: AudioBuffer, pad: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Magnitude spectrum (frequencies, |X|) of the Hann-windowed audio."""
    x = audio.samples - audio.samples.mean()
    size = x.size * pad
    mag = np.abs(np.fft.rfft(x * np.hanning(x.size), n=size))
    return np.fft.rfftfreq(size, 1 / audio.sample_rate), mag


def measure_tone_frequencies(audio: AudioBuffer, band: tuple[float, float] = (800.0, 2800.0),
                             min_separation: float = 300.0) -> tuple[float, float]:
    """Estimate the two tone frequencies present in ``audio``.

    Returns the two strongest spectral peaks inside ``band`` that are at
    least ``min_separation`` apart, lower frequency first.  Peak positions
    are refined by parabolic interpolation on the log magnitude.
    """
    if audio.samples.size < 16:
        raise InsufficientSignal("audio too short")
    freqs, mag = spectrum(audio, pad=4)
    inside = (freqs >= band[0]) & (freqs <= band[1])
    idx = np.flatnonzero(inside)
    floor = np.median(mag[idx])
    top = mag[idx].max()
    if top <= 0 or top < 10 * floor:
        raise InsufficientSignal("no tone above the noise floor")
    peaks = [k for k in idx[1:-1] if mag[k] >= mag[k - 1] and mag[k] > mag[k + 1]]
    peaks.sort(key=lambda k: mag[k], reverse=True)
    first = peaks[0]
    threshold = max(10 * floor, 0.1 * mag[first])
    second = next(
        (k for k in peaks[1:]
         if abs(freqs[k] - freqs[first]) >= min_separation and mag[k] >= threshold),
        None,
    )
    if second is None:
        raise InsufficientSignal("only one tone present")
    found = sorted(_refine(freqs, mag, k) for k in (first, second))
    return found[0], found[1]


def _refine(freqs: np.ndarray, mag: np.ndarray, k: int) -> float:
    a, b, c = np.log(mag[k - 1:k + 2] + 1e-300)
    denom = a - 2 * b + c
    shift = 0.5 * (a - c) / denom if denom else 0.0
    return float(freqs[k] + shift * (freqs[1] - freqs[0]))
