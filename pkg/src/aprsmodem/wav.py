"""Mono 16-bit PCM WAV reading and writing.

Writing always produces the canonical 44-byte header.  Reading walks the RIFF
chunk list so extra chunks (LIST, fact, ...) are skipped, and rejects any
format other than integer PCM.
"""

from __future__ import annotations

import os
import struct

import numpy as np

from .afsk import AudioBuffer
from .errors import CorruptHeader, UnsupportedFormat

WAVE_FORMAT_PCM = 0x0001
WAVE_FORMAT_EXTENSIBLE = 0xFFFE
FULL_SCALE = 32767


def to_pcm16(samples: np.ndarray) -> np.ndarray:
    """Symmetric mapping, rounding half away from zero."""
    scaled = np.asarray(samples, dtype=np.float64) * FULL_SCALE
    return (np.sign(scaled) * np.floor(np.abs(scaled) + 0.5)).astype("<i2")


def write_wav(audio: AudioBuffer, path: str | os.PathLike) -> None:
    data = to_pcm16(audio.samples).tobytes()
    rate = int(audio.sample_rate)
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(data), b"WAVE",
        b"fmt ", 16, WAVE_FORMAT_PCM, 1, rate, rate * 2, 2, 16,
        b"data", len(data),
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(data)


def read_wav(path: str | os.PathLike) -> AudioBuffer:
    with open(path, "rb") as fh:
        blob = fh.read()
    return parse_wav(blob)


def parse_wav(blob: bytes) -> AudioBuffer:
    if len(blob) < 12 or blob[:4] != b"RIFF" or blob[8:12] != b"WAVE":
        raise CorruptHeader("not a RIFF/WAVE file")
    fmt = None
    data = None
    pos = 12
    while pos + 8 <= len(blob):
        cid, size = struct.unpack_from("<4sI", blob, pos)
        body = blob[pos + 8:pos + 8 + size]
        if cid == b"fmt ":
            if len(body) < 16:
                raise CorruptHeader("fmt chunk too short")
            fmt = struct.unpack_from("<HHIIHH", body)
            if fmt[0] == WAVE_FORMAT_EXTENSIBLE:
                if len(body) < 26:
                    raise CorruptHeader("extensible fmt chunk too short")
                fmt = (struct.unpack_from("<H", body, 24)[0],) + fmt[1:]
        elif cid == b"data":
            if len(body) < size:
                raise CorruptHeader("data chunk runs past end of file")
            data = body
            break
        pos += 8 + size + (size & 1)
    if fmt is None:
        raise CorruptHeader("missing fmt chunk")
    if data is None:
        raise CorruptHeader("missing data chunk")

    tag, channels, rate, _, block_align, bits = fmt
    if tag != WAVE_FORMAT_PCM:
        raise UnsupportedFormat(f"format tag 0x{tag:04X} is not integer PCM")
    if channels < 1 or rate <= 0:
        raise CorruptHeader("bad channel count or sample rate")
    if bits == 16:
        samples = np.frombuffer(data[: len(data) // 2 * 2], dtype="<i2") / FULL_SCALE
    elif bits == 8:
        samples = (np.frombuffer(data, dtype=np.uint8).astype(np.float64) - 128) / 127
    else:
        raise UnsupportedFormat(f"{bits}-bit PCM is not supported")
    frames = samples.size // channels
    samples = samples[: frames * channels].reshape(frames, channels).mean(axis=1)
    return AudioBuffer(np.clip(samples, -1.0, 1.0), rate)
