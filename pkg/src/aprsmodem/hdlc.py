"""HDLC bit layer: LSB-first serialization, bit stuffing, flags and NRZI.

Bit streams are numpy ``uint8`` arrays of 0/1 tagged with the stage they are
at, so applying transforms out of order fails loudly.  Stuffing and flag
search run on '0'/'1' strings, which keeps them fast on long streams.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, StageError, StuffingViolation

FLAG = 0x7E
FLAG_BITS = "01111110"
# Shortest inter-flag span kept by find_frames, in unstuffed bits.
MIN_FRAME_BITS = 136

_FLAG_RE = re.compile(FLAG_BITS)


class Stage(enum.Enum):
    LOGICAL = "logical"
    STUFFED = "stuffed"
    FRAMED = "framed"
    NRZI = "nrzi"


@dataclass(frozen=True, eq=False)
class BitStream:
    bits: np.ndarray
    stage: Stage = Stage.LOGICAL

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.uint8).ravel()
        if bits.size and bits.max() > 1:
            raise ValueError("bit streams hold only 0 and 1")
        object.__setattr__(self, "bits", bits)

    def __len__(self):
        return self.bits.size

    def __eq__(self, other):
        if not isinstance(other, BitStream):
            return NotImplemented
        return self.stage is other.stage and np.array_equal(self.bits, other.bits)

    def to_str(self) -> str:
        return _to_str(self.bits)


@dataclass(frozen=True)
class FramingConfig:
    preamble_flags: int = 25
    postamble_flags: int = 2

    def __post_init__(self):
        if self.preamble_flags < 1 or self.postamble_flags < 1:
            raise ConfigError("at least one flag is needed on each side of a frame")


def _to_str(bits: np.ndarray) -> str:
    return (bits + ord("0")).tobytes().decode("ascii")


def _from_str(text: str) -> np.ndarray:
    return np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")


def _expect(stream: BitStream, stage: Stage) -> None:
    if stream.stage is not stage:
        raise StageError(f"expected a {stage.value} stream, got {stream.stage.value}")


def bytes_to_bits_lsb_first(data: bytes) -> BitStream:
    arr = np.frombuffer(bytes(data), dtype=np.uint8)
    return BitStream(np.unpackbits(arr, bitorder="little"), Stage.LOGICAL)


def bits_to_bytes_lsb_first(bits: np.ndarray) -> bytes:
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size % 8:
        raise ValueError("bit count is not a multiple of 8")
    return np.packbits(bits, bitorder="little").tobytes()


def stuff_bits(stream: BitStream) -> BitStream:
    """Insert a 0 after every run of five 1s."""
    _expect(stream, Stage.LOGICAL)
    # str.replace scans left to right without overlap, which is exactly the
    # run counter resetting after each insertion.
    return BitStream(_from_str(stream.to_str().replace("11111", "111110")), Stage.STUFFED)


def unstuff_bits(stream: BitStream) -> BitStream:
    _expect(stream, Stage.STUFFED)
    text = stream.to_str()
    if "111111" in text:
        raise StuffingViolation("six consecutive 1s inside a stuffed body")
    return BitStream(_from_str(text.replace("111110", "11111")), Stage.LOGICAL)


def add_flags(stream: BitStream, cfg: FramingConfig = FramingConfig()) -> BitStream:
    _expect(stream, Stage.STUFFED)
    flag = _from_str(FLAG_BITS)
    bits = np.concatenate(
        [np.tile(flag, cfg.preamble_flags), stream.bits, np.tile(flag, cfg.postamble_flags)]
    )
    return BitStream(bits, Stage.FRAMED)


def nrzi_encode(stream: BitStream, initial_level: int = 1) -> BitStream:
    """0 toggles the line level, 1 holds it."""
    _expect(stream, Stage.FRAMED)
    toggles = (stream.bits == 0).astype(np.uint8)
    levels = (np.cumsum(toggles) + initial_level) % 2
    return BitStream(levels, Stage.NRZI)


def nrzi_decode(stream: BitStream, prior_level: int | None = 1) -> BitStream:
    """1 where consecutive levels match, 0 where they differ.

    ``prior_level`` is the line level before the first symbol.  Passing None
    compares the first level with itself, which makes the output exactly
    invariant under global polarity inversion; otherwise only the first bit
    can depend on polarity, and that bit always belongs to a preamble flag.
    """
    _expect(stream, Stage.NRZI)
    levels = stream.bits
    if not levels.size:
        return BitStream(levels, Stage.FRAMED)
    first = levels[0] if prior_level is None else prior_level
    prev = np.concatenate([[first], levels[:-1]]).astype(np.uint8)
    return BitStream((levels == prev).astype(np.uint8), Stage.FRAMED)


def encode_bits(data: bytes, cfg: FramingConfig = FramingConfig(), initial_level: int = 1) -> BitStream:
    """Full bit-layer encode of a frame (payload + FCS) to NRZI levels."""
    return nrzi_encode(add_flags(stuff_bits(bytes_to_bits_lsb_first(data)), cfg), initial_level)


def find_frames(stream: BitStream, min_bits: int = MIN_FRAME_BITS) -> list[bytes]:
    """Extract byte sequences found between flags.

    Spans that break the stuffing rule, don't unstuff to whole bytes, or are
    shorter than ``min_bits`` are dropped.  Adjacent frames may share a flag.
    """
    _expect(stream, Stage.FRAMED)
    text = stream.to_str()
    frames = []
    prev_end = None
    for m in _FLAG_RE.finditer(text):
        if prev_end is not None and m.start() - prev_end >= min_bits:
            span = text[prev_end:m.start()]
            if "111111" not in span:
                body = span.replace("111110", "11111")
                if len(body) % 8 == 0 and len(body) >= min_bits:
                    frames.append(bits_to_bytes_lsb_first(_from_str(body)))
        prev_end = m.end()
    return frames


def dump_bits(stream: BitStream) -> str:
    """Debug dump: '0'/'1' in transmission order, a space every 8 bits,
    and '|' around each flag found in the stream."""
    text = stream.to_str()
    out = []
    pos = 0
    for m in _FLAG_RE.finditer(text) if stream.stage is Stage.FRAMED else ():
        out.append(_group(text[pos:m.start()]))
        out.append("|" + FLAG_BITS + "|")
        pos = m.end()
    out.append(_group(text[pos:]))
    return " ".join(p for p in out if p).replace("| |", "|")


def _group(text: str) -> str:
    return " ".join(text[i:i + 8] for i in range(0, len(text), 8))
