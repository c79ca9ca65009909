"""End-to-end encode (frame to audio) and decode (audio to frames)."""

from __future__ import annotations

import logging
import warnings

from . import ax25, hdlc
from .afsk import AudioBuffer, ModemConfig, demodulate, modulate
from .errors import FrameError, NotUiFrame
from .hdlc import BitStream, FramingConfig

log = logging.getLogger(__name__)


def frame_levels(frame: ax25.UiFrame, framing: FramingConfig = FramingConfig(),
                 initial_level: int = 1) -> BitStream:
    return hdlc.encode_bits(ax25.build_frame(frame).wire, framing, initial_level)


def encode_frame(frame: ax25.UiFrame, cfg: ModemConfig = ModemConfig(),
                 framing: FramingConfig = FramingConfig()) -> AudioBuffer:
    return modulate(frame_levels(frame, framing), cfg)


def decode_raw(audio: AudioBuffer, cfg: ModemConfig = ModemConfig()) -> list[bytes]:
    """FCS-valid byte sequences (payload + FCS) found in ``audio``."""
    bits = hdlc.nrzi_decode(demodulate(audio, cfg))
    return [raw for raw in hdlc.find_frames(bits) if ax25.check_fcs(raw)]


def decode_audio(audio: AudioBuffer, cfg: ModemConfig = ModemConfig()) -> list[ax25.UiFrame]:
    frames = []
    for raw in decode_raw(audio, cfg):
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", NotUiFrame)
                frames.append(ax25.parse_frame(raw))
        except FrameError as exc:
            log.debug("dropping undecodable frame %s: %s", ax25.hex_dump(raw), exc)
    return frames
