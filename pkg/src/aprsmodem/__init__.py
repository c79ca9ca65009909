"""Software AFSK-1200 / AX.25 UI-frame modem for APRS."""

from .afsk import AudioBuffer, ModemConfig, demodulate, measure_tone_frequencies, modulate
from .ax25 import (
    AddressField,
    FrameBytes,
    Role,
    UiFrame,
    build_frame,
    compute_fcs,
    compute_fcs_paper_procedure,
    encode_address,
    format_tnc2,
    parse_frame,
    parse_tnc2,
)
from .channel import ChannelSpec, apply_channel, frame_success_rate
from .hdlc import BitStream, FramingConfig, Stage
from .modem import decode_audio, encode_frame
from .wav import read_wav, write_wav

__version__ = "0.1.0"
