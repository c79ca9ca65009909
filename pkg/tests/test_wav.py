import struct

import numpy as np
import pytest

from aprsmodem.afsk import AudioBuffer, ModemConfig
from aprsmodem.errors import CorruptHeader, UnsupportedFormat
from aprsmodem.modem import encode_frame
from aprsmodem.wav import parse_wav, read_wav, to_pcm16, write_wav


def _header_fields(blob):
    return struct.unpack_from("<4sI4s4sIHHIIHH4sI", blob)


def test_header_arithmetic(tmp_path):
    path = tmp_path / "a.wav"
    write_wav(AudioBuffer(np.zeros(480), 48000), path)
    blob = path.read_bytes()
    riff, riff_size, _, _, fmt_size, tag, ch, rate, byte_rate, align, bits, _, data_size = _header_fields(blob)
    assert (riff, tag, ch, rate, bits, align) == (b"RIFF", 1, 1, 48000, 16, 2)
    assert byte_rate == 96000
    assert data_size == 960
    assert riff_size == len(blob) - 8 == 36 + 960


def test_sample_mapping():
    assert to_pcm16(np.array([0.0, 1.0, -1.0])).tolist() == [0, 32767, -32767]
    # half a step rounds away from zero on both sides
    half = 0.5 / 32767
    assert to_pcm16(np.array([half, -half])).tolist() == [1, -1]


def test_round_trip_within_quantisation(tmp_path, golden_frame):
    audio = encode_frame(golden_frame, ModemConfig(sample_rate=22050))
    path = tmp_path / "f.wav"
    write_wav(audio, path)
    back = read_wav(path)
    assert back.sample_rate == 22050
    assert np.max(np.abs(back.samples - audio.samples)) <= 1 / 32767


def test_write_read_write_is_byte_identical(tmp_path, golden_frame):
    first, second = tmp_path / "1.wav", tmp_path / "2.wav"
    write_wav(encode_frame(golden_frame), first)
    write_wav(read_wav(first), second)
    assert first.read_bytes() == second.read_bytes()


def _riff(fmt_chunk: bytes, data: bytes, extra: bytes = b"") -> bytes:
    body = b"WAVE" + b"fmt " + struct.pack("<I", len(fmt_chunk)) + fmt_chunk + extra
    body += b"data" + struct.pack("<I", len(data)) + data
    return b"RIFF" + struct.pack("<I", len(body)) + body


def test_float_wav_rejected():
    fmt = struct.pack("<HHIIHH", 3, 1, 8000, 32000, 4, 32)
    with pytest.raises(UnsupportedFormat):
        parse_wav(_riff(fmt, np.zeros(4, "<f4").tobytes()))


def test_truncated_header(tmp_path):
    path = tmp_path / "t.wav"
    write_wav(AudioBuffer(np.zeros(10), 8000), path)
    path.write_bytes(path.read_bytes()[:20])
    with pytest.raises(CorruptHeader):
        read_wav(path)


def test_not_riff():
    with pytest.raises(CorruptHeader):
        parse_wav(b"hello world, not a wav")


def test_stereo_is_averaged_and_extra_chunks_skipped():
    fmt = struct.pack("<HHIIHH", 1, 2, 8000, 32000, 4, 16)
    frames = np.array([[32767, -32767], [16000, 16000]], dtype="<i2")
    extra = b"LIST" + struct.pack("<I", 3) + b"abc" + b"\x00"
    audio = parse_wav(_riff(fmt, frames.tobytes(), extra))
    assert audio.samples.tolist() == pytest.approx([0.0, 16000 / 32767])


def test_eight_bit_unsigned_is_widened():
    fmt = struct.pack("<HHIIHH", 1, 1, 8000, 8000, 1, 8)
    audio = parse_wav(_riff(fmt, bytes([128, 255, 1])))
    assert audio.samples.tolist() == pytest.approx([0.0, 1.0, -1.0])


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        read_wav(tmp_path / "nope.wav")
