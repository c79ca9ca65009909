"""Exit criteria for the modem.

Each test records a PASS/FAIL line shown in the pytest terminal summary
under "acceptance criteria", with its measured runtime.
"""

import random
import string
import time

import numpy as np
import pytest

from aprsmodem import ax25, hdlc
from aprsmodem.afsk import SUPPORTED_RATES, ModemConfig, modulate
from aprsmodem.ax25 import AddressField, UiFrame
from aprsmodem.channel import ChannelSpec, frame_success_rate
from aprsmodem.errors import BadFcs
from aprsmodem.hdlc import BitStream, FramingConfig, Stage
from aprsmodem.modem import decode_audio, encode_frame
from aprsmodem.wav import read_wav, write_wav

from conftest import GOLDEN_TEXT
from oracles import crc_x25_bitwise, lsb_first

MAX_FRAME = 7 * 10 + 2 + 256 + 2


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def check(criterion, number, text, limit, body):
    """Run ``body`` under a timer, record the outcome, re-raise failures."""
    with Timer() as t:
        try:
            body()
            ok, err = True, None
        except AssertionError as exc:
            ok, err = False, exc
    within = t.elapsed < limit
    criterion(number, text, ok and within, f"({t.elapsed:.2f}s, limit {limit}s)")
    if err is not None:
        raise err
    assert within, f"took {t.elapsed:.2f}s, limit {limit}s"


def test_1_golden_vector(criterion, golden_frame, tmp_path):
    def body():
        frame = ax25.parse_tnc2(GOLDEN_TEXT)
        assert frame == golden_frame
        fb = ax25.build_frame(frame)
        assert len(fb.payload) == 52
        assert fb.payload[28] == 0x03
        assert fb.payload[29] == 0xF0
        path = tmp_path / "golden.wav"
        write_wav(encode_frame(frame), path)
        decoded = decode_audio(read_wav(path))
        assert [ax25.format_tnc2(f) for f in decoded] == [GOLDEN_TEXT]

    check(criterion, 1, "golden APTCM0 test packet: layout and WAV round trip", 1.0, body)


def test_2_crc_oracle(criterion):
    def body():
        assert crc_x25_bitwise(b"123456789") == 0x906E
        assert ax25.compute_fcs(b"123456789") == 0x906E
        rng = random.Random(1000)
        for _ in range(1000):
            p = rng.randbytes(rng.randrange(1, MAX_FRAME - 1))
            reflected = lsb_first(ax25.compute_fcs(p).to_bytes(2, "little"))
            assert lsb_first(ax25.compute_fcs_paper_procedure(p)) == reflected
            assert ax25.compute_fcs(p) == crc_x25_bitwise(p)

    check(criterion, 2, "CRC-16/X-25 check value and procedure equivalence", 5.0, body)


def test_3_bit_layer_round_trip(criterion):
    def body():
        rng = np.random.default_rng(3)
        flag = hdlc.FLAG_BITS
        cfg = FramingConfig()
        for _ in range(10_000):
            n = int(rng.integers(hdlc.MIN_FRAME_BITS // 8, MAX_FRAME + 1))
            data = rng.integers(0, 256, n, dtype=np.uint8).tobytes()
            stuffed = hdlc.stuff_bits(hdlc.bytes_to_bits_lsb_first(data))
            assert flag not in stuffed.to_str()
            level = int(rng.integers(0, 2))
            levels = hdlc.nrzi_encode(hdlc.add_flags(stuffed, cfg), level)
            assert hdlc.find_frames(hdlc.nrzi_decode(levels, prior_level=level)) == [data]
            assert hdlc.find_frames(hdlc.nrzi_decode(levels, prior_level=None)) == [data]

    check(criterion, 3, "bit-layer round trip on 10,000 random frames", 30.0, body)


@pytest.mark.parametrize("fs", [48000, 44100])
def test_4_spectral_check(criterion, fs):
    def body():
        cfg = ModemConfig(sample_rate=fs)
        for bit, tone in ((1, 1200), (0, 2200)):
            x = modulate(BitStream([bit] * 1200, Stage.NRZI), cfg).samples
            mag = np.abs(np.fft.rfft(x))
            bin_hz = fs / x.size
            assert abs(np.argmax(mag) * bin_hz - tone) <= bin_hz

    check(criterion, f"4@{fs}", "mark 1200 Hz / space 2200 Hz FFT peak within one bin", 5.0, body)


def _random_frame(rng: random.Random) -> UiFrame:
    def addr():
        call = "".join(rng.choice(string.ascii_uppercase + string.digits)
                       for _ in range(rng.randint(1, 6)))
        return AddressField(call, rng.randint(0, 15))

    digis = tuple(
        AddressField(a.callsign, a.ssid, has_been_repeated=rng.random() < 0.3)
        for a in (addr() for _ in range(rng.randint(0, 8)))
    )
    return UiFrame(addr(), addr(), digis, info=rng.randbytes(rng.randint(1, 256)))


def test_5_modem_round_trip_all_rates(criterion):
    def body():
        rng = random.Random(5)
        frames = [_random_frame(rng) for _ in range(100)]
        for fs in SUPPORTED_RATES:
            cfg = ModemConfig(sample_rate=fs)
            decoded = sum(decode_audio(encode_frame(f, cfg), cfg) == [f] for f in frames)
            assert decoded == 100, f"{decoded}/100 at {fs} Hz"

    check(criterion, 5, "100 random frames decode at 8k/11.025k/22.05k/44.1k/48k", 60.0, body)


def test_6_channel_robustness(criterion, golden_frame):
    rates = {}

    def body():
        for snr in (40, 10, 0):
            rates[snr] = frame_success_rate(golden_frame, ChannelSpec(snr_db=snr, seed=6), 200)
        assert rates[40] >= 0.99
        assert rates[40] >= rates[10] >= rates[0]

    check(criterion, 6, "success >= 0.99 at 40 dB, non-increasing over 40/10/0 dB", 120.0, body)
    print("success rates:", rates)


def test_7_single_bit_errors_detected(criterion, golden_frame):
    def body():
        wire = ax25.build_frame(golden_frame).wire
        assert len(wire) * 8 == 432
        for bit in range(432):
            bad = bytearray(wire)
            bad[bit // 8] ^= 1 << (bit % 8)
            with pytest.raises(BadFcs):
                ax25.parse_frame(bytes(bad))

    check(criterion, 7, "all 432 single-bit flips raise BadFcs", 1.0, body)
