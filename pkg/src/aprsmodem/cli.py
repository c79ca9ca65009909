"""Command-line front end: ``encode``, ``decode``, ``framedump``, ``roundtrip``.

Exit codes: 0 success, 1 error, 2 no frames decoded (or, for ``roundtrip``,
not every trial decoded).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ax25, hdlc
from .afsk import ModemConfig
from .channel import ChannelSpec, apply_channel, frame_success_rate
from .errors import ModemError
from .hdlc import FramingConfig
from .modem import decode_raw, encode_frame
from .wav import read_wav, write_wav

EXIT_OK, EXIT_ERROR, EXIT_NO_FRAMES = 0, 1, 2


class CliError(Exception):
    pass


def _modem_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("modem")
    g.add_argument("--rate", type=int, help="sample rate in Hz (default 48000)")
    g.add_argument("--baud", type=int, default=1200)
    g.add_argument("--mark-hz", type=float, default=1200.0)
    g.add_argument("--space-hz", type=float, default=2200.0)
    return p


def _framing_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("framing")
    g.add_argument("--preamble-flags", type=int, default=25)
    g.add_argument("--postamble-flags", type=int, default=2)
    return p


def _channel_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("channel")
    g.add_argument("--seed", type=int)
    g.add_argument("--snr-db", type=float)
    g.add_argument("--gain", type=float, default=1.0)
    g.add_argument("--dc-offset", type=float, default=0.0)
    g.add_argument("--skew-ppm", type=float, default=0.0)
    return p


def _packet_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("packet", help="TNC2 text, e.g. 'SRC>DEST,PATH:info'")
    p.add_argument("--info-hex", help="info field as hex bytes (packet text must end with ':')")


def build_parser() -> argparse.ArgumentParser:
    modem, framing, channel = _modem_parent(), _framing_parent(), _channel_parent()
    parser = argparse.ArgumentParser(prog="aprsmodem", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", parents=[modem, framing, channel],
                         help="encode a packet into a WAV file")
    _packet_args(enc)
    enc.add_argument("out", help="output WAV path")

    dec = sub.add_parser("decode", parents=[modem], help="decode packets from a WAV file")
    dec.add_argument("wav")
    dec.add_argument("--format", choices=("tnc2", "hex", "json"), default="tnc2")

    dump = sub.add_parser("framedump", parents=[framing], help="annotated hex dump of a packet")
    _packet_args(dump)

    rt = sub.add_parser("roundtrip", parents=[modem, framing, channel],
                        help="encode, impair, decode and report the success rate")
    _packet_args(rt)
    rt.add_argument("--trials", type=int, default=100)
    return parser


def _modem_config(args, rate=None) -> ModemConfig:
    return ModemConfig(
        baud=args.baud, mark_hz=args.mark_hz, space_hz=args.space_hz,
        sample_rate=rate or args.rate or 48000,
    )


def _framing_config(args) -> FramingConfig:
    return FramingConfig(args.preamble_flags, args.postamble_flags)


def _channel_spec(args) -> ChannelSpec:
    return ChannelSpec(snr_db=args.snr_db, gain=args.gain, dc_offset=args.dc_offset,
                       rate_skew_ppm=args.skew_ppm, seed=args.seed)


def _channel_requested(args) -> bool:
    return (args.snr_db is not None or args.gain != 1.0 or args.dc_offset != 0.0
            or args.skew_ppm != 0.0)


def _frame(args) -> ax25.UiFrame:
    frame = ax25.parse_tnc2(args.packet)
    if args.info_hex is not None:
        if frame.info:
            raise CliError("--info-hex conflicts with info text in the packet")
        try:
            info = bytes.fromhex(args.info_hex)
        except ValueError as exc:
            raise CliError(f"--info-hex: {exc}") from exc
        frame = ax25.UiFrame(frame.destination, frame.source, frame.digipeaters, info=info)
    return frame


def cmd_encode(args) -> int:
    if _channel_requested(args) and args.seed is None:
        raise CliError("channel impairments need an explicit --seed")
    frame = _frame(args)
    fb = ax25.build_frame(frame)
    audio = encode_frame(frame, _modem_config(args), _framing_config(args))
    if _channel_requested(args):
        audio, report = apply_channel(audio, _channel_spec(args))
        if report.clipped:
            print(f"warning: {report.clipped} samples clipped", file=sys.stderr)
    write_wav(audio, args.out)
    print(f"frame bytes: {len(fb.wire)}")
    print(f"fcs: {fb.fcs.hex(' ').upper()}")
    print(f"duration: {audio.duration:.3f} s")
    return EXIT_OK


def _frame_json(raw: bytes) -> str:
    frame = ax25.parse_frame(raw)
    return json.dumps({
        "source": str(frame.source),
        "destination": str(frame.destination),
        "path": [str(d) for d in frame.digipeaters],
        "control": frame.control,
        "pid": frame.pid,
        "info": ax25.format_info(frame.info),
        "info_hex": frame.info.hex(),
        "fcs": raw[-2:].hex().upper(),
    })


def cmd_decode(args) -> int:
    audio = read_wav(args.wav)
    if args.rate and args.rate != audio.sample_rate:
        raise CliError(f"--rate {args.rate} disagrees with the file's {audio.sample_rate} Hz")
    found = 0
    for raw in decode_raw(audio, _modem_config(args, audio.sample_rate)):
        try:
            if args.format == "hex":
                line = ax25.hex_dump(raw)
            elif args.format == "json":
                line = _frame_json(raw)
            else:
                line = ax25.format_tnc2(ax25.parse_frame(raw))
        except ax25.FrameError:
            continue
        print(line)
        found += 1
    return EXIT_OK if found else EXIT_NO_FRAMES


def cmd_framedump(args) -> int:
    frame = _frame(args)
    fb = ax25.build_frame(frame)
    rows = []
    pos = 0
    for label, addr in [("dest", frame.destination), ("source", frame.source)] + [
        ("digi", d) for d in frame.digipeaters
    ]:
        raw = fb.payload[pos:pos + 7]
        rows.append((label, str(addr), f"{ax25.hex_dump(raw[:6])} | {raw[6]:02X}"))
        pos += 7
    rows.append(("control", "", f"{fb.payload[pos]:02X}"))
    rows.append(("pid", "", f"{fb.payload[pos + 1]:02X}"))
    rows.append(("info", f"{len(frame.info)} bytes", ax25.hex_dump(frame.info)))
    rows.append(("fcs", f"0x{fb.fcs_value:04X}", ax25.hex_dump(fb.fcs)))
    for label, note, data in rows:
        print(f"{label:<8} {note:<12} {data}")

    logical = hdlc.bytes_to_bits_lsb_first(fb.wire)
    stuffed = hdlc.stuff_bits(logical)
    framed = hdlc.add_flags(stuffed, _framing_config(args))
    print(f"stuffed bits: {len(stuffed) - len(logical)}")
    print(f"on-air bits: {len(framed)}")
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    if args.seed is None:
        raise CliError("roundtrip needs an explicit --seed")
    if args.trials < 1:
        raise CliError("--trials must be at least 1")
    rate = frame_success_rate(_frame(args), _channel_spec(args), args.trials,
                              _modem_config(args), _framing_config(args))
    print(f"success rate: {rate:.4f} ({round(rate * args.trials)}/{args.trials})")
    return EXIT_OK if rate == 1.0 else EXIT_NO_FRAMES


COMMANDS = {
    "encode": cmd_encode,
    "decode": cmd_decode,
    "framedump": cmd_framedump,
    "roundtrip": cmd_roundtrip,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ModemError, CliError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
