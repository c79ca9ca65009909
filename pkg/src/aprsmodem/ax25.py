"""AX.25 UI frames: address encoding, FCS, build/parse and TNC2 text.

The frame layout on the wire (between flags) is::

    dest(7) source(7) digis(0-56) control(1) pid(1) info(1-256) fcs(2)

Every address byte carries its character shifted left by one bit, so bit 0
is free to act as the address-extension marker in the SSID octet.
"""

from __future__ import annotations

import dataclasses
import enum
import re
import warnings
from dataclasses import dataclass, field

from .errors import (
    BadFcs,
    FrameError,
    InfoFieldSize,
    InvalidCallsign,
    InvalidSsid,
    MalformedAddressBlock,
    NotUiFrame,
    PacketSyntaxError,
    TooManyDigipeaters,
)

UI_CONTROL = 0x03
PID_NO_L3 = 0xF0
MAX_DIGIPEATERS = 8
MAX_INFO = 256
# 2 addresses + control + pid + 1 info byte + fcs
MIN_FRAME_LEN = 7 + 7 + 1 + 1 + 1 + 2
# Good-frame residue of the reflected X-25 CRC (after final inversion)
FCS_RESIDUE = 0x0F47

DEFAULT_TOCALL = "APTCM0"

_CALLSIGN_RE = re.compile(r"[A-Z0-9]{1,6}\Z")


class Role(enum.Enum):
    DESTINATION = "destination"
    SOURCE = "source"
    DIGIPEATER = "digipeater"


@dataclass(frozen=True)
class AddressField:
    callsign: str
    ssid: int = 0
    is_last: bool = False
    has_been_repeated: bool = False

    def __post_init__(self):
        if not isinstance(self.callsign, str) or not _CALLSIGN_RE.match(self.callsign):
            raise InvalidCallsign(
                f"callsign {self.callsign!r} must be 1-6 upper-case letters or digits"
            )
        if not isinstance(self.ssid, int) or not 0 <= self.ssid <= 15:
            raise InvalidSsid(f"SSID {self.ssid!r} out of range 0-15")

    @classmethod
    def parse(cls, text: str) -> "AddressField":
        """Parse ``CALL``, ``CALL-N`` or ``CALL-N*`` (``*`` = already repeated)."""
        repeated = text.endswith("*")
        if repeated:
            text = text[:-1]
        call, sep, ssid_text = text.partition("-")
        ssid = 0
        if sep:
            if not ssid_text.isdigit():
                raise InvalidSsid(f"bad SSID in {text!r}")
            ssid = int(ssid_text)
        return cls(call, ssid, has_been_repeated=repeated)

    def __str__(self):
        text = self.callsign if self.ssid == 0 else f"{self.callsign}-{self.ssid}"
        return text + ("*" if self.has_been_repeated else "")


@dataclass(frozen=True)
class UiFrame:
    """An AX.25 UI frame.

    ``is_last`` flags on the addresses are normalised on construction so
    that only the final address of the block carries the marker.
    """

    destination: AddressField
    source: AddressField
    digipeaters: tuple[AddressField, ...] = ()
    control: int = UI_CONTROL
    pid: int = PID_NO_L3
    info: bytes = b""

    def __post_init__(self):
        addrs = [self.destination, self.source, *self.digipeaters]
        fixed = [
            dataclasses.replace(a, is_last=(i == len(addrs) - 1))
            for i, a in enumerate(addrs)
        ]
        object.__setattr__(self, "destination", fixed[0])
        object.__setattr__(self, "source", fixed[1])
        object.__setattr__(self, "digipeaters", tuple(fixed[2:]))
        object.__setattr__(self, "info", bytes(self.info))

    @property
    def addresses(self) -> tuple[AddressField, ...]:
        return (self.destination, self.source, *self.digipeaters)


@dataclass(frozen=True)
class FrameBytes:
    payload: bytes
    fcs: bytes = field(repr=False)

    @property
    def fcs_value(self) -> int:
        return int.from_bytes(self.fcs, "little")

    @property
    def wire(self) -> bytes:
        """Payload followed by the FCS in transmission order."""
        return self.payload + self.fcs

    def hex(self) -> str:
        return hex_dump(self.wire)


def hex_dump(data: bytes) -> str:
    return " ".join(f"{b:02X}" for b in data)


# -- addresses ---------------------------------------------------------------

def encode_address(addr: AddressField, role: Role, *, c_bit: bool | None = None) -> bytes:
    """Encode one address into its 7-byte on-wire form.

    Bit 7 of the SSID octet is the command/response bit for destination and
    source (``c_bit``, defaulting to 1 for destination and 0 for source) and
    the has-been-repeated bit for digipeaters.
    """
    role = Role(role)
    if role is Role.DIGIPEATER:
        top = addr.has_been_repeated
    elif c_bit is None:
        top = role is Role.DESTINATION
    else:
        top = c_bit
    call = addr.callsign.ljust(6).encode("ascii")
    octet = 0x60 | (addr.ssid << 1) | (0x80 if top else 0) | (1 if addr.is_last else 0)
    return bytes(c << 1 for c in call) + bytes([octet])


def decode_address(raw: bytes, role: Role) -> AddressField:
    if len(raw) != 7:
        raise MalformedAddressBlock("address must be 7 bytes")
    if any(b & 1 for b in raw[:6]):
        raise MalformedAddressBlock("extension bit set inside callsign bytes")
    call = bytes(b >> 1 for b in raw[:6]).decode("ascii").rstrip(" ")
    octet = raw[6]
    try:
        return AddressField(
            call,
            (octet >> 1) & 0x0F,
            is_last=bool(octet & 1),
            has_been_repeated=bool(octet & 0x80) and Role(role) is Role.DIGIPEATER,
        )
    except FrameError as exc:
        raise MalformedAddressBlock(str(exc)) from exc


# -- FCS ---------------------------------------------------------------------

def _make_table(poly: int = 0x8408) -> tuple[int, ...]:
    table = []
    for n in range(256):
        crc = n
        for _ in range(8):
            crc = (crc >> 1) ^ poly if crc & 1 else crc >> 1
        table.append(crc)
    return tuple(table)


_FCS_TABLE = _make_table()


def compute_fcs(payload: bytes) -> int:
    """CRC-16/X-25 of ``payload`` (reflected, init 0xFFFF, xorout 0xFFFF)."""
    crc = 0xFFFF
    for b in payload:
        crc = (crc >> 8) ^ _FCS_TABLE[(crc ^ b) & 0xFF]
    return crc ^ 0xFFFF


def _reverse8(b: int) -> int:
    return int(f"{b:08b}"[::-1], 2)


def compute_fcs_paper_procedure(payload: bytes) -> bytes:
    """FCS built the way a byte-oriented MSB-first firmware would build it.

    A non-reflected CRC register (poly 0x1021) is clocked MSB first over each
    byte after its bit order has been swapped, i.e. in on-air order. The
    16-bit result is stored little-endian, its two octets are exchanged,
    and each octet is bit-swapped for LSB-first transmission. Returns the
    two FCS bytes in transmission order, directly comparable to
    ``compute_fcs(p).to_bytes(2, "little")``.
    """
    crc = 0xFFFF
    for b in payload:
        crc ^= _reverse8(b) << 8
        for _ in range(8):
            crc = ((crc << 1) ^ 0x1021) if crc & 0x8000 else crc << 1
            crc &= 0xFFFF
    crc ^= 0xFFFF
    stored = [crc & 0xFF, crc >> 8]
    exchanged = stored[::-1]
    return bytes(_reverse8(b) for b in exchanged)


def check_fcs(data: bytes) -> bool:
    """True when ``data`` (payload + FCS) leaves the good-frame residue."""
    return len(data) > 2 and compute_fcs(data) == FCS_RESIDUE


# -- frames ------------------------------------------------------------------

def validate_frame(frame: UiFrame) -> None:
    if len(frame.digipeaters) > MAX_DIGIPEATERS:
        raise TooManyDigipeaters(
            f"{len(frame.digipeaters)} digipeaters, at most {MAX_DIGIPEATERS} allowed"
        )
    if not 1 <= len(frame.info) <= MAX_INFO:
        raise InfoFieldSize(f"info field is {len(frame.info)} bytes, must be 1-{MAX_INFO}")
    if frame.control != UI_CONTROL or frame.pid != PID_NO_L3:
        raise FrameError(
            f"UI frames need control 0x03 / PID 0xF0, got 0x{frame.control:02X} / 0x{frame.pid:02X}"
        )


def build_frame(frame: UiFrame, *, cr_bits: tuple[bool, bool] = (True, False)) -> FrameBytes:
    """Serialize ``frame``; ``cr_bits`` are the destination/source C bits."""
    validate_frame(frame)
    parts = [
        encode_address(frame.destination, Role.DESTINATION, c_bit=cr_bits[0]),
        encode_address(frame.source, Role.SOURCE, c_bit=cr_bits[1]),
    ]
    parts += [encode_address(d, Role.DIGIPEATER) for d in frame.digipeaters]
    parts.append(bytes([frame.control, frame.pid]))
    parts.append(frame.info)
    payload = b"".join(parts)
    return FrameBytes(payload, compute_fcs(payload).to_bytes(2, "little"))


def parse_frame(data: bytes) -> UiFrame:
    """Parse payload + FCS back into a :class:`UiFrame`.

    The FCS is checked before anything else. A control byte other than
    0x03 issues a :class:`NotUiFrame` warning and parsing continues.
    """
    data = bytes(data)
    if len(data) < MIN_FRAME_LEN:
        raise MalformedAddressBlock(f"frame too short ({len(data)} bytes)")
    if not check_fcs(data):
        raise BadFcs(
            f"FCS mismatch: got {data[-2:].hex().upper()}, "
            f"computed {compute_fcs(data[:-2]).to_bytes(2, 'little').hex().upper()}"
        )
    body = data[:-2]
    addrs = []
    pos = 0
    while True:
        if len(addrs) == 2 + MAX_DIGIPEATERS or pos + 7 > len(body):
            raise MalformedAddressBlock("no address-extension bit within 10 addresses")
        role = (Role.DESTINATION, Role.SOURCE)[len(addrs)] if len(addrs) < 2 else Role.DIGIPEATER
        addrs.append(decode_address(body[pos:pos + 7], role))
        pos += 7
        if addrs[-1].is_last:
            break
    if len(addrs) < 2:
        raise MalformedAddressBlock("address block ends after the destination")
    if pos + 2 > len(body):
        raise MalformedAddressBlock("frame ends inside the address block")
    control, pid = body[pos], body[pos + 1]
    if control != UI_CONTROL:
        warnings.warn(f"control byte 0x{control:02X} is not a UI frame", NotUiFrame, stacklevel=2)
    return UiFrame(addrs[0], addrs[1], tuple(addrs[2:]), control, pid, body[pos + 2:])


# -- TNC2 monitor text -------------------------------------------------------

def parse_tnc2(text: str, default_destination: str = DEFAULT_TOCALL) -> UiFrame:
    """Parse ``SRC>DEST,PATH1,PATH2*:info`` into a frame.

    An empty destination slot (``SRC>:info`` or ``SRC>,WIDE2-2:info``) is
    filled with ``default_destination``. The info text must be ASCII.
    """
    header, sep, info = text.partition(":")
    if not sep:
        raise PacketSyntaxError("missing ':' between header and info field")
    src, sep, path = header.partition(">")
    if not sep:
        raise PacketSyntaxError("missing '>' between source and destination")
    dest, *digis = path.split(",")
    try:
        info_bytes = info.encode("ascii")
    except UnicodeEncodeError as exc:
        raise PacketSyntaxError("info text must be ASCII; pass raw bytes instead") from exc
    return UiFrame(
        AddressField.parse(dest.strip() or default_destination),
        AddressField.parse(src.strip()),
        tuple(AddressField.parse(d.strip()) for d in digis),
        info=info_bytes,
    )


def format_info(info: bytes) -> str:
    return "".join(chr(b) if 0x20 <= b < 0x7F else f"<0x{b:02x}>" for b in info)


def format_tnc2(frame: UiFrame) -> str:
    path = ",".join(str(a) for a in (frame.destination, *frame.digipeaters))
    return f"{frame.source}>{path}:{format_info(frame.info)}"
