# Walk a short frame through each bit-layer stage.

from aprsmodem import ax25, hdlc
from aprsmodem.hdlc import FramingConfig

frame = ax25.parse_tnc2("N0CALL>APRS:\x7f\x7f")
wire = ax25.build_frame(frame).wire

logical = hdlc.bytes_to_bits_lsb_first(wire)
stuffed = hdlc.stuff_bits(logical)
print(f"{len(logical)} logical bits, {len(stuffed) - len(logical)} stuff bits inserted")

framed = hdlc.add_flags(stuffed, FramingConfig(2, 1))
print(hdlc.dump_bits(framed))

# NRZI: a 0 toggles the level, a 1 holds it.  Inverting every level
# (as an inverting TX pin would) leaves the decoded bits unchanged.
levels = hdlc.nrzi_encode(framed)
inverted = hdlc.BitStream(1 - levels.bits, hdlc.Stage.NRZI)
a = hdlc.nrzi_decode(levels, prior_level=None)
b = hdlc.nrzi_decode(inverted, prior_level=None)
print("polarity-blind decode identical:", a == b)
print("frames found:", [ax25.format_tnc2(ax25.parse_frame(f)) for f in hdlc.find_frames(a)])
