# Encode the APTCM0 test packet to a WAV file and decode it back.
#
#   python demos/01_golden_packet.py [out.wav]

import sys

from aprsmodem import ax25
from aprsmodem.modem import decode_audio, encode_frame
from aprsmodem.wav import read_wav, write_wav

text = "YG3DQQ>APTCM0,YBSAT,WIDE2-2:Pengujian APRS TCM3105"
frame = ax25.parse_tnc2(text)

# 4 addresses x 7 bytes, control, pid, 22 info bytes -> 52 byte payload
fb = ax25.build_frame(frame)
print("payload bytes:", len(fb.payload))
print("control @28: %02X   pid @29: %02X" % (fb.payload[28], fb.payload[29]))
print("wire:", fb.hex())

# 25 preamble flags, 2 postamble flags, 48 kHz, 1200 baud
audio = encode_frame(frame)
path = sys.argv[1] if len(sys.argv) > 1 else "golden.wav"
write_wav(audio, path)
print(f"wrote {path}: {audio.duration:.3f} s, {len(audio)} samples")

for f in decode_audio(read_wav(path)):
    print("decoded:", ax25.format_tnc2(f))
