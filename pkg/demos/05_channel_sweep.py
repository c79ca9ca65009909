# Frame success rate against additive white noise.
#
# SNR is measured over the whole audio band (sample_rate / 2), so the
# correlator's one-symbol integration buys a lot of margin.

from aprsmodem import ax25
from aprsmodem.channel import ChannelSpec, frame_success_rate

frame = ax25.parse_tnc2("YG3DQQ>APTCM0,YBSAT,WIDE2-2:Pengujian APRS TCM3105")

for snr in (40, 10, 5, 3, 1, 0, -3, -20):
    rate = frame_success_rate(frame, ChannelSpec(snr_db=snr, seed=2024), 100)
    print(f"{snr:>4} dB  {rate:5.2f}  " + "#" * int(rate * 40))

# clock skew of +-1% on top of noise
for ppm in (-10_000, 10_000):
    rate = frame_success_rate(frame, ChannelSpec(snr_db=10, rate_skew_ppm=ppm, seed=7), 50)
    print(f"skew {ppm:+} ppm at 10 dB: {rate:.2f}")
