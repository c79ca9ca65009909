# Check the mark/space tones of the modulator from its spectrum.

import numpy as np

from aprsmodem.afsk import ModemConfig, measure_tone_frequencies, modulate, spectrum
from aprsmodem.hdlc import BitStream, Stage

for fs in (48000, 44100, 8000):
    cfg = ModemConfig(sample_rate=fs)
    for name, bit in (("mark", 1), ("space", 0)):
        x = modulate(BitStream([bit] * 1200, Stage.NRZI), cfg)
        freqs, mag = spectrum(x)
        print(f"{fs:>6} Hz {name:<5} peak at {freqs[np.argmax(mag)]:7.1f} Hz")

    # runs of 50 marks and 50 spaces
    x = modulate(BitStream(([1] * 50 + [0] * 50) * 20, Stage.NRZI), cfg)
    lo, hi = measure_tone_frequencies(x)
    print(f"{fs:>6} Hz estimated tones {lo:.1f} / {hi:.1f} Hz")
