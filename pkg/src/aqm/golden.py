"""Published reference matrices for the HVS-CSF and display-adaptive QMs.

Shared by the test-suite and ``aqm gen --golden``. Floating tables carry the
four decimals they were published with; integer tables are exact.

``FWM_DEFAULT``   default HVS-CSF frequency weighting matrix (dis=512, s=0.7)
``QM_INTRA``      default intra QM, round(16 / FWM_DEFAULT)
``QM_INTER``      default inter QM (stored, not derived)
``FWM_4K``        adapted FWM for a 3840x2160 display, maxima 65535x65535
``AQM_INTRA_4K``  intra AQM for the same display
"""

import numpy as np

FWM_DEFAULT = np.array([
    [1.0000, 1.0000, 1.0000, 1.0000, 0.9599, 0.8746, 0.7684, 0.6571],
    [1.0000, 1.0000, 1.0000, 1.0000, 0.9283, 0.8404, 0.7371, 0.6306],
    [1.0000, 1.0000, 0.9571, 0.8898, 0.8192, 0.7371, 0.6471, 0.5558],
    [1.0000, 1.0000, 0.8898, 0.7617, 0.6669, 0.5912, 0.5196, 0.4495],
    [0.9599, 0.9283, 0.8192, 0.6669, 0.5419, 0.4564, 0.3930, 0.3393],
    [0.8746, 0.8404, 0.7371, 0.5912, 0.4564, 0.3598, 0.2948, 0.2480],
    [0.7684, 0.7371, 0.6471, 0.5196, 0.3930, 0.2948, 0.2278, 0.1828],
    [0.6571, 0.6306, 0.5558, 0.4495, 0.3393, 0.2480, 0.1828, 0.1391],
])

QM_INTRA = np.array([
    [16, 16, 16, 16, 17, 18, 21, 24],
    [16, 16, 16, 16, 17, 19, 22, 25],
    [16, 16, 17, 18, 20, 22, 25, 29],
    [16, 16, 18, 21, 24, 27, 31, 36],
    [17, 17, 20, 24, 30, 35, 41, 47],
    [18, 19, 22, 27, 35, 44, 54, 65],
    [21, 22, 25, 31, 41, 54, 70, 88],
    [24, 25, 29, 36, 47, 65, 88, 115],
], dtype=np.int64)

QM_INTER = np.array([
    [16, 16, 16, 16, 17, 18, 20, 24],
    [16, 16, 16, 17, 18, 20, 24, 25],
    [16, 16, 17, 18, 20, 24, 25, 28],
    [16, 17, 18, 20, 24, 25, 28, 33],
    [17, 18, 20, 24, 25, 28, 33, 41],
    [18, 20, 24, 25, 28, 33, 41, 54],
    [20, 24, 25, 28, 33, 41, 54, 71],
    [24, 25, 28, 33, 41, 54, 71, 91],
], dtype=np.int64)

FWM_4K = np.array([
    [1.0000, 1.0000, 1.0000, 1.0000, 0.9798, 0.9454, 0.9114, 0.8832],
    [1.0000, 1.0000, 1.0000, 1.0000, 0.9643, 0.9309, 0.8996, 0.8739],
    [1.0000, 1.0000, 0.9736, 0.9396, 0.9125, 0.8873, 0.8652, 0.8475],
    [1.0000, 1.0000, 0.9396, 0.8780, 0.8439, 0.8265, 0.8156, 0.8085],
    [0.9798, 0.9643, 0.9125, 0.8439, 0.7953, 0.7730, 0.7662, 0.7666],
    [0.9454, 0.9309, 0.8873, 0.8265, 0.7730, 0.7418, 0.7306, 0.7319],
    [0.9114, 0.8996, 0.8652, 0.8156, 0.7662, 0.7306, 0.7132, 0.7106],
    [0.8832, 0.8739, 0.8475, 0.8085, 0.7666, 0.7319, 0.7106, 0.7030],
])

AQM_INTRA_4K = np.array([
    [16, 16, 16, 16, 16, 17, 18, 18],
    [16, 16, 16, 16, 17, 17, 18, 18],
    [16, 16, 16, 17, 18, 18, 18, 19],
    [16, 16, 17, 18, 19, 19, 20, 20],
    [16, 17, 18, 19, 20, 21, 21, 21],
    [17, 17, 18, 19, 21, 22, 22, 22],
    [18, 18, 18, 20, 21, 22, 22, 23],
    [18, 18, 19, 20, 21, 22, 23, 23],
], dtype=np.int64)

# Printed tables carry 4 decimals.
PRINT_TOL = 5e-5

# The printed adapted matrix was evidently produced from the 4-decimal
# FWM_DEFAULT rather than full-precision H; the full-precision chain lands
# up to 8.3e-5 away on four entries.
ADAPTED_CHAIN_TOL = 1e-4
