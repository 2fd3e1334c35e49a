"""Text map of the detected bound over the two-Kraus family.

'#' marks Q_det > 0.5, '+' marks 0 < Q_det <= 0.5, '.' marks no detection.
Rows run over alpha, columns over beta, both from 0 to pi.
"""
import numpy as np

from qdetect import make_two_kraus, optimize_qdet
from qdetect.entropy import capacity_two_kraus, two_kraus_degradable

n = 24
axis = np.linspace(0, np.pi, n)
worst = 0.0
for a in axis:
    line = ""
    for b in axis:
        q = optimize_qdet(make_two_kraus(a, b)).q_det
        line += "#" if q > 0.5 else "+" if q > 0 else "."
        if two_kraus_degradable(a, b):
            worst = max(worst, capacity_two_kraus(a, b) - q)
    print(line)
# off the degradable region the capacity is zero and Q_det is negative
print(f"\nlargest capacity gap on the degradable part of the grid: {worst:.5f}")
