"""Estimating the bound from a finite number of local measurements.

Three correlated settings (XX, YY, ZZ) fix every Pauli expectation needed
by the optimizer. The error shrinks roughly like 1/sqrt(shots).
"""
import numpy as np

from qdetect import make_amplitude_damping, optimize_qdet
from qdetect.shotsim import estimate_report, sample_all

ch = make_amplitude_damping(0.2)
exact = optimize_qdet(ch).q_det
print(f"exact Q_det = {exact:.6f}")

for shots in (100, 1_000, 10_000, 100_000):
    errs = [estimate_report(sample_all(ch, shots, seed)).q_det - exact for seed in range(30)]
    print(f"shots/setting={shots:>7}  mean error={np.mean(errs):+.4f}  "
          f"median |error|={np.median(np.abs(errs)):.4f}")

r = estimate_report(sample_all(ch, 100, seed=1))
print(f"\n100 shots, seed 1: Q_det={r.q_det:.4f} clamped={r.clamped}")
