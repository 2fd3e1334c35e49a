"""How far does a measured bound reach for the qubit depolarizing channel?

The optimized Bell-type measurement reproduces the hashing bound exactly, so
the detected value crosses zero where hashing does (near p = 0.1893).
"""
import numpy as np

from qdetect import make_depolarizing, optimize_qdet
from qdetect.entropy import depolarizing_upper, hashing_bound

print(f"{'p':>6} {'Q_det':>9} {'hashing':>9} {'upper':>7}  basis")
for p in np.arange(0, 0.26, 0.025):
    r = optimize_qdet(make_depolarizing(p))
    print(f"{p:6.3f} {r.q_det:9.5f} {hashing_bound(p):9.5f} {depolarizing_upper(p):7.3f}  "
          f"{r.basis.family.name}")

# bisect the sign change
lo, hi = 0.15, 0.25
for _ in range(50):
    mid = (lo + hi) / 2
    if optimize_qdet(make_depolarizing(mid)).q_det > 0:
        lo = mid
    else:
        hi = mid
print(f"\nQ_det vanishes at p = {lo:.5f}")
