"""Beyond qubits: dephasing, Pauli and erasure channels in dimension d.

With the generalized Bell measurement, dephasing and generalized Pauli
channels are read off directly. For erasure the flag outcomes are added and
the bound equals the capacity (1 - 2p) log2 d.
"""
import numpy as np

from qdetect import BasisSpec, Family, make_dephasing, make_erasure, make_generalized_pauli, q_det
from qdetect.entropy import capacity_erasure, dephasing_bound, shannon

for d in (2, 3, 4):
    ch = make_dephasing(0.3, d)
    r = q_det(ch, BasisSpec(Family.GENERALIZED_BELL, dim=d))
    print(f"dephasing d={d}: Q_det={r.q_det:.6f} reference={dephasing_bound(0.3, d):.6f}")

rng = np.random.default_rng(3)
w = rng.dirichlet(np.ones(9))
r = q_det(make_generalized_pauli(w, 3), BasisSpec(Family.GENERALIZED_BELL, dim=3))
print(f"\nrandom Pauli d=3: Q_det={r.q_det:.6f}  log2(3)-H(w)={np.log2(3) - shannon(w):.6f}")

print()
for d in (2, 3, 4):
    for p in (0.1, 0.3):
        r = q_det(make_erasure(p, d), BasisSpec(Family.ERASURE_FLAG, dim=d))
        print(f"erasure d={d} p={p}: Q_det={r.q_det:.6f} capacity={capacity_erasure(p, d):.6f}")
