"""Feeding a user-defined channel through JSON, as the CLI does.

A random rank-2 qubit channel is written to disk, read back, and scored
both with the plain Bell basis and the optimized basis.
"""
import json
import os
import tempfile

import numpy as np

from qdetect import BELL, optimize_qdet, q_det
from qdetect.channels import channel_to_document, load_channel, random_channel
from qdetect.entropy import coherent_information

ch = random_channel(2, 2, 2, np.random.default_rng(11))
path = os.path.join(tempfile.mkdtemp(), "channel.json")
with open(path, "w") as fh:
    json.dump(channel_to_document(ch), fh, indent=1)

loaded = load_channel(path)
print("loaded", path, "with", len(loaded.kraus), "Kraus operators")
print(f"completeness residual  {loaded.completeness_residual():.2e}")
print(f"Bell basis Q_det       {q_det(loaded, BELL).q_det:+.6f}")
best = optimize_qdet(loaded)
print(f"optimized Q_det        {best.q_det:+.6f} ({best.basis.family.name}, "
      f"theta=({best.basis.theta1:.3f}, {best.basis.theta2:.3f}))")
print(f"coherent information   {coherent_information(loaded, np.eye(2) / 2):+.6f}")
print(f"\ntry: qdetect validate {path}")
