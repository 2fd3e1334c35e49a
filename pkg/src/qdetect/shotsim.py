"""Finite-statistics simulation of the three local settings XX, YY, ZZ.

Each setting measures sigma_k on the reference qubit and on the output
qubit of the joint state. The three count tables are all the estimator
sees: from them it forms the ten Pauli expectations that enter the B1-B3
projectors and the output Bloch vector.
"""
from dataclasses import dataclass
from math import sqrt
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .channels import Channel, choi_output
from .detection import (BasisSpec, BoundReport, make_report, optimal_basis,
                        probabilities_from_expectations)
from .entropy import binary_entropy
from .linalg import PAULIS

SETTINGS = ("XX", "YY", "ZZ")
OUTCOMES = ((1, 1), (1, -1), (-1, 1), (-1, -1))

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


@dataclass(frozen=True)
class MeasurementRecord:
    setting: str
    counts: Mapping[Tuple[int, int], int]
    shots: int

    def __post_init__(self):
        if self.setting not in SETTINGS:
            raise ValueError(f"unknown setting {self.setting!r}")
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to shots")


def _generator(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def outcome_probabilities(joint, setting: str) -> np.ndarray:
    """Probabilities of the four (reference, system) outcome pairs, in OUTCOMES order."""
    sigma = PAULIS[setting[0]]
    eye = np.eye(2)
    probs = []
    for s1, s2 in OUTCOMES:
        P = np.kron((eye + s1 * sigma) / 2, (eye + s2 * sigma) / 2)
        probs.append(np.real(np.trace(joint @ P)))
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


def sample(ch: Channel, setting: str, shots: int, seed: SeedLike = None) -> MeasurementRecord:
    if ch.d_in != 2 or ch.d_out != 2:
        raise ValueError("shot simulation is defined for qubit channels only")
    if setting not in SETTINGS:
        raise ValueError(f"unknown setting {setting!r}")
    if shots < 1:
        raise ValueError("shots must be positive")
    probs = outcome_probabilities(choi_output(ch), setting)
    n = _generator(seed).multinomial(shots, probs)
    return MeasurementRecord(setting, dict(zip(OUTCOMES, (int(k) for k in n))), shots)


def sample_all(ch: Channel, shots: int, seed=None) -> Dict[str, MeasurementRecord]:
    """One record per setting, each from an independent child of ``seed``."""
    children = np.random.SeedSequence(seed).spawn(len(SETTINGS))
    return {s: sample(ch, s, shots, c) for s, c in zip(SETTINGS, children)}


def expectations_from_records(records: Union[Mapping[str, MeasurementRecord],
                                             Sequence[MeasurementRecord]]) -> Dict[str, float]:
    if not isinstance(records, Mapping):
        records = {r.setting: r for r in records}
    missing = [s for s in SETTINGS if s not in records]
    if missing:
        raise ValueError(f"missing measurement settings: {missing}")
    E = {"II": 1.0}
    for s in SETTINGS:
        rec = records[s]
        k = s[0]
        n = rec.shots
        E[k + k] = sum(s1 * s2 * c for (s1, s2), c in rec.counts.items()) / n
        E[k + "I"] = sum(s1 * c for (s1, _), c in rec.counts.items()) / n
        E["I" + k] = sum(s2 * c for (_, s2), c in rec.counts.items()) / n
    return E


def report_from_expectations(E: Mapping[str, float], basis: Optional[BasisSpec] = None) -> BoundReport:
    """Bound report from (possibly noisy) Pauli expectations.

    Without ``basis`` the B1-B3 optimisation runs on the estimates. Negative
    probability estimates are clamped to zero and the vector renormalised;
    the report's ``clamped`` flag records it. The output Bloch vector is
    shrunk onto the unit ball if noise pushes it outside.
    """
    spec = optimal_basis(E) if basis is None else basis
    p = probabilities_from_expectations(spec, E)
    clamped = bool(np.any(p < 0))
    p = np.clip(p, 0.0, None)
    p = p / p.sum()
    r = sqrt(E["IX"] ** 2 + E["IY"] ** 2 + E["IZ"] ** 2)
    s_out = binary_entropy((1 + min(r, 1.0)) / 2)
    return make_report(s_out, p, spec, 2, clamped=clamped)


def estimate_report(records, basis: Optional[BasisSpec] = None) -> BoundReport:
    return report_from_expectations(expectations_from_records(records), basis)
