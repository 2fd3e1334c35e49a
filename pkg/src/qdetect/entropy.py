"""Entropies, coherent information and closed-form reference capacities.

All logarithms are base 2. The reference values here serve as ground truth
for the detected bounds computed in :mod:`qdetect.detection`.
"""
from math import cos, log2, sin

import numpy as np

from .channels import Channel, apply
from .linalg import as_matrix, hermitian_eig
from .optimize import golden_section_max

PROB_CLAMP = 1e-12
PROB_SUM_ATOL = 1e-9
EIG_CLAMP = 1e-10


def as_probability_vector(p) -> np.ndarray:
    """Validate a probability vector, clamping tiny negative entries to zero."""
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size == 0 or not np.all(np.isfinite(p)):
        raise ValueError("probability vector must be finite and non-empty")
    if np.any(p < -PROB_CLAMP):
        raise ValueError(f"negative probability {p.min():.3e}")
    if abs(p.sum() - 1) > PROB_SUM_ATOL:
        raise ValueError(f"probabilities sum to {p.sum():.12f}")
    return np.clip(p, 0.0, None)


def _h(p: np.ndarray) -> float:
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum()) + 0.0


def shannon(p) -> float:
    """Shannon entropy in bits with 0 log 0 = 0."""
    return _h(as_probability_vector(p))


def binary_entropy(x: float) -> float:
    if not 0 <= x <= 1:
        raise ValueError(f"binary entropy argument {x} outside [0, 1]")
    if x == 0 or x == 1:
        return 0.0
    return -x * log2(x) - (1 - x) * log2(1 - x)


def _h2(x: float) -> float:
    # tolerant variant for optimiser objectives where x may leave [0, 1] by roundoff
    return binary_entropy(min(1.0, max(0.0, x)))


def spectrum_probabilities(rho) -> np.ndarray:
    ev = hermitian_eig(as_matrix(rho)).eigenvalues
    if ev.min() < -EIG_CLAMP:
        raise ValueError(f"state has negative eigenvalue {ev.min():.3e}")
    return np.clip(ev, 0.0, None)


def von_neumann(rho) -> float:
    """S(rho) = -Tr[rho log2 rho]."""
    return shannon(spectrum_probabilities(rho))


def purification(rho) -> np.ndarray:
    """|Psi_rho> = sum_i |i>_R (x) sqrt(rho)|i>, reference factor first."""
    rho = as_matrix(rho)
    spec = hermitian_eig(rho)
    lam = np.clip(spec.eigenvalues, 0.0, None)
    V = spec.eigenvectors
    sqrt_rho = (V * np.sqrt(lam)) @ V.conj().T
    # column i of sqrt_rho is sqrt(rho)|i>; stacking over i puts R first
    return sqrt_rho.T.reshape(-1)


def joint_output(ch: Channel, rho) -> np.ndarray:
    """(I_R (x) E)(|Psi_rho><Psi_rho|) for the canonical purification of ``rho``."""
    psi = purification(rho)
    d = ch.d_in
    out = np.zeros((d * ch.d_out, d * ch.d_out), dtype=complex)
    for A in ch.kraus:
        v = np.kron(np.eye(d), A) @ psi
        out += np.outer(v, v.conj())
    return out


def entropy_exchange(ch: Channel, rho) -> float:
    apply(ch, rho)  # input validation
    return von_neumann(joint_output(ch, rho))


def coherent_information(ch: Channel, rho) -> float:
    return von_neumann(apply(ch, rho)) - entropy_exchange(ch, rho)


def capacity_dephasing(p: float, d: int = 2) -> float:
    """Exact quantum capacity 1 - H2(p/2) of the qubit dephasing channel.

    Only the qubit case is an exact capacity; for ``d > 2`` use
    :func:`dephasing_bound`, which is a lower bound.
    """
    if d != 2:
        raise ValueError("exact dephasing capacity is only known for d = 2; "
                         "use dephasing_bound for a lower bound")
    return 1 - binary_entropy(p / 2)


def dephasing_bound(p: float, d: int) -> float:
    return log2(d) - binary_entropy(p / 2)


def hashing_bound(p: float, d: int = 2) -> float:
    """log2 d - H2(p) - p log2(d^2 - 1) for the depolarizing channel."""
    return log2(d) - binary_entropy(p) - p * log2(d * d - 1)


def depolarizing_upper(p: float) -> float:
    """Qubit depolarizing upper bound Q <= 1 - 4p."""
    return 1 - 4 * p


def capacity_erasure(p: float, d: int = 2) -> float:
    if p >= 0.5:
        return 0.0
    return (1 - 2 * p) * log2(d)


def amplitude_damping_objective(q: float, gamma: float) -> float:
    return _h2((1 - gamma) * q) - _h2(gamma * q)


def capacity_amplitude_damping(gamma: float, tol: float = 1e-10) -> float:
    if not 0 <= gamma <= 1:
        raise ValueError(f"gamma={gamma} outside [0, 1]")
    if gamma >= 0.5:
        return 0.0
    _, best = golden_section_max(lambda q: amplitude_damping_objective(q, gamma), 0.0, 1.0, tol)
    return max(best, 0.0)


def two_kraus_degradable(alpha: float, beta: float) -> bool:
    """True where cos(2 alpha)/cos(2 beta) > 0."""
    return cos(2 * alpha) * cos(2 * beta) > 0


def two_kraus_objective(p: float, alpha: float, beta: float) -> float:
    ca2, sa2, sb2 = cos(alpha) ** 2, sin(alpha) ** 2, sin(beta) ** 2
    return _h2(p * ca2 + (1 - p) * sb2) - _h2(p * sa2 + (1 - p) * sb2)


def capacity_two_kraus(alpha: float, beta: float, tol: float = 1e-10) -> float:
    """Quantum capacity of the two-Kraus qubit family; zero where antidegradable."""
    if not two_kraus_degradable(alpha, beta):
        return 0.0
    _, best = golden_section_max(lambda p: two_kraus_objective(p, alpha, beta), 0.0, 1.0, tol)
    return max(best, 0.0)
