"""Measurement bases, probability vectors and the detectable capacity bound.

The joint output state is always ``(I_R (x) E)(|Psi><Psi|)`` for the
canonical maximally entangled input, reference factor first. The detected
bound is

    q_det = S(E(I/d)) - H(p),

where ``p`` is the Born-rule distribution of the joint output over an
orthonormal basis. It lower-bounds the coherent information, hence the
quantum and private capacities, and ``log2 d + q_det`` lower-bounds the
entanglement-assisted classical capacity.
"""
import enum
from dataclasses import dataclass, field
from math import cos, log2, pi, sin
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .channels import Channel, apply, choi_output, weyl, weyl_basis
from .entropy import as_probability_vector, shannon, von_neumann
from .linalg import pauli_string
from .optimize import golden_section_min

GRID_POINTS = 64
REFINE_TOL = 1e-10
TIE_ATOL = 1e-12


class Family(enum.IntEnum):
    B1 = 1
    B2 = 2
    B3 = 3
    GENERALIZED_BELL = 4
    ERASURE_FLAG = 5
    CUSTOM = 6


QUBIT_FAMILIES = (Family.B1, Family.B2, Family.B3)


@dataclass(frozen=True)
class BasisSpec:
    """One measurement basis.

    For B1/B2/B3 the coefficients are ``a, b = cos(theta1), sin(theta1)`` and
    ``c, d = cos(theta2), sin(theta2)``. ``dim`` is the system dimension for
    the generalized Bell and erasure bases. CUSTOM bases carry their vectors
    as rows of ``vectors``.
    """

    family: Family
    theta1: float = 0.0
    theta2: float = 0.0
    dim: int = 2
    vectors: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    @property
    def coefficients(self) -> Tuple[float, float, float, float]:
        return cos(self.theta1), sin(self.theta1), cos(self.theta2), sin(self.theta2)


BELL = BasisSpec(Family.B1)


@dataclass(frozen=True)
class BoundReport:
    q_det: float
    ce_lower: float
    p_lower: float
    output_entropy: float
    prob_vector: np.ndarray
    basis: BasisSpec
    clamped: bool = False

    @property
    def shannon_entropy(self) -> float:
        return shannon(self.prob_vector)


def make_report(output_entropy: float, probs, basis: BasisSpec, d: int,
                clamped: bool = False) -> BoundReport:
    probs = as_probability_vector(probs)
    q = output_entropy - shannon(probs)
    return BoundReport(q_det=q, ce_lower=log2(d) + q, p_lower=q,
                       output_entropy=output_entropy, prob_vector=probs,
                       basis=basis, clamped=clamped)


def bell_states() -> Dict[str, np.ndarray]:
    """Phi+, Phi-, Psi+, Psi- as 4-vectors in the |00>, |01>, |10>, |11> basis."""
    s = 1 / np.sqrt(2)
    return {
        "phi+": s * np.array([1, 0, 0, 1], dtype=complex),
        "phi-": s * np.array([1, 0, 0, -1], dtype=complex),
        "psi+": s * np.array([0, 1, 1, 0], dtype=complex),
        "psi-": s * np.array([0, 1, -1, 0], dtype=complex),
    }


# Each qubit family splits into two sectors spanned by a pair of Bell states
# (u, v); the sector vectors are  a u + w b v  and  -conj(w) b u + a v.
_SECTORS = {
    Family.B1: (("phi+", "phi-", 1), ("psi+", "psi-", 1)),
    Family.B2: (("phi+", "psi+", 1), ("phi-", "psi-", 1)),
    Family.B3: (("phi+", "psi-", 1j), ("phi-", "psi+", 1j)),
}

# Pauli expansion of the projector onto the first vector of each sector:
#   1/4 sum(base) + (a^2 - b^2)/4 sum(quad) + ab/2 sum(cross)
# The second vector of a sector follows from (a, b) -> (-b, a).
_PAULI_TERMS = {
    Family.B1: (
        ({"II": 1, "ZZ": 1}, {"XX": 1, "YY": -1}, {"ZI": 1, "IZ": 1}),
        ({"II": 1, "ZZ": -1}, {"XX": 1, "YY": 1}, {"ZI": 1, "IZ": -1}),
    ),
    Family.B2: (
        ({"II": 1, "XX": 1}, {"ZZ": 1, "YY": -1}, {"XI": 1, "IX": 1}),
        ({"II": 1, "XX": -1}, {"ZZ": 1, "YY": 1}, {"XI": -1, "IX": 1}),
    ),
    Family.B3: (
        ({"II": 1, "YY": -1}, {"ZZ": 1, "XX": 1}, {"YI": -1, "IY": 1}),
        ({"II": 1, "YY": 1}, {"ZZ": 1, "XX": -1}, {"YI": 1, "IY": 1}),
    ),
}

# the observables a local sigma_k (x) sigma_k setting gives access to
MEASURED_PAULIS = ("II", "XX", "YY", "ZZ", "XI", "IX", "YI", "IY", "ZI", "IZ")


def _qubit_vectors(family: Family, theta1: float, theta2: float) -> np.ndarray:
    bell = bell_states()
    rows = []
    for (u, v, w), theta in zip(_SECTORS[family], (theta1, theta2)):
        a, b = cos(theta), sin(theta)
        rows.append(a * bell[u] + w * b * bell[v])
        rows.append(-np.conj(w) * b * bell[u] + a * bell[v])
    return np.array(rows)


def _generalized_bell_vectors(d: int, d_out: Optional[int] = None) -> np.ndarray:
    d_out = d if d_out is None else d_out
    psi = np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)
    embed = np.eye(d_out, d, dtype=complex)
    return np.array([np.kron(np.eye(d), embed @ U) @ psi for U in weyl_basis(d)])


def build_basis(spec: BasisSpec) -> np.ndarray:
    """Orthonormal basis vectors of the (reference, output) space, one per row.

    B1-B3 give 4 vectors; GENERALIZED_BELL gives d^2 vectors (I (x) U_mn)|Psi>
    with row index m*d + n; ERASURE_FLAG gives the d^2 Bell vectors inside the
    unflagged block followed by the d flag vectors |i> (x) |e>.
    """
    if spec.family in QUBIT_FAMILIES:
        if spec.dim != 2:
            raise ValueError(f"{spec.family.name} is a two-qubit basis, got dim={spec.dim}")
        return _qubit_vectors(spec.family, spec.theta1, spec.theta2)
    if spec.family == Family.GENERALIZED_BELL:
        return _generalized_bell_vectors(spec.dim)
    if spec.family == Family.ERASURE_FLAG:
        d = spec.dim
        flags = np.zeros((d, d * (d + 1)), dtype=complex)
        for i in range(d):
            flags[i, i * (d + 1) + d] = 1
        return np.vstack([_generalized_bell_vectors(d, d + 1), flags])
    if spec.family == Family.CUSTOM:
        if spec.vectors is None:
            raise ValueError("CUSTOM basis needs explicit vectors")
        V = np.asarray(spec.vectors, dtype=complex)
        if V.ndim != 2 or V.shape[0] != V.shape[1]:
            raise ValueError("CUSTOM basis must be a square array of row vectors")
        if np.abs(V.conj() @ V.T - np.eye(V.shape[0])).max() > 1e-10:
            raise ValueError("CUSTOM basis vectors are not orthonormal")
        return V
    raise ValueError(f"unsupported basis family {spec.family!r}")


def basis_projectors(spec: BasisSpec) -> List[np.ndarray]:
    return [np.outer(v, v.conj()) for v in build_basis(spec)]


def pauli_projector_decomposition(spec: BasisSpec) -> List[Dict[str, float]]:
    """Weights of each B1/B2/B3 projector over the two-qubit Pauli strings."""
    if spec.family not in QUBIT_FAMILIES:
        raise ValueError(f"no Pauli decomposition for family {spec.family!r}")
    out = []
    for (base, quad, cross), theta in zip(_PAULI_TERMS[spec.family], (spec.theta1, spec.theta2)):
        a, b = cos(theta), sin(theta)
        for sgn in (1, -1):
            # sgn=-1 is the (a, b) -> (-b, a) partner within the sector
            w: Dict[str, float] = {}
            for lbl, s in base.items():
                w[lbl] = w.get(lbl, 0.0) + s / 4
            for lbl, s in quad.items():
                w[lbl] = w.get(lbl, 0.0) + sgn * s * (a * a - b * b) / 4
            for lbl, s in cross.items():
                w[lbl] = w.get(lbl, 0.0) + sgn * s * a * b / 2
            out.append(w)
    return out


def pauli_weights_to_matrix(weights: Dict[str, float]) -> np.ndarray:
    return sum(w * pauli_string(lbl) for lbl, w in weights.items())


def pauli_expectations(state, labels: Sequence[str] = MEASURED_PAULIS) -> Dict[str, float]:
    """Tr[state P] for two-qubit Pauli strings ``P``."""
    state = np.asarray(state)
    # Tr[state P] = sum_ij state_ij P_ji
    return {lbl: float(np.real(np.sum(state * pauli_string(lbl).T))) for lbl in labels}


def probabilities_from_expectations(spec: BasisSpec, expectations: Dict[str, float]) -> np.ndarray:
    """Unnormalised, unclamped Born vector reconstructed from Pauli expectations."""
    return np.array([sum(w * expectations[lbl] for lbl, w in weights.items())
                     for weights in pauli_projector_decomposition(spec)])


def probability_vector(joint_output, basis) -> np.ndarray:
    """Born-rule distribution p_i = <Phi_i| joint_output |Phi_i>."""
    V = build_basis(basis) if isinstance(basis, BasisSpec) else np.asarray(basis)
    rho = np.asarray(joint_output)
    if rho.shape != (V.shape[1], V.shape[1]):
        raise ValueError(f"state of shape {rho.shape} does not match basis of dimension {V.shape[1]}")
    p = np.real(np.einsum("ia,ab,ib->i", V.conj(), rho, V))
    if abs(p.sum() - 1) > 1e-10:
        raise ValueError(f"Born probabilities sum to {p.sum():.12f}")
    return as_probability_vector(p)


def probability_vector_from_kraus(ch: Channel, d: Optional[int] = None) -> np.ndarray:
    """Generalized Bell distribution p_i = (1/d^2) sum_j |Tr[U_i^dagger A_j]|^2."""
    d = ch.d_in if d is None else d
    if ch.d_in != d or ch.d_out != d:
        raise ValueError(f"channel is {ch.d_in}->{ch.d_out}, expected {d}->{d}")
    p = np.array([sum(abs(np.trace(U.conj().T @ A)) ** 2 for A in ch.kraus)
                  for U in weyl_basis(d)]) / d ** 2
    return as_probability_vector(p)


def weyl_bell_projector(m: int, n: int, d: int) -> np.ndarray:
    """|Phi_mn><Phi_mn| = (1/d^2) sum_pq w^-(np + mq) U_pq (x) U_pq^*, w = exp(2 pi i/d)."""
    P = np.zeros((d * d, d * d), dtype=complex)
    for p in range(d):
        for q in range(d):
            U = weyl(p, q, d)
            P += np.exp(-2j * pi * (n * p + m * q) / d) * np.kron(U, U.conj())
    return P / d ** 2


def default_basis(ch: Channel) -> BasisSpec:
    """The natural fixed basis for a channel: Bell for d_out == d_in, flag basis for erasure-like outputs."""
    if ch.d_out == ch.d_in:
        return BELL if ch.d_in == 2 else BasisSpec(Family.GENERALIZED_BELL, dim=ch.d_in)
    if ch.d_out == ch.d_in + 1:
        return BasisSpec(Family.ERASURE_FLAG, dim=ch.d_in)
    raise ValueError(f"no default basis for a {ch.d_in}->{ch.d_out} channel")


def output_entropy(ch: Channel) -> float:
    d = ch.d_in
    return von_neumann(apply(ch, np.eye(d, dtype=complex) / d))


def q_det(ch: Channel, basis: Optional[BasisSpec] = None) -> BoundReport:
    """Detected bound for a fixed basis and the maximally entangled input."""
    basis = default_basis(ch) if basis is None else basis
    joint = choi_output(ch)
    return make_report(output_entropy(ch), probability_vector(joint, basis), basis, ch.d_in)


# -- optimisation over the qubit families -------------------------------------

def _sector_harmonics(family: Family, expectations: Dict[str, float]):
    """Per sector: (m, x, y) with p_first(theta) = m + (x cos 2t + y sin 2t) / 4."""
    out = []
    for base, quad, cross in _PAULI_TERMS[family]:
        m = sum(s * expectations[l] for l, s in base.items()) / 4
        x = sum(s * expectations[l] for l, s in quad.items())
        y = sum(s * expectations[l] for l, s in cross.items())
        out.append((m, x, y))
    return out


def _plogp(p: float) -> float:
    return -p * log2(p) if p > 0 else 0.0


def _sector_objective(m: float, x: float, y: float) -> Callable[[float], float]:
    def f(theta: float) -> float:
        p = m + (x * cos(2 * theta) + y * sin(2 * theta)) / 4
        return _plogp(p) + _plogp(2 * m - p)
    return f


def _sector_minimise(m: float, x: float, y: float) -> Tuple[float, float]:
    # grid over [0, pi) then golden-section refinement within one grid step
    grid = np.arange(GRID_POINTS) * (pi / GRID_POINTS)
    p = m + (x * np.cos(2 * grid) + y * np.sin(2 * grid)) / 4
    q = 2 * m - p
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = (-np.where(p > 0, p * np.log2(np.where(p > 0, p, 1)), 0)
                - np.where(q > 0, q * np.log2(np.where(q > 0, q, 1)), 0))
    k = int(np.argmin(vals))
    step = pi / GRID_POINTS
    f = _sector_objective(m, x, y)
    theta, val = golden_section_min(f, grid[k] - step, grid[k] + step, REFINE_TOL)
    if vals[k] <= val:
        theta, val = grid[k], float(vals[k])
    # the objective has period pi/2: theta and theta + pi/2 name the same basis
    return float(theta % (pi / 2)), float(val)


def optimal_basis(expectations: Dict[str, float]) -> BasisSpec:
    """Basis among B1-B3 minimising H(p), given the ten measurable Pauli expectations.

    H(p) separates into one term per sector, each depending on a single
    angle, so the 2-d search over (theta1, theta2) reduces to two 1-d ones.
    Ties within ``TIE_ATOL`` go to the lowest family.
    """
    best = None
    for family in QUBIT_FAMILIES:
        (t1, h1), (t2, h2) = (_sector_minimise(*s) for s in _sector_harmonics(family, expectations))
        h = h1 + h2
        if best is None or h < best[0] - TIE_ATOL:
            best = (h, BasisSpec(family, t1, t2))
    return best[1]


def optimize_qdet(ch: Channel) -> BoundReport:
    """Largest detected bound over the bases B1, B2, B3 and their coefficients."""
    if ch.d_in != 2 or ch.d_out != 2:
        raise ValueError("basis optimisation is defined for qubit channels only")
    joint = choi_output(ch)
    spec = optimal_basis(pauli_expectations(joint))
    return make_report(output_entropy(ch), probability_vector(joint, spec), spec, 2)
