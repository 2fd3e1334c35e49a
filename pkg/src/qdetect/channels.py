"""Quantum channels in Kraus form, the standard channel zoo, and JSON ingestion."""
import json
import os
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .linalg import SIGMA_X, SIGMA_Y, SIGMA_Z, as_matrix, is_hermitian

COMPLETENESS_ATOL = 1e-8
DENSITY_ATOL = 1e-10


class ChannelError(ValueError):
    """Raised for malformed or non trace-preserving channel descriptions."""


@dataclass(frozen=True)
class Channel:
    """A channel rho -> sum_j A_j rho A_j^dagger.

    Each Kraus operator is ``d_out x d_in``. Construction checks the
    completeness relation ``sum_j A_j^dagger A_j = I`` to ``COMPLETENESS_ATOL``.
    """

    kraus: Tuple[np.ndarray, ...]
    label: str = "custom"
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.kraus) == 0:
            raise ChannelError("a channel needs at least one Kraus operator")
        mats = tuple(as_matrix(A) for A in self.kraus)
        shape = mats[0].shape
        for A in mats:
            if A.shape != shape:
                raise ChannelError(f"Kraus shapes differ: {shape} vs {A.shape}")
        for A in mats:
            A.setflags(write=False)
        object.__setattr__(self, "kraus", mats)
        residual = self.completeness_residual()
        if residual > COMPLETENESS_ATOL:
            raise ChannelError(
                f"Kraus operators are not trace preserving (residual {residual:.3e})")

    @property
    def d_in(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def d_out(self) -> int:
        return self.kraus[0].shape[0]

    def completeness_residual(self) -> float:
        S = sum(A.conj().T @ A for A in self.kraus)
        return float(np.abs(S - np.eye(S.shape[0])).max())

    def __call__(self, rho) -> np.ndarray:
        return apply(self, rho)


def _check_density(rho, d: int) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape != (d, d):
        raise ValueError(f"state of shape {rho.shape} does not match input dimension {d}")
    if not is_hermitian(rho, DENSITY_ATOL):
        raise ValueError("state is not Hermitian")
    if abs(np.trace(rho) - 1) > DENSITY_ATOL:
        raise ValueError("state does not have unit trace")
    return rho


def apply(ch: Channel, rho) -> np.ndarray:
    rho = _check_density(rho, ch.d_in)
    return sum(A @ rho @ A.conj().T for A in ch.kraus)


def max_entangled(d: int) -> np.ndarray:
    """The state (1/sqrt d) sum_i |ii>, reference factor first."""
    return np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)


def choi_output(ch: Channel, d: Optional[int] = None) -> np.ndarray:
    """Joint (reference, output) state when half of |Psi> passes through ``ch``."""
    if d is None:
        d = ch.d_in
    if d != ch.d_in:
        raise ValueError(f"channel input dimension {ch.d_in} != {d}")
    psi = max_entangled(d)
    out = np.zeros((d * ch.d_out, d * ch.d_out), dtype=complex)
    eye = np.eye(d)
    for A in ch.kraus:
        v = np.kron(eye, A) @ psi
        out += np.outer(v, v.conj())
    return out


def weyl(m: int, n: int, d: int) -> np.ndarray:
    """U_mn = sum_k exp(2 pi i k m / d) |k><k+n mod d|; m is the phase index, n the shift."""
    U = np.zeros((d, d), dtype=complex)
    k = np.arange(d)
    U[k, (k + n) % d] = np.exp(2j * np.pi * k * m / d)
    return U


def weyl_basis(d: int):
    """All d^2 Weyl operators, flat index ``m * d + n``."""
    return [weyl(m, n, d) for m in range(d) for n in range(d)]


def identity(d: int = 2) -> Channel:
    return Channel((np.eye(d, dtype=complex),), label="identity")


def _check_prob(name, p):
    if not 0 <= p <= 1:
        raise ChannelError(f"{name}={p} outside [0, 1]")


def make_dephasing(p: float, d: int = 2, U=None) -> Channel:
    """(1 - p/2) rho + (p/2) U rho U^dagger for a traceless unitary ``U``.

    ``U`` defaults to sigma_z for qubits and to the cyclic shift U_01 otherwise.
    """
    _check_prob("p", p)
    if U is None:
        U = SIGMA_Z if d == 2 else weyl(0, 1, d)
    U = as_matrix(U)
    if U.shape != (d, d):
        raise ChannelError(f"U has shape {U.shape}, expected {(d, d)}")
    if np.abs(U.conj().T @ U - np.eye(d)).max() > 1e-10:
        raise ChannelError("U is not unitary")
    if abs(np.trace(U)) > 1e-10:
        raise ChannelError("U is not traceless")
    kraus = (np.sqrt(1 - p / 2) * np.eye(d, dtype=complex), np.sqrt(p / 2) * U)
    return Channel(kraus, label="dephasing", params={"p": p, "d": d})


def make_generalized_pauli(weights, d: int) -> Channel:
    """sum_mn p_mn U_mn rho U_mn^dagger; ``weights`` is d x d or flat (index m*d + n)."""
    w = np.asarray(weights, dtype=float).reshape(-1)
    if w.size != d * d:
        raise ChannelError(f"expected {d * d} weights, got {w.size}")
    if np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
        raise ChannelError("weights must be nonnegative and sum to 1")
    kraus = tuple(np.sqrt(wi) * U for wi, U in zip(w, weyl_basis(d)))
    return Channel(kraus, label="generalized-pauli", params={"d": d})


def make_pauli(p0: float, p1: float, p2: float, p3: float) -> Channel:
    """Qubit Pauli channel sum_i p_i sigma_i rho sigma_i with sigma_0 = I."""
    w = np.array([p0, p1, p2, p3], dtype=float)
    if np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
        raise ChannelError("weights must be nonnegative and sum to 1")
    ops = (np.eye(2, dtype=complex), SIGMA_X, SIGMA_Y, SIGMA_Z)
    kraus = tuple(np.sqrt(wi) * s for wi, s in zip(w, ops))
    return Channel(kraus, label="pauli",
                   params={"p0": p0, "p1": p1, "p2": p2, "p3": p3})


def make_depolarizing(p: float, d: int = 2) -> Channel:
    """Depolarizing channel (1 - p d^2/(d^2-1)) rho + p d^2/(d^2-1) I/d.

    For qubits this is (1-p) rho + (p/3) sum_i sigma_i rho sigma_i. Kraus
    weights are 1-p on the identity and p/(d^2-1) on every other Weyl operator.
    """
    _check_prob("p", p)
    w = np.full(d * d, p / (d * d - 1))
    w[0] = 1 - p
    ch = make_generalized_pauli(w, d)
    return Channel(ch.kraus, label="depolarizing", params={"p": p, "d": d})


def make_erasure(p: float, d: int = 2) -> Channel:
    """Erasure channel. Output levels 0..d-1 carry the system, level d is the flag |e>."""
    _check_prob("p", p)
    embed = np.zeros((d + 1, d), dtype=complex)
    embed[:d, :d] = np.eye(d)
    kraus = [np.sqrt(1 - p) * embed]
    for i in range(d):
        A = np.zeros((d + 1, d), dtype=complex)
        A[d, i] = np.sqrt(p)
        kraus.append(A)
    return Channel(tuple(kraus), label="erasure", params={"p": p, "d": d})


def make_amplitude_damping(gamma: float) -> Channel:
    _check_prob("gamma", gamma)
    A0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]], dtype=complex)
    A1 = np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=complex)
    return Channel((A0, A1), label="amplitude-damping", params={"gamma": gamma})


def make_two_kraus(alpha: float, beta: float) -> Channel:
    """Qubit channel with A1 = cos(a)|0><0| + cos(b)|1><1|, A2 = sin(b)|0><1| + sin(a)|1><0|.

    alpha == beta gives a dephasing channel; beta == 0 gives amplitude damping
    with gamma = sin(alpha)^2.
    """
    A1 = np.array([[np.cos(alpha), 0], [0, np.cos(beta)]], dtype=complex)
    A2 = np.array([[0, np.sin(beta)], [np.sin(alpha), 0]], dtype=complex)
    return Channel((A1, A2), label="two-kraus", params={"alpha": alpha, "beta": beta})


def random_channel(d_in: int, d_out: int, rank: int, rng: np.random.Generator) -> Channel:
    """Haar-ish random channel: ``rank`` Kraus operators cut from a random isometry."""
    G = rng.normal(size=(rank * d_out, d_in)) + 1j * rng.normal(size=(rank * d_out, d_in))
    Q, R = np.linalg.qr(G)
    Q = Q * (np.diag(R) / np.abs(np.diag(R)))
    kraus = tuple(Q[j * d_out:(j + 1) * d_out] for j in range(rank))
    return Channel(kraus, label="random")


def channel_to_document(ch: Channel) -> dict:
    return {
        "d_in": ch.d_in,
        "d_out": ch.d_out,
        "kraus": [{"re": A.real.tolist(), "im": A.imag.tolist()} for A in ch.kraus],
    }


def parse_channel_document(doc: Union[Mapping, str, os.PathLike]):
    """Parse a channel document into ``(d_in, d_out, kraus, label)`` without checking completeness.

    ``doc`` may be a mapping, JSON text, or a path to a JSON file. The
    document has ``d_in``, ``d_out`` and ``kraus``, a list of
    ``{"re": [[...]], "im": [[...]]}`` row-major matrices; ``im`` may be omitted.
    """
    if isinstance(doc, os.PathLike) or (isinstance(doc, str) and not doc.lstrip().startswith("{")):
        try:
            with open(doc) as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ChannelError(f"invalid JSON: {exc}") from None
    elif isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ChannelError(f"invalid JSON: {exc}") from None
    try:
        d_in, d_out = int(doc["d_in"]), int(doc["d_out"])
        entries = doc["kraus"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ChannelError(f"malformed channel document: {exc!r}") from None
    if d_in < 1 or d_out < 1:
        raise ChannelError("dimensions must be positive")
    if not isinstance(entries, Sequence) or isinstance(entries, str) or not entries:
        raise ChannelError("'kraus' must be a non-empty list")
    kraus = []
    for j, entry in enumerate(entries):
        try:
            re = np.asarray(entry["re"], dtype=float)
            im = np.asarray(entry.get("im", np.zeros_like(re)), dtype=float)
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ChannelError(f"Kraus operator {j} is malformed: {exc!r}") from None
        if re.shape != (d_out, d_in) or im.shape != (d_out, d_in):
            raise ChannelError(
                f"Kraus operator {j} has shape {re.shape}/{im.shape}, expected {(d_out, d_in)}")
        if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
            raise ChannelError(f"Kraus operator {j} has non-finite entries")
        kraus.append(re + 1j * im)
    return d_in, d_out, kraus, str(doc.get("label", "custom"))


def load_channel(doc: Union[Mapping, str, os.PathLike]) -> Channel:
    """Build a validated channel from a JSON document; see :func:`parse_channel_document`."""
    _, _, kraus, label = parse_channel_document(doc)
    return Channel(tuple(kraus), label=label)
