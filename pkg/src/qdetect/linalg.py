"""Small dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` complex arrays. The helpers here add the
dimension checks and conventions the rest of the code relies on: tensor
factors are ordered (reference, system), and spectra are returned in
descending order.
"""
from functools import lru_cache
from typing import NamedTuple, Sequence, Tuple

import numpy as np

HERMITIAN_ATOL = 1e-10

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# labels follow the usual I, X, Y, Z naming
PAULIS = {"I": I2, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def dagger(M) -> np.ndarray:
    return as_matrix(M).conj().T


def matmul(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def trace(M) -> complex:
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"trace of non-square matrix {M.shape}")
    return complex(np.trace(M))


def kron(A, B) -> np.ndarray:
    return np.kron(as_matrix(A), as_matrix(B))


def kron_all(mats: Sequence) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for M in mats:
        out = np.kron(out, M)
    return out


@lru_cache(maxsize=None)
def pauli_string(label: str) -> np.ndarray:
    """Tensor product of single-qubit Paulis, e.g. ``"XZ"`` -> X (x) Z. Read-only."""
    P = kron_all([PAULIS[c] for c in label])
    P.setflags(write=False)
    return P


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def is_hermitian(M, atol: float = HERMITIAN_ATOL) -> bool:
    M = np.asarray(M)
    return M.shape[0] == M.shape[1] and np.abs(M - M.conj().T).max() <= atol


def partial_trace(M, dims: Tuple[int, int], keep: int) -> np.ndarray:
    """Reduce a bipartite operator to one subsystem.

    :param M: operator on the (dA * dB)-dimensional composite space.
    :param dims: ``(dA, dB)``.
    :param keep: 0 to keep the first factor (trace out B), 1 to keep the second.
    """
    M = as_matrix(M)
    dA, dB = dims
    if M.shape != (dA * dB, dA * dB):
        raise ValueError(f"matrix of shape {M.shape} does not match dims {dims}")
    if keep not in (0, 1):
        raise ValueError("keep must be 0 or 1")
    T = M.reshape(dA, dB, dA, dB)
    if keep == 0:
        return np.einsum("ijkj->ik", T)
    return np.einsum("ijil->jl", T)


def hermitian_eig(M, atol: float = HERMITIAN_ATOL) -> Spectrum:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Columns of ``eigenvectors`` are orthonormal and ordered like
    ``eigenvalues``.
    """
    M = as_matrix(M)
    if not is_hermitian(M, atol):
        raise ValueError("hermitian_eig requires a Hermitian matrix")
    w, V = np.linalg.eigh(0.5 * (M + M.conj().T))
    order = np.argsort(w)[::-1]
    return Spectrum(w[order], V[:, order])
