"""Dense complex vector/matrix kernel.

Vectors are 1-d ``complex128`` arrays, matrices 2-d ``complex128`` arrays.
Qubit 1 is the most significant bit: ``|i1 i2 ... in>`` sits at index
``sum(ik * 2**(n-k))``.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

DEFAULT_TOL = 1e-10


def as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"expected a non-empty 1-d amplitude vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("amplitudes must be finite")
    return arr


def as_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; entry ``i*len(b) + j`` is ``a[i] * b[j]``."""
    return np.kron(as_vector(a), as_vector(b))


def kron_all(*vectors) -> np.ndarray:
    return reduce(tensor_product, vectors)


def inner_product(a, b) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    a, b = as_vector(a), as_vector(b)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    return complex(np.vdot(a, b))


def apply_operator(m, v) -> np.ndarray:
    m, v = as_matrix(m), as_vector(v)
    if m.shape[1] != v.size:
        raise ValueError(f"dimension mismatch: matrix {m.shape} on vector of length {v.size}")
    return m @ v


def dagger(m) -> np.ndarray:
    return as_matrix(m).conj().T


def basis_ket(bits: str) -> np.ndarray:
    """Computational ket for a bit-string such as ``"0110"``."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"invalid bit-string {bits!r}")
    v = np.zeros(2 ** len(bits), dtype=np.complex128)
    v[int(bits, 2)] = 1.0
    return v


def bitstrings(n: int) -> list[str]:
    return [format(i, f"0{n}b") for i in range(2**n)]


def max_abs(m) -> float:
    return float(np.max(np.abs(m))) if np.size(m) else 0.0


def gram(vectors) -> np.ndarray:
    """Gram matrix ``G[i, j] = <v_i|v_j>``."""
    rows = np.array([as_vector(v) for v in vectors])
    return rows.conj() @ rows.T


def projector_sum(vectors) -> np.ndarray:
    rows = np.array([as_vector(v) for v in vectors])
    return rows.T @ rows.conj()


def move_to_front(vector, n_qubits: int, qubits) -> np.ndarray:
    """Reshape an n-qubit vector into ``(2**k, 2**(n-k))`` with ``qubits``
    (0-based, in the given order) as the row index and the remaining qubits,
    in their original relative order, as the column index."""
    qubits = list(qubits)
    if len(set(qubits)) != len(qubits) or any(not 0 <= q < n_qubits for q in qubits):
        raise ValueError(f"bad qubit indices {qubits} for a {n_qubits}-qubit register")
    rest = [q for q in range(n_qubits) if q not in qubits]
    t = np.asarray(vector).reshape([2] * n_qubits).transpose(qubits + rest)
    return t.reshape(2 ** len(qubits), 2 ** len(rest))


def permute_qubits(vector, order) -> np.ndarray:
    """Return the vector whose qubit ``k`` is qubit ``order[k]`` of the input."""
    n = len(order)
    return np.asarray(vector).reshape([2] * n).transpose(list(order)).reshape(2**n)
