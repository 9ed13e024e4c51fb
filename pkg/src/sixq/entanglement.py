"""Reduced states and entanglement measures for checking the channel."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from sixq.qlinalg import DEFAULT_TOL, as_matrix, max_abs, move_to_front
from sixq.states import PureState

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix).copy()
        dim = 2**self.n_qubits
        if m.shape != (dim, dim):
            raise ValueError(f"shape {m.shape} does not describe {self.n_qubits} qubits")
        if max_abs(m - m.conj().T) > DEFAULT_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > DEFAULT_TOL:
            raise ValueError(f"density matrix trace {np.trace(m).real!r} != 1")
        if np.linalg.eigvalsh(m).min() < -DEFAULT_TOL:
            raise ValueError("density matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_state(cls, state: PureState) -> "DensityMatrix":
        return cls(state.n_qubits, state.density())

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True)
class MonogamyReport:
    focus_qubit: int
    pairwise_tangles: tuple[float, ...]
    one_tangle: float

    @property
    def slack(self) -> float:
        return self.one_tangle - sum(self.pairwise_tangles)


def partial_trace(state, keep) -> DensityMatrix:
    """Reduced density matrix of the qubits in ``keep`` (0-based, output in that order)."""
    keep = list(keep)
    if not keep:
        raise ValueError("keep must be non-empty")
    if isinstance(state, PureState):
        m = move_to_front(state.amplitudes, state.n_qubits, keep)
        return DensityMatrix(len(keep), m @ m.conj().T)
    rho = state if isinstance(state, DensityMatrix) else DensityMatrix(
        int(round(np.log2(len(state)))), state
    )
    n = rho.n_qubits
    if len(set(keep)) != len(keep) or any(not 0 <= q < n for q in keep):
        raise ValueError(f"bad qubit indices {keep} for {n} qubits")
    rest = [q for q in range(n) if q not in keep]
    t = rho.matrix.reshape([2] * (2 * n)).transpose(keep + rest + [n + q for q in keep + rest])
    k, r = 2 ** len(keep), 2 ** len(rest)
    t = t.reshape(k, r, k, r)
    return DensityMatrix(len(keep), np.einsum("ajbj->ab", t))


def purity(rho: DensityMatrix) -> float:
    m = rho.matrix
    return float(np.real(np.trace(m @ m)))


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else DensityMatrix(2, rho).matrix
    if m.shape != (4, 4):
        raise ValueError("concurrence needs a two-qubit density matrix")
    w, v = np.linalg.eigh(m)
    if w.min() < -DEFAULT_TOL:
        raise ValueError("input is not positive semidefinite")
    sqrt_rho = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    flipped = _YY @ m.conj() @ _YY
    h = sqrt_rho @ flipped @ sqrt_rho
    h = (h + h.conj().T) / 2
    lam = np.sqrt(np.clip(np.linalg.eigvalsh(h), 0.0, None))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def one_tangle(state: PureState, focus: int) -> float:
    rho = partial_trace(state, [focus]).matrix
    return float(np.clip(4.0 * np.linalg.det(rho).real, 0.0, 1.0))


def monogamy_check(state: PureState, focus: int) -> MonogamyReport:
    others = [q for q in range(state.n_qubits) if q != focus]
    pairwise = tuple(concurrence(partial_trace(state, [focus, q])) ** 2 for q in others)
    return MonogamyReport(focus, pairwise, one_tangle(state, focus))


def mixedness_report(state: PureState, k: int) -> float:
    """Largest max-norm distance of any k-qubit marginal from identity / 2**k."""
    if not 1 <= k <= state.n_qubits - 1:
        raise ValueError(f"k must be in 1..{state.n_qubits - 1}")
    target = np.eye(2**k) / 2**k
    return max(
        max_abs(partial_trace(state, list(subset)).matrix - target)
        for subset in combinations(range(state.n_qubits), k)
    )
