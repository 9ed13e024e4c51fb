"""Derivation and certification of receiver-side correction unitaries."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from sixq.layout import get_layout
from sixq.measurement import ZERO_PROBABILITY, project
from sixq.qlinalg import DEFAULT_TOL, as_matrix, as_vector, dagger, gram, max_abs
from sixq.states import borras

PAULIS = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}
_PHASES = {"+": 1.0, "-": -1.0, "+i": 1j, "-i": -1j}


class CorrectionError(ValueError):
    """A branch cannot be corrected: zero probability or leaked information."""


@dataclass(frozen=True, eq=False)
class CorrectionUnitary:
    branch_id: tuple[str, str, str | None]
    matrix: np.ndarray
    unitarity_error: float
    probe_gram_error: float
    pauli: str | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def is_unitary(m, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"non-square matrix {m.shape}")
    return max_abs(dagger(m) @ m - np.eye(m.shape[0])) <= tol


def basis_change(source, target, tol: float = DEFAULT_TOL) -> np.ndarray:
    """U = sum_i |target_i><source_i|; both lists must be complete orthonormal sets."""
    src = np.array([as_vector(np.asarray(s)) for s in source])
    tgt = np.array([as_vector(np.asarray(t)) for t in target])
    if src.shape != tgt.shape or src.shape[0] != src.shape[1]:
        raise ValueError(f"need two complete sets of equal size, got {src.shape} and {tgt.shape}")
    for name, rows in (("source", src), ("target", tgt)):
        err = max_abs(gram(rows) - np.eye(len(rows)))
        if err > tol:
            raise CorrectionError(f"{name} set is not orthonormal (Gram error {err:.3g})")
    return tgt.T @ src.conj()


def pauli_factorization(u, tol: float = DEFAULT_TOL) -> str | None:
    """Name ``u`` as phase * P1 x P2 x ... if it is a signed Pauli tensor, e.g. ``-i*XZ``."""
    u = as_matrix(u)
    n = int(round(np.log2(u.shape[0])))
    for word in itertools.product("IXYZ", repeat=n):
        p = PAULIS[word[0]]
        for w in word[1:]:
            p = np.kron(p, PAULIS[w])
        for sign, phase in _PHASES.items():
            if max_abs(u - phase * p) <= tol:
                return f"{sign}{''.join(word)}"
    return None


def probe_collapse(protocol_id: str, probe: int, alice_outcome: str, bob_outcome: str | None) -> np.ndarray:
    """Unnormalized receiver state when the input is computational ket ``probe``
    and the outcome path is forced by projection."""
    layout = get_layout(protocol_id)
    dim_in = 2**layout.n_input
    e = np.zeros(dim_in, dtype=np.complex128)
    e[probe] = 1.0
    full = np.kron(e, borras().amplitudes)
    r = project(full, layout.alice_qubits, layout.alice_basis.element(alice_outcome))
    if layout.bob_basis_id is not None:
        if bob_outcome is None:
            raise ValueError(f"{protocol_id} needs a Bob outcome")
        r = project(r, layout.bob_local(), layout.bob_basis.element(bob_outcome))
    elif bob_outcome is not None:
        raise ValueError(f"{protocol_id} has no Bob measurement")
    return r


@lru_cache(maxsize=None)
def derive_branch_correction(
    protocol_id: str, alice_outcome: str, bob_outcome: str | None = None, tol: float = DEFAULT_TOL
) -> CorrectionUnitary:
    """Correction for one outcome path, derived from the computational probe inputs."""
    layout = get_layout(protocol_id)
    dim_in = 2**layout.n_input
    w = np.array([probe_collapse(protocol_id, j, alice_outcome, bob_outcome) for j in range(dim_in)])
    norms2 = np.einsum("ij,ij->i", w.conj(), w).real
    if norms2.min() <= ZERO_PROBABILITY:
        raise CorrectionError(
            f"{protocol_id} path ({alice_outcome}, {bob_outcome}) has zero probability for some input"
        )
    # the input -> collapse map must be a scaled isometry
    g = gram(w) / norms2.mean()
    gram_err = max_abs(g - np.eye(dim_in))
    if gram_err > tol:
        raise CorrectionError(
            f"{protocol_id} path ({alice_outcome}, {bob_outcome}): probe collapses not orthonormal "
            f"(error {gram_err:.3g})"
        )
    v = w / np.sqrt(norms2)[:, None]
    u = basis_change(v, np.eye(dim_in), tol)
    unit_err = max_abs(dagger(u) @ u - np.eye(dim_in))
    return CorrectionUnitary(
        (protocol_id, alice_outcome, bob_outcome), u, unit_err, gram_err, pauli_factorization(u, 1e-9)
    )
