"""Named states: Bell pairs, the six-qubit Borras channel, the zeta and eta
frames, seeded random inputs, and fidelity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from sixq.qlinalg import DEFAULT_TOL, as_vector, basis_ket, inner_product, kron_all

SQRT_HALF = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector over ``n_qubits`` qubits."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = as_vector(self.amplitudes).copy()
        if amps.size != 2**self.n_qubits:
            raise ValueError(f"{amps.size} amplitudes do not describe {self.n_qubits} qubits")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > DEFAULT_TOL:
            raise ValueError(f"state not normalized (norm {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_vector(cls, v, normalize: bool = False) -> "PureState":
        v = as_vector(v)
        n = int(round(np.log2(v.size)))
        if 2**n != v.size:
            raise ValueError(f"length {v.size} is not a power of two")
        if normalize:
            v = v / np.linalg.norm(v)
        return cls(n, v)

    @classmethod
    def from_bits(cls, bits: str) -> "PureState":
        return cls(len(bits), basis_ket(bits))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def tensor(self, other: "PureState") -> "PureState":
        return PureState(self.n_qubits + other.n_qubits, np.kron(self.amplitudes, other.amplitudes))

    def density(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class CoefficientQuad:
    """Two-qubit input ``c00|00> + c01|01> + c10|10> + c11|11>``."""

    c00: complex
    c01: complex
    c10: complex
    c11: complex

    def __post_init__(self):
        norm2 = sum(abs(c) ** 2 for c in self.as_tuple())
        if abs(norm2 - 1.0) > DEFAULT_TOL:
            raise ValueError(f"coefficients not normalized (sum |c|^2 = {norm2!r})")

    @classmethod
    def from_greek(cls, alpha, beta, gamma, delta) -> "CoefficientQuad":
        # alpha|00> + beta|10> + gamma|01> + delta|11>
        return cls(c00=alpha, c01=gamma, c10=beta, c11=delta)

    @classmethod
    def from_state(cls, state: PureState) -> "CoefficientQuad":
        if state.n_qubits != 2:
            raise ValueError("a coefficient quad needs a two-qubit state")
        return cls(*(complex(a) for a in state.amplitudes))

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.c00, self.c01, self.c10, self.c11)

    def state(self) -> PureState:
        return PureState(2, np.array(self.as_tuple(), dtype=np.complex128))


BELL_KINDS = ("phi_plus", "phi_minus", "psi_plus", "psi_minus")
_BELL_ALIASES = {"phi+": "phi_plus", "phi-": "phi_minus", "psi+": "psi_plus", "psi-": "psi_minus"}


def _bell_vector(kind: str) -> np.ndarray:
    kind = _BELL_ALIASES.get(kind, kind)
    s = SQRT_HALF
    table = {
        "phi_plus": [s, 0, 0, s],
        "phi_minus": [s, 0, 0, -s],
        "psi_plus": [0, s, s, 0],
        "psi_minus": [0, s, -s, 0],
    }
    if kind not in table:
        raise ValueError(f"unknown Bell state {kind!r}")
    return np.array(table[kind], dtype=np.complex128)


def bell(kind: str) -> PureState:
    """phi+- = (|00> +- |11>)/sqrt2, psi+- = (|01> +- |10>)/sqrt2."""
    return PureState(2, _bell_vector(kind))


# (label, [(sign, single-qubit bit, bell kind), ...]) for each bracket of the
# channel, e.g. "000": |0>|phi+> + |1>|psi+>
_CHANNEL_TERMS = {
    "000": [(+1, "0", "phi_plus"), (+1, "1", "psi_plus")],
    "001": [(+1, "0", "psi_minus"), (-1, "1", "phi_minus")],
    "010": [(+1, "0", "psi_plus"), (-1, "1", "phi_plus")],
    "011": [(+1, "0", "phi_minus"), (+1, "1", "psi_minus")],
    "100": [(-1, "0", "psi_minus"), (-1, "1", "phi_minus")],
    "101": [(-1, "0", "phi_plus"), (+1, "1", "psi_plus")],
    "110": [(+1, "0", "phi_minus"), (-1, "1", "psi_minus")],
    "111": [(+1, "0", "psi_plus"), (+1, "1", "phi_plus")],
}


def _bracket(label: str) -> np.ndarray:
    return sum(
        sign * kron_all(basis_ket(bit), _bell_vector(kind))
        for sign, bit, kind in _CHANNEL_TERMS[label]
    )


def borras() -> PureState:
    """The six-qubit channel: (1/4) sum_b |b> (bracket_b), 32 nonzero amplitudes."""
    v = sum(kron_all(basis_ket(b), _bracket(b)) for b in _CHANNEL_TERMS) / 4.0
    return PureState(6, v)


def zeta(label) -> PureState:
    """Three-qubit collapse state for a 3-bit label ("000".."111").

    An integer 1..8 selects the same states by their position in that order.
    """
    if isinstance(label, (int, np.integer)):
        if not 1 <= label <= 8:
            raise ValueError(f"zeta index must be in 1..8, got {label}")
        label = format(int(label) - 1, "03b")
    if label not in _CHANNEL_TERMS:
        raise ValueError(f"invalid zeta label {label!r}")
    return PureState(3, _bracket(label) * SQRT_HALF)


# eta_i = (1/2) sum sign * |bell>_{34} |bits>_{56}
_ETA_TERMS = {
    1: [(+1, "phi_minus", "00"), (+1, "phi_plus", "11"), (+1, "psi_plus", "01"), (+1, "psi_minus", "10")],
    2: [(-1, "psi_minus", "00"), (-1, "psi_plus", "11"), (+1, "phi_plus", "01"), (+1, "phi_minus", "10")],
    3: [(+1, "phi_plus", "00"), (-1, "phi_minus", "11"), (-1, "psi_minus", "01"), (+1, "psi_plus", "10")],
    4: [(-1, "psi_plus", "00"), (+1, "psi_minus", "11"), (+1, "phi_plus", "10"), (-1, "phi_minus", "01")],
}


def eta(i: int) -> PureState:
    if i not in _ETA_TERMS:
        raise ValueError(f"eta index must be in 1..4, got {i!r}")
    v = sum(sign * kron_all(_bell_vector(kind), basis_ket(bits)) for sign, kind, bits in _ETA_TERMS[i])
    return PureState(4, v / 2.0)


def random_state(n_qubits: int, seed: int) -> PureState:
    """Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized."""
    if n_qubits < 1:
        raise ValueError("n_qubits must be >= 1")
    rng = np.random.default_rng(seed)
    dim = 2**n_qubits
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(n_qubits, v / np.linalg.norm(v))


def fidelity(a: PureState, b: PureState) -> float:
    """|<a|b>|^2, clipped to [0, 1]."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits")
    return float(min(1.0, abs(inner_product(a.amplitudes, b.amplitudes)) ** 2))
