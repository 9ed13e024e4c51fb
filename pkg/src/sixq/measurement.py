"""Measurement bases used by the protocols and a projective-measurement engine.

Qubit indices are 0-based positions in the register. Measured qubits are
removed; the remainder keeps the other qubits in their original order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from sixq.qlinalg import (
    DEFAULT_TOL,
    basis_ket,
    bitstrings,
    gram,
    max_abs,
    move_to_front,
    projector_sum,
)
from sixq.states import BELL_KINDS, PureState, bell, zeta

ZERO_PROBABILITY = 1e-14


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    basis_id: str
    n_qubits: int
    elements: tuple[PureState, ...]
    labels: tuple[str, ...]
    names: tuple[str, ...] = ()
    filler: tuple[bool, ...] = ()

    def __post_init__(self):
        if len(self.elements) != len(self.labels):
            raise ValueError("one label per element required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        if len(self.elements) > 2**self.n_qubits:
            raise ValueError("more elements than the dimension allows")
        if any(e.n_qubits != self.n_qubits for e in self.elements):
            raise ValueError("element qubit count mismatch")
        if not self.names:
            object.__setattr__(self, "names", tuple(self.labels))
        if not self.filler:
            object.__setattr__(self, "filler", (False,) * len(self.labels))
        err = max_abs(gram(self.elements) - np.eye(len(self.elements)))
        if err > DEFAULT_TOL:
            raise ValueError(f"{self.basis_id}: elements not orthonormal (Gram error {err:.3g})")

    def __len__(self):
        return len(self.elements)

    def matrix(self) -> np.ndarray:
        """Elements as rows."""
        return np.array([e.amplitudes for e in self.elements])

    def element(self, label: str) -> PureState:
        return self.elements[self.index(label)]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{self.basis_id} has no outcome {label!r}") from None

    def completeness_error(self) -> float:
        return max_abs(projector_sum(self.elements) - np.eye(2**self.n_qubits))

    def gram_error(self) -> float:
        return max_abs(gram(self.elements) - np.eye(len(self.elements)))

    @property
    def listed_labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, f in zip(self.labels, self.filler) if not f)

    @property
    def message_width(self) -> int:
        """Bits needed to name one outcome."""
        return max(1, math.ceil(math.log2(len(self.labels))))


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    label: str
    probability: float
    collapsed_remainder: PureState | None
    name: str = ""
    unnormalized: np.ndarray | None = field(default=None, repr=False)


def _signed(code: str, upper: bool) -> int:
    return {"+": 1, "-": -1, "pm": 1 if upper else -1, "mp": -1 if upper else 1}[code]


def _rows_to_elements(rows, table: str):
    """Expand rows of (sign-code, ket) terms into upper/lower sign variants.

    Label = 3-bit row index + variant bit (0 upper, 1 lower).
    """
    elements, labels, names = [], [], []
    for r, terms in enumerate(rows):
        for variant, upper in ((0, True), (1, False)):
            v = sum(_signed(code, upper) * basis_ket(bits) for code, bits in terms) / 2.0
            elements.append(PureState(len(terms[0][1]), v))
            labels.append(format(r, "03b") + str(variant))
            names.append(f"{table}.{r + 1}{'+' if upper else '-'}")
    return elements, labels, names


# Alice's outcome rows; kets read |in1 in2 ch1 ch2 ...>
TABLE1_ROWS = (
    (("+", "0000"), ("+", "1001"), ("pm", "0111"), ("pm", "1110")),
    (("+", "0000"), ("-", "1001"), ("pm", "0111"), ("mp", "1110")),
    (("+", "0001"), ("+", "1000"), ("pm", "0110"), ("pm", "1111")),
    (("+", "0001"), ("-", "1000"), ("pm", "0110"), ("mp", "1111")),
    (("+", "0011"), ("+", "1010"), ("pm", "0100"), ("pm", "1101")),
    (("+", "0011"), ("-", "1010"), ("pm", "0100"), ("mp", "1101")),
    (("+", "0010"), ("+", "1011"), ("pm", "0101"), ("pm", "1100")),
    (("+", "0010"), ("-", "1011"), ("pm", "0101"), ("mp", "1100")),
)

TABLE4_ROWS = (
    (("+", "00000"), ("+", "10001"), ("pm", "01011"), ("pm", "11010")),
    (("+", "00000"), ("-", "10001"), ("pm", "01011"), ("mp", "11010")),
    (("+", "00010"), ("+", "10011"), ("pm", "01101"), ("pm", "11100")),
    (("+", "00010"), ("-", "10011"), ("pm", "01101"), ("mp", "11100")),
    (("+", "00110"), ("+", "10111"), ("pm", "01001"), ("pm", "11000")),
    (("+", "00110"), ("-", "10111"), ("pm", "01001"), ("mp", "11000")),
    (("+", "00100"), ("+", "10101"), ("pm", "01010"), ("pm", "11011")),
    (("+", "00100"), ("-", "10101"), ("pm", "01010"), ("mp", "11011")),
)

TABLE6_ROWS = (
    (("+", "00000"), ("+", "10001"), ("pm", "01011"), ("pm", "11010")),
    (("+", "00000"), ("-", "10001"), ("pm", "01011"), ("mp", "11010")),
    (("+", "00101"), ("+", "10100"), ("pm", "01111"), ("pm", "11110")),
    (("+", "00101"), ("-", "10100"), ("pm", "01111"), ("mp", "11110")),
    (("+", "00110"), ("+", "10111"), ("pm", "01010"), ("pm", "11011")),
    (("+", "00110"), ("-", "10111"), ("pm", "01010"), ("mp", "11011")),
    (("+", "00100"), ("+", "10101"), ("pm", "01001"), ("pm", "11000")),
    (("+", "00100"), ("-", "10101"), ("pm", "01001"), ("mp", "11000")),
)


@lru_cache(maxsize=None)
def generalized_bell_basis_6() -> OrthonormalBasis:
    """B_{a,b} = 8**-0.5 sum_i (-1)^(b.i) |i>|i xor a>, labelled by bits a+b."""
    elements, labels = [], []
    for a in range(8):
        for b in range(8):
            v = np.zeros(64, dtype=np.complex128)
            for i in range(8):
                v[(i << 3) | (i ^ a)] = (-1) ** bin(b & i).count("1")
            elements.append(PureState(6, v / np.sqrt(8.0)))
            labels.append(format(a, "03b") + format(b, "03b"))
    return OrthonormalBasis("generalized_bell_6", 6, tuple(elements), tuple(labels))


@lru_cache(maxsize=None)
def table1_basis() -> OrthonormalBasis:
    elements, labels, names = _rows_to_elements(TABLE1_ROWS, "I")
    return OrthonormalBasis("table1", 4, tuple(elements), tuple(labels), tuple(names))


_SPLIT_BASES = {
    "computational": np.eye(2, dtype=np.complex128),
    "hadamard": np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0),
}


@lru_cache(maxsize=None)
def _charlie_overlap(c: str, d: str, split: str) -> bool:
    """True if zeta_c and zeta_d overlap on the last two qubits once the first
    qubit is projected onto some element of the ``split`` basis."""
    zc = zeta(c).amplitudes.reshape(2, 4)
    zd = zeta(d).amplitudes.reshape(2, 4)
    rows = _SPLIT_BASES[split].conj()
    return max_abs(np.einsum("ij,ij->i", (rows @ zc).conj(), rows @ zd)) > DEFAULT_TOL


def _complement_groups(rows, split: str) -> list[list[str]]:
    """Group the kets missing from ``rows`` into four-ket sets, one ket per
    input pair and with distinct channel bits inside each set.

    Two channel values may share a set only if their zeta states stay
    orthogonal on the last two qubits after the first qubit is measured in the
    ``split`` basis, so every outcome built from the set is correctable.
    """
    inputs = [t[1][:2] for t in rows[0]]
    used = {bits for terms in rows for _, bits in terms}
    missing = {i: [c for c in bitstrings(3) if i + c not in used] for i in inputs}
    n_groups = len(missing[inputs[0]])
    groups: list[list[str]] = [[] for _ in range(n_groups)]
    taken = {i: set() for i in inputs}

    def fill(g: int, k: int) -> bool:
        if g == n_groups:
            return True
        if k == len(inputs):
            return fill(g + 1, 0)
        i = inputs[k]
        for c in missing[i]:
            if c in taken[i] or any(_charlie_overlap(ket[2:], c, split) for ket in groups[g]):
                continue
            groups[g].append(i + c)
            taken[i].add(c)
            if fill(g, k + 1):
                return True
            groups[g].pop()
            taken[i].discard(c)
        return False

    if not fill(0, 0):
        raise RuntimeError("no correctable completion exists")
    return groups


def complement_rows(rows, split: str):
    """Rows spanning the orthogonal complement, with the printed sign pattern."""
    out = []
    for kets in _complement_groups(rows, split):
        for pattern in rows[:2]:
            out.append(tuple((code, ket) for (code, _), ket in zip(pattern, kets)))
    return tuple(out)


def _completed_five_qubit(rows, table: str, basis_id: str, completion: str, split: str) -> OrthonormalBasis:
    elements, labels, names = _rows_to_elements(rows, table)
    labels = ["0" + lab for lab in labels]
    if completion == "ghz":
        extra, extra_labels, extra_names = _rows_to_elements(complement_rows(rows, split), table + "c")
        extra_labels = ["1" + lab for lab in extra_labels]
    elif completion == "computational":
        used = {bits for terms in rows for _, bits in terms}
        fillers = [b for b in bitstrings(5) if b not in used]
        extra = [PureState.from_bits(b) for b in fillers]
        extra_labels = ["1" + format(k, "04b") for k in range(len(fillers))]
        extra_names = [f"filler|{b}>" for b in fillers]
    else:
        raise ValueError(f"unknown completion {completion!r}")
    flags = (False,) * len(elements) + (True,) * len(extra)
    return OrthonormalBasis(
        f"{basis_id}" if completion == "ghz" else f"{basis_id}-{completion}",
        5,
        tuple(elements + extra),
        tuple(labels + extra_labels),
        tuple(names + extra_names),
        flags,
    )


@lru_cache(maxsize=None)
def table4_basis(completion: str = "ghz") -> OrthonormalBasis:
    """The 16 printed five-qubit outcomes plus 16 completing elements.

    ``completion="ghz"`` (default) groups the absent kets into GHZ-type rows
    that stay correctable under Bob's computational-basis measurement;
    ``"computational"`` appends the absent kets themselves.
    Printed outcomes carry labels ``0rrrv``, completing ones ``1....``.
    """
    return _completed_five_qubit(TABLE4_ROWS, "IV", "table4", completion, "computational")


@lru_cache(maxsize=None)
def table6_basis(completion: str = "ghz") -> OrthonormalBasis:
    """As ``table4_basis``, with the completion matched to Bob's Hadamard measurement."""
    return _completed_five_qubit(TABLE6_ROWS, "VI", "table6", completion, "hadamard")


BELL_LABELS = {"phi_plus": "00", "phi_minus": "01", "psi_plus": "10", "psi_minus": "11"}


@lru_cache(maxsize=None)
def bell_basis() -> OrthonormalBasis:
    return OrthonormalBasis(
        "bell",
        2,
        tuple(bell(k) for k in BELL_KINDS),
        tuple(BELL_LABELS[k] for k in BELL_KINDS),
        ("phi+", "phi-", "psi+", "psi-"),
    )


@lru_cache(maxsize=None)
def computational_basis(k: int) -> OrthonormalBasis:
    if k < 1:
        raise ValueError("k must be >= 1")
    labels = tuple(bitstrings(k))
    return OrthonormalBasis(f"computational_{k}", k, tuple(PureState.from_bits(b) for b in labels), labels)


@lru_cache(maxsize=None)
def hadamard_basis() -> OrthonormalBasis:
    s = 1.0 / np.sqrt(2.0)
    return OrthonormalBasis(
        "hadamard",
        1,
        (PureState(1, np.array([s, s])), PureState(1, np.array([s, -s]))),
        ("0", "1"),
        ("+", "-"),
    )


BASES = {
    "generalized_bell_6": generalized_bell_basis_6,
    "table1": table1_basis,
    "table4": table4_basis,
    "table6": table6_basis,
    "table4-computational": lambda: table4_basis("computational"),
    "table6-computational": lambda: table6_basis("computational"),
    "bell": bell_basis,
    "computational_1": lambda: computational_basis(1),
    "computational_2": lambda: computational_basis(2),
    "hadamard": hadamard_basis,
}


def get_basis(basis_id: str) -> OrthonormalBasis:
    try:
        return BASES[basis_id]()
    except KeyError:
        raise KeyError(f"unknown basis {basis_id!r}") from None


def _register(state) -> tuple[np.ndarray, int]:
    if isinstance(state, PureState):
        return state.amplitudes, state.n_qubits
    v = np.asarray(state, dtype=np.complex128)
    return v, int(round(np.log2(v.size)))


def project(state, measured_qubits, element) -> np.ndarray:
    """Unnormalized remainder ``(<element| x I) |state>``."""
    v, n = _register(state)
    e = element.amplitudes if isinstance(element, PureState) else np.asarray(element)
    return e.conj() @ move_to_front(v, n, measured_qubits)


def _check(state, measured_qubits, basis: OrthonormalBasis, tol: float):
    _, n = _register(state)
    if basis.n_qubits != len(measured_qubits):
        raise ValueError(f"basis acts on {basis.n_qubits} qubits, {len(measured_qubits)} given")
    if len(measured_qubits) >= n:
        raise ValueError("at least one qubit must remain unmeasured")
    err = basis.completeness_error()
    if err > tol:
        raise ValueError(f"basis {basis.basis_id} is incomplete (projector-sum error {err:.3g})")


def measure_enumerate(state, measured_qubits, basis: OrthonormalBasis, tol: float = DEFAULT_TOL):
    """All outcomes of a projective measurement, one per basis element."""
    measured_qubits = list(measured_qubits)
    _check(state, measured_qubits, basis, tol)
    v, n = _register(state)
    remainders = basis.matrix().conj() @ move_to_front(v, n, measured_qubits)
    rest = n - len(measured_qubits)
    outcomes = []
    for label, name, r in zip(basis.labels, basis.names, remainders):
        p = float(np.vdot(r, r).real)
        collapsed = PureState(rest, r / np.sqrt(p)) if p > ZERO_PROBABILITY else None
        outcomes.append(MeasurementOutcome(label, p, collapsed, name, r))
    return outcomes


def measure_sample(state, measured_qubits, basis: OrthonormalBasis, seed, tol: float = DEFAULT_TOL):
    """Sample one outcome; ``seed`` is an int or a ``numpy.random.Generator``."""
    rng = np.random.default_rng(seed)
    outcomes = measure_enumerate(state, measured_qubits, basis, tol)
    p = np.array([o.probability for o in outcomes])
    return outcomes[rng.choice(len(outcomes), p=p / p.sum())]


def dump_basis(basis: OrthonormalBasis) -> str:
    """One line per element: label followed by comma-separated re,im pairs."""
    lines = []
    for label, e in zip(basis.labels, basis.elements):
        nums = ",".join(f"{a.real:.17g},{a.imag:.17g}" for a in e.amplitudes)
        lines.append(f"{label},{nums}")
    return "\n".join(lines) + "\n"


def load_basis(text: str, basis_id: str = "loaded") -> OrthonormalBasis:
    elements, labels = [], []
    for line in text.splitlines():
        if not line.strip():
            continue
        label, *nums = line.split(",")
        vals = np.array([float(x) for x in nums])
        elements.append(PureState.from_vector(vals[0::2] + 1j * vals[1::2]))
        labels.append(label)
    return OrthonormalBasis(basis_id, elements[0].n_qubits, tuple(elements), tuple(labels))
