"""Party-level runs of the three protocols with auditable transcripts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from sixq.correction import derive_branch_correction
from sixq.entanglement import partial_trace
from sixq.layout import ProtocolLayout, get_layout
from sixq.measurement import (
    ZERO_PROBABILITY,
    MeasurementOutcome,
    OrthonormalBasis,
    measure_enumerate,
    measure_sample,
)
from sixq.qlinalg import DEFAULT_TOL, apply_operator
from sixq.states import PureState, borras, fidelity


@dataclass(frozen=True)
class ClassicalMessage:
    sender: str
    receiver: str
    bits: str


@dataclass(frozen=True)
class MeasurementEvent:
    party: str
    qubits: tuple[int, ...]
    basis_id: str
    outcome: str
    outcome_name: str
    probability: float


@dataclass(frozen=True)
class MessageEvent:
    message: ClassicalMessage


@dataclass(frozen=True)
class UnitaryEvent:
    party: str
    branch_id: tuple
    depends_on: tuple[ClassicalMessage, ...]
    pauli: str | None = None


@dataclass(eq=False)
class ProtocolTranscript:
    protocol_id: str
    input_state: PureState
    events: list = field(default_factory=list)
    output_state: PureState | None = None
    received_state: PureState | None = None
    probability: float = 1.0
    fidelity: float = 0.0

    def messages(self) -> list[ClassicalMessage]:
        return [e.message for e in self.events if isinstance(e, MessageEvent)]

    def is_causal(self) -> bool:
        """Every unitary depends only on messages already delivered to its party."""
        delivered: list[ClassicalMessage] = []
        for e in self.events:
            if isinstance(e, MessageEvent):
                delivered.append(e.message)
            elif isinstance(e, UnitaryEvent):
                if any(m not in delivered or m.receiver != e.party for m in e.depends_on):
                    return False
        return True

    def to_dict(self) -> dict:
        events = []
        for e in self.events:
            if isinstance(e, MeasurementEvent):
                events.append({
                    "type": "measurement", "party": e.party, "qubits": list(e.qubits),
                    "basis": e.basis_id, "outcome": e.outcome, "outcome_name": e.outcome_name,
                    "probability": e.probability,
                })
            elif isinstance(e, MessageEvent):
                m = e.message
                events.append({"type": "message", "sender": m.sender, "receiver": m.receiver,
                               "bits": m.bits, "n_bits": len(m.bits)})
            else:
                events.append({"type": "unitary", "party": e.party, "branch_id": list(e.branch_id),
                               "pauli": e.pauli})
        return {
            "protocol": self.protocol_id,
            "probability": self.probability,
            "fidelity": self.fidelity,
            "events": events,
            "input_state": _amps(self.input_state),
            "received_state": _amps(self.received_state),
            "output_state": _amps(self.output_state),
            "cbits": {f"{s}->{r}": n for (s, r), n in cbit_accounting(self).items()},
        }


def _amps(state: PureState | None):
    if state is None:
        return None
    return [[float(a.real), float(a.imag)] for a in state.amplitudes]


def cbit_accounting(transcript: ProtocolTranscript) -> dict[tuple[str, str], int]:
    totals: Counter = Counter()
    for m in transcript.messages():
        totals[(m.sender, m.receiver)] += len(m.bits)
    return dict(totals)


def _message(sender: str, receiver: str, basis: OrthonormalBasis, outcome: MeasurementOutcome) -> ClassicalMessage:
    if len(outcome.label) != basis.message_width:
        raise ValueError(f"outcome {outcome.label!r} of {basis.basis_id} cannot be sent in {basis.message_width} bits")
    return ClassicalMessage(sender, receiver, outcome.label)


def _finish(layout: ProtocolLayout, t: ProtocolTranscript, received: PureState, alice, bob, msgs):
    corr = derive_branch_correction(layout.protocol_id, alice.label, bob.label if bob else None)
    t.events.append(UnitaryEvent(layout.receiver, corr.branch_id, tuple(msgs), corr.pauli))
    out = apply_operator(corr.matrix, received.amplitudes)
    t.received_state = received
    t.output_state = PureState.from_vector(out, normalize=True)
    t.fidelity = fidelity(t.input_state, t.output_state)
    return t


def _run(layout: ProtocolLayout, input_state: PureState, mode: str, seed=None):
    if input_state.n_qubits != layout.n_input:
        raise ValueError(f"{layout.protocol_id} takes a {layout.n_input}-qubit input")
    if mode not in ("enumerate", "sample"):
        raise ValueError(f"mode must be 'enumerate' or 'sample', got {mode!r}")
    full = input_state.tensor(borras())
    alice_basis, bob_basis = layout.alice_basis, layout.bob_basis
    # Alice's outcome is reported to whoever holds the corrective qubits
    alice_to = layout.receiver
    rng = np.random.default_rng(seed) if mode == "sample" else None

    if mode == "enumerate":
        alice_outcomes = [o for o in measure_enumerate(full, layout.alice_qubits, alice_basis)
                          if o.probability > ZERO_PROBABILITY]
    else:
        alice_outcomes = [measure_sample(full, layout.alice_qubits, alice_basis, rng)]

    transcripts = []
    for a in alice_outcomes:
        a_msg = _message("Alice", alice_to, alice_basis, a)
        head = [
            MeasurementEvent("Alice", layout.alice_qubits, alice_basis.basis_id, a.label, a.name, a.probability),
            MessageEvent(a_msg),
        ]
        if bob_basis is None:
            t = ProtocolTranscript(layout.protocol_id, input_state, list(head), probability=a.probability)
            transcripts.append(_finish(layout, t, a.collapsed_remainder, a, None, [a_msg]))
            continue
        bob_local = layout.bob_local()
        if mode == "enumerate":
            bob_outcomes = [o for o in measure_enumerate(a.collapsed_remainder, bob_local, bob_basis)
                            if o.probability > ZERO_PROBABILITY]
        else:
            bob_outcomes = [measure_sample(a.collapsed_remainder, bob_local, bob_basis, rng)]
        for b in bob_outcomes:
            b_msg = _message("Bob", layout.receiver, bob_basis, b)
            events = head + [
                MeasurementEvent("Bob", layout.bob_qubits, bob_basis.basis_id, b.label, b.name, b.probability),
                MessageEvent(b_msg),
            ]
            t = ProtocolTranscript(layout.protocol_id, input_state, events, probability=a.probability * b.probability)
            transcripts.append(_finish(layout, t, b.collapsed_remainder, a, b, [a_msg, b_msg]))
    return transcripts if mode == "enumerate" else transcripts[0]


def teleport3(input_state: PureState, mode: str = "enumerate", seed=None):
    """Teleport a three-qubit state from Alice to Bob.

    Returns every reachable branch for ``mode="enumerate"``, one sampled
    transcript for ``mode="sample"``.
    """
    return _run(get_layout("teleport3"), input_state, mode, seed)


def qsts1(input_state: PureState, bob_basis: str = "bell", mode: str = "enumerate", seed=None):
    """Share a two-qubit state with Alice holding channel qubits 1-2, Bob 3-4
    and Charlie 5-6; ``bob_basis`` is ``"bell"`` or ``"computational"``."""
    return _run(get_layout(f"qsts1-{bob_basis}"), input_state, mode, seed)


def qsts2(input_state: PureState, alice_family: str = "IV", mode: str = "enumerate", seed=None):
    """Share a two-qubit state with Alice holding channel qubits 1-3, Bob 4 and
    Charlie 5-6. Family ``"IV"`` pairs with a computational Bob measurement,
    ``"VI"`` with a Hadamard one."""
    return _run(get_layout(f"qsts2-{alice_family}"), input_state, mode, seed)


def receiver_marginal_after_alice(protocol_id: str, input_state: PureState, alice_outcome: str) -> np.ndarray:
    """Charlie's reduced density matrix given only Alice's outcome."""
    layout = get_layout(protocol_id)
    full = input_state.tensor(borras())
    outcomes = measure_enumerate(full, layout.alice_qubits, layout.alice_basis)
    a = outcomes[layout.alice_basis.index(alice_outcome)]
    if a.collapsed_remainder is None:
        raise ValueError(f"outcome {alice_outcome!r} is unreachable")
    remaining = [q for q in range(layout.n_total) if q not in layout.alice_qubits]
    keep = [remaining.index(q) for q in layout.receiver_qubits]
    return partial_trace(a.collapsed_remainder, keep).matrix


def min_fidelity(transcripts) -> float:
    return min(t.fidelity for t in transcripts)


def total_probability(transcripts) -> float:
    return float(sum(t.probability for t in transcripts))


def branch_ok(t: ProtocolTranscript, tol: float = DEFAULT_TOL) -> bool:
    return t.fidelity >= 1 - tol and t.is_causal()
