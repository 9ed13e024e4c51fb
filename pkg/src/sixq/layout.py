"""Register layout and party ownership for each protocol variant.

The global register is ``[input qubits][channel qubits 1-6]``; indices here
are 0-based positions in that register.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from sixq.measurement import OrthonormalBasis, get_basis

PARTIES = ("Alice", "Bob", "Charlie")


@dataclass(frozen=True)
class ProtocolLayout:
    protocol_id: str
    n_input: int
    alice_qubits: tuple[int, ...]
    alice_basis_id: str
    receiver: str
    receiver_qubits: tuple[int, ...]
    bob_qubits: tuple[int, ...] = ()
    bob_basis_id: str | None = None

    @property
    def n_total(self) -> int:
        return self.n_input + 6

    @cached_property
    def ownership(self) -> dict[int, str]:
        owner = {q: "Alice" for q in self.alice_qubits}
        owner.update({q: "Bob" for q in self.bob_qubits})
        owner.update({q: self.receiver for q in self.receiver_qubits})
        if sorted(owner) != list(range(self.n_total)):
            raise ValueError(f"{self.protocol_id}: ownership is not total")
        return owner

    @property
    def alice_basis(self) -> OrthonormalBasis:
        return get_basis(self.alice_basis_id)

    @property
    def bob_basis(self) -> OrthonormalBasis | None:
        return get_basis(self.bob_basis_id) if self.bob_basis_id else None

    def bob_local(self) -> list[int]:
        """Bob's qubit positions after Alice's qubits are removed."""
        remaining = [q for q in range(self.n_total) if q not in self.alice_qubits]
        return [remaining.index(q) for q in self.bob_qubits]


def _qsts1(bob_basis_id: str, suffix: str) -> ProtocolLayout:
    # Alice: input + channel 1,2; Bob: channel 3,4; Charlie: channel 5,6
    return ProtocolLayout(f"qsts1-{suffix}", 2, (0, 1, 2, 3), "table1", "Charlie", (6, 7), (4, 5), bob_basis_id)


def _qsts2(alice_basis_id: str, bob_basis_id: str, family: str) -> ProtocolLayout:
    # Alice: input + channel 1-3; Bob: channel 4; Charlie: channel 5,6
    return ProtocolLayout(f"qsts2-{family}", 2, (0, 1, 2, 3, 4), alice_basis_id, "Charlie", (6, 7), (5,), bob_basis_id)


LAYOUTS = {
    # Alice: input + channel 1-3; Bob: channel 4-6
    "teleport3": ProtocolLayout("teleport3", 3, (0, 1, 2, 3, 4, 5), "generalized_bell_6", "Bob", (6, 7, 8)),
    "qsts1-bell": _qsts1("bell", "bell"),
    "qsts1-computational": _qsts1("computational_2", "computational"),
    "qsts2-IV": _qsts2("table4", "computational_1", "IV"),
    "qsts2-VI": _qsts2("table6", "hadamard", "VI"),
}


def get_layout(protocol_id: str) -> ProtocolLayout:
    try:
        return LAYOUTS[protocol_id]
    except KeyError:
        raise KeyError(f"unknown protocol {protocol_id!r}; choose from {sorted(LAYOUTS)}") from None
