"""Dense state-vector simulation of teleportation and state sharing over the
six-qubit Borras channel."""

from sixq.qlinalg import DEFAULT_TOL
from sixq.states import (
    CoefficientQuad,
    PureState,
    bell,
    borras,
    eta,
    fidelity,
    random_state,
    zeta,
)

__all__ = [
    "DEFAULT_TOL",
    "CoefficientQuad",
    "PureState",
    "bell",
    "borras",
    "eta",
    "fidelity",
    "random_state",
    "zeta",
]
