"""How much Charlie learns from Alice's message alone, per Alice outcome."""

import argparse

import numpy as np

from sixq.layout import get_layout
from sixq.protocols import receiver_marginal_after_alice
from sixq.qlinalg import max_abs
from sixq.states import random_state


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--protocol", default="qsts1-bell", choices=("qsts1-bell", "qsts2-IV", "qsts2-VI"))
    p.add_argument("--inputs", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    basis = get_layout(args.protocol).alice_basis
    states = [random_state(2, args.seed + i) for i in range(args.inputs)]
    for label, name in zip(basis.labels, basis.names):
        rhos = [receiver_marginal_after_alice(args.protocol, s, label) for s in states]
        dev = max(max_abs(r - rhos[0]) for r in rhos)
        purity = np.mean([np.trace(r @ r).real for r in rhos])
        print(f"{label}  {name:<8} max deviation {dev:.4f}  mean purity {purity:.4f}")


if __name__ == "__main__":
    main()
