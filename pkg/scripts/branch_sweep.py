"""Enumerate every branch of every protocol over random inputs and summarize."""

import argparse
import time

from sixq.protocols import cbit_accounting, qsts1, qsts2, teleport3
from sixq.states import random_state

PROTOCOLS = {
    "teleport3": (3, teleport3),
    "qsts1-bell": (2, lambda s: qsts1(s, "bell")),
    "qsts1-computational": (2, lambda s: qsts1(s, "computational")),
    "qsts2-IV": (2, lambda s: qsts2(s, "IV")),
    "qsts2-VI": (2, lambda s: qsts2(s, "VI")),
}

def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--inputs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    print(f"{'protocol':<22}{'branches':>9}{'min p':>12}{'max p':>12}{'1 - min F':>12}  cbits  sec")
    for name, (n, runner) in PROTOCOLS.items():
        t0 = time.perf_counter()
        probs, fids, counts = [], [], set()
        for i in range(args.inputs):
            ts = runner(random_state(n, args.seed + i))
            counts.add(len(ts))
            probs += [t.probability for t in ts]
            fids += [t.fidelity for t in ts]
        cbits = ",".join(f"{s[0]}{r[0]}={k}" for (s, r), k in cbit_accounting(ts[0]).items())
        print(f"{name:<22}{'/'.join(map(str, sorted(counts))):>9}{min(probs):>12.4g}{max(probs):>12.4g}"
              f"{1 - min(fids):>12.2e}  {cbits}  {time.perf_counter() - t0:.2f}")

if __name__ == "__main__":
    main()
