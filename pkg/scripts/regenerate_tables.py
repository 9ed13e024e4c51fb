"""Print every regenerated table row next to its printed form."""

import argparse

from sixq.tables import TABLE_IDS, label_legend, regenerate_table


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--table", choices=TABLE_IDS, action="append", help="repeatable; default all")
    p.add_argument("--diffs-only", action="store_true")
    args = p.parse_args()

    legend = label_legend()
    print("labels: " + ", ".join(f"{k}={v}" for k, v in legend.items()))
    failed = False
    for t in args.table or TABLE_IDS:
        rep = regenerate_table(t)
        print(f"\nTable {t}: {'ok' if rep.passed else 'UNDOCUMENTED MISMATCH'}")
        for r in rep.rows:
            if args.diffs_only and r.status == "match":
                continue
            flag = " (documented)" if r.documented else ""
            print(f"  {r.row}{r.variant:<2} {r.status:<12}{flag}")
            if r.status != "match":
                print(f"      printed: {r.printed}")
                print(f"      oracle:  {r.oracle}")
        failed |= not rep.passed
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
