"""Recompute the phi and psi boundary tables and compare with the reference values."""

import argparse
import time
from pathlib import Path

from locuskit import reference as ref
from locuskit.io import write_csv
from locuskit.star import alpha2, alpha3, phi, psi


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("out"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    print(f"alpha2 = {alpha2():.9f}   alpha3 = {alpha3():.9f}")
    for name, fn, table in (("phi", phi, ref.PHI_TABLE), ("psi", psi, ref.PSI_TABLE)):
        t = time.perf_counter()
        rows = []
        for g, published in table.items():
            lam = fn(g).lam
            ok = published <= lam <= published + ref.TABLE_SLACK
            rows.append((g, lam, published, lam - published, ok))
        dt = time.perf_counter() - t
        print(f"\n{name}: {len(rows)} rows in {dt:.3f}s")
        print(f"{'gamma':>7} {'computed':>10} {'table':>7} {'diff':>9}")
        for g, lam, pub, d, ok in rows:
            print(f"{g:7.4f} {lam:10.6f} {pub:7.4f} {d:+9.6f} {'' if ok else '  <-- outside [t, t+0.003]'}")
        write_csv(args.out / f"{name}_table.csv", ["gamma", name, "table", "diff", "in_range"], rows)


if __name__ == "__main__":
    main()
