"""Envelope constants and perturbation checks at the five outermost corners."""

import argparse
from pathlib import Path

from locuskit.corners import CORNER_WITNESSES, STANDARD_R, corner_membership_check, envelope_from_series
from locuskit.io import write_csv
from locuskit.membership import certify_outside


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=30)
    ap.add_argument("--n-max", type=int, default=60)
    ap.add_argument("--out", type=Path, default=Path("out"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    print(f"{'witness':8} {'gamma0':>10} {'lambda0':>10} {'alpha':>8} {'C1':>8} {'C2':>8} "
          f"{'ratio range':>17}  ok  N max  verdict@64")
    for name, h in CORNER_WITNESSES.items():
        env = envelope_from_series(h)
        rep = corner_membership_check(env, (args.n_min, args.n_max), STANDARD_R, stop_at_resolution=True)
        ratios = [r.ratio for r in rep.rows]
        v = certify_outside(env.gamma0, env.lambda0, 64)
        print(f"{name:8} {env.gamma0:10.6f} {env.lambda0:10.6f} {env.alpha:8.5f} {env.c1:8.4f} "
              f"{env.c2:8.4f} [{min(ratios):.4f}, {max(ratios):.4f}]  {'yes' if rep.ok else 'NO '} {rep.rows[-1].N:5d}  {v}")
        write_csv(args.out / f"corner_{name}.csv",
                  ["N", "R_id", "gamma_tilde", "lambda_tilde", "ratio", "c1", "c2", "pass"],
                  (r.as_tuple() for r in rep.rows))


if __name__ == "__main__":
    main()
