"""Defect, trace counters and flat counts of F_{0,a} over a range of n."""

import argparse
import random
from dataclasses import dataclass

from apndefect import defect as dm
from apndefect import flats as fm
from apndefect.field import mk_field
from apndefect.functions import f0a, inverse


@dataclass
class SweepConfig:
    n_min: int = 3
    n_max: int = 9
    alphas: int = 4
    seed: int = 0


def sweep(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    for n in range(cfg.n_min, cfg.n_max + 1):
        ctx = mk_field(n)
        inv_def = dm.apn_defect(inverse(ctx))
        picks = rng.sample(range(1, ctx.q), min(cfg.alphas, ctx.q - 1))
        for alpha in sorted(picks):
            G = f0a(ctx, alpha)
            tc = dm.trace_counters_f0a(ctx, alpha)
            measured = dm.apn_defect(G)
            yield (n, alpha, tc, measured, dm.f0a_defect_closed_form(n, tc), inv_def,
                   len(fm.vanishing_flats(G)))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--alphas", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args(argv)
    print("n alpha k ell s defect closed_form inverse_defect flats")
    for n, alpha, tc, got, closed, inv_def, nvf in sweep(SweepConfig(a.n_min, a.n_max, a.alphas, a.seed)):
        print(n, hex(alpha), tc.k, tc.ell, tc.s, got, closed, inv_def, nvf)


if __name__ == "__main__":
    main()
