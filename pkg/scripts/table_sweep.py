"""Compare tabulated power-map spectra and D values with brute force."""

import argparse
from dataclasses import dataclass

from apndefect import defect as dm
from apndefect.diffcore import diff_spectrum
from apndefect.errors import RowNotApplicable
from apndefect.field import mk_field
from apndefect.functions import from_power


@dataclass
class SweepConfig:
    n_min: int = 4
    n_max: int = 10


def sweep(cfg: SweepConfig):
    for n in range(cfg.n_min, cfg.n_max + 1):
        ctx = mk_field(n)
        for row_id in sorted(dm.TABLE1):
            params_list = [{"t": t} for t in range(1, n)] if row_id in (1, 2) else [{}]
            for params in params_list:
                try:
                    exps = dm.table1_exponents(row_id, n, params)
                    tab_d = dm.table1_d_value(row_id, n, params)
                except RowNotApplicable:
                    continue
                printed = dm.table1_printed_d_value(row_id, n, params)
                for d in exps:
                    G = from_power(ctx, d)
                    spec = {v: c for v, c in diff_spectrum(G).per_row().items() if c}
                    brute = dm.d_value(G).d_value
                    yield (n, row_id, params, d, spec == dm.table1_spectrum(row_id, n, params),
                           tab_d == brute, printed == brute, brute)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=10)
    a = p.parse_args(argv)
    print("n row params d spectrum_ok d_ok printed_ok D")
    for n, row_id, params, d, s_ok, d_ok, p_ok, brute in sweep(SweepConfig(a.n_min, a.n_max)):
        print(n, row_id, params or "-", d, s_ok, d_ok, p_ok, brute)


if __name__ == "__main__":
    main()
