"""Command-line driver.

    apndefect <command> --n N --func SPEC [options]

Exit status: 0 on success, 1 when a verify check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from . import defect as dm
from . import flats as fm
from .diffcore import ddt, diff_spectrum, difference_square, marked_mask
from .errors import AnalysisError, TooLarge
from .field import FieldCtx, mk_field, parse_modulus
from .functions import FuncTable, parse_func
from .spectra import SpectraReport, canonical_sort, spectra_report
from .verify import SUITES, VerifyConfig, run_suite

COMMANDS = ("diffsquare", "ddt", "spectra", "defect", "flats", "report", "verify")
FULL_LIMIT = 12


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int = 4
    modulus: int | None = None
    func: str = "inverse"
    fmt: str = "text"
    out: str | None = None
    jobs: int = 1
    stream: bool = False
    force: bool = False
    hex: bool = False
    jwr: bool = False
    suite: str = "all"
    n_max: int = 8
    samples: int = 100
    seed: int = 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="apndefect", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--modulus", type=parse_modulus, default=None,
                   help="defining polynomial, e.g. 0x13 (default: smallest irreducible)")
    p.add_argument("--func", default="inverse",
                   help="inverse | power:d | gold:t | do:i,j,c;... | modinv:a,b,... | table:path")
    p.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--stream", action="store_true",
                   help="row-by-row statistics without materialising the square (n <= 16)")
    p.add_argument("--force", action="store_true", help=f"allow full tables above n={FULL_LIMIT}")
    p.add_argument("--hex", action="store_true", help="print elements in hex instead of z^k")
    p.add_argument("--jwr", action="store_true",
                   help="flats: enumerate via triples instead of the difference square")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--n-max", dest="n_max", type=int, default=8)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    return p


def config_from_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(**vars(ns))


def _renderer(ctx: FieldCtx, hex_mode: bool):
    if hex_mode:
        width = (ctx.n + 3) // 4
        return lambda x: f"0x{int(x):0{width}x}"
    return lambda x: ctx.label(int(x))


def _guard(cfg: RunConfig):
    if cfg.n > FULL_LIMIT and not cfg.force:
        hint = " or --stream" if cfg.command in ("defect", "spectra", "report") else ""
        raise TooLarge(f"n={cfg.n} exceeds {FULL_LIMIT} for full tables; pass --force{hint}")


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _grid_text(header, rows) -> str:
    cells = [header, *rows]
    width = max(len(c) for r in cells for c in r)
    return "".join(" ".join(c.rjust(width) for c in r) + "\n" for r in cells)


# --- streaming statistics ---------------------------------------------------

_WORKER_G: FuncTable | None = None


def _init_worker(G):
    global _WORKER_G
    _WORKER_G = G


def _row_stats(a: int):
    G = _WORKER_G
    t = G.table
    row = t ^ t[np.arange(G.ctx.q) ^ a]
    counts = np.bincount(row, minlength=G.ctx.q)
    part = dm.partition_from_counts(a, counts, G.ctx.q)
    nab = counts[row]
    return part, int(nab.max()), np.packbits(nab == 2)


def stream_stats(G: FuncTable, jobs: int = 1):
    """Per-row partitions, uniformity and spectra, one derivative at a time."""
    q = G.ctx.q
    col_ok = np.ones(q, dtype=bool)
    parts, delta = [], 0
    if jobs > 1:
        with Pool(jobs, initializer=_init_worker, initargs=(G,)) as pool:
            results = pool.imap(_row_stats, range(1, q), chunksize=max(1, q // (8 * jobs)))
            results = list(results)
    else:
        _init_worker(G)
        results = map(_row_stats, range(1, q))
    for part, m, packed in results:
        parts.append(part)
        delta = max(delta, m)
        col_ok &= np.unpackbits(packed, count=q).astype(bool)
    rep = dm.DefectReport(q, sum(p.contribution for p in parts), tuple(parts))
    row_spec = frozenset(p.a for p in parts if p.chi)
    col_spec = frozenset(np.flatnonzero(col_ok).tolist())
    return rep, delta, SpectraReport(row_spec, col_spec, delta == 2)


# --- commands -----------------------------------------------------------------


def cmd_diffsquare(cfg, ctx, G, render) -> str:
    _guard(cfg)
    sq = difference_square(G)
    order = ctx.ordering
    vals = sq.canonical()
    marks = marked_mask(sq)[order[1:] - 1][:, order]
    cols = [render(x) for x in order]
    labels = [render(a) for a in order[1:]]
    if cfg.fmt == "json":
        return _json({
            "n": ctx.n,
            "function": G.name,
            "columns": cols,
            "rows": [
                {"a": lab, "values": [render(v) for v in r], "marked": m.tolist()}
                for lab, r, m in zip(labels, vals, marks)
            ],
        })
    body = [
        [lab] + [render(v) + ("*" if mk else "") for v, mk in zip(r, m)]
        for lab, r, m in zip(labels, vals, marks)
    ]
    if cfg.fmt == "csv":
        return _csv([["a", *cols], *body])
    return _grid_text(["a\\x", *cols], body)


def cmd_ddt(cfg, ctx, G, render) -> str:
    _guard(cfg)
    table = ddt(G)
    order = ctx.ordering
    counts = table.counts[order[1:] - 1][:, order]
    cols = [render(b) for b in order]
    labels = [render(a) for a in order[1:]]
    spec = diff_spectrum(table)
    if cfg.fmt == "json":
        return _json({
            "n": ctx.n,
            "function": G.name,
            "delta": int(counts.max()),
            "spectrum": {str(v): c for v, c in spec.frequencies.items()},
            "columns": cols,
            "rows": [{"a": lab, "counts": r.tolist()} for lab, r in zip(labels, counts)],
        })
    body = [[lab, *map(str, r.tolist())] for lab, r in zip(labels, counts)]
    if cfg.fmt == "csv":
        return _csv([["a", *cols], *body])
    summary = ", ".join(f"{v}:{c}" for v, c in spec.frequencies.items())
    return _grid_text(["a\\b", *cols], body) + f"delta = {int(counts.max())}\nspectrum = {{{summary}}}\n"


def _spectra(cfg, G):
    if cfg.stream:
        return stream_stats(G, cfg.jobs)[2]
    _guard(cfg)
    return spectra_report(G)


def cmd_spectra(cfg, ctx, G, render) -> str:
    rep = _spectra(cfg, G)
    if cfg.fmt == "json":
        return _json({"n": ctx.n, "function": G.name, **rep.to_json(ctx, render)})
    rows = canonical_sort(ctx, rep.row_spec)
    cols = canonical_sort(ctx, rep.col_spec)
    if cfg.fmt == "csv":
        return _csv([["kind", "element"]] + [["row", render(a)] for a in rows]
                    + [["column", render(x)] for x in cols])
    return (
        f"R-Spec ({len(rows)}): {' '.join(render(a) for a in rows)}\n"
        f"C-Spec ({len(cols)}): {' '.join(render(x) for x in cols)}\n"
        f"APN: {rep.is_apn}\n"
    )


def _defect(cfg, G):
    if cfg.stream:
        return stream_stats(G, cfg.jobs)[0]
    _guard(cfg)
    return dm.d_value(G)


def cmd_defect(cfg, ctx, G, render) -> str:
    rep = _defect(cfg, G)
    doc = rep.to_json(ctx, G.name, render)
    if cfg.fmt == "json":
        return _json(doc)
    if cfg.fmt == "csv":
        return _csv([["a", "s_size", "ks", "chi"]] + [
            [r["a"], r["s_size"], " ".join(map(str, r["ks"])), r["chi"]] for r in doc["rows"]
        ])
    num, den = rep.ratio
    return (
        f"D(G) = {rep.d_value}\n"
        f"APN-defect = {rep.apn_defect}\n"
        f"R(G) = {num}/{den}\n"
        f"quasi-APN: {rep.quasi_apn}{' (boundary D = 0)' if rep.boundary else ''}\n"
    )


def _flatset(cfg, G) -> fm.FlatSet:
    _guard(cfg)
    if cfg.jwr:
        from .spectra import flats_from_triples, jwr_violating_triples

        triples = jwr_violating_triples(G)
        return fm.FlatSet(frozenset(flats_from_triples(triples)), len(triples))
    return fm.vanishing_flats(G)


def cmd_flats(cfg, ctx, G, render) -> str:
    vf = _flatset(cfg, G)
    doc = vf.to_json(ctx, render)
    if cfg.fmt == "json":
        return _json({"n": ctx.n, "function": G.name, **doc})
    if cfg.fmt == "csv":
        return _csv([["x", "y", "z", "w"], *doc["flats"]])
    what = "violating triples" if cfg.jwr else "raw incidences"
    lines = [f"|VF| = {doc['count']} ({what} {doc['raw_count']})"]
    lines += ["{" + ", ".join(f) + "}" for f in doc["flats"]]
    return "\n".join(lines) + "\n"


def cmd_report(cfg, ctx, G, render) -> str:
    if cfg.stream:
        rep, delta, spec = stream_stats(G, cfg.jobs)
        vf = None
        spectrum = None
    else:
        _guard(cfg)
        table = ddt(G)
        delta = int(table.counts.max())
        spectrum = {str(v): c for v, c in diff_spectrum(table).frequencies.items()}
        rep = dm.d_value(G)
        spec = spectra_report(G)
        vf = len(fm.vanishing_flats(G))
    num, den = rep.ratio
    doc = {
        "n": ctx.n,
        "modulus": f"{ctx.modulus:#x}",
        "function": G.name,
        "delta": delta,
        "spectrum": spectrum,
        "d_value": rep.d_value,
        "defect": rep.apn_defect,
        "ratio": {"num": num, "den": den},
        "quasi_apn": rep.quasi_apn,
        "vf": vf,
        "is_apn": spec.is_apn,
        "row_spec": [render(a) for a in canonical_sort(ctx, spec.row_spec)],
        "col_spec": [render(x) for x in canonical_sort(ctx, spec.col_spec)],
    }
    if cfg.fmt == "json":
        return _json(doc)
    flat = []
    for k, v in doc.items():
        if isinstance(v, dict):
            v = " ".join(f"{a}:{b}" for a, b in v.items())
        elif isinstance(v, list):
            v = " ".join(v)
        flat.append([k, "" if v is None else str(v)])
    if cfg.fmt == "csv":
        return _csv([["key", "value"], *flat])
    return "".join(f"{k}: {v}\n" for k, v in flat)


def cmd_verify(cfg) -> tuple[str, int]:
    vcfg = VerifyConfig(n_max=cfg.n_max, samples=cfg.samples, seed=cfg.seed)
    checks = list(run_suite(cfg.suite, vcfg))
    failed = sum(not c.passed for c in checks)
    if cfg.fmt == "json":
        text = _json([
            {"tag": c.tag, "instance": c.instance, "expected": repr(c.expected),
             "measured": repr(c.measured), "passed": c.passed}
            for c in checks
        ])
    elif cfg.fmt == "csv":
        text = _csv([["tag", "instance", "expected", "measured", "verdict"]] + [
            [c.tag, c.instance, c.expected, c.measured, "PASS" if c.passed else "FAIL"]
            for c in checks
        ])
    else:
        text = "".join(c.line() + "\n" for c in checks)
        text += f"{len(checks) - failed}/{len(checks)} checks passed\n"
    return text, int(failed > 0)


HANDLERS = {
    "diffsquare": cmd_diffsquare,
    "ddt": cmd_ddt,
    "spectra": cmd_spectra,
    "defect": cmd_defect,
    "flats": cmd_flats,
    "report": cmd_report,
}


def run(cfg: RunConfig) -> tuple[str, int]:
    if cfg.command == "verify":
        return cmd_verify(cfg)
    ctx = mk_field(cfg.n, cfg.modulus)
    G = parse_func(ctx, cfg.func)
    return HANDLERS[cfg.command](cfg, ctx, G, _renderer(ctx, cfg.hex)), 0


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        text, code = run(cfg)
    except (AnalysisError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
