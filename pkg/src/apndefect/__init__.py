"""Differential analysis of functions on GF(2^n): difference squares, spectra,
the APN-defect, and vanishing flats.
"""

from .defect import DefectReport, d_value, d_value_from_spectrum
from .diffcore import ddt, delta_uniformity, diff_spectrum, difference_square
from .field import FieldCtx, mk_field
from .flats import vanishing_flats, vf_count_formula
from .functions import FuncTable, f0a, from_power, gold, inverse, parse_func
from .spectra import column_spectrum, row_spectrum, spectra_report

__all__ = [
    "DefectReport",
    "FieldCtx",
    "FuncTable",
    "column_spectrum",
    "d_value",
    "d_value_from_spectrum",
    "ddt",
    "delta_uniformity",
    "diff_spectrum",
    "difference_square",
    "f0a",
    "from_power",
    "gold",
    "inverse",
    "mk_field",
    "parse_func",
    "row_spectrum",
    "spectra_report",
    "vanishing_flats",
    "vf_count_formula",
]
