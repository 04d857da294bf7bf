"""Strict reader for the results CSV written by the hyplyap tool."""

import csv
import math
import warnings
from pathlib import Path

COLUMNS = (
    "experiment,point,C,d,mu1,mu2,r,x,y,n,"
    "lambda_1,lambda_2,lambda_3,lambda_4,stderr_1,stderr_2,stderr_3,stderr_4,"
    "sum_positive,sum_positive_stderr,deg_par_1,deg_par_2,deg_par_3,deg_par_4,"
    "reference,gap,gap_stderr,flag,zone,line3,runtime_s,digits,seed"
).split(",")

TEXT_COLUMNS = {"experiment", "flag"}


class SchemaMismatch(ValueError):
    def __init__(self, column, reason):
        super().__init__(f"column {column!r}: {reason}")
        self.column = column


def _convert(column, text):
    if column in TEXT_COLUMNS:
        return text
    if text == "":
        return math.nan
    try:
        return float(text)
    except ValueError as exc:
        raise SchemaMismatch(column, f"not a number: {text!r}") from exc


def read_results(path, required=()):
    """Rows as dicts keyed by column name; empty cells become NaN.

    Missing schema columns (or missing `required` ones) raise SchemaMismatch,
    unknown columns are ignored with a warning.
    """
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in list(COLUMNS) + list(required):
            if column not in header:
                raise SchemaMismatch(column, "missing")
        extra = [c for c in header if c not in COLUMNS]
        if extra:
            warnings.warn(f"ignoring unknown columns {extra}", stacklevel=2)
        return [{c: _convert(c, row[c]) for c in COLUMNS} for row in reader]
