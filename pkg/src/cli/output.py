import csv
import json
import math
import sys
from typing import TextIO

from mpmath import mp
from pydantic import BaseModel

HIGH_PRECISION_DIGITS = 20


class ExactRow(BaseModel):
    n: int
    exact: str
    log_exact: float | None


class EstimateRow(BaseModel):
    n: int
    order: int
    log_estimate: float
    estimate: str
    log_saddle: float
    degraded: bool


class CauchyRow(BaseModel):
    n: int
    value: str
    rounded: str
    deviation: float
    imag: float
    quad_points: int
    rho: float


class CompareRow(BaseModel):
    n: int
    exact: str
    log_exact: float | None
    log_estimate_order0: float
    log_estimate_order1: float | None
    log_cauchy: float | None
    ratio: str


class FitRow(BaseModel):
    term: int
    exponent: float
    coefficient: float
    stderr: float
    closed_form: float | None
    relative_error: float | None


class VerifyRow(BaseModel):
    check: str
    passed: bool
    value: float | None
    bound: float | None
    detail: str


def high_precision(x, digits: int = HIGH_PRECISION_DIGITS) -> str:
    """Decimal string of an mpf with a fixed number of significant digits."""
    return mp.nstr(x, digits, strip_zeros=False)


def _finite(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_rows(row_model: type[BaseModel], rows: list[BaseModel], fmt: str = 'csv', stream: TextIO | None = None):
    """Write rows as CSV (header from the row model) or as a JSON list of objects."""
    stream = stream or sys.stdout
    fields = list(row_model.model_fields)
    records = [{key: _finite(value) for key, value in row.model_dump().items()} for row in rows]
    if fmt == 'json':
        stream.write(json.dumps(records, indent=2) + '\n')
        return
    writer = csv.DictWriter(stream, fieldnames=fields, lineterminator='\n')
    writer.writeheader()
    for record in records:
        writer.writerow({key: '' if value is None else value for key, value in record.items()})
