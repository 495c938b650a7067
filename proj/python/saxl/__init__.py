"""Base sizes and Saxl graphs for almost simple groups with socle PSL(2,q)."""

import csv
import io
import json

from ._saxl import SaxlError, engine_version, feng_lower_bound, field_modulus
from . import _saxl

__all__ = [
    "SaxlError",
    "engine_version",
    "base_size",
    "feng",
    "feng_lower_bound",
    "field_modulus",
    "survey",
    "verify",
]

MORE_THAN_THREE = 4


def verify(q, family, level="T", oracle=False, cache_dir=None):
    """Enumerate one action and return the report as a dict."""
    return json.loads(_saxl.verify_json(q, family, level, oracle, cache_dir))


def survey(q_min, q_max, families, jobs=1):
    """Rows of the survey CSV as dicts, in (q, family, level) order."""
    if isinstance(families, str):
        families = [f for f in families.split(",") if f]
    lines = _saxl.survey_lines(q_min, q_max, list(families), jobs)
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def feng(q):
    rows = [line for line in _saxl.feng_csv(q).splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(rows))))


def base_size(q, family, level="T"):
    """b(G); MORE_THAN_THREE stands for a base size above 3."""
    return _saxl.base_size(q, family, level)
