"""Reading and writing datum files.

The interchange format is JSON with fields n, m, B (row-major integer
matrix) and lift (list of rationals).  Rationals are strings "p/q" or "p"
(plain JSON integers are accepted too); floats are rejected so exactness
survives any consumer.  Integers are emitted as JSON numbers only when
they fit in 53 bits, otherwise as decimal strings.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .arrangement import Datum
from .linalg import IntMatrix

_SAFE_INT = 1 << 53


class DatumParseError(ValueError):
    """Malformed datum file; the message names the offending field."""


def _parse_int(value, where: str) -> int:
    if isinstance(value, bool):
        raise DatumParseError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise DatumParseError(f"{where}: not an integer: {value!r}") from None
    raise DatumParseError(f"{where}: expected an integer, got {type(value).__name__}")


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise DatumParseError(f"{where}: rationals must be integers or 'p/q' strings")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise DatumParseError(f"{where}: malformed rational: {value!r}") from None
    raise DatumParseError(f"{where}: expected a rational, got {type(value).__name__}")


def parse_datum_text(text: str) -> Datum:
    """Parse a datum file; shape is validated, splitness is not.

    Splitness and smoothness are semantic checks that belong to the
    validators, so files that fail them still parse and can be diagnosed.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DatumParseError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(obj, dict):
        raise DatumParseError("top level: expected an object")
    for key in ("n", "m", "B", "lift"):
        if key not in obj:
            raise DatumParseError(f"missing field {key!r}")
    n = _parse_int(obj["n"], "n")
    m = _parse_int(obj["m"], "m")
    if not m >= n >= 1:
        raise DatumParseError(f"shape: need m >= n >= 1, got n={n} m={m}")
    rows = obj["B"]
    if not isinstance(rows, list) or len(rows) != n:
        raise DatumParseError(f"B: expected {n} rows")
    parsed_rows = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != m:
            raise DatumParseError(f"B row {i + 1}: expected {m} entries")
        parsed_rows.append([_parse_int(e, f"B[{i + 1}][{j + 1}]") for j, e in enumerate(row)])
    lift_raw = obj["lift"]
    if not isinstance(lift_raw, list) or len(lift_raw) != m:
        raise DatumParseError(f"lift: expected {m} entries")
    lift = tuple(_parse_rational(e, f"lift[{j + 1}]") for j, e in enumerate(lift_raw))
    return Datum(IntMatrix.from_rows(parsed_rows), lift, check_split=False)


def load_datum(path: str) -> Datum:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DatumParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_datum_text(text)


def jint(x: int):
    """Integer as JSON number when 53-bit safe, decimal string otherwise."""
    return x if -_SAFE_INT < x < _SAFE_INT else str(x)


def jrat(x: Fraction) -> str:
    return str(Fraction(x))


def datum_to_obj(d: Datum) -> dict:
    return {
        "n": d.n,
        "m": d.m,
        "B": [[jint(e) for e in d.b.row(i)] for i in range(d.n)],
        "lift": [jrat(c) for c in d.lift],
    }


def emit_datum(d: Datum) -> str:
    return json.dumps(datum_to_obj(d), indent=2) + "\n"
