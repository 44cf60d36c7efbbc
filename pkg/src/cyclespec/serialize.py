"""Numeric and tabular serialization: full-precision decimal scientific."""

import json
import sys
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .numerics import PrecisionContext

__all__ = ["sig_digits", "sci_str", "parse_real", "write_csv", "write_json"]


def sig_digits(bits: int) -> int:
    """Significant decimal digits carried by `bits` mantissa bits (>= 17)."""
    return max(17, int(bits / 3.32))


def sci_str(x, digits: int) -> str:
    """Decimal scientific form with `digits` significant digits.

    Round-to-nearest; parsing the string back at the source precision and
    re-serializing reproduces it digit for digit.
    """
    x = mpfr(x)
    if gmpy2.is_nan(x):
        return "nan"
    if gmpy2.is_infinite(x):
        return "-inf" if x < 0 else "inf"
    mant, exp10, _ = gmpy2.digits(x, 10, max(2, digits))
    neg = mant.startswith("-")
    if neg:
        mant = mant[1:]
    if mant.strip("0") == "":
        return "0.0e+00"
    mant = mant.ljust(digits, "0")
    body = f"{mant[0]}.{mant[1:]}e{exp10 - 1:+03d}"
    return "-" + body if neg else body


def parse_real(text: str, ctx: PrecisionContext) -> mpfr:
    """Parse a decimal/rational string at working precision."""
    text = text.strip()
    with ctx.activate():
        if "/" in text:
            frac = Fraction(text)
            return ctx.mpf(frac)
        return mpfr(text)


def write_csv(header, rows, out_path=None):
    """UTF-8, comma-delimited, LF-terminated CSV with a header row."""
    lines = [",".join(header)]
    lines.extend(",".join(str(c) for c in row) for row in rows)
    payload = "\n".join(lines) + "\n"
    if out_path in (None, "-"):
        sys.stdout.write(payload)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)


def write_json(obj, out_path=None):
    payload = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if out_path in (None, "-"):
        sys.stdout.write(payload)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
