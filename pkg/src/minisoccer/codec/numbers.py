"""Number formatting and parsing for wire atoms."""

from __future__ import annotations

from .errors import NumericParseFailure
from .sexpr import Atom, SExpr


def fmt_full(x: float | int) -> str:
    """Full-precision lexical form; integral values drop the decimal point."""
    if isinstance(x, bool):
        raise TypeError("bool is not a wire number")
    if isinstance(x, int):
        return str(x)
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def fmt2(x: float | int) -> str:
    """At most two decimal places, trailing zeros trimmed (server->agent)."""
    s = f"{x:.2f}"
    s = s.rstrip("0").rstrip(".")
    if s in ("-0", ""):
        s = "0"
    return s


def parse_num(expr: SExpr) -> float:
    if not isinstance(expr, Atom) or expr.quoted:
        raise NumericParseFailure(str(expr))
    try:
        return float(expr.text)
    except ValueError:
        raise NumericParseFailure(expr.text) from None


def parse_int(expr: SExpr) -> int:
    v = parse_num(expr)
    i = int(v)
    if i != v:
        raise NumericParseFailure(expr.text if isinstance(expr, Atom) else str(expr))
    return i
