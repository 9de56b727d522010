"""S-expression parsing and serialization for the datagram protocol.

An expression is either an Atom (with a flag recording whether it was
double-quoted on the wire) or a plain Python list of expressions. Numeric
atoms keep their lexical form here; typed interpretation happens in the
message decoders.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .errors import IllegalCharacter, UnbalancedParens

__all__ = ["Atom", "SExpr", "parse_sexpr", "serialize_sexpr"]


@dataclass(frozen=True, slots=True)
class Atom:
    text: str
    quoted: bool = field(default=False, compare=True)

    def __repr__(self) -> str:  # compact test output
        return f'Atom("{self.text}")' if self.quoted else f"Atom({self.text})"


SExpr = Union[Atom, list]

# One master pattern; anything it cannot match at the current position is
# an illegal character. Atoms are printable ASCII minus whitespace, parens,
# quotes and backslashes.
_TOKEN = re.compile(
    r"""[ \t\r\n]+
      | (?P<open>\()
      | (?P<close>\))
      | (?P<quoted>"(?:[\x20\x21\x23-\x5b\x5d-\x7e]|\\[\x20-\x7e])*")
      | (?P<atom>[\x21\x23-\x27\x2a-\x7e]+)
    """,
    re.VERBOSE,
)

_UNESCAPE = re.compile(r"\\(.)")
_NEEDS_QUOTING = re.compile(r'[^\x21\x23-\x27\x2a-\x7e]|["\\()]')


def _unescape(body: str) -> str:
    # Only \" and \\ are our escapes; a backslash before anything else is
    # kept literally, matching what lenient historical parsers do.
    return _UNESCAPE.sub(lambda m: m.group(1) if m.group(1) in '"\\' else "\\" + m.group(1), body)


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def parse_sexpr(text: str) -> SExpr:
    """Parse one complete S-expression; reject trailing garbage.

    A trailing null terminator (as sent by some clients) is tolerated.
    """
    end = len(text)
    while end > 0 and text[end - 1] == "\x00":
        end -= 1

    pos = 0
    stack: list[list] = []
    result: SExpr | None = None

    def emit(node: SExpr, at: int) -> None:
        nonlocal result
        if stack:
            stack[-1].append(node)
        elif result is None:
            result = node
        else:
            raise IllegalCharacter(at, text[at] if at < end else "")

    while pos < end:
        m = _TOKEN.match(text, pos, end)
        if m is None:
            raise IllegalCharacter(pos, text[pos])
        start = pos
        pos = m.end()
        if m.lastgroup is None:
            continue  # whitespace
        if m.lastgroup == "open":
            if result is not None and not stack:
                raise IllegalCharacter(start, "(")
            stack.append([])
        elif m.lastgroup == "close":
            if not stack:
                raise UnbalancedParens(start, "unexpected ')'")
            done = stack.pop()
            emit(done, start)
        elif m.lastgroup == "quoted":
            emit(Atom(_unescape(m.group("quoted")[1:-1]), quoted=True), start)
        else:
            emit(Atom(m.group("atom")), start)

    if stack:
        raise UnbalancedParens(end, f"{len(stack)} unclosed list(s)")
    if result is None:
        raise UnbalancedParens(0, "empty input")
    return result


def serialize_sexpr(expr: SExpr) -> str:
    if isinstance(expr, Atom):
        if expr.quoted or not expr.text or _NEEDS_QUOTING.search(expr.text):
            return f'"{_escape(expr.text)}"'
        return expr.text
    return "(" + " ".join(serialize_sexpr(c) for c in expr) + ")"
