"""Typed decode errors for the text wire protocol.

Every malformed input maps to one of these; the codec never lets a raw
ValueError or IndexError escape.
"""

from __future__ import annotations


class CodecError(ValueError):
    """Base class for all wire protocol encode and decode failures."""


class UnbalancedParens(CodecError):
    def __init__(self, position: int, detail: str = ""):
        self.position = position
        super().__init__(f"unbalanced parentheses at {position}" + (f": {detail}" if detail else ""))


class IllegalCharacter(CodecError):
    def __init__(self, position: int, char: str = ""):
        self.position = position
        self.char = char
        super().__init__(f"illegal character {char!r} at {position}")


class UnknownMessageHead(CodecError):
    def __init__(self, head: str):
        self.head = head
        super().__init__(f"unknown server message head {head!r}")


class UnknownCommandHead(CodecError):
    def __init__(self, head: str):
        self.head = head
        super().__init__(f"unknown command head {head!r}")


class FieldCountMismatch(CodecError):
    def __init__(self, head: str, detail: str = ""):
        self.head = head
        super().__init__(f"bad field count in {head!r}" + (f": {detail}" if detail else ""))


class NumericParseFailure(CodecError):
    def __init__(self, text: str):
        self.text = text
        super().__init__(f"not a number: {text!r}")


class OutOfRangeField(CodecError):
    def __init__(self, name: str, value):
        self.name = name
        self.value = value
        super().__init__(f"field {name} out of range: {value!r}")


class UnknownFlagId(CodecError):
    def __init__(self, flag_id: str):
        self.flag_id = flag_id
        super().__init__(f"unknown landmark id {flag_id!r}")
