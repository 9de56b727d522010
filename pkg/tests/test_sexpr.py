import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minisoccer.codec import (
    Atom,
    IllegalCharacter,
    UnbalancedParens,
    parse_sexpr,
    serialize_sexpr,
)

# Characters kept bare by the serializer; backslash is canonically quoted.
_ATOM_CHARS = "".join(
    chr(c) for c in range(0x21, 0x7F) if chr(c) not in '()"\\'
)
# Characters legal inside a quoted string before escaping.
_QUOTED_CHARS = "".join(chr(c) for c in range(0x20, 0x7F))

bare_atoms = st.text(_ATOM_CHARS, min_size=1, max_size=12).map(Atom)
quoted_atoms = st.text(_QUOTED_CHARS, max_size=12).map(lambda t: Atom(t, quoted=True))
atoms = bare_atoms | quoted_atoms

sexprs = st.recursive(
    atoms,
    lambda inner: st.lists(inner, max_size=6),
    max_leaves=40,
)


def test_parse_atom():
    assert parse_sexpr("hello") == Atom("hello")
    assert parse_sexpr("-12.5") == Atom("-12.5")


def test_parse_nested():
    expr = parse_sexpr("(see 0 ((f c) 10.5 -20))")
    assert expr == [
        Atom("see"),
        Atom("0"),
        [[Atom("f"), Atom("c")], Atom("10.5"), Atom("-20")],
    ]


def test_parse_quoted_string_with_escapes():
    expr = parse_sexpr(r'(say "a \"b\" c\\d")')
    assert expr == [Atom("say"), Atom('a "b" c\\d', quoted=True)]


def test_parse_strips_trailing_nul():
    assert parse_sexpr("(bye)\x00") == [Atom("bye")]


def test_serialize_quotes_when_needed():
    assert serialize_sexpr([Atom("say"), Atom("two words", quoted=True)]) == '(say "two words")'
    # Forced quoting even when the flag is unset.
    assert serialize_sexpr(Atom("a b")) == '"a b"'
    assert serialize_sexpr(Atom("", quoted=True)) == '""'


@pytest.mark.parametrize(
    "text",
    ["(a (b c)", "a)", "(a))", "", "   ", "(a (b)"],
)
def test_unbalanced_raises(text):
    with pytest.raises(UnbalancedParens):
        parse_sexpr(text)


@pytest.mark.parametrize("text", ["(a \x07)", "(a \xff)", "a\tb", "(a) (b)", "(a)b"])
def test_illegal_character_raises(text):
    with pytest.raises(IllegalCharacter):
        parse_sexpr(text)


def test_error_carries_position():
    with pytest.raises(IllegalCharacter) as exc:
        parse_sexpr("(ab \x01 cd)")
    assert exc.value.position == 4


@given(sexprs)
@settings(max_examples=300)
def test_round_trip(expr):
    assert parse_sexpr(serialize_sexpr(expr)) == expr


@given(sexprs)
@settings(max_examples=100)
def test_serialization_stable(expr):
    once = serialize_sexpr(expr)
    again = serialize_sexpr(parse_sexpr(once))
    assert once == again
