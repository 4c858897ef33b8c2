import warnings

import pytest
from hypothesis import given, settings

from clocked.errors import ParseError
from clocked.syntax import parse, parse_atoms, to_text
from clocked.terms import EPSILON, LEFT, PLAIN, App, Atomic, Lam, Position, Tau, Var, alpha_eq
from clocked.zoo import CONSTANTS, I, OMEGA, Y0, Y1

from termgen import terms

x, y, f = Var("x"), Var("y"), Var("f")


@pytest.mark.parametrize("src,term", [
    (r"\x. x", Lam("x", x)),
    (r"(\x. x x)(\x. x x)", App(Lam("x", App(x, x)), Lam("x", App(x, x)))),
    ("#^2 (f #^1 f)", Tau(PLAIN, Tau(PLAIN, App(f, Tau(PLAIN, f))))),
    ("λx. x", Lam("x", x)),
    (r"\x y. y x", Lam("x", Lam("y", App(y, x)))),
    ("f x y", App(App(f, x), y)),
    (r"f \x. x y", App(f, Lam("x", App(x, y)))),
    ("# x y", Tau(PLAIN, App(x, y))),
    ("<L>(x y)", Tau(Atomic(Position((LEFT,))), App(x, y))),
    ("<>(x)", Tau(Atomic(EPSILON), x)),
    ("x' x''", App(Var("x'"), Var("x''"))),
    ("x -- a comment\n y", App(x, y)),
])
def test_parse(src, term):
    assert parse(src) == term


@pytest.mark.parametrize("term,text", [
    (Y0, r"\f. (\x. f (x x)) (\x. f (x x))"),
    (Tau(PLAIN, Tau(PLAIN, x)), "#^2 x"),
    (Tau(Atomic(Position((LEFT,))), App(x, y)), "<L>(x y)"),
    (App(Tau(PLAIN, I), I), r"(# (\x. x)) (\x. x)"),
    (App(f, Tau(PLAIN, x)), "f # x"),
    (App(App(f, Tau(PLAIN, x)), y), "f (# x) y"),
    (Tau(PLAIN, App(x, y)), "# (x y)"),
    (Lam("x", Lam("y", x)), r"\x y. x"),
    (App(x, Lam("y", y)), r"x (\y. y)"),
])
def test_print(term, text):
    assert to_text(term) == text


def test_print_abbreviates_zoo_terms():
    assert to_text(Tau(PLAIN, Tau(PLAIN, I)), CONSTANTS) == "#^2 I"
    assert to_text(App(Y1, f), CONSTANTS) == "Y1 f"
    assert to_text(OMEGA, CONSTANTS) == "Omega"
    assert to_text(Lam("z", Lam("x", x)), CONSTANTS) == r"\z. I"


def test_zoo_names_expand_unless_bound():
    assert parse("I x", CONSTANTS) == App(I, x)
    assert parse(r"(\I. I) x", {}) == App(Lam("I", Var("I")), x)


def test_zoo_names_cannot_be_binders():
    with pytest.raises(ParseError, match="reserved"):
        parse(r"\I. I", CONSTANTS)


@pytest.mark.parametrize("src,line,column", [
    ("(x y", 1, 5),
    ("x\n  ) y", 2, 3),
    ("", 1, 1),
    (r"\. x", 1, 2),
    ("x $", 1, 3),
])
def test_parse_errors_locate(src, line, column):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert (info.value.line, info.value.column) == (line, column)


def test_closed_warns_on_free_variable():
    with pytest.warns(UserWarning, match="unbound variable 'y'"):
        parse(r"\x. y", closed=True)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        parse(r"\x. x", closed=True)


def test_parse_atoms():
    assert parse_atoms(r"f (g x) \y. y") == [f, App(Var("g"), x), Lam("y", y)]
    with pytest.raises(ParseError):
        parse_atoms("  ")


@given(terms(with_tau=True))
@settings(max_examples=300, deadline=None)
def test_round_trip(t):
    assert parse(to_text(t)) == t


@given(terms())
@settings(max_examples=200, deadline=None)
def test_round_trip_with_abbreviations(t):
    text = to_text(t, CONSTANTS)
    assert alpha_eq(parse(text, CONSTANTS), t)
