r"""
Concrete syntax for clocked lambda terms.

Grammar::

    term  := lam | app
    lam   := "\" ident+ "." term          \x y. M  is  \x. \y. M
    app   := atom+                        left-associative
    atom  := ident | "(" term ")" | tau
    tau   := "#" term | "#^" nat term | "<" pos ">" term
    pos   := ("l" | "L" | "R" | "t")*     l = λ, t = τ, empty = ε

``--`` starts a comment running to the end of the line.  ``λ`` is accepted
as an alternative to the backslash.  Identifiers may carry trailing primes
(``x'``) so that renamed binders print back into parseable text.  A lambda
is also accepted as the last atom of an application (``f \x. x``).

Printing uses the same grammar: applications associate to the left, lambda
bodies extend as far as possible, runs of plain τ's collapse to ``#^n``.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Mapping

from .errors import ParseError
from .terms import PLAIN, App, Atomic, Lam, Plain, Position, Tau, Term, Var

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>--[^\n]*)
  | (?P<taun>\#\^(?P<nat>[0-9]+))
  | (?P<tau>\#)
  | (?P<pos><(?P<letters>[lLRt]*)>)
  | (?P<lam>\\|λ)
  | (?P<ident>[a-zA-Z][a-zA-Z0-9_]*'*)
  | (?P<punct>[().])
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    col: int
    value: object = None


def tokenize(src: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "nat":
            kind = "taun"
        if kind == "letters":
            kind = "pos"
        if kind == "taun":
            tokens.append(_Token("tau", text, line, col, int(m.group("nat"))))
        elif kind == "tau":
            tokens.append(_Token("tau", text, line, col, 1))
        elif kind == "pos":
            tokens.append(_Token("pos", text, line, col, Position.from_syntax(m.group("letters"))))
        elif kind == "punct":
            tokens.append(_Token(text, text, line, col))
        elif kind in ("lam", "ident"):
            tokens.append(_Token(kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, src: str, names: Mapping[str, Term] | None, closed: bool):
        self.tokens = tokenize(src)
        self.i = 0
        self.names = names or {}
        self.closed = closed
        self.bound: list[str] = []

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def expect(self, kind: str) -> _Token:
        tok = self.tok
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        self.i += 1
        return tok

    def parse(self) -> Term:
        if self.tok.kind == "eof":
            raise self.error("empty term")
        t = self.term()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return t

    def term(self) -> Term:
        if self.tok.kind == "lam":
            return self.lam()
        return self.app()

    def lam(self) -> Term:
        self.expect("lam")
        binders = []
        while self.tok.kind == "ident":
            tok = self.expect("ident")
            if tok.text in self.names:
                raise self.error(f"{tok.text!r} is a reserved combinator name", tok)
            binders.append(tok.text)
        if not binders:
            raise self.error("expected a binder after lambda")
        self.expect(".")
        self.bound.extend(binders)
        body = self.term()
        del self.bound[-len(binders):]
        for b in reversed(binders):
            body = Lam(b, body)
        return body

    def app(self) -> Term:
        result = None
        while True:
            kind = self.tok.kind
            if kind == "lam":
                # a trailing lambda swallows the rest of the application
                atom = self.lam()
            elif kind in ("ident", "(", "tau", "pos"):
                atom = self.atom()
            else:
                break
            result = atom if result is None else App(result, atom)
            if isinstance(atom, Lam) and kind == "lam":
                break
            if kind in ("tau", "pos"):
                # τ bodies extend maximally, like lambda bodies
                break
        if result is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected a term, found {found!r}")
        return result

    def atom(self) -> Term:
        tok = self.tok
        if tok.kind == "ident":
            self.i += 1
            if tok.text in self.names and tok.text not in self.bound:
                return self.names[tok.text]
            if self.closed and tok.text not in self.bound:
                warnings.warn(f"unbound variable {tok.text!r} at line {tok.line}, column {tok.col}")
            return Var(tok.text)
        if tok.kind == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        if tok.kind == "tau":
            self.i += 1
            body = self.term()
            for _ in range(tok.value):
                body = Tau(PLAIN, body)
            return body
        if tok.kind == "pos":
            self.i += 1
            return Tau(Atomic(tok.value), self.term())
        raise self.error(f"unexpected {tok.text!r}")


def parse(src: str, names: Mapping[str, Term] | None = None, closed: bool = False) -> Term:
    """Parse concrete syntax into a term.

    ``names`` maps reserved identifiers to the terms they abbreviate.  With
    ``closed`` set, free variables trigger a warning.
    """
    return _Parser(src, names, closed).parse()


def parse_atoms(src: str, names: Mapping[str, Term] | None = None) -> list[Term]:
    """Parse a juxtaposition ``a1 a2 ... an`` into its atoms without applying them."""
    p = _Parser(src, names, False)
    atoms = []
    while p.tok.kind != "eof":
        if p.tok.kind == "lam":
            atoms.append(p.lam())
        else:
            atoms.append(p.atom())
    if not atoms:
        raise p.error("expected at least one term")
    return atoms


# -- printing ---------------------------------------------------------------

class _Printer:
    def __init__(self, names: Mapping[str, Term] | None):
        self.abbrev = {}
        if names:
            from .terms import alpha_key

            for name, term in names.items():
                self.abbrev.setdefault(alpha_key(term), name)
            self.sizes = {term.size for term in names.values()}

    def name_for(self, t: Term) -> str | None:
        if not self.abbrev or t.size not in self.sizes or t.free_vars:
            return None
        from .terms import alpha_key

        return self.abbrev.get(alpha_key(t))

    def atom(self, t: Term) -> str:
        if isinstance(t, Var):
            return t.name
        name = self.name_for(t)
        return name if name is not None else f"({self.term(t)})"

    def term(self, t: Term) -> str:
        if isinstance(t, Var):
            return t.name
        name = self.name_for(t)
        if name is not None:
            return name
        if isinstance(t, Lam):
            binders = []
            while isinstance(t, Lam) and self.name_for(t) is None:
                binders.append(t.binder)
                t = t.body
            return "\\" + " ".join(binders) + ". " + self.term(t)
        if isinstance(t, Tau):
            if isinstance(t.ann, Plain):
                n = 0
                while isinstance(t, Tau):
                    n += 1
                    t = t.body
                prefix = "#" if n == 1 else f"#^{n}"
                return f"{prefix} {self.atom(t)}"
            return f"<{t.ann.position.to_syntax()}>({self.term(t.body)})"
        head, args = t, []
        while isinstance(head, App) and self.name_for(head) is None:
            args.append(head.arg)
            head = head.fun
        args.reverse()
        parts = [self.atom(head)]
        for i, a in enumerate(args):
            if isinstance(a, Tau) and i == len(args) - 1:
                parts.append(self.term(a))
            else:
                parts.append(self.atom(a))
        return " ".join(parts)


def to_text(t: Term, names: Mapping[str, Term] | None = None) -> str:
    """Render a term in the concrete syntax with minimal parentheses.

    Closed subterms α-equal to one of ``names`` print as that name.
    """
    return _Printer(names).term(t)
