"""
Lambda terms extended with clock annotations.

A term is one of ``Var``, ``Lam``, ``App`` or ``Tau``.  ``Tau`` wraps a body
with an annotation: either the plain clock tick ``PLAIN`` or an atomic clock
``Atomic(position)`` recording where the witnessed step happened.  Plain and
atomic annotations never occur in the same term; constructing such a term
raises ``ModeMismatch``.

Terms are immutable.  Names are kept as written; capture-avoiding substitution
renames binders by priming (``x`` -> ``x'`` -> ``x''``) so results are
reproducible.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

from .errors import ModeMismatch

LAMBDA, LEFT, RIGHT, TAU = "λ", "L", "R", "τ"
ALPHABET = (LAMBDA, LEFT, RIGHT, TAU)

# concrete-syntax letter for each position letter
_SYNTAX_LETTER = {LAMBDA: "l", LEFT: "L", RIGHT: "R", TAU: "t"}
_FROM_SYNTAX = {v: k for k, v in _SYNTAX_LETTER.items()}


class Mode(str, enum.Enum):
    PLAIN = "plain"
    ATOMIC = "atomic"


@dataclass(frozen=True)
class Position:
    """A finite word over {λ, L, R, τ}; the empty word is ε."""

    letters: tuple[str, ...] = ()

    def __post_init__(self):
        bad = [c for c in self.letters if c not in ALPHABET]
        if bad:
            raise ValueError(f"invalid position letters: {bad!r}")

    @classmethod
    def from_syntax(cls, text: str) -> Position:
        try:
            return cls(tuple(_FROM_SYNTAX[c] for c in text))
        except KeyError as exc:
            raise ValueError(f"invalid position letter {exc.args[0]!r}") from None

    def to_syntax(self) -> str:
        return "".join(_SYNTAX_LETTER[c] for c in self.letters)

    def prepend(self, letter: str) -> Position:
        return Position((letter,) + self.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "".join(self.letters) or "ε"


EPSILON = Position()


@dataclass(frozen=True)
class Plain:
    def __repr__(self):
        return "PLAIN"


PLAIN = Plain()


@dataclass(frozen=True)
class Atomic:
    position: Position = EPSILON


Annotation = Union[Plain, Atomic]


def _join_modes(a: Mode | None, b: Mode | None) -> Mode | None:
    if a is None:
        return b
    if b is None or a is b:
        return a
    raise ModeMismatch("plain and atomic clock annotations cannot be mixed in one term")


class _TermBase:
    __slots__ = ()

    @property
    def mode(self) -> Mode | None:
        """Annotation mode of the term, or None when it carries no τ at all."""
        raise NotImplementedError

    def __str__(self):
        from .syntax import to_text

        return to_text(self)


@dataclass(frozen=True, eq=True)
class Var(_TermBase):
    name: str

    @cached_property
    def free_vars(self) -> frozenset[str]:
        return frozenset((self.name,))

    size = 1
    tau_nodes = 0
    mode = None


@dataclass(frozen=True, eq=True)
class Lam(_TermBase):
    binder: str
    body: Term

    @cached_property
    def free_vars(self) -> frozenset[str]:
        return self.body.free_vars - {self.binder}

    @cached_property
    def size(self) -> int:
        return 1 + self.body.size

    @cached_property
    def tau_nodes(self) -> int:
        return self.body.tau_nodes

    @property
    def mode(self):
        return self.body.mode


@dataclass(frozen=True, eq=True)
class App(_TermBase):
    fun: Term
    arg: Term

    def __post_init__(self):
        _ = self.mode

    @cached_property
    def free_vars(self) -> frozenset[str]:
        return self.fun.free_vars | self.arg.free_vars

    @cached_property
    def size(self) -> int:
        return 1 + self.fun.size + self.arg.size

    @cached_property
    def tau_nodes(self) -> int:
        return self.fun.tau_nodes + self.arg.tau_nodes

    @cached_property
    def mode(self):
        return _join_modes(self.fun.mode, self.arg.mode)


@dataclass(frozen=True, eq=True)
class Tau(_TermBase):
    ann: Annotation
    body: Term

    def __post_init__(self):
        _ = self.mode

    @cached_property
    def free_vars(self) -> frozenset[str]:
        return self.body.free_vars

    @cached_property
    def size(self) -> int:
        return 1 + self.body.size

    @cached_property
    def tau_nodes(self) -> int:
        return 1 + self.body.tau_nodes

    @cached_property
    def mode(self):
        own = Mode.ATOMIC if isinstance(self.ann, Atomic) else Mode.PLAIN
        return _join_modes(own, self.body.mode)


Term = Union[Var, Lam, App, Tau]


# -- builders ---------------------------------------------------------------

def app(*terms: Term) -> Term:
    """Left-associated application ``t0 t1 ... tn``."""
    if not terms:
        raise ValueError("app() needs at least one term")
    result = terms[0]
    for t in terms[1:]:
        result = App(result, t)
    return result


def lam(*binders_and_body) -> Term:
    """``lam("x", "y", body)`` builds ``\\x. \\y. body``."""
    *binders, body = binders_and_body
    for b in reversed(binders):
        body = Lam(b, body)
    return body


def tau(body: Term, n: int = 1) -> Term:
    for _ in range(n):
        body = Tau(PLAIN, body)
    return body


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split ``h a1 ... an`` into ``(h, [a1, ..., an])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def children(t: Term) -> tuple[Term, ...]:
    """Immediate subterms, indexed the way tree paths index them."""
    if isinstance(t, App):
        return (t.fun, t.arg)
    if isinstance(t, (Lam, Tau)):
        return (t.body,)
    return ()


# -- names and substitution -------------------------------------------------

def fresh_name(name: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    while name in avoid:
        name += "'"
    return name


def substitute(body: Term, var: str, value: Term) -> Term:
    """Capture-avoiding substitution ``body[var := value]``."""
    if var not in body.free_vars:
        return body
    if isinstance(body, Var):
        return value
    if isinstance(body, App):
        return App(substitute(body.fun, var, value), substitute(body.arg, var, value))
    if isinstance(body, Tau):
        return Tau(body.ann, substitute(body.body, var, value))
    # Lam; its binder differs from var because var is free in it
    binder, inner = body.binder, body.body
    if binder in value.free_vars:
        new = fresh_name(binder, value.free_vars | inner.free_vars | {var})
        inner = substitute(inner, binder, Var(new))
        binder = new
    return Lam(binder, substitute(inner, var, value))


def occurrences(body: Term, var: str) -> int:
    """Number of free occurrences of ``var`` in ``body``."""
    if var not in body.free_vars:
        return 0
    if isinstance(body, Var):
        return 1
    return sum(occurrences(c, var) for c in children(body))


# -- alpha equivalence ------------------------------------------------------

def _ann_key(ann: Annotation):
    return "#" if isinstance(ann, Plain) else ann.position.letters


def alpha_key(t: Term, _env: dict[str, int] | None = None, _depth: int = 0):
    """A hashable key that is equal for exactly the α-equivalent terms.

    Bound variables become de Bruijn indices; free variables keep their names.
    """
    env = {} if _env is None else _env
    if isinstance(t, Var):
        level = env.get(t.name)
        return ("f", t.name) if level is None else ("b", _depth - level)
    if isinstance(t, App):
        return ("a", alpha_key(t.fun, env, _depth), alpha_key(t.arg, env, _depth))
    if isinstance(t, Tau):
        return ("t", _ann_key(t.ann), alpha_key(t.body, env, _depth))
    shadowed = env.get(t.binder)
    env[t.binder] = _depth + 1
    try:
        return ("l", alpha_key(t.body, env, _depth + 1))
    finally:
        if shadowed is None:
            del env[t.binder]
        else:
            env[t.binder] = shadowed


def alpha_eq(a: Term, b: Term) -> bool:
    return a is b or alpha_key(a) == alpha_key(b)


def is_closed(t: Term) -> bool:
    return not t.free_vars
