"""
Named combinators: fixed point combinators of Curry and Turing, the Böhm
sequence, the ``Y<n1,...,nk>`` family built from the gadget ``G_n``, and a few
helpers (``I``, ``S``, ``delta``, ``eta``, ``Omega``).

All zoo terms are closed and τ-free.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import BadArity, UnknownName
from .syntax import parse
from .terms import App, Lam, Term, Var, app

I = parse(r"\x. x")
S = parse(r"\a b c. a c (b c)")
DELTA = parse(r"\a b. b (a b)")
ETA = parse(r"\x f. f (x x f)")
OMEGA = parse(r"(\x. x x) (\x. x x)")
Y0 = parse(r"\f. (\x. f (x x)) (\x. f (x x))")
Y1 = App(ETA, ETA)


def omega_f(f: str = "f") -> Term:
    """``\\x. f (x x)``, the self-applying half of Curry's combinator."""
    return parse(rf"\x. {f} (x x)")


def left_iter(m: Term, n: Term, k: int) -> Term:
    """``M N^~k``: ``M`` applied to ``k`` copies of ``N``."""
    if k < 0:
        raise BadArity("left_iter needs k >= 0")
    for _ in range(k):
        m = App(m, n)
    return m


def bohm_y(n: int) -> Term:
    """The n-th fixed point combinator of the Böhm sequence: Y0, then ``eta eta delta^~(n-1)``."""
    if n < 0:
        raise BadArity("bohmY needs n >= 0")
    if n == 0:
        return Y0
    return left_iter(Y1, DELTA, n - 1)


def gadget(n: int, hole: Term) -> Term:
    """``G_n[X] = X (S S) S^~n I``."""
    if n < 0:
        raise BadArity("G_n needs n >= 0")
    return App(left_iter(App(hole, App(S, S)), S, n), I)


def y_vec(ns: Sequence[int]) -> Term:
    """``Y<n1,...,nk> = G_nk[... G_n1[Y0] ...]``; the empty vector gives Y0."""
    term = Y0
    for n in ns:
        term = gadget(n, term)
    return term


def mu(binder: str, body: Term, y: Term) -> Term:
    """``mu x. M`` realised with the fixed point combinator ``y``: ``y (\\x. M)``."""
    return App(y, Lam(binder, body))


def plotkin_pair(y: Term, f: str = "f") -> tuple[Term, Term]:
    """``A_Y = Y (\\z. f z z)`` and ``B_Y = Y (\\x. Y (\\y. f x y))``."""
    fv = Var(f)
    a = mu("z", app(fv, Var("z"), Var("z")), y)
    b = mu("x", mu("y", app(fv, Var("x"), Var("y")), y), y)
    return a, b


@dataclass(frozen=True)
class ZooEntry:
    name: str
    params: str  # "" for constants, otherwise a description of the arguments
    description: str
    build: Callable[..., Term]


def _const(term: Term):
    return lambda: term


ENTRIES: dict[str, ZooEntry] = {
    e.name: e
    for e in [
        ZooEntry("I", "", "identity", _const(I)),
        ZooEntry("S", "", "the S combinator", _const(S)),
        ZooEntry("delta", "", "delta = \\a b. b (a b); fixed points of delta are exactly the fpcs", _const(DELTA)),
        ZooEntry("eta", "", "eta = \\x f. f (x x f), half of Turing's combinator", _const(ETA)),
        ZooEntry("Omega", "", "(\\x. x x) (\\x. x x), no weak head normal form", _const(OMEGA)),
        ZooEntry("Y0", "", "Curry's fixed point combinator", _const(Y0)),
        ZooEntry("Y1", "", "Turing's fixed point combinator eta eta", _const(Y1)),
        ZooEntry("bohmY", "n", "n-th member of the Böhm sequence: Y0, eta eta, eta eta delta, ...", bohm_y),
        ZooEntry("yVec", "n1 ... nk", "Y<n1..nk> = G_nk[...G_n1[Y0]...] with G_n[X] = X (S S) S^~n I",
                 lambda *ns: y_vec(ns)),
    ]
}
# names the parser may expand in place (parameterless entries)
CONSTANTS: dict[str, Term] = {name: e.build() for name, e in ENTRIES.items() if not e.params}


def zoo(name: str, params: Sequence[int] = ()) -> Term:
    """Look up a zoo term by name, passing integer parameters to families."""
    try:
        entry = ENTRIES[name]
    except KeyError:
        raise UnknownName(name) from None
    params = list(params)
    if any(not isinstance(p, int) or p < 0 for p in params):
        raise BadArity(f"{name} takes natural-number parameters, got {params!r}")
    if not entry.params:
        if params:
            raise BadArity(f"{name} takes no parameters")
        return entry.build()
    if name == "bohmY":
        if len(params) != 1:
            raise BadArity("bohmY takes exactly one parameter")
        return bohm_y(params[0])
    return entry.build(*params)


def fixed_point_combinators() -> dict[str, Term]:
    """The fpcs of the zoo, keyed by a readable label."""
    fpcs = {"Y0": Y0, "Y1": Y1}
    for n in range(2, 5):
        fpcs[f"bohmY {n}"] = bohm_y(n)
    for ns in [(0,), (1,), (0, 0), (2,)]:
        fpcs["yVec " + " ".join(map(str, ns))] = y_vec(ns)
    return fpcs
