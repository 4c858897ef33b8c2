"""Random closed λ-terms for the property suites."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from clocked.terms import PLAIN, App, Lam, Tau, Term, Var

NAMES = "xyzuv"


def random_closed_term(rng: random.Random, max_size: int = 12, min_size: int = 6) -> Term:
    """A closed τ-free term with ``min_size <= size <= max_size`` nodes.

    Applications put an abstraction in function position more often than
    chance would, so that most terms have something to reduce.
    """
    return _gen(rng, rng.randint(min_size, max_size), [])


def _lam(rng, size, env):
    name = rng.choice(NAMES[:len(env) + 1])
    return Lam(name, _gen(rng, size - 1, env + [name]))


def _gen(rng, size, env):
    if size == 1 and env:
        return Var(env[-1] if rng.random() < 0.7 else rng.choice(env))
    if size <= 2 or not env or rng.random() < 0.25:
        return _lam(rng, size, env)
    left = rng.randint(1, size - 2)
    if left >= 2 and rng.random() < 0.6:
        fun = _lam(rng, left, env)
    else:
        fun = _gen(rng, left, env)
    return App(fun, _gen(rng, size - 1 - left, env))


def corpus(n: int, seed: int = 2024, max_size: int = 12) -> list[Term]:
    rng = random.Random(seed)
    return [random_closed_term(rng, max_size) for _ in range(n)]


# hypothesis strategies: open terms over a small alphabet, optionally with plain τ's
_vars = st.sampled_from("xyzfg").map(Var)


def terms(with_tau: bool = False, max_leaves: int = 12) -> st.SearchStrategy[Term]:
    def extend(children):
        options = [
            st.tuples(children, children).map(lambda p: App(*p)),
            st.tuples(st.sampled_from("xyzf"), children).map(lambda p: Lam(*p)),
        ]
        if with_tau:
            options.append(children.map(lambda b: Tau(PLAIN, b)))
        return st.one_of(options)

    return st.recursive(_vars, extend, max_leaves=max_leaves)
