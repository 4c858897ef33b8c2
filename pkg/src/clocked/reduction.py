"""
Clocked rewrite rules, reduction strategies and head reduction to whnf.

Plain clocked rules::

    (\\x. M) N   ->  #(M[x:=N])        ClockedBeta
    (# M) N      ->  #(M N)            TauLift
    # M          ->  M                 TauErase

Atomic clocked rules::

    (\\x. M) N   ->  <>(M[x:=N])       AtomicBeta
    (<p> M) N    ->  <Lp>(M N)         AtomicLift

and the classical ``(\\x. M) N -> M[x:=N]`` (ClassicBeta) for cross-checks.

Paths address subterms by child index: application function 0, argument 1,
abstraction and τ body 0.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Union

from .errors import ModeMismatch, RuleMismatch
from .terms import (
    EPSILON, LEFT, PLAIN, App, Atomic, Lam, Mode, Plain, Position, Tau, Term, Var,
    alpha_key, children, spine, substitute,
)
from .syntax import to_text

Path = tuple[int, ...]


class RuleId(str, enum.Enum):
    CLOCKED_BETA = "ClockedBeta"
    TAU_LIFT = "TauLift"
    ATOMIC_BETA = "AtomicBeta"
    ATOMIC_LIFT = "AtomicLift"
    CLASSIC_BETA = "ClassicBeta"
    TAU_ERASE = "TauErase"

    def __str__(self):
        return self.value


PLAIN_RULES = frozenset({RuleId.CLOCKED_BETA, RuleId.TAU_LIFT, RuleId.TAU_ERASE})
ATOMIC_RULES = frozenset({RuleId.ATOMIC_BETA, RuleId.ATOMIC_LIFT})

STRATEGIES = ("leftmost-outermost", "rightmost-innermost", "random")


def resolve_mode(t: Term, mode: Mode | str | None = None) -> Mode:
    """The clock mode to reduce ``t`` under; τ-free terms default to plain."""
    own = t.mode
    if mode is None:
        return own or Mode.PLAIN
    mode = Mode(mode)
    if own is not None and own is not mode:
        raise ModeMismatch(f"term is in {own.value} mode, {mode.value} requested")
    return mode


# -- paths ------------------------------------------------------------------

def subterm_at(t: Term, path: Path) -> Term:
    for i in path:
        kids = children(t)
        if i >= len(kids):
            raise IndexError(f"path {format_path(path)} leaves the term")
        t = kids[i]
    return t


def replace_at(t: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    i, rest = path[0], path[1:]
    if isinstance(t, App):
        if i == 0:
            return App(replace_at(t.fun, rest, new), t.arg)
        if i == 1:
            return App(t.fun, replace_at(t.arg, rest, new))
    elif isinstance(t, Lam) and i == 0:
        return Lam(t.binder, replace_at(t.body, rest, new))
    elif isinstance(t, Tau) and i == 0:
        return Tau(t.ann, replace_at(t.body, rest, new))
    raise IndexError(f"path {format_path(path)} leaves the term")


def format_path(path: Path) -> str:
    return ".".join(map(str, path)) if path else "ε"


def parse_path(text: str) -> Path:
    text = text.strip()
    if text in ("", "ε"):
        return ()
    return tuple(int(p) for p in text.split("."))


# -- single steps -----------------------------------------------------------

def contract(redex: Term, rule: RuleId) -> Term:
    """Contract ``redex`` by ``rule``; raises RuleMismatch if it does not match."""
    rule = RuleId(rule)
    if rule in (RuleId.CLOCKED_BETA, RuleId.ATOMIC_BETA, RuleId.CLASSIC_BETA):
        if not (isinstance(redex, App) and isinstance(redex.fun, Lam)):
            raise RuleMismatch(f"{rule} needs a beta-redex, got {to_text(redex)!r}")
        reduct = substitute(redex.fun.body, redex.fun.binder, redex.arg)
        if rule is RuleId.CLOCKED_BETA:
            return Tau(PLAIN, reduct)
        if rule is RuleId.ATOMIC_BETA:
            return Tau(Atomic(EPSILON), reduct)
        return reduct
    if rule is RuleId.TAU_LIFT:
        if not (isinstance(redex, App) and isinstance(redex.fun, Tau)
                and isinstance(redex.fun.ann, Plain)):
            raise RuleMismatch(f"TauLift needs (# M) N, got {to_text(redex)!r}")
        return Tau(PLAIN, App(redex.fun.body, redex.arg))
    if rule is RuleId.ATOMIC_LIFT:
        if not (isinstance(redex, App) and isinstance(redex.fun, Tau)
                and isinstance(redex.fun.ann, Atomic)):
            raise RuleMismatch(f"AtomicLift needs (<p> M) N, got {to_text(redex)!r}")
        pos = redex.fun.ann.position.prepend(LEFT)
        return Tau(Atomic(pos), App(redex.fun.body, redex.arg))
    # TauErase
    if not (isinstance(redex, Tau) and isinstance(redex.ann, Plain)):
        raise RuleMismatch(f"TauErase needs # M, got {to_text(redex)!r}")
    return redex.body


def _check_rule_mode(t: Term, rule: RuleId):
    mode = t.mode
    if rule in PLAIN_RULES and mode is Mode.ATOMIC:
        raise ModeMismatch(f"{rule} is a plain-mode rule; the term is atomic")
    if rule in ATOMIC_RULES and mode is Mode.PLAIN:
        raise ModeMismatch(f"{rule} is an atomic-mode rule; the term is plain")


def step_at(t: Term, path: Path, rule: RuleId) -> Term:
    """Rewrite the subterm of ``t`` at ``path`` with ``rule``."""
    rule = RuleId(rule)
    _check_rule_mode(t, rule)
    return replace_at(t, path, contract(subterm_at(t, path), rule))


# -- traces -----------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    rule: RuleId
    path: Path
    term: Term  # the whole term after the step

    def __str__(self):
        return f"{self.rule} @ {format_path(self.path)} : {to_text(self.term)}"


@dataclass
class ReductionTrace:
    """A replayable reduction sequence.

    ``halted`` is ``"normal"`` when no redex is left, ``"max-steps"`` or
    ``"max-size"`` when a bound stopped the run.
    """

    start: Term
    steps: list[Step] = field(default_factory=list)
    halted: str = "normal"

    @property
    def final(self) -> Term:
        return self.steps[-1].term if self.steps else self.start

    @property
    def normal(self) -> bool:
        return self.halted == "normal"

    def count(self, rule: RuleId) -> int:
        return sum(1 for s in self.steps if s.rule is rule)

    def __len__(self):
        return len(self.steps)

    def dumps(self) -> str:
        """Line-oriented text: ``ruleId @ path : printed-term`` per step."""
        return "".join(f"{s}\n" for s in self.steps)

    @classmethod
    def loads(cls, start: Term, text: str) -> ReductionTrace:
        """Rebuild a trace from ``dumps`` output by replaying it from ``start``."""
        trace = cls(start)
        term = start
        for line in text.splitlines():
            if not line.strip():
                continue
            rule_text, rest = line.split(" @ ", 1)
            path_text, _ = rest.split(" : ", 1)
            rule, path = RuleId(rule_text.strip()), parse_path(path_text)
            term = step_at(term, path, rule)
            trace.steps.append(Step(rule, path, term))
        return trace

    def to_json(self) -> dict:
        return {
            "start": to_text(self.start),
            "steps": [
                {"rule": s.rule.value, "path": format_path(s.path), "term": to_text(s.term)}
                for s in self.steps
            ],
            "final": to_text(self.final),
            "halted": self.halted,
        }


def replay(trace: ReductionTrace) -> bool:
    """True iff every step of ``trace`` is reproduced from its predecessor."""
    from .terms import alpha_eq

    term = trace.start
    for s in trace.steps:
        if not alpha_eq(step_at(term, s.path, s.rule), s.term):
            return False
        term = s.term
    return True


# -- strategies -------------------------------------------------------------

Matcher = Callable[[Term], Optional[RuleId]]


def _clocked_matcher(mode: Mode) -> Matcher:
    beta = RuleId.ATOMIC_BETA if mode is Mode.ATOMIC else RuleId.CLOCKED_BETA
    lift = RuleId.ATOMIC_LIFT if mode is Mode.ATOMIC else RuleId.TAU_LIFT

    def match(t: Term) -> Optional[RuleId]:
        if isinstance(t, App):
            if isinstance(t.fun, Lam):
                return beta
            if isinstance(t.fun, Tau):
                return lift
        return None

    return match


def _classic_matcher(t: Term) -> Optional[RuleId]:
    if isinstance(t, App) and isinstance(t.fun, Lam):
        return RuleId.CLASSIC_BETA
    return None


def _leftmost_outermost(t: Term, match: Matcher):
    stack: list[tuple[Path, Term]] = [((), t)]
    while stack:
        path, s = stack.pop()
        rule = match(s)
        if rule is not None:
            return path, rule
        kids = children(s)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((path + (i,), kids[i]))
    return None


def _rightmost_innermost(t: Term, match: Matcher, path: Path = ()):
    kids = children(t)
    for i in range(len(kids) - 1, -1, -1):
        found = _rightmost_innermost(kids[i], match, path + (i,))
        if found is not None:
            return found
    rule = match(t)
    return None if rule is None else (path, rule)


def redexes(t: Term, match: Matcher, path: Path = ()) -> Iterator[tuple[Path, RuleId]]:
    """All redex positions of ``t`` in preorder."""
    rule = match(t)
    if rule is not None:
        yield path, rule
    for i, c in enumerate(children(t)):
        yield from redexes(c, match, path + (i,))


def _run(t: Term, match: Matcher, strategy: str, max_steps: int, seed: int,
         max_size: int | None) -> ReductionTrace:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    rng = random.Random(seed)
    trace = ReductionTrace(t)
    term = t
    while True:
        if strategy == "leftmost-outermost":
            found = _leftmost_outermost(term, match)
        elif strategy == "rightmost-innermost":
            found = _rightmost_innermost(term, match)
        else:
            options = list(redexes(term, match))
            found = rng.choice(options) if options else None
        if found is None:
            trace.halted = "normal"
            return trace
        if len(trace.steps) >= max_steps:
            trace.halted = "max-steps"
            return trace
        if max_size is not None and term.size > max_size:
            trace.halted = "max-size"
            return trace
        path, rule = found
        term = replace_at(term, path, contract(subterm_at(term, path), rule))
        trace.steps.append(Step(rule, path, term))


def reduce_strategy(t: Term, strategy: str = "leftmost-outermost", max_steps: int = 1000, *,
                    seed: int = 0, mode: Mode | str | None = None,
                    max_size: int | None = None) -> ReductionTrace:
    """Reduce with the clocked rules of the term's mode.

    ``random`` picks uniformly among all redexes using ``random.Random(seed)``
    (Mersenne Twister), so a seed reproduces its trace.  ``max_size`` stops
    the run once the term grows beyond that many nodes.
    """
    return _run(t, _clocked_matcher(resolve_mode(t, mode)), strategy, max_steps, seed, max_size)


def classic_beta_reduce(t: Term, strategy: str = "leftmost-outermost", max_steps: int = 1000, *,
                        seed: int = 0, max_size: int | None = None) -> ReductionTrace:
    """Classical β-reduction of a τ-free term."""
    if t.tau_nodes:
        raise ModeMismatch("classical beta-reduction needs a τ-free term")
    return _run(t, _classic_matcher, strategy, max_steps, seed, max_size)


def tau_erase(t: Term, atomic: bool = False) -> Term:
    """Remove every τ node.

    Atomic terms are only erased when ``atomic`` is set, since that also
    discards their positions.
    """
    if t.mode is Mode.ATOMIC and not atomic:
        raise ModeMismatch("tau_erase on an atomic term needs atomic=True")
    return _erase(t)


def _erase(t: Term) -> Term:
    if not t.tau_nodes:
        return t
    if isinstance(t, Tau):
        return _erase(t.body)
    if isinstance(t, App):
        return App(_erase(t.fun), _erase(t.arg))
    return Lam(t.binder, _erase(t.body))


def erase_any(t: Term) -> Term:
    """Erase τ nodes of either mode."""
    return _erase(t)


def is_beta_normal(t: Term) -> bool:
    return _leftmost_outermost(t, _classic_matcher) is None


# -- head reduction ---------------------------------------------------------

@dataclass(frozen=True)
class Whnf:
    tau_count: int
    atomic_anns: tuple[Position, ...]
    term: Term
    steps: int = 0


@dataclass(frozen=True)
class HeadCycle:
    witness: Term
    steps: int = 0


@dataclass(frozen=True)
class FuelExhausted:
    last: Term
    steps: int = 0


WhnfResult = Union[Whnf, HeadCycle, FuelExhausted]


def head_step(t: Term, mode: Mode | str | None = None) -> tuple[RuleId, Path, Term] | None:
    """One head step of ``t``, or None if ``t`` is in whnf.

    τ's sitting on top of the term are left alone; a τ in function position of
    the head spine is lifted before any β-step.
    """
    mode = resolve_mode(t, mode)
    inner: Term = t
    prefix: Path = ()
    while isinstance(inner, Tau):
        inner = inner.body
        prefix += (0,)
    head, args = spine(inner)
    if not args or isinstance(head, Var):
        return None
    path = prefix + (0,) * (len(args) - 1)
    rule = _clocked_matcher(mode)(subterm_at(t, path))
    return rule, path, step_at(t, path, rule)


def _rebuild(new_head: Term, rest: list[Term]) -> Term:
    out = new_head
    for a in rest:
        out = App(out, a)
    return out


def head_reduce_to_whnf(t: Term, fuel: int, mode: Mode | str | None = None) -> WhnfResult:
    """Head-reduce ``t`` to weak head normal form, counting the clock.

    Each rule application costs one unit of fuel.  τ's that surface at the top
    are stripped immediately: plain ones add to ``tau_count``, atomic ones are
    collected (outermost first) in ``atomic_anns``.  For a τ-free input the
    count equals the number of β-steps performed.

    A head state recurring up to α (top τ's stripped) yields ``HeadCycle``.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    mode = resolve_mode(t, mode)
    atomic = mode is Mode.ATOMIC
    beta = RuleId.ATOMIC_BETA if atomic else RuleId.CLOCKED_BETA
    count = 0
    anns: list[Position] = []
    seen = set()
    steps = 0
    term = t
    while True:
        while isinstance(term, Tau):
            if atomic:
                anns.append(term.ann.position)
            else:
                count += 1
            term = term.body
        head, args = spine(term)
        if not args or isinstance(head, Var):
            return Whnf(count, tuple(anns), term, steps)
        key = alpha_key(term)
        if key in seen:
            return HeadCycle(term, steps)
        seen.add(key)
        if steps >= fuel:
            return FuelExhausted(term, steps)
        if isinstance(head, Tau):
            if atomic:
                new_head = Tau(Atomic(head.ann.position.prepend(LEFT)), App(head.body, args[0]))
            else:
                new_head = Tau(PLAIN, App(head.body, args[0]))
        else:
            new_head = contract(App(head, args[0]), beta)
        term = _rebuild(new_head, args[1:])
        steps += 1


def classic_head_reduce(t: Term, fuel: int,
                        on_redex: Callable[[int, Term], None] | None = None) -> WhnfResult:
    """Classical head reduction of a τ-free term to whnf.

    ``on_redex(step_index, redex)`` is called before each contraction.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    seen = set()
    steps = 0
    term = t
    while True:
        head, args = spine(term)
        if not args or isinstance(head, Var):
            return Whnf(0, (), term, steps)
        if isinstance(head, Tau):
            raise ModeMismatch("classical head reduction needs a τ-free term")
        key = alpha_key(term)
        if key in seen:
            return HeadCycle(term, steps)
        seen.add(key)
        if steps >= fuel:
            return FuelExhausted(term, steps)
        redex = App(head, args[0])
        if on_redex is not None:
            on_redex(steps, redex)
        term = _rebuild(contract(redex, RuleId.CLASSIC_BETA), args[1:])
        steps += 1
