"""
Discriminating lambda terms by their clocks.

Two β-convertible terms have Lévy-Longo trees that agree, and for *simple*
terms (head reductions only contract linear or call-by-value redexes, at every
node of the tree) the clocked trees can differ only in finitely many τ's.  So
if two simple terms have clocked trees that keep differing deeper and deeper,
they are not β-convertible.

Infinite trees cannot be inspected, so ``discriminate`` uses an explicit
evidence standard: the number of mismatching annotations must grow strictly
across at least three increasing depths.  A verdict is evidence, not proof.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .errors import NotARedex
from .reduction import (
    FuelExhausted, HeadCycle, Path, ReductionTrace, classic_beta_reduce, classic_head_reduce,
    erase_any, format_path, is_beta_normal,
)
from .syntax import to_text
from .terms import App, Lam, Mode, Term, occurrences, spine
from .trees import (
    CLTree, Deletion, TauEq, clocked_tree, tau_deletion_leq, tau_eq_finite,
    tree_digest, tree_to_json, zip_trees, MISMATCH,
)
from .zoo import plotkin_pair

EVIDENCE_STANDARD = (
    "mismatching clock annotations strictly increase over >= 3 depths "
    "(heuristic evidence of infinitely many τ differences, not a proof)"
)
SKELETON_STANDARD = "Lévy-Longo skeletons differ at a fully computed node"


# -- redexes and simple terms -----------------------------------------------

class RedexClass(str, enum.Enum):
    LINEAR = "linear"
    CALL_BY_VALUE = "callByValue"
    BOTH = "both"
    NEITHER = "neither"

    @property
    def simple(self) -> bool:
        return self is not RedexClass.NEITHER


def classify_redex(redex: Term) -> RedexClass:
    """Linear if the bound variable occurs at most once, call-by-value if the
    argument is β-normal after τ-erasure."""
    if not (isinstance(redex, App) and isinstance(redex.fun, Lam)):
        raise NotARedex(to_text(redex))
    linear = occurrences(redex.fun.body, redex.fun.binder) <= 1
    cbv = is_beta_normal(erase_any(redex.arg))
    if linear and cbv:
        return RedexClass.BOTH
    if linear:
        return RedexClass.LINEAR
    if cbv:
        return RedexClass.CALL_BY_VALUE
    return RedexClass.NEITHER


class Simplicity(str, enum.Enum):
    SIMPLE = "simple"
    NOT_SIMPLE = "notSimple"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SimplicityReport:
    status: Simplicity
    checked_depth: int
    fuel: int
    witness_path: Path | None = None  # tree node whose head reduction failed
    witness_step: int | None = None
    witness_redex: Term | None = None
    unknown_paths: tuple[Path, ...] = ()

    def __str__(self):
        if self.status is Simplicity.NOT_SIMPLE:
            return (f"notSimple @ {format_path(self.witness_path)} "
                    f"(head step {self.witness_step}: {to_text(self.witness_redex)})")
        if self.status is Simplicity.UNKNOWN:
            where = ", ".join(format_path(p) for p in self.unknown_paths)
            return f"unknown (fuel {self.fuel} exhausted at {where})"
        return f"simple (checked to depth {self.checked_depth}, fuel {self.fuel})"

    def to_json(self) -> dict:
        out = {"status": self.status.value, "checkedDepth": self.checked_depth, "fuel": self.fuel}
        if self.status is Simplicity.NOT_SIMPLE:
            out["witnessPath"] = format_path(self.witness_path)
            out["witnessStep"] = self.witness_step
            out["witnessRedex"] = to_text(self.witness_redex)
        if self.unknown_paths:
            out["unknownPaths"] = [format_path(p) for p in self.unknown_paths]
        return out


def check_simple(t: Term, depth: int, fuel: int) -> SimplicityReport:
    """Check the coinductive simplicity condition on the first ``depth`` tree levels.

    The head reduction of every node is replayed classically on the τ-erased
    term.  A node without whnf (head cycle) is simple outright.  A node whose
    whnf search runs out of fuel makes the report ``unknown`` unless some other
    node is definitely not simple.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    stack: list[tuple[Path, Term, int]] = [((), erase_any(t), depth)]
    unknown: list[Path] = []
    while stack:
        path, term, d = stack.pop()
        if d == 0:
            continue
        bad: list[tuple[int, Term]] = []

        def on_redex(step, redex):
            if not bad and not classify_redex(redex).simple:
                bad.append((step, redex))

        r = classic_head_reduce(term, fuel, on_redex)
        if isinstance(r, HeadCycle):
            continue
        if isinstance(r, FuelExhausted):
            unknown.append(path)
            continue
        if bad:
            step, redex = bad[0]
            return SimplicityReport(Simplicity.NOT_SIMPLE, depth, fuel, path, step, redex)
        w = r.term
        if isinstance(w, Lam):
            stack.append((path + (0,), w.body, d - 1))
        else:
            _, args = spine(w)
            for i in range(len(args) - 1, -1, -1):
                stack.append((path + (i,), args[i], d - 1))
    if unknown:
        return SimplicityReport(Simplicity.UNKNOWN, depth, fuel, unknown_paths=tuple(unknown))
    return SimplicityReport(Simplicity.SIMPLE, depth, fuel)


# -- clock relations on terms -----------------------------------------------

def globally_improves(m: Term, n: Term, depth: int, fuel: int,
                      mode: Mode | str | None = None) -> Deletion:
    """``m`` is globally improved by ``n``: the tree of ``m`` deletes τ's down to that of ``n``."""
    return tau_deletion_leq(clocked_tree(m, depth, fuel, mode), clocked_tree(n, depth, fuel, mode))


@dataclass(frozen=True)
class Acceleration:
    status: str  # holds | fails | unknown
    trace: ReductionTrace
    comparison: Deletion

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def acceleration_check(m: Term, steps: int, depth: int, fuel: int,
                       strategy: str = "leftmost-outermost", seed: int = 0,
                       mode: Mode | str | None = None) -> Acceleration:
    """Reduce ``m`` classically for ``steps`` steps and check the reduct improves it globally."""
    trace = classic_beta_reduce(m, strategy, steps, seed=seed)
    cmp = globally_improves(m, trace.final, depth, fuel, mode)
    return Acceleration(cmp.status, trace, cmp)


def plotkin_trees(y: Term, depth: int, fuel: int,
                  mode: Mode | str | None = None) -> tuple[CLTree, CLTree]:
    """Clocked trees of ``Y (\\z. f z z)`` and ``Y (\\x. Y (\\y. f x y))``."""
    a, b = plotkin_pair(y)
    return clocked_tree(a, depth, fuel, mode), clocked_tree(b, depth, fuel, mode)


# -- simplifying reducts ----------------------------------------------------

def normalized_subterms(t: Term, budget: int = 50, max_size: int = 2000) -> Term:
    """A reduct of ``t`` in which every subterm that normalises within ``budget``
    leftmost-outermost steps is replaced by its normal form.

    Subterms are tried outermost first; a subterm that does not normalise is
    left in place and its own subterms are tried instead.
    """
    trace = classic_beta_reduce(t, "leftmost-outermost", budget, max_size=max_size)
    if trace.normal:
        return trace.final
    if isinstance(t, App):
        return App(normalized_subterms(t.fun, budget, max_size),
                   normalized_subterms(t.arg, budget, max_size))
    if isinstance(t, Lam):
        return Lam(t.binder, normalized_subterms(t.body, budget, max_size))
    return t


def simplifying_reduct(t: Term, depth: int, fuel: int, rounds: int = 8
                       ) -> tuple[Term, SimplicityReport] | None:
    """Search for a simple β-reduct of ``t``.

    Each round normalises the subterms that have a normal form and, if the
    root node still contracts a redex that is neither linear nor
    call-by-value, performs head steps up to and including that redex.
    Returns the reduct with its report, or None when no round produced a
    simple term.  Any reduct is β-convertible to ``t``.
    """
    cur = normalized_subterms(erase_any(t))
    for _ in range(rounds):
        report = check_simple(cur, depth, fuel)
        if report.status is Simplicity.SIMPLE:
            return cur, report
        if report.status is Simplicity.UNKNOWN or report.witness_path != ():
            return None
        trace = classic_beta_reduce(cur, "leftmost-outermost", report.witness_step + 1)
        # leftmost-outermost steps on a term without whnf are head steps
        cur = normalized_subterms(trace.final)
    return None


def _simple_version(t: Term, depth: int, fuel: int) -> tuple[Term, SimplicityReport, bool]:
    report = check_simple(t, depth, fuel)
    if report.status is not Simplicity.NOT_SIMPLE:
        return t, report, False
    found = simplifying_reduct(t, depth, fuel)
    if found is None:
        return t, report, False
    return found[0], found[1], True


# -- verdicts ---------------------------------------------------------------

@dataclass
class Evidence:
    depths: list[int]
    mismatch_counts: list[int]
    mismatch_paths: list[Path]  # at the deepest depth
    simple_m: SimplicityReport
    simple_n: SimplicityReport
    trees: tuple[CLTree, CLTree]
    skeleton_ok: list[bool] = field(default_factory=list)
    uncertain: list[bool] = field(default_factory=list)
    skeleton_path: Path | None = None
    standard: str = EVIDENCE_STANDARD
    reduct_m: Term | None = None  # set when a simplifying reduct stood in for m
    reduct_n: Term | None = None
    mode: Mode = Mode.PLAIN


@dataclass
class Verdict:
    kind: str  # NotConvertible | Inconclusive
    reason: str
    evidence: Evidence

    @property
    def not_convertible(self) -> bool:
        return self.kind == "NotConvertible"

    def to_json(self) -> dict:
        ev = self.evidence
        return {
            "verdict": self.kind,
            "reason": self.reason,
            "evidenceStandard": ev.standard,
            "mode": ev.mode.value,
            "depths": list(ev.depths),
            "mismatchCounts": list(ev.mismatch_counts),
            "mismatchPaths": [format_path(p) for p in ev.mismatch_paths],
            "skeletonAgrees": list(ev.skeleton_ok),
            "simplicity": {"m": ev.simple_m.to_json(), "n": ev.simple_n.to_json()},
            "reducts": {
                "m": None if ev.reduct_m is None else to_text(ev.reduct_m),
                "n": None if ev.reduct_n is None else to_text(ev.reduct_n),
            },
            "treeDigests": {"m": tree_digest(ev.trees[0]), "n": tree_digest(ev.trees[1])},
            "trees": {"m": tree_to_json(ev.trees[0]), "n": tree_to_json(ev.trees[1])},
        }

    def render(self) -> str:
        ev = self.evidence
        lines = [f"{self.kind}: {self.reason}",
                 f"  evidence standard: {ev.standard}",
                 f"  mode: {ev.mode.value}",
                 f"  depths: {ev.depths}",
                 f"  mismatch counts: {ev.mismatch_counts}",
                 f"  simplicity m: {ev.simple_m}",
                 f"  simplicity n: {ev.simple_n}"]
        if ev.reduct_m is not None:
            lines.append(f"  m replaced by its reduct {to_text(ev.reduct_m)}")
        if ev.reduct_n is not None:
            lines.append(f"  n replaced by its reduct {to_text(ev.reduct_n)}")
        if ev.skeleton_path is not None:
            lines.append(f"  skeletons differ at {format_path(ev.skeleton_path)}")
        shown = ", ".join(format_path(p) for p in ev.mismatch_paths[:8])
        more = " ..." if len(ev.mismatch_paths) > 8 else ""
        lines.append(f"  mismatching nodes (deepest): {shown or 'none'}{more}")
        return "\n".join(lines)


def _definite_skeleton_mismatch(a: CLTree, b: CLTree) -> Path | None:
    for path, _, _, rel in zip_trees(a, b):
        if rel == MISMATCH:
            return path
    return None


def discriminate(m: Term, n: Term, depths: Sequence[int], fuel: int,
                 mode: Mode | str | None = None) -> Verdict:
    """Look for evidence that ``m`` and ``n`` are not β-convertible.

    NotConvertible is returned when

    * both terms are simple (checked to the largest depth), their Lévy-Longo
      skeletons agree and the number of mismatching clock annotations strictly
      increases across all ``depths``; or
    * their skeletons differ at a node that is neither cut off nor an
      uncertified Bottom.

    A term that is not simple may be replaced by a reduct that is: subterms
    with a normal form get normalised.  The reduct is recorded in the
    evidence.  Any simplicity result of ``unknown`` makes the verdict
    Inconclusive.
    """
    depths = list(depths)
    if len(depths) < 3 or any(b <= a for a, b in zip(depths, depths[1:])):
        raise ValueError("discriminate needs at least three strictly increasing depths")
    if mode is None:
        mode = m.mode or n.mode or Mode.PLAIN
    mode = Mode(mode)
    top = depths[-1]
    m_used, rep_m, m_reduced = _simple_version(m, top, fuel)
    n_used, rep_n, n_reduced = _simple_version(n, top, fuel)

    counts, skeleton_ok, uncertain = [], [], []
    skeleton_path = None
    last: TauEq | None = None
    trees = None
    for d in depths:
        ta, tb = clocked_tree(m_used, d, fuel, mode), clocked_tree(n_used, d, fuel, mode)
        last = tau_eq_finite(ta, tb)
        counts.append(last.mismatch_count)
        skeleton_ok.append(last.skeleton_ok)
        uncertain.append(last.uncertain)
        if skeleton_path is None and not last.skeleton_ok:
            skeleton_path = _definite_skeleton_mismatch(ta, tb)
        trees = (ta, tb)

    evidence = Evidence(depths, counts, list(last.mismatch_paths), rep_m, rep_n, trees,
                        skeleton_ok, uncertain, skeleton_path,
                        reduct_m=m_used if m_reduced else None,
                        reduct_n=n_used if n_reduced else None, mode=mode)

    def inconclusive(reason: str) -> Verdict:
        return Verdict("Inconclusive", reason, evidence)

    unknown = [name for name, rep in (("m", rep_m), ("n", rep_n))
               if rep.status is Simplicity.UNKNOWN]
    if unknown:
        return inconclusive(f"simplicity of {' and '.join(unknown)} unknown within fuel {fuel}")

    if skeleton_path is not None:
        evidence.standard = SKELETON_STANDARD
        return Verdict("NotConvertible",
                       f"Lévy-Longo trees differ at {format_path(skeleton_path)}", evidence)

    if any(uncertain):
        return inconclusive("fuel exhausted while building a tree (uncertified ⊥)")
    not_simple = [name for name, rep in (("m", rep_m), ("n", rep_n))
                  if rep.status is Simplicity.NOT_SIMPLE]
    if not_simple:
        return inconclusive(f"{' and '.join(not_simple)} not simple")
    if counts[-1] == 0:
        return inconclusive("trees eventually match: 0 mismatches")
    if all(b > a for a, b in zip(counts, counts[1:])):
        return Verdict("NotConvertible",
                       f"mismatch counts {counts} strictly increase with depth", evidence)
    return inconclusive(f"mismatch counts {counts} do not strictly increase with depth")

