"""
Depth-bounded clocked Lévy-Longo trees.

``clocked_tree(t, depth, fuel)`` unfolds the infinite normal form of ``t`` down
to ``depth`` levels.  Each node records the clock of the whnf search that
produced it (a τ count in plain mode, a tuple of positions in atomic mode) and
the shape of the whnf: an abstraction ``Abs``, a head variable applied to
arguments ``HeadApp``, ``Bottom`` for no whnf, or ``Cut`` below the depth
bound.  Bottoms found by cycle detection are certified; bottoms caused by
running out of fuel are not, and they make comparisons inconclusive.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Iterator, Union

from .reduction import (
    FuelExhausted, HeadCycle, Path, classic_head_reduce, erase_any, format_path,
    head_reduce_to_whnf, resolve_mode,
)
from .terms import Lam, Mode, Position, Term, spine

ABS, APP, BOTTOM, CUT = "abs", "app", "bottom", "cut"

Ann = Union[int, tuple[Position, ...]]


@dataclass(frozen=True)
class CLTree:
    kind: str
    ann: Ann = 0
    binder: str | None = None
    head: str | None = None
    children: tuple[CLTree, ...] = ()
    certified: bool = False

    @property
    def atomic(self) -> bool:
        return isinstance(self.ann, tuple)

    def depth(self) -> int:
        if self.kind == CUT:
            return 0
        return 1 + max((c.depth() for c in self.children), default=0)


def _empty(mode: Mode) -> Ann:
    return () if mode is Mode.ATOMIC else 0


def cut(mode: Mode = Mode.PLAIN) -> CLTree:
    return CLTree(CUT, _empty(mode))


def bottom(certified: bool, mode: Mode = Mode.PLAIN) -> CLTree:
    return CLTree(BOTTOM, _empty(mode), certified=certified)


def clocked_tree(t: Term, depth: int, fuel: int, mode: Mode | str | None = None) -> CLTree:
    """The clocked Lévy-Longo tree of ``t`` cut off at ``depth``.

    Every node gets its own ``fuel`` budget for the whnf search.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    return _build(t, depth, fuel, resolve_mode(t, mode))


def _build(t: Term, depth: int, fuel: int, mode: Mode) -> CLTree:
    if depth == 0:
        return cut(mode)
    r = head_reduce_to_whnf(t, fuel, mode)
    if isinstance(r, HeadCycle):
        return bottom(True, mode)
    if isinstance(r, FuelExhausted):
        return bottom(False, mode)
    ann = r.atomic_anns if mode is Mode.ATOMIC else r.tau_count
    w = r.term
    if isinstance(w, Lam):
        return CLTree(ABS, ann, binder=w.binder, children=(_build(w.body, depth - 1, fuel, mode),))
    head, args = spine(w)
    return CLTree(APP, ann, head=head.name,
                  children=tuple(_build(a, depth - 1, fuel, mode) for a in args))


def levy_longo_tree(t: Term, depth: int, fuel: int) -> CLTree:
    """Unclocked Lévy-Longo approximant by classical head reduction (all annotations 0)."""
    t = erase_any(t)
    if depth == 0:
        return cut()
    r = classic_head_reduce(t, fuel)
    if isinstance(r, HeadCycle):
        return bottom(True)
    if isinstance(r, FuelExhausted):
        return bottom(False)
    w = r.term
    if isinstance(w, Lam):
        return CLTree(ABS, binder=w.binder, children=(levy_longo_tree(w.body, depth - 1, fuel),))
    head, args = spine(w)
    return CLTree(APP, head=head.name,
                  children=tuple(levy_longo_tree(a, depth - 1, fuel) for a in args))


# -- inspection -------------------------------------------------------------

CUT_MARK = "…"
BOTTOM_MARK = "⊥"


def walk(tr: CLTree, path: Path = ()) -> Iterator[tuple[Path, CLTree]]:
    yield path, tr
    for i, c in enumerate(tr.children):
        yield from walk(c, path + (i,))


def tree_tau_counts(tr: CLTree) -> list[tuple[Path, object]]:
    """Preorder ``(path, annotation)`` pairs; Cut and Bottom nodes get a marker."""
    out = []
    for path, node in walk(tr):
        if node.kind == CUT:
            out.append((path, CUT_MARK))
        elif node.kind == BOTTOM:
            out.append((path, BOTTOM_MARK))
        else:
            out.append((path, node.ann))
    return out


def spine_annotations(tr: CLTree, arg: int = 0) -> list[Ann]:
    """Annotations along the path that always descends into child ``arg``."""
    out = []
    while tr.kind in (ABS, APP):
        out.append(tr.ann)
        if len(tr.children) <= arg:
            break
        tr = tr.children[arg]
    return out


def truncate(tr: CLTree, depth: int) -> CLTree:
    """Replace everything at ``depth`` and below by Cut."""
    mode = Mode.ATOMIC if tr.atomic else Mode.PLAIN
    if depth == 0:
        return cut(mode)
    if not tr.children:
        return tr
    return CLTree(tr.kind, tr.ann, tr.binder, tr.head,
                  tuple(truncate(c, depth - 1) for c in tr.children), tr.certified)


def has_uncertified_bottom(tr: CLTree) -> bool:
    return any(n.kind == BOTTOM and not n.certified for _, n in walk(tr))


# -- comparison -------------------------------------------------------------

MATCH, MISMATCH, UNKNOWN, CUTOFF = "match", "mismatch", "unknown", "cut"


def _resolve(head: str, env: dict[str, int]):
    level = env.get(head)
    return ("free", head) if level is None else ("bound", level)


def zip_trees(a: CLTree, b: CLTree) -> Iterator[tuple[Path, CLTree, CLTree, str]]:
    """Walk two trees in parallel.

    Yields ``(path, node_a, node_b, relation)`` in preorder.  The relation is
    ``cut`` if either node is a Cut, ``unknown`` if an uncertified Bottom is
    involved, ``mismatch`` if the node shapes differ (binders compared up to
    renaming, head variables by their binding site) and ``match`` otherwise;
    only matching nodes are descended into.
    """
    stack = [((), a, b, {}, {}, 0)]
    while stack:
        path, x, y, ex, ey, level = stack.pop()
        if x.kind == CUT or y.kind == CUT:
            yield path, x, y, CUTOFF
            continue
        if (x.kind == BOTTOM and not x.certified) or (y.kind == BOTTOM and not y.certified):
            yield path, x, y, UNKNOWN
            continue
        if x.kind != y.kind:
            yield path, x, y, MISMATCH
            continue
        if x.kind == ABS:
            yield path, x, y, MATCH
            stack.append((path + (0,), x.children[0], y.children[0],
                          {**ex, x.binder: level}, {**ey, y.binder: level}, level + 1))
            continue
        if x.kind == APP:
            if _resolve(x.head, ex) != _resolve(y.head, ey) or len(x.children) != len(y.children):
                yield path, x, y, MISMATCH
                continue
            yield path, x, y, MATCH
            for i in range(len(x.children) - 1, -1, -1):
                stack.append((path + (i,), x.children[i], y.children[i], ex, ey, level))
            continue
        yield path, x, y, MATCH  # two certified bottoms


def same_skeleton(a: CLTree, b: CLTree) -> bool:
    """Equal shapes ignoring annotations; Cut matches anything, Bottom only Bottom."""
    for _, x, y, rel in zip_trees(a, b):
        if rel == MISMATCH:
            return False
        if rel == UNKNOWN and not (x.kind == BOTTOM and y.kind == BOTTOM):
            return False
    return True


def is_subsequence(small: tuple, big: tuple) -> bool:
    it = iter(big)
    return all(any(s == b for b in it) for s in small)


def _deletes_to(x: Ann, y: Ann) -> bool:
    if isinstance(x, tuple):
        return is_subsequence(y, x)
    return x >= y


@dataclass(frozen=True)
class Deletion:
    """Outcome of a τ-deletion check: ``holds``, ``fails`` or ``unknown``."""

    status: str
    path: Path | None = None
    reason: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def __str__(self):
        if self.status == "fails":
            return f"fails @ {format_path(self.path)}: {self.reason}"
        if self.status == "unknown":
            return f"unknown: {self.reason}"
        return "holds"


def tau_deletion_leq(a: CLTree, b: CLTree) -> Deletion:
    """Whether ``b`` is obtained from ``a`` by deleting τ's.

    Plain mode needs ``ann_a >= ann_b`` at every common node, atomic mode needs
    ``ann_b`` to be a subsequence of ``ann_a``; skeletons must agree.  The first
    violation in preorder is reported.
    """
    unknown = None
    compared = 0
    for path, x, y, rel in zip_trees(a, b):
        if rel == MISMATCH:
            return Deletion("fails", path, "tree shapes differ")
        if rel == UNKNOWN:
            unknown = unknown or path
            continue
        if rel == MATCH:
            compared += 1
            if not _deletes_to(x.ann, y.ann):
                return Deletion("fails", path, f"{fmt_ann(x.ann)} does not delete to {fmt_ann(y.ann)}")
    if unknown is not None:
        return Deletion("unknown", unknown, f"fuel exhausted at {format_path(unknown)}")
    if compared == 0:
        return Deletion("unknown", (), "nothing to compare above the depth bound")
    return Deletion("holds")


@dataclass(frozen=True)
class TauEq:
    mismatch_count: int
    mismatch_paths: tuple[Path, ...]
    skeleton_ok: bool
    uncertain: bool = False  # an uncertified Bottom was met


def tau_eq_finite(a: CLTree, b: CLTree) -> TauEq:
    """Count common nodes whose annotations differ.

    ``skeleton_ok`` is False when the shapes disagree at some node that is not
    cut off and not an uncertified Bottom; ``uncertain`` flags uncertified
    Bottoms.
    """
    paths = []
    skeleton_ok = True
    uncertain = False
    for path, x, y, rel in zip_trees(a, b):
        if rel == MISMATCH:
            skeleton_ok = False
        elif rel == UNKNOWN:
            uncertain = True
        elif rel == MATCH and x.ann != y.ann:
            paths.append(path)
    return TauEq(len(paths), tuple(paths), skeleton_ok, uncertain)


# -- rendering --------------------------------------------------------------

def fmt_ann(ann: Ann) -> str:
    if isinstance(ann, tuple):
        return "τ⟨" + ",".join(str(p) for p in ann) + "⟩"
    return f"τ^{ann}"


def render_tree(tr: CLTree, indent: str = "  ") -> str:
    """Indented text, one node per line.

    ``τ^n λx``, ``τ^n y/k`` (head variable with k arguments), ``⊥ (certified)``
    or ``⊥ (fuel exhausted)``, and ``…`` for Cut; atomic clocks print as
    ``τ⟨p1,p2,...⟩``.
    """
    lines = []
    for path, node in walk(tr):
        pad = indent * len(path)
        if node.kind == CUT:
            lines.append(pad + CUT_MARK)
        elif node.kind == BOTTOM:
            lines.append(pad + BOTTOM_MARK + (" (certified)" if node.certified else " (fuel exhausted)"))
        elif node.kind == ABS:
            lines.append(f"{pad}{fmt_ann(node.ann)} λ{node.binder}")
        else:
            lines.append(f"{pad}{fmt_ann(node.ann)} {node.head}/{len(node.children)}")
    return "\n".join(lines)


def tree_to_json(tr: CLTree) -> dict:
    ann = [str(p) for p in tr.ann] if tr.atomic else tr.ann
    out = {"ann": ann, "kind": tr.kind}
    if tr.kind == ABS:
        out["binder"] = tr.binder
    elif tr.kind == APP:
        out["head"] = tr.head
    elif tr.kind == BOTTOM:
        out["certified"] = tr.certified
    out["children"] = [tree_to_json(c) for c in tr.children]
    return out


def tree_digest(tr: CLTree) -> str:
    data = json.dumps(tree_to_json(tr), ensure_ascii=False, separators=(",", ":"))
    return hashlib.sha256(data.encode("utf-8")).hexdigest()[:16]
