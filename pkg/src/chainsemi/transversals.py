"""Transversals of kernel partitions and their convexity predicates.

Each check in :func:`lemma_witness` works by exhaustive search over
transversals (or direct evaluation of an image set), so a false statement
shows up as a failing report instead of being assumed away.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .exceptions import HypothesisNotMet
from .maps import KernelPartition, PartialMap


@dataclass(frozen=True)
class Transversal:
    kernel: KernelPartition
    points: tuple[int, ...]  # points[i] represents kernel.blocks[i]

    def __post_init__(self):
        if len(self.points) != len(self.kernel.blocks):
            raise ValueError("a transversal needs one point per block")
        for t, block in zip(self.points, self.kernel.blocks):
            if t not in block:
                raise ValueError(f"{t} is not in block {block}")

    @property
    def as_set(self) -> tuple[int, ...]:
        return tuple(sorted(self.points))


def all_transversals(K: KernelPartition) -> list[Transversal]:
    out = [Transversal(K, pts) for pts in product(*K.blocks)]
    out.sort(key=lambda T: T.as_set)
    return out


def is_interval(points: Iterable[int]) -> bool:
    pts = set(points)
    if not pts:
        return True
    return len(pts) == max(pts) - min(pts) + 1


def is_convex(T: Transversal) -> bool:
    return is_interval(T.points)


def is_relatively_convex(T: Transversal) -> bool:
    chosen = set(T.points)
    lo, hi = min(chosen), max(chosen)
    # it is enough to test the outermost pair
    return all(z in chosen for z in T.kernel.domain if lo <= z <= hi)


def is_admissible(T: Transversal) -> bool:
    blocks = T.kernel.blocks
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            gap = min(abs(x - y) for x in blocks[i] for y in blocks[j])
            if abs(T.points[i] - T.points[j]) > gap:
                return False
    return True


LEMMA_CHECKS = ("relatively_convex_nonexistence", "admissible_existence", "convex_image")


@dataclass
class LemmaReport:
    which: str
    holds: bool
    witness: tuple[int, ...] | None = None
    trace: list[str] = field(default_factory=list)


def _interior_sizes(K: KernelPartition) -> tuple[int, ...]:
    return K.block_sizes[1:-1]


def lemma_witness(
    K: KernelPartition | None,
    which: str,
    *,
    alpha: PartialMap | None = None,
    subset: Iterable[int] | None = None,
) -> LemmaReport:
    """Check one of the transversal statements on a concrete kernel.

    ``relatively_convex_nonexistence``: ordered blocks, p >= 3 and some interior
    block with two or more points admit no relatively convex transversal.

    ``admissible_existence``: ordered blocks, p >= 3 and all interior blocks
    singletons admit an admissible transversal.

    ``convex_image``: for a contraction ``alpha`` and an interval ``subset`` of
    its domain, the image of ``subset`` is an interval.  ``K`` is ignored.
    """
    if which == "relatively_convex_nonexistence":
        if len(K) < 3 or not K.is_ordered() or max(_interior_sizes(K)) < 2:
            raise HypothesisNotMet("needs p >= 3, ordered blocks and an interior block of size >= 2")
        trace = []
        for T in all_transversals(K):
            ok = is_relatively_convex(T)
            trace.append(f"{T.as_set}: {'relatively convex' if ok else 'fails'}")
            if ok:
                return LemmaReport(which, False, T.as_set, trace)
        return LemmaReport(which, True, None, trace)

    if which == "admissible_existence":
        if len(K) < 3 or not K.is_ordered() or any(s != 1 for s in _interior_sizes(K)):
            raise HypothesisNotMet("needs p >= 3, ordered blocks and singleton interior blocks")
        trace = []
        for T in all_transversals(K):
            ok = is_admissible(T)
            trace.append(f"{T.as_set}: {'admissible' if ok else 'fails'}")
            if ok:
                return LemmaReport(which, True, T.as_set, trace)
        return LemmaReport(which, False, None, trace)

    if which == "convex_image":
        if alpha is None or subset is None:
            raise HypothesisNotMet("convex_image needs alpha and subset")
        A = sorted(set(subset))
        if not A or not is_interval(A) or any(alpha(x) is None for x in A):
            raise HypothesisNotMet(f"{A} is not a nonempty interval inside dom alpha")
        img = tuple(sorted({alpha(x) for x in A}))
        holds = is_interval(img)
        return LemmaReport(which, holds, img, [f"image of {A} is {img}"])

    raise ValueError(f"unknown check {which!r}; expected one of {LEMMA_CHECKS}")
