"""Partial self-maps of the chain [n] = {1, ..., n}.

A :class:`PartialMap` stores one slot per point of the chain; slot ``i - 1``
holds the image of ``i`` or ``0`` when ``i`` is outside the domain.  That
layout doubles as the base-(n+1) digit string of the canonical id, so
encoding and decoding are plain radix conversions.

Maps act on the right and compose left to right: ``x(ab) = (xa)b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .exceptions import DuplicatePoint, EmptyDomain, IdOutOfRange, OutOfRange, SizeMismatch

UNDEFINED = 0


@dataclass(frozen=True, slots=True)
class PartialMap:
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise OutOfRange(f"chain size must be positive, got {self.n}")
        if len(self.values) != self.n:
            raise SizeMismatch(f"expected {self.n} slots, got {len(self.values)}")
        for v in self.values:
            if not 0 <= v <= self.n:
                raise OutOfRange(f"value {v} outside [1, {self.n}]")

    def __call__(self, x: int) -> int | None:
        v = self.values[x - 1]
        return v if v else None

    def __mul__(self, other: PartialMap) -> PartialMap:
        return compose(self, other)

    def __iter__(self):
        """Yield ``(point, image)`` pairs over the domain in increasing order."""
        for i, v in enumerate(self.values, start=1):
            if v:
                yield i, v

    def __repr__(self) -> str:
        body = ", ".join(f"{x}->{v}" for x, v in self)
        return f"PartialMap(n={self.n}, {{{body}}})"

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values, start=1) if v)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(v for v in self.values if v)

    @property
    def height(self) -> int:
        return len(self.image)

    @property
    def fixed_points(self) -> frozenset[int]:
        return frozenset(x for x, v in self if x == v)

    @property
    def is_full(self) -> bool:
        return all(self.values)

    @property
    def canonical_id(self) -> int:
        return canonical_id(self)


@dataclass(frozen=True, slots=True)
class PropertySet:
    contraction: bool
    order_preserving: bool
    order_reversing: bool
    isometry: bool
    order_decreasing: bool
    idempotent: bool
    full: bool


@dataclass(frozen=True, slots=True)
class KernelPartition:
    """Kernel blocks of a map, ordered by least element, with aligned images."""

    blocks: tuple[tuple[int, ...], ...]
    images: tuple[int, ...]

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(sorted(x for b in self.blocks for x in b))

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def relation(self) -> frozenset[frozenset[int]]:
        """The kernel as an unordered set of blocks (image values dropped)."""
        return frozenset(frozenset(b) for b in self.blocks)

    def is_ordered(self) -> bool:
        """True when every point of A_i lies below every point of A_j for i < j."""
        return all(max(a) < min(b) for a, b in zip(self.blocks, self.blocks[1:]))


def make(n: int, pairs: Iterable[tuple[int, int]] = ()) -> PartialMap:
    values = [UNDEFINED] * n
    for x, v in pairs:
        if not (1 <= x <= n and 1 <= v <= n):
            raise OutOfRange(f"pair ({x}, {v}) outside [1, {n}]")
        if values[x - 1]:
            raise DuplicatePoint(f"point {x} assigned twice")
        values[x - 1] = v
    return PartialMap(n, tuple(values))


def from_blocks(n: int, blocks: Sequence[Iterable[int]], images: Sequence[int]) -> PartialMap:
    """Build a map from its tabular form: block ``blocks[i]`` goes to ``images[i]``."""
    if len(blocks) != len(images):
        raise SizeMismatch("blocks and images differ in length")
    return make(n, [(x, y) for b, y in zip(blocks, images) for x in b])


def identity(n: int) -> PartialMap:
    return PartialMap(n, tuple(range(1, n + 1)))


def empty(n: int) -> PartialMap:
    return PartialMap(n, (UNDEFINED,) * n)


def compose(a: PartialMap, b: PartialMap) -> PartialMap:
    if a.n != b.n:
        raise SizeMismatch(f"cannot compose maps on [{a.n}] and [{b.n}]")
    bv = (UNDEFINED,) + b.values
    return PartialMap(a.n, tuple(bv[v] for v in a.values))


def _pairs(a: PartialMap):
    return combinations(tuple(a), 2)


def is_contraction(a: PartialMap) -> bool:
    return all(abs(u - v) <= y - x for (x, u), (y, v) in _pairs(a))


def is_isometry(a: PartialMap) -> bool:
    return all(abs(u - v) == y - x for (x, u), (y, v) in _pairs(a))


def is_order_preserving(a: PartialMap) -> bool:
    # pairs come out with x < y
    return all(u <= v for (_, u), (_, v) in _pairs(a))


def is_order_reversing(a: PartialMap) -> bool:
    return all(u >= v for (_, u), (_, v) in _pairs(a))


def is_order_decreasing(a: PartialMap) -> bool:
    return all(v <= x for x, v in a)


def is_idempotent(a: PartialMap) -> bool:
    return compose(a, a) == a


def is_idempotent_via_fixpoints(a: PartialMap) -> bool:
    return a.image == a.fixed_points


def classify(a: PartialMap) -> PropertySet:
    return PropertySet(
        contraction=is_contraction(a),
        order_preserving=is_order_preserving(a),
        order_reversing=is_order_reversing(a),
        isometry=is_isometry(a),
        order_decreasing=is_order_decreasing(a),
        idempotent=is_idempotent(a),
        full=a.is_full,
    )


def kernel(a: PartialMap) -> KernelPartition:
    groups: dict[int, list[int]] = {}
    for x, v in a:
        groups.setdefault(v, []).append(x)
    if not groups:
        raise EmptyDomain("the empty map has no kernel partition")
    # domain is scanned in increasing order, so each block is sorted and its
    # first entry is its minimum
    ordered = sorted(groups.items(), key=lambda kv: kv[1][0])
    return KernelPartition(
        blocks=tuple(tuple(b) for _, b in ordered),
        images=tuple(v for v, _ in ordered),
    )


def canonical_id(a: PartialMap) -> int:
    base = a.n + 1
    out = 0
    for v in reversed(a.values):
        out = out * base + v
    return out


def decode(n: int, ident: int) -> PartialMap:
    base = n + 1
    if not 0 <= ident < base**n:
        raise IdOutOfRange(f"id {ident} outside [0, {base**n})")
    values = []
    for _ in range(n):
        ident, v = divmod(ident, base)
        values.append(v)
    return PartialMap(n, tuple(values))


def all_maps(n: int) -> Iterable[PartialMap]:
    """Every element of P_n in increasing canonical-id order."""
    for i in range((n + 1) ** n):
        yield decode(n, i)
