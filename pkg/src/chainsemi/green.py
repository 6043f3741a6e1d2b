"""Green's relations and their starred versions on enumerated families.

Two independent routes produce the starred partitions:

* the *oracle* works from the multiplication table alone.  ``a L* b`` holds
  iff ``ax = ay <=> bx = by`` for all ``x, y`` in S^1, i.e. iff the rows of
  ``a`` and ``b`` induce the same partition of S^1.  Each row is reduced to a
  canonical colouring (labels in order of first appearance), so comparing
  two elements is a flat equality test.  R* is the same on columns.
* the *characterization* groups by image, kernel and height.

D* is the join of L* and R*, computed by union-find.  Every family handled
here contains the identity map, so S^1 = S and no identity is adjoined.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from . import maps
from .exceptions import BudgetExceeded, FamilyUnsupported
from .families import ElementSet, FamilyTag
from .unionfind import DisjointSet

DEFAULT_ORACLE_MAX_N = 4
DEFAULT_JSTAR_MAX_N = 3
CHARACTERIZED_FAMILIES = (FamilyTag.CP, FamilyTag.ORCP, FamilyTag.OCP)


class Relation(enum.Enum):
    L = "l"
    R = "r"
    H = "h"
    D = "d"
    LSTAR = "lstar"
    RSTAR = "rstar"
    HSTAR = "hstar"
    DSTAR = "dstar"
    JSTAR = "jstar"

    @classmethod
    def parse(cls, value: "Relation | str") -> "Relation":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())

    @property
    def starred(self) -> bool:
        return self.value.endswith("star")


class Method(enum.Enum):
    ORACLE = "oracle"
    CHARACTERIZATION = "characterization"

    @classmethod
    def parse(cls, value: "Method | str") -> "Method":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class RelationClasses:
    base: ElementSet
    relation: Relation
    method: Method
    classes: tuple[tuple[int, ...], ...]  # positions into base.elements

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    @property
    def labels(self) -> np.ndarray:
        out = np.empty(len(self.base), dtype=np.int64)
        for k, cls in enumerate(self.classes):
            out[list(cls)] = k
        return out

    def class_of(self, pos: int) -> tuple[int, ...]:
        for cls in self.classes:
            if pos in cls:
                return cls
        raise IndexError(pos)

    def id_classes(self) -> list[list[int]]:
        return [[int(self.base.ids[p]) for p in cls] for cls in self.classes]

    def same_partition(self, other: "RelationClasses") -> bool:
        return self.classes == other.classes


@dataclass(frozen=True)
class TranslationFingerprint:
    """Partition of S^1 induced by ``x ~ y <=> ax = ay`` (side="left")
    or ``xa = ya`` (side="right"), as a first-appearance colouring."""

    side: str
    coloring: tuple[int, ...]


def _coloring(row: np.ndarray) -> np.ndarray:
    _, first, inv = np.unique(row, return_index=True, return_inverse=True)
    rank = np.empty(first.shape[0], dtype=np.int64)
    rank[np.argsort(first)] = np.arange(first.shape[0])
    return rank[inv.ravel()]


def fingerprint(S: ElementSet, pos: int, side: str = "left") -> TranslationFingerprint:
    if side == "left":
        row = S.table_ids[pos, :]
    elif side == "right":
        row = S.table_ids[:, pos]
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return TranslationFingerprint(side, tuple(int(c) for c in _coloring(row)))


def partition_by(keys: Sequence[Hashable]) -> tuple[tuple[int, ...], ...]:
    """Group positions by equal key; classes sorted, ordered by least member."""
    groups: dict[Hashable, list[int]] = {}
    for i, k in enumerate(keys):
        groups.setdefault(k, []).append(i)
    return tuple(sorted(tuple(g) for g in groups.values()))


def meet(*partitions: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    size = sum(len(c) for c in partitions[0])
    labels = [[0] * size for _ in partitions]
    for lab, part in zip(labels, partitions):
        for k, cls in enumerate(part):
            for i in cls:
                lab[i] = k
    return partition_by(list(zip(*labels)))


def join(size: int, *partitions: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    ds = DisjointSet(size)
    for part in partitions:
        ds.union_groups(part)
    return ds.classes()


def _require_identity(S: ElementSet) -> None:
    if maps.identity(S.n) not in S:
        raise ValueError(f"{S.name} does not contain the identity; S^1 != S")


def _image_key(a: maps.PartialMap):
    return a.image


def _kernel_key(a: maps.PartialMap):
    return maps.kernel(a).relation() if a.image else frozenset()


def classic_classes(S: ElementSet, relation: Relation | str) -> RelationClasses:
    """Green's L, R, H, D of the oversemigroup P_n, restricted to ``S``.

    L is equal image and R is equal kernel in P_n; D is the equivalence
    generated by L and R among the elements of ``S``.
    """
    relation = Relation.parse(relation)
    els = S.elements
    L = partition_by([_image_key(a) for a in els])
    R = partition_by([_kernel_key(a) for a in els])
    table = {
        Relation.L: lambda: L,
        Relation.R: lambda: R,
        Relation.H: lambda: meet(L, R),
        Relation.D: lambda: join(len(S), L, R),
    }
    if relation not in table:
        raise ValueError(f"{relation} is not a classical relation")
    return RelationClasses(S, relation, Method.CHARACTERIZATION, table[relation]())


def _check_oracle_budget(S: ElementSet, max_n: int | None) -> None:
    if max_n is not None and S.n > max_n:
        raise BudgetExceeded(f"oracle at n={S.n} exceeds budget max_n={max_n}")


def _fingerprint_partition(S: ElementSet, side: str) -> tuple[tuple[int, ...], ...]:
    T = S.table_ids if side == "left" else S.table_ids.T
    keys = [_coloring(T[i]).tobytes() for i in range(len(S))]
    return partition_by(keys)


def star_classes_oracle(
    S: ElementSet, relation: Relation | str, *, max_n: int | None = DEFAULT_ORACLE_MAX_N
) -> RelationClasses:
    relation = Relation.parse(relation)
    _check_oracle_budget(S, max_n)
    _require_identity(S)
    if relation is Relation.LSTAR:
        classes = _fingerprint_partition(S, "left")
    elif relation is Relation.RSTAR:
        classes = _fingerprint_partition(S, "right")
    elif relation is Relation.HSTAR:
        classes = meet(_fingerprint_partition(S, "left"), _fingerprint_partition(S, "right"))
    elif relation is Relation.DSTAR:
        classes = join(len(S), _fingerprint_partition(S, "left"), _fingerprint_partition(S, "right"))
    else:
        raise ValueError(f"oracle handles L*, R*, H*, D*; got {relation}")
    return RelationClasses(S, relation, Method.ORACLE, classes)


_CHAR_KEYS: dict[Relation, Callable[[maps.PartialMap], Hashable]] = {
    Relation.LSTAR: _image_key,
    Relation.RSTAR: _kernel_key,
    Relation.HSTAR: lambda a: (_image_key(a), _kernel_key(a)),
    Relation.DSTAR: lambda a: a.height,
}


def star_classes_char(S: ElementSet, relation: Relation | str) -> RelationClasses:
    relation = Relation.parse(relation)
    if S.family not in CHARACTERIZED_FAMILIES:
        raise FamilyUnsupported(f"no characterization of starred relations for {S.family.name}")
    if relation not in _CHAR_KEYS:
        raise ValueError(f"characterization handles L*, R*, H*, D*; got {relation}")
    key = _CHAR_KEYS[relation]
    return RelationClasses(S, relation, Method.CHARACTERIZATION, partition_by([key(a) for a in S.elements]))


def star_classes(S: ElementSet, relation: Relation | str, method: Method | str = "oracle", **kw) -> RelationClasses:
    relation = Relation.parse(relation)
    method = Method.parse(method)
    if relation is Relation.JSTAR:
        return jstar_classes(S, **kw)
    if not relation.starred:
        return classic_classes(S, relation)
    if method is Method.ORACLE:
        return star_classes_oracle(S, relation, **kw)
    return star_classes_char(S, relation)


def _reachability(S: ElementSet, dstar: RelationClasses) -> tuple[np.ndarray, np.ndarray]:
    """Reflexive-transitive closure of ``C -> C'`` whenever some ``xby`` with
    ``b`` in D*-class ``C`` lands in class ``C'``."""
    labels = dstar.labels
    k = len(dstar)
    table = S.table
    if (table < 0).any():
        raise ValueError(f"{S.name} is not closed under composition")
    step = np.eye(k, dtype=bool)
    for b in range(len(S)):
        left = np.unique(table[:, b])  # positions of x*b
        twosided = np.unique(table[left, :])  # positions of x*b*y
        step[labels[b], np.unique(labels[twosided])] = True
    reach = step
    while True:
        nxt = reach | ((reach.astype(np.int64) @ reach.astype(np.int64)) > 0)
        if (nxt == reach).all():
            return labels, reach
        reach = nxt


def principal_star_ideals(
    S: ElementSet, *, max_n: int | None = DEFAULT_JSTAR_MAX_N, dstar: RelationClasses | None = None
) -> list[frozenset[int]]:
    """J*(a) for every element, as sets of positions."""
    _check_oracle_budget(S, max_n)
    if dstar is None:
        dstar = star_classes_oracle(S, Relation.DSTAR, max_n=None)
    labels, reach = _reachability(S, dstar)
    members = [np.flatnonzero(reach[c][labels]) for c in range(len(dstar))]
    ideals = [frozenset(int(i) for i in m) for m in members]
    return [ideals[labels[a]] for a in range(len(S))]


def jstar_classes(S: ElementSet, *, max_n: int | None = DEFAULT_JSTAR_MAX_N) -> RelationClasses:
    ideals = principal_star_ideals(S, max_n=max_n)
    return RelationClasses(S, Relation.JSTAR, Method.ORACLE, partition_by(ideals))


@dataclass(frozen=True)
class AbundanceVerdict:
    side: str
    holds: bool
    method: Method
    witness: tuple[int, ...] | None = None  # canonical ids of an idempotent-free class

    def __bool__(self) -> bool:
        return self.holds


def abundance(
    S: ElementSet,
    side: str,
    *,
    method: Method | str = "characterization",
    max_n: int | None = DEFAULT_ORACLE_MAX_N,
) -> AbundanceVerdict:
    """Left (right) abundance: every L*-class (R*-class) holds an idempotent.

    On failure the witness is the failing class whose least canonical id is
    smallest, so reports do not depend on element order.
    """
    method = Method.parse(method)
    relation = {"left": Relation.LSTAR, "right": Relation.RSTAR}.get(side)
    if relation is None:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if method is Method.ORACLE:
        classes = star_classes_oracle(S, relation, max_n=max_n)
    else:
        classes = star_classes_char(S, relation)
    idem = S.idempotent_mask
    failing = [cls for cls in classes if not idem[list(cls)].any()]
    if not failing:
        return AbundanceVerdict(side, True, method)
    witness = min(tuple(sorted(int(S.ids[p]) for p in cls)) for cls in failing)
    return AbundanceVerdict(side, False, method, witness)
