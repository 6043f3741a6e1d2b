"""The semigroup families P_n, CP_n, OCP_n, ORCP_n, CT_n and OCT_n.

Enumeration filters all (n+1)^n candidate ids with vectorised predicates;
:func:`member` evaluates the same definitions pointwise on a single map and
serves as the independent check on the vectorised filter.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable

import numpy as np

from . import maps
from .exceptions import BudgetExceeded, NotMember
from .maps import PartialMap

DEFAULT_MAX_N = 6


class FamilyTag(enum.Enum):
    P = "p"
    CP = "cp"
    OCP = "ocp"
    ORCP = "orcp"
    CT = "ct"
    OCT = "oct"

    @classmethod
    def parse(cls, value: "FamilyTag | str") -> "FamilyTag":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())

    @property
    def code(self) -> int:
        """Single-byte tag used by the cache file format."""
        return list(FamilyTag).index(self)

    @property
    def full_only(self) -> bool:
        return self in (FamilyTag.CT, FamilyTag.OCT)


# every family is contained in the ones listed for it
CONTAINMENTS = {
    FamilyTag.OCP: (FamilyTag.ORCP, FamilyTag.CP, FamilyTag.P),
    FamilyTag.ORCP: (FamilyTag.CP, FamilyTag.P),
    FamilyTag.OCT: (FamilyTag.CT, FamilyTag.OCP, FamilyTag.CP, FamilyTag.P),
    FamilyTag.CT: (FamilyTag.CP, FamilyTag.P),
    FamilyTag.CP: (FamilyTag.P,),
    FamilyTag.P: (),
}


def member(tag: FamilyTag | str, a: PartialMap) -> bool:
    tag = FamilyTag.parse(tag)
    if tag is FamilyTag.P:
        return True
    if tag.full_only and not a.is_full:
        return False
    if not maps.is_contraction(a):
        return False
    if tag in (FamilyTag.CP, FamilyTag.CT):
        return True
    if tag is FamilyTag.ORCP:
        return maps.is_order_preserving(a) or maps.is_order_reversing(a)
    return maps.is_order_preserving(a)


def digits(ids: np.ndarray, n: int) -> np.ndarray:
    """Slot matrix of shape ``(len(ids), n)``; column ``i`` holds the image of ``i + 1``."""
    ids = np.asarray(ids, dtype=np.int64)
    base = n + 1
    out = np.empty((ids.shape[0], n), dtype=np.int64)
    rest = ids.copy()
    for i in range(n):
        rest, out[:, i] = np.divmod(rest, base)
    return out


def weights(n: int) -> np.ndarray:
    return (n + 1) ** np.arange(n, dtype=np.int64)


def _family_mask(tag: FamilyTag, D: np.ndarray) -> np.ndarray:
    m, n = D.shape
    keep = np.ones(m, dtype=bool)
    if tag is FamilyTag.P:
        return keep
    if tag.full_only:
        keep &= (D > 0).all(axis=1)
    preserving = np.ones(m, dtype=bool)
    reversing = np.ones(m, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            both = (D[:, i] > 0) & (D[:, j] > 0)
            diff = D[:, j] - D[:, i]
            keep &= ~both | (np.abs(diff) <= j - i)
            preserving &= ~both | (diff >= 0)
            reversing &= ~both | (diff <= 0)
    if tag is FamilyTag.ORCP:
        keep &= preserving | reversing
    elif tag in (FamilyTag.OCP, FamilyTag.OCT):
        keep &= preserving
    return keep


def check_budget(n: int, max_n: int | None = DEFAULT_MAX_N, what: str = "enumeration") -> None:
    if n < 1:
        raise ValueError(f"chain size must be positive, got {n}")
    if max_n is not None and n > max_n:
        raise BudgetExceeded(f"{what} at n={n} exceeds budget max_n={max_n}")


class ElementSet:
    """A family member list sorted by canonical id, with a position index."""

    def __init__(self, family: FamilyTag | str, n: int, ids: Iterable[int], name: str | None = None):
        self.family = FamilyTag.parse(family)
        self.n = n
        self.ids = np.array(sorted(set(int(i) for i in ids)), dtype=np.int64)
        self.name = name or f"{self.family.name}_{n}"

    def __len__(self) -> int:
        return int(self.ids.shape[0])

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a: PartialMap) -> bool:
        return a.n == self.n and maps.canonical_id(a) in self.index

    def __repr__(self) -> str:
        return f"ElementSet({self.name}, size={len(self)})"

    @cached_property
    def elements(self) -> list[PartialMap]:
        return [maps.decode(self.n, int(i)) for i in self.ids]

    @cached_property
    def index(self) -> dict[int, int]:
        return {int(i): k for k, i in enumerate(self.ids)}

    @cached_property
    def values(self) -> np.ndarray:
        return digits(self.ids, self.n)

    @cached_property
    def heights(self) -> np.ndarray:
        return np.array([a.height for a in self.elements], dtype=np.int64)

    @cached_property
    def idempotent_mask(self) -> np.ndarray:
        return self.table_ids[np.arange(len(self)), np.arange(len(self))] == self.ids

    def position(self, a: PartialMap | int) -> int:
        key = a if isinstance(a, (int, np.integer)) else maps.canonical_id(a)
        try:
            return self.index[int(key)]
        except KeyError:
            raise NotMember(f"{a!r} is not an element of {self.name}") from None

    @cached_property
    def table_ids(self) -> np.ndarray:
        """``table_ids[i, j]`` is the canonical id of ``elements[i] * elements[j]``."""
        return product_ids(self.values, self.values, self.n)

    @cached_property
    def table(self) -> np.ndarray:
        """Cayley table by position; ``-1`` marks a product outside the set."""
        return self.locate(self.table_ids)

    def locate(self, ids: np.ndarray) -> np.ndarray:
        ids = np.asarray(ids, dtype=np.int64)
        if len(self) == 0:
            return np.full(ids.shape, -1, dtype=np.int64)
        pos = np.searchsorted(self.ids, ids)
        pos = np.minimum(pos, len(self) - 1)
        return np.where(self.ids[pos] == ids, pos, -1)

    @property
    def identity_position(self) -> int:
        return self.position(maps.identity(self.n))

    def subset(self, positions: Iterable[int], name: str) -> "ElementSet":
        return ElementSet(self.family, self.n, self.ids[list(positions)], name=name)


def product_ids(left: np.ndarray, right: np.ndarray, n: int) -> np.ndarray:
    """Ids of every product ``left[i] * right[j]`` given slot matrices."""
    pad = np.concatenate([np.zeros((right.shape[0], 1), dtype=np.int64), right], axis=1)
    w = weights(n)
    out = np.empty((left.shape[0], right.shape[0]), dtype=np.int64)
    # one row of the table per left factor keeps memory at O(m * n)
    for i in range(left.shape[0]):
        prod = pad[:, left[i]]
        out[i] = prod @ w
    return out


def enumerate_family(
    tag: FamilyTag | str,
    n: int,
    *,
    max_n: int | None = DEFAULT_MAX_N,
    cache_dir: str | Path | None = None,
) -> ElementSet:
    tag = FamilyTag.parse(tag)
    check_budget(n, max_n)
    if cache_dir is not None:
        from .cache import cache_path, read_cache, write_cache

        path = cache_path(cache_dir, tag, n)
        if path.exists():
            got_tag, got_n, ids = read_cache(path)
            if got_tag is tag and got_n == n:
                return ElementSet(tag, n, ids)
    ids = np.arange((n + 1) ** n, dtype=np.int64)
    ids = ids[_family_mask(tag, digits(ids, n))]
    out = ElementSet(tag, n, ids)
    if cache_dir is not None:
        write_cache(path, tag, n, out.ids)
    return out


@dataclass(frozen=True)
class ClosureResult:
    closed: bool
    witness: tuple[PartialMap, PartialMap] | None = None

    def __bool__(self) -> bool:
        return self.closed


def verify_closure(tag: FamilyTag | str, n: int, *, max_n: int | None = DEFAULT_MAX_N) -> ClosureResult:
    S = enumerate_family(tag, n, max_n=max_n)
    return closure_of(S)


def closure_of(S: ElementSet) -> ClosureResult:
    bad = np.argwhere(S.table < 0)
    if bad.size == 0:
        return ClosureResult(True)
    i, j = bad[0]
    return ClosureResult(False, (S.elements[i], S.elements[j]))
