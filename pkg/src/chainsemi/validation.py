"""Input coercion for the estimator layer.

Anything that names a partial map is accepted: a :class:`PartialMap`, a
canonical id (with ``n``), a slot sequence with ``0`` for undefined points,
or a ``{point: value}`` dict (with ``n``).
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Iterable

import numpy as np

from . import maps
from .exceptions import SizeMismatch
from .families import ElementSet, FamilyTag, enumerate_family
from .maps import PartialMap


def check_chain_size(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"chain size must be a positive integer, got {n!r}")
    return int(n)


def check_partial_map(x, n: int | None = None) -> PartialMap:
    if isinstance(x, PartialMap):
        if n is not None and x.n != n:
            raise SizeMismatch(f"map on [{x.n}] where [{n}] was expected")
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        if n is None:
            raise ValueError("a canonical id needs the chain size n")
        return maps.decode(n, int(x))
    if isinstance(x, Mapping):
        if n is None:
            raise ValueError("a {point: value} dict needs the chain size n")
        return maps.make(n, x.items())
    slots = tuple(int(v) for v in x)
    if n is not None and len(slots) != n:
        raise SizeMismatch(f"{len(slots)} slots where {n} were expected")
    return PartialMap(len(slots), slots)


def check_maps(X: Iterable, n: int | None = None) -> list[PartialMap]:
    """Coerce a batch to a list of maps on one chain."""
    if isinstance(X, ElementSet):
        if n is not None and X.n != n:
            raise SizeMismatch(f"{X.name} lives on [{X.n}], expected [{n}]")
        return list(X.elements)
    if isinstance(X, np.ndarray) and X.ndim == 2:
        X = X.tolist()
    out = [check_partial_map(x, n) for x in X]
    if not out:
        raise ValueError("empty input: at least one map is required")
    sizes = {a.n for a in out}
    if len(sizes) != 1:
        raise SizeMismatch(f"maps on chains of several sizes: {sorted(sizes)}")
    return out


def check_element_set(X, n: int | None = None, family: FamilyTag | str | None = None) -> ElementSet:
    """Return ``X`` as an :class:`ElementSet`.

    A ``(family, n)`` pair enumerates the family.  A plain batch of maps is
    wrapped as-is and must be closed under composition and contain the
    identity, since the star relations are computed inside it.
    """
    if isinstance(X, ElementSet):
        return X
    if isinstance(X, (str, FamilyTag)):
        return enumerate_family(X, check_chain_size(n))
    elements = check_maps(X, n)
    tag = FamilyTag.parse(family) if family is not None else FamilyTag.P
    S = ElementSet(tag, elements[0].n, (maps.canonical_id(a) for a in elements), name="custom")
    if (S.table < 0).any():
        raise ValueError("the maps given are not closed under composition")
    if maps.identity(S.n) not in S:
        raise ValueError("the maps given do not contain the identity")
    return S
