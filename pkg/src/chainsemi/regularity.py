"""Regular and strongly regular elements.

Regularity is always relative to an ambient :class:`ElementSet`: ``a`` is
regular in ``S`` when ``aba = a`` for some ``b`` in ``S``.  Brute-force
searches run on the Cayley table of ``S``.

The empty map is regular (it is idempotent) but has no kernel blocks, so it
is kept out of SReg.  Closure checks run on SReg together with the empty map
and count products that collapse to it separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import maps
from .exceptions import (
    EmptyDomain,
    FamilyUnsupported,
    HeightTooSmall,
    NotIdempotent,
    NotMember,
    NotStronglyRegular,
)
from .families import DEFAULT_MAX_N, ElementSet, FamilyTag, enumerate_family, member
from .maps import PartialMap
from .transversals import Transversal, all_transversals, is_admissible, is_convex


@dataclass(frozen=True)
class RegularityVerdict:
    element: PartialMap
    semigroup: str
    regular: bool
    inverse_witness: PartialMap | None = None
    strongly_regular: bool | None = None  # None: not evaluated
    convex_transversal: Transversal | None = None


def _closed_table(S: ElementSet) -> np.ndarray:
    table = S.table
    if (table < 0).any():
        raise ValueError(f"{S.name} is not closed under composition")
    return table


def regular_witnesses(S: ElementSet, within: np.ndarray | None = None) -> np.ndarray:
    """Least-id ``b`` with ``aba = a`` for every ``a`` (``-1`` when none).

    ``within`` is an optional boolean mask restricting where ``b`` may come
    from; positions refer to ``S``.
    """
    table = _closed_table(S)
    m = len(S)
    rows = np.arange(m)[:, None]
    aba = table[table, rows]  # aba[a, b] = (a*b)*a
    hit = aba == rows
    if within is not None:
        hit &= within[None, :]
    found = hit.any(axis=1)
    return np.where(found, hit.argmax(axis=1), -1)


def is_regular(a: PartialMap, S: ElementSet) -> RegularityVerdict:
    pos = S.position(a)
    table = _closed_table(S)
    hit = np.flatnonzero(table[table[pos, :], pos] == pos)
    witness = S.elements[hit[0]] if hit.size else None
    return RegularityVerdict(a, S.name, bool(hit.size), witness)


def _require_orcp(a: PartialMap) -> None:
    if not member(FamilyTag.ORCP, a):
        raise NotMember(f"{a!r} is not in ORCP_{a.n}")


def regular_char_orcp(a: PartialMap, variant: str = "stated") -> bool:
    """Closed-form regularity test for ORCP_n elements of height >= 3.

    With blocks A_1 < ... < A_p and images x_1..x_p, ``a`` is regular iff

    * order preserving:  min A_p - x_p = max A_1 - x_1 = d and
      A_i = {x_i + d} for 1 < i < p, or
    * order reversing:   min A_p - x_1 = max A_1 - x_p = d and the interior
      blocks are singletons given by ``variant``:

      - ``"stated"``:    A_i = {x_(p-i+1) + d}
      - ``"reflected"``: A_i = {x_1 + x_p - x_i + d}

    The two reversing forms differ exactly when the image is not symmetric
    about its midpoint; only the reflected form matches brute force there.
    """
    if variant not in ("stated", "reflected"):
        raise ValueError(f"unknown variant {variant!r}")
    _require_orcp(a)
    if a.height < 3:
        raise HeightTooSmall(f"height {a.height} < 3; use is_regular instead")
    K = maps.kernel(a)
    A, x = K.blocks, K.images
    p = len(A)
    lo, hi = A[0][-1], A[-1][0]  # max A_1, min A_p

    d = hi - x[-1]
    preserving = lo - x[0] == d and all(A[i] == (x[i] + d,) for i in range(1, p - 1))
    if preserving:
        return True

    d = hi - x[0]
    if lo - x[-1] != d:
        return False
    if variant == "stated":
        want = [x[p - 1 - i] + d for i in range(1, p - 1)]
    else:
        want = [x[0] + x[-1] - x[i] + d for i in range(1, p - 1)]
    return all(A[i] == (w,) for i, w in zip(range(1, p - 1), want))


def regular_via_isometric_transversal(a: PartialMap) -> bool:
    """Regular iff some admissible transversal carries ``a`` isometrically."""
    _require_orcp(a)
    if not a.image:
        return True
    for T in all_transversals(maps.kernel(a)):
        if not is_admissible(T):
            continue
        pts = T.points
        imgs = [a(t) for t in pts]
        if all(
            abs(pts[i] - pts[j]) == abs(imgs[i] - imgs[j])
            for i in range(len(pts))
            for j in range(i + 1, len(pts))
        ):
            return True
    return False


def least_convex_transversal(a: PartialMap) -> Transversal | None:
    if not a.image:
        raise EmptyDomain("the empty map has no kernel, hence no transversal")
    for T in all_transversals(maps.kernel(a)):
        if is_convex(T):
            return T
    return None


def is_strongly_regular(a: PartialMap, S: ElementSet) -> RegularityVerdict:
    _require_orcp(a)
    verdict = is_regular(a, S)
    T = least_convex_transversal(a)
    return RegularityVerdict(
        a,
        S.name,
        verdict.regular,
        verdict.inverse_witness,
        strongly_regular=verdict.regular and T is not None,
        convex_transversal=T,
    )


def sreg_mask(S: ElementSet) -> np.ndarray:
    if S.family is not FamilyTag.ORCP:
        raise FamilyUnsupported(f"strong regularity is defined on ORCP_n, not {S.family.name}")
    regular = regular_witnesses(S) >= 0
    convex = np.array(
        [bool(a.image) and least_convex_transversal(a) is not None for a in S.elements], dtype=bool
    )
    return regular & convex


def sreg(S: ElementSet) -> ElementSet:
    return S.subset(np.flatnonzero(sreg_mask(S)), name=f"SReg(ORCP_{S.n})")


def idempotent_form(e: PartialMap) -> dict:
    """Match ``e`` against the block shape

        A_1 -> a+1, {a+2} -> a+2, ..., {a+p-1} -> a+p-1, A_p -> a+p

    and report both boundary conventions: ``statement`` (max A_1 = a+1,
    min A_p = a+p) and ``proof`` (max A_1 = a, min A_p = a+p).
    """
    K = maps.kernel(e)
    A, x = K.blocks, K.images
    p = len(A)
    a = x[0] - 1
    shape = list(x) == list(range(a + 1, a + p + 1)) and all(A[i] == (a + i + 1,) for i in range(1, p - 1))
    return {
        "a": a,
        "p": p,
        "shape": shape,
        "statement": shape and A[0][-1] == a + 1 and A[-1][0] == a + p,
        "proof": shape and A[0][-1] == a and A[-1][0] == a + p,
    }


def verify_idempotent_form(e: PartialMap, S: ElementSet | None = None) -> bool:
    if not maps.is_idempotent(e):
        raise NotIdempotent(f"{e!r} is not idempotent")
    if e.height < 2:
        raise HeightTooSmall("the block form needs height >= 2")
    if S is None:
        S = enumerate_family(FamilyTag.ORCP, e.n)
    if not is_strongly_regular(e, S).strongly_regular:
        raise NotStronglyRegular(f"{e!r} is not strongly regular")
    return idempotent_form(e)["statement"]


@dataclass
class SRegReport:
    n: int
    sreg_ids: list[int]
    # (a) idempotent products
    idempotent_pairs: int = 0
    idempotent_failures: list[dict] = field(default_factory=list)
    idempotent_empty_products: int = 0
    disjoint_fixpoint_pairs: int = 0
    disjoint_fixpoint_sreg: int = 0
    # (b) Hall's three conditions
    hall: dict[str, bool] = field(default_factory=dict)
    # (c) closure and regularity of SReg
    closure_failures: list[tuple[int, int, int]] = field(default_factory=list)
    empty_products: int = 0
    regular_failures: list[int] = field(default_factory=list)
    # idempotent classification
    form_statement_failures: list[int] = field(default_factory=list)
    form_proof_matches: int = 0
    form_height_one: int = 0

    @property
    def idempotents_pass(self) -> bool:
        return not self.idempotent_failures

    @property
    def hall_agree(self) -> bool:
        return len(set(self.hall.values())) == 1

    @property
    def closed(self) -> bool:
        return not self.closure_failures

    @property
    def regular(self) -> bool:
        return not self.regular_failures

    @property
    def passed(self) -> bool:
        return (
            self.idempotents_pass
            and self.hall_agree
            and self.closed
            and self.regular
            and not self.form_statement_failures
        )


def _regular_within(S: ElementSet, mask: np.ndarray) -> np.ndarray:
    """For each position: is it regular with a witness inside ``mask``."""
    return regular_witnesses(S, within=mask) >= 0


def _generated(S: ElementSet, mask: np.ndarray) -> np.ndarray:
    table = _closed_table(S)
    cur = mask.copy()
    while True:
        idx = np.flatnonzero(cur)
        nxt = cur.copy()
        nxt[np.unique(table[np.ix_(idx, idx)])] = True
        if (nxt == cur).all():
            return cur
        cur = nxt


def _is_regular_subsemigroup(S: ElementSet, mask: np.ndarray) -> bool:
    table = _closed_table(S)
    idx = np.flatnonzero(mask)
    if not mask[table[np.ix_(idx, idx)]].all():
        return False
    return bool(_regular_within(S, mask)[idx].all())


def hall_conditions(S: ElementSet, mask: np.ndarray) -> dict[str, bool]:
    """Evaluate the three equivalent conditions on the subsemigroup ``mask`` of ``S``.

    i:   every product of two idempotents is regular;
    ii:  the regular elements form a regular subsemigroup;
    iii: the subsemigroup generated by the idempotents is regular.
    """
    table = _closed_table(S)
    idem = mask & S.idempotent_mask
    reg = mask & _regular_within(S, mask)
    e = np.flatnonzero(idem)
    cond_i = bool(reg[table[np.ix_(e, e)]].all())
    cond_ii = _is_regular_subsemigroup(S, reg)
    cond_iii = _is_regular_subsemigroup(S, _generated(S, idem))
    return {"i": cond_i, "ii": cond_ii, "iii": cond_iii}


def verify_sreg_closure(n: int, *, max_n: int | None = DEFAULT_MAX_N) -> SRegReport:
    S = enumerate_family(FamilyTag.ORCP, n, max_n=max_n)
    table = _closed_table(S)
    strong = sreg_mask(S)
    empty_pos = S.position(maps.empty(n))
    with_zero = strong.copy()
    with_zero[empty_pos] = True
    report = SRegReport(n, [int(i) for i in S.ids[strong]])

    idem = np.flatnonzero(strong & S.idempotent_mask)
    for i in idem:
        for j in idem:
            prod = table[i, j]
            report.idempotent_pairs += 1
            disjoint = not (S.elements[i].fixed_points & S.elements[j].fixed_points)
            if disjoint:
                report.disjoint_fixpoint_pairs += 1
                report.disjoint_fixpoint_sreg += bool(strong[prod])
            if prod == empty_pos:
                report.idempotent_empty_products += 1
            elif not strong[prod]:
                report.idempotent_failures.append(
                    {
                        "left": int(S.ids[i]),
                        "right": int(S.ids[j]),
                        "product": int(S.ids[prod]),
                        "fixpoints_intersect": not disjoint,
                    }
                )

    report.hall = hall_conditions(S, with_zero)

    idx = np.flatnonzero(strong)
    for i in idx:
        for j in idx:
            prod = table[i, j]
            if prod == empty_pos:
                report.empty_products += 1
            elif not strong[prod]:
                report.closure_failures.append((int(S.ids[i]), int(S.ids[j]), int(S.ids[prod])))
    ok = _regular_within(S, with_zero)
    report.regular_failures = [int(S.ids[i]) for i in idx if not ok[i]]

    for i in idem:
        e = S.elements[i]
        if e.height < 2:
            report.form_height_one += 1
            continue
        form = idempotent_form(e)
        if not form["statement"]:
            report.form_statement_failures.append(int(S.ids[i]))
        report.form_proof_matches += form["proof"]
    return report


def product_of_regulars_counterexamples(S: ElementSet) -> list[tuple[PartialMap, PartialMap]]:
    """All pairs of regular ``a, b`` in ``S`` whose product is not regular in ``S``."""
    table = _closed_table(S)
    regular = regular_witnesses(S) >= 0
    r = np.flatnonzero(regular)
    bad = ~regular[table[np.ix_(r, r)]]
    return [(S.elements[r[i]], S.elements[r[j]]) for i, j in np.argwhere(bad)]


def product_of_regulars_counterexample(
    n: int, family: FamilyTag | str = FamilyTag.ORCP
) -> tuple[PartialMap, PartialMap] | None:
    if n < 3:
        raise ValueError("products of regular elements stay regular below n = 3")
    pairs = product_of_regulars_counterexamples(enumerate_family(family, n))
    return pairs[0] if pairs else None


def nonregular_elements(S: ElementSet) -> list[PartialMap]:
    return [a for a, w in zip(S.elements, regular_witnesses(S)) if w < 0]
