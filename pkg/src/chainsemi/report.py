"""Claim registry and the verification report.

Every checkable statement is one row of :data:`REGISTRY`: an id, a short
statement of what is checked, the families it applies to, and a runner.
Runners return a :class:`ClaimResult` with status ``pass``, ``fail``,
``skipped_budget`` or ``hypothesis_not_met``; failures always carry the
canonical ids of a witness.
"""

from __future__ import annotations

import csv
import io
import json
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from . import green, maps, regularity, transversals
from .exceptions import BudgetExceeded, HypothesisNotMet
from .families import (
    CONTAINMENTS,
    DEFAULT_MAX_N,
    ElementSet,
    FamilyTag,
    closure_of,
    enumerate_family,
    member,
)
from .green import Method, Relation

SCHEMA = "chainsemi/1"
PASS, FAIL, SKIPPED, NOT_MET = "pass", "fail", "skipped_budget", "hypothesis_not_met"
STARRED_FAMILIES = (FamilyTag.CP, FamilyTag.OCP, FamilyTag.ORCP)
CONTRACTION_FAMILIES = STARRED_FAMILIES + (FamilyTag.CT, FamilyTag.OCT)


@dataclass
class Config:
    max_n: int = DEFAULT_MAX_N
    oracle_max_n: int = green.DEFAULT_ORACLE_MAX_N
    jstar_max_n: int = green.DEFAULT_JSTAR_MAX_N
    families: tuple[FamilyTag, ...] = STARRED_FAMILIES
    output_format: str = "json"
    cache_dir: str | None = None
    threads: int = 1
    seed: int = 0
    method: str = "both"

    def __post_init__(self):
        if self.method not in ("oracle", "characterization", "both"):
            raise ValueError(f"unknown method {self.method!r}")
        self.families = tuple(FamilyTag.parse(f) for f in self.families)
        if self.oracle_max_n > self.max_n:
            raise ValueError("oracle_max_n must not exceed max_n")
        if self.jstar_max_n > self.oracle_max_n:
            raise ValueError("jstar_max_n must not exceed oracle_max_n")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass
class ClaimResult:
    claim_id: str
    anchor: str
    family: str
    n: int
    method: str
    status: str
    witness: list[int] | None = None
    detail: str = ""
    runtime_ms: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        out = asdict(self)
        if not timings:
            del out["runtime_ms"]
        return out


@dataclass
class VerificationReport:
    claims: list[ClaimResult] = field(default_factory=list)

    @property
    def failed(self) -> list[ClaimResult]:
        return [c for c in self.claims if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_json(self, timings: bool = False) -> str:
        payload = {"schema": SCHEMA, "claims": [c.to_dict(timings) for c in self.claims]}
        return json.dumps(payload, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["claim_id", "family", "n", "method", "status", "witness", "detail"])
        for c in self.claims:
            wit = "" if c.witness is None else " ".join(map(str, c.witness))
            w.writerow([c.claim_id, c.family, c.n, c.method, c.status, wit, c.detail])
        return buf.getvalue()

    def table(self) -> str:
        head = f"{'claim':<13} {'family':<6} {'n':>2} {'method':<16} {'status':<18} witness"
        lines = [head, "-" * len(head)]
        for c in self.claims:
            wit = "" if c.witness is None else ",".join(map(str, c.witness[:8]))
            if c.witness is not None and len(c.witness) > 8:
                wit += ",..."
            lines.append(f"{c.claim_id:<13} {c.family:<6} {c.n:>2} {c.method:<16} {c.status:<18} {wit}")
        counts = {s: sum(c.status == s for c in self.claims) for s in (PASS, FAIL, SKIPPED, NOT_MET)}
        lines.append("  ".join(f"{k}={v}" for k, v in counts.items()))
        return "\n".join(lines) + "\n"


class Context:
    """Shared, lock-protected enumeration cache for one verification run."""

    def __init__(self, config: Config):
        self.config = config
        self._sets: dict[tuple[FamilyTag, int], ElementSet] = {}
        self._lock = threading.Lock()

    def family(self, tag: FamilyTag, n: int) -> ElementSet:
        with self._lock:
            key = (tag, n)
            if key not in self._sets:
                self._sets[key] = enumerate_family(
                    tag, n, max_n=self.config.max_n, cache_dir=self.config.cache_dir
                )
            return self._sets[key]

    def need(self, n: int, limit: int, what: str) -> None:
        if n > limit:
            raise BudgetExceeded(f"{what} at n={n} exceeds budget {limit}")


@dataclass
class Outcome:
    status: str
    witness: list[int] | None = None
    detail: str = ""
    method: str = "exhaustive"


def _ids(*elements: maps.PartialMap) -> list[int]:
    return [maps.canonical_id(a) for a in elements]


def _require_family(tag: FamilyTag, allowed: Iterable[FamilyTag]) -> None:
    allowed = tuple(allowed)
    if tag not in allowed:
        raise HypothesisNotMet(f"statement covers {', '.join(f.name for f in allowed)} only")


# -- starred relations ---------------------------------------------------------


def _characterization_part(relation: Relation):
    def run(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
        _require_family(tag, STARRED_FAMILIES)
        ctx.need(n, ctx.config.oracle_max_n, "oracle")
        S = ctx.family(tag, n)
        oracle = green.star_classes_oracle(S, relation, max_n=None)
        char = green.star_classes_char(S, relation)
        if oracle.same_partition(char):
            return Outcome(PASS, detail=f"{len(oracle)} classes", method="both")
        labels_o, labels_c = oracle.labels, char.labels
        for i in range(len(S)):
            for j in range(i + 1, len(S)):
                if (labels_o[i] == labels_o[j]) != (labels_c[i] == labels_c[j]):
                    return Outcome(
                        FAIL,
                        [int(S.ids[i]), int(S.ids[j])],
                        "pair related by exactly one method",
                        "both",
                    )
        raise AssertionError("partitions differ but no separating pair found")

    return run


def _least_star_ideal(S: ElementSet, a: int, lstar, rstar) -> frozenset[int]:
    """Smallest set holding ``a`` that is closed under left and right
    multiplication by S and saturated by L*- and R*-classes."""
    table = S.table
    l_of = {p: c for c in lstar for p in c}
    r_of = {p: c for c in rstar for p in c}
    cur = {a}
    frontier = [a]
    while frontier:
        b = frontier.pop()
        new = set(table[b, :].tolist()) | set(table[:, b].tolist()) | set(l_of[b]) | set(r_of[b])
        for c in new - cur:
            cur.add(c)
            frontier.append(c)
    return frozenset(cur)


def _chain_criterion(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    _require_family(tag, STARRED_FAMILIES)
    ctx.need(n, ctx.config.jstar_max_n, "J* fixpoint")
    S = ctx.family(tag, n)
    lstar = green.star_classes_oracle(S, Relation.LSTAR, max_n=None)
    rstar = green.star_classes_oracle(S, Relation.RSTAR, max_n=None)
    chained = green.principal_star_ideals(S, max_n=None)
    for a in range(len(S)):
        direct = _least_star_ideal(S, a, lstar, rstar)
        if direct != chained[a]:
            return Outcome(FAIL, [int(S.ids[a])], "chain closure differs from least *-ideal")
    return Outcome(PASS, detail=f"{len(S)} principal *-ideals")


def _height_monotone(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    _require_family(tag, STARRED_FAMILIES)
    ctx.need(n, ctx.config.jstar_max_n, "J* fixpoint")
    S = ctx.family(tag, n)
    h = S.heights
    for b, ideal in enumerate(green.principal_star_ideals(S, max_n=None)):
        for a in ideal:
            if h[a] > h[b]:
                return Outcome(FAIL, [int(S.ids[a]), int(S.ids[b])])
    return Outcome(PASS)


def _dstar_is_jstar(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    _require_family(tag, STARRED_FAMILIES)
    ctx.need(n, ctx.config.jstar_max_n, "J* fixpoint")
    S = ctx.family(tag, n)
    J = green.jstar_classes(S, max_n=None)
    D = green.star_classes_oracle(S, Relation.DSTAR, max_n=None)
    if J.same_partition(D):
        return Outcome(PASS, detail=f"{len(J)} classes")
    diff = next(c for c in J.classes if c not in D.classes)
    return Outcome(FAIL, [int(S.ids[p]) for p in diff], "J*-class that is not a D*-class")


def _abundance_method(ctx: Context, n: int) -> Method:
    """Oracle within its budget, characterization beyond it (``both``)."""
    method = ctx.config.method
    if method == "characterization":
        return Method.CHARACTERIZATION
    if method == "oracle":
        ctx.need(n, ctx.config.oracle_max_n, "oracle")
        return Method.ORACLE
    return Method.ORACLE if n <= ctx.config.oracle_max_n else Method.CHARACTERIZATION


def _left_abundant(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    _require_family(tag, STARRED_FAMILIES)
    S = ctx.family(tag, n)
    method = _abundance_method(ctx, n)
    v = green.abundance(S, "left", method=method, max_n=None)
    if v.holds:
        return Outcome(PASS, method=method.value)
    return Outcome(FAIL, list(v.witness), "idempotent-free L*-class", method.value)


# the idempotent-free R*-class exhibited for n = 4
EXHIBITED_RSTAR_CLASS = (
    maps.from_blocks(4, [[1], [2, 3], [4]], [1, 2, 3]),
    maps.from_blocks(4, [[1], [2, 3], [4]], [3, 2, 1]),
    maps.from_blocks(4, [[1], [2, 3], [4]], [2, 3, 4]),
    maps.from_blocks(4, [[1], [2, 3], [4]], [4, 3, 2]),
)


def expected_rstar_witness(tag: FamilyTag) -> tuple[int, ...]:
    """The exhibited n = 4 class, restricted to the members of ``tag``."""
    return tuple(sorted(maps.canonical_id(a) for a in EXHIBITED_RSTAR_CLASS if member(tag, a)))


def _not_right_abundant(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    _require_family(tag, STARRED_FAMILIES)
    if n < 4:
        raise HypothesisNotMet("statement is for n >= 4")
    S = ctx.family(tag, n)
    method = _abundance_method(ctx, n)
    v = green.abundance(S, "right", method=method, max_n=None)
    if v.holds:
        return Outcome(FAIL, [], "every R*-class holds an idempotent", method.value)
    witness = list(v.witness)
    if n == 4:
        want = expected_rstar_witness(tag)
        if tuple(witness) != want:
            return Outcome(FAIL, witness, f"witness differs from exhibited class {list(want)}", method.value)
        if len(want) != 4:
            return Outcome(
                PASS,
                witness,
                f"only {len(want)} of the 4 exhibited maps lie in {tag.name}_4",
                method.value,
            )
    return Outcome(PASS, witness, "idempotent-free R*-class", method.value)


def _right_abundant_small(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    _require_family(tag, STARRED_FAMILIES)
    if n > 3:
        raise HypothesisNotMet("statement is for n <= 3")
    S = ctx.family(tag, n)
    method = _abundance_method(ctx, n)
    v = green.abundance(S, "right", method=method, max_n=None)
    if v.holds:
        return Outcome(PASS, method=method.value)
    return Outcome(FAIL, list(v.witness), "idempotent-free R*-class", method.value)


# -- transversals --------------------------------------------------------------


def _nonempty(S: ElementSet):
    for a in S.elements:
        if a.image:
            yield a, maps.kernel(a)


def _no_rel_convex(ordered_required: bool, families: tuple[FamilyTag, ...]):
    def run(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
        _require_family(tag, families)
        if n < 4:
            raise HypothesisNotMet("statement is for n >= 4")
        S = ctx.family(tag, n)
        checked = 0
        for a, K in _nonempty(S):
            if len(K) < 3 or max(K.block_sizes[1:-1]) < 2:
                continue
            if not K.is_ordered():
                if ordered_required:
                    continue
                return Outcome(FAIL, _ids(a), "kernel blocks are not ordered")
            rep = transversals.lemma_witness(K, "relatively_convex_nonexistence")
            checked += 1
            if not rep.holds:
                return Outcome(FAIL, _ids(a), f"relatively convex transversal {rep.witness}")
        if not checked:
            raise HypothesisNotMet("no element satisfies the hypothesis")
        return Outcome(PASS, detail=f"{checked} kernels checked")

    return run


def _admissible_exists(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    _require_family(tag, CONTRACTION_FAMILIES)
    S = ctx.family(tag, n)
    checked = 0
    for a, K in _nonempty(S):
        if len(K) < 3 or not K.is_ordered() or any(s != 1 for s in K.block_sizes[1:-1]):
            continue
        checked += 1
        if not transversals.lemma_witness(K, "admissible_existence").holds:
            return Outcome(FAIL, _ids(a), "no admissible transversal")
    if not checked:
        raise HypothesisNotMet("no element satisfies the hypothesis")
    return Outcome(PASS, detail=f"{checked} kernels checked")


def _convex_images(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    _require_family(tag, CONTRACTION_FAMILIES)
    S = ctx.family(tag, n)
    checked = 0
    for a in S.elements:
        dom = set(a.domain)
        for lo in range(1, n + 1):
            for hi in range(lo, n + 1):
                if not all(z in dom for z in range(lo, hi + 1)):
                    break
                checked += 1
                rep = transversals.lemma_witness(None, "convex_image", alpha=a, subset=range(lo, hi + 1))
                if not rep.holds:
                    return Outcome(FAIL, _ids(a), f"image of [{lo},{hi}] is {rep.witness}")
    return Outcome(PASS, detail=f"{checked} (element, interval) pairs")


def convexity_hierarchy(S: ElementSet) -> dict:
    """Check convex => relatively convex and convex => admissible on every
    transversal of every kernel, and find witnesses that the converses fail."""
    out = {"violations": [], "rel_convex_not_convex": None, "admissible_not_convex": None}
    for a, K in _nonempty(S):
        for T in transversals.all_transversals(K):
            convex = transversals.is_convex(T)
            rel = transversals.is_relatively_convex(T)
            adm = transversals.is_admissible(T)
            if convex and not (rel and adm):
                out["violations"].append((maps.canonical_id(a), T.as_set))
            if rel and not convex and out["rel_convex_not_convex"] is None:
                out["rel_convex_not_convex"] = (maps.canonical_id(a), T.as_set)
            if adm and not convex and out["admissible_not_convex"] is None:
                out["admissible_not_convex"] = (maps.canonical_id(a), T.as_set)
    return out


def _hierarchy(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    # admissibility is a contraction property; on P it fails for convex sets
    _require_family(tag, CONTRACTION_FAMILIES)
    S = ctx.family(tag, n)
    h = convexity_hierarchy(S)
    if h["violations"]:
        a, _ = h["violations"][0]
        return Outcome(FAIL, [a], "convex transversal that is not relatively convex or not admissible")
    found = [k for k in ("rel_convex_not_convex", "admissible_not_convex") if h[k] is not None]
    return Outcome(PASS, detail=f"converse counterexamples found: {', '.join(found) or 'none'}")


# -- regularity ---------------------------------------------------------------


def _criterion(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    _require_family(tag, (FamilyTag.ORCP,))
    S = ctx.family(tag, n)
    brute = regularity.regular_witnesses(S) >= 0
    mismatch = []
    reflected_ok = True
    checked = 0
    for k, a in enumerate(S.elements):
        if a.height < 3:
            continue
        checked += 1
        if regularity.regular_char_orcp(a) != brute[k]:
            mismatch.append(int(S.ids[k]))
        if regularity.regular_char_orcp(a, variant="reflected") != brute[k]:
            reflected_ok = False
    if not checked:
        raise HypothesisNotMet("no element of height >= 3")
    note = f"{checked} elements; reflected variant {'agrees' if reflected_ok else 'disagrees'}"
    if mismatch:
        return Outcome(FAIL, mismatch, f"stated formula disagrees on {len(mismatch)}; {note}")
    return Outcome(PASS, detail=note)


def _exhibited_pair(n: int):
    alpha = maps.make(n, [(1, 1), (3, 3)])
    beta = maps.make(n, [(1, 1), (2, 2), (3, 2)])
    return alpha, beta


def _product_not_regular(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    _require_family(tag, (FamilyTag.ORCP, FamilyTag.OCP))
    if n < 3:
        raise HypothesisNotMet("statement is for n >= 3")
    S = ctx.family(tag, n)
    pairs = regularity.product_of_regulars_counterexamples(S)
    if not pairs:
        return Outcome(FAIL, [], "products of regular elements are all regular")
    if n == 3:
        pair = _exhibited_pair(3)
        if pair not in pairs:
            return Outcome(FAIL, _ids(*pairs[0]), "exhibited pair is not a counterexample")
        return Outcome(PASS, _ids(*pair, maps.compose(*pair)), f"{len(pairs)} counterexample pairs")
    return Outcome(PASS, _ids(*pairs[0]), f"{len(pairs)} counterexample pairs")


def _nonregular(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    _require_family(tag, STARRED_FAMILIES)
    if n < 3:
        raise HypothesisNotMet("statement is for n >= 3")
    S = ctx.family(tag, n)
    bad = regularity.nonregular_elements(S)
    if not bad:
        return Outcome(FAIL, [], "every element is regular")
    return Outcome(PASS, _ids(bad[0]), f"{len(bad)} non-regular elements")


def _sreg_report(ctx: Context, tag: FamilyTag, n: int) -> regularity.SRegReport:
    _require_family(tag, (FamilyTag.ORCP,))
    return regularity.verify_sreg_closure(n, max_n=ctx.config.max_n)


def _hall(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    r = _sreg_report(ctx, tag, n)
    detail = ", ".join(f"{k}={v}" for k, v in r.hall.items())
    return Outcome(PASS if r.hall_agree else FAIL, None if r.hall_agree else [], detail)


def _idempotent_form(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    r = _sreg_report(ctx, tag, n)
    detail = (
        f"proof-version matches={r.form_proof_matches}; "
        f"height-1 idempotents outside the form's scope={r.form_height_one}"
    )
    if r.form_statement_failures:
        return Outcome(FAIL, r.form_statement_failures, detail)
    return Outcome(PASS, detail=detail)


def _idempotent_products(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    r = _sreg_report(ctx, tag, n)
    detail = (
        f"{r.idempotent_pairs} pairs; empty products={r.idempotent_empty_products}; "
        f"disjoint fixed points={r.disjoint_fixpoint_pairs} "
        f"(strongly regular product in {r.disjoint_fixpoint_sreg})"
    )
    if r.idempotent_failures:
        f = r.idempotent_failures[0]
        return Outcome(FAIL, [f["left"], f["right"], f["product"]], detail)
    return Outcome(PASS, detail=detail)


def _sreg_subsemigroup(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    r = _sreg_report(ctx, tag, n)
    detail = f"|SReg|={len(r.sreg_ids)}; products equal to the empty map={r.empty_products}"
    if r.closure_failures:
        return Outcome(FAIL, list(r.closure_failures[0]), "product leaves SReg; " + detail)
    if r.regular_failures:
        return Outcome(FAIL, r.regular_failures[:1], "no inverse inside SReg; " + detail)
    return Outcome(PASS, detail=detail)


# -- plumbing claims -----------------------------------------------------------


def _closure(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    res = closure_of(ctx.family(tag, n))
    if res.closed:
        return Outcome(PASS)
    return Outcome(FAIL, _ids(*res.witness), "product outside the family")


def _containment(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    S = ctx.family(tag, n)
    for sup in CONTAINMENTS[tag]:
        T = ctx.family(sup, n)
        missing = np.setdiff1d(S.ids, T.ids)
        if missing.size:
            return Outcome(FAIL, [int(missing[0])], f"not in {sup.name}_{n}")
    return Outcome(PASS, detail=", ".join(f.name for f in CONTAINMENTS[tag]) or "top family")


def _associativity(ctx: Context, tag: FamilyTag, n: int) -> Outcome:
    S = ctx.family(tag, n)
    m = len(S)
    if m**3 <= 2_000_000:
        triples = np.array(list(product(range(m), repeat=3)), dtype=np.int64).reshape(-1, 3)
        method = "exhaustive"
    else:
        rng = np.random.default_rng(ctx.config.seed)
        triples = rng.integers(0, m, size=(20_000, 3))
        method = f"sampled(seed={ctx.config.seed})"
    vals = S.values
    ab = S.locate(_product_rows(vals[triples[:, 0]], vals[triples[:, 1]], n))
    bc = S.locate(_product_rows(vals[triples[:, 1]], vals[triples[:, 2]], n))
    left = _product_rows(vals[ab], vals[triples[:, 2]], n)
    right = _product_rows(vals[triples[:, 0]], vals[bc], n)
    bad = np.flatnonzero(left != right)
    if bad.size:
        return Outcome(FAIL, [int(S.ids[t]) for t in triples[bad[0]]], method=method)
    return Outcome(PASS, detail=f"{len(triples)} triples", method=method)


def _product_rows(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    pad = np.concatenate([np.zeros((b.shape[0], 1), dtype=np.int64), b], axis=1)
    prod = np.take_along_axis(pad, a, axis=1)
    return prod @ ((n + 1) ** np.arange(n, dtype=np.int64))


@dataclass(frozen=True)
class Claim:
    claim_id: str
    anchor: str
    run: Callable[[Context, FamilyTag, int], Outcome]


REGISTRY: tuple[Claim, ...] = (
    Claim("THM2.1.i", "L* equals equal image", _characterization_part(Relation.LSTAR)),
    Claim("THM2.1.ii", "R* equals equal kernel", _characterization_part(Relation.RSTAR)),
    Claim("THM2.1.iii", "H* equals equal image and kernel", _characterization_part(Relation.HSTAR)),
    Claim("THM2.1.iv", "D* equals equal height", _characterization_part(Relation.DSTAR)),
    Claim("L2.2", "chain criterion gives the least *-ideal", _chain_criterion),
    Claim("L2.3", "J*(b) only holds elements of lower or equal height", _height_monotone),
    Claim("C2.4", "D* equals J*", _dstar_is_jstar),
    Claim("L2.5", "left abundant", _left_abundant),
    Claim("L2.6", "not right abundant for n >= 4", _not_right_abundant),
    Claim("R2.7", "right abundant for n <= 3", _right_abundant_small),
    Claim("L1.1", "ordered kernel with a fat interior block has no relatively convex transversal",
          _no_rel_convex(True, CONTRACTION_FAMILIES)),
    Claim("L1.2", "same, for every ORCP kernel", _no_rel_convex(False, (FamilyTag.ORCP, FamilyTag.OCP))),
    Claim("L1.3", "ordered kernel with singleton interior has an admissible transversal", _admissible_exists),
    Claim("L1.4", "contractions send intervals of the domain to intervals", _convex_images),
    Claim("L1.5", "closed-form regularity test on ORCP, height >= 3", _criterion),
    Claim("hierarchy", "convex implies relatively convex and admissible", _hierarchy),
    Claim("R3.1", "a product of regular elements need not be regular", _product_not_regular),
    Claim("nonregular", "the family contains a non-regular element for n >= 3", _nonregular),
    Claim("P3.2", "Hall's three conditions agree on SReg", _hall),
    Claim("L3.3", "SReg idempotents have the interval block form", _idempotent_form),
    Claim("L3.4", "products of SReg idempotents are strongly regular", _idempotent_products),
    Claim("T3.5", "SReg is a regular subsemigroup", _sreg_subsemigroup),
    Claim("closure", "family is closed under composition", _closure),
    Claim("containment", "family sits inside its containing families", _containment),
    Claim("associativity", "composition is associative", _associativity),
)

CLAIMS = {c.claim_id: c for c in REGISTRY}


def select_claims(spec: str | Iterable[str]) -> list[Claim]:
    if isinstance(spec, str):
        spec = [s.strip() for s in spec.split(",") if s.strip()]
    spec = list(spec)
    if not spec or spec == ["all"]:
        return list(REGISTRY)
    unknown = [s for s in spec if s not in CLAIMS]
    if unknown:
        raise KeyError(f"unknown claims: {', '.join(unknown)}")
    wanted = set(spec)
    return [c for c in REGISTRY if c.claim_id in wanted]


def run_claim(ctx: Context, claim: Claim, tag: FamilyTag, n: int) -> ClaimResult:
    start = time.perf_counter()
    try:
        out = claim.run(ctx, tag, n)
    except BudgetExceeded as exc:
        out = Outcome(SKIPPED, detail=str(exc))
    except HypothesisNotMet as exc:
        out = Outcome(NOT_MET, detail=str(exc))
    return ClaimResult(
        claim.claim_id,
        claim.anchor,
        tag.value,
        n,
        out.method,
        out.status,
        out.witness,
        out.detail,
        round((time.perf_counter() - start) * 1000, 3),
    )


def verify(
    claims: str | Iterable[str] = "all",
    families: Iterable[FamilyTag | str] | None = None,
    ns: Iterable[int] = (1, 2, 3, 4),
    config: Config | None = None,
) -> VerificationReport:
    config = config or Config()
    tags = tuple(FamilyTag.parse(f) for f in families) if families is not None else config.families
    ctx = Context(config)
    jobs = [(c, t, n) for c in select_claims(claims) for t in tags for n in ns]
    if config.threads == 1:
        results = [run_claim(ctx, *job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(lambda job: run_claim(ctx, *job), jobs))
    return VerificationReport(results)


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
