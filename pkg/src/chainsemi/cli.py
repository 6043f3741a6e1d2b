"""Command line front end: ``chainsemi enumerate | classes | verify``.

Exit codes: 0 success (verify: no claim failed), 1 a claim failed,
2 usage error or unsupported family, 3 budget exceeded, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import green
from .exceptions import BudgetExceeded, CacheFormatError, FamilyUnsupported
from .families import DEFAULT_MAX_N, FamilyTag, enumerate_family
from .green import Relation
from .report import SCHEMA, Config, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4


def parse_range(text: str) -> list[int]:
    """``"4"`` -> [4]; ``"1-4"`` -> [1, 2, 3, 4]; ``"2,4"`` -> [2, 4]."""
    out: list[int] = []
    for part in text.split(","):
        lo, _, hi = part.partition("-")
        lo, hi = int(lo), int(hi or lo)
        if lo < 1 or hi < lo:
            raise ValueError(f"bad chain size range {part!r}")
        out.extend(range(lo, hi + 1))
    return sorted(set(out))


def _families(text: str) -> list[FamilyTag]:
    return [FamilyTag.parse(t) for t in text.split(",") if t]


def enumerate_payload(tag: FamilyTag, n: int, fmt: str, cache_dir=None, max_n=DEFAULT_MAX_N) -> str:
    S = enumerate_family(tag, n, max_n=max_n, cache_dir=cache_dir)
    ids = [int(i) for i in S.ids]
    if fmt == "csv":
        return "id\n" + "".join(f"{i}\n" for i in ids)
    payload = {"schema": SCHEMA, "family": tag.value, "n": n, "count": len(ids), "ids": ids}
    return json.dumps(payload) + "\n"


def classes_payload(
    tag: FamilyTag,
    n: int,
    relation: Relation,
    method: str,
    fmt: str,
    *,
    cache_dir=None,
    max_n=DEFAULT_MAX_N,
    oracle_max_n=green.DEFAULT_ORACLE_MAX_N,
    jstar_max_n=green.DEFAULT_JSTAR_MAX_N,
) -> str:
    S = enumerate_family(tag, n, max_n=max_n, cache_dir=cache_dir)
    agree = None
    if relation is Relation.JSTAR:
        rc = green.jstar_classes(S, max_n=jstar_max_n)
    elif not relation.starred:
        rc = green.classic_classes(S, relation)
    elif method == "both":
        rc = green.star_classes_oracle(S, relation, max_n=oracle_max_n)
        agree = rc.same_partition(green.star_classes_char(S, relation))
    elif method == "oracle":
        rc = green.star_classes_oracle(S, relation, max_n=oracle_max_n)
    else:
        rc = green.star_classes_char(S, relation)

    idem = S.idempotent_mask
    rows = []
    for cls in rc.classes:
        heights = sorted({int(S.heights[p]) for p in cls})
        rows.append(
            {
                "ids": [int(S.ids[p]) for p in cls],
                "size": len(cls),
                "height": heights[0] if len(heights) == 1 else heights,
                "has_idempotent": bool(idem[list(cls)].any()),
            }
        )
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["class", "id", "height", "has_idempotent"])
        for k, row in enumerate(rows):
            for i in row["ids"]:
                w.writerow([k, i, row["height"], int(row["has_idempotent"])])
        return buf.getvalue()
    payload = {
        "schema": SCHEMA,
        "family": tag.value,
        "n": n,
        "relation": relation.value,
        "method": rc.method.value if method != "both" or agree is None else "both",
        "count": len(rows),
        "classes": rows,
    }
    if agree is not None:
        payload["agree"] = agree
    return json.dumps(payload) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainsemi",
        description="Enumerate semigroups of partial contractions of a finite chain and check their structure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family_default):
        p.add_argument("--family", default=family_default, help="p, cp, ocp, orcp, ct, oct (comma list for verify)")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", help="write here instead of standard output")
        p.add_argument("--cache-dir", help="directory for binary enumeration caches")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="enumeration budget")
        p.add_argument("--max-oracle-n", type=int, default=green.DEFAULT_ORACLE_MAX_N)
        p.add_argument("--max-jstar-n", type=int, default=green.DEFAULT_JSTAR_MAX_N)

    p = sub.add_parser("enumerate", help="list the members of a family as canonical ids")
    common(p, "cp")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("classes", help="partition a family by a Green's relation")
    common(p, "cp")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--relation", choices=[r.value for r in Relation], required=True)
    p.add_argument("--method", choices=["oracle", "characterization", "both"], default="characterization")

    p = sub.add_parser("verify", help="run the claim registry and report pass/fail per claim")
    common(p, "cp,ocp,orcp")
    p.add_argument("--n", default="1-4", help="chain size or range, e.g. 4 or 1-4")
    p.add_argument("--claims", default="all", help="'all' or a comma list of claim ids")
    p.add_argument("--method", choices=["oracle", "characterization", "both"], default="both")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timings", action="store_true", help="include runtime_ms in the JSON report")
    p.add_argument("--quiet", action="store_true", help="do not print the summary table")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "enumerate":
            text = enumerate_payload(
                FamilyTag.parse(args.family), args.n, args.format, args.cache_dir, args.max_n
            )
            _emit(text, args.out)
            return EXIT_OK

        if args.command == "classes":
            text = classes_payload(
                FamilyTag.parse(args.family),
                args.n,
                Relation.parse(args.relation),
                args.method,
                args.format,
                cache_dir=args.cache_dir,
                max_n=args.max_n,
                oracle_max_n=args.max_oracle_n,
                jstar_max_n=args.max_jstar_n,
            )
            _emit(text, args.out)
            return EXIT_OK

        config = Config(
            max_n=args.max_n,
            oracle_max_n=args.max_oracle_n,
            jstar_max_n=min(args.max_jstar_n, args.max_oracle_n),
            families=tuple(_families(args.family)),
            output_format=args.format,
            cache_dir=args.cache_dir,
            threads=args.threads,
            seed=args.seed,
            method=args.method,
        )
        report = verify(args.claims, ns=parse_range(args.n), config=config)
        if not args.quiet:
            sys.stdout.write(report.table())
        body = report.to_csv() if args.format == "csv" else report.to_json(timings=args.timings)
        if args.out:
            _emit(body, args.out)
        elif args.quiet:
            sys.stdout.write(body)
        return EXIT_OK if report.ok else EXIT_FAIL

    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (OSError, CacheFormatError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (FamilyUnsupported, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
