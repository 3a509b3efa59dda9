"""Command-line front end.

Subcommands: `enumerate` (families with statistics as text/CSV/JSON),
`poly` (print a polynomial family member), `verify` (run the identity
suite) and `grammar` (iterate a formal derivative from a rule file).
Identical invocations produce byte-identical output; `--jobs` only changes
wall time.  Exit codes: 0 success, 1 any failing check, 2 usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import checks
from . import grammar as gr
from . import matchings as mt
from . import perms as pm
from . import stirling as st
from . import words as wd
from .algebra import MVPoly, ParseError, parse_poly
from .grammar import DuplicateRuleError

# Families whose enumeration explodes; overridable with --force.
_HARD_LIMITS = {
    "matchings": 10, "mwords": 10, "perms": 10, "signed": 8,
    "derangements": 10, "stirling": 10, "trees012": 12, "trees0123": 12,
}

_POLY_FAMILY = {
    "An": "perms", "Anxy": "perms", "Anpq": "perms", "dn": "perms",
    "Bn": "signed", "dBn": "signed",
    "Mn": "matchings", "In": "matchings", "Cn": "mwords",
    "NCA": "mwords", "NCR": "mwords", "Qn": "stirling",
    "xi": None, "gamma": None,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordlab",
        description="Exact enumeration of matchings and permutations, and "
                    "mechanical verification of their polynomial identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="stream a family with statistics")
    p_enum.add_argument("--family", required=True, choices=sorted(_HARD_LIMITS))
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_enum.add_argument("--out", default=None)
    p_enum.add_argument("--force", action="store_true",
                        help="override the hard size limits")

    p_poly = sub.add_parser("poly", help="print a polynomial family member")
    p_poly.add_argument("--name", required=True, choices=sorted(_POLY_FAMILY))
    p_poly.add_argument("--n", type=int, required=True)
    p_poly.add_argument("--format", choices=("text", "json"), default="text")
    p_poly.add_argument("--out", default=None)
    p_poly.add_argument("--force", action="store_true")

    p_verify = sub.add_parser("verify", help="run the identity suite")
    p_verify.add_argument("--checks", default="all",
                          help="comma-separated check ids, or 'all'")
    p_verify.add_argument("--max-n", type=int, default=None)
    p_verify.add_argument("--egf-order", type=int, default=None)
    p_verify.add_argument("--jobs", type=int,
                          default=int(os.environ.get("CHORDLAB_JOBS", "1")))
    p_verify.add_argument("--report", choices=("text", "json"), default="text")
    p_verify.add_argument("--out", default=None)

    p_gram = sub.add_parser("grammar", help="apply a grammar derivative")
    p_gram.add_argument("--rules", required=True)
    p_gram.add_argument("--seed", required=True)
    p_gram.add_argument("--iterations", type=int, required=True)
    p_gram.add_argument("--out", default=None)

    return parser


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _signed_row(n: int, rank: int, sigma) -> dict:
    s = pm.signed_stats(sigma)
    window = tuple(abs(v) for v in sigma)
    padded = (0,) + sigma + (0,)
    asc = sum(1 for i in range(n - 1) if sigma[i] < sigma[i + 1])
    des = (n - 1) - asc if n else 0
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j])
    dd = sum(1 for i in range(1, n + 1) if padded[i - 1] > padded[i] > padded[i + 1])
    abs_stats = pm.perm_stats(window)
    return {
        "n": n, "rank": rank, "oneline": " ".join(map(str, sigma)),
        "exc": s.exc_B, "drop": s.drop_B, "fix": s.fix_B, "cyc": s.cyc_B,
        "asc": asc, "des": des, "inv": inv, "cda": abs_stats.cda, "dd": dd,
        "wexc": s.wexc, "single": s.single,
    }


def _family_rows(family: str, n: int):
    """(fieldnames, iterator of row dicts) for one enumeration family."""
    if family == "matchings":
        fields = ["n", "rank", "arcs", "fixb", "elblock", "olblock", "esblock",
                  "osblock", "cr", "ne", "al", "lne", "lcr", "nal", "lrp",
                  "rrp", "trace"]

        def rows():
            for rank, m in enumerate(mt.enumerate_matchings(n)):
                bs = mt.block_stats(m)
                ps = mt.pairwise_stats(m)
                yield {"n": n, "rank": rank, "arcs": mt.arcs_text(m),
                       "fixb": bs.fixb, "elblock": bs.elblock,
                       "olblock": bs.olblock, "esblock": bs.esblock,
                       "osblock": bs.osblock, "cr": ps.cr, "ne": ps.ne,
                       "al": ps.al, "lne": ps.lne, "lcr": ps.lcr,
                       "nal": ps.nal, "lrp": ps.lrp, "rrp": ps.rrp,
                       "trace": mt.trace(m)}
        return fields, rows()
    if family == "mwords":
        fields = ["n", "rank", "word", "lne", "lcr", "nal", "rrp", "lrp",
                  "inv", "coinv", "rank_stat"]

        def rows():
            for rank, w in enumerate(wd.enumerate_words(n)):
                c = wd.neighbor_classify(w)
                s = wd.word_stats(w)
                yield {"n": n, "rank": rank, "word": wd.word_text(w),
                       "lne": len(c.lne), "lcr": len(c.lcr), "nal": len(c.nal),
                       "rrp": len(c.rrp), "lrp": len(c.lrp), "inv": s.inv,
                       "coinv": s.coinv, "rank_stat": s.rank}
        return fields, rows()
    if family in ("perms", "derangements"):
        fields = ["n", "rank", "oneline", "exc", "drop", "fix", "cyc", "asc",
                  "des", "inv", "cda", "dd"]
        stream = (pm.enumerate_permutations(n) if family == "perms"
                  else pm.enumerate_derangements(n))

        def rows():
            for rank, pi in enumerate(stream):
                s = pm.perm_stats(pi)
                yield {"n": n, "rank": rank, "oneline": " ".join(map(str, pi)),
                       "exc": s.exc, "drop": s.drop, "fix": s.fix, "cyc": s.cyc,
                       "asc": s.asc, "des": s.des, "inv": s.inv, "cda": s.cda,
                       "dd": s.dd}
        return fields, rows()
    if family == "signed":
        fields = ["n", "rank", "oneline", "exc", "drop", "fix", "cyc", "asc",
                  "des", "inv", "cda", "dd", "wexc", "single"]

        def rows():
            for rank, sigma in enumerate(pm.enumerate_signed(n)):
                yield _signed_row(n, rank, sigma)
        return fields, rows()
    if family == "stirling":
        fields = ["n", "rank", "word", "asc", "plat", "des"]

        def rows():
            for rank, word in enumerate(st.enumerate_stirling(n)):
                asc, plat, des = st.stirling_word_stats(word)
                yield {"n": n, "rank": rank, "word": " ".join(map(str, word)),
                       "asc": asc, "plat": plat, "des": des}
        return fields, rows()
    if family in ("trees012", "trees0123"):
        degree = 2 if family == "trees012" else 3
        fields = ["n", "rank", "tree", "leaves", "deg1", "deg2", "deg3"]

        def rows():
            for rank, tree in enumerate(st.enumerate_trees(n, degree)):
                leaves, d1, d2, d3 = st.tree_degree_histogram(tree)
                yield {"n": n, "rank": rank, "tree": st.tree_text(tree),
                       "leaves": leaves, "deg1": d1, "deg2": d2, "deg3": d3}
        return fields, rows()
    raise ValueError(f"unknown family {family!r}")


def _cmd_enumerate(args) -> int:
    limit = _HARD_LIMITS[args.family]
    if args.n < 0:
        print(f"error: --n must be nonnegative", file=sys.stderr)
        return 2
    if args.n > limit and not args.force:
        print(f"error: --n {args.n} exceeds the {args.family} limit {limit} "
              "(pass --force to override)", file=sys.stderr)
        return 2
    fields, rows = _family_rows(args.family, args.n)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        _emit(buf.getvalue(), args.out)
    elif args.format == "json":
        _emit(json.dumps([row for row in rows], separators=(",", ":")), args.out)
    else:
        key = {"matchings": "arcs", "mwords": "word", "perms": "oneline",
               "derangements": "oneline", "signed": "oneline",
               "stirling": "word", "trees012": "tree", "trees0123": "tree"}[args.family]
        _emit("\n".join(str(row[key]) for row in rows), args.out)
    return 0


def _poly_by_name(name: str, n: int) -> MVPoly:
    if name == "An":
        return pm.eulerian_xy(n).subst({"y": 1})
    if name == "Anxy":
        return pm.eulerian_xy(n)
    if name == "Anpq":
        return pm.eulerian_xpq(n)
    if name == "Mn":
        return mt.m_poly(n)
    if name == "Bn":
        return pm.b_poly(n)
    if name == "dn":
        return pm.derangement_poly(n)
    if name == "dBn":
        return pm.type_b_derangement_poly(n)
    if name == "Cn":
        return wd.c_poly(n)
    if name == "NCA":
        return wd.nca_poly(n)
    if name == "NCR":
        return wd.ncr_poly(n)
    if name == "In":
        return mt.i_poly(n)
    if name == "Qn":
        return st.q_poly(n)
    if name == "xi":
        return st.xi_poly(n)
    if name == "gamma":
        return st.gamma_poly(n)
    raise ValueError(f"unknown polynomial {name!r}")


def _cmd_poly(args) -> int:
    family = _POLY_FAMILY[args.name]
    if args.n < 1:
        print("error: --n must be positive", file=sys.stderr)
        return 2
    if family is not None:
        limit = _HARD_LIMITS[family]
        if args.n > limit and not args.force:
            print(f"error: --n {args.n} exceeds the {family} limit {limit} "
                  "(pass --force to override)", file=sys.stderr)
            return 2
    if args.format == "json" and args.name in ("xi", "gamma"):
        table = st.xi_table(args.n) if args.name == "xi" else st.gamma_table(args.n)
        _emit(table.to_json(args.name), args.out)
        return 0
    poly = _poly_by_name(args.name, args.n)
    if args.format == "json":
        _emit(json.dumps({"name": args.name, "n": args.n, "poly": poly.render()},
                         separators=(",", ":")), args.out)
    else:
        _emit(poly.render(), args.out)
    return 0


def _cmd_verify(args) -> int:
    selection = "all" if args.checks.strip() == "all" else [
        part.strip() for part in args.checks.split(",") if part.strip()]
    try:
        results = checks.run_checks(selection, max_n=args.max_n,
                                    egf_order=args.egf_order, jobs=args.jobs)
    except checks.UnknownCheckIdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.report == "json":
        _emit(checks.report_json(results), args.out)
    else:
        _emit(checks.report_table(results), args.out)
    return 1 if any(r.status == "fail" for r in results) else 0


def _cmd_grammar(args) -> int:
    try:
        with open(args.rules, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.rules}: {exc}", file=sys.stderr)
        return 2
    try:
        g = gr.parse_grammar(text)
    except (ParseError, DuplicateRuleError) as exc:
        print(f"error: {args.rules}: {exc}", file=sys.stderr)
        return 2
    try:
        seed = parse_poly(args.seed)
    except ParseError as exc:
        print(f"error: --seed: {exc}", file=sys.stderr)
        return 2
    if args.iterations < 0:
        print("error: --iterations must be nonnegative", file=sys.stderr)
        return 2
    _emit(gr.d_iter(g, seed, args.iterations).render(), args.out)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handler = {
        "enumerate": _cmd_enumerate,
        "poly": _cmd_poly,
        "verify": _cmd_verify,
        "grammar": _cmd_grammar,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
