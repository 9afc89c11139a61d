"""Command line entry point: ``towns <command> ...``.

Exit codes: 0 ok / satisfied / optimal, 1 pattern violated, 2 usage or
input error, 3 search stopped by its time limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys

from . import constructions, gf2, transforms
from .errors import TownsError
from .family import STAR, Pattern, classify_pattern, find_violation, pattern_dual, pattern_sum
from .io import dumps_family, load_family, save_family
from .reference import reference_value
from .search import UNIVERSE_CAP, SearchConfig, max_family, oracle_max

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3

SUITES = {
    "mod2-k2": (2, 2),
    "mod2-k3": (2, 3),
    "mod2-k4": (2, 4),
    "mod3-k3": (3, 3),
}
TABLE_COLUMNS = ["suite", "pattern", "modulus", "n", "ref_lower", "ref_upper",
                 "search_value", "optimal", "match"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(doc):
    print(json.dumps(doc, separators=(",", ":")))


def _pattern_arg(text, modulus, fallback=None):
    if text is None:
        if fallback is None:
            raise TownsError("--pattern is required (the family file carries none)")
        return fallback
    return Pattern.parse(text, modulus)


def _load(path):
    try:
        return load_family(path)
    except OSError as exc:
        raise TownsError(f"cannot read {path}: {exc.strerror or exc}") from None


def _save(path, family, pattern=None):
    if path is None or path == "-":
        print(dumps_family(family, pattern))
        return
    try:
        save_family(path, family, pattern)
    except OSError as exc:
        raise TownsError(f"cannot write {path}: {exc.strerror or exc}") from None


# ---------------------------------------------------------------------------


def cmd_verify(args):
    family, meta = _load(args.family)
    modulus = args.mod if args.mod is not None else (meta.modulus if meta else 2)
    pattern = _pattern_arg(args.pattern, modulus, meta)
    bad = find_violation(family, pattern)
    if bad is None:
        print("SATISFIED")
        return EXIT_OK
    _emit(bad.as_dict())
    return EXIT_VIOLATED


def _parse_params(items):
    params = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise TownsError(f"parameter {item!r} is not of the form key=value")
        try:
            params[key.strip()] = int(val)
        except ValueError:
            raise TownsError(f"parameter {key} needs an integer value, got {val!r}") from None
    return params


def cmd_construct(args):
    if args.list:
        for e in constructions.catalog():
            print(f"{e.id}\t{', '.join(e.params)}\tsize {e.size_formula}\tground {e.ground_formula}\t{e.description}")
        return EXIT_OK
    if not args.name:
        raise TownsError("--name is required")
    spec = constructions.ConstructionSpec(constructions.entry(args.name).id, _parse_params(args.params))
    family = constructions.build(spec)
    pattern = constructions.served_pattern(spec)
    if args.out:
        _save(args.out, family, pattern)
        _emit({"id": spec.id, "size": len(family), "ground": family.n,
               "pattern": str(pattern), "modulus": pattern.modulus})
    else:
        _save(None, family, pattern)
    return EXIT_OK


def cmd_search(args):
    pattern = Pattern.parse(args.pattern, args.mod)
    if args.n > UNIVERSE_CAP:
        raise TownsError(f"n = {args.n} exceeds the search cap {UNIVERSE_CAP}")
    if args.oracle:
        result = oracle_max(pattern, args.n)
    else:
        config = SearchConfig(time_limit=args.time_limit, worker_count=args.workers,
                              deterministic=not args.nondeterministic,
                              use_upper_bound_cutoff=not args.no_cutoff)
        result = max_family(pattern, args.n, config)
    doc = result.as_dict()
    if args.no_timing:
        doc.pop("elapsed_ms")
    _emit(doc)
    return EXIT_OK if result.optimal else EXIT_TIMEOUT


def _suite_patterns(suite):
    modulus, k = SUITES[suite]
    alphabet = (0, 1) if modulus == 2 else (0, STAR)
    return [Pattern(modulus, e) for e in itertools.product(alphabet, repeat=k)]


def table_rows(suite, n_min, n_max, budget):
    """One dict per (pattern, n); ``match`` is 'yes', 'no' or 'untested'."""
    rows = []
    for pattern in _suite_patterns(suite):
        for n in range(n_min, n_max + 1):
            ref = reference_value(pattern, n)
            row = {"suite": suite, "pattern": str(pattern), "modulus": pattern.modulus, "n": n,
                   "ref_lower": ref.lower,
                   "ref_upper": "inf" if ref.upper == math.inf else ref.upper,
                   "search_value": None, "optimal": None, "match": "untested"}
            if n <= UNIVERSE_CAP:
                res = max_family(pattern, n, SearchConfig(time_limit=budget))
                row["search_value"] = res.best_size
                row["optimal"] = res.optimal
                if res.optimal:
                    row["match"] = "yes" if ref.contains(res.best_size) else "no"
            rows.append(row)
    return rows


def render_table(rows, fmt):
    if fmt == "json":
        return json.dumps(rows, separators=(",", ":"))

    def cell(v):
        if v is None:
            return ""
        if isinstance(v, bool):
            return "true" if v else "false"
        return str(v)

    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TABLE_COLUMNS)
        for r in rows:
            w.writerow([cell(r[c]) for c in TABLE_COLUMNS])
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(TABLE_COLUMNS) + " |", "|" + "---|" * len(TABLE_COLUMNS)]
    for r in rows:
        lines.append("| " + " | ".join(cell(r[c]) for c in TABLE_COLUMNS) + " |")
    return "\n".join(lines)


def cmd_table(args):
    if args.n_min < 1 or args.n_max < args.n_min:
        raise TownsError("need 1 <= n-min <= n-max")
    rows = table_rows(args.suite, args.n_min, args.n_max, args.budget)
    print(render_table(rows, args.format))
    return EXIT_OK if all(r["match"] != "no" for r in rows) else EXIT_VIOLATED


def cmd_classify(args):
    print(classify_pattern(Pattern.parse(args.pattern, args.mod)).value)
    return EXIT_OK


def cmd_transform(args):
    op = args.op
    if op == "partition-sum":
        a, pa = _load(args.family)
        if not args.other:
            raise TownsError("partition-sum needs --other")
        b, pb = _load(args.other)
        out = transforms.partition_sum(a, b, pa, pb)
        summed = None
        if pa is not None and pb is not None:
            summed = pattern_sum(pa, pb)
        _save(args.out, out, summed)
        return EXIT_OK

    family, meta = _load(args.family)
    if op == "trace":
        modulus = args.mod if args.mod is not None else (meta.modulus if meta else 2)
        pattern = _pattern_arg(args.pattern, modulus, meta)
        chosen = [int(x) for x in args.chosen.split(",") if x.strip()] if args.chosen else []
        res = transforms.trace(family, pattern, chosen)
        _save(args.out, res.family, res.pattern)
        if args.out:
            _emit({"size": len(res.family), "ground": res.family.n,
                   "pattern": str(res.pattern), "relabel": list(res.relabel)})
    elif op == "dualize":
        _save(args.out, transforms.dualize(family),
              pattern_dual(meta) if meta is not None and meta.modulus == 2 else None)
    elif op == "restrict-outside":
        if args.pivot is None:
            raise TownsError("restrict-outside needs --pivot")
        res = transforms.restrict_outside(family, args.pivot)
        collapsed = len(res) - len(set(res.members))
        if collapsed:
            print(f"warning: {collapsed} member(s) collapsed; writing the deduplicated family",
                  file=sys.stderr)
        _save(args.out, res.deduplicated())
        if args.out:
            _emit({"size": len(res), "distinct": len(set(res.members)), "ground": res.n,
                   "relabel": list(res.relabel)})
    elif op == "complement":
        _save(args.out, transforms.complement_family(family))
    return EXIT_OK


def cmd_gf2_report(args):
    family, _ = _load(args.family)
    m = gf2.characteristic_matrix(family)
    dim_w, dim_perp = gf2.span_dims(m)
    doc = {"n": family.n, "members": len(family), "rank": dim_w,
           "dim_W": dim_w, "dim_W_perp": dim_perp}
    if dim_w <= gf2.ISOTROPIC_RANK_CAP:
        size, iso = gf2.isotropic_count(m)
        doc.update({"span_size": size, "isotropic": iso, "isotropic_is_half": 2 * iso == size})
    else:
        doc.update({"span_size": None, "isotropic": None, "isotropic_is_half": None})
    doc["claim_a2"] = dim_w <= (family.n + 1) // 2
    _emit(doc)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="towns", description="Modular intersection patterns of set families.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("verify", help="check a family file against a pattern")
    s.add_argument("--family", required=True)
    s.add_argument("--pattern")
    s.add_argument("--mod", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("construct", help="build a catalog construction")
    s.add_argument("--name")
    s.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    s.add_argument("--out")
    s.add_argument("--list", action="store_true", help="list the catalog and exit")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="exact maximum family search")
    s.add_argument("--pattern", required=True)
    s.add_argument("--mod", type=int, default=2)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--time-limit", type=float)
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--no-cutoff", action="store_true", help="do not stop at the proven upper bound")
    s.add_argument("--nondeterministic", action="store_true", help="skip recomputing the canonical witness")
    s.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for byte-stable output")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("table", help="reference brackets next to search values")
    s.add_argument("--suite", choices=sorted(SUITES), required=True)
    s.add_argument("--n-min", type=int, default=1)
    s.add_argument("--n-max", type=int, default=8)
    s.add_argument("--format", choices=["csv", "md", "json"], default="csv")
    s.add_argument("--budget", type=float, default=60.0, help="seconds per cell")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("classify", help="LinearType or SqrtBounded")
    s.add_argument("pattern")
    s.add_argument("--mod", type=int, default=2)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("transform", help="trace, dualize, partition-sum, restrict-outside, complement")
    s.add_argument("op", choices=["trace", "dualize", "partition-sum", "restrict-outside", "complement"])
    s.add_argument("--family", required=True)
    s.add_argument("--other", help="second family (partition-sum)")
    s.add_argument("--pattern")
    s.add_argument("--mod", type=int)
    s.add_argument("--chosen", help="comma separated member indices (trace)")
    s.add_argument("--pivot", type=int, help="member index (restrict-outside)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("gf2-report", help="rank, span dimensions and isotropic count")
    s.add_argument("--family", required=True)
    s.set_defaults(func=cmd_gf2_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TownsError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
