"""starpir command line: analyze schemes, search retrieval codes, simulate
the protocol, and run the self-verification matrix.

Codes are passed as JSON descriptor files (see descriptors module).  All
rates in machine output are exact fraction strings.  Exit codes: 0 ok,
2 parse/input error, 3 enumeration cap exceeded, 1 anything else; errors
are mirrored as JSON on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .code import DEFAULT_MAX_WORDS, INFINITE, LinearCode
from .cyclic import cyclotomic_cosets, low_cost_scheme, two_weight_irreducible
from .descriptors import (DescriptorError, cyclic_spec_of, infer_transitivity,
                          normalize, realize)
from .errors import CapExceededError
from .pir import analyze, collusion_partition_bound, rm_collusion_bound, simulate
from .report import (FRONT_HEADER, analysis_payload, analysis_table, dist_value,
                     frac_str, front_payload, front_table, plot_front,
                     plot_weight_distribution, write_csv)
from .search import (AgOnePointFamily, AllCyclicFamily, BchDualFamily, Candidate,
                     DirectSumFamily, ExplicitFamily, pareto)
from .verify import DISCREPANCY, FAIL, run_checks

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise DescriptorError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{path}: invalid JSON: {exc}") from exc


def _max_words(args) -> int:
    if args.max_enum is None:
        return DEFAULT_MAX_WORDS
    return min(1 << args.max_enum, DEFAULT_MAX_WORDS)


def _auto_hint(storage_desc, retrieval_desc) -> str | None:
    s = infer_transitivity(storage_desc)
    r = infer_transitivity(retrieval_desc)
    if s is not None and r is not None:
        return s
    return None


def _collusion_bound(storage_desc, storage: LinearCode, max_words: int) -> int | None:
    kinds = set(storage_desc) - {"declared_distance"}
    if kinds == {"rm"}:
        params = storage_desc["rm"]
        return rm_collusion_bound(int(params["m"]), int(params["r"]))
    try:
        found = collusion_partition_bound(storage, max_words=max_words)
    except CapExceededError:
        return None
    return found.value if found is not None else None


def cmd_analyze(args) -> tuple[dict, str]:
    storage_desc = _load_json(args.storage)
    retrieval_desc = _load_json(args.retrieval)
    storage = realize(storage_desc)
    retrieval = realize(retrieval_desc)
    if args.transitive == "auto":
        hint = _auto_hint(storage_desc, retrieval_desc)
    elif args.transitive == "off":
        hint = None
    else:
        hint = args.transitive
    res = analyze(storage, retrieval, transitivity=hint, max_words=_max_words(args))
    bound = _collusion_bound(storage_desc, storage, _max_words(args))
    return analysis_payload(res, bound), analysis_table(res, bound)


def cmd_cosets(args) -> tuple[dict, str]:
    cosets = cyclotomic_cosets(args.n, args.q)
    payload = {"n": args.n, "q": args.q, "count": len(cosets),
               "cosets": [sorted(c) for c in cosets]}
    human = (f"{len(cosets)} cyclotomic cosets of Z/{args.n} under multiplication "
             f"by {args.q}:\n" + "\n".join(f"  {sorted(c)}" for c in cosets))
    return payload, human


def cmd_star(args) -> tuple[dict, str]:
    desc_a, desc_b = _load_json(args.left), _load_json(args.right)
    a, b = realize(desc_a), realize(desc_b)
    star = a.star(b)
    spec_a, spec_b = cyclic_spec_of(desc_a), cyclic_spec_of(desc_b)
    if (spec_a is not None and spec_b is not None
            and (spec_a.q, spec_a.n) == (spec_b.q, spec_b.n)):
        from .cyclic import star_cyclic

        out_desc: dict = {"cyclic": {
            "q": spec_a.q, "n": spec_a.n,
            "defining_set": sorted(star_cyclic(spec_a, spec_b).defining_set)}}
    else:
        out_desc = normalize(star)
    try:
        d = star.min_distance(_max_words(args))
    except CapExceededError:
        d = None
    finite = d is not None and d != INFINITE
    payload = {"descriptor": out_desc, "n": star.n, "k": star.k,
               "d": dist_value(d),
               "defect": star.n - (int(d) + star.k) if finite else None}
    human = (f"star product: [{star.n}, {star.k}"
             + (f", {dist_value(d)}]" if d is not None else "] (distance capped)"))
    return payload, human


def cmd_bound(args) -> tuple[dict, str]:
    code = realize(_load_json(args.code))
    found = collusion_partition_bound(code, max_words=_max_words(args))
    if found is None:
        return ({"bound": None},
                "no disjoint-support codeword partition exists; no bound derived")
    payload = {"bound": found.value, "label": "strongest derivable bound",
               "weights": list(found.weights),
               "supports": [list(s) for s in found.supports]}
    human = (f"collusion upper bound: {found.value} (strongest derivable bound)\n"
             f"  partition weights: {list(found.weights)}")
    return payload, human


def _family_from_spec(spec) -> object:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise DescriptorError("family spec needs a 'kind'")
    kind = spec["kind"]
    if kind == "all-cyclic":
        return AllCyclicFamily()
    if kind == "bch-dual":
        bs = spec.get("b", [0, 1])
        ds = spec["delta"]
        bs = [bs] if isinstance(bs, int) else list(bs)
        ds = [ds] if isinstance(ds, int) else list(ds)
        return BchDualFamily(tuple(int(x) for x in bs), tuple(int(x) for x in ds))
    if kind == "ag-one-point":
        return AgOnePointFamily(mult=int(spec["mult"]),
                                max_candidates=int(spec.get("max_candidates", 256)))
    if kind == "direct-sum":
        lp = spec.get("left_positions")
        return DirectSumFamily(_family_from_spec(spec["left"]),
                               _family_from_spec(spec["right"]),
                               tuple(int(j) for j in lp) if lp else None)
    if kind == "explicit-list":
        entries = tuple(
            Candidate(d, realize(d), infer_transitivity(d) is not None)
            for d in spec["codes"])
        return ExplicitFamily(entries)
    raise DescriptorError(f"unknown family kind {kind!r}")


def cmd_search(args) -> tuple[dict, str]:
    spec = _load_json(args.spec)
    if not isinstance(spec, dict) or "storage" not in spec or "families" not in spec:
        raise DescriptorError("search spec needs 'storage' and 'families'")
    storage = realize(spec["storage"])
    families = [_family_from_spec(f) for f in spec["families"]]
    trans = spec.get("transitivity", "auto")
    if trans == "auto":
        trans = infer_transitivity(spec["storage"])
    front = pareto(storage, families, storage_transitivity=trans,
                   max_words=_max_words(args))
    payload = {"storage": {"n": storage.n, "k": storage.k},
               "front": front_payload(front)}
    if args.plot:
        plot_front(front, args.plot)
        payload["plot"] = args.plot
    return payload, front_table(front)


def cmd_simulate(args) -> tuple[dict, str]:
    storage = realize(_load_json(args.storage))
    retrieval = realize(_load_json(args.retrieval))
    files = _load_json(args.files)
    if not (isinstance(files, list) and files
            and all(isinstance(r, list) for r in files)):
        raise DescriptorError("files must be a JSON matrix (list of integer rows)")
    tr = simulate(storage, retrieval, files, args.target, args.seed,
                  max_words=_max_words(args))
    expected = list(files[args.target - 1])
    payload = {
        "target": tr.target,
        "seed": args.seed,
        "rounds": [asdict(r) for r in tr.rounds],
        "recovered": list(tr.recovered),
        "expected": expected,
        "match": list(tr.recovered) == expected,
    }
    human = (f"simulated retrieval of file {tr.target} over {storage.n} servers: "
             f"{len(tr.rounds)} round(s), recovered "
             f"{'matches' if payload['match'] else 'DIFFERS FROM'} the stored file")
    return payload, human


def cmd_twoweight(args) -> tuple[dict, str]:
    pair = two_weight_irreducible(args.m, args.e)
    payload = {
        "m": pair.m, "e": pair.e, "n": pair.n,
        "code": {"n": pair.code.n, "k": pair.code.k},
        "dual": {"n": pair.dual.n, "k": pair.dual.k, "d": pair.min_weight},
        "max_weight": pair.max_weight,
        "weight_counts": [[w, c] for w, c in pair.weight_counts],
    }
    lines = [f"two-weight irreducible cyclic pair at m={pair.m}, e={pair.e}:",
             f"  length n:          {pair.n}",
             f"  code:              [{pair.code.n}, {pair.code.k}]",
             f"  dual:              [{pair.dual.n}, {pair.dual.k}, {pair.min_weight}]",
             f"  weights (count):   " + ", ".join(f"{w} ({c})" for w, c in pair.weight_counts),
             f"  max weight:        {pair.max_weight}"]
    if args.delta is not None:
        sch = low_cost_scheme(args.m, args.e, args.delta)
        payload["scheme"] = {
            "delta": sch.delta,
            "storage_rate": frac_str(sch.storage_rate),
            "failed_server_ratio": frac_str(sch.failed_server_ratio),
            "t": sch.privacy,
            "star_dimension": sch.star_dimension,
            "exact_rate": frac_str(sch.exact_rate),
            "rate_bound": frac_str(sch.rate_bound.value),
            "rate_bound_vacuous": sch.rate_bound.vacuous,
        }
        lines += [f"  scheme at delta={sch.delta}:",
                  f"    storage rate:    {frac_str(sch.storage_rate)}",
                  f"    f:               {frac_str(sch.failed_server_ratio)}",
                  f"    privacy t:       {sch.privacy}",
                  f"    exact rate:      {frac_str(sch.exact_rate)}",
                  f"    counting bound:  {frac_str(sch.rate_bound.value)}"]
    if args.plot:
        plot_weight_distribution(dict(pair.weight_counts), args.plot,
                                 title=f"[{pair.dual.n}, {pair.dual.k}] weight distribution")
        payload["plot"] = args.plot
    return payload, "\n".join(lines)


def cmd_verify(args) -> tuple[dict, str]:
    results = run_checks()
    payload = {"checks": [asdict(r) for r in results],
               "failed": sum(r.status == FAIL for r in results),
               "discrepancies": sum(r.status == DISCREPANCY for r in results)}
    lines = []
    for r in results:
        lines.append(f"[{r.status}] {r.name}")
        lines.append(f"    {r.detail}")
    lines.append(f"{payload['failed']} failed, {payload['discrepancies']} known "
                 f"discrepancies surfaced (computed values authoritative)")
    return payload, "\n".join(lines)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit machine-readable JSON on stdout")
    common.add_argument("--out", metavar="PATH",
                        help="write the report to a file instead of stdout "
                             "(.csv for delimited output where supported)")
    common.add_argument("--max-enum", type=int, metavar="BITS",
                        help="lower the exhaustive-enumeration cap to 2^BITS words")

    p = argparse.ArgumentParser(prog="starpir",
                                description="star-product PIR scheme toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", parents=[common],
                        help="all scheme parameters of a (storage, retrieval) pair")
    pa.add_argument("storage", help="storage code descriptor (JSON file)")
    pa.add_argument("retrieval", help="retrieval code descriptor (JSON file)")
    pa.add_argument("--transitive",
                    choices=["auto", "off", "cyclic", "extended-cyclic", "replicated"],
                    default="auto", help="transitivity voucher for the improved rate")
    pa.set_defaults(handler=cmd_analyze)

    pc = sub.add_parser("cosets", parents=[common], help="cyclotomic cosets of Z/n")
    pc.add_argument("n", type=int)
    pc.add_argument("q", type=int)
    pc.set_defaults(handler=cmd_cosets)

    ps = sub.add_parser("star", parents=[common],
                        help="star product of two codes, as a descriptor")
    ps.add_argument("left")
    ps.add_argument("right")
    ps.set_defaults(handler=cmd_star)

    pb = sub.add_parser("bound", parents=[common],
                        help="disjoint-support partition bound on collusion")
    pb.add_argument("code")
    pb.set_defaults(handler=cmd_bound)

    pf = sub.add_parser("search", parents=[common],
                        help="Pareto front of retrieval codes for a storage code")
    pf.add_argument("spec", help="search spec JSON: storage descriptor + families")
    pf.add_argument("--plot", metavar="PNG", help="render the front to an image file")
    pf.set_defaults(handler=cmd_search)

    pm = sub.add_parser("simulate", parents=[common],
                        help="run the protocol end to end and decode one file")
    pm.add_argument("storage")
    pm.add_argument("retrieval")
    pm.add_argument("files", help="JSON matrix of file symbols (encodings)")
    pm.add_argument("--target", type=int, required=True, help="1-based file index")
    pm.add_argument("--seed", type=int, required=True,
                    help="RNG seed (mandatory: runs are reproducible)")
    pm.set_defaults(handler=cmd_simulate)

    pw = sub.add_parser("twoweight", parents=[common],
                        help="two-weight irreducible cyclic pair and its scheme")
    pw.add_argument("m", type=int)
    pw.add_argument("e", type=int)
    pw.add_argument("--delta", type=int,
                    help="include scheme parameters for this designed distance")
    pw.add_argument("--plot", metavar="PNG",
                    help="render the weight distribution to an image file")
    pw.set_defaults(handler=cmd_twoweight)

    pv = sub.add_parser("verify", parents=[common],
                        help="run the oracle-equivalence and discrepancy matrix")
    pv.set_defaults(handler=cmd_verify)
    return p


def _emit_error(code: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": {"code": code, "message": message}}) + "\n")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        payload, human = args.handler(args)
    except DescriptorError as exc:
        _emit_error("parse", str(exc))
        return EXIT_PARSE
    except CapExceededError as exc:
        _emit_error("cap", str(exc))
        return EXIT_CAP
    except (ValueError, OSError) as exc:
        _emit_error("input", str(exc))
        return EXIT_PARSE
    except Exception as exc:  # pragma: no cover - unexpected
        _emit_error("runtime", f"{type(exc).__name__}: {exc}")
        return EXIT_ERROR

    try:
        if args.command == "search" and args.out and args.out.endswith(".csv"):
            write_csv(args.out, FRONT_HEADER, _search_front(payload))
            print(f"wrote {args.out}")
        elif args.out:
            with open(args.out, "w") as fh:
                fh.write(json.dumps(payload, indent=2) if args.json else human)
                fh.write("\n")
            print(f"wrote {args.out}")
        elif args.json:
            print(json.dumps(payload, indent=2))
        else:
            print(human)
    except OSError as exc:
        _emit_error("input", f"cannot write output: {exc}")
        return EXIT_PARSE

    if args.command == "verify" and payload.get("failed"):
        return EXIT_ERROR
    return EXIT_OK


def _search_front(payload):
    rows = []
    for item in payload["front"]:
        rows.append([item["t"], item["rate"], item["rate_basic"],
                     item["rate_transitive"],
                     item["defect"] if item["defect"] is not None else "",
                     item["multiplicity"], json.dumps(item["descriptor"])])
    return rows


if __name__ == "__main__":
    sys.exit(main())
