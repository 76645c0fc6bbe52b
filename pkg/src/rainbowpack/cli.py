"""Command-line entry point: ``rainbowpack <command> <kind> [options] [FILE]``.

Every command reads its main input from FILE or standard input and writes
one text record to standard output, so stages compose with pipes.

Exit codes: 0 success (including a decided "NONE"), 1 verification or
property violation, 2 resource or size limit, 3 malformed input or failed
precondition, 4 internal soundness failure.  argparse usage errors also
exit with 2.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import formats
from .errors import (
    InstanceError,
    PreconditionError,
    SearchBudgetExceeded,
    SizeError,
    SoundnessError,
)
from .generators import (
    gen_exact_indegree_digraph,
    gen_nae_exactly4,
    gen_random_digraph,
    gen_random_ecg,
    gen_random_paired,
    gen_two_tree_union,
)
from .graphs import (
    ArcPartition,
    Assignment,
    Digraph,
    EdgeColoredGraph,
    NaeFormula,
    PairedGraph,
    TreePacking,
    is_k_partition_connected,
)
from .matroid import (
    check_rank_axioms,
    common_cover_number_bf,
    common_packing_number_bf,
    covering_number,
    packing_number,
    random_matroid,
)
from .rainbow import pack_rainbow_trees
from .reductions import (
    Nae2RstMap,
    Rst2DigMap,
    Rst2ParityMap,
    arc_partition_to_packing,
    assignment_to_packing,
    nae_bruteforce,
    packing_to_arc_partition,
    packing_to_assignment,
    parity_packing_maps,
    parse_map,
    reduce_nae_to_rst,
    reduce_rst_to_digraph,
    reduce_rst_to_parity,
    serialize_map,
)
from .search import DEFAULT_BUDGET
from .targets import decompose_digraph, pack_parity_trees
from .verify import verify_digraph_decomposition, verify_parity_packing, verify_rainbow_packing

EXIT_OK, EXIT_VIOLATION, EXIT_RESOURCE, EXIT_INPUT, EXIT_SOUNDNESS = 0, 1, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read(path):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path, cls, allow_none=False):
    obj = formats.parse(_read(path))
    if obj is None and allow_none:
        return None
    if not isinstance(obj, cls):
        got = "NONE" if obj is None else type(obj).__name__
        raise _Fail(EXIT_INPUT, f"expected {cls.__name__}, got {got}")
    return obj


def _emit(obj):
    sys.stdout.write(formats.serialize(obj))


# --------------------------------------------------------------------------- gen

def cmd_gen(args):
    if args.kind == "nae":
        _emit(gen_nae_exactly4(args.n, args.seed))
    elif args.kind == "ecg":
        if args.edges is None:
            _emit(gen_two_tree_union(args.vertices, args.seed))
        else:
            colors = args.colors if args.colors is not None else args.edges
            _emit(gen_random_ecg(args.vertices, args.edges, colors, args.seed))
    elif args.kind == "dig":
        if args.exact:
            _emit(gen_exact_indegree_digraph(args.vertices, args.k, args.seed))
        else:
            _emit(gen_random_digraph(args.vertices, args.k, args.extra, args.seed))
    elif args.kind == "pgr":
        _emit(gen_random_paired(args.vertices, args.pairs, args.seed, two_tree=args.two_tree))


# --------------------------------------------------------------------------- reduce

def cmd_reduce(args):
    if args.kind == "nae2rst":
        target, mp = reduce_nae_to_rst(_load(args.input, NaeFormula))
    elif args.kind == "rst2dig":
        target, mp = reduce_rst_to_digraph(_load(args.input, EdgeColoredGraph), args.root)
    else:
        target, mp = reduce_rst_to_parity(_load(args.input, EdgeColoredGraph))
    if args.map_out:
        with open(args.map_out, "w", encoding="utf-8") as fh:
            fh.write(serialize_map(mp))
    _emit(target)


# --------------------------------------------------------------------------- solve

def cmd_solve(args):
    budget = args.budget
    if args.kind == "nae":
        _emit(nae_bruteforce(_load(args.input, NaeFormula)))
    elif args.kind == "rst":
        _emit(pack_rainbow_trees(_load(args.input, EdgeColoredGraph), args.k, budget=budget))
    elif args.kind == "dig":
        _emit(decompose_digraph(_load(args.input, Digraph), args.k, budget=budget))
    else:
        _emit(pack_parity_trees(_load(args.input, PairedGraph), args.k, budget=budget))


# --------------------------------------------------------------------------- map

_MAP_KINDS = {
    "a2p": (Nae2RstMap, Assignment, lambda mp, c: assignment_to_packing(mp, c)),
    "p2a": (Nae2RstMap, TreePacking, lambda mp, c: packing_to_assignment(mp, c)),
    "p2arc": (Rst2DigMap, TreePacking, lambda mp, c: packing_to_arc_partition(mp, c)),
    "arc2p": (Rst2DigMap, ArcPartition, lambda mp, c: arc_partition_to_packing(mp, c)),
    "par-fwd": (Rst2ParityMap, TreePacking, lambda mp, c: parity_packing_maps(mp, "forward", c)),
    "par-bwd": (Rst2ParityMap, TreePacking, lambda mp, c: parity_packing_maps(mp, "backward", c)),
}


def cmd_map(args):
    map_cls, cert_cls, fn = _MAP_KINDS[args.kind]
    with open(args.map, encoding="utf-8") as fh:
        mp = parse_map(fh.read())
    if not isinstance(mp, map_cls):
        raise _Fail(EXIT_INPUT, f"'{args.kind}' needs a {map_cls.kind} map, got {mp.kind}")
    cert = _load(args.input, cert_cls, allow_none=True)
    # a decided "no" stays "no" on the other side of an equivalence
    _emit(None if cert is None else fn(mp, cert))


# --------------------------------------------------------------------------- verify

def cmd_verify(args):
    if args.kind == "rst":
        inst = _load(args.instance, EdgeColoredGraph)
    elif args.kind == "dig":
        inst = _load(args.instance, Digraph)
    else:
        inst = _load(args.instance, PairedGraph)
    cert_cls = ArcPartition if args.kind == "dig" else TreePacking
    cert = _load(args.certificate, cert_cls, allow_none=True)
    if cert is None:
        print("violation: no certificate (NONE)", file=sys.stderr)
        return EXIT_VIOLATION
    try:
        if args.kind == "rst":
            verdict = verify_rainbow_packing(inst, cert, require_partition=args.partition, k=args.k)
        elif args.kind == "dig":
            verdict = verify_digraph_decomposition(inst, cert, k=args.k)
        else:
            verdict = verify_parity_packing(inst, cert, require_partition=args.partition or None, k=args.k)
    except InstanceError as exc:
        # ids outside the instance: the certificate does not belong to it
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    if verdict:
        print("ok")
        return EXIT_OK
    print(f"violation: {verdict}", file=sys.stderr)
    return EXIT_VIOLATION


# --------------------------------------------------------------------------- check

def cmd_check(args):
    if args.kind == "k-partition":
        inst = formats.parse(_read(args.input))
        if not isinstance(inst, (EdgeColoredGraph, PairedGraph, Digraph)):
            raise _Fail(EXIT_INPUT, "k-partition needs a graph instance (ecg, pgr or dig)")
        print("yes" if is_k_partition_connected(inst, args.k) else "no")
        return EXIT_OK
    rng = np.random.default_rng(args.seed)
    failures = 0
    for i in range(args.count):
        if args.kind == "axioms":
            m = random_matroid(rng)
            problems = check_rank_axioms(m)
            for msg in problems:
                print(f"matroid {i} ({m!r}): {msg}")
            failures += bool(problems)
        else:
            size = int(rng.integers(1, args.max_ground + 1))
            m1 = random_matroid(rng, loopless=True, ground=size)
            m2 = random_matroid(rng, loopless=True, ground=size)
            beta, gamma = common_cover_number_bf(m1, m2), common_packing_number_bf(m1, m2)
            beta_bound = 2 * max(covering_number(m1), covering_number(m2))
            gamma_bound = min(packing_number(m1), packing_number(m2))
            if beta > beta_bound or gamma > gamma_bound:
                print(f"pair {i}: cover {beta} vs bound {beta_bound}, packing {gamma} vs bound {gamma_bound}")
                failures += 1
    print(f"{args.kind}: {args.count} checked, {failures} violations")
    return EXIT_VIOLATION if failures else EXIT_OK


# --------------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rainbowpack", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a seeded instance")
    gen.add_argument("kind", choices=["nae", "ecg", "dig", "pgr"])
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--n", type=int, default=3, help="variables (nae)")
    gen.add_argument("--vertices", type=int, default=5)
    gen.add_argument("--edges", type=int, help="ecg: random colored multigraph instead of a two-tree union")
    gen.add_argument("--colors", type=int, help="ecg: number of colors drawn (default: edge count)")
    gen.add_argument("--k", type=int, default=2, help="dig: required in-degree")
    gen.add_argument("--extra", type=int, default=0, help="dig: extra arcs")
    gen.add_argument("--exact", action="store_true", help="dig: in-degree exactly k")
    gen.add_argument("--pairs", type=int, default=2, help="pgr: pair count")
    gen.add_argument("--two-tree", action="store_true", help="pgr: union of two spanning trees")
    gen.set_defaults(func=cmd_gen)

    red = sub.add_parser("reduce", help="apply a reduction; the map sidecar goes to --map-out")
    red.add_argument("kind", choices=["nae2rst", "rst2dig", "rst2parity"])
    red.add_argument("input", nargs="?")
    red.add_argument("--root", type=int, default=0)
    red.add_argument("--map-out", metavar="FILE")
    red.set_defaults(func=cmd_reduce)

    sol = sub.add_parser("solve", help="decide an instance, printing a certificate or NONE")
    sol.add_argument("kind", choices=["rst", "dig", "parity", "nae"])
    sol.add_argument("input", nargs="?")
    sol.add_argument("--k", type=int, default=2)
    sol.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    sol.set_defaults(func=cmd_solve)

    mp = sub.add_parser("map", help="translate a certificate through a reduction map")
    mp.add_argument("kind", choices=list(_MAP_KINDS))
    mp.add_argument("input", nargs="?")
    mp.add_argument("--map", required=True, metavar="FILE")
    mp.set_defaults(func=cmd_map)

    ver = sub.add_parser("verify", help="check a certificate against an instance")
    ver.add_argument("kind", choices=["rst", "dig", "parity"])
    ver.add_argument("instance")
    ver.add_argument("certificate", nargs="?")
    ver.add_argument("--k", type=int, help="required number of parts")
    ver.add_argument("--partition", action="store_true", help="the parts must cover every edge")
    ver.set_defaults(func=cmd_verify)

    chk = sub.add_parser("check", help="run matroid property checks")
    chk.add_argument("kind", choices=["axioms", "bounds", "k-partition"])
    chk.add_argument("input", nargs="?")
    chk.add_argument("--k", type=int, default=2)
    chk.add_argument("--count", type=int, default=100)
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--max-ground", type=int, default=10)
    chk.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # an optional FILE given after the flags is left over by argparse; slot it in
    for name in ("input", "certificate"):
        if extra and getattr(args, name, "") is None and not extra[0].startswith("-"):
            setattr(args, name, extra.pop(0))
    if extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        code = args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (SearchBudgetExceeded, SizeError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except SoundnessError as exc:
        print(f"internal soundness failure: {exc}", file=sys.stderr)
        return EXIT_SOUNDNESS
    except (InstanceError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
