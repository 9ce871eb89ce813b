"""Command line front end.

Exit codes: 0 success, 1 verified negative answer (a certificate is printed),
2 input error, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .errors import (CycleError, NotFMinorFree, Pw2DimError, SizeCapExceeded,
                     TheoremViolation, UnknownElement)
from .exact_dim import dimension_at_most, dimension_exact
from .graph.blocks import biconnected_blocks
from .graph.minors import is_f_minor_free
from .graph.widths import pathwidth_exact, treewidth_exact
from .poset import cover_graph, verify_realizer
from .realizer import realize_bounded
from .standard import (check_s5_treewidth, random_outerplanar_poset, random_pw2_poset,
                       random_s5_extension, random_tree_poset)
from .structure import PNOStructure, canonical_embedding, classify_ears, recognize_pno

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _read(path):
    if path in (None, "-"):
        return io.load_json(sys.stdin.read(), "<stdin>")
    try:
        with open(path, encoding="utf-8") as fh:
            return io.load_json(fh.read(), path)
    except OSError as exc:
        raise io.InputError(f"{path}: {exc.strerror}") from None


def _poset(args):
    return io.poset_from_json(_read(args.input))


def _graph_and_poset(args):
    """Graph input, or the cover graph of a poset input."""
    data = _read(args.input)
    if isinstance(data, dict) and "elements" in data:
        P = io.poset_from_json(data)
        return cover_graph(P), P
    return io.graph_from_json(data), None


def _emit(args, obj):
    json.dump(obj, sys.stdout, indent=2 if args.pretty else None)
    sys.stdout.write("\n")


def _warn_no_verify(args):
    if getattr(args, "no_verify", False):
        print("warning: verification disabled (--no-verify); output is not checked", file=sys.stderr)


def cmd_dimension(args):
    P = _poset(args)
    if args.t is not None:
        R = dimension_at_most(P, args.t, cap=args.cap)
        _emit(args, {"t": args.t, "realizable": R is not None,
                     "extensions": None if R is None else [[str(x) for x in L] for L in R]})
        return EXIT_OK if R is not None else EXIT_NEGATIVE
    res = dimension_exact(P, cap=args.cap)
    _emit(args, {"dimension": res.dimension, "extensions": [[str(x) for x in L] for L in res.witness]})
    return EXIT_OK


def cmd_realize(args):
    _warn_no_verify(args)
    P = _poset(args)
    kwargs = {} if args.cap is None else {"cap": args.cap}
    res = realize_bounded(P, verify=not args.no_verify, **kwargs)
    out = res.to_json()
    if not args.no_verify:
        # round trip through the emitted strings
        back = io.poset_from_json(io.poset_to_json(P))
        ok, _ = verify_realizer(back, out["extensions"])
        out["certificate"] = "verified" if ok else "failed"
    _emit(args, out)
    return EXIT_OK


def cmd_recognize(args):
    G, _ = _graph_and_poset(args)
    free, name, emb = is_f_minor_free(G, cap=max(40, G.number_of_nodes()) if args.cap is None else args.cap)
    blocks = []
    tree = biconnected_blocks(G)
    for b in tree.nontrivial():
        B = G.subgraph(tree.blocks[b])
        r = recognize_pno(B)
        entry = {"vertices": sorted(map(str, B.nodes))}
        if isinstance(r, PNOStructure):
            entry.update(pno=True, structure=io.structure_to_json(r))
        else:
            entry.update(pno=False, reason=r.reason, certificate=io.minor_to_json(r.pattern, r.embedding))
        blocks.append(entry)
    out = {"f_minor_free": free, "blocks": blocks}
    if not free:
        out["certificate"] = io.minor_to_json(name, emb)
    _emit(args, out)
    return EXIT_OK if free else EXIT_NEGATIVE


def cmd_embed(args):
    G, P = _graph_and_poset(args)
    E = canonical_embedding(G)
    if P is not None:
        E = classify_ears(P, E)
    if args.format == "json":
        _emit(args, {"blocks": {str(b): io.structure_to_json(S) for b, S in E.pno_per_block.items()},
                     "orientation": {str(b): o for b, o in E.orientation.items()},
                     "outer_face": [str(v) for v in E.outer_face_vertices()]})
    else:
        sys.stdout.write(io.embedding_to_dot(E))
    return EXIT_OK


def cmd_check_s5(args):
    P = _poset(args)
    try:
        rep = check_s5_treewidth(P)
    except ValueError as exc:
        _emit(args, {"contains_s5": False, "message": str(exc)})
        return EXIT_NEGATIVE
    _emit(args, {"contains_s5": True,
                 "s5": {k: str(v) for k, v in rep.s5.mapping.items()},
                 "k4_minor": io.minor_to_json("K4", rep.k4_minor),
                 "treewidth": rep.treewidth})
    return EXIT_OK


GENERATORS = {
    "pw2": lambda a: random_pw2_poset(a.seed, a.size, blocks=a.blocks, mode=a.mode),
    "tree": lambda a: random_tree_poset(a.seed, a.size),
    "outerplanar": lambda a: random_outerplanar_poset(a.seed, a.size),
    "s5": lambda a: random_s5_extension(a.seed, a.size),
}


def cmd_generate(args):
    P = GENERATORS[args.kind](args)
    if args.format == "dot":
        sys.stdout.write(io.graph_to_dot(cover_graph(P), name="cover graph"))
    else:
        _emit(args, io.poset_to_json(P))
    return EXIT_OK


def cmd_widths(args):
    G, _ = _graph_and_poset(args)
    kwargs = {} if args.cap is None else {"cap": args.cap}
    tw, td = treewidth_exact(G, **kwargs)
    pw, pd = pathwidth_exact(G, **kwargs)
    if args.format == "dot":
        sys.stdout.write(io.decomposition_to_dot(td, "tree decomposition"))
        sys.stdout.write(io.decomposition_to_dot(pd, "path decomposition"))
    else:
        _emit(args, {
            "treewidth": tw,
            "pathwidth": pw,
            "tree_decomposition": {"bags": {str(t): sorted(map(str, b)) for t, b in td.bags.items()},
                                   "edges": [[str(a), str(b)] for a, b in td.tree.edges]},
            "path_decomposition": [sorted(map(str, b)) for b in pd.bags],
        })
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pw2dim",
        description="Dimension of posets whose cover graphs have pathwidth at most 2.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, func, help_, fmt=("json",)):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=list(fmt), default=fmt[0])
        p.add_argument("--pretty", action="store_true", help="indent JSON output")
        p.add_argument("--cap", type=int, default=None, help="override the size cap")
        return p

    p = add("dimension", cmd_dimension, "exact dimension (or test dim <= t)")
    p.add_argument("--input", "-i")
    p.add_argument("--t", type=int, default=None)

    p = add("realize", cmd_realize, "realizer with at most 17 extensions")
    p.add_argument("--input", "-i")
    p.add_argument("--no-verify", action="store_true", help="skip verification (benchmarking only)")

    p = add("recognize", cmd_recognize, "F-minor test and PNO structure of every block")
    p.add_argument("--input", "-i")

    p = add("embed", cmd_embed, "canonical embedding", fmt=("dot", "json"))
    p.add_argument("--input", "-i")

    p = add("check-s5", cmd_check_s5, "S5 subposet and K4 minor in the cover graph")
    p.add_argument("--input", "-i")

    p = add("generate", cmd_generate, "random instance", fmt=("json", "dot"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=12)
    p.add_argument("--blocks", type=int, default=None)
    p.add_argument("--mode", choices=["fminorfree", "pw2"], default="fminorfree")
    p.add_argument("--kind", choices=sorted(GENERATORS), default="pw2")

    p = add("widths", cmd_widths, "exact treewidth and pathwidth", fmt=("json", "dot"))
    p.add_argument("--input", "-i")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NotFMinorFree as exc:
        out = {"f_minor_free": False, "message": str(exc)}
        if exc.embedding is not None:
            out["certificate"] = io.minor_to_json(exc.pattern, exc.embedding)
        _emit(args, out)
        return EXIT_NEGATIVE
    except (io.InputError, CycleError, UnknownElement, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TheoremViolation as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except Pw2DimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
