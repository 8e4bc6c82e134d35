"""Command-line front end.

Exit codes: 0 success, 1 parse/validation error, 2 capability error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .annotate import NotACycleError, annotate_cycle, build_annotation_index, unpack
from .complex import ComplexError, SimplicialComplex, betti, read_chain, read_complex
from .errors import CapacityError
from .optbasis import shortest_homology_basis
from .opthom import DEFAULT_G_CAP, OptimalCycles
from .queries import are_homologous, is_null_homologous, max_independent_subset


class UsageError(ValueError):
    pass


def _simplex_token(s: Sequence[int]) -> str:
    return "-".join(map(str, s))


def _bits_str(bits: int, g: int) -> str:
    return "".join(str(b) for b in unpack(bits, g)) if g else "-"


def _chain_simplices(k: SimplicialComplex, chain) -> list[list[int]]:
    return [list(k.simplices[chain.dim][i]) for i in chain.ids()]


def _chain_str(k: SimplicialComplex, chain) -> str:
    return " ".join(_simplex_token(s) for s in _chain_simplices(k, chain))


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in lines))


def _load(args) -> SimplicialComplex:
    return read_complex(args.complex, largest_component=args.largest_component)


def _require_dim1(args) -> None:
    if args.dim != 1:
        raise CapacityError(f"{args.command} is only available for dimension 1 (got --dim {args.dim})")


def cmd_betti(args) -> None:
    k = _load(args)
    if not 0 <= args.dim <= k.dim:
        raise UsageError(f"--dim {args.dim} out of range 0..{k.dim}")
    b = betti(k, args.dim)
    _emit(args, {"dim": args.dim, "betti": b}, [str(b)])


def _index(args, k: SimplicialComplex):
    if not 1 <= args.dim <= k.dim:
        raise UsageError(f"--dim {args.dim} out of range 1..{k.dim}")
    return build_annotation_index(k, args.dim)


def cmd_annotate(args) -> None:
    k = _load(args)
    idx = _index(args, k)
    g = idx.g
    lines = [f"# dim {idx.dim} g {g}"]
    entries = []
    for sid, s in enumerate(k.simplices[idx.dim]):
        lines.append(" ".join(map(str, s)) + " " + _bits_str(idx.ann[sid], g))
        entries.append({"simplex": list(s), "annotation": list(idx.vector(sid))})
    for i, z in enumerate(idx.homology_basis):
        lines.append(f"# basis {i}: {_chain_str(k, z)}")
    _emit(
        args,
        {
            "dim": idx.dim,
            "g": g,
            "annotations": entries,
            "homology_basis": [_chain_simplices(k, z) for z in idx.homology_basis],
        },
        lines,
    )


def cmd_query(args) -> None:
    k = _load(args)
    idx = _index(args, k)
    chains = [read_chain(path, k, args.dim) for path in args.cycles]
    if args.kind == "null":
        if len(chains) != 1:
            raise UsageError("query null takes exactly one cycle file")
        result = is_null_homologous(idx, chains[0])
    elif args.kind == "homologous":
        if len(chains) != 2:
            raise UsageError("query homologous takes exactly two cycle files")
        result = are_homologous(idx, chains[0], chains[1])
    else:
        result = max_independent_subset(idx, chains)
    anns = [list(unpack(annotate_cycle(idx, z), idx.g)) for z in chains]
    text = ("true" if result else "false") if isinstance(result, bool) else " ".join(map(str, result))
    _emit(args, {"query": args.kind, "result": result, "annotations": anns}, [text])


def cmd_basis(args) -> None:
    _require_dim1(args)
    k = _load(args)
    idx = _index(args, k)
    res = shortest_homology_basis(k, idx, threads=args.threads)
    lines = [f"g {res.g}", f"weight {res.total_weight!r}"]
    cycles = []
    for i, (z, w, c) in enumerate(zip(res.cycles, res.weights, res.candidates)):
        lines.append(f"cycle {i} weight {w!r} class {_bits_str(c.annotation, res.g)}: {_chain_str(k, z)}")
        cycles.append(
            {
                "weight": w,
                "annotation": list(unpack(c.annotation, res.g)),
                "source": k.vertices[c.source],
                "edge": list(k.simplices[1][c.edge]),
                "edges": _chain_simplices(k, z),
            }
        )
    _emit(args, {"g": res.g, "total_weight": res.total_weight, "cycles": cycles}, lines)


def cmd_shortest_cycle(args) -> None:
    _require_dim1(args)
    k = _load(args)
    idx = _index(args, k)
    if args.cycle is None and not args.all_classes:
        raise UsageError("give --cycle FILE or --all-classes")
    solver = OptimalCycles.compute(k, idx, g_cap=args.g_cap, threads=args.threads)
    if args.all_classes:
        classes = list(range(1 << idx.g))
    else:
        z = read_chain(args.cycle, k, 1)
        classes = [annotate_cycle(idx, z)]
    lines = [f"g {idx.g}"]
    results = []
    for h in classes:
        opt = solver.optimum(h)
        lines.append(f"class {_bits_str(h, idx.g)} weight {opt.weight!r}: {_chain_str(k, opt.cycle)}".rstrip())
        results.append(
            {
                "class": list(unpack(h, idx.g)),
                "weight": opt.weight,
                "edges": _chain_simplices(k, opt.cycle),
                "components": len(opt.components),
            }
        )
    _emit(args, {"g": idx.g, "results": results}, lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=1, help="homology dimension p (default 1)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--largest-component", action="store_true", help="keep only the largest connected component")
    common.add_argument("--g-cap", type=int, default=DEFAULT_G_CAP, help="maximum Betti number for the covering graph")
    common.add_argument("--seed", type=int, default=None, help="accepted for compatibility; all algorithms are deterministic")
    common.add_argument("--threads", type=int, default=1, help="worker threads for per-source searches")

    parser = argparse.ArgumentParser(prog="z2annot", description="Z2 homology annotations for simplicial complexes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", parents=[common], help="print the Betti number")
    p.add_argument("complex")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("annotate", parents=[common], help="print simplex annotations and the homology basis")
    p.add_argument("complex")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("query", parents=[common], help="null / homologous / independent queries")
    p.add_argument("kind", choices=["null", "homologous", "independent"])
    p.add_argument("complex")
    p.add_argument("cycles", nargs="*")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("basis", parents=[common], help="shortest homology basis of H_1")
    p.add_argument("complex")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("shortest-cycle", parents=[common], help="shortest cycle per homology class")
    p.add_argument("complex")
    p.add_argument("--cycle", default=None, help="cycle file; report the shortest homologous cycle")
    p.add_argument("--all-classes", action="store_true", help="report every class")
    p.set_defaults(func=cmd_shortest_cycle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ComplexError, NotACycleError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
