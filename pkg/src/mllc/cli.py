"""Command-line interface.

Exit codes: 0 success / yes, 1 no (incorrect, unprovable, not orthogonal...),
2 usage, file or parse error, 3 prover search inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .catalog import Catalog, UnknownConnective, default_catalog
from .correctness import check_correct
from .dot import graph_dot, meeting_dot, structure_dot
from .formulas import FormulaError, parse_sequent
from .partitions import (
    PartitionError,
    complement,
    is_connective_pair,
    is_decomposable,
    orthogonal,
    parse_partition,
    parse_partition_set,
)
from .proofs import ProofError, check_proof, proof_from_json, proof_to_json
from .rewrite import expand_all, normalize
from .sequentialize import NotCorrect, SearchInconclusive, prove, sequentialize
from .structures import ProofStructure, StructureError, desequentialize, em_structure
from .switchings import RegimeError, correctness_graph

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class CliError(Exception):
    pass


def _dump(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def _load_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise CliError(f"{path}: invalid JSON: {e}") from None


def _literal(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise CliError(f"invalid literal {text!r}: {e}") from None


def _load_structure(path: str) -> ProofStructure:
    return ProofStructure.from_json(_load_json(path)).require_valid()


def _emit(args: argparse.Namespace, text: str) -> None:
    out = getattr(args, "output", None)
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _yes(b: bool) -> str:
    return "yes" if b else "no"


# -- subcommands ----------------------------------------------------------------


def cmd_ortho(args) -> int:
    p, q = parse_partition(_literal(args.p)), parse_partition(_literal(args.q))
    ok = orthogonal(p, q)
    dot = meeting_dot(p, q)
    if args.json:
        print(_dump({"p": p.to_json(), "q": q.to_json(), "orthogonal": ok, "dot": dot}))
    else:
        print(f"{p} and {q} are {'orthogonal' if ok else 'not orthogonal'}")
        print(dot, end="")
    return EXIT_OK if ok else EXIT_NO


def cmd_complement(args) -> int:
    P = parse_partition_set(_literal(args.P), args.arity)
    C = complement(P)
    if args.json:
        print(_dump({"partitions": P.to_json(), "complement": C.to_json()}))
    else:
        for p in C:
            print(p)
    return EXIT_OK


def cmd_pair_check(args) -> int:
    P, Q = parse_partition_set(_literal(args.P)), parse_partition_set(_literal(args.Q))
    ok = is_connective_pair(P, Q)
    print(_dump({"pair": ok}) if args.json else ("connective pair" if ok else "not a connective pair"))
    return EXIT_OK if ok else EXIT_NO


def cmd_decomposable(args) -> int:
    P = parse_partition_set(_literal(args.P))
    shape = is_decomposable(P)
    if args.json:
        print(_dump({"decomposable": shape is not None, "witness": None if shape is None else str(shape)}))
    else:
        print("non-decomposable" if shape is None else str(shape))
    return EXIT_OK if shape is not None else EXIT_NO


def cmd_check(args) -> int:
    s = _load_structure(args.structure)
    v = check_correct(s, args.regime, sample=args.sample, seed=args.seed, strict=args.strict)
    print(_dump(v.to_json()))
    if args.dot:
        out = Path(args.dot)
        out.mkdir(parents=True, exist_ok=True)
        (out / "structure.dot").write_text(structure_dot(s))
        if v.counterexample is not None:
            g = correctness_graph(s, v.counterexample.switching)
            (out / "counterexample.dot").write_text(graph_dot(g))
    return EXIT_OK if v.correct else EXIT_NO


def cmd_sequentialize(args) -> int:
    s = _load_structure(args.structure)
    try:
        proof = sequentialize(s)
    except NotCorrect as e:
        print(_dump({"error": "NotCorrect", "message": str(e)}) if args.json else f"NotCorrect: {e}")
        return EXIT_NO
    _emit(args, _dump(proof_to_json(proof)))
    return EXIT_OK


def cmd_deseq(args) -> int:
    proof = proof_from_json(_load_json(args.proof))
    if proof.active is None and proof.premises:
        raise CliError("cannot match the rule applications of the proof to its premises")
    if not check_proof(proof, extended=True):
        raise CliError("the proof is not valid")
    _emit(args, _dump(desequentialize(proof, mode=args.mode).to_json()))
    return EXIT_OK


def cmd_prove(args) -> int:
    goal = parse_sequent(args.sequent)
    try:
        proof = prove(goal, extended=args.extended_axioms,
                      max_formulas=args.max_formulas, max_connectives=args.max_connectives)
    except SearchInconclusive as e:
        print(_dump({"result": "inconclusive", "message": str(e)}) if args.json else f"inconclusive: {e}")
        return EXIT_INCONCLUSIVE
    if proof is None:
        print(_dump({"result": "unprovable"}) if args.json else "unprovable")
        return EXIT_NO
    _emit(args, _dump(proof_to_json(proof)))
    return EXIT_OK


def _rewrite(args, run) -> int:
    s = _load_structure(args.structure)
    log: list[str] = []
    out = run(s, log)
    if args.json:
        _emit(args, _dump({"structure": out.to_json(), "log": log}))
        return EXIT_OK
    _emit(args, _dump(out.to_json()))
    stream = sys.stdout if args.output else sys.stderr
    for line in log:
        print(line, file=stream)
    return EXIT_OK


def cmd_cutelim(args) -> int:
    return _rewrite(args, normalize)


def cmd_expand(args) -> int:
    return _rewrite(args, expand_all)


def tradeoff_rows(catalog: Catalog, names: list[str] | None = None, max_arity: int = 4) -> list[dict[str, Any]]:
    """Per connective: is EM(C) DR-correct, partition-correct and provable, and is C decomposable."""
    rows = []
    for c in catalog:
        if names is not None and c.name not in names:
            continue
        if names is None and c.arity > max_arity:
            continue
        em = em_structure(c.name, catalog=catalog)
        rows.append({
            "connective": c.name,
            "arity": c.arity,
            "drCorrect": check_correct(em, "danosRegnier").correct,
            "partitionCorrect": check_correct(em, "partition").correct,
            "provable": prove(em.terminal_formulas(), catalog) is not None,
            "decomposable": is_decomposable(c.rules) is not None,
        })
    return rows


def cmd_experiment(args) -> int:
    if args.name != "tradeoff":
        raise CliError(f"unknown experiment {args.name!r}")
    catalog = default_catalog()
    names = None
    if args.catalog:
        extra = Catalog.load([args.catalog])
        catalog = catalog.merge(extra)
        names = extra.names()
    errors = catalog.validation_errors()
    if errors:
        raise CliError("; ".join(errors))
    rows = tradeoff_rows(catalog, names, args.max_arity)
    if args.json:
        print(_dump(rows))
        return EXIT_OK
    cols = ("drCorrect", "partitionCorrect", "provable", "decomposable")
    heads = ("connective", "DR-correct EM", "partition-correct EM", "EM provable", "decomposable")
    width = max(len(heads[0]), *(len(r["connective"]) for r in rows))
    print("  ".join([heads[0].ljust(width), *heads[1:]]))
    for r in rows:
        cells = [_yes(r[c]).ljust(len(h)) for c, h in zip(cols, heads[1:])]
        print("  ".join([r["connective"].ljust(width), *cells]).rstrip())
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    parser = argparse.ArgumentParser(prog="mllc", description="Proof structures with generalized multiplicative connectives.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ortho", parents=[common], help="orthogonality of two partitions, with meeting-graph DOT")
    p.add_argument("p", help="partition literal such as [[1,2],[3,4]]")
    p.add_argument("q")
    p.set_defaults(func=cmd_ortho)

    p = sub.add_parser("complement", parents=[common], help="orthogonal complement of a partition set")
    p.add_argument("P", help="partition-set literal such as [[[1,2],[3,4]],[[1,3],[2,4]]]")
    p.add_argument("--arity", type=int)
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("pair-check", parents=[common], help="are P and Q mutual complements")
    p.add_argument("P")
    p.add_argument("Q")
    p.set_defaults(func=cmd_pair_check)

    p = sub.add_parser("decomposable", parents=[common], help="tensor/par formula with partition set P")
    p.add_argument("P")
    p.set_defaults(func=cmd_decomposable)

    p = sub.add_parser("check", parents=[common], help="correctness verdict for a structure file")
    p.add_argument("structure")
    p.add_argument("--regime", default="partition", help="par, parn, dr or partition (default)")
    p.add_argument("--sample", type=int, metavar="K", help="check K random switchings; can only refute")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true",
                   help="partition regime: require every partition choice to work, not just one")
    p.add_argument("--dot", metavar="DIR", help="write structure.dot (and counterexample.dot) here")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sequentialize", parents=[common], help="sequent proof of a correct structure")
    p.add_argument("structure")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sequentialize)

    p = sub.add_parser("deseq", parents=[common], help="proof structure of a sequent proof")
    p.add_argument("proof")
    p.add_argument("--mode", choices=("atomic", "extended"))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_deseq)

    p = sub.add_parser("prove", parents=[common], help="cut-free proof search")
    p.add_argument("sequent", help='e.g. "A * B, ~A | ~B"')
    p.add_argument("--extended-axioms", action="store_true", help="allow axioms on compound formulas")
    p.add_argument("--max-formulas", type=int, default=10)
    p.add_argument("--max-connectives", type=int, default=40)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_prove)

    for name, func, text in (("cutelim", cmd_cutelim, "eliminate cuts"),
                             ("expand", cmd_expand, "expand every axiom to atomic axioms")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("structure")
        p.add_argument("-o", "--output")
        p.set_defaults(func=func)

    p = sub.add_parser("experiment", parents=[common], help="run a named experiment (tradeoff)")
    p.add_argument("name")
    p.add_argument("--catalog", help="file or directory of connectives; rows only for those")
    p.add_argument("--max-arity", type=int, default=4, help="largest built-in arity listed (default 4)")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, StructureError, FormulaError, PartitionError, ProofError, RegimeError,
            UnknownConnective, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
