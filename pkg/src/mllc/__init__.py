"""Proof structures for multiplicative linear logic with generalized n-ary connectives."""

from .catalog import Catalog, default_catalog
from .correctness import Verdict, check_correct, find_splitting_terminal_link, is_connected_acyclic
from .formulas import dual, parse_formula, parse_sequent
from .partitions import (
    Connective,
    Partition,
    PartitionSet,
    complement,
    enumerate_partitions,
    is_connective_pair,
    is_decomposable,
    meeting_graph,
    orthogonal,
)
from .proofs import SequentProof, check_proof
from .rewrite import expand_all, expand_axiom, normalize, reduce_axiom_cut, reduce_main_cut
from .sequentialize import NotCorrect, SearchInconclusive, prove, random_proof, sequentialize
from .structures import ProofStructure, desequentialize, em_structure, from_sequent
from .switchings import Switching, correctness_graph, enumerate_switchings

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "check_correct",
    "check_proof",
    "complement",
    "Connective",
    "correctness_graph",
    "default_catalog",
    "desequentialize",
    "dual",
    "em_structure",
    "enumerate_partitions",
    "enumerate_switchings",
    "expand_all",
    "expand_axiom",
    "find_splitting_terminal_link",
    "from_sequent",
    "is_connected_acyclic",
    "is_connective_pair",
    "is_decomposable",
    "meeting_graph",
    "normalize",
    "NotCorrect",
    "orthogonal",
    "parse_formula",
    "parse_sequent",
    "Partition",
    "PartitionSet",
    "ProofStructure",
    "prove",
    "random_proof",
    "reduce_axiom_cut",
    "reduce_main_cut",
    "SearchInconclusive",
    "sequentialize",
    "SequentProof",
    "Switching",
    "Verdict",
]
