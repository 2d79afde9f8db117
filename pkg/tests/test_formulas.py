import pytest
from hypothesis import given
from hypothesis import strategies as st

from mllc.catalog import default_catalog
from mllc.formulas import (
    Apply,
    Atom,
    FormulaError,
    FormulaSyntaxError,
    Par,
    Tensor,
    atom_balance,
    build,
    dual,
    parse_formula,
    parse_sequent,
    sequent_key,
    size,
)

CAT = default_catalog()
NAMES = ["tensor", "par", "tensor3", "par3", "G", "G*", "C3", "C3*"]


def formulas(depth=3):
    atoms = st.builds(Atom, st.sampled_from(["A", "B", "C", "x1"]), st.booleans())
    if depth == 0:
        return atoms

    def compound(name):
        c = CAT[name]
        return st.lists(formulas(depth - 1), min_size=c.arity, max_size=c.arity).map(lambda a: build(name, a, CAT))

    return st.one_of(atoms, *[compound(n) for n in NAMES])


def test_printing():
    f = parse_formula("G((A * B), ~C, C3(A,B,C), (A | ~B))")
    assert str(f) == "G((A * B),~C,C3(A,B,C),(A | ~B))"
    assert isinstance(f, Apply) and f.connective == "G"


def test_binary_spellings_are_canonical():
    assert parse_formula("tensor(A,B)") == Tensor(Atom("A"), Atom("B"))
    assert parse_formula("par2(A,B)") == Par(Atom("A"), Atom("B"))


def test_negation_is_pushed_to_atoms():
    assert parse_formula("~(A * B)") == Par(Atom("A", True), Atom("B", True))
    assert parse_formula("~~A") == Atom("A")
    assert parse_formula("~G(A,B,C,D)") == parse_formula("G*(~A,~B,~C,~D)")


def test_dual_uses_catalog_pairs():
    assert dual(parse_formula("C3(A,B,C)")) == parse_formula("C3*(~A,~B,~C)")
    assert dual(parse_formula("tensor3(A,B,C)")) == parse_formula("par3(~A,~B,~C)")


@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(str(f)) == f


@given(formulas())
def test_dual_is_an_involution(f):
    assert dual(dual(f)) == f
    assert size(dual(f)) == size(f)


@given(formulas())
def test_balance_of_dual_pair_is_zero(f):
    assert not any(atom_balance([f, dual(f)]).values())


@pytest.mark.parametrize("text", ["", "(A * B", "A * B", "(A & B)", "G(A,B)", "Q(A)", "A B", "(A * B))"])
def test_syntax_errors(text):
    with pytest.raises(FormulaError):
        parse_formula(text)


def test_syntax_error_position():
    with pytest.raises(FormulaSyntaxError) as e:
        parse_formula("(A * B")
    assert e.value.pos == 6


def test_sequents():
    s = parse_sequent("|- G(A,B,C,D), ~A, (B | C)")
    assert [str(f) for f in s] == ["G(A,B,C,D)", "~A", "(B | C)"]
    assert parse_sequent("⊢ A, ~A") == [Atom("A"), Atom("A", True)]
    assert sequent_key(parse_sequent("B, A")) == sequent_key(parse_sequent("A, B"))


def test_build_arity_check():
    with pytest.raises(FormulaError):
        build("G", [Atom("A")])
