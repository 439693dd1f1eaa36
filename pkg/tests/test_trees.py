import pytest

from boolform.boolfun import BoolFunc, Literal
from boolform.trees import (AND, OR, ModelId, StructureError, Tree,
                            compute_function, dual_tree, format_tree,
                            parse_tree)


def leaf(v, pos=True, model=ModelId.CATALAN):
    return Tree.leaf(Literal(v, pos), model)


def test_parse_format_roundtrip():
    text = "(and x1 (or x2 ~x3))"
    t = parse_tree(text, ModelId.CATALAN)
    assert format_tree(t) == text


def test_compute_function_worked_example():
    t = parse_tree("(or x1 (and x2 x3))", ModelId.CATALAN)
    assert compute_function(t).to_string() == "n:3:ea"


def test_binary_models_reject_wide_nodes():
    with pytest.raises(StructureError):
        parse_tree("(and x1 x2 x3)", ModelId.CATALAN)
    with pytest.raises(StructureError):
        parse_tree("(or x1 x2 x3)", ModelId.COMM)


def test_stratified_models_reject_repeated_connective():
    with pytest.raises(StructureError):
        parse_tree("(and x1 (and x2 x3))", ModelId.ASSOC)
    # opposite connectives nest fine
    parse_tree("(and x1 (or x2 x3))", ModelId.ASSOC)


def test_unary_internal_nodes_rejected():
    with pytest.raises(StructureError):
        Tree.internal(AND, [leaf(1)], ModelId.CATALAN)


def test_nonplane_children_are_sorted():
    a = parse_tree("(and x2 x1)", ModelId.COMM)
    b = parse_tree("(and x1 x2)", ModelId.COMM)
    assert a == b
    assert hash(a) == hash(b)
    # plane trees keep the order
    assert (parse_tree("(and x2 x1)", ModelId.CATALAN)
            != parse_tree("(and x1 x2)", ModelId.CATALAN))


def test_dual_tree_negates_function_with_flipped_literals():
    t = parse_tree("(or x1 (and x2 ~x3))", ModelId.CATALAN)
    d = dual_tree(t)
    f = compute_function(t, 3)
    g = compute_function(d, 3)
    # De Morgan: conn swap + literal flip computes the negation
    assert g == f.negate()
    assert d.conn == AND


def test_dual_tree_is_involution():
    t = parse_tree("(and (or x1 x2) (or ~x1 x2))", ModelId.COMM)
    assert dual_tree(dual_tree(t)) == t


def test_nodes_and_leaves_traversal():
    t = parse_tree("(or x1 (and x2 x3))", ModelId.CATALAN)
    paths = [p for p, _ in t.nodes()]
    assert () in paths and (1, 0) in paths
    assert [str(l) for l in t.leaves()] == ["x1", "x2", "x3"]
    assert t.variables() == {1, 2, 3}


def test_compute_function_with_explicit_n():
    t = leaf(1)
    f = compute_function(t, 3)
    assert f.n == 3
    assert f == BoolFunc.from_literal(Literal(1, True), 3)
