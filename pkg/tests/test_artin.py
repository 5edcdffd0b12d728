import pytest

from bicolor.artin import (
    FREE_TIMES_Z,
    Z,
    Z2,
    ArtinFormatError,
    ArtinTree,
    LabeledGraph,
    artin_to_decomposition,
    classify_artin,
    format_labeled_graph,
    is_3manifold_artin,
    is_big,
    is_qi_to_right_angled_tree_group,
    parse_artin_tree,
    parse_labeled_graph,
)
from bicolor.graph import Color, are_isomorphic
from bicolor.refine import is_minimal, minimize

from .helpers import g, tree_sweep

B, W = Color.BLACK, Color.WHITE


def star(*weights):
    return ArtinTree.from_weights([(0, i + 1, w) for i, w in enumerate(weights)], len(weights) + 1)


def test_parse_and_format():
    t = parse_artin_tree("v a\nv b\nv c\ne a b 2\ne b c 4  # heavy\n")
    assert t.vertices == ("a", "b", "c")
    assert t.edges == ((0, 1, 2), (1, 2, 4))
    assert parse_artin_tree(format_labeled_graph(t)) == t


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("v a\nv b\ne a b 1", "below 2"),
        ("v a\ne a z 2", "unknown vertex"),
        ("v a\nv b\ne a b x", "not an integer"),
        ("v a\nv b\nv c", "not a tree"),
        ("v a\nv b\nv c\ne a b 2\ne b c 2\ne a c 2", "not a tree"),
        ("v a\nv b\ne a b 2\ne b a 3", "duplicate edge"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ArtinFormatError) as info:
        parse_artin_tree(text)
    assert fragment in str(info.value)


def test_is_big_examples():
    assert is_big(ArtinTree.path([2, 2, 2]))
    assert not is_big(ArtinTree.path([4]))
    assert not is_big(star(2, 2))
    assert is_big(star(2, 3))
    assert not is_big(ArtinTree.from_weights([], 1))


def test_conversion_worked_example():
    out = artin_to_decomposition(ArtinTree.path([2, 4, 3]))
    assert are_isomorphic(out, g("bwbw", [(0, 1), (1, 2), (2, 3)])) is not None


def test_conversion_right_angled_path():
    assert are_isomorphic(artin_to_decomposition(ArtinTree.path([2, 2, 2])), g("bb", [(0, 1)])) is not None


def test_conversion_two_trefoils():
    assert are_isomorphic(artin_to_decomposition(ArtinTree.path([3, 3])), g("wbw", [(0, 1), (1, 2)])) is not None


def test_conversion_cascades_odd_edges():
    # a 3-3-3 path collapses to one black vertex carrying three white leaves
    out = artin_to_decomposition(ArtinTree.path([3, 3, 3]))
    assert are_isomorphic(out, g("bwww", [(0, 1), (0, 2), (0, 3)])) is not None


def test_conversion_rejects_small_trees():
    with pytest.raises(ValueError):
        artin_to_decomposition(star(2, 2))


def test_classify_examples():
    assert classify_artin(ArtinTree.from_weights([], 1)) == Z
    assert classify_artin(ArtinTree.path([2])) == Z2
    assert classify_artin(ArtinTree.path([3])) == FREE_TIMES_Z
    assert classify_artin(star(2, 2, 2)) == FREE_TIMES_Z
    qi = classify_artin(ArtinTree.path([2, 4, 3]))
    assert qi.kind == "GraphManifold"
    assert qi.graph == g("bw", [(0, 1)])


def test_right_angled_predicate_examples():
    assert is_qi_to_right_angled_tree_group(ArtinTree.path([2, 2, 2]))
    assert not is_qi_to_right_angled_tree_group(ArtinTree.path([2, 4, 3]))
    assert is_qi_to_right_angled_tree_group(star(4, 4))
    assert not is_qi_to_right_angled_tree_group(ArtinTree.path([2, 4, 2]))
    assert not is_qi_to_right_angled_tree_group(star(2, 2))


def test_gordon_criterion():
    assert is_3manifold_artin(ArtinTree.path([3, 5, 7]))
    tri = LabeledGraph(("a", "b", "c"), ((0, 1, 2), (1, 2, 2), (0, 2, 2)))
    assert is_3manifold_artin(tri)
    assert not is_3manifold_artin(LabeledGraph(("a", "b", "c"), ((0, 1, 2), (1, 2, 3), (0, 2, 5))))
    square = LabeledGraph(("a", "b", "c", "d"), ((0, 1, 2), (1, 2, 2), (2, 3, 2), (0, 3, 2)))
    assert not is_3manifold_artin(square)
    mixed = parse_labeled_graph("v a\nv b\nv c\nv d\nv e\ne a b 2\ne b c 2\ne a c 2\ne d e 7")
    assert is_3manifold_artin(mixed)


def test_sweep_all_two_trees_are_black():
    for t in tree_sweep(6, (2,)):
        if is_big(t):
            assert set(artin_to_decomposition(t).colors) == {B}


def test_sweep_odd_edges_give_white():
    for t in tree_sweep(5, (2, 3, 4)):
        if is_big(t) and any(w % 2 for _, _, w in t.edges):
            assert W in artin_to_decomposition(t).colors


def test_classification_total_and_consistent():
    for t in tree_sweep(5, (2, 3, 4)):
        qi = classify_artin(t)
        if not is_big(t):
            assert qi.graph is None
        else:
            assert qi.kind == "GraphManifold" and is_minimal(qi.graph)
            assert are_isomorphic(qi.graph, minimize(artin_to_decomposition(t))[0]) is not None
