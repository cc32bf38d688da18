import pytest
from hypothesis import given, strategies as st

from cpeg.errors import FormatError
from cpeg.trees import (
    EMPTY, Node, Nodes, Str, concat, concat_all, deserialize, from_data,
    make_node, node, serialize, to_text,
)

INT_123 = node("Int", "123")
INT_45 = node("Int", "45")


def test_string_merge():
    assert concat(Str("12"), Str("3")) == Str("123")


def test_node_absorbs_strings():
    assert concat(INT_123, Str("*")) == INT_123
    assert concat(Str("*"), INT_123) == INT_123


def test_order_preserved():
    assert concat(INT_123, INT_45) == Nodes(INT_123.items + INT_45.items)
    assert concat(INT_45, INT_123) != concat(INT_123, INT_45)


def test_make_node():
    assert make_node("Int", Str("123")) == Nodes((Node("Int", Str("123")),))
    mul = make_node("Mul", concat(INT_123, INT_45))
    assert mul.items[0].children == Nodes((INT_123.items[0], INT_45.items[0]))
    assert make_node("L", EMPTY).items[0].children == Str("")


def test_nodes_is_never_empty():
    with pytest.raises(ValueError):
        Nodes(())


def test_sexpr():
    mul = node("Mul", INT_123, INT_45)
    assert serialize(mul) == "#Mul[#Int['123'] #Int['45']]"
    assert serialize(Str("")) == "''"
    assert serialize(node("S", "it's\n")) == r"#S['it\'s\n']"


def test_json():
    mul = node("Mul", INT_123, INT_45)
    assert serialize(mul, "json") == (
        '{"label": "Mul", "children": [{"label": "Int", "children": ["123"]}, '
        '{"label": "Int", "children": ["45"]}]}')
    assert serialize(Str("x"), "json") == '"x"'
    assert deserialize(serialize(concat(INT_123, INT_45), "json"), "json") == concat(INT_123, INT_45)


def test_text_outline():
    assert to_text(node("Mul", INT_123, INT_45)) == "#Mul\n  #Int '123'\n  #Int '45'"


@pytest.mark.parametrize("text", ["#A[", "#A['x'] junk", "'open", "#[x]", "#A[]"])
def test_bad_sexpr(text):
    with pytest.raises(FormatError):
        deserialize(text)


@pytest.mark.parametrize("data", [[], {"label": "A"}, {"label": "A", "children": []}, 3])
def test_bad_json(data):
    with pytest.raises(FormatError):
        from_data(data)


# -- properties -------------------------------------------------------------

texts = st.text(max_size=4)


def _forest(children):
    return st.lists(st.tuples(st.sampled_from(["A", "B", "C_1"]), children),
                    min_size=1, max_size=3).map(
        lambda items: Nodes(tuple(Node(label, kid) for label, kid in items)))


trees = st.recursive(texts.map(Str), _forest, max_leaves=10)


@given(trees, trees, trees)
def test_concat_associative(a, b, c):
    assert concat(concat(a, b), c) == concat(a, concat(b, c))


@given(trees)
def test_empty_is_identity(v):
    assert concat(EMPTY, v) == v == concat(v, EMPTY)


@given(st.lists(trees, max_size=5))
def test_concat_all_matches_fold(vs):
    expected = EMPTY
    for v in vs:
        expected = concat(expected, v)
    assert concat_all(vs) == expected


@given(trees)
def test_round_trip(v):
    for fmt in ("sexpr", "json"):
        assert deserialize(serialize(v, fmt), fmt) == v
