import pytest
from hypothesis import given
from hypothesis import strategies as st

from homlie.algebra import HomLieAlgebra
from homlie.catalog import catalog_get, catalog_list
from homlie.errors import ParseError, SemanticError
from homlie.linalg import Matrix
from homlie.textfmt import DefinitionDocument, parse, serialize, serialize_algebra, tokenize


@pytest.mark.parametrize("name", catalog_list())
def test_catalog_round_trip(name):
    doc = catalog_get(name).document
    text = serialize(doc)
    again = parse(text)
    assert again == doc
    assert serialize(again) == text


def test_rational_normalized_on_output():
    doc = parse("algebra A { dim 1; alpha = [2/4]; }")
    assert "alpha = [1/2];" in serialize(doc)


def test_comments_and_whitespace():
    doc = parse("# a comment\nalgebra A{dim 2;bracket(1,2)=[1,0];}  # trailing\n")
    assert doc.algebra("A").bracket((1, 0), (0, 1)) == (1, 0)


@pytest.mark.parametrize("text,line", [
    ("algebra A { dim 2; bracket(1,1) = [0,0]; }", 1),
    ("algebra A { dim 2; bracket(2,1) = [0,0]; }", 1),
    ("algebra A { dim 2;\n bracket(1,3) = [0,0]; }", 2),
    ("algebra A { dim 2; bracket(1,2) = [0,0,0]; }", 1),
    ("algebra A { dim 1; }\nalgebra A { dim 1; }", 2),
    ("algebra A { dim 2; alpha = [1,0]; }", 1),
    ("algebra A { bracket(1,2) = [0,0]; }", 1),
    ("action A -> B { }", 1),
    ("algebra A { dim 1; }\nsubspace A in A { }", 2),
])
def test_semantic_errors(text, line):
    with pytest.raises(SemanticError) as exc:
        parse(text)
    assert exc.value.line == line


@pytest.mark.parametrize("text", [
    "algebra A { dim 1 }",
    "algebra A { dim 1; alpha = [1/0]; }",
    "algebra A { dim x; }",
    "widget A { }",
    "algebra A { dim 1; colour = 3; }",
    "algebra A { dim 1; alpha = [1 0]; }",
    "algebra A { dim 1; } $",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_tokenizer_tracks_lines():
    toks = tokenize("algebra\n\nA")
    assert [t.line for t in toks] == [1, 3]


def test_action_and_subspace_blocks():
    doc = parse("""
    algebra A { dim 2; }
    algebra B { dim 1; }
    action A -> B { act(2,1) = [3]; }
    subspace S in A { vec = [2,4]; vec = [1,2]; }
    """)
    assert doc.action("A", "B").act((0, 1), (1,)) == (3,)
    assert doc.subspace("S").rank == 1
    assert doc.subspaces["S"][0] == "A"
    with pytest.raises(SemanticError):
        doc.action("B", "A")


def test_empty_document():
    assert parse("# nothing\n") == DefinitionDocument()


coeff = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.just(n),
    st.dictionaries(st.sampled_from([(i, j) for i in range(n) for j in range(i + 1, n)] or [(0, 1)]),
                    st.lists(coeff, min_size=n, max_size=n), max_size=3),
    st.lists(st.lists(coeff, min_size=n, max_size=n), min_size=n, max_size=n),
)))
def test_algebra_round_trip(data):
    n, brackets, alpha = data
    brackets = {k: v for k, v in brackets.items() if k[1] < n}
    L = HomLieAlgebra.from_brackets("R", n, brackets, Matrix.from_rows(alpha))
    assert parse(serialize_algebra(L)).algebra("R") == L
