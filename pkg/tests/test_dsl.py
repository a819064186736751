from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from unidensity.dsl import Call, DSLError, IntervalLit, Num, build, compile_expr, parse, to_text
from unidensity.errors import StructuralError
from unidensity.families import LogBlocks, Squares
from unidensity.intervals import Periodic, Thin, materialize

CORPUS = [
    "squares",
    "squares()",
    "periodic(2, [0, 1))",
    "periodic(3, [0, 2))",
    "periodic(5, [1, 2), [3, 9/2))",
    "periodic(12, [0, 1), [2, 3), [5, 11/2), [7, 12))",
    "periodic(1, [0, 1))",
    "periodic(7/2, [1/4, 3/4))",
    "periodic(0.5, [0, 0.25))",
    "finite()",
    "finite([0, 1))",
    "finite([0, 1/3), [1/2, 5/6))",
    "finite([10, 20), [30, 40), [50, 60))",
    "logblocks(2, 1)",
    "logblocks(3, 1)",
    "logblocks(1, 1/2)",
    "logblocks(5/2, 5/4)",
    "powerblocks(2, 2)",
    "powerblocks(3, 1)",
    "powerblocks(2, 1)",
    "powerblocks(5/2, 3)",
    "tail(5)",
    "tail(0)",
    "tail(1000)",
    "tail(7/3)",
    "compl(squares)",
    "compl(periodic(2, [0, 1)))",
    "compl(compl(tail(3)))",
    "compl(powerblocks(2, 2))",
    "union(periodic(4, [0, 1)), periodic(4, [2, 3)))",
    "union(finite([0, 1)), translate(finite([0, 1)), 2))",
    "union(finite([0, 1)), logblocks(2, 1))",
    "translate(squares, 7/2)",
    "translate(periodic(2, [0, 1)), 1)",
    "translate(logblocks(2, 1), 3)",
    "translate(translate(squares, 1), 2)",
    "scale(periodic(2, [0, 1)), 3)",
    "scale(squares, 1/2)",
    "scale(logblocks(2, 1), 10)",
    "log(logblocks(2, 1))",
    "log(powerblocks(2, 2))",
    "log(periodic(2, [0, 1)))",
    "log(finite([1, 100)))",
    "thin(periodic(2, [0, 1)), squares)",
    "thin(squares, periodic(2, [0, 1)))",
    "thin(powerblocks(2, 2), compl(powerblocks(2, 2)))",
    "thin(periodic(2, [0, 1)), logblocks(2, 1))",
    "thin(tail(5), periodic(2, [0, 1)))",
    "thin(periodic(3, [0, 2)), thin(periodic(2, [0, 1)), squares))",
    "thin(thin(squares, squares), squares)",
    "union(thin(periodic(4, [0, 1)), squares), periodic(4, [2, 3)))",
    "scale(translate(compl(squares), 1), 2)",
    "translate(thin(logblocks(2, 1), periodic(3, [0, 1))), 100)",
    "  thin ( periodic ( 2 , [ 0 , 1 ) ) ,\n squares )  ",
]


def test_corpus_size():
    assert len(CORPUS) >= 50


@pytest.mark.parametrize("text", CORPUS)
def test_corpus_roundtrip(text):
    ast = parse(text)
    again = parse(to_text(ast))
    assert again == ast
    assert to_text(again) == to_text(ast)


@pytest.mark.parametrize("text", CORPUS)
def test_corpus_builds(text):
    A = compile_expr(text)
    assert A.mode in ("exact", "real")


def test_thin_ast():
    ast = parse("thin(periodic(2,[0,1)), squares)")
    assert ast == Call("thin", (Call("periodic", (Num(F(2)), IntervalLit(Num(F(0)), Num(F(1))))),
                                Call("squares")))
    A = build(ast)
    assert isinstance(A, Thin) and isinstance(A.a, Periodic) and isinstance(A.b, Squares)


def test_logblocks_builds_paper_set():
    A = compile_expr("logblocks(2,1)")
    assert isinstance(A, LogBlocks)
    assert materialize(A, 10.0).pairs()[0] == pytest.approx((1.0, 2.718281828459045))


def test_mixed_modes_promote():
    assert compile_expr("thin(periodic(2,[0,1)), logblocks(2,1))").mode == "real"
    assert compile_expr("thin(periodic(2,[0,1)), squares)").mode == "exact"


def test_pattern_exceeds_period():
    with pytest.raises(DSLError, match="exceeds period"):
        parse("periodic(2,[0,3))")


@pytest.mark.parametrize("text,line,col", [
    ("thin(periodic(2,[0,1)) squares)", 1, 24),
    ("periodic(2,[0,1])", 1, 16),
    ("foo(1)", 1, 1),
    ("periodic(2,\n  [0,1)", 2, 8),
    ("squares(1)", 1, 1),
    ("periodic(1/0, [0, 1))", 1, 12),
    ("thin(squares)", 1, 1),
    ("periodic(2, [0, 1)) extra", 1, 21),
    ("tail(5) $", 1, 9),
])
def test_error_positions(text, line, col):
    with pytest.raises(DSLError) as info:
        parse(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_error_lists_expected_tokens():
    with pytest.raises(DSLError) as info:
        parse("thin(periodic(2,[0,1)) squares)")
    assert "," in info.value.expected and ")" in info.value.expected


def test_semantic_errors_are_dsl_errors():
    for text in ("logblocks(1, 2)", "powerblocks(1, 1)", "tail(-1)", "powerblocks(2, 1/2)"):
        with pytest.raises(DSLError):
            compile_expr(text)


def test_overlap_detected_on_materialization():
    A = compile_expr("union(periodic(2,[0,1)), periodic(2,[0,1)))")
    with pytest.raises(StructuralError):
        materialize(A, 10)


def test_parse_without_validation():
    ast = parse("periodic(2,[0,3))", validate=False)
    assert to_text(ast) == "periodic(2, [0, 3))"


# generated expressions

nums = st.fractions(min_value=0, max_value=50, max_denominator=9).map(Num)


@st.composite
def intervals(draw):
    a, b = sorted(draw(st.tuples(nums, nums)), key=lambda n: n.value)
    return IntervalLit(a, b)


leaves = st.one_of(
    st.just(Call("squares")),
    st.builds(lambda n: Call("tail", (n,)), nums),
    st.builds(lambda ivs: Call("finite", tuple(ivs)), st.lists(intervals(), max_size=3)),
    st.builds(lambda n, ivs: Call("periodic", (n, *ivs)), nums, st.lists(intervals(), min_size=1, max_size=3)),
)

exprs = st.recursive(leaves, lambda kids: st.one_of(
    st.builds(lambda a: Call("compl", (a,)), kids),
    st.builds(lambda a, b: Call("thin", (a, b)), kids, kids),
    st.builds(lambda a, b: Call("union", (a, b)), kids, kids),
    st.builds(lambda a, n: Call("translate", (a, n)), kids, nums),
    st.builds(lambda a, n: Call("scale", (a, n)), kids, nums),
    st.builds(lambda a: Call("log", (a,)), kids),
), max_leaves=6)


@given(exprs)
def test_generated_roundtrip(ast):
    text = to_text(ast)
    assert parse(text, validate=False) == ast
    assert to_text(parse(text, validate=False)) == text
