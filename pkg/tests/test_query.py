import pytest
from hypothesis import given, settings, strategies as st

from regionlm.errors import QuerySyntaxError, UnknownStoredSet
from regionlm.query import (
    And,
    ContainedBy,
    Containing,
    Element,
    Or,
    Scale,
    StoredSet,
    Word,
    evaluate,
    format_query,
    format_ranked,
    parse_query,
    rank,
)
from regionlm.regions import RegionSet

from conftest import rs


class TestParse:
    def test_containing(self):
        assert parse_query("<doc> CONTAINING db") == Containing(Element("doc"), Word("db"))

    def test_scale(self):
        assert parse_query("0.2 SCALE banana") == Scale(0.2, Word("banana"))

    def test_precedence_containing_over_and(self):
        a = Element("a")
        assert parse_query("<a> CONTAINING b AND <a> CONTAINING c") == And(
            Containing(a, Word("b")), Containing(a, Word("c"))
        )

    def test_precedence_and_over_or(self):
        assert parse_query("a OR b AND c") == Or(Word("a"), And(Word("b"), Word("c")))

    def test_scale_binds_tightest(self):
        assert parse_query("0.5 SCALE <a> CONTAINING b") == Containing(Scale(0.5, Element("a")), Word("b"))

    def test_left_associative(self):
        assert parse_query("a OR b OR c") == Or(Or(Word("a"), Word("b")), Word("c"))
        assert parse_query("<a> CONTAINING b CONTAINED_BY <c>") == ContainedBy(
            Containing(Element("a"), Word("b")), Element("c")
        )

    def test_keywords_case_insensitive_words_lowercased(self):
        assert parse_query("<Doc> containing DB and $PageRank") == And(
            Containing(Element("Doc"), Word("db")), StoredSet("PageRank")
        )

    def test_numeric_word(self):
        assert parse_query("<doc> CONTAINING 2006") == Containing(Element("doc"), Word("2006"))

    def test_nested_scale(self):
        assert parse_query("2 SCALE 0.5 SCALE x") == Scale(2.0, Scale(0.5, Word("x")))

    @pytest.mark.parametrize(
        "text, pos",
        [
            ("<doc> CONTAINING", 16),
            ("(a OR b", 7),
            ("a b", 2),
            ("0 SCALE a", 0),
            ("0.5 a", 4),
            ("a AND )", 6),
            ("<doc CONTAINING a", 0),
            ("foo-bar", 0),
        ],
    )
    def test_syntax_errors_carry_position(self, text, pos):
        with pytest.raises(QuerySyntaxError) as info:
            parse_query(text)
        assert info.value.position == pos

    def test_fully_parenthesized_queries_parse(self):
        flat = "<shot> CONTAINED_BY ((0.18 SCALE <root>) OR (0.02 SCALE <video>) OR (0.4 SCALE <scene>) CONTAINING ni)"
        explicit = "<shot> CONTAINED_BY ((((0.18 SCALE <root>) OR (0.02 SCALE <video>)) OR ((0.4 SCALE <scene>) CONTAINING ni)))"
        assert parse_query(flat) == parse_query(explicit)


leaves = st.one_of(
    st.sampled_from(["db", "ir", "2006", "x"]).map(Word),
    st.sampled_from(["doc", "root", "sec", "a.b"]).map(Element),
    st.sampled_from(["PageRank", "_p1"]).map(StoredSet),
)
positive = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False)
exprs = st.recursive(
    leaves,
    lambda sub: st.one_of(
        st.builds(Scale, positive, sub),
        *(st.builds(cls, sub, sub) for cls in (Containing, ContainedBy, And, Or)),
    ),
    max_leaves=12,
)


@settings(max_examples=300, deadline=None)
@given(exprs)
def test_print_parse_round_trip(expr):
    assert parse_query(format_query(expr)) == expr


class TestEvaluate:
    def test_containing(self, six):
        out = evaluate(parse_query("<doc> CONTAINING db"), six)
        assert out.isclose(rs((1, 4, 2 / 3), (4, 7, 1 / 3)))

    def test_absent_word(self, six):
        assert len(evaluate(parse_query("<doc> CONTAINING zz"), six)) == 0

    def test_conjunction(self, six):
        out = evaluate(parse_query("(<doc> CONTAINING db) AND (<doc> CONTAINING ir)"), six)
        assert out.isclose(rs((1, 4, 2 / 3 * 1 / 3)))

    def test_stored_set(self, six):
        idx = six.register_stored_set("PageRank", [(1, 4, 0.7), (4, 7, 0.3)])
        out = evaluate(parse_query("$PageRank AND (<doc> CONTAINING db)"), idx)
        assert out.isclose(rs((1, 4, 0.7 * 2 / 3), (4, 7, 0.3 * 1 / 3)))

    def test_unknown_stored_set(self, six):
        with pytest.raises(UnknownStoredSet, match=r"\$PageRank"):
            evaluate(parse_query("$PageRank"), six)

    def test_pure(self, six):
        q = parse_query("(0.2 SCALE (<root> CONTAINING db)) OR (<doc> CONTAINING db)")
        assert evaluate(q, six) == evaluate(q, six)


class TestRank:
    def test_top_k(self):
        assert [tuple(r) for r in rank(rs((1, 4, 0.2), (4, 7, 0.5)), 1)] == [(4, 7, 0.5)]

    def test_ties_by_start(self):
        assert [r.start for r in rank(rs((4, 7, 0.5), (1, 4, 0.5), (1, 3, 0.5)), 3)] == [1, 1, 4]
        assert [r.end for r in rank(rs((1, 4, 0.5), (1, 3, 0.5)), 2)] == [3, 4]

    def test_zero_and_oversized_k(self):
        r = rs((1, 4, 0.2), (4, 7, 0.5))
        assert rank(r, 0) == []
        assert len(rank(r, 100)) == 2

    def test_negative_k(self):
        with pytest.raises(ValueError):
            rank(RegionSet(), -1)

    def test_ranked_tsv(self):
        assert format_ranked(rank(rs((1, 4, 2 / 3), (4, 7, 1 / 3)), 10)) == (
            "1\t1\t4\t0.666666667\n2\t4\t7\t0.333333333\n"
        )
