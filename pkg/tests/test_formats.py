import warnings
from fractions import Fraction

import pytest

from countkit import formats
from countkit.formats import (
    ClauseCountMismatch,
    CnfDocument,
    DuplicateHeader,
    DuplicateVpLine,
    DuplicateWeight,
    FormatError,
    LiteralOutOfRange,
    MalformedToken,
    MalformedValue,
    MalformedWeightLine,
    MissingHeader,
    MissingVpLine,
    NoSolutionLine,
    ParseWarning,
    PcnfDocument,
    ProjectionCountMismatch,
    ProjectionVarOutOfRange,
    TrackTagMismatch,
    UnterminatedClause,
    WcnfDocument,
    WeightOutOfRange,
    parse_mc,
    parse_pmc,
    parse_solution,
    parse_wmc,
    serialize,
    track_for_path,
    weight_to_text,
)


class TestParseMc:
    def test_worked_example(self, ex_mc_text):
        doc = parse_mc(ex_mc_text)
        assert doc.num_vars == 6
        assert doc.num_clauses == 4
        assert doc.clauses == ((-1, -2), (2, 3, -4), (4, 5), (4, 6))

    def test_comments_collected_but_ignored(self, ex_mc_text):
        doc = parse_mc(ex_mc_text)
        assert len(doc.comments) == 3
        stripped = "\n".join(
            l for l in ex_mc_text.splitlines() if not l.startswith("c")
        )
        assert parse_mc(stripped) == doc  # comments never affect equality

    def test_empty_formula(self):
        doc = parse_mc("p cnf 1 0\n")
        assert doc.num_vars == 1
        assert doc.clauses == ()

    def test_blank_and_space_lines_ignored(self):
        doc = parse_mc("p cnf 2 1\n\n   \n1 -2 0\n\n")
        assert doc.clauses == ((1, -2),)

    def test_crlf_line_endings(self):
        doc = parse_mc("p cnf 2 1\r\n1 2 0\r\n")
        assert doc.clauses == ((1, 2),)

    def test_bytes_input(self):
        doc = parse_mc(b"p cnf 2 1\n1 2 0\n")
        assert doc.clauses == ((1, 2),)

    def test_literal_out_of_range(self):
        with pytest.raises(LiteralOutOfRange):
            parse_mc("p cnf 2 1\n3 0\n")

    def test_missing_header(self):
        with pytest.raises(MissingHeader):
            parse_mc("1 2 0\n")
        with pytest.raises(MissingHeader):
            parse_mc("c only a comment\n")

    def test_duplicate_header(self):
        with pytest.raises(DuplicateHeader):
            parse_mc("p cnf 2 0\np cnf 2 0\n")

    def test_unterminated_final_clause(self):
        with pytest.raises(UnterminatedClause):
            parse_mc("p cnf 2 1\n1 2\n")

    def test_lenient_accepts_clause_across_lines(self):
        doc = parse_mc("p cnf 3 1\n1 2\n3 0\n")
        assert doc.clauses == ((1, 2, 3),)

    def test_strict_rejects_clause_across_lines(self):
        with pytest.raises(UnterminatedClause):
            parse_mc("p cnf 3 1\n1 2\n3 0\n", strict=True)

    def test_lenient_accepts_two_clauses_per_line(self):
        doc = parse_mc("p cnf 2 2\n1 0 2 0\n")
        assert doc.clauses == ((1,), (2,))

    def test_strict_rejects_two_clauses_per_line(self):
        with pytest.raises(MalformedToken):
            parse_mc("p cnf 2 2\n1 0 2 0\n", strict=True)

    def test_clause_count_mismatch_warns_leniently(self):
        with pytest.warns(ParseWarning):
            doc = parse_mc("p cnf 2 5\n1 0\n")
        assert doc.num_clauses == 1  # the body wins

    def test_clause_count_mismatch_strict(self):
        with pytest.raises(ClauseCountMismatch):
            parse_mc("p cnf 2 5\n1 0\n", strict=True)

    def test_non_integer_token(self):
        with pytest.raises(MalformedToken):
            parse_mc("p cnf 2 1\n1 x 0\n")

    def test_bad_header_fields(self):
        with pytest.raises(MalformedToken):
            parse_mc("p cnf 0 0\n")
        with pytest.raises(MalformedToken):
            parse_mc("p cnf 2 -1\n")
        with pytest.raises(MalformedToken):
            parse_mc("p wcnf 2 1\n1 0\n")

    def test_errors_carry_line_numbers(self):
        with pytest.raises(FormatError) as err:
            parse_mc("p cnf 2 1\n3 0\n")
        assert err.value.lineno == 2


class TestParseWmc:
    def test_worked_example(self, ex_wmc_doc):
        assert ex_wmc_doc.num_vars == 6
        assert ex_wmc_doc.clauses == ((-1, -2), (2, 3, -4), (4, 5), (4, 6))
        assert ex_wmc_doc.weights == {
            1: Fraction(2, 5),
            -1: Fraction(3, 5),
            4: Fraction(1, 2),
            -4: Fraction(1, 2),
            5: Fraction(1),
            -5: Fraction(1),
        }

    def test_undeclared_literals_default_to_one(self):
        doc = parse_wmc("p wcnf 1 1\n1 0\n")
        assert doc.weights == {}

    def test_weight_out_of_range(self):
        with pytest.raises(WeightOutOfRange):
            parse_wmc("p wcnf 1 0\nw 1 1.5 0\n")
        with pytest.raises(WeightOutOfRange):
            parse_wmc("p wcnf 1 0\nw 1 -0.1 0\n")

    def test_weight_literal_out_of_range(self):
        with pytest.raises(LiteralOutOfRange):
            parse_wmc("p wcnf 1 0\nw 2 0.5 0\n")

    def test_duplicate_weight_last_wins_leniently(self):
        with pytest.warns(ParseWarning):
            doc = parse_wmc("p wcnf 1 0\nw 1 0.3 0\nw 1 0.7 0\n")
        assert doc.weights[1] == Fraction(7, 10)

    def test_duplicate_weight_strict(self):
        with pytest.raises(DuplicateWeight):
            parse_wmc("p wcnf 1 0\nw 1 0.3 0\nw 1 0.7 0\n", strict=True)

    def test_unterminated_weight_line_lenient(self):
        with pytest.warns(ParseWarning):
            doc = parse_wmc("p wcnf 1 0\nw 1 0.25\n")
        assert doc.weights[1] == Fraction(1, 4)

    def test_unterminated_weight_line_strict(self):
        with pytest.raises(MalformedWeightLine):
            parse_wmc("p wcnf 1 0\nw 1 0.25\n", strict=True)

    def test_malformed_weight(self):
        with pytest.raises(MalformedWeightLine):
            parse_wmc("p wcnf 1 0\nw 1 zero 0\n")
        with pytest.raises(MalformedWeightLine):
            parse_wmc("p wcnf 1 0\nw one 0.5 0\n")

    def test_weight_lines_may_follow_clauses(self):
        doc = parse_wmc("p wcnf 2 1\n1 2 0\nw 2 0.125 0\n")
        assert doc.weights[2] == Fraction(1, 8)

    def test_scientific_notation_weight(self):
        doc = parse_wmc("p wcnf 1 0\nw 1 5e-1 0\n")
        assert doc.weights[1] == Fraction(1, 2)


class TestParsePmc:
    def test_worked_example(self, ex_pmc_doc):
        assert ex_pmc_doc.num_vars == 6
        assert ex_pmc_doc.projection_vars == frozenset({1, 2})
        assert ex_pmc_doc.clauses == ((-1, -2), (2, 3, -2), (4, 5), (4, 6))

    def test_two_field_header(self):
        doc = parse_pmc("p pcnf 3 1\nvp 1 0\n1 2 0\n")
        assert doc.projection_vars == frozenset({1})

    def test_vp_line_may_come_last(self):
        doc = parse_pmc("p pcnf 3 1\n1 2 0\nvp 2 3 0\n")
        assert doc.projection_vars == frozenset({2, 3})

    def test_empty_projection(self):
        doc = parse_pmc("p pcnf 1 0\nvp 0\n")
        assert doc.projection_vars == frozenset()

    def test_missing_vp_line(self):
        with pytest.raises(MissingVpLine):
            parse_pmc("p pcnf 1 0\n")

    def test_duplicate_vp_line(self):
        with pytest.raises(DuplicateVpLine):
            parse_pmc("p pcnf 2 0\nvp 1 0\nvp 2 0\n")

    def test_projection_var_out_of_range(self):
        with pytest.raises(ProjectionVarOutOfRange):
            parse_pmc("p pcnf 6 0\nvp 1 9 0\n")

    def test_projection_count_mismatch_warns_leniently(self):
        with pytest.warns(ParseWarning):
            doc = parse_pmc("p pcnf 3 0 3\nvp 1 0\n")
        assert doc.projection_vars == frozenset({1})

    def test_projection_count_mismatch_strict(self):
        with pytest.raises(ProjectionCountMismatch):
            parse_pmc("p pcnf 3 0 3\nvp 1 0\n", strict=True)

    def test_vp_must_end_with_zero(self):
        with pytest.raises(MalformedToken):
            parse_pmc("p pcnf 3 0\nvp 1 2\n")


class TestDocumentInvariants:
    def test_cnf_rejects_bad_counts(self):
        with pytest.raises(ValueError):
            CnfDocument(num_vars=0, num_clauses=0, clauses=())
        with pytest.raises(ValueError):
            CnfDocument(num_vars=1, num_clauses=2, clauses=((1,),))

    def test_cnf_rejects_bad_literal(self):
        with pytest.raises(LiteralOutOfRange):
            CnfDocument(num_vars=1, num_clauses=1, clauses=((2,),))
        with pytest.raises(LiteralOutOfRange):
            CnfDocument(num_vars=1, num_clauses=1, clauses=((0,),))

    def test_wcnf_rejects_bad_weight(self):
        base = CnfDocument(num_vars=1, num_clauses=0, clauses=())
        with pytest.raises(WeightOutOfRange):
            WcnfDocument(base=base, weights={1: Fraction(3, 2)})
        with pytest.raises(LiteralOutOfRange):
            WcnfDocument(base=base, weights={4: Fraction(1, 2)})

    def test_pcnf_rejects_bad_projection(self):
        base = CnfDocument(num_vars=1, num_clauses=0, clauses=())
        with pytest.raises(ProjectionVarOutOfRange):
            PcnfDocument(base=base, projection_vars=frozenset({2}))


class TestSerialize:
    def test_mc_canonical(self):
        doc = CnfDocument(num_vars=1, num_clauses=0, clauses=())
        assert serialize(doc) == "p cnf 1 0\n"

    def test_mc_round_trip(self, ex_mc_doc):
        assert parse_mc(serialize(ex_mc_doc)) == ex_mc_doc

    def test_wmc_round_trip(self, ex_wmc_doc):
        again = parse_wmc(serialize(ex_wmc_doc), strict=True)
        assert again == ex_wmc_doc

    def test_pmc_round_trip(self, ex_pmc_doc):
        again = parse_pmc(serialize(ex_pmc_doc), strict=True)
        assert again == ex_pmc_doc

    def test_serialized_text_is_strict(self, ex_wmc_doc, ex_pmc_doc):
        # strict mode accepts its own output without warnings
        with warnings.catch_warnings():
            warnings.simplefilter("error", ParseWarning)
            parse_wmc(serialize(ex_wmc_doc), strict=True)
            parse_pmc(serialize(ex_pmc_doc), strict=True)

    def test_weight_order_is_stable(self, ex_wmc_doc):
        text = serialize(ex_wmc_doc)
        lines = [l for l in text.splitlines() if l.startswith("w ")]
        assert lines == [
            "w 1 0.4 0",
            "w -1 0.6 0",
            "w 4 0.5 0",
            "w -4 0.5 0",
            "w 5 1 0",
            "w -5 1 0",
        ]

    def test_pmc_header_carries_projection_count(self, ex_pmc_doc):
        assert serialize(ex_pmc_doc).splitlines()[0] == "p pcnf 6 4 2"


class TestWeightToText:
    def test_exact_decimals(self):
        assert weight_to_text(Fraction(2, 5)) == "0.4"
        assert weight_to_text(Fraction(1, 8)) == "0.125"
        assert weight_to_text(Fraction(1)) == "1"
        assert weight_to_text(Fraction(0)) == "0"

    def test_non_terminating_rejected(self):
        with pytest.raises(ValueError):
            weight_to_text(Fraction(1, 3))

    def test_round_trips_through_parser(self):
        for num, den in ((1, 2), (3, 4), (7, 10), (1, 64), (123, 1000)):
            w = Fraction(num, den)
            text = "p wcnf 1 0\nw 1 %s 0\n" % weight_to_text(w)
            assert parse_wmc(text).weights[1] == w


class TestParseSolution:
    def test_mc_with_comments(self):
        sol = parse_solution("c found it\ns mc 22\n", "mc")
        assert sol.value == 22 and sol.track == "mc" and not sol.is_log10

    def test_wmc_decimal(self):
        sol = parse_solution("s wmc 6.0\n", "wmc")
        assert sol.value == Fraction(6)

    def test_last_line_wins(self):
        assert parse_solution("s mc 5\ns mc 7\n", "mc").value == 7

    def test_pmc(self):
        assert parse_solution("s pmc 3\n", "pmc").value == 3

    def test_log10_wmc(self):
        sol = parse_solution("s log10-wmc 2.0\n", "wmc")
        assert sol.is_log10 and sol.value == Fraction(2)

    def test_log10_minus_inf_means_zero(self):
        sol = parse_solution("s log10-wmc -inf\n", "wmc")
        assert not sol.is_log10 and sol.value == Fraction(0)

    def test_no_solution_line(self):
        with pytest.raises(NoSolutionLine):
            parse_solution("c nothing here\n", "mc")

    def test_wrong_tag_only(self):
        with pytest.raises(TrackTagMismatch):
            parse_solution("s wmc 6.0\n", "mc")

    def test_negative_count_rejected(self):
        with pytest.raises(MalformedValue):
            parse_solution("s mc -5\n", "mc")

    def test_malformed_lines_skipped(self):
        # lines that are not three tokens are not solution lines
        sol = parse_solution("s mc\ns mc 1 2\ns mc 9\n", "mc")
        assert sol.value == 9


class TestTrackForPath:
    def test_known_extensions(self):
        assert track_for_path("x/y.mcc2020_cnf") == "mc"
        assert track_for_path("x/y.mcc2020_wcnf") == "wmc"
        assert track_for_path("x/y.mcc2020_pcnf") == "pmc"

    def test_unknown_extension(self):
        with pytest.raises(ValueError):
            track_for_path("instance.cnf")

    def test_extension_track_table(self):
        assert set(formats.EXTENSION_TRACKS.values()) == set(formats.TRACKS)
