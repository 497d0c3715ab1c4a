from fractions import Fraction

import pytest

from pdocycles.errors import OperatorParseError
from pdocycles.exprparse import (
    eval_operator,
    laurent_from_document,
    laurent_to_document,
    operator_from_document,
    parse_expression,
    parse_operator,
    parse_symbol,
    symbol_from_document,
)
from pdocycles.lattice import (
    LatticeOperator,
    commutator,
    op_abs_derivative,
    op_derivative,
    op_from_laurent,
    op_projection_minus,
    op_projection_plus,
    op_projection_zero,
    op_z_power,
)
from pdocycles.laurent import LaurentPoly
from pdocycles.matrices import MatrixCoeff
from pdocycles.scalars import GaussianRational
from pdocycles.symbols import builtin_symbol, multiplication_symbol, star_commutator


class TestScalars:
    def test_integer(self):
        assert eval_operator(parse_expression("7")) == GaussianRational(7)

    def test_rational(self):
        assert eval_operator(parse_expression("3/4")) == GaussianRational(Fraction(3, 4))

    def test_imaginary_unit(self):
        assert eval_operator(parse_expression("i")) == GaussianRational(0, 1)
        assert eval_operator(parse_expression("2*i")) == GaussianRational(0, 2)

    def test_scalar_arithmetic(self):
        assert eval_operator(parse_expression("1/2 + 1/3")) == GaussianRational(Fraction(5, 6))
        assert eval_operator(parse_expression("(1+i)*(1-i)")) == GaussianRational(2)
        assert eval_operator(parse_expression("1/(2)")) == GaussianRational(Fraction(1, 2))

    def test_zero_denominator(self):
        with pytest.raises(OperatorParseError):
            parse_expression("1/0")


class TestOperatorExpressions:
    def test_z_powers(self):
        assert parse_operator("z") == op_z_power(1)
        assert parse_operator("z^3") == op_z_power(3)
        assert parse_operator("z^-2") == op_z_power(-2)

    def test_builtins(self):
        assert parse_operator("P_PLUS") == op_projection_plus(1)
        assert parse_operator("P_MINUS") == op_projection_minus(1)
        assert parse_operator("P_ZERO") == op_projection_zero(1)
        assert parse_operator("D") == op_derivative(1)
        assert parse_operator("ABS_D") == op_abs_derivative(1)

    def test_composition_and_sums(self):
        assert parse_operator("z^1 * z^2") == op_z_power(3)
        assert parse_operator("z + z") == op_z_power(1).scale(2)
        assert parse_operator("z - z").is_zero()
        assert parse_operator("2*z^1 + P_PLUS") == (
            op_z_power(1).scale(2) + op_projection_plus(1))

    def test_scalar_scaling_and_division(self):
        assert parse_operator("1/2 * z^2") == op_z_power(2).scale(Fraction(1, 2))
        assert parse_operator("z^2 / 2") == op_z_power(2).scale(Fraction(1, 2))
        assert parse_operator("-z") == op_z_power(1).scale(-1)
        assert parse_operator("i*z") == op_z_power(1).scale(GaussianRational(0, 1))

    def test_commutator_brackets(self):
        assert parse_operator("[D, z^2]") == commutator(op_derivative(1), op_z_power(2))
        assert parse_operator("[z^1, P_PLUS]") == commutator(
            op_z_power(1), op_projection_plus(1))

    def test_precedence(self):
        got = parse_operator("z^1 + z^2 * z^3")
        assert got == op_z_power(1) + op_z_power(5)

    def test_matrix_literal(self):
        got = parse_operator("{{0, 1}, {0, 0}} * z^2", dim=2)
        e01 = MatrixCoeff.unit(2, 0, 1)
        assert got == op_z_power(2, 2, e01)

    def test_matrix_literal_entries_can_be_expressions(self):
        got = parse_operator("{{1/2 + 1/2, 0}, {0, i*i}}", dim=2)
        expect = op_from_laurent(LaurentPoly(2, {0: MatrixCoeff(
            [[GaussianRational(1), GaussianRational(0)],
             [GaussianRational(0), GaussianRational(-1)]])}))
        assert got == expect

    def test_named_operands(self):
        env = {"A": op_z_power(-1)}
        assert parse_operator("A * z^1", operands=env) == LatticeOperator.identity(1)

    def test_dim_passes_through(self):
        assert parse_operator("P_PLUS", dim=3) == op_projection_plus(3)


class TestErrors:
    def test_unknown_name_position(self):
        with pytest.raises(OperatorParseError) as info:
            parse_operator("z^1 + FOO")
        assert info.value.position == 6

    def test_unexpected_character(self):
        with pytest.raises(OperatorParseError) as info:
            parse_expression("z^1 @ z^2")
        assert info.value.position == 4

    def test_trailing_input(self):
        with pytest.raises(OperatorParseError):
            parse_expression("z^1 z^2")

    def test_unbalanced_paren(self):
        with pytest.raises(OperatorParseError):
            parse_expression("(z^1 + z^2")

    def test_scalar_plus_operator_rejected(self):
        with pytest.raises(OperatorParseError):
            parse_operator("1 + z^1")

    def test_commutator_of_scalars_rejected(self):
        with pytest.raises(OperatorParseError):
            parse_operator("[1, z]")

    def test_scalar_expression_where_operator_needed(self):
        with pytest.raises(OperatorParseError):
            parse_operator("3/4")

    def test_matrix_dim_mismatch(self):
        with pytest.raises(OperatorParseError):
            parse_operator("{{1}}", dim=2)


class TestSymbolExpressions:
    def test_z_power_symbol(self):
        assert parse_symbol("z^2") == multiplication_symbol(LaurentPoly.z_power(2, 1))

    def test_symbol_builtins(self):
        assert parse_symbol("DELTA") == builtin_symbol("DELTA")
        assert parse_symbol("D * D") == builtin_symbol("DELTA")

    def test_star_commutator_brackets(self):
        got = parse_symbol("[D, z^1]")
        expect = star_commutator(builtin_symbol("D"),
                                 multiplication_symbol(LaurentPoly.z_power(1, 1)))
        assert got == expect

    def test_p_zero_is_not_a_symbol_builtin(self):
        with pytest.raises(OperatorParseError):
            parse_symbol("P_ZERO")


class TestDocuments:
    def test_laurent_round_trip(self):
        poly = LaurentPoly(2, {
            -1: MatrixCoeff.unit(2, 0, 1),
            3: MatrixCoeff([[GaussianRational(Fraction(1, 2)), GaussianRational(0)],
                            [GaussianRational(0, 1), GaussianRational(-2)]]),
        })
        doc = laurent_to_document(poly)
        assert laurent_from_document(doc) == poly

    def test_operator_document(self):
        doc = {"dim": 1, "terms": [{"m": 1, "matrix": [[["1", "0"]]]}]}
        assert operator_from_document(doc) == op_z_power(1)

    def test_duplicate_modes_accumulate(self):
        doc = {"dim": 1, "terms": [
            {"m": 0, "matrix": [[["1", "0"]]]},
            {"m": 0, "matrix": [[["2", "0"]]]},
        ]}
        assert operator_from_document(doc) == LatticeOperator.identity(1).scale(3)

    def test_symbol_document(self):
        doc = {"dim": 1, "parts": [
            {"degree": 1, "plus": [{"m": 0, "matrix": [[["1", "0"]]]}],
             "minus": [{"m": 0, "matrix": [[["-1", "0"]]]}]},
        ]}
        assert symbol_from_document(doc) == builtin_symbol("D", depth=1)

    def test_symbol_document_fills_degree_gaps(self):
        doc = {"dim": 1, "parts": [
            {"degree": 1, "plus": [{"m": 0, "matrix": [[["1", "0"]]]}], "minus": []},
            {"degree": -1, "plus": [{"m": 2, "matrix": [[["1", "0"]]]}], "minus": []},
        ]}
        sym = symbol_from_document(doc)
        assert sym.order == 1
        assert sym.depth == 3
        assert sym.part(0).is_zero()

    def test_bad_matrix_shape(self):
        with pytest.raises(OperatorParseError):
            laurent_from_document({"dim": 2, "terms": [
                {"m": 0, "matrix": [[["1", "0"]]]}]})
