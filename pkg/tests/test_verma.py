"""Ladder families, bracket table, deviation checks, and tail equivalence."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecomposite.errors import DomainError, PoleError
from liecomposite.exact import (
    parse_rational,
    qh_const,
    qhn_const,
    substitute_h,
    var_h,
    var_h_in_n,
    var_n,
)
from liecomposite.report import FAIL, INFO, PASS
from liecomposite.shiftop import OperatorClass, ShiftOperator
from liecomposite.verma import (
    HighestWeight,
    bracket,
    bracket_combo,
    check_absolutely_closed,
    check_absolutely_symmetric,
    check_extended_composite,
    check_hs_deviations,
    check_symmetric,
    check_witt_composite,
    deviation,
    e,
    f,
    op_F,
    op_L,
    represent,
    represent_combo,
    shapovalov_weight,
    tail_equivalence_report,
    tail_square_equivalence,
    tail_square_probe,
)

N = var_n()
H = var_h_in_n()
ONE = qhn_const(1)


def single(shift, coeff):
    return ShiftOperator.single(shift, coeff)


# -- operator families ---------------------------------------------------


def test_e_family_frozen():
    assert op_L(0) == single(0, N + H)
    assert op_L(-1) == single(1, ONE)
    assert op_L(1) == single(-1, N * (N + 2 * H - 1))
    assert op_L(2) == single(-2, N * (N - 1) * (N + 3 * H - 2))
    assert op_L(-2) == single(2, (N + 3 * H) / ((N + 2 * H) * (N + 2 * H + 1)))


def test_f_family_frozen():
    assert op_F(0) == ShiftOperator.identity()
    assert op_F(1) == single(-1, N)
    assert op_F(2) == single(-2, N * (N - 1))
    assert op_F(-1) == single(1, ONE / (N + 2 * H))
    assert op_F(-2) == single(2, ONE / ((N + 2 * H) * (N + 2 * H + 1)))


def test_numeric_weight_substitutes_coefficients():
    h0 = Fraction(1, 2)
    at = op_L(2, h0)
    expected = ShiftOperator(
        (d, substitute_h(c, h0)) for d, c in op_L(2).components
    )
    assert at == expected
    assert op_L(2, HighestWeight(h0)) == at


def test_shapovalov_weights_frozen():
    h = var_h()
    assert shapovalov_weight(0) == qh_const(1)
    assert shapovalov_weight(1) == 2 * h
    assert shapovalov_weight(2) == 4 * h * (2 * h + 1)
    assert shapovalov_weight(2, Fraction(1, 2)) == Fraction(4)


def test_highest_weight_coercion():
    assert HighestWeight.coerce(None).is_symbolic
    assert HighestWeight.coerce("5/7").value == Fraction(5, 7)
    assert HighestWeight.coerce(2).is_unitarizable
    assert not HighestWeight.coerce(Fraction(-1, 3)).is_unitarizable
    hw = HighestWeight(Fraction(1, 2))
    assert HighestWeight.coerce(hw) is hw
    with pytest.raises(AttributeError):
        hw.value = Fraction(1)


# -- bracket table --------------------------------------------------------


def test_bracket_frozen():
    assert bracket(e(2), e(5)) == {e(7): Fraction(-3)}
    assert bracket(e(3), e(3)) == {}
    assert bracket(e(2), f(3)) == {f(5): Fraction(-3)}
    assert bracket(f(3), e(2)) == {f(5): Fraction(3)}
    assert bracket(e(1), f(0)) == {}
    assert bracket(f(1), f(-4)) == {}


_gens = st.builds(
    lambda fam, i: fam(i),
    st.sampled_from([e, f]),
    st.integers(min_value=-5, max_value=5),
)


@given(_gens, _gens)
def test_bracket_antisymmetric(x, y):
    fwd, bwd = bracket(x, y), bracket(y, x)
    assert fwd == {z: -c for z, c in bwd.items()}


@settings(max_examples=60)
@given(_gens, _gens, _gens)
def test_bracket_jacobi(x, y, z):
    def j(a, b, c):
        return bracket_combo(bracket(a, b), {c: Fraction(1)})

    total = {}
    for part in (j(x, y, z), j(y, z, x), j(z, x, y)):
        for g, c in part.items():
            total[g] = total.get(g, Fraction(0)) + c
    assert all(c == 0 for c in total.values())


def test_represent_combo_linear():
    combo = {e(1): Fraction(2), f(-1): Fraction(-3)}
    assert represent_combo(combo) == op_L(1).scale(2) - op_F(-1).scale(3)


# -- deviations ------------------------------------------------------------


def test_in_half_deviations_vanish():
    for j in range(-8, 9):
        assert deviation(e(0), e(j)).is_zero()
    assert deviation(e(1), e(-1)).is_zero()
    assert deviation(e(-1), e(2)).is_zero()
    assert deviation(e(1), f(2)).is_zero()
    assert deviation(e(-1), f(0)).is_zero()


def test_mixed_deviation_class_and_special_weights():
    dev = deviation(e(2), e(-2))
    assert not dev.is_zero()
    assert dev.classify() is OperatorClass.TRACE_CLASS
    assert [d for d, _ in dev.components] == [0]
    # the defect vanishes identically at h = 1/2 but not at generic h
    assert deviation(e(2), e(-2), Fraction(1, 2)).is_zero()
    assert not deviation(e(2), e(-2), Fraction(5, 7)).is_zero()


def test_deviation_antisymmetric():
    pairs = [(e(2), e(-3)), (e(4), f(-2)), (f(3), e(-3))]
    for x, y in pairs:
        assert deviation(x, y) == -deviation(y, x)


def test_deviation_matches_float_matrix_commutator():
    # independent numeric route: truncate the factors, commute the float
    # matrices, subtract the represented bracket, compare interior entries
    h0 = Fraction(5, 7)
    size, interior = 16, 8
    a = op_L(2).truncate_numeric(size, h0)
    b = op_L(-2).truncate_numeric(size, h0)
    l0 = op_L(0).truncate_numeric(size, h0)
    comm = [
        [
            sum(a[i][k] * b[k][j] - b[i][k] * a[k][j] for k in range(size))
            for j in range(size)
        ]
        for i in range(size)
    ]
    dev = deviation(e(2), e(-2)).truncate_numeric(size, h0)
    for i in range(interior):
        for j in range(interior):
            expected = comm[i][j] - 4 * l0[i][j]
            assert abs(dev[i][j] - expected) < 1e-9


def test_ef_relations_frozen():
    assert op_L(1).commutator(op_F(1)) == -op_F(2)
    assert op_L(1).commutator(op_F(-1)) == op_F(0)
    assert op_F(-1).commutator(op_F(-2)).is_zero()
    chain = single(3, ONE / ((N + 2 * H) * (N + 2 * H + 1) * (N + 2 * H + 2)))
    assert op_F(-1) @ op_F(-2) == chain
    assert op_F(-2) @ op_F(-1) == chain


def test_f_pair_product_frozen():
    # dual-route value: both composition orders give the same band entry
    assert op_F(1) @ op_F(-1) == single(0, (N + 1) / (N + 2 * H))
    assert op_F(-1) @ op_F(1) == single(0, N / (N + 2 * H - 1))


def test_degree_zero_word_witness():
    value = single(0, (N + 1) * (N + 2) * (N + 3 * H))
    assert op_L(2) @ op_L(-1) @ op_L(-1) == value
    assert op_L(1) @ op_L(1) @ op_L(-2) == value
    assert value.adjoint() == value


# -- checkers -----------------------------------------------------------


def test_check_witt_composite_smoke():
    report = check_witt_composite(2)
    assert report.passed
    assert len(report.items) == 25
    assert report.items[-1].verdict == INFO
    assert report.items[-1].operator_class == "trace-class"
    assert all(item.verdict == PASS for item in report.items[:-1])
    data = report.to_dict()
    assert set(data) == {"check", "parameters", "pass", "items", "notes"}
    assert data["parameters"] == {"max_index": 2, "h": "h"}
    assert data["pass"] is True
    with pytest.raises(DomainError):
        check_witt_composite(0)


def test_check_extended_composite_smoke():
    report = check_extended_composite(2)
    assert report.passed
    assert len(report.items) == 30
    assert any("-j*f_{i+j}" in note for note in report.notes)
    assert any("(i, j) = (0, 1)" in note for note in report.notes)


def test_ef_alternative_convention_really_fails():
    # the flagged convention [e_i, f_j] = j*f_j breaks at (0, 1)
    wrong = op_L(0).commutator(op_F(1)) - op_F(1)
    assert not wrong.is_zero()
    assert op_L(0).commutator(op_F(1)) == -op_F(1)


def test_check_symmetric_smoke():
    report = check_symmetric(3)
    assert report.passed
    assert len(report.items) == 14
    numeric = check_symmetric(3, Fraction(1, 2))
    assert numeric.passed
    assert len(numeric.items) == 15
    assert "inner-product" in numeric.items[-1].subject
    with pytest.raises(DomainError):
        check_symmetric(3, Fraction(-1, 2))


def test_check_absolutely_symmetric_counts():
    report = check_absolutely_symmetric(2, 1)
    assert report.passed
    assert len(report.items) == 14
    wider = check_absolutely_symmetric(3, 2)
    assert wider.passed
    assert len(wider.items) == 174
    with pytest.raises(DomainError):
        check_absolutely_symmetric(1, 3)
    with pytest.raises(DomainError):
        check_absolutely_symmetric(3, 2, Fraction(1, 2))


def test_check_absolutely_closed_modes():
    report = check_absolutely_closed(1, 1)
    assert report.passed
    assert len(report.items) == 216
    assert report.to_dict()["parameters"]["mode"] == "bracket"
    literal = check_absolutely_closed(1, 1, mode="literal")
    assert not literal.passed
    assert any("nonzero" in note for note in report.notes)
    with pytest.raises(DomainError):
        check_absolutely_closed(0, 1)
    with pytest.raises(DomainError):
        check_absolutely_closed(1, 1, mode="strict")


def test_closed_check_frozen_examples():
    n1 = represent(e(2)).commutator(represent(e(-2))).commutator(represent(e(3)))
    phi1 = bracket_combo(bracket(e(2), e(-2)), {e(3): Fraction(1)})
    assert phi1 == {e(3): Fraction(-12)}
    assert n1.classify() is OperatorClass.UNBOUNDED
    defect1 = n1 - represent_combo(phi1)
    assert defect1.classify() <= OperatorClass.HILBERT_SCHMIDT

    n2 = represent(f(2)).commutator(represent(f(-2))).commutator(represent(e(1)))
    phi2 = bracket_combo(bracket(f(2), f(-2)), {e(1): Fraction(1)})
    assert phi2 == {}
    assert n2.classify() <= OperatorClass.HILBERT_SCHMIDT


def test_check_hs_deviations_smoke():
    report = check_hs_deviations(3, Fraction(1, 2), 200)
    assert report.passed
    assert len(report.items) == 4
    assert all(item.operator_class == "trace-class" for item in report.items)
    # h = 1/2 is degenerate (all sums vanish); a generic weight is not
    generic = check_hs_deviations(3, Fraction(5, 7), 200)
    assert generic.passed
    assert any("fraction 0 " not in (item.note or "") for item in generic.items)
    with pytest.raises(DomainError):
        check_hs_deviations(1)
    with pytest.raises(DomainError):
        check_hs_deviations(3, Fraction(-1, 2))


# -- tail-square equivalence ----------------------------------------------


def test_tail_equivalence_frozen_trio():
    h = var_h()
    one = qh_const(1)
    assert tail_square_equivalence(h / (h + 1), h / (h + 1), Fraction(1, 2))
    assert not tail_square_equivalence(h + one, h, Fraction(1, 2))
    assert tail_square_equivalence(one / (h + 1), qh_const(0), Fraction(1, 2))
    assert tail_square_equivalence(1 / h, 1 / (h + 1), Fraction(1, 2))


def test_tail_equivalence_mixed_levels():
    h = var_h()
    r = (2 * h + 1) / (h + 3)
    assert tail_square_equivalence(r, qhn_const(r), Fraction(1, 2))
    assert not tail_square_equivalence(r + qh_const(1), qhn_const(r), Fraction(1, 2))


def test_tail_equivalence_refuses_lattice_pole():
    h = var_h()
    bad = 1 / (h - Fraction(3, 2))
    with pytest.raises(PoleError) as err:
        tail_square_equivalence(bad, qh_const(0), Fraction(1, 2))
    assert err.value.point == Fraction(3, 2)
    # same denominator is harmless one step off the lattice
    assert tail_square_equivalence(bad, qh_const(0), Fraction(7, 4))


def test_tail_equivalence_rejects_bivariate_difference():
    with pytest.raises(DomainError):
        tail_square_equivalence(var_h_in_n() * var_n(), qhn_const(0), Fraction(1, 2))


def test_tail_probe_agrees_on_frozen_trio():
    h = var_h()
    one = qh_const(1)
    cases = [
        (h / (h + 1), h / (h + 1)),
        (h + one, h),
        (one / (h + 1), qh_const(0)),
    ]
    for r1, r2 in cases:
        assert tail_square_probe(r1, r2, Fraction(1, 2), 2000) == tail_square_equivalence(
            r1, r2, Fraction(1, 2)
        )


def test_tail_probe_agreement_randomized():
    import random

    h = var_h()
    rng = random.Random(20240817)
    degrees = [0, 1, 2]
    for _ in range(12):
        num1 = sum(
            qh_const(rng.randint(-3, 3)) * h ** k for k in range(rng.choice(degrees) + 1)
        )
        num2 = sum(
            qh_const(rng.randint(-3, 3)) * h ** k for k in range(rng.choice(degrees) + 1)
        )
        den = (h + rng.randint(1, 4)) * (h + rng.randint(1, 4))
        r1, r2 = num1 / den, num2 / den
        sym = tail_square_equivalence(r1, r2, Fraction(1, 2))
        num = tail_square_probe(r1, r2, Fraction(1, 2), 4000)
        assert sym == num


def test_tail_equivalence_report_structure():
    h = var_h()
    report = tail_equivalence_report(1 / h, 1 / (h + 1), Fraction(1, 2), probe_terms=2000)
    assert report.passed
    assert report.items[0].verdict == INFO
    assert "converges" in report.items[0].note or "convergent" in report.items[0].note
    assert report.items[1].verdict == PASS
    data = report.to_dict()
    assert data["check"] == "tail-equivalence"
    assert data["parameters"]["h0"] == "1/2"
