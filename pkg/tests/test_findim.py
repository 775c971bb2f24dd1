"""Composite structures, axiom checks, representations, commutants, files."""

import random
from fractions import Fraction

import pytest

from liecomposite.errors import (
    DimensionMismatchError,
    DomainError,
    MalformedInputError,
)
from liecomposite.findim import (
    FinDimComposite,
    FinDimRep,
    SubspaceAlgebra,
    check_compatibility,
    check_connected,
    check_dense,
    check_representation,
    commutant_dimension,
    composite_from_data,
    composite_to_data,
    format_scalar,
    intersect_subspaces,
    is_irreducible,
    load_composite,
    load_rep,
    parse_scalar,
    rep_from_data,
    rep_to_data,
    save_composite,
    save_rep,
    tensor_product,
)
from liecomposite.linalg import GaussianRational as G
from liecomposite.report import FAIL, INFO, PASS

F0, F1 = Fraction(0), Fraction(1)


def so3_constants():
    c = [[[F0] * 3 for _ in range(3)] for _ in range(3)]
    for k, i, j in [(2, 0, 1), (0, 1, 2), (1, 2, 0)]:
        c[k][i][j] = F1
        c[k][j][i] = -F1
    return c


def abelian_constants(d):
    return [[[F0] * d for _ in range(d)] for _ in range(d)]


def eye_rows(total, picks):
    rows = []
    for p in picks:
        row = [F0] * total
        row[p] = F1
        rows.append(row)
    return rows


def spin_half_matrices():
    half = Fraction(1, 2)
    mi = G(0, -half)
    return {
        "x": [[G(0), mi], [mi, G(0)]],
        "y": [[G(0), G(-half)], [G(half), G(0)]],
        "z": [[mi, G(0)], [G(0), G(0, half)]],
    }


def so3_composite():
    sub = SubspaceAlgebra("rot", eye_rows(3, [0, 1, 2]), so3_constants())
    return FinDimComposite(3, ["x", "y", "z"], [sub])


# -- validation ------------------------------------------------------------


def test_subspace_rejects_small_dimension():
    with pytest.raises(MalformedInputError):
        SubspaceAlgebra("s", eye_rows(3, [0]), abelian_constants(1))


def test_subspace_rejects_dependent_rows():
    rows = [[F1, F0, F0], [F1, F0, F0], [F0, F0, F1]]
    with pytest.raises(MalformedInputError):
        SubspaceAlgebra("s", rows, abelian_constants(3))


def test_subspace_rejects_bad_constant_shape():
    with pytest.raises(MalformedInputError):
        SubspaceAlgebra("s", eye_rows(3, [0, 1, 2]), abelian_constants(2))


def test_subspace_rejects_antisymmetry_violation():
    c = abelian_constants(2)
    c[0][0][1] = F1
    c[0][1][0] = F1
    with pytest.raises(MalformedInputError):
        SubspaceAlgebra("s", eye_rows(2, [0, 1]), c)


def test_subspace_rejects_jacobi_violation():
    # [x,y] = x, [y,z] = y, [z,x] = z is antisymmetric but breaks Jacobi
    c = abelian_constants(3)
    for k, i, j in [(0, 0, 1), (1, 1, 2), (2, 2, 0)]:
        c[k][i][j] = F1
        c[k][j][i] = -F1
    with pytest.raises(MalformedInputError):
        SubspaceAlgebra("s", eye_rows(3, [0, 1, 2]), c)


def test_composite_validation():
    sub = SubspaceAlgebra("s", eye_rows(3, [0, 1]), abelian_constants(2))
    with pytest.raises(MalformedInputError):
        FinDimComposite(3, ["x", "y"], [sub])
    with pytest.raises(MalformedInputError):
        FinDimComposite(3, ["x", "x", "y"], [sub])
    with pytest.raises(MalformedInputError):
        FinDimComposite(3, ["x", "y", "z"], [])
    with pytest.raises(MalformedInputError):
        FinDimComposite(3, ["x", "y", "z"], [sub, sub])  # duplicate names
    with pytest.raises(MalformedInputError):
        FinDimComposite(4, ["w", "x", "y", "z"], [sub])


def test_rep_validation():
    with pytest.raises(MalformedInputError):
        FinDimRep(2, {"x": [[F0, F0]]})
    with pytest.raises(MalformedInputError):
        FinDimRep(0, {})


# -- intersections and axioms ------------------------------------------------


def test_intersections_frozen():
    s1 = SubspaceAlgebra("a", eye_rows(4, [0, 1, 2]), so3_constants())
    s2 = SubspaceAlgebra("b", eye_rows(4, [1, 2, 3]), abelian_constants(3))
    comp = FinDimComposite(4, ["p", "q", "r", "s"], [s1, s2])
    assert len(intersect_subspaces(comp, 0, 1)) == 2
    assert len(intersect_subspaces(comp, 0, 0)) == 3
    assert len(intersect_subspaces(comp, 1, 0)) == 2
    s3 = SubspaceAlgebra("c", eye_rows(4, [0, 1]), abelian_constants(2))
    s4 = SubspaceAlgebra("d", eye_rows(4, [2, 3]), abelian_constants(2))
    comp2 = FinDimComposite(4, ["p", "q", "r", "s"], [s3, s4])
    assert intersect_subspaces(comp2, 0, 1) == []


def test_compatibility_identical_subspaces():
    s1 = SubspaceAlgebra("a", eye_rows(3, [0, 1, 2]), so3_constants())
    s2 = SubspaceAlgebra("b", eye_rows(3, [0, 1, 2]), so3_constants())
    comp = FinDimComposite(3, ["x", "y", "z"], [s1, s2])
    report = check_compatibility(comp)
    assert report.passed
    assert any(item.verdict == INFO and "same space" in item.note for item in report.items)


def test_compatibility_closure_failure_witness():
    s1 = SubspaceAlgebra("rot", eye_rows(4, [0, 1, 2]), so3_constants())
    s2 = SubspaceAlgebra("flat", eye_rows(4, [1, 2, 3]), abelian_constants(3))
    comp = FinDimComposite(4, ["w", "x", "y", "z"], [s1, s2])
    report = check_compatibility(comp)
    assert not report.passed
    bad = report.failures()[0]
    assert "leaves the intersection" in bad.note
    assert "witness" in bad.note


def test_compatibility_differing_brackets_witness():
    # [b0, b1] = b0 on one side, abelian on the other, sharing a plane
    c = abelian_constants(3)
    c[0][0][1] = F1
    c[0][1][0] = -F1
    s1 = SubspaceAlgebra("solv", eye_rows(4, [0, 1, 2]), c)
    s2 = SubspaceAlgebra("flat", eye_rows(4, [0, 1, 3]), abelian_constants(3))
    comp = FinDimComposite(4, ["w", "x", "y", "z"], [s1, s2])
    report = check_compatibility(comp)
    assert not report.passed
    assert "differ by" in report.failures()[0].note


def test_dense_and_connected():
    whole = SubspaceAlgebra("all", eye_rows(3, [0, 1, 2]), so3_constants())
    comp = FinDimComposite(3, ["x", "y", "z"], [whole])
    assert check_dense(comp) and check_connected(comp)
    s1 = SubspaceAlgebra("a", eye_rows(5, [0, 1]), abelian_constants(2))
    s2 = SubspaceAlgebra("b", eye_rows(5, [2, 3]), abelian_constants(2))
    comp2 = FinDimComposite(5, ["p", "q", "r", "s", "t"], [s1, s2])
    assert not check_dense(comp2)
    assert not check_connected(comp2)


# -- representations -----------------------------------------------------


def test_spin_half_representation_exact():
    comp = so3_composite()
    rep = FinDimRep(2, spin_half_matrices())
    result = check_representation(comp, rep)
    assert result.passed
    assert result.to_dict()["parameters"]["arithmetic"] == "exact"
    assert commutant_dimension(rep) == 1
    assert is_irreducible(rep)


def test_zero_rep_passes_and_has_full_commutant():
    comp = so3_composite()
    zero = FinDimRep(2, {n: [[F0, F0], [F0, F0]] for n in "xyz"})
    assert check_representation(comp, zero).passed
    assert commutant_dimension(zero) == 4


def test_scaled_generator_fails_with_witness():
    comp = so3_composite()
    mats = spin_half_matrices()
    mats["z"] = [[2 * x for x in row] for row in mats["z"]]
    rep = FinDimRep(2, mats)
    result = check_representation(comp, rep)
    assert not result.passed
    assert result.failures()


def test_cross_subspace_pairs_unconstrained():
    s1 = SubspaceAlgebra("a", eye_rows(4, [0, 1]), abelian_constants(2))
    s2 = SubspaceAlgebra("b", eye_rows(4, [2, 3]), abelian_constants(2))
    comp = FinDimComposite(4, ["p", "q", "r", "s"], [s1, s2])
    up = [[F0, F1], [F0, F0]]
    down = [[F0, F0], [F1, F0]]
    rep = FinDimRep(
        2,
        {
            "p": up,
            "q": [[F0, Fraction(2)], [F0, F0]],
            "r": down,
            "s": [[F0, F0], [Fraction(3), F0]],
        },
    )
    # [T(p), T(r)] != 0, but (p, r) straddles the subspaces: not checked
    assert check_representation(comp, rep).passed


def test_float_matrices_use_tolerance():
    comp = so3_composite()
    # floats come from a real rational rep: the adjoint rep of so(3)
    ad = {
        "x": [[0, 0, 0], [0, 0, -1], [0, 1, 0]],
        "y": [[0, 0, 1], [0, 0, 0], [-1, 0, 0]],
        "z": [[0, -1, 0], [1, 0, 0], [0, 0, 0]],
    }
    exact_rep = FinDimRep(3, {k: [[Fraction(e) for e in row] for row in v] for k, v in ad.items()})
    assert check_representation(comp, exact_rep).passed
    tiny = FinDimRep(3, {k: [[float(e) + (1e-12 if k == "x" else 0.0) for e in row] for row in v] for k, v in ad.items()})
    assert check_representation(comp, tiny).passed
    coarse = FinDimRep(3, {k: [[float(e) + (1e-3 if k == "x" else 0.0) for e in row] for row in v] for k, v in ad.items()})
    assert not check_representation(comp, coarse).passed
    assert check_representation(comp, coarse, tolerance=1.0).passed


def test_missing_matrix_raises():
    comp = so3_composite()
    rep = FinDimRep(2, {"x": [[F0, F0], [F0, F0]], "y": [[F0, F0], [F0, F0]]})
    with pytest.raises(DimensionMismatchError):
        check_representation(comp, rep)


# -- tensor products and commutants -------------------------------------------


def test_tensor_product_dimensions_and_rep_property():
    rep = FinDimRep(2, spin_half_matrices())
    comp = so3_composite()
    tt = tensor_product(rep, rep)
    assert tt.space_dim == 4
    assert check_representation(comp, tt).passed
    assert commutant_dimension(tt) == 2
    zero = FinDimRep(2, {n: [[F0, F0], [F0, F0]] for n in "xyz"})
    zz = tensor_product(zero, zero)
    assert zz.space_dim == 4
    assert all(
        all(not x for row in m for x in row) for m in zz.matrices.values()
    )
    other = FinDimRep(2, {"a": [[F0, F0], [F0, F0]]})
    with pytest.raises(DomainError):
        tensor_product(rep, other)


def test_direct_sum_commutant_superadditive():
    rep = FinDimRep(2, spin_half_matrices())
    zero = FinDimRep(2, {n: [[F0, F0], [F0, F0]] for n in "xyz"})

    def dsum(a, b):
        n, m = len(a), len(b)
        pad = G(0)
        return [
            [
                a[i][j]
                if i < n and j < n
                else (b[i - n][j - n] if i >= n and j >= n else pad)
                for j in range(n + m)
            ]
            for i in range(n + m)
        ]

    double = FinDimRep(4, {n: dsum(rep.matrices[n], rep.matrices[n]) for n in "xyz"})
    assert commutant_dimension(double) == 4
    mixed = FinDimRep(4, {n: dsum(rep.matrices[n], zero.matrices[n]) for n in "xyz"})
    assert commutant_dimension(mixed) == 5
    assert commutant_dimension(mixed) >= commutant_dimension(rep) + commutant_dimension(zero)


def test_tensor_rep_property_randomized():
    # commuting matrices built as polynomials in one seed matrix
    rng = random.Random(715)
    sub = SubspaceAlgebra("ab", eye_rows(2, [0, 1]), abelian_constants(2))
    comp = FinDimComposite(2, ["u", "v"], [sub])
    for _ in range(5):
        seed = [[Fraction(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
        sq = [
            [sum(seed[i][k] * seed[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)
        ]
        t1 = FinDimRep(2, {"u": seed, "v": sq})
        t2 = FinDimRep(2, {"u": sq, "v": seed})
        assert check_representation(comp, t1).passed
        assert check_representation(comp, t2).passed
        assert check_representation(comp, tensor_product(t1, t2)).passed


# -- serialization ----------------------------------------------------------


def test_scalar_parse_format():
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar("1/2-3/4i") == G(Fraction(1, 2), Fraction(-3, 4))
    assert format_scalar(Fraction(-5, 7)) == "-5/7"
    assert format_scalar(G(0, 1)) == "i"
    assert format_scalar(parse_scalar("1/2-3/4i")) == "1/2-3/4i"
    with pytest.raises(MalformedInputError):
        format_scalar(0.5)


def test_composite_data_round_trip():
    s1 = SubspaceAlgebra("rot", eye_rows(4, [0, 1, 2]), so3_constants())
    s2 = SubspaceAlgebra("flat", eye_rows(4, [1, 2, 3]), abelian_constants(3))
    comp = FinDimComposite(4, ["w", "x", "y", "z"], [s1, s2])
    data = composite_to_data(comp)
    assert composite_to_data(composite_from_data(data)) == data
    with pytest.raises(MalformedInputError):
        composite_from_data({"dimension": 3})


def test_rep_data_round_trip():
    rep = FinDimRep(2, spin_half_matrices())
    data = rep_to_data(rep)
    assert rep_to_data(rep_from_data(data)) == data
    assert data["matrices"]["x"][0][1] == "-1/2i"


def test_file_round_trip_bit_exact(tmp_path):
    comp = so3_composite()
    rep = FinDimRep(2, spin_half_matrices())
    cpath = tmp_path / "composite.json"
    rpath = tmp_path / "rep.json"
    save_composite(comp, str(cpath))
    save_rep(rep, str(rpath))
    first_c = cpath.read_bytes()
    first_r = rpath.read_bytes()
    save_composite(load_composite(str(cpath)), str(cpath))
    save_rep(load_rep(str(rpath)), str(rpath))
    assert cpath.read_bytes() == first_c
    assert rpath.read_bytes() == first_r
    with pytest.raises(MalformedInputError):
        load_composite(str(tmp_path / "missing.json"))
