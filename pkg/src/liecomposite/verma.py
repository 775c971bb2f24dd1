"""Ladder-operator families on the weighted polynomial module, and the
checkers for the composite-structure claims about them.

Two families of banded operators act on polynomials in z, carrying the
inner product of shiftop.WEIGHT.  The e-family realizes the vector-field
bracket [e_i, e_j] = (i - j) e_{i+j}; the f-family is abelian and the
e-family transports it by [e_i, f_j] = -j f_{i+j}.  Within either index
half (all raising or all lowering) every bracket relation holds exactly
as a rational-function identity; across the halves the defects are small
operators (Hilbert-Schmidt or better).  The checkers decide all of this
symbolically and return structured reports.

Everything defaults to the formal weight symbol h.  A numeric rational
weight enters either by substitution (deviation and the in-half checks)
or through the numeric legs (partial sums, inner-product probes), which
require it to be positive.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .errors import DomainError, PoleError
from .exact import (
    RationalFunc,
    asymptotic_degree,
    evaluate,
    fraction_coeff_tuples,
    qhn_const,
    substitute_h,
    var_h_in_n,
    var_n,
)
from .report import FAIL, INFO, PASS, CheckItem, CheckReport
from .shiftop import WEIGHT, OperatorClass, ShiftOperator

_HS = OperatorClass.HILBERT_SCHMIDT


class GeneratorId(NamedTuple):
    family: str  # "e" or "f"
    index: int

    def __str__(self) -> str:
        return f"{self.family}_{self.index}"


def e(index: int) -> GeneratorId:
    return GeneratorId("e", index)


def f(index: int) -> GeneratorId:
    return GeneratorId("f", index)


class HighestWeight:
    """The module weight: either the formal symbol (value None) or a rational.

    Numeric probe legs additionally require the value to be positive
    (is_unitarizable); symbolic checks never look at it.
    """

    __slots__ = ("value",)

    def __init__(self, value=None):
        if value is not None:
            value = Fraction(value)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, v):
        raise AttributeError("HighestWeight is immutable")

    @classmethod
    def coerce(cls, h) -> "HighestWeight":
        if isinstance(h, HighestWeight):
            return h
        return cls(h)

    @property
    def is_symbolic(self) -> bool:
        return self.value is None

    @property
    def is_unitarizable(self) -> bool:
        return self.value is not None and self.value > 0

    def __eq__(self, other):
        if not isinstance(other, HighestWeight):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash((HighestWeight, self.value))

    def __str__(self) -> str:
        return "h" if self.value is None else str(self.value)


def _at_weight(op: ShiftOperator, hw: HighestWeight) -> ShiftOperator:
    if hw.is_symbolic:
        return op
    return ShiftOperator((d, substitute_h(c, hw.value)) for d, c in op.components)


# -- the two operator families ------------------------------------------------


@lru_cache(maxsize=None)
def _op_e(k: int) -> ShiftOperator:
    n, h = var_n(), var_h_in_n()
    if k >= 0:
        coeff = n - k + (k + 1) * h
        for t in range(k):
            coeff = coeff * (n - t)
        return ShiftOperator.single(-k, coeff)
    m = -k
    den = qhn_const(1)
    for j in range(m):
        den = den * (n + 2 * h + j)
    return ShiftOperator.single(m, (n + (m + 1) * h) / den)


@lru_cache(maxsize=None)
def _op_f(k: int) -> ShiftOperator:
    n, h = var_n(), var_h_in_n()
    coeff = qhn_const(1)
    if k >= 0:
        for t in range(k):
            coeff = coeff * (n - t)
        return ShiftOperator.single(-k, coeff)
    for j in range(-k):
        coeff = coeff * (n + 2 * h + j)
    return ShiftOperator.single(-k, 1 / coeff)


def op_L(k: int, h=None) -> ShiftOperator:
    """Index-k member of the bracket-carrying family (shift -k for k >= 0)."""
    return _at_weight(_op_e(k), HighestWeight.coerce(h))


def op_F(k: int, h=None) -> ShiftOperator:
    """Index-k member of the abelian family (k-fold derivative for k >= 0)."""
    return _at_weight(_op_f(k), HighestWeight.coerce(h))


def represent(x: GeneratorId, h=None) -> ShiftOperator:
    if x.family == "e":
        return op_L(x.index, h)
    if x.family == "f":
        return op_F(x.index, h)
    raise DomainError(f"unknown generator family {x.family!r}")


# -- abstract bracket table ----------------------------------------------


Combo = dict  # GeneratorId -> Fraction, zero coefficients never stored


def bracket(x: GeneratorId, y: GeneratorId) -> Combo:
    """Structure constants: [e_i,e_j] = (i-j)e_{i+j}, [e_i,f_j] = -j*f_{i+j},
    f-family abelian; antisymmetric by construction."""
    if x.family == "e" and y.family == "e":
        c, target = x.index - y.index, e(x.index + y.index)
    elif x.family == "e" and y.family == "f":
        c, target = -y.index, f(x.index + y.index)
    elif x.family == "f" and y.family == "e":
        c, target = x.index, f(x.index + y.index)
    else:
        return {}
    return {target: Fraction(c)} if c else {}


def bracket_combo(a: Combo, b: Combo) -> Combo:
    out: Combo = {}
    for x, ca in a.items():
        for y, cb in b.items():
            for z, c in bracket(x, y).items():
                out[z] = out.get(z, Fraction(0)) + ca * cb * c
    return {z: c for z, c in out.items() if c}


def represent_combo(combo: Combo, h=None) -> ShiftOperator:
    total = ShiftOperator.zero()
    for x, c in combo.items():
        total = total + represent(x, h).scale(c)
    return total


def _combo_str(combo: Combo) -> str:
    if not combo:
        return "0"
    parts = []
    for x in sorted(combo, key=lambda g: (g.family, g.index)):
        c = combo[x]
        parts.append(f"{c}*{x}" if c != 1 else str(x))
    return " + ".join(parts)


# -- weights and deviations ---------------------------------------------------


def shapovalov_weight(n: int, h=None):
    """Squared norm of z^n: an element of Q(h), or a Fraction at numeric h."""
    w = WEIGHT.value(n)
    hw = HighestWeight.coerce(h)
    return w if hw.is_symbolic else evaluate(w, hw.value)


@lru_cache(maxsize=None)
def _deviation_sym(x: GeneratorId, y: GeneratorId) -> ShiftOperator:
    lhs = represent(x).commutator(represent(y))
    return lhs - represent_combo(bracket(x, y))


def deviation(x: GeneratorId, y: GeneratorId, h=None) -> ShiftOperator:
    """Commutator of the represented pair minus the represented bracket."""
    return _at_weight(_deviation_sym(x, y), HighestWeight.coerce(h))


# -- checkers ---------------------------------------------------------


def check_witt_composite(K: int, h=None) -> CheckReport:
    """Exact in-half bracket relations for the e-family.

    Verifies deviation(e_i, e_j) = 0 as a rational-function identity for
    every ordered pair with distinct indices in the raising half
    (-1 <= i, j <= K) and in the lowering half (-K <= i, j <= 1); equal
    indices vanish trivially and are omitted.  One fixed cross-half pair
    is reported informationally with its operator class.
    """
    if K < 1:
        raise DomainError("max index must be at least 1")
    hw = HighestWeight.coerce(h)
    items = []
    for half, lo, hi in (("upper", -1, K), ("lower", -K, 1)):
        for i in range(lo, hi + 1):
            for j in range(lo, hi + 1):
                if i == j:
                    continue
                dev = deviation(e(i), e(j), hw)
                ok = dev.is_zero()
                items.append(
                    CheckItem(
                        subject=f"{half}: deviation(e_{i}, e_{j})",
                        verdict=PASS if ok else FAIL,
                        residual=None if ok else str(dev),
                    )
                )
    probe = deviation(e(2), e(-2), hw)
    items.append(
        CheckItem(
            subject="mixed: deviation(e_2, e_-2)",
            verdict=INFO,
            operator_class=probe.classify().label,
            note="cross-half probe, outside the verified ranges",
        )
    )
    return CheckReport.build(
        "witt-composite",
        {"max_index": K, "h": str(hw)},
        items,
        notes=("pairs with equal indices vanish identically and are omitted",),
    )


_EF_TABLE_NOTE = (
    "e-f table: verified relation is [e_i, f_j] = -j*f_{i+j}, the one the"
    " operator families satisfy exactly; the alternative convention"
    " [e_i, f_j] = j*f_j fails already at (i, j) = (0, 1)"
)


def check_extended_composite(K: int, h=None) -> CheckReport:
    """Exact in-half relations once the abelian family joins.

    Upper half: e-indices in [-1, K] against f-indices in [0, K]; lower
    half mirrored.  Checks [T(e_i), T(f_j)] = -j*T(f_{i+j}) and
    [T(f_i), T(f_j)] = 0, all exactly.
    """
    if K < 1:
        raise DomainError("max index must be at least 1")
    hw = HighestWeight.coerce(h)
    items = []
    halves = (
        ("upper", range(-1, K + 1), range(0, K + 1)),
        ("lower", range(-K, 2), range(-K, 1)),
    )
    for half, e_range, f_range in halves:
        for i in e_range:
            for j in f_range:
                dev = deviation(e(i), f(j), hw)
                ok = dev.is_zero()
                items.append(
                    CheckItem(
                        subject=f"{half}: deviation(e_{i}, f_{j})",
                        verdict=PASS if ok else FAIL,
                        residual=None if ok else str(dev),
                    )
                )
        f_list = list(f_range)
        for a in f_list:
            for b in f_list:
                if a >= b:
                    continue
                dev = deviation(f(a), f(b), hw)
                ok = dev.is_zero()
                items.append(
                    CheckItem(
                        subject=f"{half}: deviation(f_{a}, f_{b})",
                        verdict=PASS if ok else FAIL,
                        residual=None if ok else str(dev),
                    )
                )
    return CheckReport.build(
        "extended-composite",
        {"max_index": K, "h": str(hw)},
        items,
        notes=(_EF_TABLE_NOTE,),
    )


def _inner_product_probe(h0: Fraction, K: int, size: int = 12) -> bool:
    # independent numeric leg: <A z^m, z^n> = <z^m, A* z^n> with exact
    # rational arithmetic at a fixed weight
    wvals = [evaluate(WEIGHT.value(n), h0) for n in range(size + 2 * K + 1)]

    def pairing(terms, n):
        acc = Fraction(0)
        for expo, v in terms:
            if expo == n:
                acc += evaluate(v, h0) * wvals[n]
        return acc

    for mk in (op_L, op_F):
        for k in range(-K, K + 1):
            a, astar = mk(k), mk(-k)
            applied = [a.apply_to_monomial(m) for m in range(size + 1)]
            applied_star = [astar.apply_to_monomial(n) for n in range(size + 1)]
            for m in range(size + 1):
                for n in range(size + 1):
                    if pairing(applied[m], n) != pairing(applied_star[n], m):
                        return False
    return True


def check_symmetric(K: int, h=None) -> CheckReport:
    """Adjoint symmetry of both families: T(x_k)* = T(x_{-k}).

    The operator identity is verified at the formal weight.  When a
    numeric unitarizable weight is supplied, an independent finite
    inner-product cross-check at that weight is appended.
    """
    if K < 1:
        raise DomainError("max index must be at least 1")
    hw = HighestWeight.coerce(h)
    items = []
    for fam, mk in (("e", op_L), ("f", op_F)):
        for k in range(-K, K + 1):
            ok = mk(k).adjoint() == mk(-k)
            items.append(
                CheckItem(
                    subject=f"adjoint(T({fam}_{k})) = T({fam}_{-k})",
                    verdict=PASS if ok else FAIL,
                )
            )
    if not hw.is_symbolic:
        if not hw.is_unitarizable:
            raise DomainError("the numeric leg needs a rational weight h > 0")
        ok = _inner_product_probe(hw.value, K)
        items.append(
            CheckItem(
                subject=f"inner-product cross-check at h={hw.value} on monomials up to 12",
                verdict=PASS if ok else FAIL,
                note="exact rational pairing, no tolerance",
            )
        )
    return CheckReport.build("symmetric", {"max_index": K, "h": str(hw)}, items)


def check_absolutely_symmetric(max_len: int, index_bound: int, h=None) -> CheckReport:
    """Every zero-graded word acts as a self-adjoint operator.

    Words are tuples over both families, graded by index sum; every word
    of length <= max_len, indices bounded by index_bound and grade zero is
    enumerated and T(word) = T(word)* checked exactly.  Each letter
    already satisfies T(x)* = T(x with index negated), so this adjoint
    reading coincides with the image of the reversed index-negated word;
    the notes record that the adjoint reading is the one computed.
    """
    if max_len < 2:
        raise DomainError("word length bound must be at least 2")
    if index_bound < 0:
        raise DomainError("index bound must be nonnegative")
    hw = HighestWeight.coerce(h)
    if not hw.is_symbolic:
        raise DomainError("the word-symmetry check runs at the formal weight")
    letters = [
        GeneratorId(fam, i)
        for i in range(-index_bound, index_bound + 1)
        for fam in ("e", "f")
    ]
    items: list[CheckItem] = []

    def walk(word: tuple, product: ShiftOperator, total: int):
        if word and total == 0:
            adj = product.adjoint()
            ok = adj == product
            items.append(
                CheckItem(
                    subject="word " + " ".join(str(x) for x in word),
                    verdict=PASS if ok else FAIL,
                    residual=None if ok else str(product - adj),
                )
            )
        if len(word) == max_len:
            return
        slack = index_bound * (max_len - len(word) - 1)
        for letter in letters:
            t = total + letter.index
            if abs(t) > slack:
                continue
            walk(word + (letter,), product @ represent(letter), t)

    walk((), ShiftOperator.identity(), 0)
    return CheckReport.build(
        "absolutely-symmetric",
        {"max_word_length": max_len, "index_bound": index_bound, "h": str(hw)},
        items,
        notes=(
            "reading: each word's product operator is compared with its"
            " adjoint; by exact letter symmetry this coincides with the"
            " image of the reversed, index-negated word",
        ),
    )


def check_absolutely_closed(
    depth: int, index_bound: int, h=None, mode: str = "bracket"
) -> CheckReport:
    """Nested commutator defects stay small.

    For tuples (X_0, ..., X_{m+1}) with 1 <= m <= depth and indices
    bounded by index_bound over both families, forms the iterated operator
    commutator N = [...[[T(X_0), T(X_1)], T(X_2)], ...] and the iterated
    table bracket phi.  Bracket mode gates each item on
    classify(N - T(phi)) <= hilbert-schmidt; literal mode gates on
    classify(N) instead.  Both classifications are recorded on every item
    so the non-gating reading stays visible.
    """
    if depth < 1:
        raise DomainError("depth must be at least 1")
    if index_bound < 0:
        raise DomainError("index bound must be nonnegative")
    if mode not in ("bracket", "literal"):
        raise DomainError("mode must be 'bracket' or 'literal'")
    hw = HighestWeight.coerce(h)
    letters = [
        GeneratorId(fam, i)
        for i in range(-index_bound, index_bound + 1)
        for fam in ("e", "f")
    ]
    items: list[CheckItem] = []
    nonzero_phi = 0

    def visit(tail_letters, acc_op: ShiftOperator, acc_combo: Combo, length: int):
        nonlocal nonzero_phi
        # tuples of length 3 .. depth + 2 (nesting level 1 .. depth); the
        # length-2 case is the plain pair deviation covered elsewhere
        if length >= 3:
            remainder = acc_op - represent_combo(acc_combo, hw)
            bracket_cls = remainder.classify()
            literal_cls = acc_op.classify() if hw.is_symbolic else _at_weight(
                acc_op, hw
            ).classify()
            gate = bracket_cls if mode == "bracket" else literal_cls
            ok = gate <= _HS
            if acc_combo:
                nonzero_phi += 1
            items.append(
                CheckItem(
                    subject="(" + ", ".join(str(x) for x in tail_letters) + ")",
                    verdict=PASS if ok else FAIL,
                    operator_class=gate.label,
                    note=(
                        f"defect class {bracket_cls.label};"
                        f" plain nested-commutator class {literal_cls.label};"
                        f" table bracket {_combo_str(acc_combo)}"
                    ),
                )
            )
        if length == depth + 2:
            return
        for letter in letters:
            visit(
                tail_letters + (letter,),
                acc_op.commutator(represent(letter)) if length else represent(letter),
                bracket_combo(acc_combo, {letter: Fraction(1)}) if length else {letter: Fraction(1)},
                length + 1,
            )

    visit((), ShiftOperator.zero(), {}, 0)
    if hw.is_symbolic:
        sub_note = ()
    else:
        sub_note = (f"operators evaluated at the numeric weight h = {hw.value}",)
    return CheckReport.build(
        "absolutely-closed",
        {"depth": depth, "index_bound": index_bound, "h": str(hw), "mode": mode},
        items,
        notes=(
            f"table bracket was nonzero for {nonzero_phi} of {len(items)}"
            " tuples: the strict reading (defect of the plain nested"
            " commutator) cannot hold uniformly; bracket mode verifies the"
            " defect after subtracting the represented table bracket",
        )
        + sub_note,
    )


def check_hs_deviations(
    index_bound: int = 6,
    h0=Fraction(1, 2),
    count: int = 500,
    tail_fraction=Fraction(1, 100),
) -> CheckReport:
    """Cross-half deviations are small: symbolic class plus numeric tails.

    For i in [2, index_bound] and j in [-index_bound, -2], the deviation
    of (e_i, e_j) must classify as zero, trace-class or hilbert-schmidt,
    and the squared-element partial sums at the numeric weight must have
    S_count - S_{count/2} below tail_fraction of S_count.
    """
    if index_bound < 2:
        raise DomainError("index bound must be at least 2")
    h0 = Fraction(h0)
    if h0 <= 0:
        raise DomainError("numeric weight must be positive")
    items = []
    for i in range(2, index_bound + 1):
        for j in range(-index_bound, -1):
            dev = deviation(e(i), e(j))
            cls = dev.classify()
            sym_ok = cls <= _HS
            sums = dev.hs_partial_sums(count, h0)
            total, half = sums[count], sums[count // 2]
            if total == 0.0:
                num_ok, frac_txt = True, "0"
            else:
                frac = (total - half) / total
                num_ok = frac < float(tail_fraction)
                frac_txt = f"{frac:.3e}"
            items.append(
                CheckItem(
                    subject=f"deviation(e_{i}, e_{j})",
                    verdict=PASS if (sym_ok and num_ok) else FAIL,
                    operator_class=cls.label,
                    note=f"tail increment fraction {frac_txt} at h={h0}, columns <= {count}",
                )
            )
    return CheckReport.build(
        "hs-deviations",
        {
            "index_bound": index_bound,
            "h0": str(h0),
            "count": count,
            "tail_fraction": str(Fraction(tail_fraction)),
        },
        items,
        notes=("partial sums: terms exact, running sums accumulated in float64",),
    )


# -- lattice tail-square equivalence ------------------------------------------


def _univariate_difference(r1: RationalFunc, r2: RationalFunc) -> RationalFunc:
    if not isinstance(r1, RationalFunc) or not isinstance(r2, RationalFunc):
        raise DomainError("expected rational-function operands")
    if r1.symbol != r2.symbol:
        if r1.symbol == "h":
            r1 = qhn_const(r1)
        elif r2.symbol == "h":
            r2 = qhn_const(r2)
    return r1 - r2


def _as_fraction_polys(d: RationalFunc):
    if d.symbol == "h":
        return d.num, d.den
    try:
        return fraction_coeff_tuples(d)
    except ValueError:
        raise DomainError(
            "the difference must be univariate; it depends on both symbols"
        ) from None


def _refuse_lattice_poles(den, h0: Fraction):
    if len(den) <= 1:
        return
    lead = den[-1]
    bound = 1 + max(abs(c / lead) for c in den[:-1])
    x = h0
    while x <= bound:
        acc = Fraction(0)
        for c in reversed(den):
            acc = acc * x + c
        if acc == 0:
            raise PoleError(x, f"difference has a pole on the sample lattice at {x}")
        x += 1


def tail_square_equivalence(r1: RationalFunc, r2: RationalFunc, h0) -> bool:
    """Decide whether sum_{j>=0} |r1(h0+j) - r2(h0+j)|^2 converges.

    True iff the difference vanishes identically or has growth degree
    <= -1 (so the squared terms decay at least like 1/j^2).  Refuses with
    a pole error if the difference has a pole on the lattice h0 + j.
    """
    h0 = Fraction(h0)
    d = _univariate_difference(r1, r2)
    if d.is_zero():
        return True
    _, den = _as_fraction_polys(d)
    _refuse_lattice_poles(den, h0)
    return asymptotic_degree(d) <= -1


def tail_square_probe(r1: RationalFunc, r2: RationalFunc, h0, count: int = 10000) -> bool:
    """Numeric cross-check of tail_square_equivalence on the first terms.

    Sums |difference|^2 in float64 and calls the series convergent iff the
    second half-block sum strictly undercuts the preceding block (or all
    sampled terms vanish).
    """
    h0 = Fraction(h0)
    if count < 8:
        raise DomainError("probe needs at least 8 terms")
    d = _univariate_difference(r1, r2)
    if d.is_zero():
        return True
    num, den = _as_fraction_polys(d)
    _refuse_lattice_poles(den, h0)
    fnum = [float(c) for c in num]
    fden = [float(c) for c in den]

    def value(x: float) -> float:
        acc = 0.0
        for c in reversed(fnum):
            acc = acc * x + c
        dacc = 0.0
        for c in reversed(fden):
            dacc = dacc * x + c
        return acc / dacc

    x0 = float(h0)
    terms = [value(x0 + j) ** 2 for j in range(count)]
    q = count // 4
    b1 = sum(terms[q : 2 * q])
    b2 = sum(terms[2 * q :])
    if b1 == 0.0 and b2 == 0.0:
        return True
    return b2 < b1


def tail_equivalence_report(r1: RationalFunc, r2: RationalFunc, h0, probe_terms: int = 10000) -> CheckReport:
    symbolic = tail_square_equivalence(r1, r2, h0)
    numeric = tail_square_probe(r1, r2, h0, probe_terms)
    answer = "equivalent (tail-square series converges)" if symbolic else "not equivalent (series diverges)"
    items = [
        CheckItem(subject="symbolic decision", verdict=INFO, note=answer),
        CheckItem(
            subject="numeric probe agreement",
            verdict=PASS if numeric == symbolic else FAIL,
            note=f"first {probe_terms} terms say "
            + ("convergent" if numeric else "divergent"),
        ),
    ]
    return CheckReport.build(
        "tail-equivalence",
        {"r1": str(r1), "r2": str(r2), "h0": str(Fraction(h0))},
        items,
    )
