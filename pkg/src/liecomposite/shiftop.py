"""Banded shift operators with exact rational-function coefficients.

An operator here is a finite sum of components, each acting on the
monomial basis by z^n -> c(n) * z^(n+d) for an integer displacement d
and a coefficient c rational in n over Q(h).  Storing the band structure
instead of a truncated matrix keeps every identity decidable: composition,
commutators and adjoints reduce to rational-function arithmetic, and
membership in the standard operator classes reduces to an integer growth
exponent per band.

Numerics are confined to two methods. truncate_numeric emits IEEE-754
doubles. hs_partial_sums evaluates each squared matrix element exactly as
a rational, then accumulates the running sums in floating point; the exact
sums exist but their denominators grow out of all proportion.
"""

from __future__ import annotations

import math
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import (
    DomainError,
    MalformedInputError,
    NegativeExponentError,
    ParseError,
    PoleError,
)
from .exact import (
    RationalFunc,
    asymptotic_degree,
    evaluate,
    parse,
    qh_const,
    qhn_const,
    var_h,
    var_h_in_n,
    var_n,
    substitute_h,
)


class OperatorClass(IntEnum):
    """Operator-class membership, ordered by containment (smallest first).

    Classification is decided per band from the integer growth exponent
    g = asymptotic_degree(coeff) + shift of the orthonormal matrix
    elements: g <= -2 trace class, g = -1 Hilbert-Schmidt, g = 0 bounded,
    g >= 1 unbounded.  At this integer granularity compact and
    Hilbert-Schmidt coincide (both are g <= -1), so no separate compact
    class is exposed.
    """

    ZERO = 0
    TRACE_CLASS = 1
    HILBERT_SCHMIDT = 2
    BOUNDED = 3
    UNBOUNDED = 4

    @property
    def label(self) -> str:
        return _CLASS_LABELS[self]

    @classmethod
    def from_label(cls, label: str) -> "OperatorClass":
        for member, name in _CLASS_LABELS.items():
            if name == label:
                return member
        raise ValueError(f"unknown operator class label: {label!r}")


_CLASS_LABELS = {
    OperatorClass.ZERO: "zero",
    OperatorClass.TRACE_CLASS: "trace-class",
    OperatorClass.HILBERT_SCHMIDT: "hilbert-schmidt",
    OperatorClass.BOUNDED: "bounded",
    OperatorClass.UNBOUNDED: "unbounded",
}


class ShiftComponent(NamedTuple):
    shift: int
    coeff: RationalFunc  # nonzero, rational in n over Q(h)


def _as_coeff(value) -> RationalFunc:
    if isinstance(value, RationalFunc):
        return value if value.symbol == "n" else qhn_const(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return qhn_const(Fraction(value))
    if isinstance(value, Fraction):
        return qhn_const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a band coefficient")


def _as_scalar(value) -> RationalFunc:
    # scalars live in Q(h): n-dependent scaling would be a composition,
    # not a scalar multiple
    if isinstance(value, RationalFunc) and value.symbol == "n":
        if not value.is_constant():
            raise TypeError("operator scalars must not depend on n")
        value = value.constant_value()
    return _as_coeff(value)


class WeightFunction:
    """Norms of the monomial basis vectors: value(0) = 1 and
    value(n) = n * (2h + n - 1) * value(n - 1), h formal.

    Closed form: value(n) = n! * prod_{j=0}^{n-1} (2h + j); positive for
    every rational h > 0.  These are exactly the weights that make the
    raising and lowering families below mutual adjoints.
    """

    def __init__(self):
        self._values = [qh_const(1)]
        self._ratios: dict[int, RationalFunc] = {0: qhn_const(1)}

    def value(self, n: int) -> RationalFunc:
        """value(n) as an element of Q(h)."""
        if n < 0:
            raise DomainError("weights are indexed by n >= 0")
        vals = self._values
        h = var_h()
        while len(vals) <= n:
            m = len(vals)
            vals.append(vals[-1] * m * (2 * h + (m - 1)))
        return vals[n]

    def ratio(self, d: int) -> RationalFunc:
        """value(n)/value(n-d) as a rational function of n (symbolic h)."""
        cached = self._ratios.get(d)
        if cached is not None:
            return cached
        n, h = var_n(), var_h_in_n()
        r = qhn_const(1)
        if d > 0:
            for t in range(d):
                r = r * (n - t) * (2 * h + n - t - 1)
        else:
            for t in range(1, -d + 1):
                r = r * (n + t) * (2 * h + n + t - 1)
            r = 1 / r
        self._ratios[d] = r
        return r

    def forward_ratio(self, n: int, d: int, h0: Fraction) -> Fraction:
        """value(n+d)/value(n) at numeric h0 > 0, as an exact rational."""
        if n < 0 or n + d < 0:
            raise DomainError("weight ratio needs n >= 0 and n + d >= 0")
        out = Fraction(1)
        if d >= 0:
            for t in range(1, d + 1):
                out *= Fraction(n + t) * (2 * h0 + n + t - 1)
        else:
            for t in range(0, -d):
                out *= Fraction(n - t) * (2 * h0 + n - t - 1)
            out = 1 / out
        return out


WEIGHT = WeightFunction()


class ShiftOperator:
    """Immutable finite sum of shift components.

    Construct from an iterable of (shift, coeff) pairs; equal shifts are
    merged by addition and zero coefficients are dropped, so the stored
    tuple is canonical and equality is both structural and mathematical.
    """

    __slots__ = ("components",)

    components: tuple[ShiftComponent, ...]

    def __init__(self, components: Iterable = ()):
        merged: dict[int, RationalFunc] = {}
        for item in components:
            d, c = item
            if not isinstance(d, int) or isinstance(d, bool):
                raise TypeError("component shift must be an integer")
            c = _as_coeff(c)
            merged[d] = merged[d] + c if d in merged else c
        object.__setattr__(
            self,
            "components",
            tuple(
                ShiftComponent(d, merged[d])
                for d in sorted(merged)
                if not merged[d].is_zero()
            ),
        )

    def __setattr__(self, name, value):
        raise AttributeError("ShiftOperator is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "ShiftOperator":
        return cls(())

    @classmethod
    def identity(cls) -> "ShiftOperator":
        return cls(((0, 1),))

    @classmethod
    def single(cls, shift: int, coeff) -> "ShiftOperator":
        return cls(((shift, coeff),))

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.components

    def __bool__(self) -> bool:
        return bool(self.components)

    def __eq__(self, other):
        if not isinstance(other, ShiftOperator):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self) -> str:
        if not self.components:
            return "{}"
        return "{" + ", ".join(f"({d}, {c})" for d, c in self.components) + "}"

    def __repr__(self) -> str:
        return f"<shift-operator {self}>"

    # -- linear structure ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, ShiftOperator):
            return ShiftOperator(self.components + other.components)
        if isinstance(other, int) and other == 0:  # sum() support
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "ShiftOperator":
        return ShiftOperator((d, -c) for d, c in self.components)

    def __sub__(self, other):
        if not isinstance(other, ShiftOperator):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "ShiftOperator":
        s = _as_scalar(s)
        return ShiftOperator((d, c * s) for d, c in self.components)

    def __mul__(self, s):
        if isinstance(s, ShiftOperator):
            raise TypeError("use @ (compose) for operator products")
        return self.scale(s)

    __rmul__ = __mul__

    # -- multiplicative structure -------------------------------------------

    def compose(self, other: "ShiftOperator") -> "ShiftOperator":
        """self after other: (A @ B) z^n = A(B z^n).

        Band (dA, cA) against (dB, cB) contributes (dA+dB, cA(n+dB)*cB(n)).
        Stepwise agreement on monomials needs coefficient poles to stay off
        the nonnegative integers under every intermediate shift; denominators
        tied to generic h guarantee that, while an h-free integer pole could
        cancel against a zero and shift isolated matrix elements.
        """
        out = []
        for da, ca in self.components:
            for db, cb in other.components:
                out.append((da + db, ca.shift_arg(db) * cb))
        return ShiftOperator(out)

    def __matmul__(self, other):
        if not isinstance(other, ShiftOperator):
            return NotImplemented
        return self.compose(other)

    def commutator(self, other: "ShiftOperator") -> "ShiftOperator":
        return self.compose(other) - other.compose(self)

    # -- action on the module ------------------------------------------------

    def apply_to_monomial(self, n: int) -> list[tuple[int, RationalFunc]]:
        """Exact expansion of (operator applied to z^n) in the monomial basis.

        Returns (exponent, value) pairs with values in Q(h), zero terms
        dropped, exponents ascending.  A component that would lower below
        exponent 0 must have a vanishing coefficient there; otherwise the
        operator does not act on the polynomial module and the call raises.
        """
        if n < 0:
            raise DomainError("monomial exponents are n >= 0")
        out = []
        for d, c in self.components:
            v = evaluate(c, Fraction(n))
            if v.is_zero():
                continue
            if n + d < 0:
                raise NegativeExponentError(
                    f"component with shift {d} sends z^{n} below exponent 0 "
                    f"with nonzero coefficient {v}"
                )
            out.append((n + d, v))
        return out

    # -- adjoint and classification -------------------------------------------

    def adjoint(self, weight: WeightFunction | None = None) -> "ShiftOperator":
        """Adjoint for the inner product <z^m, z^n> = delta_mn * weight(n).

        Component (d, c) maps to (-d, c(n-d) * w(n)/w(n-d)); the transform
        keeps coefficients rational because the weight ratio is a finite
        product of linear factors.
        """
        w = WEIGHT if weight is None else weight
        return ShiftOperator(
            (-d, c.shift_arg(-d) * w.ratio(d)) for d, c in self.components
        )

    def classify(self) -> OperatorClass:
        """Least operator class containing this operator (h generic)."""
        worst = OperatorClass.ZERO
        for d, c in self.components:
            g = asymptotic_degree(c) + d
            if g <= -2:
                k = OperatorClass.TRACE_CLASS
            elif g == -1:
                k = OperatorClass.HILBERT_SCHMIDT
            elif g == 0:
                k = OperatorClass.BOUNDED
            else:
                k = OperatorClass.UNBOUNDED
            worst = max(worst, k)
        return worst

    # -- numerics ---------------------------------------------------------

    def _numeric_columns(self, size: int, h0) -> tuple[Fraction, list]:
        h0 = Fraction(h0)
        if h0 <= 0:
            raise DomainError("numeric evaluation needs a rational weight h0 > 0")
        if size < 0:
            raise DomainError("truncation size must be nonnegative")
        cols = []
        for d, c in self.components:
            ch = substitute_h(c, h0)
            vals = []
            for n in range(size + 1):
                try:
                    vals.append(evaluate(ch, Fraction(n)).constant_value())
                except PoleError:
                    raise PoleError(
                        Fraction(n), f"coefficient pole at n={n} with h0={h0}"
                    ) from None
            cols.append((d, vals))
        return h0, cols

    def truncate_numeric(self, size: int, h0) -> list[list[float]]:
        """Matrix of the operator in the orthonormal basis e_0..e_size.

        Entries are float64: entry(n+d, n) = c(n) * sqrt(w(n+d)/w(n)) at
        the given h0 > 0.  Bands leaving the index window are cut off.
        """
        h0, cols = self._numeric_columns(size, h0)
        mat = [[0.0] * (size + 1) for _ in range(size + 1)]
        for d, vals in cols:
            for n in range(size + 1):
                row = n + d
                if row < 0 or row > size or not vals[n]:
                    continue
                ratio = WEIGHT.forward_ratio(n, d, h0)
                mat[row][n] += float(vals[n]) * math.sqrt(ratio)
        return mat

    def hs_partial_sums(self, count: int, h0) -> list[float]:
        """Partial sums S_0..S_count of squared orthonormal matrix elements.

        S_k sums |entry|^2 over all bands and columns n <= k (rows are not
        truncated).  Each term is computed exactly as a rational, then the
        running sums are accumulated in float64.
        """
        h0, cols = self._numeric_columns(count, h0)
        per_n = [0.0] * (count + 1)
        for d, vals in cols:
            for n in range(count + 1):
                v = vals[n]
                if not v:
                    continue
                if n + d < 0:
                    raise NegativeExponentError(
                        f"component with shift {d} is not defined at z^{n}"
                    )
                per_n[n] += float(v * v * WEIGHT.forward_ratio(n, d, h0))
        sums = []
        running = 0.0
        for x in per_n:
            running += x
            sums.append(running)
        return sums

    # -- serialization ------------------------------------------------------

    def to_data(self) -> list[dict]:
        """JSON-ready form: list of {shift, coeff} with expression strings."""
        return [{"shift": d, "coeff": str(c)} for d, c in self.components]

    @classmethod
    def from_data(cls, data) -> "ShiftOperator":
        if not isinstance(data, list):
            raise MalformedInputError("operator data must be a list of components")
        comps = []
        for entry in data:
            if not isinstance(entry, dict) or set(entry) != {"shift", "coeff"}:
                raise MalformedInputError(
                    "each component must be an object with exactly"
                    " the keys 'shift' and 'coeff'"
                )
            shift = entry["shift"]
            if not isinstance(shift, int) or isinstance(shift, bool):
                raise MalformedInputError("component shift must be an integer")
            if not isinstance(entry["coeff"], str):
                raise MalformedInputError("component coeff must be a string")
            try:
                coeff = parse(entry["coeff"])
            except ParseError as exc:
                raise MalformedInputError(f"bad coefficient expression: {exc}") from None
            comps.append((shift, coeff))
        return cls(comps)
