"""Truncated power series in one variable.

``TruncatedSeries([c0, c1, ..., cM])`` stands for ``c0 + c1 x + ... + cM x^M``
with everything above ``x^M`` unknown rather than zero, so the order of a
result is the smallest order of its operands (and drops by one under
differentiation). Coefficients may be floats or :class:`fractions.Fraction`;
arithmetic never mixes in anything else, so rational input stays exact.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Number


class TruncatedSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = coeffs

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedSeries":
        zero = value * 0
        return cls((value,) + (zero,) * order)

    @classmethod
    def variable(cls, order: int, one=Fraction(1)) -> "TruncatedSeries":
        """The series of ``x`` itself."""
        if order < 1:
            raise ValueError("x needs order >= 1")
        zero = one * 0
        return cls((zero, one) + (zero,) * (order - 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)!r})"

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot raise order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, Number):
            return TruncatedSeries.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = min(self.order, other.order)
        return TruncatedSeries(a + b for a, b in zip(self.coeffs[: m + 1], other.coeffs[: m + 1]))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-a for a in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return TruncatedSeries(a * other for a in self.coeffs)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        m = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return TruncatedSeries(sum(a[i] * b[j - i] for i in range(j + 1)) for j in range(m + 1))

    __rmul__ = __mul__

    def reciprocal(self) -> "TruncatedSeries":
        """``1/self``; needs a non-zero constant term."""
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        out = [1 / a[0] if not isinstance(a[0], Fraction) else Fraction(1) / a[0]]
        for j in range(1, len(a)):
            out.append(-sum(a[i] * out[j - i] for i in range(1, j + 1)) / a[0])
        return TruncatedSeries(out)

    def __truediv__(self, other):
        if isinstance(other, Number):
            return TruncatedSeries(a / other for a in self.coeffs)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def deriv(self) -> "TruncatedSeries":
        """Derivative; the order drops by one."""
        if self.order == 0:
            raise ValueError("the derivative of an order-0 series is unknown")
        return TruncatedSeries(i * a for i, a in enumerate(self.coeffs) if i > 0)

    def shift(self) -> "TruncatedSeries":
        """Multiply by ``x``; the order rises by one."""
        return TruncatedSeries((self.coeffs[0] * 0,) + self.coeffs)

    def __call__(self, x):
        """Evaluate the truncated polynomial (Horner); ``x`` may be an array."""
        acc = 0 * x + float(self.coeffs[-1])
        for a in reversed(self.coeffs[:-1]):
            acc = acc * x + float(a)
        return acc

    def to_floats(self) -> list[float]:
        return [float(a) for a in self.coeffs]
