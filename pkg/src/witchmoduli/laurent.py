"""Laurent polynomials in one parameter t with rational coefficients.

These carry the one-parameter families whose t -> 0+ behavior the limit
machinery evaluates.  Every question we ask - eventual sign, eventual
comparison, limit in R cup {inf} - is decided exactly from the lowest
order term, and limits of quotients are decided by order comparison
without ever dividing polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from .errors import DegenerateFamily
from .moduli import INF, ExtendedPoint

Q = Fraction


@dataclass(frozen=True)
class Laurent:
    """Finite sum of c * t^e with integer exponents and rational coefficients."""

    terms: tuple[tuple[int, Fraction], ...]  # sorted by exponent, no zeros

    @staticmethod
    def of(data) -> "Laurent":
        """Build from a constant, another Laurent, or an iterable of (e, c)."""
        if isinstance(data, Laurent):
            return data
        if isinstance(data, (int, Fraction)):
            data = [(0, data)]
        acc: dict[int, Fraction] = {}
        for e, c in data:
            c = Fraction(c)
            if c:
                acc[int(e)] = acc.get(int(e), Q(0)) + c
        return Laurent(tuple(sorted((e, c) for e, c in acc.items() if c)))

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = Laurent.of(other)
        return Laurent.of(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self):
        return Laurent(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-Laurent.of(other))

    def __rsub__(self, other):
        return Laurent.of(other) - self

    def __mul__(self, other):
        other = Laurent.of(other)
        return Laurent.of(
            [(e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms]
        )

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    # -- order data ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        """Lowest exponent; raises on the zero polynomial."""
        if not self.terms:
            raise DegenerateFamily("order of the zero polynomial")
        return self.terms[0][0]

    def leading(self) -> Fraction:
        if not self.terms:
            return Q(0)
        return self.terms[0][1]

    def eventual_sign(self) -> int:
        """Sign for all sufficiently small t > 0."""
        if not self.terms:
            return 0
        return 1 if self.terms[0][1] > 0 else -1

    def eventually_positive(self) -> bool:
        return self.eventual_sign() > 0

    def eventually_less(self, other) -> bool:
        return (Laurent.of(other) - self).eventual_sign() > 0

    def __call__(self, t: Fraction) -> Fraction:
        t = Fraction(t)
        return sum((c * t ** e for e, c in self.terms), Q(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}" if e == 0 else (f"{c}*t^{e}" if e != 1 else f"{c}*t")
            for e, c in self.terms
        )


ZERO = Laurent(())
ONE = Laurent.of(1)


def t_power(e: int, coeff=1) -> Laurent:
    return Laurent.of([(e, coeff)])


def const(c) -> Laurent:
    return Laurent.of(c)


# ---------------------------------------------------------------------------
# limits as t -> 0+
# ---------------------------------------------------------------------------


def ext_limit_scalar(f: Laurent) -> ExtendedPoint:
    """lim_{t->0+} f(t) in R cup {inf}."""
    f = Laurent.of(f)
    if f.is_zero:
        return ExtendedPoint((Q(0),))
    o = f.order()
    if o > 0:
        return ExtendedPoint((Q(0),))
    if o == 0:
        return ExtendedPoint((f.leading(),))
    return INF


def ext_limit(f) -> ExtendedPoint:
    """Limit of a Laurent scalar or pair; any diverging coordinate gives inf."""
    if isinstance(f, Laurent):
        return ext_limit_scalar(f)
    parts = [ext_limit_scalar(Laurent.of(c)) for c in f]
    if any(part.is_infinity for part in parts):
        return INF
    return ExtendedPoint(tuple(part.coords[0] for part in parts))


def ratio_limit_scalar(num: Laurent, den: Laurent) -> ExtendedPoint:
    """lim num/den with den not identically zero."""
    num, den = Laurent.of(num), Laurent.of(den)
    if den.is_zero:
        raise DegenerateFamily("division by the zero polynomial")
    if num.is_zero:
        return ExtendedPoint((Q(0),))
    d = num.order() - den.order()
    if d > 0:
        return ExtendedPoint((Q(0),))
    if d == 0:
        return ExtendedPoint((num.leading() / den.leading(),))
    return INF


def ratio_limit_pair(num_pair, den: Laurent) -> ExtendedPoint:
    parts = [ratio_limit_scalar(Laurent.of(c), den) for c in num_pair]
    if any(part.is_infinity for part in parts):
        return INF
    return ExtendedPoint(tuple(part.coords[0] for part in parts))


def ratio_order(num: Laurent, den: Laurent) -> int | None:
    """Order of num/den near 0+ (None when num = 0, meaning +infinity)."""
    if Laurent.of(num).is_zero:
        return None
    return Laurent.of(num).order() - Laurent.of(den).order()
