"""Presented number fields Q[t]/(m(t)) and their elements.

Degree-1 fields are plain rationals in disguise; quadratic fields host the
irrational roots of characteristic polynomials.  Irreducibility of the
presenting polynomial is checked by rational-root absence plus a
square-free test, which is exact up to degree 2; a reducible higher-degree
modulus that slips past those checks is the caller's bug.
"""

from fractions import Fraction

from .errors import UnsupportedField
from .polynomials import QQ, Poly, poly_gcd, rational_roots


class NumberField:
    """Q[t]/(minpoly) with a monic modulus; also a Poly coefficient domain."""

    __slots__ = ("minpoly", "degree", "_zero", "_one")

    def __init__(self, minpoly):
        if isinstance(minpoly, (list, tuple)):
            minpoly = Poly(minpoly, QQ, "t")
        if not minpoly.is_monic() or minpoly.degree < 1:
            raise UnsupportedField("field modulus must be monic of degree >= 1")
        if minpoly.degree >= 2:
            roots, _ = rational_roots(minpoly)
            if roots:
                raise UnsupportedField(f"modulus {minpoly} has a rational root")
            if poly_gcd(minpoly, minpoly.derivative()).degree > 0:
                raise UnsupportedField(f"modulus {minpoly} is not square-free")
        object.__setattr__(self, "minpoly", minpoly)
        object.__setattr__(self, "degree", minpoly.degree)
        object.__setattr__(self, "_zero", None)
        object.__setattr__(self, "_one", None)

    def __setattr__(self, name, value):
        if name in ("_zero", "_one"):
            object.__setattr__(self, name, value)
        else:
            raise AttributeError("NumberField is immutable")

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly.coeffs == other.minpoly.coeffs

    def __hash__(self):
        return hash(self.minpoly.coeffs)

    def __repr__(self):
        if self.degree == 1:
            return "QQ"
        return f"QQ[t]/({self.minpoly})"

    # -- domain protocol (usable as Poly coefficient domain) ---------------

    @property
    def zero(self):
        if self._zero is None:
            self._zero = NumberFieldElement(self, (Fraction(0),) * self.degree)
        return self._zero

    @property
    def one(self):
        if self._one is None:
            coords = [Fraction(0)] * self.degree
            coords[0] = Fraction(1)
            self._one = NumberFieldElement(self, tuple(coords))
        return self._one

    def coerce(self, value):
        if isinstance(value, NumberFieldElement):
            if value.field == self:
                return value
            if value.is_rational():
                return self.from_rational(value.as_rational())
            raise UnsupportedField(f"cannot move {value} into {self}")
        if isinstance(value, (int, Fraction)):
            return self.from_rational(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def from_rational(self, q):
        coords = [Fraction(0)] * self.degree
        coords[0] = Fraction(q)
        return NumberFieldElement(self, tuple(coords))

    def element(self, coords):
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            rep = Poly(coords, QQ, "t") % self.minpoly
            coords = list(rep.coeffs)
        coords += [Fraction(0)] * (self.degree - len(coords))
        return NumberFieldElement(self, tuple(coords))

    def generator(self):
        if self.degree < 2:
            raise UnsupportedField("degree-1 field has no generator")
        return self.element([0, 1])


RATIONAL_FIELD = NumberField(Poly([0, 1], QQ, "t"))


class NumberFieldElement:
    """Residue of a rational polynomial modulo the field's minpoly."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    # -- helpers -----------------------------------------------------------

    def _lift(self):
        return Poly(self.coords, QQ, "t")

    def _same(self, other):
        if isinstance(other, NumberFieldElement):
            if other.field == self.field:
                return other
            if other.is_rational():
                return self.field.from_rational(other.as_rational())
            return None
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(Fraction(other))
        return None

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def is_rational(self):
        return not any(self.coords[1:])

    def as_rational(self):
        if not self.is_rational():
            raise UnsupportedField(f"{self} is not rational")
        return self.coords[0]

    def sort_key(self):
        return (self.field.minpoly.coeffs, self.coords)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return NumberFieldElement(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return NumberFieldElement(
            self.field, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        product = self._lift() * other._lift()
        rep = product % self.field.minpoly
        coords = list(rep.coeffs) + [Fraction(0)] * (self.field.degree - len(rep.coeffs))
        return NumberFieldElement(self.field, tuple(coords))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        # extended Euclid against the modulus
        r0, r1 = self.field.minpoly, self._lift()
        s0, s1 = Poly([], QQ, "t"), Poly([1], QQ, "t")
        while r1.degree > 0:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        # r1 is a nonzero constant: gcd(rep, minpoly) = 1 since minpoly is irreducible
        inv = s1.scale(Fraction(1) / r1.coefficient(0))
        rep = inv % self.field.minpoly
        coords = list(rep.coeffs) + [Fraction(0)] * (self.field.degree - len(rep.coeffs))
        return NumberFieldElement(self.field, tuple(coords))

    def __truediv__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- printing --------------------------------------------------------------

    def __str__(self):
        if self.is_rational():
            return str(self.coords[0])
        return str(self._lift())

    def __repr__(self):
        return f"NFE({self})"


def common_field(first, second):
    """Smallest supported field containing both; only QQ embeds elsewhere."""
    if first == second:
        return first
    if first.degree == 1:
        return second
    if second.degree == 1:
        return first
    raise UnsupportedField(
        f"no supported field contains both {first} and {second}"
    )


def embed(element, field):
    """Move an element into ``field`` (identity or QQ-embedding only)."""
    if element.field == field:
        return element
    if element.is_rational():
        return field.from_rational(element.as_rational())
    raise UnsupportedField(f"cannot embed {element} into {field}")


def quadratic_field(poly):
    """Field presented by a monic irreducible quadratic over Q."""
    if poly.degree != 2:
        raise UnsupportedField("expected a quadratic modulus")
    monic = poly.monic()
    return NumberField(Poly(monic.coeffs, QQ, "t"))
