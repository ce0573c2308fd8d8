"""Exact scalars in Q(i)."""

from fractions import Fraction


def _rational(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return _rational(Fraction(x.strip()))
    raise TypeError(f"not an exact rational: {x!r}")


def _norm(x):
    # int stays int; Fraction with denominator 1 collapses to int
    if type(x) is int:
        return x
    return x.numerator if x.denominator == 1 else x


def _fmt_rational(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class GaussianRational:
    """A number ``a + b*i`` with ``a`` and ``b`` rational.

    Values are immutable. Integral parts are held as ``int`` internally so
    that the common integer case stays cheap; :attr:`real` and :attr:`imag`
    always hand back reduced :class:`~fractions.Fraction` objects.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, real=0, imag=0):
        if isinstance(real, GaussianRational):
            if imag:
                raise TypeError("imag must be omitted when copying a GaussianRational")
            self._re, self._im = real._re, real._im
            return
        self._re = _rational(real)
        self._im = _rational(imag)

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        obj._re = re
        obj._im = im
        return obj

    @classmethod
    def coerce(cls, value):
        """Return ``value`` as a GaussianRational, or raise TypeError."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating point complex numbers are not accepted")
        return cls(value)

    @classmethod
    def parse(cls, text):
        from .polynomial import Polynomial

        return Polynomial.parse(text).constant_value()

    @property
    def real(self):
        return Fraction(self._re)

    @property
    def imag(self):
        return Fraction(self._im)

    def is_real(self):
        return self._im == 0

    def conjugate(self):
        return GaussianRational._raw(self._re, -self._im)

    def norm(self):
        """Return ``|z|^2`` as a Fraction."""
        return Fraction(self._re * self._re + self._im * self._im)

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _other(other):
        if isinstance(other, GaussianRational):
            return other._re, other._im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return _norm(other), 0
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(_norm(self._re + o[0]), _norm(self._im + o[1]))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(_norm(self._re - o[0]), _norm(self._im - o[1]))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(_norm(o[0] - self._re), _norm(o[1] - self._im))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self._re, self._im
        c, d = o
        if b == 0 and d == 0:
            return GaussianRational._raw(_norm(a * c), 0)
        return GaussianRational._raw(_norm(a * c - b * d), _norm(a * d + b * c))

    __rmul__ = __mul__

    def inverse(self):
        a, b = self._re, self._im
        if b == 0:
            if a == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational._raw(_norm(Fraction(1) / a), 0)
        n = Fraction(a * a + b * b)
        return GaussianRational._raw(_norm(a / n), _norm(-b / n))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o[1] == 0:
            if o[0] == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            c = Fraction(o[0])
            return GaussianRational._raw(_norm(self._re / c), _norm(self._im / c))
        return self * GaussianRational._raw(*o).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(*o) * self.inverse()

    def __neg__(self):
        return GaussianRational._raw(-self._re, -self._im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -----------------------------------------------------------

    def __bool__(self):
        return self._re != 0 or self._im != 0

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._re == o[0] and self._im == o[1]

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    # text -----------------------------------------------------------------

    def __repr__(self):
        if self._im == 0:
            return f"GaussianRational({_fmt_rational(self._re)!r})"
        return f"GaussianRational({_fmt_rational(self._re)!r}, {_fmt_rational(self._im)!r})"

    def __str__(self):
        if self._im == 0:
            return _fmt_rational(self._re)
        sign = "-" if self._im < 0 else "+"
        return f"({_fmt_rational(self._re)} {sign} {_fmt_rational(abs(self._im))} i)"

    def to_json(self):
        """Return ``[real, imag]`` as strings, the JSON form used in reports."""
        return [_fmt_rational(self._re), _fmt_rational(self._im)]


ZERO = GaussianRational._raw(0, 0)
ONE = GaussianRational._raw(1, 0)
I = GaussianRational._raw(0, 1)
HALF = GaussianRational._raw(Fraction(1, 2), 0)
