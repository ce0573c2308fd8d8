"""Sparse multivariate (Laurent) polynomials over Q(i).

Variables live in a process-wide registry. The registration order fixes the
graded-lexicographic term order, so two polynomials built in different ways
print identically. Negative exponents are only allowed on variables that were
registered as Laurent (torus) coordinates.
"""

import re
import threading
from fractions import Fraction

from ..errors import LaurentError, ParseError, UnboundVariableError
from .gaussian import ONE, ZERO, GaussianRational

_NAMES = []
_INDEX = {}
_LAURENT = set()
_LOCK = threading.Lock()
_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_RESERVED = {"i"}


def register_variable(name, laurent=False):
    """Register ``name`` and return its index. Re-registering is a no-op."""
    idx = _INDEX.get(name)
    if idx is not None:
        if laurent != (idx in _LAURENT):
            raise ValueError(f"variable {name!r} already registered with laurent={not laurent}")
        return idx
    if not _NAME_RE.match(name) or name in _RESERVED:
        raise ValueError(f"invalid variable name {name!r}")
    with _LOCK:
        idx = _INDEX.get(name)
        if idx is None:
            idx = len(_NAMES)
            _NAMES.append(name)
            _INDEX[name] = idx
            if laurent:
                _LAURENT.add(idx)
    return idx


def register_variables(names, laurent=False):
    return [register_variable(n, laurent) for n in names]


def is_registered(name):
    return name in _INDEX


def is_laurent(name):
    return _INDEX[name] in _LAURENT


def variable_index(name):
    try:
        return _INDEX[name]
    except KeyError:
        raise KeyError(f"unregistered variable {name!r}") from None


def variable_name(index):
    return _NAMES[index]


class Monomial(tuple):
    """A power product, stored as sorted ``(variable index, exponent)`` pairs.

    Construct from a mapping ``{name: exponent}`` or an iterable of pairs.
    Zero exponents are dropped.
    """

    __slots__ = ()

    def __new__(cls, exponents=()):
        items = exponents.items() if hasattr(exponents, "items") else exponents
        acc = {}
        for var, e in items:
            if not isinstance(e, int):
                raise TypeError("exponents must be integers")
            idx = var if isinstance(var, int) else variable_index(var)
            acc[idx] = acc.get(idx, 0) + e
        pairs = tuple(sorted((i, e) for i, e in acc.items() if e))
        for i, e in pairs:
            if e < 0 and i not in _LAURENT:
                raise LaurentError(f"negative exponent on non-Laurent variable {_NAMES[i]!r}")
        return tuple.__new__(cls, pairs)

    @classmethod
    def _from_pairs(cls, pairs):
        return tuple.__new__(cls, pairs)

    @property
    def degree(self):
        return sum(e for _, e in self)

    def exponent(self, name):
        idx = variable_index(name)
        for i, e in self:
            if i == idx:
                return e
        return 0

    def as_dict(self):
        return {_NAMES[i]: e for i, e in self}

    def variables(self):
        return [_NAMES[i] for i, _ in self]

    def __mul__(self, other):
        if not self:
            return other
        if not other:
            return self
        d = dict(self)
        for i, e in other:
            s = d.get(i, 0) + e
            if s:
                d[i] = s
            else:
                del d[i]
        return Monomial._from_pairs(tuple(sorted(d.items())))

    def __pow__(self, k):
        if k == 0:
            return ONE_MONOMIAL
        pairs = tuple((i, e * k) for i, e in self)
        if k < 0:
            for i, e in pairs:
                if e < 0 and i not in _LAURENT:
                    raise LaurentError(f"negative exponent on non-Laurent variable {_NAMES[i]!r}")
        return Monomial._from_pairs(pairs)

    def inverse(self):
        return self ** -1

    def divides(self, other):
        d = dict(other)
        return all(d.get(i, 0) >= e for i, e in self)

    def sort_key(self):
        """Graded-lexicographic key: total degree, then the dense exponent vector."""
        dense = [0] * len(_NAMES)
        for i, e in self:
            dense[i] = e
        return (self.degree, dense)

    def __str__(self):
        if not self:
            return "1"
        return "*".join(_NAMES[i] if e == 1 else f"{_NAMES[i]}^{e}" for i, e in self)

    def __repr__(self):
        return f"Monomial({self.as_dict()!r})"


ONE_MONOMIAL = Monomial._from_pairs(())


def _scalar(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return GaussianRational(x)
    return None


class Polynomial:
    """An immutable sparse polynomial with GaussianRational coefficients.

    The zero polynomial has no terms. Equality compares canonical term maps,
    and scalars compare equal to the corresponding constant polynomial.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        if terms is None:
            self._terms = {}
            return
        s = _scalar(terms)
        if s is not None:
            self._terms = {ONE_MONOMIAL: s} if s else {}
            return
        if isinstance(terms, Polynomial):
            self._terms = terms._terms
            return
        acc = {}
        for mono, coef in terms.items():
            if not isinstance(mono, Monomial):
                mono = Monomial(mono)
            c = GaussianRational.coerce(coef)
            acc[mono] = acc.get(mono, ZERO) + c
        self._terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def var(cls, name):
        if not is_registered(name):
            register_variable(name)
        return cls._raw({Monomial({name: 1}): ONE})

    @classmethod
    def const(cls, value):
        c = GaussianRational.coerce(value)
        return cls._raw({ONE_MONOMIAL: c} if c else {})

    @classmethod
    def monomial(cls, exponents, coefficient=1):
        c = GaussianRational.coerce(coefficient)
        return cls._raw({Monomial(exponents): c} if c else {})

    @classmethod
    def parse(cls, text, register=False):
        return parse_polynomial(text, register=register)

    # inspection -----------------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda mc: mc[0].sort_key(), reverse=True)

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and ONE_MONOMIAL in self._terms)

    def constant_value(self):
        if not self._terms:
            return ZERO
        if not self.is_constant():
            raise ValueError(f"polynomial is not constant: {self}")
        return self._terms[ONE_MONOMIAL]

    def coefficient(self, monomial):
        if not isinstance(monomial, Monomial):
            monomial = Monomial(monomial)
        return self._terms.get(monomial, ZERO)

    def degree(self):
        if not self._terms:
            return None
        return max(m.degree for m in self._terms)

    def is_homogeneous(self):
        return len({m.degree for m in self._terms}) <= 1

    def variables(self):
        found = set()
        for m in self._terms:
            found.update(i for i, _ in m)
        return [_NAMES[i] for i in sorted(found)]

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Polynomial):
            return other
        s = _scalar(other)
        if s is None:
            return None
        return Polynomial._raw({ONE_MONOMIAL: s} if s else {})

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        acc = dict(big)
        for m, c in small.items():
            prev = acc.get(m)
            if prev is None:
                acc[m] = c
            else:
                s = prev + c
                if s:
                    acc[m] = s
                else:
                    del acc[m]
        return Polynomial._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        s = _scalar(other)
        if s is not None:
            if not s:
                return Polynomial._raw({})
            return Polynomial._raw({m: c * s for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        acc = {}
        get = acc.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = m1 * m2
                prev = get(m)
                acc[m] = c1 * c2 if prev is None else prev + c1 * c2
        return Polynomial._raw({m: c for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        s = _scalar(other)
        if s is None:
            return NotImplemented
        inv = s.inverse()
        return Polynomial._raw({m: c * inv for m, c in self._terms.items()})

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only single-term polynomials can be inverted")
            ((m, c),) = self._terms.items()
            return Polynomial._raw({m ** k: c ** k})
        result = Polynomial._raw({ONE_MONOMIAL: ONE})
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash(frozenset(self._terms.items()))

    # transformations ------------------------------------------------------

    def substitute(self, bindings, strict=True):
        """Apply the ring homomorphism extending ``bindings`` (name -> value).

        With ``strict`` every variable must be bound; otherwise unbound
        variables are left in place.
        """
        vals = {}
        for name, v in bindings.items():
            if name not in _INDEX:
                continue
            pv = self._coerce(v)
            if pv is None:
                raise TypeError(f"cannot bind {name!r} to {v!r}")
            vals[_INDEX[name]] = pv
        powers = {}

        def power(idx, e):
            key = (idx, e)
            p = powers.get(key)
            if p is None:
                p = vals[idx] ** e
                powers[key] = p
            return p

        result = Polynomial._raw({})
        for m, c in self._terms.items():
            term = Polynomial._raw({ONE_MONOMIAL: c})
            rest = []
            for idx, e in m:
                if idx in vals:
                    term = term * power(idx, e)
                elif strict:
                    raise UnboundVariableError(_NAMES[idx])
                else:
                    rest.append((idx, e))
            if rest:
                term = term * Polynomial._raw({Monomial._from_pairs(tuple(rest)): ONE})
            result = result + term
        return result

    def rename(self, mapping):
        """Rename variables (name -> name); unmapped variables are kept."""
        idx_map = {_INDEX[a]: register_variable(b, laurent=_INDEX[a] in _LAURENT)
                   for a, b in mapping.items() if a in _INDEX}
        acc = {}
        for m, c in self._terms.items():
            nm = Monomial._from_pairs(()) if not m else Monomial(
                [(idx_map.get(i, i), e) for i, e in m])
            acc[nm] = acc.get(nm, ZERO) + c
        return Polynomial._raw({m: c for m, c in acc.items() if c})

    def map_coefficients(self, fn):
        acc = {m: GaussianRational.coerce(fn(c)) for m, c in self._terms.items()}
        return Polynomial._raw({m: c for m, c in acc.items() if c})

    def conjugate(self):
        return self.map_coefficients(lambda c: c.conjugate())

    # text -----------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _split_sign(c):
    """Return (negative?, magnitude) for printing a coefficient after a +/- joiner."""
    if c.is_real():
        neg = c._re < 0
    else:
        neg = c._re < 0 or (c._re == 0 and c._im < 0)
    return neg, (-c if neg else c)


def format_polynomial(p):
    if not p._terms:
        return "0"
    parts = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        neg, mag = _split_sign(c)
        if not m:
            body = str(mag)
        elif mag == 1:
            body = str(m)
        else:
            body = f"{mag}*{m}"
        if k == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


# parsing --------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()])|(?P<bad>\S))"
)


def _tokenize(text):
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    while True:
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            break
        kind = m.lastgroup
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", text, m.start(kind))
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError("trailing input", text, pos)
    tokens.append(("end", "", len(text)))
    return text, tokens


class _Parser:
    def __init__(self, text, register):
        self.text, self.tokens = _tokenize(text)
        self.k = 0
        self.register = register

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        return tok

    def fail(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    def polynomial(self):
        sign = 1
        tok = self.peek()
        if tok[1] in "+-" and tok[0] == "op":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        result = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self):
        result = self.factor()
        while self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return result

    def rational(self):
        tok = self.take()
        if tok[0] != "num":
            raise ParseError("expected a number", self.text, tok[2])
        value = Fraction(int(tok[1]))
        if self.peek()[1] == "/":
            self.take()
            den = self.take()
            if den[0] != "num":
                raise ParseError("expected a denominator", self.text, den[2])
            if int(den[1]) == 0:
                raise ParseError("zero denominator", self.text, den[2])
            value = value / int(den[1])
        return value

    def complex_body(self):
        # (re [+|-] im i) or (im i) or (re)
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        first = self.rational() * sign
        if self.peek()[1] == "i":
            self.take()
            return GaussianRational(0, first)
        if self.peek()[1] in ("+", "-"):
            sgn = -1 if self.take()[1] == "-" else 1
            second = self.rational() * sgn
            if self.peek()[1] != "i":
                self.fail("expected 'i' after the imaginary part")
            self.take()
            return GaussianRational(first, second)
        return GaussianRational(first)

    def exponent(self):
        neg = False
        if self.peek()[1] == "-":
            self.take()
            neg = True
        etok = self.take()
        if etok[0] != "num":
            raise ParseError("expected an integer exponent", self.text, etok[2])
        return -int(etok[1]) if neg else int(etok[1])

    def factor(self):
        tok = self.peek()
        base = self.primary()
        if self.peek()[1] != "^":
            return base
        self.take()
        exp = self.exponent()
        try:
            return base ** exp
        except (LaurentError, ValueError) as exc:
            raise ParseError(str(exc), self.text, tok[2]) from None

    def primary(self):
        tok = self.peek()
        if tok[0] == "num":
            return Polynomial.const(self.rational())
        if tok[1] == "(":
            self.take()
            save = self.k
            try:
                value = Polynomial.const(self.complex_body())
                self.expect(")")
                return value
            except ParseError:
                self.k = save
            inner = self.polynomial()
            self.expect(")")
            return inner
        if tok[0] == "name":
            self.take()
            name = tok[1]
            if name == "i":
                return Polynomial.const(GaussianRational(0, 1))
            if not is_registered(name):
                if not self.register:
                    raise ParseError(f"unknown variable {name!r}", self.text, tok[2])
                register_variable(name)
            return Polynomial.monomial({name: 1})
        self.fail(f"unexpected token {tok[1] or 'end of input'!r}")


def parse_polynomial(text, register=False):
    """Parse the polynomial text format, e.g. ``2*t1_1^2*t12_2 - (1/2 + 1 i)*t2_1``.

    Unknown variable names are an error unless ``register`` is set.
    """
    p = _Parser(text, register)
    if p.peek()[0] == "end":
        raise ParseError("empty polynomial", p.text, 0)
    result = p.polynomial()
    if p.peek()[0] != "end":
        p.fail(f"unexpected token {p.peek()[1]!r}")
    return result


# module-level operations ------------------------------------------------------

def poly_arith(a, b, op):
    """Add, subtract or multiply two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def substitute(p, bindings, strict=True):
    return Polynomial(p).substitute(bindings, strict=strict)


def grade_components(p, weights, modulus=None):
    """Split ``p`` into homogeneous parts for a grading by ``weights``.

    ``weights`` maps variable names to an int or a tuple of ints. With
    ``modulus`` the weights are reduced mod m (vector weights in (Z/m)^N).
    Returns a dict weight -> Polynomial whose sum is ``p``.
    """
    p = Polynomial(p)
    idx_w = {}
    for name, w in weights.items():
        if name in _INDEX:
            idx_w[_INDEX[name]] = w
    vector = any(isinstance(w, (tuple, list)) for w in weights.values())
    out = {}
    for m, c in p.items():
        if vector:
            dim = len(next(iter(weights.values())))
            total = [0] * dim
        else:
            total = 0
        for i, e in m:
            if i not in idx_w:
                raise KeyError(f"variable {_NAMES[i]!r} has no weight")
            w = idx_w[i]
            if vector:
                total = [t + e * x for t, x in zip(total, w)]
            else:
                total += e * w
        if vector:
            key = tuple(t % modulus if modulus else t for t in total)
        else:
            key = total % modulus if modulus else total
        out.setdefault(key, {})[m] = c
    return {k: Polynomial._raw(v) for k, v in out.items()}
