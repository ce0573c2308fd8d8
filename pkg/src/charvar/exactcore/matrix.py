"""Dense matrices over Q(i) or polynomial rings, and exact linear algebra."""

from .gaussian import ONE, ZERO, GaussianRational
from .polynomial import Polynomial, parse_polynomial


def _entry(x):
    if isinstance(x, (GaussianRational, Polynomial)):
        return x
    if isinstance(x, str):
        p = parse_polynomial(x, register=True)
        return p.constant_value() if p.is_constant() else p
    return GaussianRational.coerce(x)


class Matrix:
    """An immutable rows x cols grid of scalars or polynomials."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries):
        data = tuple(tuple(_entry(x) for x in row) for row in entries)
        if not data or not data[0]:
            raise ValueError("a matrix needs at least one row and one column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged rows")
        self.rows = len(data)
        self.cols = width
        self._data = data

    @classmethod
    def _raw(cls, data):
        obj = object.__new__(cls)
        obj._data = data
        obj.rows = len(data)
        obj.cols = len(data[0])
        return obj

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls._raw(tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def diag(cls, values):
        values = [_entry(v) for v in values]
        n = len(values)
        return cls._raw(tuple(tuple(values[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._data[i][j]
        return self._data[key]

    def tolist(self):
        return [list(r) for r in self._data]

    def is_square(self):
        return self.rows == self.cols

    def is_scalar(self):
        return all(isinstance(x, GaussianRational) or (isinstance(x, Polynomial) and x.is_constant())
                   for r in self._data for x in r)

    def to_scalar(self):
        """Collapse constant polynomial entries to GaussianRational."""
        return Matrix._raw(tuple(tuple(x.constant_value() if isinstance(x, Polynomial) else x for x in r)
                                 for r in self._data))

    @property
    def T(self):
        return Matrix._raw(tuple(zip(*self._data)))

    def transpose(self):
        return self.T

    def map(self, fn):
        return Matrix._raw(tuple(tuple(fn(x) for x in r) for r in self._data))

    def substitute(self, bindings, strict=True):
        def sub(x):
            if isinstance(x, Polynomial):
                y = x.substitute(bindings, strict=strict)
                return y.constant_value() if y.is_constant() else y
            return x
        return self.map(sub)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"dimension mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __neg__(self):
        return self.map(lambda x: -x)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other._data))
        out = []
        for r in self._data:
            row = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Matrix._raw(tuple(out))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        if isinstance(other, str):
            return NotImplemented
        try:
            s = _entry(other)
        except TypeError:
            return NotImplemented
        return self.map(lambda x: x * s)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        if not self.is_square() or not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self._data, other._data) for a, b in zip(r, s))

    def __hash__(self):
        return hash(self._data)

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        acc = ZERO
        for i in range(self.rows):
            acc = acc + self._data[i][i]
        return acc

    def det(self):
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        if self.is_scalar():
            return _scalar_det(self.to_scalar())
        return _minor_det(self._data)

    def inverse(self):
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        if not self.is_scalar():
            raise TypeError("inverse is only implemented for scalar matrices")
        n = self.rows
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)]
               for i, r in enumerate(self.to_scalar()._data)]
        _gauss_jordan(aug, n)
        for i in range(n):
            if aug[i][i] != 1:
                raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(tuple(tuple(r[n:]) for r in aug))

    def __str__(self):
        cells = [[str(x) for x in r] for r in self._data]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def __repr__(self):
        return f"Matrix({[[str(x) for x in r] for r in self._data]!r})"

    def to_json(self):
        return [[str(x) for x in r] for r in self._data]


def _scalar_det(m):
    a = [list(r) for r in m._data]
    n = len(a)
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det = det * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = f * inv
                for j in range(c + 1, n):
                    if a[c][j]:
                        a[i][j] = a[i][j] - f * a[c][j]
    return det


def _minor_det(data):
    """Division-free determinant by cofactor expansion with memoised minors."""
    n = len(data)
    memo = {}

    def minor(row, cols):
        if row == n:
            return ONE
        key = cols
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc = ZERO
        sign = 1
        for k, c in enumerate(cols):
            a = data[row][c]
            if a:
                sub = minor(row + 1, cols[:k] + cols[k + 1:])
                if sub:
                    term = a * sub
                    acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def _gauss_jordan(a, ncols):
    """In-place reduced row echelon form on the first ``ncols`` columns."""
    rows = len(a)
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def _as_rows(m):
    if isinstance(m, Matrix):
        if not m.is_scalar():
            raise TypeError("linear algebra needs a scalar matrix")
        return [list(r) for r in m.to_scalar()._data], m.cols
    rows = [[GaussianRational.coerce(x) for x in r] for r in m]
    return rows, (len(rows[0]) if rows else 0)


def fraction_free_echelon(m):
    """Bareiss fraction-free row echelon form.

    Pivots are chosen deterministically: the first row (top-down) with a
    nonzero entry in the current column. Returns ``(rows, pivot_columns)``.
    """
    a, cols = _as_rows(m)
    nrows = len(a)
    prev = ONE
    r = 0
    pivots = []
    for c in range(cols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        rowr = a[r]
        for i in range(r + 1, nrows):
            rowi = a[i]
            f = rowi[c]
            for j in range(c + 1, cols):
                x = piv * rowi[j]
                if f and rowr[j]:
                    x = x - f * rowr[j]
                rowi[j] = x / prev if prev != 1 else x
            rowi[c] = ZERO
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m):
    return len(fraction_free_echelon(m)[1])


def kernel_basis(m):
    """Basis of the right nullspace of a scalar matrix.

    Each vector has a 1 in its free coordinate. The result is checked to be
    annihilated by ``m`` and to have ``cols - rank`` elements.
    """
    a, pivots = fraction_free_echelon(m)
    orig, cols = _as_rows(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        x = [ZERO] * cols
        x[f] = ONE
        for k in reversed(range(len(pivots))):
            c = pivots[k]
            row = a[k]
            s = ZERO
            for j in range(c + 1, cols):
                if row[j] and x[j]:
                    s = s + row[j] * x[j]
            x[c] = -s / row[c]
        basis.append(tuple(x))
    for v in basis:
        for row in orig:
            acc = ZERO
            for p, q in zip(row, v):
                if p and q:
                    acc = acc + p * q
            if acc:
                raise AssertionError("kernel vector not annihilated")
    if len(basis) + len(pivots) != cols:
        raise AssertionError("rank-nullity violated")
    return basis


def solve(m, b):
    """One solution x of m x = b, or None when the system is inconsistent."""
    rows, cols = _as_rows(m)
    aug = [r + [GaussianRational.coerce(v)] for r, v in zip(rows, b)]
    pivots = _gauss_jordan(aug, cols)
    for r in aug[len(pivots):]:
        if r[cols]:
            return None
    x = [ZERO] * cols
    for k, c in enumerate(pivots):
        x[c] = aug[k][cols]
    return x


class RowSpace:
    """Incrementally built row space of sparse vectors.

    Vectors are dicts ``column -> coefficient``; columns can be any sortable
    keys. Elimination always targets the smallest column present, so the
    echelon form is independent of insertion timing for a fixed insertion
    order.
    """

    def __init__(self):
        self._pivots = {}

    @property
    def rank(self):
        return len(self._pivots)

    def _reduce(self, vec):
        row = {k: GaussianRational.coerce(v) for k, v in vec.items() if v}
        while row:
            c = min(row)
            prow = self._pivots.get(c)
            if prow is None:
                return row, c
            f = row[c]
            for j, v in prow.items():
                s = row.get(j, ZERO) - f * v
                if s:
                    row[j] = s
                else:
                    row.pop(j, None)
        return row, None

    def add(self, vec):
        """Insert ``vec``; return True if it enlarged the span."""
        row, c = self._reduce(vec)
        if not row:
            return False
        inv = row[c].inverse()
        self._pivots[c] = {j: v * inv for j, v in row.items()}
        return True

    def contains(self, vec):
        row, _ = self._reduce(vec)
        return not row


def sparse_rank(vectors):
    rs = RowSpace()
    for v in vectors:
        rs.add(v)
    return rs.rank

