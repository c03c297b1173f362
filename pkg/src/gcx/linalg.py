"""Exact dense linear algebra over the Gaussian rationals Q(i).

Everything downstream (kernels, images, intersections, subquotient
dimensions) goes through the reduced row echelon routine in this module.
Pivoting is deterministic: columns left to right, first nonzero row from
the top.  No floating point anywhere.
"""

from numbers import Rational

from gmpy2 import mpq

from .errors import ContainmentError

__all__ = [
    "GaussianRational",
    "I",
    "ONE",
    "ZERO",
    "Matrix",
    "Subspace",
    "as_gr",
    "rank",
    "kernel",
    "column_space",
    "intersect",
    "subspace_sum",
    "quotient_dim",
    "inverse",
    "coordinates",
]

_Q0 = mpq(0)
_Q1 = mpq(1)


def _q(x):
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point scalars are not accepted")
    return mpq(x)


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("cannot combine a GaussianRational real part with im")
            self.re, self.im = re.re, re.im
            return
        if isinstance(re, complex):
            raise TypeError("floating point scalars are not accepted")
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _raw(cls, re, im):
        z = object.__new__(cls)
        z.re = re
        z.im = im
        return z

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Rational)):
                return GaussianRational._raw(self.re + other, self.im)
            return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Rational)):
                return GaussianRational._raw(self.re - other, self.im)
            return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Rational)):
                return GaussianRational._raw(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return GaussianRational._raw(a * c, _Q0)
            return GaussianRational._raw(a * c, a * d)
        if not d:
            return GaussianRational._raw(a * c, b * c)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("inverse of zero")
            return GaussianRational._raw(1 / a, _Q0)
        n = a * a + b * b
        return GaussianRational._raw(a / n, -b / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational(other) * self.inverse()

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparisons -----------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self):
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{im}i"
        if not re:
            return ims
        if ims.startswith("-"):
            return f"{re}{ims}"
        return f"{re}+{ims}"


ZERO = GaussianRational._raw(_Q0, _Q0)
ONE = GaussianRational._raw(_Q1, _Q0)
I = GaussianRational._raw(_Q0, _Q1)


def as_gr(x):
    """Coerce an int / Fraction / mpq / string / GaussianRational to a scalar."""
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


# ---------------------------------------------------------------------------
# elimination


def _rref(rows, ncols):
    """Reduced row echelon form, in place on a list of lists.

    Returns ``(nonzero_rows, pivot_columns)``.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        if p != ONE:
            inv = p.inverse()
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            for j in support:
                row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


class Matrix:
    """Immutable dense matrix with GaussianRational entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(as_gr(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _wrap(cls, rows, nrows, ncols):
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = nrows
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, nrows, ncols):
        row = (ZERO,) * ncols
        return cls._wrap((row,) * nrows, nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls._wrap(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def from_columns(cls, columns, nrows):
        columns = [tuple(as_gr(x) for x in col) for col in columns]
        rows = tuple(tuple(col[i] for col in columns) for i in range(nrows))
        return cls._wrap(rows, nrows, len(columns))

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        entries = [as_gr(x) for x in entries]
        if len(entries) != nrows * ncols:
            raise ValueError("entries length must equal rows*cols")
        return cls._wrap(
            tuple(tuple(entries[i * ncols:(i + 1) * ncols]) for i in range(nrows)), nrows, ncols
        )

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def entries(self):
        return tuple(x for row in self.rows for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self):
        return not any(x for row in self.rows for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    # algebra ---------------------------------------------------------------
    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        return Matrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols,
        )

    def __sub__(self, other):
        self._check_same(other)
        return Matrix._wrap(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols,
        )

    def __neg__(self):
        return Matrix._wrap(tuple(tuple(-a for a in r) for r in self.rows), self.nrows, self.ncols)

    def scale(self, c):
        c = as_gr(c)
        return Matrix._wrap(
            tuple(tuple(a * c if a else a for a in r) for r in self.rows), self.nrows, self.ncols
        )

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            sparse_b = [[(j, x) for j, x in enumerate(row) if x] for row in other.rows]
            out = []
            n = other.ncols
            for row in self.rows:
                acc = [ZERO] * n
                for k, a in enumerate(row):
                    if not a:
                        continue
                    for j, b in sparse_b[k]:
                        acc[j] = acc[j] + a * b
                out.append(tuple(acc))
            return Matrix._wrap(tuple(out), self.nrows, n)
        vec = [as_gr(x) for x in other]
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.rows:
            acc = ZERO
            for a, b in zip(row, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    @property
    def T(self):
        if not self.nrows:
            return Matrix.zeros(self.ncols, 0)
        return Matrix._wrap(tuple(zip(*self.rows)), self.ncols, self.nrows)

    @property
    def H(self):
        """Conjugate transpose."""
        t = self.T
        return Matrix._wrap(
            tuple(tuple(x.conjugate() for x in r) for r in t.rows), t.nrows, t.ncols
        )

    def conj(self):
        return Matrix._wrap(
            tuple(tuple(x.conjugate() for x in r) for r in self.rows), self.nrows, self.ncols
        )

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("hstack needs equal row counts")
        return Matrix._wrap(
            tuple(r + s for r, s in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols + other.ncols,
        )

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("vstack needs equal column counts")
        return Matrix._wrap(self.rows + other.rows, self.nrows + other.nrows, self.ncols)

    def submatrix(self, row_range, col_range):
        r0, r1 = row_range
        c0, c1 = col_range
        return Matrix._wrap(
            tuple(row[c0:c1] for row in self.rows[r0:r1]), r1 - r0, c1 - c0
        )


def _identity_cols(n):
    return [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)]


class Subspace:
    """A subspace of Q(i)^n, stored by its reduced row echelon basis.

    The basis is canonical, so two equal subspaces carry identical bases;
    equality is still decided by mutual containment.
    """

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim, vectors=()):
        rows = []
        for v in vectors:
            v = [as_gr(x) for x in v]
            if len(v) != ambient_dim:
                raise ValueError(
                    f"vector of length {len(v)} in ambient space of dimension {ambient_dim}"
                )
            rows.append(v)
        reduced, pivots = _rref(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in reduced)
        self._pivots = tuple(pivots)

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def full(cls, n):
        return cls(n, _identity_cols(n))

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def matrix(self):
        """Basis vectors as the columns of an ``ambient_dim x dim`` matrix."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def contains(self, vector):
        v = [as_gr(x) for x in vector]
        if len(v) != self.ambient_dim:
            raise ValueError("ambient-dimension mismatch")
        for row, c in zip(self.basis, self._pivots):
            f = v[c]
            if f:
                for j in range(c, self.ambient_dim):
                    if row[j]:
                        v[j] = v[j] - f * row[j]
        return not any(v)

    def is_subspace_of(self, other):
        _check_ambient(self, other)
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other):
        return self.is_subspace_of(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self <= other and other <= self

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_ambient(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(
            f"ambient-dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}"
        )


def rank(m):
    rows = [list(r) for r in m.rows]
    _, pivots = _rref(rows, m.ncols)
    return len(pivots)


def kernel(m):
    """Null space ``{v : m v = 0}`` as a Subspace of Q(i)^cols."""
    rows = [list(r) for r in m.rows]
    reduced, pivots = _rref(rows, m.ncols)
    pivset = set(pivots)
    vectors = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [ZERO] * m.ncols
        v[f] = ONE
        for row, c in zip(reduced, pivots):
            if row[f]:
                v[c] = -row[f]
        vectors.append(v)
    return Subspace(m.ncols, vectors)


def column_space(m):
    return Subspace(m.nrows, m.columns())


def subspace_sum(a, b):
    _check_ambient(a, b)
    return Subspace(a.ambient_dim, a.basis + b.basis)


def intersect(a, b):
    """Zassenhaus intersection: reduce [[a, a], [b, 0]] and read off rows with zero left half."""
    _check_ambient(a, b)
    n = a.ambient_dim
    if not a.dim or not b.dim:
        return Subspace.zero(n)
    zero = [ZERO] * n
    rows = [list(v) + list(v) for v in a.basis] + [list(v) + zero for v in b.basis]
    reduced, pivots = _rref(rows, 2 * n)
    out = [row[n:] for row, c in zip(reduced, pivots) if c >= n]
    return Subspace(n, out)


def quotient_dim(sub, total):
    """``dim total - dim sub`` after verifying ``sub`` is contained in ``total``."""
    _check_ambient(sub, total)
    if not sub.is_subspace_of(total):
        raise ContainmentError(
            f"subspace of dim {sub.dim} is not contained in subspace of dim {total.dim}"
        )
    return total.dim - sub.dim


def inverse(m):
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    rows = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.rows)]
    reduced, pivots = _rref(rows, 2 * n)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix._wrap(tuple(tuple(r[n:]) for r in reduced), n, n)


def coordinates(columns, vectors):
    """Coordinates of each vector in the basis ``columns`` (independent columns).

    Returns a matrix whose j-th column holds the coordinates of ``vectors[j]``.
    Raises ContainmentError when a vector is outside the span.
    """
    columns = [tuple(as_gr(x) for x in c) for c in columns]
    vectors = [tuple(as_gr(x) for x in v) for v in vectors]
    if not columns:
        if any(any(v) for v in vectors):
            raise ContainmentError("vector outside the zero subspace")
        return Matrix.zeros(0, len(vectors))
    n = len(columns[0])
    p = len(columns)
    rows = [[c[i] for c in columns] + [v[i] for v in vectors] for i in range(n)]
    reduced, pivots = _rref(rows, p + len(vectors))
    if pivots[:p] != list(range(p)):
        raise ValueError("basis columns are linearly dependent")
    if len(pivots) > p:
        raise ContainmentError("vector outside the span of the basis")
    return Matrix._wrap(tuple(tuple(r[p:]) for r in reduced[:p]), p, len(vectors))
