"""Complexified exterior algebra of a 2n-dimensional space and the spin action of T+T*.

A monomial e^{i1} ^ ... ^ e^{ik} (i1 < ... < ik) is a bitmask with bit
``i-1`` set for each index.  Forms are sparse dicts mask -> coefficient and
may be of mixed degree.  Coordinate vectors use the canonical monomial
order: by degree, then lexicographically by index tuple.
"""

from functools import lru_cache
from itertools import combinations

from .linalg import ONE, ZERO, GaussianRational, Matrix, as_gr

HALF = GaussianRational(1, 0) / 2


def popcount(mask):
    return bin(mask).count("1")


def mask_indices(mask):
    """1-based indices of the set bits, increasing."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_mask(indices):
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


@lru_cache(maxsize=None)
def basis_masks(n2):
    """All 2^n2 monomials in canonical monomial order."""
    return tuple(
        indices_mask(c) for k in range(n2 + 1) for c in combinations(range(1, n2 + 1), k)
    )


@lru_cache(maxsize=None)
def mask_position(n2):
    return {m: i for i, m in enumerate(basis_masks(n2))}


@lru_cache(maxsize=None)
def degree_slices(n2):
    """``[(start, stop)]`` of each homogeneous degree inside the canonical order."""
    out = []
    start = 0
    for k in range(n2 + 1):
        n = sum(1 for m in basis_masks(n2) if popcount(m) == k)
        out.append((start, start + n))
        start += n
    return tuple(out)


def wedge_sign(a, b):
    """Sign of e_a ^ e_b relative to e_{a|b}; 0 when the masks overlap."""
    if a & b:
        return 0
    swaps = 0
    j = 0
    bb = b
    while bb:
        if bb & 1:
            swaps += popcount(a >> (j + 1))
        bb >>= 1
        j += 1
    return -1 if swaps & 1 else 1


def mask_label(mask):
    if not mask:
        return "1"
    return "e" + "".join(str(i) for i in mask_indices(mask))


class Form:
    """Element of the complexified exterior algebra on ``n2`` generators."""

    __slots__ = ("n2", "coeffs")

    def __init__(self, n2, coeffs=None):
        self.n2 = n2
        clean = {}
        if coeffs:
            top = 1 << n2
            for m, c in coeffs.items():
                if not 0 <= m < top:
                    raise ValueError(f"monomial mask {m} out of range for n2={n2}")
                c = as_gr(c)
                if c:
                    clean[m] = c
        self.coeffs = clean

    @classmethod
    def _wrap(cls, n2, coeffs):
        f = object.__new__(cls)
        f.n2 = n2
        f.coeffs = coeffs
        return f

    @classmethod
    def zero(cls, n2):
        return cls._wrap(n2, {})

    @classmethod
    def one(cls, n2):
        return cls._wrap(n2, {0: ONE})

    @classmethod
    def monomial(cls, n2, indices, coeff=1):
        """``coeff * e^{i1} ^ e^{i2} ^ ...`` with the indices in the given order."""
        f = cls.one(n2).scale(coeff)
        for i in indices:
            if not 1 <= i <= n2:
                raise ValueError(f"index {i} out of range 1..{n2}")
            f = f.wedge(cls._wrap(n2, {1 << (i - 1): ONE}))
        return f

    @classmethod
    def covector(cls, coords):
        coords = [as_gr(c) for c in coords]
        return cls._wrap(len(coords), {1 << i: c for i, c in enumerate(coords) if c})

    @classmethod
    def from_vector(cls, n2, vec):
        masks = basis_masks(n2)
        if len(vec) != len(masks):
            raise ValueError("coordinate vector has the wrong length")
        return cls._wrap(n2, {m: as_gr(c) for m, c in zip(masks, vec) if c})

    def to_vector(self):
        pos = mask_position(self.n2)
        v = [ZERO] * (1 << self.n2)
        for m, c in self.coeffs.items():
            v[pos[m]] = c
        return tuple(v)

    # structure -----------------------------------------------------------------
    def degrees(self):
        return sorted({popcount(m) for m in self.coeffs})

    def component(self, k):
        return Form._wrap(self.n2, {m: c for m, c in self.coeffs.items() if popcount(m) == k})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.n2 == other.n2 and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n2, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"Form({self.n2}, {self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        order = mask_position(self.n2)
        parts = []
        for m in sorted(self.coeffs, key=order.__getitem__):
            c = self.coeffs[m]
            label = mask_label(m)
            if c == 1:
                parts.append(("+", label))
            elif c == -1:
                parts.append(("-", label))
            else:
                s = str(c)
                if c.im and c.re:
                    s = f"({s})"
                sign = "+"
                if s.startswith("-"):
                    sign, s = "-", s[1:]
                parts.append((sign, s if not m else f"{s}*{label}"))
        out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # linear structure --------------------------------------------------------
    def _check(self, other):
        if self.n2 != other.n2:
            raise ValueError(f"dimension mismatch: {self.n2} vs {other.n2}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Form._wrap(self.n2, out)

    def __neg__(self):
        return Form._wrap(self.n2, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_gr(c)
        if not c:
            return Form.zero(self.n2)
        return Form._wrap(self.n2, {m: x * c for m, x in self.coeffs.items()})

    def __mul__(self, c):
        if isinstance(c, Form):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def conjugate(self):
        return Form._wrap(self.n2, {m: c.conjugate() for m, c in self.coeffs.items()})

    # exterior structure ----------------------------------------------------------
    def wedge(self, other):
        return wedge(self, other)

    def __xor__(self, other):
        return wedge(self, other)


def wedge(a, b):
    """Exterior product ``a ^ b``."""
    a._check(b)
    out = {}
    for ma, ca in a.coeffs.items():
        for mb, cb in b.coeffs.items():
            s = wedge_sign(ma, mb)
            if not s:
                continue
            m = ma | mb
            term = ca * cb if s > 0 else -(ca * cb)
            v = out.get(m, ZERO) + term
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Form._wrap(a.n2, out)


def _contract_basis(i, mask):
    """``iota_{e_i}`` on a monomial (i is 0-based): returns (sign, mask) or None."""
    bit = 1 << i
    if not mask & bit:
        return None
    below = popcount(mask & (bit - 1))
    return (-1 if below & 1 else 1), mask ^ bit


def contract(v, a):
    """Interior product of the vector with coordinates ``v`` into the form ``a``."""
    v = [as_gr(x) for x in v]
    if len(v) != a.n2:
        raise ValueError(f"dimension mismatch: vector of length {len(v)}, n2={a.n2}")
    out = {}
    for i, vi in enumerate(v):
        if not vi:
            continue
        for m, c in a.coeffs.items():
            r = _contract_basis(i, m)
            if r is None:
                continue
            s, m2 = r
            term = vi * c if s > 0 else -(vi * c)
            val = out.get(m2, ZERO) + term
            if val:
                out[m2] = val
            else:
                out.pop(m2, None)
    return Form._wrap(a.n2, out)


class GenVector:
    """Element X + xi of (T + T*) (x) C, stored as two coordinate tuples."""

    __slots__ = ("vec", "covec")

    def __init__(self, vec, covec):
        vec = tuple(as_gr(x) for x in vec)
        covec = tuple(as_gr(x) for x in covec)
        if len(vec) != len(covec):
            raise ValueError("vector and covector parts must have equal length")
        self.vec = vec
        self.covec = covec

    @property
    def n2(self):
        return len(self.vec)

    @classmethod
    def from_coords(cls, coords):
        coords = tuple(coords)
        h = len(coords) // 2
        if 2 * h != len(coords):
            raise ValueError("generalized vector needs an even number of coordinates")
        return cls(coords[:h], coords[h:])

    @property
    def coords(self):
        return self.vec + self.covec

    def conjugate(self):
        return GenVector([x.conjugate() for x in self.vec], [x.conjugate() for x in self.covec])

    def __add__(self, other):
        return GenVector(
            [a + b for a, b in zip(self.vec, other.vec)],
            [a + b for a, b in zip(self.covec, other.covec)],
        )

    def scale(self, c):
        c = as_gr(c)
        return GenVector([x * c for x in self.vec], [x * c for x in self.covec])

    def __eq__(self, other):
        if not isinstance(other, GenVector):
            return NotImplemented
        return self.vec == other.vec and self.covec == other.covec

    def __hash__(self):
        return hash((self.vec, self.covec))

    def __repr__(self):
        v = ", ".join(str(x) for x in self.vec)
        w = ", ".join(str(x) for x in self.covec)
        return f"GenVector([{v}], [{w}])"


def genvector_basis(n2):
    """e_1..e_n2 followed by e^1..e^n2."""
    out = []
    for j in range(2 * n2):
        coords = [ZERO] * (2 * n2)
        coords[j] = ONE
        out.append(GenVector.from_coords(coords))
    return out


def clifford_act(x, a):
    """Spin action ``(X + xi) . phi = iota_X phi + xi ^ phi``."""
    if x.n2 != a.n2:
        raise ValueError(f"dimension mismatch: {x.n2} vs {a.n2}")
    return contract(x.vec, a) + wedge(Form.covector(x.covec), a)


def pairing(x, y):
    """Natural split pairing ``<X+xi, Y+eta> = (xi(Y) + eta(X)) / 2``."""
    if x.n2 != y.n2:
        raise ValueError("dimension mismatch")
    s = ZERO
    for a, b in zip(x.covec, y.vec):
        s = s + a * b
    for a, b in zip(y.covec, x.vec):
        s = s + a * b
    return s * HALF


def pairing_gram(n2):
    """Gram matrix of the pairing on the basis (e_1..e_n2, e^1..e^n2)."""
    basis = genvector_basis(n2)
    return Matrix([[pairing(x, y) for y in basis] for x in basis])


# -- operator matrices on the canonical monomial basis ----------------------------


def _operator_matrix(n2, fn):
    masks = basis_masks(n2)
    pos = mask_position(n2)
    size = len(masks)
    rows = [[ZERO] * size for _ in range(size)]
    for j, m in enumerate(masks):
        image = fn(Form._wrap(n2, {m: ONE}))
        for m2, c in image.coeffs.items():
            rows[pos[m2]][j] = c
    return Matrix._wrap(tuple(tuple(r) for r in rows), size, size)


def wedge_matrix(a):
    """Matrix of ``phi -> a ^ phi``."""
    return _operator_matrix(a.n2, lambda phi: wedge(a, phi))


def contract_matrix(v):
    v = [as_gr(x) for x in v]
    return _operator_matrix(len(v), lambda phi: contract(v, phi))


def clifford_matrix(x):
    return _operator_matrix(x.n2, lambda phi: clifford_act(x, phi))


def forms_from_columns(n2, m):
    return [Form.from_vector(n2, col) for col in m.columns()]
