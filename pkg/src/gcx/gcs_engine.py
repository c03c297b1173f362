"""Generalized complex structures on a Lie algebra model.

From a StructureSpec we build the 4n x 4n matrix of JJ on (T + T*) (x) C in
the basis (e_1..e_2n, e^1..e^2n), its +i eigenspace L, the pure spinor
line U^n annihilated by L, the grading U^k = (wedge^{n-k} Lbar) . U^n,
and the matrices of del = pi_{k+1} d and delbar = pi_{k-1} d in the
chosen U^k bases.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .errors import StructureError
from .exterior import (
    Form,
    GenVector,
    basis_masks,
    clifford_act,
    contract,
    genvector_basis,
    pairing,
    pairing_gram,
)
from .graded import DoubleComplex, GradedOp
from .linalg import (
    I,
    ONE,
    ZERO,
    Matrix,
    Subspace,
    inverse,
    kernel,
    rank,
)
from .verdict import Verdict

__all__ = [
    "GcsData",
    "build_J",
    "complex_J",
    "symplectic_J",
    "spinor_J",
    "omega_matrix",
    "eigenbundle_L",
    "canonical_line",
    "uk_decomposition",
    "check_integrability",
    "del_delbar_matrices",
    "build_gcs",
]


# ---------------------------------------------------------------------------
# JJ from the four kinds of input


def omega_matrix(omega):
    """Matrix of X -> iota_X omega, T -> T*; column i holds iota_{e_i} omega."""
    n2 = omega.n2
    cols = []
    for i in range(n2):
        v = [ZERO] * n2
        v[i] = ONE
        c = contract(v, omega)
        cols.append([c.coeffs.get(1 << j, ZERO) for j in range(n2)])
    return Matrix.from_columns(cols, n2)


def _blocks(a, b, c, d):
    return a.hstack(b).vstack(c.hstack(d))


def complex_J(J):
    """Blocks (-J, 0; 0, J*) where J* acts on covector coordinates as J^T."""
    n2 = J.nrows
    z = Matrix.zeros(n2, n2)
    if J @ J != Matrix.identity(n2).scale(-1):
        raise StructureError("complex structure J does not satisfy J^2 = -1")
    return _blocks(-J, z, z, J.T)


def symplectic_J(omega):
    """Blocks (0, -omega^{-1}; omega, 0)."""
    n2 = omega.n2
    if omega.degrees() not in ([2], []):
        raise StructureError("symplectic form must be a 2-form")
    W = omega_matrix(omega)
    if rank(W) != n2:
        raise StructureError("symplectic form is degenerate")
    z = Matrix.zeros(n2, n2)
    return _blocks(z, -inverse(W), W, z)


def spinor_annihilator(rho):
    """Basis of {x in (T+T*)(x)C : x . rho = 0}."""
    n2 = rho.n2
    basis = genvector_basis(n2)
    images = [clifford_act(x, rho).to_vector() for x in basis]
    m = Matrix.from_columns(images, 1 << n2)
    return [GenVector.from_coords(v) for v in kernel(m).basis]


def spinor_J(rho):
    """JJ = +i on the annihilator L of rho and -i on its conjugate."""
    n2 = rho.n2
    L = spinor_annihilator(rho)
    if len(L) != n2:
        raise StructureError(
            f"spinor is not pure: annihilator has dimension {len(L)}, expected {n2}"
        )
    Lbar = [l.conjugate() for l in L]
    B = Matrix.from_columns([x.coords for x in L + Lbar], 2 * n2)
    if rank(B) != 2 * n2:
        raise StructureError("L and its conjugate intersect: spinor is not of generalized complex type")
    diag = Matrix(
        [[(I if i < n2 else -I) if i == j else ZERO for j in range(2 * n2)] for i in range(2 * n2)]
    )
    return B @ diag @ inverse(B)


def build_J(spec, n2):
    """4n x 4n matrix of the generalized almost complex structure; verifies JJ^2 = -1 and orthogonality."""
    kind, payload = spec.kind, spec.payload
    if kind == "complex_endomorphism":
        J = complex_J(payload)
    elif kind == "symplectic_form":
        J = symplectic_J(payload)
    elif kind == "pure_spinor":
        J = spinor_J(payload)
    elif kind == "raw_matrix":
        J = payload
    else:
        raise StructureError(f"unknown structure kind {kind!r}")
    if J.shape != (2 * n2, 2 * n2):
        raise StructureError(f"structure matrix has shape {J.shape}, expected {(2 * n2, 2 * n2)}")
    if J.conj() != J:
        raise StructureError("generalized complex structure must be a real endomorphism")
    if J @ J != Matrix.identity(2 * n2).scale(-1):
        raise StructureError("JJ^2 != -1")
    G = pairing_gram(n2)
    if J.T @ G @ J != G:
        raise StructureError("JJ is not orthogonal for the natural pairing")
    return J


# ---------------------------------------------------------------------------
# L, U^n, U^k


def eigenbundle_L(J):
    """Basis of the +i eigenspace of JJ as GenVectors; must be maximal isotropic."""
    size = J.nrows
    n2 = size // 2
    shifted = J - Matrix.identity(size).scale(I)
    L = [GenVector.from_coords(v) for v in kernel(shifted).basis]
    if len(L) != n2:
        raise StructureError(f"+i eigenspace has dimension {len(L)}, expected {n2}")
    for a in range(n2):
        for b in range(a, n2):
            if pairing(L[a], L[b]):
                raise StructureError("+i eigenspace is not isotropic")
    return L


def _normalize(form):
    for m in basis_masks(form.n2):
        c = form.coeffs.get(m)
        if c:
            return form.scale(c.inverse())
    raise StructureError("zero spinor")


def canonical_line(L, n2):
    """Generator of the joint kernel of the Clifford operators of L, leading coefficient 1."""
    if len({x.n2 for x in L}) > 1 or (L and L[0].n2 != n2):
        raise ValueError("dimension mismatch")
    current = [Form.from_vector(n2, v) for v in Subspace.full(1 << n2).basis]
    for l in L:
        images = [clifford_act(l, f).to_vector() for f in current]
        m = Matrix.from_columns(images, 1 << n2)
        ker = kernel(m)
        nxt = []
        for c in ker.basis:
            f = Form.zero(n2)
            for coeff, g in zip(c, current):
                if coeff:
                    f = f + g.scale(coeff)
            nxt.append(f)
        current = nxt
        if not current:
            break
    if len(current) != 1:
        raise StructureError(
            f"joint annihilator of L has dimension {len(current)}, expected 1"
        )
    return _normalize(current[0])


def uk_decomposition(L, rho):
    """Basis forms of U^{n-j} = span of lbar_{i1} . ... . lbar_{ij} . rho over j-subsets.

    Returns ``{k: tuple_of_forms}`` with k from -n to n.
    """
    n2 = rho.n2
    n = n2 // 2
    Lbar = [l.conjugate() for l in L]
    products = {(): rho}
    out = {}
    for j in range(n2 + 1):
        forms = []
        for subset in combinations(range(n2), j):
            if subset not in products:
                products[subset] = clifford_act(Lbar[subset[0]], products[subset[1:]])
            forms.append(products[subset])
        k = n - j
        span = Subspace(1 << n2, [f.to_vector() for f in forms])
        if span.dim != comb(n2, j):
            raise StructureError(f"U^{k} has dimension {span.dim}, expected {comb(n2, j)}")
        out[k] = tuple(forms)
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# the assembled structure


@dataclass(eq=False)
class GcsData:
    """Everything the cohomology layer needs about one (model, structure) pair."""

    model: object
    spec: object
    J_matrix: Matrix
    L_basis: list
    Un_generator: Form
    uk_forms: dict
    P: Matrix = field(repr=False)
    P_inv: Matrix = field(repr=False)
    d_blocks: dict = field(repr=False)
    integrability: Verdict = None
    complex: DoubleComplex = field(default=None, repr=False)

    @property
    def n(self):
        return self.model.n

    @property
    def n2(self):
        return self.model.n2

    @property
    def ks(self):
        return list(range(-self.n, self.n + 1))

    @property
    def Uk_bases(self):
        return {k: Subspace(1 << self.n2, [f.to_vector() for f in fs])
                for k, fs in self.uk_forms.items()}

    @property
    def uk_dims(self):
        return {k: len(fs) for k, fs in self.uk_forms.items()}

    @property
    def del_matrices(self):
        return {k: self.complex.del_.block(k) for k in self.ks}

    @property
    def delbar_matrices(self):
        return {k: self.complex.delbar.block(k) for k in self.ks}

    @property
    def is_integrable(self):
        return bool(self.integrability)

    def offsets(self):
        out = {}
        total = 0
        for k in self.ks:
            out[k] = total
            total += len(self.uk_forms[k])
        return out

    def to_form(self, k, coords):
        """Form with the given coordinates in the U^k basis."""
        f = Form.zero(self.n2)
        for c, g in zip(coords, self.uk_forms[k]):
            if c:
                f = f + g.scale(c)
        return f

    def u_coordinates(self, form):
        """Per-k coordinates of a form in the chosen U^k bases."""
        v = self.P_inv @ form.to_vector()
        out = {}
        for k, off in self.offsets().items():
            out[k] = tuple(v[off:off + len(self.uk_forms[k])])
        return out

    def project(self, form, k):
        return self.to_form(k, self.u_coordinates(form)[k])


def _d_in_u_coordinates(model, uk_forms, P, P_inv, ks):
    """Blocks ``{(m, k): matrix of pi_m d on U^k}``, cut from P^{-1} d P."""
    offsets = {}
    total = 0
    for k in ks:
        offsets[k] = total
        total += len(uk_forms[k])
    dP = model.d_matrix @ P
    full = dP if dP.is_zero() else P_inv @ dP
    blocks = {}
    for k in ks:
        c0 = offsets[k]
        for m in ks:
            r0 = offsets[m]
            blocks[(m, k)] = full.submatrix(
                (r0, r0 + len(uk_forms[m])), (c0, c0 + len(uk_forms[k]))
            )
    return blocks


def check_integrability(gcs_or_blocks, ks=None):
    """d maps U^k into U^{k-1} + U^{k+1} for every k; lists violating (k, m) pairs."""
    blocks = gcs_or_blocks.d_blocks if isinstance(gcs_or_blocks, GcsData) else gcs_or_blocks
    if ks is None:
        ks = sorted({k for (_, k) in blocks})
    failures = []
    for k in ks:
        for m in ks:
            if m in (k - 1, k + 1):
                continue
            b = blocks[(m, k)]
            if not b.is_zero():
                bad = next(j for j in range(b.ncols) if any(row[j] for row in b.rows))
                failures.append((k, m, bad))
    return Verdict.from_failures(
        failures, "" if not failures else f"d has components U^k -> U^m outside m = k +/- 1: {failures[:3]}"
    )


def del_delbar_matrices(gcs):
    """Graded del and delbar, after verifying the identities they must satisfy.

    Checks del^2 = 0, delbar^2 = 0, del delbar = -delbar del, and for
    d^JJ = -i(del - delbar): d^JJ d = -2i del delbar = -d d^JJ.
    """
    if not gcs.is_integrable:
        raise StructureError("structure is not integrable: " + gcs.integrability.detail)
    dims = gcs.uk_dims
    ks = gcs.ks
    del_ = GradedOp(dims, 1, {k: gcs.d_blocks[(k + 1, k)] for k in ks if k + 1 in dims})
    delbar = GradedOp(dims, -1, {k: gcs.d_blocks[(k - 1, k)] for k in ks if k - 1 in dims})
    if not (del_ @ del_).is_zero():
        raise StructureError("del^2 != 0")
    if not (delbar @ delbar).is_zero():
        raise StructureError("delbar^2 != 0")
    if not ((del_ @ delbar) + (delbar @ del_)).is_zero():
        raise StructureError("del delbar + delbar del != 0")
    D = del_.to_matrix(ks)
    Db = delbar.to_matrix(ks)
    d = D + Db
    dJ = (D - Db).scale(-I)
    # d^J d = -2i del delbar; composing the other way flips the sign.
    if dJ @ d != (D @ Db).scale(-2 * I):
        raise StructureError("d^J d != -2i del delbar")
    if d @ dJ != (D @ Db).scale(2 * I):
        raise StructureError("d d^J != 2i del delbar")
    if not (d @ dJ + dJ @ d).is_zero():
        raise StructureError("d d^J + d^J d != 0")
    return del_, delbar


def conjugation_check(gcs):
    """Complex conjugation sends U^k onto U^{-k}."""
    failures = []
    for k in gcs.ks:
        for idx, f in enumerate(gcs.uk_forms[k]):
            coords = gcs.u_coordinates(f.conjugate())
            for m, c in coords.items():
                if m != -k and any(c):
                    failures.append((k, idx, m))
                    break
    return Verdict.from_failures(failures)


def build_gcs(model, spec, require_integrable=True):
    """Run JJ -> L -> U^n -> U^k -> d split for one model."""
    n2 = model.n2
    J = build_J(spec, n2)
    L = eigenbundle_L(J)
    rho = canonical_line(L, n2)
    uk = uk_decomposition(L, rho)
    ks = list(uk)
    cols = [f.to_vector() for k in ks for f in uk[k]]
    P = Matrix.from_columns(cols, 1 << n2)
    if rank(P) != 1 << n2:
        raise StructureError("the U^k do not span all forms")
    P_inv = inverse(P)
    blocks = _d_in_u_coordinates(model, uk, P, P_inv, ks)
    verdict = check_integrability(blocks, ks)
    gcs = GcsData(model, spec, J, L, rho, uk, P, P_inv, blocks, verdict)
    if not verdict:
        if require_integrable:
            raise StructureError("structure is not integrable: " + verdict.detail)
        return gcs
    del_, delbar = del_delbar_matrices(gcs)
    gcs.complex = DoubleComplex(gcs.uk_dims, del_, delbar)
    return gcs
