"""Specializations: complex structures (bigraded Dolbeault) and symplectic forms (Tseng-Yau).

Both bridges recompute the classical invariants from scratch on the
Chevalley-Eilenberg complex, then compare them with the generalized ones.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

from .cohomology import GhDims, de_rham_dims, gh_dims, piece_cohomology, piece_lemma
from .errors import StructureError
from .exterior import (
    Form,
    contract_matrix,
    degree_slices,
    wedge,
    wedge_matrix,
)
from .graded import DoubleComplex, GradedOp
from .linalg import I, Matrix, Subspace, inverse, kernel, rank
from .gcs_engine import omega_matrix
from .verdict import Verdict

__all__ = [
    "BigradedDims",
    "SymplecticOps",
    "holomorphic_coframe",
    "dolbeault_bigraded",
    "complex_conjugation_dualities",
    "complex_bridge",
    "symplectic_ops",
    "tseng_yau_complex",
    "symplectic_bridge",
    "symplectic_corollary_check",
]


# ---------------------------------------------------------------------------
# complex structures


@dataclass
class BigradedDims:
    """h[(p, q)] for each of "del", "delbar", "bc", "a", plus the classical lemma per bidegree."""

    n: int
    h: dict
    lemma: dict

    def diagonal_sum(self, which, k):
        return sum(v for (p, q), v in self.h[which].items() if p - q == k)

    def get(self, which, p, q):
        return self.h[which].get((p, q), 0)


def holomorphic_coframe(J):
    """Basis of the +i eigenspace of J^T on complex covectors: the (1,0)-forms."""
    n2 = J.nrows
    K = kernel(J.T - Matrix.identity(n2).scale(I))
    if K.dim * 2 != n2:
        raise StructureError("J has no half-dimensional +i eigenspace")
    return [Form.covector(v) for v in K.basis]


def _bigraded_basis(theta):
    """Forms theta_A ^ conj(theta)_B keyed by (p, q), A and B in lexicographic order."""
    n = len(theta)
    n2 = theta[0].n2
    bar = [t.conjugate() for t in theta]
    pieces = {}
    for p in range(n + 1):
        for q in range(n + 1):
            forms = []
            for A in combinations(range(n), p):
                for B in combinations(range(n), q):
                    f = Form.one(n2)
                    for a in A:
                        f = wedge(f, theta[a])
                    for b in B:
                        f = wedge(f, bar[b])
                    forms.append(f)
            pieces[(p, q)] = forms
    return pieces


def dolbeault_bigraded(model, J, lemma_oracle=False):
    """Classical (p,q) cohomology dimensions of a complex structure on the model.

    d must split into (1,0) and (0,1) parts; any other component means J is
    not integrable.
    """
    theta = holomorphic_coframe(J)
    n = len(theta)
    n2 = model.n2
    pieces = _bigraded_basis(theta)
    labels = [(p, q) for p in range(n + 1) for q in range(n + 1)]
    cols = [f.to_vector() for pq in labels for f in pieces[pq]]
    Q = Matrix.from_columns(cols, 1 << n2)
    Qi = inverse(Q)
    dq = Qi @ model.d_matrix @ Q
    offs, total = {}, 0
    for pq in labels:
        offs[pq] = total
        total += len(pieces[pq])
    dims = {pq: len(pieces[pq]) for pq in labels}
    del_blocks, delbar_blocks = {}, {}
    for src in labels:
        c0, c1 = offs[src], offs[src] + dims[src]
        for dst in labels:
            r0, r1 = offs[dst], offs[dst] + dims[dst]
            blk = dq.submatrix((r0, r1), (c0, c1))
            if blk.is_zero():
                continue
            step = (dst[0] - src[0], dst[1] - src[1])
            if step == (1, 0):
                del_blocks[src] = blk
            elif step == (0, 1):
                delbar_blocks[src] = blk
            else:
                raise StructureError(f"J is not integrable: d has a {step} component on {src}")
    dc = DoubleComplex(dims, GradedOp(dims, (1, 0), del_blocks), GradedOp(dims, (0, 1), delbar_blocks))
    h = {"del": {}, "delbar": {}, "bc": {}, "a": {}}
    lemma = {}
    for pq in labels:
        g = piece_cohomology(dc, pq)
        h["del"][pq], h["delbar"][pq], h["bc"][pq], h["a"][pq] = g.as_tuple()
        lemma[pq] = piece_lemma(dc, pq, oracle=lemma_oracle)
    return BigradedDims(n, h, lemma), pieces


def complex_conjugation_dualities(bd):
    """h_BC^{p,q} = h_BC^{q,p} = h_A^{n-p,n-q} = h_A^{n-q,n-p}, and the del/delbar chain.

    The second chain is checked as
    h_delbar^{p,q} = h_del^{q,p} = h_delbar^{n-p,n-q} = h_del^{n-q,n-p}
    (conjugation, then duality).
    """
    n = bd.n
    failures = []
    for p in range(n + 1):
        for q in range(n + 1):
            bc = (bd.get("bc", p, q), bd.get("bc", q, p),
                  bd.get("a", n - p, n - q), bd.get("a", n - q, n - p))
            if len(set(bc)) != 1:
                failures.append(("bc/a", p, q, bc))
            dol = (bd.get("delbar", p, q), bd.get("del", q, p),
                   bd.get("delbar", n - p, n - q), bd.get("del", n - q, n - p))
            if len(set(dol)) != 1:
                failures.append(("delbar/del", p, q, dol))
    return Verdict.from_failures(failures)


def complex_bridge(gcs, oracle=False):
    """Compare the generalized invariants of a complex-structure model with the bigraded ones."""
    if gcs.spec.kind != "complex_endomorphism":
        raise StructureError("the complex bridge needs a complex structure")
    bd, pieces = dolbeault_bigraded(gcs.model, gcs.spec.payload, lemma_oracle=oracle)
    n = gcs.n
    gh = gh_dims(gcs)
    # U^k must sit inside the sum of the (p,q) pieces with p - q = k
    for k in gcs.ks:
        span = Subspace(1 << gcs.n2, [f.to_vector() for (p, q), fs in pieces.items()
                                      if p - q == k for f in fs])
        if not all(span.contains(f.to_vector()) for f in gcs.uk_forms[k]):
            raise StructureError(f"U^{k} is not inside the p - q = {k} forms")
    sums = {}
    failures = []
    for k in gcs.ks:
        s = GhDims(*(bd.diagonal_sum(w, k) for w in ("del", "delbar", "bc", "a")))
        sums[k] = s
        if s != gh[k]:
            failures.append(("diagonal-sum", k, s.as_tuple(), gh[k].as_tuple()))
    inequality = {k: sums[k].gh_bc >= sums[k].gh_delbar for k in gcs.ks}
    classical_lemma = all(bd.lemma.values())
    generalized_lemma = all(piece_lemma(gcs.complex, k, oracle=oracle) for k in gcs.ks)
    conj = complex_conjugation_dualities(bd)
    return {
        "kind": "complex",
        "n": n,
        "h": {w: {f"{p},{q}": v for (p, q), v in sorted(tab.items())} for w, tab in bd.h.items()},
        "diagonal_sums_match": not failures,
        "diagonal_failures": failures,
        "inequality": inequality,
        "classical_lemma": classical_lemma,
        "lemma_flags_agree": classical_lemma == generalized_lemma,
        "conjugation_dualities": conj.ok,
        "conjugation_failures": list(conj.failures),
    }


# ---------------------------------------------------------------------------
# symplectic forms


@dataclass
class SymplecticOps:
    """Matrices on all forms: Lambda, d, d^Lambda and the isomorphism phi."""

    Lam: Matrix
    d: Matrix
    dLam: Matrix
    phi: Matrix = field(repr=False)


def _exp_nilpotent(M):
    """Finite exponential series; stops at the first vanishing power."""
    n = M.nrows
    out = Matrix.identity(n)
    power = Matrix.identity(n)
    j = 1
    while True:
        power = power @ M
        if power.is_zero():
            return out
        out = out + power.scale(Fraction(1, factorial(j)))
        j += 1


def lambda_matrix(omega):
    """Contraction with the Poisson bivector of omega.

    With W the matrix of X -> iota_X omega and P = W^{-1}, this is
    sum_{i<j} P[i][j] iota_{e_i} iota_{e_j}; the sign is the one that makes
    phi intertwine d with delbar (it sends omega to -n).
    """
    n2 = omega.n2
    P = inverse(omega_matrix(omega))
    C = []
    for i in range(n2):
        v = [0] * n2
        v[i] = 1
        C.append(contract_matrix(v))
    size = 1 << n2
    out = Matrix.zeros(size, size)
    for i in range(n2):
        for j in range(i + 1, n2):
            c = P.rows[i][j]
            if c:
                out = out + (C[i] @ C[j]).scale(c)
    return out


def symplectic_ops(model, omega):
    if omega.degrees() != [2]:
        raise StructureError("omega must be a 2-form")
    if model.d(omega):
        raise StructureError("omega is not closed")
    if rank(omega_matrix(omega)) != model.n2:
        raise StructureError("omega is degenerate")
    Lam = lambda_matrix(omega)
    d = model.d_matrix
    dLam = Lam @ d - d @ Lam
    e_iw = _exp_nilpotent(wedge_matrix(omega).scale(I))
    e_lam = _exp_nilpotent(Lam.scale((2 * I).inverse()))
    return SymplecticOps(Lam, d, dLam, e_iw @ e_lam)


def _by_degree(M, n2, shift):
    sl = degree_slices(n2)
    dims = {j: b - a for j, (a, b) in enumerate(sl)}
    blocks = {}
    for j, (a, b) in enumerate(sl):
        t = j + shift
        if 0 <= t < len(sl):
            blk = M.submatrix(sl[t], (a, b))
            if not blk.is_zero():
                blocks[j] = blk
    return dims, GradedOp(dims, shift, blocks)


def tseng_yau_complex(model, ops):
    """Degree-graded pair (d^Lambda, d); its BC/A subquotients are the Tseng-Yau cohomologies."""
    dims, dlam = _by_degree(ops.dLam, model.n2, -1)
    _, d = _by_degree(ops.d, model.n2, 1)
    if not (dlam @ dlam).is_zero():
        raise StructureError("(d^Lambda)^2 != 0")
    if not ((d @ dlam) + (dlam @ d)).is_zero():
        raise StructureError("d d^Lambda + d^Lambda d != 0")
    return DoubleComplex(dims, dlam, d)


def symplectic_bridge(gcs, oracle=False):
    """phi intertwining, Tseng-Yau dims and Betti numbers against the generalized invariants."""
    if gcs.spec.kind != "symplectic_form":
        raise StructureError("the symplectic bridge needs a symplectic form")
    model, omega = gcs.model, gcs.spec.payload
    n, n2 = gcs.n, gcs.n2
    ops = symplectic_ops(model, omega)
    ks = gcs.ks
    D = gcs.P @ gcs.complex.del_.to_matrix(ks) @ gcs.P_inv
    Db = gcs.P @ gcs.complex.delbar.to_matrix(ks) @ gcs.P_inv
    if rank(ops.phi) != ops.phi.nrows:
        raise StructureError("phi is not invertible")
    if ops.phi @ ops.d != Db @ ops.phi:
        raise StructureError("phi(d a) != delbar phi(a)")
    if ops.phi @ ops.dLam != (D @ ops.phi).scale(-2 * I):
        raise StructureError("phi(d^Lambda a) != -2i del phi(a)")
    # phi sends j-forms into U^{n-j}
    sl = degree_slices(n2)
    for j, (a, b) in enumerate(sl):
        target = gcs.Uk_bases[n - j]
        for c in range(a, b):
            if not target.contains(ops.phi.column(c)):
                raise StructureError(f"phi does not send degree {j} into U^{n - j}")
    tc = tseng_yau_complex(model, ops)
    ty = {j: piece_cohomology(tc, j) for j in range(n2 + 1)}
    betti = de_rham_dims(model)
    gh = gh_dims(gcs)
    checks = []
    for k in ks:
        j = n - k
        if gh[k].gh_delbar != betti[j]:
            checks.append(("gh_delbar vs betti", k))
        if gh[k].gh_bc != ty[j].gh_bc:
            checks.append(("gh_bc vs H_BC", k))
        if gh[k].gh_a != ty[j].gh_a:
            checks.append(("gh_a vs H_A", k))
        if ty[j].gh_delbar != betti[j]:
            checks.append(("Tseng-Yau delbar vs betti", j))
    if checks:
        raise StructureError(f"symplectic isomorphisms fail: {checks}")
    lemma = all(piece_lemma(tc, j, oracle=oracle) for j in range(n2 + 1))
    generalized_lemma = all(piece_lemma(gcs.complex, k, oracle=oracle) for k in ks)
    out = {
        "kind": "symplectic",
        "n": n,
        "betti": list(betti),
        "h_bc": [ty[j].gh_bc for j in range(n2 + 1)],
        "h_a": [ty[j].gh_a for j in range(n2 + 1)],
        "intertwining": True,
        "ddLambda_lemma": lemma,
        "lemma_flags_agree": lemma == generalized_lemma,
    }
    out.update(symplectic_corollary_check(out))
    return out


def symplectic_corollary_check(bridge):
    """H_BC^k >= b_k, equality for all k <=> dd^Lambda-lemma, H_BC^k = H_A^k."""
    bc, a, b = bridge["h_bc"], bridge["h_a"], bridge["betti"]
    inequality = [x >= y for x, y in zip(bc, b)]
    equality = bc == b
    return {
        "corollary_inequality": all(inequality),
        "corollary_equality": equality,
        "corollary_equivalence": equality == bridge["ddLambda_lemma"],
        "bc_equals_a": bc == a,
    }
