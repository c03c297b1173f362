"""Generalized Dolbeault, Bott-Chern and Aeppli cohomology and the dd^J-lemma.

All dimensions are subquotients ``dim(big) - dim(small)`` with the
containment checked.  The ``piece_*`` functions work on any
:class:`~gcx.graded.DoubleComplex`, so the same code serves the U^k
grading, the classical (p,q) bigrading and the symplectic (d, d^Lambda)
pair.  The un-prefixed functions take a :class:`~gcx.gcs_engine.GcsData`.
"""

from dataclasses import dataclass, field

from .errors import StructureError, TheoremViolation
from .exterior import degree_slices
from .linalg import (
    Matrix,
    column_space,
    coordinates,
    intersect,
    inverse,
    kernel,
    quotient_dim,
    rank,
    subspace_sum,
)
from .verdict import Verdict

__all__ = [
    "GhDims",
    "VarouchasDims",
    "PsiData",
    "CohomologyReport",
    "piece_cohomology",
    "piece_varouchas",
    "piece_lemma",
    "laplacians",
    "piece_harmonic",
    "gh_dims",
    "de_rham_dims",
    "varouchas_dims",
    "harmonic_dims",
    "ddJ_lemma_check",
    "psi_maps",
    "duality_check",
    "frolicher_verdict",
    "cohomology_report",
    "theorem_failures",
]


@dataclass(frozen=True)
class GhDims:
    gh_del: int
    gh_delbar: int
    gh_bc: int
    gh_a: int

    def as_tuple(self):
        return (self.gh_del, self.gh_delbar, self.gh_bc, self.gh_a)


@dataclass(frozen=True)
class VarouchasDims:
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def as_dict(self):
        return {x: getattr(self, x) for x in "abcdef"}


@dataclass(frozen=True)
class PsiData:
    """Ranks of GH_BC -> GH_del (plus) and GH_BC -> GH_delbar (minus) at one k."""

    k: int
    bc: int
    plus_rank: int
    minus_rank: int
    plus_target: int
    minus_target: int
    plus_matrix: Matrix = field(repr=False, compare=False)
    minus_matrix: Matrix = field(repr=False, compare=False)

    @property
    def plus_injective(self):
        return self.plus_rank == self.bc

    @property
    def plus_surjective(self):
        return self.plus_rank == self.plus_target

    @property
    def minus_injective(self):
        return self.minus_rank == self.bc

    @property
    def minus_surjective(self):
        return self.minus_rank == self.minus_target


# ---------------------------------------------------------------------------
# generic per-piece computations


def piece_cohomology(dc, k):
    """The four cohomology dimensions of one piece."""
    gh_del = quotient_dim(dc.im_del(k), dc.ker_del(k))
    gh_delbar = quotient_dim(dc.im_delbar(k), dc.ker_delbar(k))
    gh_bc = quotient_dim(dc.im_deldelbar(k), dc.ker_d(k))
    gh_a = quotient_dim(dc.im_del_plus_im_delbar(k), dc.ker_deldelbar(k))
    return GhDims(gh_del, gh_delbar, gh_bc, gh_a)


def piece_varouchas(dc, k):
    """Dimensions of the six subquotients A..F on one piece."""
    im_ddb = dc.im_deldelbar(k)
    ker_ddb = dc.ker_deldelbar(k)
    a = quotient_dim(im_ddb, intersect(dc.im_delbar(k), dc.im_del(k)))
    b = quotient_dim(im_ddb, intersect(dc.ker_delbar(k), dc.im_del(k)))
    c = quotient_dim(subspace_sum(dc.ker_delbar(k), dc.im_del(k)), ker_ddb)
    d = quotient_dim(im_ddb, intersect(dc.im_delbar(k), dc.ker_del(k)))
    e = quotient_dim(subspace_sum(dc.ker_del(k), dc.im_delbar(k)), ker_ddb)
    f = quotient_dim(subspace_sum(dc.ker_delbar(k), dc.ker_del(k)), ker_ddb)
    return VarouchasDims(a, b, c, d, e, f)


def piece_lemma(dc, k, oracle=False):
    """ker delbar & im del = ker del & im delbar = im del delbar on piece k.

    The default compares dimensions, relying on im del delbar sitting inside
    both intersections (checked).  ``oracle=True`` compares the subspaces
    themselves by mutual containment.
    """
    left = intersect(dc.ker_delbar(k), dc.im_del(k))
    right = intersect(dc.ker_del(k), dc.im_delbar(k))
    bottom = dc.im_deldelbar(k)
    if oracle:
        return left == bottom and right == bottom
    quotient_dim(bottom, left)
    quotient_dim(bottom, right)
    return left.dim == bottom.dim == right.dim


def laplacians(dc, metric=None):
    """The four Laplacians as degree-zero graded operators.

    Adjoints are taken for ``metric`` (per-piece Gram matrices); the default
    makes each piece's basis orthonormal.
    """
    D, Db = dc.del_, dc.delbar
    Ds, Dbs = D.adjoint(metric), Db.adjoint(metric)
    DDb = D @ Db
    lap_del = D @ Ds + Ds @ D
    lap_delbar = Db @ Dbs + Dbs @ Db
    lap_bc = (
        DDb @ (Dbs @ Ds)
        + (Dbs @ Ds) @ DDb
        + (Dbs @ D) @ (Ds @ Db)
        + (Ds @ Db) @ (Dbs @ D)
        + Dbs @ Db
        + Ds @ D
    )
    lap_a = (
        (Dbs @ Ds) @ DDb
        + DDb @ (Dbs @ Ds)
        + (D @ Dbs) @ (Db @ Ds)
        + (Db @ Ds) @ (D @ Dbs)
        + D @ Ds
        + Db @ Dbs
    )
    return {"del": lap_del, "delbar": lap_delbar, "bc": lap_bc, "a": lap_a}


def piece_harmonic(laps, k):
    return GhDims(
        kernel(laps["del"].block(k)).dim,
        kernel(laps["delbar"].block(k)).dim,
        kernel(laps["bc"].block(k)).dim,
        kernel(laps["a"].block(k)).dim,
    )


def _projection_matrix(source, target):
    """Coordinates, in the basis ``target``, of the orthogonal projections of ``source`` vectors."""
    if not target.dim or not source.dim:
        return Matrix.zeros(target.dim, source.dim)
    Q = target.matrix()
    S = source.matrix()
    return inverse(Q.H @ Q) @ (Q.H @ S)


def piece_psi(dc, k, laps=None):
    """Inclusion-induced maps out of Bott-Chern cohomology on one piece.

    Ranks are computed twice: by the subspace formula
    rank = dim(ker d + im) - dim(im), and from the matrix of the map between
    harmonic representatives.  Disagreement is a structural error.
    """
    laps = laps or laplacians(dc)
    ker_d = dc.ker_d(k)
    bc = quotient_dim(dc.im_deldelbar(k), ker_d)
    plus_rank = subspace_sum(ker_d, dc.im_del(k)).dim - dc.im_del(k).dim
    minus_rank = subspace_sum(ker_d, dc.im_delbar(k)).dim - dc.im_delbar(k).dim

    h_bc = kernel(laps["bc"].block(k))
    h_del = kernel(laps["del"].block(k))
    h_delbar = kernel(laps["delbar"].block(k))
    plus_m = _projection_matrix(h_bc, h_del)
    minus_m = _projection_matrix(h_bc, h_delbar)
    if rank(plus_m) != plus_rank or rank(minus_m) != minus_rank:
        raise StructureError(f"inclusion-map ranks disagree between routes at {k}")
    return PsiData(
        k, bc, plus_rank, minus_rank, h_del.dim, h_delbar.dim, plus_m, minus_m
    )


# ---------------------------------------------------------------------------
# operations on a generalized complex structure


def _require(gcs):
    if gcs.complex is None:
        raise StructureError("cohomology requires an integrable structure")
    return gcs.complex


def gh_dims(gcs):
    dc = _require(gcs)
    return {k: piece_cohomology(dc, k) for k in gcs.ks}


def de_rham_dims(model):
    """Betti numbers of the Chevalley-Eilenberg complex, degree 0..2n."""
    d = model.d_matrix
    sl = degree_slices(model.n2)
    ranks = []
    for j, (a, b) in enumerate(sl):
        if j + 1 < len(sl):
            c0, c1 = sl[j + 1]
            ranks.append(rank(d.submatrix((c0, c1), (a, b))))
        else:
            ranks.append(0)
    out = []
    for j, (a, b) in enumerate(sl):
        prev = ranks[j - 1] if j else 0
        out.append((b - a) - ranks[j] - prev)
    return tuple(out)


def varouchas_dims(gcs, gh=None):
    """A..F per k, after verifying both exact-sequence identities and the conjugation dualities."""
    dc = _require(gcs)
    gh = gh or gh_dims(gcs)
    var = {k: piece_varouchas(dc, k) for k in gcs.ks}
    for k in gcs.ks:
        v, g = var[k], gh[k]
        if g.gh_a != g.gh_delbar + v.a + v.c - v.b:
            raise StructureError(f"Aeppli exact-sequence identity fails at k={k}")
        if g.gh_bc != g.gh_delbar + v.d + v.f - v.e:
            raise StructureError(f"Bott-Chern exact-sequence identity fails at k={k}")
        if v.d != var[-k].b or v.e != var[-k].c:
            raise StructureError(f"conjugation duality d^k = b^-k, e^k = c^-k fails at k={k}")
    return var


def proof_chain_holds(gh, var, k):
    """2 Gh_BC^k = Gh_delbar^k + Gh_delbar^-k + f^k + a^-k."""
    return 2 * gh[k].gh_bc == gh[k].gh_delbar + gh[-k].gh_delbar + var[k].f + var[-k].a


def harmonic_dims(gcs, gh=None, metric=None):
    """Kernel dimensions of the four Laplacians; must match :func:`gh_dims`."""
    dc = _require(gcs)
    gh = gh or gh_dims(gcs)
    laps = laplacians(dc, metric)
    out = {k: piece_harmonic(laps, k) for k in gcs.ks}
    for k in gcs.ks:
        if out[k] != gh[k]:
            raise StructureError(
                f"harmonic dimensions {out[k].as_tuple()} differ from cohomology "
                f"{gh[k].as_tuple()} at k={k}"
            )
    return out


def ddJ_lemma_check(gcs, k, oracle=False):
    return piece_lemma(_require(gcs), k, oracle)


def psi_maps(gcs):
    dc = _require(gcs)
    laps = laplacians(dc)
    return {k: piece_psi(dc, k, laps) for k in gcs.ks}


def psi_zigzag_failures(psi, ks):
    """Positions where "plus injective at k => minus surjective at k-1" or its mirror fails."""
    bad = []
    for k in ks:
        if psi[k].plus_injective and (k - 1) in psi and not psi[k - 1].minus_surjective:
            bad.append(("plus", k))
        if psi[k].minus_injective and (k + 1) in psi and not psi[k + 1].plus_surjective:
            bad.append(("minus", k))
    return bad


def duality_check(gcs, gh=None):
    """The eight dimension equalities relating k and -k."""
    gh = gh or gh_dims(gcs)
    failures = []
    for k in gcs.ks:
        g, h = gh[k], gh[-k]
        if not (g.gh_delbar == h.gh_delbar == g.gh_del == h.gh_del):
            failures.append(("dolbeault", k))
        if not (g.gh_bc == h.gh_a == g.gh_a == h.gh_bc):
            failures.append(("bott-chern/aeppli", k))
    return Verdict.from_failures(failures)


def frolicher_verdict(gcs, gh=None, lemma=None, strict=True):
    """Per-k inequality Gh_BC >= Gh_delbar, global equality, and equality <=> lemma.

    With ``strict`` a failed inequality or equivalence raises
    :class:`TheoremViolation`; otherwise it is reported under
    ``"equivalence"`` and in the per-k inequality flags.
    """
    gh = gh or gh_dims(gcs)
    if lemma is None:
        lemma = {k: ddJ_lemma_check(gcs, k) for k in gcs.ks}
    inequality = {k: gh[k].gh_bc >= gh[k].gh_delbar for k in gcs.ks}
    equality = all(gh[k].gh_bc == gh[k].gh_delbar for k in gcs.ks)
    global_lemma = all(lemma.values())
    if strict:
        bad = [k for k, ok in inequality.items() if not ok]
        if bad:
            raise TheoremViolation(f"Gh_BC < Gh_delbar at k={bad}")
        if equality != global_lemma:
            raise TheoremViolation(
                f"equality for all k is {equality} but the dd^J-lemma flag is {global_lemma}"
            )
    return {
        "inequality": inequality,
        "equality": equality,
        "lemma": global_lemma,
        "equivalence": equality == global_lemma,
    }


# ---------------------------------------------------------------------------
# report


@dataclass
class CohomologyReport:
    """Everything computed for one model; ``per_k`` rows are dicts keyed by field name."""

    model: str
    n: int
    per_k: list
    betti: tuple
    verdicts: dict
    spectral: dict = field(default_factory=dict)
    bridge: dict = field(default_factory=dict)

    def row(self, k):
        for r in self.per_k:
            if r["k"] == k:
                return r
        raise KeyError(k)


THEOREM_FLAGS = ("inequality", "equivalence", "proposition", "zigzag", "psi_lemma")


def theorem_failures(report):
    """Names of recorded theorem checks that came out false."""
    return [name for name in THEOREM_FLAGS if report.verdicts.get(name) is False]


def cohomology_report(gcs, name="", oracle=False):
    """Run every cohomology-level computation; spectral and bridge fields stay empty.

    Identities that hold by linear algebra alone raise
    :class:`StructureError` when they fail.  Statements of the theory
    (inequality, equivalence, duality, zigzag) are recorded as verdict flags
    so a counterexample is reported rather than lost; see
    :func:`theorem_failures`.
    """
    ks = gcs.ks
    gh = gh_dims(gcs)
    var = varouchas_dims(gcs, gh)
    harm = harmonic_dims(gcs, gh)
    lemma = {k: ddJ_lemma_check(gcs, k, oracle=oracle) for k in ks}
    if oracle:
        fast = {k: ddJ_lemma_check(gcs, k) for k in ks}
        if fast != lemma:
            raise StructureError("dimension shortcut and subspace equality disagree on the lemma")
    psi = psi_maps(gcs)
    zigzag = psi_zigzag_failures(psi, ks)
    psi_lemma = all(psi[k].minus_injective for k in ks)
    duality = duality_check(gcs, gh)
    fv = frolicher_verdict(gcs, gh, lemma, strict=False)
    chain = all(proof_chain_holds(gh, var, k) for k in ks)
    per_k = []
    for k in ks:
        g = gh[k]
        per_k.append({
            "k": k,
            "dim_uk": gcs.uk_dims[k],
            "gh_del": g.gh_del,
            "gh_delbar": g.gh_delbar,
            "gh_bc": g.gh_bc,
            "gh_a": g.gh_a,
            "lemma": lemma[k],
            "varouchas": var[k].as_dict(),
            "harmonic": list(harm[k].as_tuple()),
            "psi_plus_rank": psi[k].plus_rank,
            "psi_minus_rank": psi[k].minus_rank,
            "inequality": fv["inequality"][k],
        })
    verdicts = {
        "inequality": all(fv["inequality"].values()),
        "equality": fv["equality"],
        "lemma": fv["lemma"],
        "equivalence": fv["equivalence"],
        "proposition": duality.ok,
        "proof_chain": chain,
        "zigzag": not zigzag,
        "psi_lemma": psi_lemma == fv["lemma"],
    }
    return CohomologyReport(name, gcs.n, per_k, de_rham_dims(gcs.model), verdicts)
