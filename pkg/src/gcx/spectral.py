"""Pages of the canonical spectral sequence, computed by zigzags on U^k.

The bigraded complex A^{p,q} = U^{p-q} b^q only depends on k = p - q, so
every page is a function of k.  A class at level k survives to E_r when
some a_0 in U^k with delbar a_0 = 0 extends to a zigzag
a_0, a_1, ..., a_{r-1}, a_i in U^{k+2i}, with del a_i = delbar a_{i+1}.
"""

from dataclasses import dataclass, field

from .errors import StructureError
from .linalg import ZERO, Matrix, Subspace, column_space, intersect, kernel, rank, subspace_sum

__all__ = [
    "CanonicalComplexView",
    "SpectralData",
    "zigzag_cycles",
    "zigzag_boundaries",
    "page_dims",
    "e1_dims",
    "stable_page",
    "degeneration_check",
    "decomposition_check",
    "spectral_data",
]


def _assemble(row_sizes, col_sizes, blocks):
    """Dense block matrix; ``blocks`` maps (row_block, col_block) to a Matrix."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    rows = [[ZERO] * coff[-1] for _ in range(roff[-1])]
    for (i, j), m in blocks.items():
        for a, row in enumerate(m.rows):
            target = rows[roff[i] + a]
            for b, x in enumerate(row):
                if x:
                    target[coff[j] + b] = x
    return Matrix._wrap(tuple(tuple(r) for r in rows), roff[-1], coff[-1])


def zigzag_cycles(dc, k, r):
    """Z_r(k): the a_0 in U^k admitting a zigzag of length r."""
    levels = [k + 2 * i for i in range(r)]
    sizes = [dc.dim(m) for m in levels]
    if not sizes[0]:
        return Subspace.zero(0)
    # unknowns a_0..a_{r-1}; equations delbar a_0 = 0, del a_i - delbar a_{i+1} = 0
    eq_sizes = [dc.dim(k - 1)] + [dc.dim(m + 1) for m in levels[:-1]]
    blocks = {(0, 0): dc.delbar.block(k)}
    for i, m in enumerate(levels[:-1]):
        blocks[(i + 1, i)] = dc.del_.block(m)
        blocks[(i + 1, i + 1)] = dc.delbar.block(m + 2).scale(-1)
    system = _assemble(eq_sizes, sizes, blocks)
    sols = kernel(system)
    return Subspace(sizes[0], [v[: sizes[0]] for v in sols.basis])


def zigzag_boundaries(dc, k, r):
    """B_r(k): im delbar plus del g_1 for backward zigzags g_1, ..., g_{r-1} ending in ker delbar."""
    base = column_space(dc.delbar.into(k))
    if r == 1 or not dc.dim(k):
        return base
    levels = [k + 1 - 2 * j for j in range(1, r)]  # g_j in U^{k+1-2j}
    sizes = [dc.dim(m) for m in levels]
    if not sizes[0]:
        return base
    # delbar g_j - del g_{j+1} = 0, and delbar g_{r-1} = 0
    eq_sizes = [dc.dim(m - 1) for m in levels]
    blocks = {}
    for j, m in enumerate(levels):
        blocks[(j, j)] = dc.delbar.block(m)
        if j + 1 < len(levels):
            blocks[(j, j + 1)] = dc.del_.block(levels[j + 1]).scale(-1)
    system = _assemble(eq_sizes, sizes, blocks)
    sols = kernel(system)
    g1 = [v[: sizes[0]] for v in sols.basis]
    D = dc.del_.block(levels[0])
    images = [D @ list(v) for v in g1]
    return subspace_sum(base, Subspace(dc.dim(k), images))


def _page_dim(dc, k, r):
    z = zigzag_cycles(dc, k, r)
    b = zigzag_boundaries(dc, k, r)
    if not b.is_subspace_of(z):
        raise StructureError(f"B_{r} is not inside Z_{r} at k={k}")
    return z.dim - b.dim


def stable_page(n):
    """A page index past which nothing changes: zigzags cannot outrun the 2n+1 levels."""
    return 2 * n + 2


def page_dims(dc, r, ks):
    if r < 1:
        raise ValueError("pages start at r = 1")
    return {k: _page_dim(dc, k, r) for k in ks}


def e1_dims(gcs):
    return page_dims(gcs.complex, 1, gcs.ks)


def degeneration_check(pages):
    """``(True, None)`` when every page equals E_1, else ``(False, r)`` with d_r the first nonzero differential."""
    rs = sorted(pages)
    for r, nxt in zip(rs, rs[1:]):
        if pages[nxt] != pages[r]:
            return False, r
    return True, None


def _total_space(gcs):
    """Offsets of the U^k blocks in one coordinate vector, and d there."""
    dc = gcs.complex
    ks = gcs.ks
    d = dc.del_.to_matrix(ks) + dc.delbar.to_matrix(ks)
    return gcs.offsets(), d


def decomposition_check(gcs):
    """Whether H_d is the direct sum of the (ker d & U^k)/(im d & U^k).

    Returns ``(flag, piece_dims)``.  The flag needs both the dimension count
    to match the total Betti number and the pieces to be independent in
    cohomology.
    """
    dc = gcs.complex
    offsets, d = _total_space(gcs)
    total = d.ncols
    im_d = column_space(d)
    betti_total = total - 2 * rank(d)
    pieces = {}
    reps = []
    for k in gcs.ks:
        off, size = offsets[k], dc.dim(k)
        if not size:
            pieces[k] = 0
            continue
        embed = lambda v: [ZERO] * off + list(v) + [ZERO] * (total - off - size)
        closed = Subspace(total, [embed(v) for v in dc.ker_d(k).basis])
        uk = Subspace(total, [embed(v) for v in Subspace.full(size).basis])
        exact = intersect(im_d, uk)
        if not exact.is_subspace_of(closed):
            raise StructureError(f"im d & U^{k} is not inside ker d")
        pieces[k] = closed.dim - exact.dim
        reps.extend(closed.basis)
    count_ok = sum(pieces.values()) == betti_total
    spanned = subspace_sum(Subspace(total, reps), im_d).dim - im_d.dim
    return count_ok and spanned == sum(pieces.values()), pieces


@dataclass
class SpectralData:
    pages: dict
    e1: dict
    e_inf: dict
    degenerate: bool
    first_live_page: object
    decomposition: bool
    decomposition_pieces: dict = field(default_factory=dict)

    @property
    def criterion(self):
        """Degeneration at E_1 together with the cohomological decomposition."""
        return self.degenerate and self.decomposition


def spectral_data(gcs, max_page=None):
    """Pages 1..stable, trimmed to ``max_page`` for reporting; E_inf always uses the stable page."""
    dc = gcs.complex
    if dc is None:
        raise StructureError("spectral sequence requires an integrable structure")
    last = stable_page(gcs.n)
    pages = {r: page_dims(dc, r, gcs.ks) for r in range(1, last + 1)}
    for r in range(1, last):
        for k in gcs.ks:
            if pages[r + 1][k] > pages[r][k]:
                raise StructureError(f"page {r + 1} grew at k={k}")
    e_inf = pages[last]
    ok, live = degeneration_check(pages)
    decomp, pieces = decomposition_check(gcs)
    offsets, d = _total_space(gcs)
    if sum(e_inf.values()) != d.ncols - 2 * rank(d):
        raise StructureError("E_inf does not add up to the d-cohomology")
    shown = pages if max_page is None else {r: p for r, p in pages.items() if r <= max_page}
    return SpectralData(shown, pages[1], e_inf, ok, live, decomp, pieces)


class CanonicalComplexView:
    """A finite window q = 0..q_max of the bigraded complex, for checking d^b and the map tau.

    Pieces are keyed (p, q) with k = p - q in [-n, n].
    """

    def __init__(self, gcs, q_max=2):
        self.gcs = gcs
        self.q_max = q_max
        self.dc = gcs.complex

    def pieces(self):
        return [(k + q, q) for q in range(self.q_max + 1) for k in self.gcs.ks]

    def del_beta(self, p, q):
        """A^{p,q} -> A^{p+1,q}."""
        return self.dc.del_.block(p - q)

    def delbar_beta(self, p, q):
        """A^{p,q} -> A^{p,q+1}."""
        return self.dc.delbar.block(p - q)

    def d_beta(self, alpha, p, q):
        """d^b(alpha b^q) as {(p', q'): coordinates}."""
        alpha = list(alpha)
        out = {}
        a = self.del_beta(p, q) @ alpha
        b = self.delbar_beta(p, q) @ alpha
        if len(a):
            out[(p + 1, q)] = tuple(a)
        if len(b):
            out[(p, q + 1)] = tuple(b)
        return out

    def tau(self, alpha, k):
        """Image of alpha in U^k, one copy per q in the window."""
        return {(k + q, q): tuple(alpha) for q in range(self.q_max + 1)}

    def check(self):
        """Both components of d^b and tau-compatibility on every basis vector of the window."""
        failures = []
        for k in self.gcs.ks:
            size = self.dc.dim(k)
            for j in range(size):
                e = [ZERO] * size
                e[j] = 1
                D = self.dc.del_.block(k) @ e
                Db = self.dc.delbar.block(k) @ e
                for q in range(self.q_max):
                    out = self.d_beta(e, k + q, q)
                    if len(D) and out.get((k + q + 1, q)) != tuple(D):
                        failures.append(("del", k, q, j))
                    if len(Db) and out.get((k + q, q + 1)) != tuple(Db):
                        failures.append(("delbar", k, q, j))
                # tau(del a) = del^b tau(a), compared on the window
                t = self.tau(e, k)
                lhs_del = self.tau(D, k + 1) if len(D) else {}
                for (p, q), v in t.items():
                    if len(D) and tuple(self.del_beta(p, q) @ list(v)) != lhs_del[(p + 1, q)]:
                        failures.append(("tau-del", k, q, j))
                lhs_db = self.tau(Db, k - 1) if len(Db) else {}
                for (p, q), v in t.items():
                    if q + 1 > self.q_max or not len(Db):
                        continue
                    if tuple(self.delbar_beta(p, q) @ list(v)) != lhs_db[(p, q + 1)]:
                        failures.append(("tau-delbar", k, q, j))
        return failures
