"""Graded linear maps and pairs of anticommuting differentials.

A piece is labelled by an int (the U^k grading, form degree) or a tuple
(the (p,q) bigrading).  A :class:`GradedOp` of shift ``s`` sends piece
``k`` to piece ``k + s``; :class:`DoubleComplex` holds two of them and
caches the kernels and images every cohomology computation needs.
"""

from functools import lru_cache

from .linalg import ZERO, Matrix, Subspace, column_space, intersect, inverse, kernel, subspace_sum


def shift_label(label, s):
    if isinstance(label, tuple):
        return tuple(a + b for a, b in zip(label, s))
    return label + s


def neg_shift(s):
    if isinstance(s, tuple):
        return tuple(-a for a in s)
    return -s


class GradedOp:
    """Block-diagonal-by-shift operator on a graded space with piece sizes ``dims``."""

    def __init__(self, dims, shift, blocks=None):
        self.dims = dims
        self.shift = shift
        self._blocks = {}
        for k, m in (blocks or {}).items():
            expected = (self.dim(shift_label(k, shift)), self.dim(k))
            if m.shape != expected:
                raise ValueError(f"block at {k} has shape {m.shape}, expected {expected}")
            self._blocks[k] = m

    def dim(self, label):
        return self.dims.get(label, 0)

    def block(self, k):
        """Matrix from piece ``k`` to piece ``k + shift`` (zero when absent)."""
        m = self._blocks.get(k)
        if m is None:
            return Matrix.zeros(self.dim(shift_label(k, self.shift)), self.dim(k))
        return m

    def into(self, k):
        """Matrix landing in piece ``k``."""
        return self.block(shift_label(k, neg_shift(self.shift)))

    def labels(self):
        return list(self.dims)

    def __matmul__(self, other):
        if self.dims is not other.dims and self.dims != other.dims:
            raise ValueError("graded operators live on different spaces")
        shift = shift_label(self.shift, other.shift)
        blocks = {}
        for k in other.labels():
            mid = shift_label(k, other.shift)
            if self.dim(mid) == 0 or self.dim(shift_label(mid, self.shift)) == 0:
                continue
            blocks[k] = self.block(mid) @ other.block(k)
        return GradedOp(self.dims, shift, blocks)

    def _combine(self, other, fn):
        if self.shift != other.shift:
            raise ValueError("cannot add graded operators of different shifts")
        blocks = {k: fn(self.block(k), other.block(k)) for k in self.labels()
                  if self.dim(shift_label(k, self.shift))}
        return GradedOp(self.dims, self.shift, blocks)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def scale(self, c):
        return GradedOp(self.dims, self.shift, {k: m.scale(c) for k, m in self._blocks.items()})

    @property
    def H(self):
        """Adjoint for the inner product making every piece's basis orthonormal."""
        s = self.shift
        blocks = {shift_label(k, s): m.H for k, m in self._blocks.items()}
        return GradedOp(self.dims, neg_shift(s), blocks)

    def adjoint(self, metric=None):
        """Adjoint for per-piece Gram matrices ``metric[k]`` (Hermitian, positive definite).

        With no metric this is :attr:`H`.  Block k -> m becomes
        G_k^{-1} A^H G_m.
        """
        if metric is None:
            return self.H
        s = self.shift
        blocks = {}
        for k, m in self._blocks.items():
            t = shift_label(k, s)
            blocks[t] = inverse(metric[k]) @ m.H @ metric[t]
        return GradedOp(self.dims, neg_shift(s), blocks)

    def is_zero(self):
        return all(m.is_zero() for m in self._blocks.values())

    def to_matrix(self, order):
        """Assemble the full square matrix over the pieces listed in ``order``."""
        offsets = {}
        total = 0
        for k in order:
            offsets[k] = total
            total += self.dim(k)
        rows = [[ZERO] * total for _ in range(total)]
        for k, m in self._blocks.items():
            t = shift_label(k, self.shift)
            if t not in offsets or k not in offsets:
                continue
            r0, c0 = offsets[t], offsets[k]
            for i, row in enumerate(m.rows):
                for j, x in enumerate(row):
                    rows[r0 + i][c0 + j] = x
        return Matrix._wrap(tuple(tuple(r) for r in rows), total, total)


def laplacian_kernel_dim(op):
    """Dimension of the kernel of a degree-0 graded operator, per piece."""
    return {k: kernel(op.block(k)).dim for k in op.labels()}


class DoubleComplex:
    """Pieces with two differentials ``del_`` and ``delbar`` that square to zero and anticommute."""

    def __init__(self, dims, del_, delbar):
        self.dims = dims
        self.del_ = del_
        self.delbar = delbar
        self.deldelbar = del_ @ delbar

    @property
    def labels(self):
        return list(self.dims)

    def dim(self, k):
        return self.dims.get(k, 0)

    # The cached accessors below return Subspaces of the coordinate space of piece k.
    @lru_cache(maxsize=None)
    def ker_del(self, k):
        return kernel(self.del_.block(k))

    @lru_cache(maxsize=None)
    def ker_delbar(self, k):
        return kernel(self.delbar.block(k))

    @lru_cache(maxsize=None)
    def ker_deldelbar(self, k):
        return kernel(self.deldelbar.block(k))

    @lru_cache(maxsize=None)
    def ker_d(self, k):
        return intersect(self.ker_del(k), self.ker_delbar(k))

    @lru_cache(maxsize=None)
    def im_del(self, k):
        return column_space(self.del_.into(k))

    @lru_cache(maxsize=None)
    def im_delbar(self, k):
        return column_space(self.delbar.into(k))

    @lru_cache(maxsize=None)
    def im_deldelbar(self, k):
        return column_space(self.deldelbar.into(k))

    @lru_cache(maxsize=None)
    def im_del_plus_im_delbar(self, k):
        return subspace_sum(self.im_del(k), self.im_delbar(k))

    def zero(self, k):
        return Subspace.zero(self.dim(k))
