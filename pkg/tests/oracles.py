"""Independent reference computations, written against sympy only.

Nothing here imports the package's linear algebra or exterior algebra, so
agreement with the engine is evidence rather than tautology.
"""

import re
from itertools import combinations

import sympy


def gr_to_sympy(x):
    return sympy.Rational(int(x.re.numerator), int(x.re.denominator)) + sympy.I * sympy.Rational(
        int(x.im.numerator), int(x.im.denominator)
    )


def to_sympy(m):
    """Package Matrix -> sympy Matrix."""
    return sympy.Matrix(m.nrows, m.ncols, lambda i, j: gr_to_sympy(m.rows[i][j]))


def sympy_rank(m):
    return to_sympy(m).rank() if m.nrows and m.ncols else 0


def algebra_line(path):
    for line in open(path, encoding="utf-8"):
        line = line.split("#")[0].strip()
        if line.startswith("algebra"):
            return line[len("algebra"):].strip()
    raise ValueError("no algebra line")


def salamon_terms(text):
    """'(0,0,0,12)' -> [[], [], [], [(1, 1, 2)]]; supports '13+42', '-13', '1/2*12'."""
    entries = text.strip()[1:-1].split(",")
    out = []
    for e in entries:
        e = e.replace(" ", "")
        terms = []
        if e != "0":
            for sign, coeff, pair in re.findall(r"([+-]?)(?:([0-9/]+)\*)?(\d\d)", e):
                c = sympy.Rational(coeff) if coeff else sympy.Integer(1)
                if sign == "-":
                    c = -c
                i, j = int(pair[0]), int(pair[1])
                if i > j:
                    i, j, c = j, i, -c
                terms.append((c, i, j))
        out.append(terms)
    return out


def ce_betti(terms):
    """Betti numbers of the CE complex from Salamon data, by sympy ranks."""
    n2 = len(terms)
    basis = {p: list(combinations(range(1, n2 + 1), p)) for p in range(n2 + 1)}
    index = {p: {b: i for i, b in enumerate(basis[p])} for p in basis}

    def d_mono(mono):
        # d(e^{a1} ^ ... ^ e^{ap}) = sum_s (-1)^s e^{a1} .. d e^{as} .. e^{ap}
        out = {}
        for s, a in enumerate(mono):
            for c, i, j in terms[a - 1]:
                word = list(mono[:s]) + [i, j] + list(mono[s + 1:])
                if len(set(word)) < len(word):
                    continue
                perm_sign = 1
                w = word[:]
                for x in range(len(w)):
                    for y in range(len(w) - 1 - x):
                        if w[y] > w[y + 1]:
                            w[y], w[y + 1] = w[y + 1], w[y]
                            perm_sign = -perm_sign
                key = tuple(w)
                out[key] = out.get(key, 0) + (-1) ** s * perm_sign * c
        return out

    ranks = []
    for p in range(n2 + 1):
        if p == n2:
            ranks.append(0)
            continue
        M = sympy.zeros(len(basis[p + 1]), len(basis[p]))
        for col, mono in enumerate(basis[p]):
            for key, c in d_mono(mono).items():
                M[index[p + 1][key], col] += c
        ranks.append(M.rank())
    return tuple(len(basis[p]) - ranks[p] - (ranks[p - 1] if p else 0) for p in range(n2 + 1))


def e2_dims(del_blocks, delbar_blocks, dims):
    """E_2 as the homology of d_1 on delbar-cohomology, from sympy matrices.

    ``del_blocks[k]``: U^k -> U^{k+1}, ``delbar_blocks[k]``: U^k -> U^{k-1}.
    rank d_1 at k = rank[del Z_1(k) | B_1(k+1)] - rank B_1(k+1).
    """
    ks = sorted(dims)

    def blk(store, k, rows):
        m = store.get(k)
        return m if m is not None else sympy.zeros(rows, dims.get(k, 0))

    def d1_rank(k):
        if not dims.get(k) or not dims.get(k + 1):
            return 0
        Db = blk(delbar_blocks, k, dims.get(k - 1, 0))
        Z = Db.nullspace() if Db.rows else [sympy.eye(dims[k])[:, i] for i in range(dims[k])]
        D = blk(del_blocks, k, dims[k + 1])
        images = [D * z for z in Z]
        B = blk(delbar_blocks, k + 2, dims[k + 1])
        cols = images + [B[:, i] for i in range(B.cols)]
        both = sympy.Matrix.hstack(*cols).rank() if cols else 0
        return both - (B.rank() if B.cols else 0)

    def e1(k):
        Db = blk(delbar_blocks, k, dims.get(k - 1, 0))
        into = blk(delbar_blocks, k + 1, dims[k])
        ker = dims[k] - (Db.rank() if Db.rows else 0)
        return ker - (into.rank() if into.cols else 0)

    return {k: e1(k) - d1_rank(k) - d1_rank(k - 1) for k in ks}
