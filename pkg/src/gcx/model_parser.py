"""Model files: Lie algebra structure equations in Salamon notation plus one structure.

Example::

    # Kodaira-Thurston with its standard symplectic form
    dim 4
    algebra (0,0,0,12)
    structure symplectic omega = e14 + e23

Statements are separated by newlines or ``;``.  The algebra entry for
generator k lists de^k; ``13+42`` means e^1^e^3 + e^4^e^2.  The
Chevalley-Eilenberg convention is d e^k = -sum c^k_ij e^i^e^j for
[e_i, e_j] = sum c^k_ij e_k, so the Salamon entries *are* the
differentials of the dual generators.
"""

import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ParseError
from .exterior import Form, basis_masks, mask_label, mask_position, popcount
from .linalg import ONE, ZERO, GaussianRational, Matrix, as_gr
from .verdict import Verdict

__all__ = [
    "LieModel",
    "StructureSpec",
    "STRUCTURE_KINDS",
    "parse_model",
    "parse_model_file",
    "format_model",
    "ce_differential",
    "validate",
]

MAX_DIM = 8

STRUCTURE_KINDS = {
    "complex": "complex_endomorphism",
    "symplectic": "symplectic_form",
    "spinor": "pure_spinor",
    "matrix": "raw_matrix",
}
_KEYWORD = {v: k for k, v in STRUCTURE_KINDS.items()}


class LieModel:
    """Finite-dimensional Lie algebra model given by the differentials of its dual basis."""

    def __init__(self, n2, structure_terms):
        if n2 <= 0 or n2 % 2:
            raise ValueError("real dimension must be a positive even number")
        if len(structure_terms) != n2:
            raise ValueError("need one term list per generator")
        terms = []
        for k, lst in enumerate(structure_terms, start=1):
            acc = {}
            for coeff, i, j in lst:
                if not (1 <= i <= n2 and 1 <= j <= n2) or i == j:
                    raise ValueError(f"bad wedge pair ({i},{j}) in de{k}")
                c = as_gr(coeff)
                if i > j:
                    i, j, c = j, i, -c
                acc[(i, j)] = acc.get((i, j), ZERO) + c
            terms.append(tuple((c, i, j) for (i, j), c in sorted(acc.items()) if c))
        self.n2 = n2
        self.structure_terms = tuple(terms)

    @classmethod
    def abelian(cls, n2):
        return cls(n2, [()] * n2)

    @classmethod
    def from_salamon(cls, text):
        """Build from a bare ``(0,0,0,12)`` string."""
        p = _Parser(text.strip(), 1, 1)
        entries = p.salamon_tuple(None)
        return cls(len(entries), entries)

    @property
    def n(self):
        return self.n2 // 2

    @cached_property
    def differentials(self):
        """de^k as 2-forms, k = 1..n2."""
        out = []
        for lst in self.structure_terms:
            f = Form.zero(self.n2)
            for c, i, j in lst:
                f = f + Form.monomial(self.n2, (i, j), c)
            out.append(f)
        return tuple(out)

    @cached_property
    def d_matrix(self):
        return ce_differential(self)

    def d(self, form):
        """Apply the differential to a Form."""
        return Form.from_vector(self.n2, self.d_matrix @ form.to_vector())

    def is_abelian(self):
        return not any(self.structure_terms)

    def salamon(self):
        return "(" + ",".join(_format_salamon_entry(t) for t in self.structure_terms) + ")"

    def __eq__(self, other):
        if not isinstance(other, LieModel):
            return NotImplemented
        return self.n2 == other.n2 and self.structure_terms == other.structure_terms

    def __hash__(self):
        return hash((self.n2, self.structure_terms))

    def __repr__(self):
        return f"LieModel({self.salamon()})"


@dataclass(frozen=True)
class StructureSpec:
    """One structure statement: ``kind`` is one of the STRUCTURE_KINDS values."""

    kind: str
    payload: object
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind not in _KEYWORD:
            raise ValueError(f"unknown structure kind {self.kind!r}")
        if not self.name:
            object.__setattr__(
                self,
                "name",
                {"complex_endomorphism": "J", "symplectic_form": "omega",
                 "pure_spinor": "rho", "raw_matrix": "JJ"}[self.kind],
            )


# ---------------------------------------------------------------------------
# differential


def ce_differential(model):
    """Matrix of d on the full exterior algebra in canonical monomial order.

    d is extended from the generators as a degree-1 graded derivation:
    d(e^i ^ rest) = de^i ^ rest - e^i ^ d(rest).
    """
    n2 = model.n2
    de = model.differentials
    cache = {0: Form.zero(n2)}

    def d_mask(mask):
        if mask in cache:
            return cache[mask]
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        gen = Form._wrap(n2, {low: ONE})
        restf = Form._wrap(n2, {rest: ONE})
        out = de[i].wedge(restf) - gen.wedge(d_mask(rest))
        cache[mask] = out
        return out

    masks = basis_masks(n2)
    pos = mask_position(n2)
    size = len(masks)
    rows = [[ZERO] * size for _ in range(size)]
    for j, m in enumerate(masks):
        for m2, c in d_mask(m).coeffs.items():
            rows[pos[m2]][j] = c
    return Matrix._wrap(tuple(tuple(r) for r in rows), size, size)


def validate(model):
    """Check d^2 = 0; on failure name the first monomial with d^2 != 0."""
    d = model.d_matrix
    dd = d @ d
    masks = basis_masks(model.n2)
    for j, m in enumerate(masks):
        if any(row[j] for row in dd.rows):
            image = Form.from_vector(model.n2, dd.column(j))
            return Verdict(False, (mask_label(m),), f"d^2({mask_label(m)}) = {image}")
    return Verdict(True)


# ---------------------------------------------------------------------------
# parsing

_INT = re.compile(r"\d+")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class _Parser:
    """Cursor over one statement body; columns are reported 1-based in the source line."""

    def __init__(self, text, line, col0):
        self.s = text
        self.i = 0
        self.line = line
        self.col0 = col0

    def error(self, msg, at=None):
        at = self.i if at is None else at
        raise ParseError(msg, self.line, self.col0 + at)

    def ws(self):
        while self.i < len(self.s) and self.s[self.i] in " \t":
            self.i += 1

    def peek(self):
        self.ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def eat(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.i += 1

    def at_end(self):
        return self.peek() == ""

    def expect_end(self):
        if not self.at_end():
            self.error(f"unexpected text {self.s[self.i:]!r}")

    def integer(self):
        self.ws()
        m = _INT.match(self.s, self.i)
        if not m:
            self.error("expected an integer")
        self.i = m.end()
        return int(m.group())

    def ident(self):
        self.ws()
        m = _IDENT.match(self.s, self.i)
        if not m:
            self.error("expected a name")
        self.i = m.end()
        return m.group()

    def rational(self):
        start = self.i
        num = self.integer()
        if self.peek() == "/":
            self.i += 1
            den = self.integer()
            if den == 0:
                self.error("zero denominator", start)
            return GaussianRational(f"{num}/{den}")
        return GaussianRational(num)

    # scalars ---------------------------------------------------------------
    def _imag_suffix(self, value):
        """After a rational, an optional ``i`` (possibly space separated) makes it imaginary."""
        save = self.i
        self.ws()
        if self.i < len(self.s) and self.s[self.i] == "i" and not self._word_continues(self.i + 1):
            self.i += 1
            return GaussianRational(0, value.re)
        self.i = save
        return value

    def _word_continues(self, j):
        return j < len(self.s) and (self.s[j].isalnum() or self.s[j] == "_")

    def unsigned_scalar_term(self):
        c = self.peek()
        if c.isdigit():
            return self._imag_suffix(self.rational())
        if c == "i" and not self._word_continues(self.i + 1):
            self.i += 1
            return GaussianRational(0, 1)
        self.error("expected a number")

    def complex_scalar(self):
        """``[+-] term ([+-] term)*`` where term is a rational, ``r i`` or ``i``."""
        sign = ONE
        if self.peek() in ("+", "-"):
            sign = -ONE if self.s[self.i] == "-" else ONE
            self.i += 1
        total = sign * self.unsigned_scalar_term()
        while self.peek() in ("+", "-"):
            save = self.i
            sgn = -ONE if self.s[self.i] == "-" else ONE
            self.i += 1
            nxt = self.peek()
            if not (nxt.isdigit() or nxt == "i"):
                self.i = save
                break
            total = total + sgn * self.unsigned_scalar_term()
        return total

    def matrix(self, size):
        rows = []
        self.eat("[")
        while True:
            start = self.i
            self.eat("[")
            row = [self.complex_scalar()]
            while self.peek() == ",":
                self.i += 1
                row.append(self.complex_scalar())
            self.eat("]")
            if rows and len(row) != len(rows[0]):
                self.error("ragged matrix row", start)
            rows.append(row)
            if self.peek() == ",":
                self.i += 1
                continue
            break
        self.eat("]")
        if len(rows) != size or len(rows[0]) != size:
            self.error(f"expected a {size}x{size} matrix, got {len(rows)}x{len(rows[0])}")
        return Matrix(rows)

    # forms -----------------------------------------------------------------------
    def monomial(self, n2):
        start = self.i
        self.eat("e")
        m = _INT.match(self.s, self.i)
        if not m:
            self.error("expected generator indices after 'e'")
        self.i = m.end()
        idx = [int(ch) for ch in m.group()]
        for k in idx:
            if not 1 <= k <= n2:
                self.error(f"index {k} out of range 1..{n2}", start)
        if len(set(idx)) != len(idx):
            self.error("repeated index in monomial", start)
        return Form.monomial(n2, idx)

    def form_term(self, n2):
        c = self.peek()
        if c == "e":
            return self.monomial(n2)
        if c == "(":
            self.i += 1
            coeff = self.complex_scalar()
            self.eat(")")
        else:
            coeff = self.unsigned_scalar_term()
        if self.peek() == "*":
            self.i += 1
            return self.monomial(n2).scale(coeff)
        return Form.one(n2).scale(coeff)

    def form(self, n2):
        sign = ONE
        if self.peek() in ("+", "-"):
            sign = -ONE if self.s[self.i] == "-" else ONE
            self.i += 1
        total = self.form_term(n2).scale(sign)
        while self.peek() in ("+", "-"):
            sign = -ONE if self.s[self.i] == "-" else ONE
            self.i += 1
            total = total + self.form_term(n2).scale(sign)
        return total

    # Salamon notation --------------------------------------------------------------
    def salamon_entry(self, n2):
        if self.peek() == "0":
            nxt = self.s[self.i + 1:self.i + 2]
            if not (nxt.isdigit() or nxt in ("/", "*")):
                self.i += 1
                return ()
        terms = []
        first = True
        while True:
            sign = ONE
            c = self.peek()
            if c in ("+", "-"):
                sign = -ONE if c == "-" else ONE
                self.i += 1
            elif not first:
                break
            first = False
            start = self.i
            self.ws()
            m = _INT.match(self.s, self.i)
            if not m:
                self.error("expected a wedge pair such as 12")
            coeff = ONE
            if self.s[m.end():m.end() + 1] in ("/", "*"):
                coeff = self.rational()
                self.eat("*")
                self.ws()
                m = _INT.match(self.s, self.i)
                if not m:
                    self.error("expected a wedge pair after '*'")
            digits = m.group()
            if len(digits) != 2:
                self.error(f"wedge pair must have exactly two indices, got {digits!r}", start)
            i, j = int(digits[0]), int(digits[1])
            limit = n2 if n2 is not None else 9
            for k in (i, j):
                if not 1 <= k <= limit:
                    self.error(f"index {k} out of range 1..{limit}", start)
            if i == j:
                self.error("wedge pair with repeated index", start)
            self.i = m.end()
            terms.append((sign * coeff, i, j))
            if self.peek() not in ("+", "-"):
                break
        return tuple(terms)

    def salamon_tuple(self, n2):
        self.eat("(")
        entries = [self.salamon_entry(n2)]
        while self.peek() == ",":
            self.i += 1
            entries.append(self.salamon_entry(n2))
        self.eat(")")
        self.expect_end()
        if n2 is not None and len(entries) != n2:
            self.error(f"algebra lists {len(entries)} generators, dim is {n2}", 0)
        if n2 is None:
            for e in entries:
                for _, i, j in e:
                    if max(i, j) > len(entries):
                        self.error(f"index {max(i, j)} out of range 1..{len(entries)}", 0)
        return entries


def _statements(text):
    """Yield (keyword, body, line, column_of_body) for every statement."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        offset = 0
        for chunk in line.split(";"):
            col = offset
            offset += len(chunk) + 1
            stripped = chunk.strip()
            if not stripped:
                continue
            lead = len(chunk) - len(chunk.lstrip())
            m = re.match(r"\S+", stripped)
            kw = m.group()
            rest = stripped[m.end():]
            body = rest.lstrip()
            gap = len(rest) - len(body)
            yield kw, body, lineno, col + lead + 1, col + lead + m.end() + gap + 1


def parse_model(text):
    """Parse model text into ``(LieModel, StructureSpec)``; raises ParseError."""
    seen = {}
    for kw, body, line, col, body_col in _statements(text):
        if kw not in ("dim", "algebra", "structure"):
            raise ParseError(f"unknown statement {kw!r}", line, col)
        if kw in seen:
            raise ParseError(f"duplicate {kw!r} declaration", line, col)
        seen[kw] = (body, line, col, body_col)
    if "dim" not in seen:
        raise ParseError("missing 'dim' declaration")
    body, line, col, bcol = seen["dim"]
    p = _Parser(body, line, bcol)
    n2 = p.integer()
    p.expect_end()
    if n2 <= 0 or n2 % 2:
        raise ParseError(f"dim must be a positive even number, got {n2}", line, bcol)
    if n2 > MAX_DIM:
        raise ParseError(f"dim {n2} exceeds the supported maximum {MAX_DIM}", line, bcol)

    if "algebra" not in seen:
        raise ParseError("missing 'algebra' declaration")
    body, line, col, bcol = seen["algebra"]
    entries = _Parser(body, line, bcol).salamon_tuple(n2)
    model = LieModel(n2, entries)

    if "structure" not in seen:
        raise ParseError("missing 'structure' declaration")
    body, line, col, bcol = seen["structure"]
    spec = _parse_structure(body, line, bcol, n2)
    return model, spec


def _parse_structure(body, line, bcol, n2):
    p = _Parser(body, line, bcol)
    kw_at = p.i
    keyword = p.ident()
    if keyword not in STRUCTURE_KINDS:
        p.error(f"unknown structure kind {keyword!r}", kw_at)
    name = p.ident()
    p.eat("=")
    kind = STRUCTURE_KINDS[keyword]
    start = p.i
    if kind == "complex_endomorphism":
        payload = p.matrix(n2)
    elif kind == "raw_matrix":
        payload = p.matrix(2 * n2)
    else:
        payload = p.form(n2)
        if kind == "symplectic_form" and payload and payload.degrees() != [2]:
            p.error("symplectic form must be a homogeneous 2-form", start)
        if not payload:
            p.error("structure form is zero", start)
    p.expect_end()
    return StructureSpec(kind, payload, name)


def parse_model_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


# ---------------------------------------------------------------------------
# printing


def _format_salamon_entry(terms):
    if not terms:
        return "0"
    out = ""
    for c, i, j in terms:
        if c == 1:
            body, sign = f"{i}{j}", "+"
        elif c == -1:
            body, sign = f"{i}{j}", "-"
        else:
            sign = "-" if c.re < 0 else "+"
            body = f"{abs(c.re)}*{i}{j}"
        if not out:
            out = body if sign == "+" else "-" + body
        else:
            out += sign + body
    return out


def _format_matrix(m):
    return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in m.rows) + "]"


def format_model(model, spec):
    """Canonical text for a model; ``parse_model(format_model(m, s)) == (m, s)``."""
    lines = [f"dim {model.n2}", f"algebra {model.salamon()}"]
    kw = _KEYWORD[spec.kind]
    if spec.kind in ("complex_endomorphism", "raw_matrix"):
        body = _format_matrix(spec.payload)
    else:
        body = str(spec.payload)
    lines.append(f"structure {kw} {spec.name} = {body}")
    return "\n".join(lines) + "\n"
