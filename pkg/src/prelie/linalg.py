"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`, which keeps every value in lowest
terms with a positive denominator.  Matrices are small, dense and immutable.
Rank and kernel computations clear denominators row by row and run
fraction-free (Bareiss) elimination over the integers.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import ImageNotInKernel, NonSquare, ParseError, ShapeMismatch, SingularMatrix

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional sign, ``q > 0``) into a Fraction.

    Integers and Fractions are accepted as-is; floats are refused because they
    cannot be represented exactly.
    """
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"not a rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def is_zero_vec(u: Sequence) -> bool:
    return not any(u)


class Mat:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(Fraction(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise ShapeMismatch("cannot infer column count of an empty matrix; pass cols=")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ShapeMismatch(f"ragged matrix: expected {cols} columns, got {len(r)}")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def _trusted(cls, rows: tuple, cols: int) -> "Mat":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", len(rows))
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "_data", rows)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls._trusted(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._trusted(tuple(unit_vec(n, i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Mat":
        for c in columns:
            if len(c) != rows:
                raise ShapeMismatch("column length does not match row count")
        return cls._trusted(
            tuple(tuple(Fraction(c[i]) for c in columns) for i in range(rows)), len(columns)
        )

    @classmethod
    def scalar(cls, n: int, c) -> "Mat":
        c = Fraction(c)
        return cls._trusted(tuple(tuple(c if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def T(self) -> "Mat":
        return Mat._trusted(tuple(self.col(j) for j in range(self.cols)), self.rows)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.columns()
            return Mat._trusted(
                tuple(tuple(sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in ocols) for r in self._data),
                other.cols,
            )
        return self.apply(other)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ShapeMismatch(f"vector of length {len(v)} for matrix {self.shape}")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self._data)

    def _check_same(self, other: "Mat"):
        if self.shape != other.shape:
            raise ShapeMismatch(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        return Mat._trusted(tuple(vadd(a, b) for a, b in zip(self._data, other._data)), self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        return Mat._trusted(tuple(vsub(a, b) for a, b in zip(self._data, other._data)), self.cols)

    def __neg__(self) -> "Mat":
        return Mat._trusted(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def __mul__(self, c) -> "Mat":
        c = Fraction(c)
        return Mat._trusted(tuple(vscale(c, r) for r in self._data), self.cols)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._data)
        return f"Mat({self.rows}x{self.cols}: [{body}])"


def block_matrix(blocks: Sequence[Sequence[Mat | None]], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> Mat:
    """Assemble a matrix from a grid of blocks; ``None`` stands for a zero block."""
    out = []
    for bi, rsize in enumerate(row_sizes):
        for i in range(rsize):
            row: list = []
            for bj, csize in enumerate(col_sizes):
                b = blocks[bi][bj]
                if b is None:
                    row.extend((ZERO,) * csize)
                else:
                    if b.shape != (rsize, csize):
                        raise ShapeMismatch(f"block ({bi},{bj}) has shape {b.shape}, expected {(rsize, csize)}")
                    row.extend(b.row(i))
            out.append(tuple(row))
    return Mat._trusted(tuple(out), sum(col_sizes))


# ---------------------------------------------------------------------------
# fraction-free elimination
# ---------------------------------------------------------------------------

def _integer_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; row space is unchanged."""
    out = []
    for r in rows:
        r = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * den) for x in r])
    return out


def bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix (modified in place).

    Returns the nonzero echelon rows and their pivot columns.  Every division
    performed is exact.
    """
    nrows = len(rows)
    r = 0
    prev = 1
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv_row = rows[r]
        piv = piv_row[c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            a = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = (piv * ri[j] - a * piv_row[j]) // prev
            ri[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _echelon(m: Mat) -> tuple[list[list[int]], list[int]]:
    return bareiss_echelon(_integer_rows(m.row(i) for i in range(m.rows)), m.cols)


def rank(m: Mat) -> int:
    """Exact rank over the rationals."""
    return len(_echelon(m)[1])


def _back_substitute(ech: list[list[int]], pivots: list[int], ncols: int, fixed: dict[int, Fraction]) -> list[Fraction]:
    """Solve the echelon system for the pivot unknowns given values of the others."""
    x = [ZERO] * ncols
    for j, v in fixed.items():
        x[j] = v
    for row, p in zip(reversed(ech), reversed(pivots)):
        s = sum((row[j] * x[j] for j in range(p + 1, ncols) if row[j] and x[j]), ZERO)
        x[p] = -s / row[p]
    return x


def nullspace_basis(m: Mat) -> list[Vector]:
    """Basis of the right kernel, one vector per free column."""
    ech, pivots = _echelon(m)
    piv = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in piv:
            continue
        x = _back_substitute(ech, pivots, m.cols, {f: ONE})
        basis.append(tuple(x))
    return basis


def invert(m: Mat) -> Mat:
    if not m.is_square():
        raise NonSquare(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    aug = _integer_rows(m.row(i) + unit_vec(n, i) for i in range(n))
    ech, pivots = bareiss_echelon(aug, 2 * n)
    # the identity block keeps the rank at n, so A is invertible iff it owns every pivot
    if pivots != list(range(n)):
        raise SingularMatrix("matrix is singular", rank=rank(m))
    cols = []
    a_part = [row[:n] for row in ech]
    for k in range(n):
        rhs = [row[n + k] for row in ech]
        x = [ZERO] * n
        for i in range(n - 1, -1, -1):
            s = sum((a_part[i][j] * x[j] for j in range(i + 1, n) if a_part[i][j]), ZERO)
            x[i] = (rhs[i] - s) / a_part[i][i]
        cols.append(x)
    return Mat.from_columns(cols, n)


def solve(m: Mat, b: Sequence) -> Vector | None:
    """One solution of ``m x = b``, or None if the system is inconsistent."""
    if len(b) != m.rows:
        raise ShapeMismatch("right-hand side length does not match matrix rows")
    aug = _integer_rows(m.row(i) + (Fraction(b[i]),) for i in range(m.rows))
    ech, pivots = bareiss_echelon(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for row, p in zip(reversed(ech), reversed(pivots)):
        s = sum((row[j] * x[j] for j in range(p + 1, m.cols) if row[j] and x[j]), ZERO)
        x[p] = (row[m.cols] - s) / row[p]
    return tuple(x)


def span_rank(vectors: Sequence[Sequence], dim: int) -> int:
    if not vectors:
        return 0
    return len(bareiss_echelon(_integer_rows(vectors), dim)[1])


def in_span(v: Sequence, vectors: Sequence[Sequence], dim: int) -> bool:
    return span_rank(list(vectors) + [v], dim) == span_rank(vectors, dim)


def determinant(m: Mat) -> Fraction:
    if not m.is_square():
        raise NonSquare("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    rows = [list(m.row(i)) for i in range(n)]
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


# ---------------------------------------------------------------------------
# quotients: representatives of kernel / image
# ---------------------------------------------------------------------------

class QuotientBasis:
    """Reduced basis for span(kernel) / span(image).

    ``image_rows`` are the reduced row echelon rows of the image span;
    ``complement`` holds kernel vectors that vanish at every image pivot and
    are mutually reduced, so the coordinates of a kernel element modulo the
    image are read off at the complement pivots.
    """

    def __init__(self, kernel: Sequence[Sequence], image: Sequence[Sequence], dim: int):
        self.dim = dim
        kernel = [vec(v) for v in kernel]
        image = [vec(v) for v in image]
        for v in list(kernel) + list(image):
            if len(v) != dim:
                raise ShapeMismatch(f"vector of length {len(v)} in a space of dimension {dim}")
        if image and span_rank(kernel + image, dim) != span_rank(kernel, dim):
            raise ImageNotInKernel("image vector outside the kernel span")
        self.image_rows, self.image_pivots = _rref(image, dim)
        self.complement: list[list[Fraction]] = []
        self.complement_pivots: list[int] = []
        for k in kernel:
            r = self._reduce(list(k))
            p = next((j for j, x in enumerate(r) if x), None)
            if p is None:
                continue
            r = [x / r[p] for x in r]
            for c in self.complement:
                f = c[p]
                if f:
                    for j in range(dim):
                        c[j] -= f * r[j]
            self.complement.append(r)
            self.complement_pivots.append(p)

    def _reduce_image(self, v: list) -> list:
        for row, p in zip(self.image_rows, self.image_pivots):
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def _reduce(self, v: list) -> list:
        v = self._reduce_image(v)
        for row, p in zip(self.complement, self.complement_pivots):
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    @property
    def representatives(self) -> list[Vector]:
        return [tuple(c) for c in self.complement]

    def class_coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` (assumed in the kernel span) in the complement basis."""
        r = self._reduce_image([Fraction(x) for x in v])
        return tuple(r[p] for p in self.complement_pivots)


def _rref(vectors: Sequence[Sequence], dim: int) -> tuple[list[list[Fraction]], list[int]]:
    rows: list[list[Fraction]] = []
    pivots: list[int] = []
    for v in vectors:
        r = list(v)
        for row, p in zip(rows, pivots):
            f = r[p]
            if f:
                r = [a - f * b for a, b in zip(r, row)]
        p = next((j for j, x in enumerate(r) if x), None)
        if p is None:
            continue
        r = [x / r[p] for x in r]
        for row in rows:
            f = row[p]
            if f:
                for j in range(dim):
                    row[j] -= f * r[j]
        rows.append(r)
        pivots.append(p)
    return rows, pivots


def quotient_complement(kernel: Sequence[Sequence], image: Sequence[Sequence], dim: int | None = None) -> list[Vector]:
    """Vectors extending a basis of span(image) to a basis of span(kernel)."""
    if dim is None:
        sample = list(kernel) + list(image)
        if not sample:
            return []
        dim = len(sample[0])
    return QuotientBasis(kernel, image, dim).representatives
