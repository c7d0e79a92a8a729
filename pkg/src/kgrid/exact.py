"""Exact arithmetic over the Gaussian rationals Q(i): scalars, dense matrices,
rank, Kronecker products and direct sums.

Everything here is exact; no floating point is ever involved.  Matrices are
immutable value types, so they can be shared freely and used as dict keys.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union


class ShapeError(ValueError):
    """Matrix shapes do not line up for the requested operation."""


class ParseError(ValueError):
    """Input text failed to parse; .position is the 0-based character index."""

    def __init__(self, position: int, message: str) -> None:
        self.position = position
        super().__init__(f"parse error at position {position}: {message}")


RationalLike = Union[int, Fraction]


def _frac(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, slots=True)
class Scalar:
    """A Gaussian rational re + im*i with exact rational parts."""

    re: Fraction
    im: Fraction

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0) -> None:
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: "Scalar") -> "Scalar":
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "Scalar") -> "Scalar":
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __str__(self) -> str:
        if not self.im:
            return _frac_str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{_frac_str(self.re)}{sign}{_frac_str(abs(self.im))}*i"

    def __repr__(self) -> str:
        return f"Scalar({self})"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
HALF = Scalar(Fraction(1, 2))


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


_SCALAR_FULL = re.compile(r"^([+-]?\d+(?:/\d+)?)(?:([+-]\d+(?:/\d+)?)\*i)?$")
_SCALAR_IMAG = re.compile(r"^([+-]?\d+(?:/\d+)?)\*i$")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"a/b"`` or ``"a/b+c/d*i"`` (signs optional, whitespace ignored)."""
    stripped = "".join(text.split())
    try:
        m = _SCALAR_IMAG.match(stripped)
        if m:
            return Scalar(0, Fraction(m.group(1)))
        m = _SCALAR_FULL.match(stripped)
        if m is None:
            raise ValueError(f"not a scalar literal: {text!r}")
        im = Fraction(m.group(2)) if m.group(2) else Fraction(0)
        return Scalar(Fraction(m.group(1)), im)
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in scalar literal {text!r}") from exc


EntryLike = Union[int, Fraction, Scalar]


def _scalar(x: EntryLike) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar(x)


@dataclass(frozen=True, slots=True)
class Matrix:
    """Dense rows x cols matrix of Scalars, stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ShapeError(f"degenerate shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    def __getitem__(self, ij: tuple) -> Scalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, s: EntryLike) -> "Matrix":
        s = _scalar(s)
        return Matrix(self.rows, self.cols, tuple(s * a for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self.entries[j * self.cols + i]
                            for i in range(self.cols) for j in range(self.rows)))

    def conj(self) -> "Matrix":
        return Matrix(self.rows, self.cols,
                      tuple(a.conjugate() for a in self.entries))

    def dagger(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self.entries[j * self.cols + i].conjugate()
                            for i in range(self.cols) for j in range(self.rows)))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.entries)

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(str(self[i, j]) for j in range(self.cols))
            for i in range(self.rows)
        )
        return f"Matrix[{body}]"


def mat(rows: Sequence[Sequence[EntryLike]]) -> Matrix:
    """Build a Matrix from nested sequences of ints, Fractions or Scalars."""
    if not rows or not rows[0]:
        raise ShapeError("mat() needs at least one row and one column")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ShapeError("ragged rows")
    return Matrix(len(rows), ncols,
                  tuple(_scalar(x) for r in rows for x in r))


def zeros(rows: int, cols: int) -> Matrix:
    return Matrix(rows, cols, (ZERO,) * (rows * cols))


def identity(n: int) -> Matrix:
    return Matrix(n, n, tuple(ONE if i == j else ZERO
                              for i in range(n) for j in range(n)))


def matrix_unit(rows: int, cols: int, i: int, j: int) -> Matrix:
    """E_{i,j} with a single 1 at 0-based position (i, j)."""
    ent = [ZERO] * (rows * cols)
    ent[i * cols + j] = ONE
    return Matrix(rows, cols, tuple(ent))


# Pauli convention fixed once for the whole package:
SIGMA1 = mat([[0, 1], [1, 0]])
SIGMA2 = mat([[0, Scalar(0, -1)], [Scalar(0, 1), 0]])
SIGMA3 = mat([[1, 0], [0, -1]])


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact matrix product."""
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    n, m, p = a.rows, a.cols, b.cols
    out = [ZERO] * (n * p)
    ae, be = a.entries, b.entries
    for i in range(n):
        arow = i * m
        obase = i * p
        for k in range(m):
            aik = ae[arow + k]
            if aik.is_zero():
                continue
            bbase = k * p
            for j in range(p):
                bkj = be[bbase + j]
                if not bkj.is_zero():
                    out[obase + j] = out[obase + j] + aik * bkj
    return Matrix(n, p, tuple(out))


def dagger(a: Matrix) -> Matrix:
    """Conjugate transpose."""
    return a.dagger()


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product with block layout a[i,j]*b."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = [ZERO] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            aij = a[i, j]
            if aij.is_zero():
                continue
            for k in range(b.rows):
                rbase = (i * b.rows + k) * cols + j * b.cols
                bbase = k * b.cols
                for l in range(b.cols):
                    bkl = b.entries[bbase + l]
                    if not bkl.is_zero():
                        out[rbase + l] = aij * bkl
    return Matrix(rows, cols, tuple(out))


def kron_all(ms: Sequence[Matrix]) -> Matrix:
    """Fold kron over a nonempty list; a single factor is returned as-is."""
    if not ms:
        raise ShapeError("kron_all() of no factors")
    acc = ms[0]
    for m in ms[1:]:
        acc = kron(acc, m)
    return acc


def direct_sum(a: Matrix, b: Matrix) -> Matrix:
    rows, cols = a.rows + b.rows, a.cols + b.cols
    out = [ZERO] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            out[i * cols + j] = a[i, j]
    for i in range(b.rows):
        for j in range(b.cols):
            out[(a.rows + i) * cols + (a.cols + j)] = b[i, j]
    return Matrix(rows, cols, tuple(out))


def rank(a: Matrix) -> int:
    """Exact rank, computed by fraction-free elimination.

    Rows are first scaled to clear denominators, then a Bareiss-style sweep
    runs over the Gaussian integers; every division below is exact by the
    Sylvester minor identity, which keeps coefficient growth polynomial.
    """
    nrows, ncols = a.rows, a.cols
    m: list = []
    for i in range(nrows):
        row = a.entries[i * ncols:(i + 1) * ncols]
        den = 1
        for s in row:
            den = math.lcm(den, s.re.denominator, s.im.denominator)
        m.append([(int(s.re * den), int(s.im * den)) for s in row])
    r = 0
    prev_re, prev_im = 1, 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c] != (0, 0):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr, pi = m[r][c]
        pden = prev_re * prev_re + prev_im * prev_im
        trivial_prev = prev_re == 1 and prev_im == 0
        rowr = m[r]
        for i in range(r + 1, nrows):
            rowi = m[i]
            xr, xi = rowi[c]
            for j in range(c + 1, ncols):
                ar, ai = rowi[j]
                br, bi = rowr[j]
                nr = pr * ar - pi * ai - (xr * br - xi * bi)
                ni = pr * ai + pi * ar - (xr * bi + xi * br)
                if trivial_prev:
                    rowi[j] = (nr, ni)
                else:
                    rowi[j] = ((nr * prev_re + ni * prev_im) // pden,
                               (ni * prev_re - nr * prev_im) // pden)
            rowi[c] = (0, 0)
        prev_re, prev_im = pr, pi
        r += 1
        if r == nrows:
            break
    return r


def span_dim(ms: Sequence[Matrix]) -> int:
    """Dimension of the complex linear span of same-shaped matrices."""
    if not ms:
        return 0
    shape = ms[0].shape
    for m in ms:
        if m.shape != shape:
            raise ShapeError(f"span over mixed shapes: {shape} vs {m.shape}")
    stacked = Matrix(len(ms), shape[0] * shape[1],
                     tuple(e for m in ms for e in m.entries))
    return rank(stacked)


def span_coords(ms: Sequence[Matrix], target: Matrix) -> Optional[list]:
    """Coefficients c with sum(c_j * ms[j]) == target, or None if unsolvable.

    Free coordinates are returned as 0; any one solution is acceptable to the
    callers (span membership tests and basis pullbacks).
    """
    k = len(ms)
    if k == 0:
        return [] if target.is_zero() else None
    for m in ms:
        if m.shape != target.shape:
            raise ShapeError(f"span over mixed shapes: {m.shape} vs {target.shape}")
    n = target.rows * target.cols
    a = [[m.entries[idx] for m in ms] for idx in range(n)]
    b = [target.entries[idx] for idx in range(n)]
    pivots: list = []
    r = 0
    for col in range(k):
        p = None
        for i in range(r, n):
            if not a[i][col].is_zero():
                p = i
                break
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        b[r], b[p] = b[p], b[r]
        pivval = a[r][col]
        for i in range(r + 1, n):
            if a[i][col].is_zero():
                continue
            f = a[i][col] / pivval
            rowi, rowr = a[i], a[r]
            for j in range(col, k):
                rowi[j] = rowi[j] - f * rowr[j]
            b[i] = b[i] - f * b[r]
        pivots.append((r, col))
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if not b[i].is_zero():
            return None
    coeffs = [ZERO] * k
    for row, col in reversed(pivots):
        s = b[row]
        arow = a[row]
        for j in range(col + 1, k):
            if not arow[j].is_zero():
                s = s - arow[j] * coeffs[j]
        coeffs[col] = s / arow[col]
    return coeffs


def in_span(ms: Sequence[Matrix], target: Matrix) -> bool:
    return span_coords(ms, target) is not None


def matrix_to_strings(m: Matrix) -> list:
    """Serialize to the JSON wire form: rows of scalar literals."""
    return [[str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def matrix_from_strings(rows: Sequence[Sequence[str]]) -> Matrix:
    if not rows or not rows[0]:
        raise ShapeError("matrix literal needs at least one row and column")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ShapeError("ragged matrix literal")
    return Matrix(len(rows), ncols,
                  tuple(parse_scalar(x) for r in rows for x in r))
