"""Exact linear algebra over Q and Q(sqrt2).

Everything in this module is integer/fraction arithmetic: no floats are
created or trusted anywhere.  The two matrix types are dense, row-major and
immutable.  Orthogonality is decided by computing the Gram matrix A^T A
exactly and comparing it with the identity; determinants are computed with
fraction-free (Bareiss) elimination.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence, Union

# Canonical exact scalar: Fraction already enforces denominator > 0,
# gcd(|num|, den) = 1 and 0 == 0/1.
Rational = Fraction


class ParseError(ValueError):
    """Malformed matrix/pattern input, with a best-effort source location."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "")
            message = f"{message} ({where})"
        super().__init__(message)


def sgn(x) -> int:
    """Sign of an exact number: -1, 0 or +1."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@dataclass(frozen=True)
class QuadRational:
    """Element a + b*sqrt(2) of the real quadratic field Q(sqrt2).

    Equality is component-wise, which is exact because sqrt(2) is irrational:
    a + b*sqrt(2) = 0 iff a = b = 0.
    """

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def from_rational(cls, x) -> "QuadRational":
        return cls(Fraction(x), Fraction(0))

    @staticmethod
    def _coerce(x) -> "QuadRational":
        if isinstance(x, QuadRational):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadRational(Fraction(x), Fraction(0))
        raise TypeError(f"cannot coerce {type(x).__name__} into Q(sqrt2)")

    def __add__(self, other):
        o = self._coerce(other)
        return QuadRational(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return QuadRational(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadRational(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        # (a+b*sqrt2)/(c+d*sqrt2) = (a+b*sqrt2)(c-d*sqrt2)/(c^2-2d^2); the
        # norm c^2-2d^2 vanishes only at c = d = 0.
        norm = o.a * o.a - 2 * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        num = self * QuadRational(o.a, -o.b)
        return QuadRational(num.a / norm, num.b / norm)

    def __neg__(self):
        return QuadRational(-self.a, -self.b)

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QuadRational)):
            o = self._coerce(other)
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt(2)."""
        sa, sb = sgn(self.a), sgn(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with 2b^2 (equality would force a=b=0)
        return sa * sgn(self.a * self.a - 2 * self.b * self.b)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 1.4142135623730951

    def __repr__(self):
        return f"QuadRational({self.a!r}, {self.b!r})"

    def __str__(self):
        return format_entry(self)


_QUAD_ZERO = QuadRational(Fraction(0), Fraction(0))
_QUAD_ONE = QuadRational(Fraction(1), Fraction(0))


def _check_shape(rows: int, cols: int, n_entries: int):
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix shape {rows}x{cols} must be at least 1x1")
    if n_entries != rows * cols:
        raise ValueError(f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {n_entries}")


@dataclass(frozen=True)
class RatMatrix:
    """Dense matrix over Q, row-major entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        _check_shape(self.rows, self.cols, len(self.entries))
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        data = [Fraction(e) for r in rows for e in r]
        return cls(len(rows), len(rows[0]), tuple(data))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n)))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix(self.rows, self.cols, tuple(c * e for e in self.entries))

    def to_quad(self) -> "QuadMatrix":
        return QuadMatrix(self.rows, self.cols, tuple(QuadRational.from_rational(e) for e in self.entries))

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __str__(self):
        return _format_grid(self)


@dataclass(frozen=True)
class QuadMatrix:
    """Dense matrix over Q(sqrt2), row-major entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        _check_shape(self.rows, self.cols, len(self.entries))
        object.__setattr__(self, "entries", tuple(QuadRational._coerce(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QuadMatrix":
        data = [QuadRational._coerce(e) for r in rows for e in r]
        return cls(len(rows), len(rows[0]), tuple(data))

    @classmethod
    def identity(cls, n: int) -> "QuadMatrix":
        return cls(n, n, tuple(_QUAD_ONE if i == j else _QUAD_ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, ij) -> QuadRational:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "QuadMatrix":
        return QuadMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def scale(self, c) -> "QuadMatrix":
        c = QuadRational._coerce(c)
        return QuadMatrix(self.rows, self.cols, tuple(c * e for e in self.entries))

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __str__(self):
        return _format_grid(self)


ExactMatrix = Union[RatMatrix, QuadMatrix]


def mat_mul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Exact matrix product; both operands must live in the same scalar domain."""
    if type(A) is not type(B):
        raise ValueError("matrix product requires both operands over the same scalar domain; convert explicitly with to_quad()")
    if A.cols != B.rows:
        raise ValueError(f"shape mismatch: {A.rows}x{A.cols} @ {B.rows}x{B.cols}")
    n, m, k = A.rows, B.cols, A.cols
    brows = [B.row(i) for i in range(k)]
    out = []
    for i in range(n):
        arow = A.row(i)
        for j in range(m):
            acc = arow[0] * brows[0][j]
            for t in range(1, k):
                acc += arow[t] * brows[t][j]
            out.append(acc)
    return type(A)(n, m, tuple(out))


def _det_bareiss_int(a: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (entries are consumed)."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity: prev divides the 2x2 minor
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def _det_bareiss_field(a: list[list], zero, one):
    """Bareiss elimination over an exact field (used for Q(sqrt2))."""
    n = len(a)
    sign = 1
    prev = one
    for k in range(n - 1):
        if a[k][k] == zero:
            for i in range(k + 1, n):
                if a[i][k] != zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) / prev
        prev = pivot
    return a[n - 1][n - 1] if sign == 1 else -a[n - 1][n - 1]


def det(A: ExactMatrix):
    """Exact determinant of a square matrix (Fraction or QuadRational)."""
    if A.rows != A.cols:
        raise ValueError(f"determinant requires a square matrix, got {A.rows}x{A.cols}")
    n = A.rows
    if isinstance(A, RatMatrix):
        # clear denominators row by row, eliminate in plain integers, divide back
        scale = 1
        cleared = []
        for i in range(n):
            row = A.row(i)
            m = lcm(*(e.denominator for e in row))
            scale *= m
            cleared.append([int(e * m) for e in row])
        d = _det_bareiss_int(cleared)
        return Fraction(d, scale)
    work = [list(A.row(i)) for i in range(n)]
    return _det_bareiss_field(work, _QUAD_ZERO, _QUAD_ONE)


def det_sign(A: ExactMatrix) -> int:
    """Sign of the exact determinant: -1, 0 or +1."""
    d = det(A)
    return d.sign() if isinstance(d, QuadRational) else sgn(d)


def is_orthogonal(A: ExactMatrix) -> bool:
    """True iff A^T A equals the identity exactly."""
    if A.rows != A.cols:
        raise ValueError(f"orthogonality requires a square matrix, got {A.rows}x{A.cols}")
    gram = mat_mul(A.transpose(), A)
    ident = type(A).identity(A.rows)
    return gram.entries == ident.entries


# ---------------------------------------------------------------------------
# Exact matrix file format: JSON {"rows": n, "cols": m, "entries": [[str]]}
# where each string is "p", "p/q", "r/s*sqrt2" or "p/q+r/s*sqrt2".

_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD_HEAD_RE = re.compile(rf"(?:(?P<a>{_RAT})(?=[+-]))?(?P<b>[+-]?(?:\d+(?:/\d+)?)?)")


def _parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rational {s!r}: {e}") from None


def parse_entry(s: str):
    """Parse one exact entry string into a Fraction or QuadRational."""
    text = s.strip().replace(" ", "")
    if not text:
        raise ParseError("empty matrix entry")
    if "sqrt2" not in text:
        return _parse_rational(text)
    if text.count("sqrt2") != 1 or not text.endswith("sqrt2"):
        raise ParseError(f"bad entry {s!r}")
    head = text[: -len("sqrt2")]
    if head.endswith("*"):
        head = head[:-1]
    m = _QUAD_HEAD_RE.fullmatch(head)
    if m is None:
        raise ParseError(f"bad entry {s!r}")
    a = m.group("a") or "0"
    b = m.group("b")
    if b in ("", "+"):
        b = "1"
    elif b == "-":
        b = "-1"
    return QuadRational(_parse_rational(a), _parse_rational(b))


def format_entry(x) -> str:
    """Render an exact scalar in the entry grammar accepted by parse_entry."""
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if x.b == 0:
        return str(x.a)
    coeff = f"{x.b}*sqrt2"
    if x.a == 0:
        return coeff
    return f"{x.a}+{coeff}" if x.b > 0 else f"{x.a}-{-x.b}*sqrt2"


def parse_matrix_json(text: str) -> ExactMatrix:
    """Parse the exact matrix JSON format; returns RatMatrix or QuadMatrix."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno, col=e.colno) from None
    if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= set(obj):
        raise ParseError('exact matrix JSON must be an object with "rows", "cols" and "entries"')
    rows, cols, grid = obj["rows"], obj["cols"], obj["entries"]
    if not (isinstance(rows, int) and isinstance(cols, int)):
        raise ParseError('"rows" and "cols" must be integers')
    if not isinstance(grid, list) or len(grid) != rows:
        raise ParseError(f'"entries" must be a list of {rows} rows')
    parsed = []
    quad = False
    for i, r in enumerate(grid):
        if not isinstance(r, list) or len(r) != cols:
            raise ParseError(f"row {i + 1} must be a list of {cols} entry strings", line=i + 1)
        for j, s in enumerate(r):
            if not isinstance(s, str):
                raise ParseError(f"entry must be a string, got {type(s).__name__}", line=i + 1, col=j + 1)
            try:
                v = parse_entry(s)
            except ParseError as e:
                raise ParseError(str(e), line=i + 1, col=j + 1) from None
            quad = quad or isinstance(v, QuadRational)
            parsed.append(v)
    if quad:
        return QuadMatrix(rows, cols, tuple(QuadRational._coerce(v) for v in parsed))
    return RatMatrix(rows, cols, tuple(parsed))


def matrix_to_jsonable(M: ExactMatrix) -> dict:
    grid = [[format_entry(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]
    return {"rows": M.rows, "cols": M.cols, "entries": grid}


def matrix_to_json(M: ExactMatrix) -> str:
    """Serialize an exact matrix to the JSON file format."""
    return json.dumps(matrix_to_jsonable(M), indent=1)


def _format_grid(M: ExactMatrix) -> str:
    cells = [[format_entry(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]
    width = [max(len(cells[i][j]) for i in range(M.rows)) for j in range(M.cols)]
    return "\n".join("[" + "  ".join(c.rjust(width[j]) for j, c in enumerate(r)) + "]" for r in cells)
