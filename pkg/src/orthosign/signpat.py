"""Sign patterns and their combinatorics.

A sign pattern is the entrywise-sign matrix of a real matrix, with entries in
{-1, 0, +1}.  A pattern "allows orthogonality" when some orthogonal matrix has
exactly that pattern.  This module provides pattern extraction, the cheap
combinatorial necessary condition (no pair of rows/columns may have a
sign-forced nonzero dot product, no zero line), the one-parameter family with
-1 on diagonal positions 2..n, and the symmetry group of the problem
(row/column signed permutations plus transposition).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .exact import ParseError, QuadMatrix, RatMatrix, sgn

_CHAR_OF_SIGN = {1: "+", -1: "-", 0: "0"}
_SIGN_OF_CHAR = {"+": 1, "-": -1, "0": 0}


class UnsupportedOrderError(ValueError):
    """Raised when a brute-force operation is asked for an order it cannot do."""


@dataclass(frozen=True)
class SignPattern:
    """Square matrix of signs, row-major entries in {-1, 0, +1}."""

    n: int
    entries: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("pattern order must be at least 1")
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if len(self.entries) != self.n * self.n:
            raise ValueError(f"expected {self.n * self.n} entries, got {len(self.entries)}")
        if any(e not in (-1, 0, 1) for e in self.entries):
            raise ValueError("pattern entries must be -1, 0 or +1")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "SignPattern":
        rows = [tuple(r) for r in rows]
        return cls(len(rows), tuple(e for r in rows for e in r))

    @classmethod
    def from_text(cls, text: str) -> "SignPattern":
        """Parse the character-grid format: one row per line, entries +, - or 0."""
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines:
            raise ParseError("empty pattern")
        n = len(lines)
        entries = []
        for i, ln in enumerate(lines):
            if len(ln) != n:
                raise ParseError(f"pattern must be square: row has {len(ln)} entries, expected {n}", line=i + 1)
            for j, ch in enumerate(ln):
                if ch not in _SIGN_OF_CHAR:
                    raise ParseError(f"bad pattern character {ch!r}", line=i + 1, col=j + 1)
                entries.append(_SIGN_OF_CHAR[ch])
        return cls(n, tuple(entries))

    def to_text(self) -> str:
        return "\n".join(
            "".join(_CHAR_OF_SIGN[self.entries[i * self.n + j]] for j in range(self.n)) for i in range(self.n)
        )

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i * self.n + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.n : (i + 1) * self.n]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.n + j] for i in range(self.n))

    def transpose(self) -> "SignPattern":
        return SignPattern(self.n, tuple(self[i, j] for j in range(self.n) for i in range(self.n)))

    def __str__(self):
        return self.to_text()


def sign_pattern_of(M, zero_tol: float = 0.0) -> SignPattern:
    """Entrywise sign pattern of an exact or float square matrix.

    Exact matrices demand zero_tol == 0.  For float matrices, entries with
    |x| <= zero_tol count as zero.
    """
    if isinstance(M, (RatMatrix, QuadMatrix)):
        if zero_tol != 0:
            raise ValueError("zero_tol must be 0 for exact matrices")
        if M.rows != M.cols:
            raise ValueError("sign pattern is defined for square matrices")
        if isinstance(M, QuadMatrix):
            return SignPattern(M.rows, tuple(e.sign() for e in M.entries))
        return SignPattern(M.rows, tuple(sgn(e) for e in M.entries))
    if zero_tol < 0:
        raise ValueError("zero_tol must be nonnegative")
    n, m = M.shape
    if n != m:
        raise ValueError("sign pattern is defined for square matrices")
    ent = []
    for i in range(n):
        for j in range(m):
            x = float(M[i, j])
            ent.append(0 if abs(x) <= zero_tol else (1 if x > 0 else -1))
    return SignPattern(n, tuple(ent))


def pair_compatible(u, v) -> bool:
    """Can two sign vectors belong to vectors with a zero dot product?

    True iff the entrywise products hit both +1 and -1, or are all 0; anything
    else forces the dot product of every pair of real vectors with those signs
    to one strict sign.
    """
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        raise ValueError(f"sign vectors of different lengths: {len(u)} vs {len(v)}")
    prods = {a * b for a, b in zip(u, v)}
    if 1 in prods and -1 in prods:
        return True
    return prods <= {0}


class Incompatibility(NamedTuple):
    """One failed check: a pair (i < j) of rows/columns, or a zero line (i == j)."""

    axis: str  # "row" or "col"
    i: int
    j: int


@dataclass(frozen=True)
class NecessaryCheckReport:
    passed: bool
    failures: tuple

    def to_json_dict(self) -> dict:
        return {
            "pass": self.passed,
            "failures": [{"axis": f.axis, "i": f.i, "j": f.j} for f in self.failures],
        }


def necessary_check(S: SignPattern) -> NecessaryCheckReport:
    """Cheap obstructions to allowing orthogonality.

    Failure is conclusive (the pattern cannot be orthogonal); passing is only
    necessary, never sufficient.  All failing pairs are reported, plus any
    all-zero row/column as (axis, i, i).
    """
    failures = []
    for axis, line in (("row", S.row), ("col", S.col)):
        for i in range(S.n):
            if all(e == 0 for e in line(i)):
                failures.append(Incompatibility(axis, i, i))
        for i, j in itertools.combinations(range(S.n), 2):
            if not pair_compatible(line(i), line(j)):
                failures.append(Incompatibility(axis, i, j))
    return NecessaryCheckReport(not failures, tuple(failures))


def waters_pattern(n: int) -> SignPattern:
    """All-plus pattern with -1 on diagonal positions 2..n.

    Every orthogonal matrix with this pattern has determinant (-1)**(n-1);
    see waters_forced_sign.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    return SignPattern(n, tuple(-1 if (i == j and i > 0) else 1 for i in range(n) for j in range(n)))


def waters_forced_sign(n: int) -> int:
    """Determinant sign forced on every orthogonal matrix in waters_pattern(n)."""
    return (-1) ** (n - 1)


def perm_sign(perm) -> int:
    """Parity of a permutation given as a tuple of images of 0..n-1."""
    n = len(perm)
    seen = [False] * n
    sign = 1
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        i = s
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class GroupElement:
    """Symmetry of the allows-orthogonality property.

    Acts on an n x n matrix by optional transposition, then row/column
    permutation, then row/column negations:

        (g.M)[i][j] = row_signs[i] * col_signs[j] * M'[row_perm[i]][col_perm[j]]

    with M' = M or M^T.  The action preserves orthogonality and multiplies the
    determinant by det_sign_factor().
    """

    row_signs: tuple
    col_signs: tuple
    row_perm: tuple
    col_perm: tuple
    transpose_flag: bool = False

    def __post_init__(self):
        n = len(self.row_signs)
        for signs in (self.row_signs, self.col_signs):
            if len(signs) != n or any(s not in (-1, 1) for s in signs):
                raise ValueError("row/col signs must be +-1 sequences of equal length")
        for perm in (self.row_perm, self.col_perm):
            if sorted(perm) != list(range(n)):
                raise ValueError(f"not a permutation of 0..{n - 1}: {perm}")

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        one = (1,) * n
        idp = tuple(range(n))
        return cls(one, one, idp, idp, False)

    @property
    def n(self) -> int:
        return len(self.row_signs)

    def det_sign_factor(self) -> int:
        f = perm_sign(self.row_perm) * perm_sign(self.col_perm)
        for s in self.row_signs:
            f *= s
        for s in self.col_signs:
            f *= s
        return f


def random_group_element(rng, n: int) -> GroupElement:
    """Uniform-ish random symmetry, from a random.Random instance."""
    return GroupElement(
        tuple(rng.choice((-1, 1)) for _ in range(n)),
        tuple(rng.choice((-1, 1)) for _ in range(n)),
        tuple(rng.sample(range(n), n)),
        tuple(rng.sample(range(n), n)),
        bool(rng.getrandbits(1)),
    )


def act(g: GroupElement, X):
    """Apply a symmetry to a SignPattern, an exact matrix or a float matrix."""
    if isinstance(X, SignPattern):
        n = X.n
    elif isinstance(X, (RatMatrix, QuadMatrix)):
        if X.rows != X.cols:
            raise ValueError("group acts on square matrices only")
        n = X.rows
    else:
        n, m = X.shape
        if n != m:
            raise ValueError("group acts on square matrices only")
    if g.n != n:
        raise ValueError(f"group element of order {g.n} cannot act on order {n}")

    def src(i, j):
        return (j, i) if g.transpose_flag else (i, j)

    if isinstance(X, SignPattern):
        ent = tuple(
            g.row_signs[i] * g.col_signs[j] * X[src(g.row_perm[i], g.col_perm[j])]
            for i in range(n)
            for j in range(n)
        )
        return SignPattern(n, ent)
    if isinstance(X, (RatMatrix, QuadMatrix)):
        ent = tuple(
            X[src(g.row_perm[i], g.col_perm[j])] * (g.row_signs[i] * g.col_signs[j])
            for i in range(n)
            for j in range(n)
        )
        return type(X)(n, n, ent)
    import numpy as np

    out = np.empty((n, n), dtype=float)
    for i in range(n):
        for j in range(n):
            out[i, j] = g.row_signs[i] * g.col_signs[j] * X[src(g.row_perm[i], g.col_perm[j])]
    return out


_CANONICAL_MAX_ORDER = 4


def canonical_form(S: SignPattern) -> SignPattern:
    """Lexicographically minimal pattern in the symmetry orbit of S.

    Flattened row-major entries are compared with -1 < 0 < +1.  Brute force
    over transposition and all signed column permutations, with the optimal
    row arrangement computed greedily (per-row sign minimization, then row
    sort); only supported up to order 4.
    """
    if S.n > _CANONICAL_MAX_ORDER:
        raise UnsupportedOrderError(f"canonical_form supports order <= {_CANONICAL_MAX_ORDER}, got {S.n}")
    n = S.n
    best = None
    for T in (S, S.transpose()):
        rows = [T.row(i) for i in range(n)]
        for cperm in itertools.permutations(range(n)):
            permuted = [tuple(r[c] for c in cperm) for r in rows]
            for csigns in itertools.product((1, -1), repeat=n):
                forms = []
                for r in permuted:
                    v = tuple(s * e for s, e in zip(csigns, r))
                    w = tuple(-e for e in v)
                    forms.append(v if v <= w else w)
                forms.sort()
                flat = tuple(e for r in forms for e in r)
                if best is None or flat < best:
                    best = flat
    return SignPattern(n, best)


def orbit_of(S: SignPattern) -> frozenset:
    """Entire symmetry orbit of S, grown by closure under group generators."""
    if S.n > _CANONICAL_MAX_ORDER:
        raise UnsupportedOrderError(f"orbit enumeration supports order <= {_CANONICAL_MAX_ORDER}, got {S.n}")
    n = S.n

    def swap_rows(p, i):
        rows = [list(p.row(k)) for k in range(n)]
        rows[i], rows[i + 1] = rows[i + 1], rows[i]
        return SignPattern.from_rows(rows)

    def neg_row0(p):
        return SignPattern(n, tuple(-e if i < n else e for i, e in enumerate(p.entries)))

    generators = [lambda p: p.transpose(), neg_row0, lambda p: neg_row0(p.transpose()).transpose()]
    for i in range(n - 1):
        generators.append(lambda p, i=i: swap_rows(p, i))
        generators.append(lambda p, i=i: swap_rows(p.transpose(), i).transpose())

    seen = {S}
    frontier = [S]
    while frontier:
        nxt = []
        for p in frontier:
            for gen in generators:
                q = gen(p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return frozenset(seen)
