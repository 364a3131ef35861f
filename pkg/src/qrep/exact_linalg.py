"""Exact dense linear algebra over the rationals and prime fields.

Scalars over Q are ``gmpy2.mpq``; scalars over F_p are Python ints in
``range(p)``.  Matrices are dense and immutable by convention.  Elimination
runs on sparse dict rows internally, which matters for the mostly 0/1
systems that quiver representations produce.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

__all__ = [
    "FieldSpec",
    "QQ",
    "Matrix",
    "rref",
    "kernel_basis",
    "solve",
    "rank",
    "span_basis",
]


def _is_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n))


class FieldSpec:
    """Base field: the rationals (``p is None``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.p == self.p

    def __hash__(self):
        return hash(("FieldSpec", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    @property
    def label(self) -> str:
        return "Q" if self.p is None else f"F {self.p}"

    def __call__(self, x) -> object:
        """Coerce ``x`` (int, Fraction, mpq, or a string like ``"-3/4"``)."""
        if self.p is None:
            if isinstance(x, str):
                return mpq(x.strip())
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (Fraction,)) or type(x).__name__ == "mpq":
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes in GF({self.p})")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return mpq(0) if self.p is None else 0

    @property
    def one(self):
        return mpq(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def power(self, a, n: int):
        return a ** n if self.p is None else pow(a, n, self.p)

    def elements(self):
        """All elements of a prime field (raises for Q)."""
        if self.p is None:
            raise ValueError("Q is infinite")
        return range(self.p)

    def to_json(self, a):
        return str(a) if self.p is None else int(a)


QQ = FieldSpec()


# ----------------------------------------------------------------------------
# sparse row kernels
# ----------------------------------------------------------------------------

def _reduce_into(row: dict, pivots: dict, p):
    """Eliminate every pivot column from ``row`` in place (pivot rows fully reduced)."""
    hits = [c for c in row if c in pivots]
    for c in hits:
        f = row.get(c)
        if not f:
            continue
        for j, v in pivots[c].items():
            nv = row.get(j, 0) - f * v
            if p is not None:
                nv %= p
            if nv:
                row[j] = nv
            else:
                row.pop(j, None)
    return row


class Echelon:
    """Incrementally maintained reduced row echelon basis of a row space.

    Pivot rows are kept fully reduced against each other, so reducing a new
    vector never reintroduces an eliminated pivot column.
    """

    __slots__ = ("field", "pivots", "order")

    def __init__(self, field: FieldSpec):
        self.field = field
        self.pivots: dict[int, dict] = {}
        self.order: list[int] = []

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        return _reduce_into(dict(row), self.pivots, self.field.p)

    def add(self, row: dict) -> bool:
        """Insert ``row``; return True if it enlarged the span."""
        p = self.field.p
        r = _reduce_into(dict(row), self.pivots, p)
        if not r:
            return False
        c = min(r)
        inv = self.field.inv(r[c])
        if inv != 1:
            r = {j: (v * inv if p is None else v * inv % p) for j, v in r.items()}
        for other in self.pivots.values():
            f = other.get(c)
            if f:
                for j, v in r.items():
                    nv = other.get(j, 0) - f * v
                    if p is not None:
                        nv %= p
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
        self.pivots[c] = r
        self.order.append(c)
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def sorted_rows(self):
        return [(c, self.pivots[c]) for c in sorted(self.pivots)]


def _sparse_rows(m: "Matrix"):
    return [{j: v for j, v in enumerate(r) if v} for r in m._rows]


# ----------------------------------------------------------------------------
# Matrix
# ----------------------------------------------------------------------------

class Matrix:
    """Dense matrix over a :class:`FieldSpec`; treat instances as immutable."""

    __slots__ = ("field", "nrows", "ncols", "_rows", "_hash")

    def __init__(self, field: FieldSpec, rows: Sequence[Sequence], ncols: int | None = None, *, _trusted=False):
        self.field = field
        if _trusted:
            self._rows = rows
        else:
            self._rows = [[field(x) for x in r] for r in rows]
        self.nrows = len(self._rows)
        if ncols is None:
            if self.nrows == 0:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(self._rows[0])
        self.ncols = ncols
        if any(len(r) != ncols for r in self._rows):
            raise ValueError("ragged rows")
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols, _trusted=True)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m._rows[i][i] = field.one
        return m

    @classmethod
    def from_columns(cls, field, columns: Sequence[Sequence], nrows: int):
        rows = [[col[i] for col in columns] for i in range(nrows)]
        return cls(field, rows, len(columns), _trusted=True)

    @classmethod
    def from_sparse_rows(cls, field, rows: Iterable[dict], ncols: int):
        z = field.zero
        out = []
        for r in rows:
            dense = [z] * ncols
            for j, v in r.items():
                dense[j] = v
            out.append(dense)
        return cls(field, out, ncols, _trusted=True)

    @classmethod
    def block_diag(cls, field, blocks: Sequence["Matrix"]):
        nr = sum(b.nrows for b in blocks)
        nc = sum(b.ncols for b in blocks)
        m = cls.zeros(field, nr, nc)
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b._rows):
                m._rows[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return m

    # access ---------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i):
        return list(self._rows[i])

    def column(self, j):
        return [r[j] for r in self._rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def tolist(self):
        return [list(r) for r in self._rows]

    def entries(self):
        return tuple(x for r in self._rows for x in r)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self._rows == other._rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, tuple(tuple(r) for r in self._rows)))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"Matrix({self.nrows}x{self.ncols}, [{body}])"

    def is_zero(self):
        return not any(any(r) for r in self._rows)

    # arithmetic -----------------------------------------------------------
    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.field.p
        z = self.field.zero
        orows = other._rows
        nc = other.ncols
        out = []
        for r in self._rows:
            acc = [z] * nc
            for k, a in enumerate(r):
                if a:
                    ok = orows[k]
                    for j in range(nc):
                        b = ok[j]
                        if b:
                            acc[j] += a * b
            if p is not None:
                acc = [x % p for x in acc]
            out.append(acc)
        return Matrix(self.field, out, nc, _trusted=True)

    def apply(self, vec: Sequence) -> list:
        """Matrix times column vector."""
        p = self.field.p
        support = [(j, b) for j, b in enumerate(vec) if b]
        out = []
        for r in self._rows:
            s = self.field.zero
            for j, b in support:
                a = r[j]
                if a:
                    s += a * b
            out.append(s % p if p is not None else s)
        return out

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        p = self.field.p
        rows = []
        for r, s in zip(self._rows, other._rows):
            if p is None:
                rows.append([a + sign * b for a, b in zip(r, s)])
            else:
                rows.append([(a + sign * b) % p for a, b in zip(r, s)])
        return Matrix(self.field, rows, self.ncols, _trusted=True)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(self.field(-1))

    def scale(self, c) -> "Matrix":
        p = self.field.p
        if p is None:
            rows = [[c * a for a in r] for r in self._rows]
        else:
            rows = [[c * a % p for a in r] for r in self._rows]
        return Matrix(self.field, rows, self.ncols, _trusted=True)

    @property
    def T(self) -> "Matrix":
        rows = [list(col) for col in zip(*self._rows)] if self.nrows else []
        if not rows:
            z = self.field.zero
            rows = [[z] * self.nrows for _ in range(self.ncols)] if self.ncols else []
        return Matrix(self.field, rows, self.nrows, _trusted=True)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        rows = [r + s for r, s in zip(self._rows, other._rows)]
        return Matrix(self.field, rows, self.ncols + other.ncols, _trusted=True)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        rows = [list(r) for r in self._rows] + [list(r) for r in other._rows]
        return Matrix(self.field, rows, self.ncols, _trusted=True)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [[self._rows[i][j] for j in cols] for i in rows], len(cols), _trusted=True)

    def select_columns(self, cols: Sequence[int]) -> "Matrix":
        return self.submatrix(range(self.nrows), cols)

    # linear algebra -------------------------------------------------------
    def rref(self):
        return rref(self)

    def rank(self) -> int:
        return rank(self)

    def kernel(self) -> "Matrix":
        return kernel_basis(self)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        x = solve_matrix(self, Matrix.identity(self.field, n))
        if x is None:
            raise ZeroDivisionError("matrix is singular")
        return x

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and rank(self) == self.nrows


# ----------------------------------------------------------------------------
# public operations
# ----------------------------------------------------------------------------

def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the sorted pivot columns."""
    ech = Echelon(m.field)
    for r in _sparse_rows(m):
        if r:
            ech.add(r)
    rows = [r for _, r in ech.sorted_rows()]
    rows += [{} for _ in range(m.nrows - len(rows))]
    return Matrix.from_sparse_rows(m.field, rows, m.ncols), sorted(ech.pivots)


def rank(m: Matrix) -> int:
    ech = Echelon(m.field)
    for r in _sparse_rows(m):
        if r:
            ech.add(r)
    return len(ech)


def _kernel_from_echelon(field, ech: Echelon, ncols: int) -> list[list]:
    one = field.one
    free = [j for j in range(ncols) if j not in ech.pivots]
    vecs = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = one
        for c, row in ech.pivots.items():
            coeff = row.get(f)
            if coeff:
                v[c] = field.neg(coeff)
        vecs.append(v)
    return vecs


def kernel_vectors(field: FieldSpec, rows: Iterable[dict], ncols: int) -> list[list]:
    """Right-kernel basis of the sparse system ``rows`` (one vector per free column)."""
    ech = Echelon(field)
    for r in rows:
        if r:
            ech.add(r)
    return _kernel_from_echelon(field, ech, ncols)


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of {x : m x = 0}."""
    vecs = kernel_vectors(m.field, _sparse_rows(m), m.ncols)
    return Matrix.from_columns(m.field, vecs, m.ncols)


def solve_matrix(m: Matrix, b: Matrix) -> Matrix | None:
    """Some X with m X = b (free variables zero), or None if inconsistent."""
    if m.nrows != b.nrows:
        raise ValueError(f"dimension mismatch: {m.shape} vs rhs {b.shape}")
    n, k = m.ncols, b.ncols
    aug = m.hstack(b)
    ech = Echelon(m.field)
    for r in _sparse_rows(aug):
        if r:
            ech.add(r)
    if any(c >= n for c in ech.pivots):
        return None
    z = m.field.zero
    x = [[z] * k for _ in range(n)]
    for c, row in ech.pivots.items():
        for j, v in row.items():
            if j >= n:
                x[c][j - n] = v
    return Matrix(m.field, x, k, _trusted=True)


def solve(m: Matrix, b: Sequence) -> list | None:
    """Some x with m x = b, free variables set to zero; None if inconsistent."""
    if len(b) != m.nrows:
        raise ValueError(f"dimension mismatch: {m.shape} vs rhs of length {len(b)}")
    field = m.field
    x = solve_matrix(m, Matrix(field, [[v] for v in b], 1) if m.nrows else Matrix.zeros(field, 0, 1))
    return None if x is None else x.column(0)


def span_basis(field: FieldSpec, vectors: Iterable[Sequence], dim: int) -> list[list]:
    """Greedy basis (a subset of ``vectors``, in order) of their span."""
    ech = Echelon(field)
    out = []
    for v in vectors:
        if ech.add({j: x for j, x in enumerate(v) if x}):
            out.append(list(v))
    return out


def left_inverse(m: Matrix) -> Matrix:
    """L with L m = I for a matrix of full column rank."""
    r, pivots = rref(m.T)
    if len(pivots) != m.ncols:
        raise ValueError("matrix does not have full column rank")
    sq = m.submatrix(pivots, range(m.ncols))
    inv = sq.inverse()
    z = m.field.zero
    rows = [[z] * m.nrows for _ in range(m.ncols)]
    for j, pr in enumerate(pivots):
        for i in range(m.ncols):
            rows[i][pr] = inv[i, j]
    return Matrix(m.field, rows, m.nrows, _trusted=True)
