"""Exact dense linear algebra over a prime field F_p or the rationals.

Matrices are small (desk scale, at most a few hundred rows), stored densely
as numpy arrays: int64 residues for F_p, Fraction objects for Q.  No
floating point anywhere.  Pivoting is deterministic (first nonzero entry in
column order), so every basis produced here is reproducible across runs.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


class FieldMismatchError(ValueError):
    """Operands live over different fields."""


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The field F_p, elements represented by residues in {0, ..., p-1}."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def coerce(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def elements(self):
        return range(self.p)

    def rand(self, rng):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F{self.p}"


class RationalField:
    """The rationals, elements represented by Fraction in lowest terms."""

    char = 0

    def coerce(self, x):
        return Fraction(x)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def rand(self, rng):
        return Fraction(rng.randrange(-4, 5))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


QQ = RationalField()


def GF(p):
    return PrimeField(p)


class Mat:
    """An immutable rows x cols matrix over a fixed field.

    The backing array is int64 (entries reduced mod p) for a prime field
    and object/Fraction for the rationals; it is marked read-only.
    """

    __slots__ = ("field", "rows", "cols", "a")

    def __init__(self, field, array):
        self.field = field
        a = np.asarray(array)
        if a.ndim != 2:
            raise ValueError(f"expected a 2d array, got shape {a.shape}")
        if isinstance(field, PrimeField):
            a = np.asarray(a, dtype=np.int64) % field.p
        elif a.dtype != object:
            out = np.empty(a.shape, dtype=object)
            for i in range(a.shape[0]):
                for j in range(a.shape[1]):
                    out[i, j] = Fraction(a[i, j])
            a = out
        else:
            a = a.copy()
        a.setflags(write=False)
        self.rows, self.cols = a.shape
        self.a = a

    # ---- constructors -------------------------------------------------

    @staticmethod
    def from_rows(field, rows_list, cols=None):
        rows_list = [[field.coerce(x) for x in row] for row in rows_list]
        r = len(rows_list)
        if r == 0:
            if cols is None:
                cols = 0
            return Mat.zeros(field, 0, cols)
        c = len(rows_list[0])
        if any(len(row) != c for row in rows_list):
            raise ValueError("ragged rows")
        if isinstance(field, PrimeField):
            arr = np.array(rows_list, dtype=np.int64).reshape(r, c)
        else:
            arr = np.empty((r, c), dtype=object)
            for i, row in enumerate(rows_list):
                for j, x in enumerate(row):
                    arr[i, j] = x
        return Mat(field, arr)

    @staticmethod
    def zeros(field, rows, cols):
        if isinstance(field, PrimeField):
            arr = np.zeros((rows, cols), dtype=np.int64)
        else:
            arr = np.empty((rows, cols), dtype=object)
            arr[...] = Fraction(0)
        return Mat(field, arr)

    @staticmethod
    def identity(field, n):
        m = Mat.zeros(field, n, n)
        arr = m.a.copy()
        for i in range(n):
            arr[i, i] = field.one
        return Mat(field, arr)

    @staticmethod
    def column(field, entries):
        return Mat.from_rows(field, [[x] for x in entries], cols=1)

    # ---- basic ops ----------------------------------------------------

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        return Mat(self.field, self.a + other.a)

    def __sub__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in sub")
        return Mat(self.field, self.a - other.a)

    def __neg__(self):
        return Mat(self.field, -self.a)

    def __mul__(self, other):
        """Matrix product self * other."""
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch in mul: {self.shape} * {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        return Mat(self.field, self.a @ other.a)

    def scale(self, c):
        c = self.field.coerce(c)
        return Mat(self.field, self.a * c)

    def transpose(self):
        return Mat(self.field, self.a.T.copy())

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entry(self, i, j):
        return self.a[i, j]

    def is_zero(self):
        return self.rows == 0 or self.cols == 0 or not np.any(self.a != 0)

    def __eq__(self, other):
        if not isinstance(other, Mat) or self.field != other.field:
            return False
        return self.shape == other.shape and (self.rows == 0 or self.cols == 0 or bool(np.all(self.a == other.a)))

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.a.flat)))

    def __repr__(self):
        return f"Mat({self.field}, {self.a.tolist()})"

    def hstack(self, other):
        self._check(other)
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        if isinstance(self.field, PrimeField):
            return Mat(self.field, np.hstack([self.a, other.a]))
        out = np.empty((self.rows, self.cols + other.cols), dtype=object)
        out[:, : self.cols] = self.a
        out[:, self.cols :] = other.a
        return Mat(self.field, out)

    def vstack(self, other):
        self._check(other)
        if self.cols != other.cols:
            raise ValueError("col mismatch in vstack")
        if isinstance(self.field, PrimeField):
            return Mat(self.field, np.vstack([self.a, other.a]))
        out = np.empty((self.rows + other.rows, self.cols), dtype=object)
        out[: self.rows, :] = self.a
        out[self.rows :, :] = other.a
        return Mat(self.field, out)

    def submatrix(self, row_idx, col_idx):
        return Mat(self.field, self.a[np.ix_(list(row_idx), list(col_idx))]) if row_idx and col_idx else Mat.zeros(self.field, len(row_idx), len(col_idx))

    def col(self, j):
        return Mat(self.field, self.a[:, [j]])

    def columns(self):
        return [self.col(j) for j in range(self.cols)]


def _rref_fp(arr, p):
    """Row reduce an int64 array mod p.  Returns (reduced, pivot cols)."""
    a = arr.copy() % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] % p:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p) if p > 2 else 1
        if inv != 1:
            a[r] = a[r] * inv % p
        mask = a[:, c] != 0
        mask[r] = False
        if mask.any():
            a[mask] = (a[mask] - np.outer(a[mask, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def _rref_q(arr):
    a = arr.copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Mat):
    """Reduced row echelon form.  Returns (reduced Mat, pivot columns, rank)."""
    if m.rows == 0 or m.cols == 0:
        return m, [], 0
    if isinstance(m.field, PrimeField):
        a, pivots = _rref_fp(m.a, m.field.p)
    else:
        a, pivots = _rref_q(m.a)
    return Mat(m.field, a), pivots, len(pivots)


def rank(m: Mat):
    return rref(m)[2]


def kernel_basis(m: Mat):
    """Basis of the right null space, as a list of column vectors.

    Vectors come out in deterministic order, one per free column of the
    reduced form, with the free coordinate set to one.
    """
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [Mat.column(m.field, [m.field.one if i == j else m.field.zero for i in range(m.cols)]) for j in range(m.cols)]
    red, pivots, _ = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    out = []
    for f in free:
        v = [m.field.zero] * m.cols
        v[f] = m.field.one
        for r, c in enumerate(pivots):
            v[c] = -red.entry(r, f)
        out.append(Mat.column(m.field, v))
    return out


def solve(a: Mat, b: Mat):
    """Some x with a*x = b (b a column vector), or None if inconsistent."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    if b.cols != 1 or a.rows != b.rows:
        raise ValueError(f"shape mismatch in solve: {a.shape} vs {b.shape}")
    if a.cols == 0:
        return Mat.zeros(a.field, 0, 1) if b.is_zero() else None
    aug = a.hstack(b)
    red, pivots, _ = rref(aug)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [a.field.zero] * a.cols
    for r, c in enumerate(pivots):
        x[c] = red.entry(r, a.cols)
    return Mat.column(a.field, x)


def solve_matrix(a: Mat, b: Mat):
    """Some X with a*X = b (b any matrix), or None if inconsistent."""
    cols = []
    for j in range(b.cols):
        x = solve(a, b.col(j))
        if x is None:
            return None
        cols.append(x)
    out = Mat.zeros(a.field, a.cols, b.cols)
    arr = out.a.copy()
    for j, x in enumerate(cols):
        arr[:, j] = x.a[:, 0]
    return Mat(a.field, arr)


def column_space_basis(m: Mat):
    """Matrix whose columns are a deterministic basis of the column space."""
    red, pivots, _ = rref(m.transpose())
    rows = [list(red.a[i]) for i in range(len(pivots))]
    return Mat.from_rows(m.field, rows, cols=m.rows).transpose() if rows else Mat.zeros(m.field, m.rows, 0)


def is_invertible(m: Mat):
    return m.rows == m.cols and rank(m) == m.rows


def inverse(m: Mat):
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    if n == 0:
        return m
    red, pivots, rk = rref(m.hstack(Mat.identity(m.field, n)))
    if rk < n or pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return Mat(m.field, red.a[:, n:])
