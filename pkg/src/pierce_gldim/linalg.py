"""Exact field arithmetic and dense linear algebra over Q and F_p.

Matrices are stored row-major as tuples of tuples of field elements.  Internal
callers mostly pass plain lists of lists; the `Matrix` wrapper exists for the
public surface and for equality/hash.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


class DimensionMismatch(ValueError):
    pass


# --------------------------------------------------------------------------
# fields


class Fp:
    """Element of the prime field Z/pZ, stored canonically in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(o * pow(self.v, -1, self.p), self.p)

    def __pow__(self, n: int):
        if n < 0:
            return Fp(pow(self.v, -1, self.p), self.p) ** (-n)
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """Ground field; subclasses supply coercion, parsing and printing."""

    name: str
    characteristic: int

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        raise NotImplementedError

    def parse(self, s) -> object:
        return self(s)

    def format(self, x) -> str:
        return str(self(x))

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, Fp):
            raise TypeError("cannot coerce an F_p element into Q")
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or p >= 2**31 or not _is_prime(p):
            raise ValueError(f"p must be a prime below 2^31, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"Fp:{p}"

    def __call__(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError(f"element of F_{x.p} is not in F_{self.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Fp(int(x), self.p)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str) -> Field:
    name = name.strip()
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        return GF(int(name[3:]))
    raise ValueError(f"unknown field {name!r}; expected 'Q' or 'Fp:<p>'")


def field_of(x) -> Field:
    if isinstance(x, Fp):
        return GF(x.p)
    return QQ


# --------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(field(x) for x in r) for r in rows)
        ncols = len(data[0]) if data else (cols or 0)
        if any(len(r) != ncols for r in data):
            raise DimensionMismatch("ragged rows")
        return cls(field, len(data), ncols, data)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        prod = matmul(self.tolist(), other.tolist(), self.field, other.cols)
        return Matrix(self.field, self.rows, other.cols, tuple(tuple(r) for r in prod))

    def apply(self, v: Sequence) -> list:
        return matvec(self.entries, v, self.field)

    def __str__(self):
        return "\n".join("[" + " ".join(self.field.format(x) for x in r) + "]" for r in self.entries)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], field: Field, bcols: int | None = None) -> list[list]:
    if bcols is None:
        bcols = len(b[0]) if b else 0
    z = field.zero
    out = []
    for row in a:
        acc = [z] * bcols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(bcols):
                    y = bk[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def matvec(a: Sequence[Sequence], v: Sequence, field: Field) -> list:
    z = field.zero
    out = []
    for row in a:
        s = z
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def _rref_inplace(m: list[list], ncols: int) -> list[int]:
    """Gauss-Jordan on a list of row lists; pivot = first nonzero in column."""
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        row = m[r]
        inv = 1 / row[c]
        if inv != 1:
            m[r] = row = [x * inv if x else x for x in row]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    m[i] = [a - f * b if b else a for a, b in zip(mi, row)]
        pivots.append(c)
        r += 1
    return pivots


def _rank_modp(rows: Sequence[Sequence], p: int, ncols: int) -> int:
    """Rank over F_p with vectorised int64 elimination (p < 2^31)."""
    if not rows or ncols == 0:
        return 0
    a = np.array([[x.v if isinstance(x, Fp) else int(x) % p for x in r] for r in rows], dtype=np.int64)
    return _rank_modp_array(a, p)


def _rank_modp_array(a: np.ndarray, p: int) -> int:
    a = a % p
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        below = np.nonzero(a[r + 1:, c])[0] + r + 1
        if below.size:
            f = a[below, c][:, None]
            a[below] = (a[below] - f * a[r][None, :]) % p
        r += 1
    return r


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    rows = m.tolist()
    pivots = _rref_inplace(rows, m.cols)
    return Matrix(m.field, m.rows, m.cols, tuple(tuple(r) for r in rows)), pivots


def rank_rows(rows: Sequence[Sequence], field: Field, ncols: int | None = None) -> int:
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    if isinstance(field, PrimeField):
        return _rank_modp(rows, field.p, ncols)
    work = [list(r) for r in rows]
    return len(_rref_inplace(work, ncols))


def rank(m: Matrix) -> int:
    return rank_rows(m.entries, m.field, m.cols)


def kernel_rows(rows: Sequence[Sequence], field: Field, ncols: int) -> list[list]:
    """Basis of {v : M v = 0} for M given by `rows`."""
    return kernel_with_free(rows, field, ncols)[0]


def kernel_with_free(rows: Sequence[Sequence], field: Field, ncols: int) -> tuple[list[list], list[int]]:
    """Kernel basis together with its free columns.

    Basis vector j has a 1 at free[j] and 0 at every other free column, so the
    coordinates of a kernel element are its entries at the free columns.
    """
    work = [list(r) for r in rows]
    pivots = _rref_inplace(work, ncols)
    pivset = set(pivots)
    z, o = field.zero, field.one
    basis = []
    free = []
    for col in range(ncols):
        if col in pivset:
            continue
        v = [z] * ncols
        v[col] = o
        for i, pc in enumerate(pivots):
            v[pc] = -work[i][col]
        basis.append(v)
        free.append(col)
    return basis, free


def kernel_basis(m: Matrix) -> list[list]:
    return kernel_rows(m.entries, m.field, m.cols)


def row_basis(vectors: Sequence[Sequence], field: Field, dim: int) -> list[list]:
    """Reduced echelon basis of the span of `vectors` (canonical for the span)."""
    work = [list(v) for v in vectors]
    pivots = _rref_inplace(work, dim)
    return work[: len(pivots)]


def independent_subset(vectors: Sequence[Sequence], field: Field, dim: int) -> list[int]:
    """Indices of a maximal independent prefix-greedy subset of `vectors`."""
    chosen: list[int] = []
    echelon = Echelon(field, dim)
    for i, v in enumerate(vectors):
        if echelon.add(v):
            chosen.append(i)
    return chosen


class Echelon:
    """Incrementally maintained reduced echelon basis, for membership tests."""

    def __init__(self, field: Field, dim: int):
        self.field = field
        self.dim = dim
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, v: Sequence) -> list:
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            f = v[pc]
            if f:
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return v

    def add(self, v: Sequence) -> bool:
        v = self.reduce(v)
        pc = next((i for i, x in enumerate(v) if x), None)
        if pc is None:
            return False
        inv = 1 / v[pc]
        v = [x * inv if x else x for x in v]
        for i, row in enumerate(self.rows):
            f = row[pc]
            if f:
                self.rows[i] = [a - f * b if b else a for a, b in zip(row, v)]
        pos = next((i for i, q in enumerate(self.pivots) if q > pc), len(self.pivots))
        self.rows.insert(pos, v)
        self.pivots.insert(pos, pc)
        return True

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __len__(self):
        return len(self.rows)


def _check_dims(vectors: Iterable[Sequence], dim: int) -> None:
    for v in vectors:
        if len(v) != dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {dim}")


@dataclass(frozen=True)
class SubspaceResult:
    sum: list
    intersection: list

    def dims(self) -> tuple[int, int]:
        return len(self.sum), len(self.intersection)


def subspace_sum(a: Sequence[Sequence], b: Sequence[Sequence], field: Field, dim: int) -> list[list]:
    _check_dims(a, dim)
    _check_dims(b, dim)
    return row_basis(list(a) + list(b), field, dim)


def subspace_intersection(a: Sequence[Sequence], b: Sequence[Sequence], field: Field, dim: int) -> list[list]:
    """Zassenhaus: row-reduce [[a, a], [b, 0]]; rows with zero left half give A ∩ B."""
    _check_dims(a, dim)
    _check_dims(b, dim)
    z = field.zero
    block = [list(v) + list(v) for v in a] + [list(v) + [z] * dim for v in b]
    red = row_basis(block, field, 2 * dim)
    inter = [r[dim:] for r in red if not any(r[:dim])]
    return row_basis(inter, field, dim)


def subspace_ops(a: Sequence[Sequence], b: Sequence[Sequence], field: Field, dim: int) -> SubspaceResult:
    return SubspaceResult(subspace_sum(a, b, field, dim), subspace_intersection(a, b, field, dim))


def in_span(v: Sequence, span: Sequence[Sequence], field: Field, dim: int) -> bool:
    e = Echelon(field, dim)
    for w in span:
        e.add(w)
    return e.contains(v)


def spans_equal(a: Sequence[Sequence], b: Sequence[Sequence], field: Field, dim: int) -> bool:
    return row_basis(a, field, dim) == row_basis(b, field, dim)


def solve_columns(basis: Sequence[Sequence], targets: Sequence[Sequence], field: Field) -> list[list]:
    """Coordinates of each target in terms of `basis` (vectors, assumed independent).

    Raises ValueError if some target is outside the span.
    """
    n = len(basis)
    if n == 0:
        for t in targets:
            if any(t):
                raise ValueError("target outside span")
        return [[] for _ in targets]
    dim = len(basis[0])
    z, o = field.zero, field.one
    # rows of [B^T | I]; eliminate the left block to express echelon rows via basis
    aug = [list(basis[i]) + [o if j == i else z for j in range(n)] for i in range(n)]
    pivots = _rref_inplace(aug, dim)
    if len(pivots) != n:
        raise ValueError("basis vectors are dependent")
    out = []
    for t in targets:
        coords = [z] * n
        rem = list(t)
        for row, pc in zip(aug, pivots):
            f = rem[pc]
            if f:
                for j in range(dim):
                    if row[j]:
                        rem[j] = rem[j] - f * row[j]
                for j in range(n):
                    if row[dim + j]:
                        coords[j] = coords[j] + f * row[dim + j]
        if any(rem):
            raise ValueError("target outside span")
        out.append(coords)
    return out


def inverse(m: Sequence[Sequence], field: Field) -> list[list]:
    n = len(m)
    z, o = field.zero, field.one
    aug = [list(m[i]) + [o if j == i else z for j in range(n)] for i in range(n)]
    pivots = _rref_inplace(aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in aug]


def transpose(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*rows)]


def zeros(field: Field, rows: int, cols: int) -> list[list]:
    z = field.zero
    return [[z] * cols for _ in range(rows)]


def identity(field: Field, n: int) -> list[list]:
    z, o = field.zero, field.one
    return [[o if i == j else z for j in range(n)] for i in range(n)]
