"""Exact scalar fields and dense linear algebra.

Everything downstream (algebras, coactions, canonical maps) reduces to
kernels, solves and ranks of dense matrices over an exact field: the
rationals, or a prime field F_p.  No floating point anywhere; every
identity checked by this package is a literal equality of matrices.

Elimination is plain Gauss-Jordan with the pivot chosen as the earliest
nonzero entry, so reduced forms, kernel bases and cached inverses are
reproducible across runs and platforms.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


class ScalarFieldError(ValueError):
    """Mixing values from different scalar fields, or a malformed field."""


class Field:
    """Base class for exact scalar fields.

    Elements are plain Python values (Fraction for the rationals, int
    residues for prime fields); the field object carries the arithmetic.
    """

    name = "?"

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "Field(%s)" % self.name

    # arithmetic -----------------------------------------------------
    def add(self, x, y):
        raise NotImplementedError

    def sub(self, x, y):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def div(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def parse(self, text: str):
        """Parse an exact scalar written as `p` or `p/q`."""
        raise NotImplementedError

    def fmt(self, x) -> str:
        raise NotImplementedError


class RationalField(Field):
    """The rationals, backed by fractions.Fraction.

    Fraction already stores values in lowest terms with a positive
    denominator, which is exactly the normal form required here.
    """

    name = "q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def div(self, x, y):
        if y == 0:
            raise ZeroDivisionError("division by zero in Q")
        return x / y

    def neg(self, x):
        return -x

    def from_int(self, n):
        return Fraction(n)

    def parse(self, text):
        return Fraction(text)

    def fmt(self, x):
        return str(x)


class PrimeField(Field):
    """F_p for a machine-word prime p; elements are residues in [0, p)."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2 or p >= 1 << 64:
            raise ScalarFieldError("prime field modulus out of range: %r" % (p,))
        from sympy import isprime  # lazy: only needed when F_p is requested

        if not isprime(p):
            raise ScalarFieldError("%d is not prime" % p)
        self.p = p
        self.name = "fp:%d" % p
        self.zero = 0
        self.one = 1 % p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def div(self, x, y):
        if y % self.p == 0:
            raise ZeroDivisionError("division by zero in %s" % self.name)
        return (x * pow(y, -1, self.p)) % self.p

    def neg(self, x):
        return (-x) % self.p

    def from_int(self, n):
        return n % self.p

    def parse(self, text):
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(self.from_int(int(num)), self.from_int(int(den)))
        return self.from_int(int(text))

    def fmt(self, x):
        return str(x % self.p)


QQ = RationalField()

_PRIME_FIELDS: dict[int, PrimeField] = {}


def prime_field(p: int) -> PrimeField:
    if p not in _PRIME_FIELDS:
        _PRIME_FIELDS[p] = PrimeField(p)
    return _PRIME_FIELDS[p]


def field_by_name(name: str) -> Field:
    """Resolve `q` or `fp:<p>` as used by the CLI --field flag."""
    if name == "q":
        return QQ
    if name.startswith("fp:"):
        return prime_field(int(name[3:]))
    raise ScalarFieldError("unknown field %r (expected q or fp:<p>)" % name)


class Matrix:
    """Immutable dense matrix over an exact field.

    Stored row-major as a tuple of row tuples.  A linear map V -> W with
    dim V = c and dim W = r is an r x c matrix acting on column vectors,
    so composition of maps is the ordinary matrix product.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: Sequence[Sequence], cols: Optional[int] = None):
        self.field = field
        rows = len(data)
        if rows:
            cols = len(data[0])
        elif cols is None:
            cols = 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = rows
        self.cols = cols
        self.data = tuple(tuple(row) for row in data)

    # constructors ---------------------------------------------------
    @classmethod
    def from_rows(cls, field: Field, data, cols: Optional[int] = None) -> "Matrix":
        """Build a matrix, coercing plain ints through the field."""
        conv = [[field.from_int(x) if isinstance(x, int) else x for x in row] for row in data]
        return cls(field, conv, cols)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def column(cls, field: Field, vec: Sequence) -> "Matrix":
        return cls(field, [[x] for x in vec], 1)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: Optional[int] = None) -> "Matrix":
        if columns:
            rows = len(columns[0])
        elif rows is None:
            rows = 0
        z = field.zero
        data = [[z] * len(columns) for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("ragged matrix columns")
            for i, x in enumerate(col):
                data[i][j] = x
        return cls(field, data, len(columns))

    # basics ---------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.data, self.cols))

    def __repr__(self):
        return "Matrix(%dx%d over %s)" % (self.rows, self.cols, self.field.name)

    def entry(self, i: int, j: int):
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(x for row in self.data for x in row)

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise ScalarFieldError("scalar field mismatch: %s vs %s" % (self.field.name, other.field.name))

    # arithmetic -----------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in +")
        add = self.field.add
        return Matrix(
            self.field,
            [[add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in -")
        sub = self.field.sub
        return Matrix(
            self.field,
            [[sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
            self.cols,
        )

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, [[neg(x) for x in row] for row in self.data], self.cols)

    def scale(self, c) -> "Matrix":
        mul = self.field.mul
        return Matrix(self.field, [[mul(c, x) for x in row] for row in self.data], self.cols)

    def __mul__(self, other: "Matrix") -> "Matrix":
        """Matrix product (composition of linear maps)."""
        self._check(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch in *: %dx%d by %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        f = self.field
        z = f.zero
        add, mul = f.add, f.mul
        out = []
        odata = other.data
        for arow in self.data:
            acc = [z] * other.cols
            for k, a in enumerate(arow):
                if not a:
                    continue
                brow = odata[k]
                acc = [add(u, mul(a, v)) if v else u for u, v in zip(acc, brow)]
            out.append(acc)
        return Matrix(f, out, other.cols)

    def apply(self, vec: Sequence) -> tuple:
        """Apply to a column vector given as a flat sequence."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        f = self.field
        z = f.zero
        add, mul = f.add, f.mul
        out = [z] * self.rows
        for j, x in enumerate(vec):
            if not x:
                continue
            for i in range(self.rows):
                a = self.data[i][j]
                if a:
                    out[i] = add(out[i], mul(a, x))
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [self.col(j) for j in range(self.cols)], self.rows)


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    field = blocks[0].field
    rows = blocks[0].rows
    for b in blocks:
        if b.rows != rows or b.field != field:
            raise ValueError("hstack mismatch")
    data = [sum((list(b.data[i]) for b in blocks), []) for i in range(rows)]
    return Matrix(field, data, sum(b.cols for b in blocks))


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    field = blocks[0].field
    cols = blocks[0].cols
    for b in blocks:
        if b.cols != cols or b.field != field:
            raise ValueError("vstack mismatch")
    data = [row for b in blocks for row in b.data]
    return Matrix(field, data, cols)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product: the matrix of a (x) b on row-major tensor bases."""
    a._check(b)
    f = a.field
    z = f.zero
    mul = f.mul
    out = [[z] * (a.cols * b.cols) for _ in range(a.rows * b.rows)]
    for ia in range(a.rows):
        for ja in range(a.cols):
            x = a.data[ia][ja]
            if not x:
                continue
            for ib in range(b.rows):
                ro = out[ia * b.rows + ib]
                off = ja * b.cols
                brow = b.data[ib]
                for jb in range(b.cols):
                    y = brow[jb]
                    if y:
                        ro[off + jb] = mul(x, y)
    return Matrix(f, out, a.cols * b.cols)


def ravel_index(dims: Sequence[int], multi: Sequence[int]) -> int:
    idx = 0
    for d, i in zip(dims, multi):
        idx = idx * d + i
    return idx


def unravel_index(dims: Sequence[int], idx: int) -> tuple:
    out = []
    for d in reversed(dims):
        out.append(idx % d)
        idx //= d
    return tuple(reversed(out))


def tensor_permutation(field: Field, dims: Sequence[int], perm: Sequence[int]) -> Matrix:
    """Matrix permuting tensor factors: e[(i_0,...,i_{k-1})] maps to the
    basis vector indexed by (i_{perm[0]}, ..., i_{perm[k-1]}) in the space
    with factor dims (dims[perm[0]], ..., dims[perm[k-1]])."""
    total = 1
    for d in dims:
        total *= d
    tdims = [dims[p] for p in perm]
    z, o = field.zero, field.one
    data = [[z] * total for _ in range(total)]
    for idx in range(total):
        multi = unravel_index(dims, idx)
        tmulti = [multi[p] for p in perm]
        data[ravel_index(tdims, tmulti)][idx] = o
    return Matrix(field, data, total)


def apply_tensor_permutation(m: Matrix, dims: Sequence[int], perm: Sequence[int]) -> Matrix:
    """Permute the tensor factors of the row index of m: the result is
    tensor_permutation(field, dims, perm) * m, computed by reindexing
    rows instead of materializing the permutation matrix."""
    total = 1
    for d in dims:
        total *= d
    if total != m.rows:
        raise ValueError("row count does not match the factor dims")
    tdims = [dims[p] for p in perm]
    rows_out = [None] * total
    for idx in range(total):
        multi = unravel_index(dims, idx)
        tmulti = [multi[p] for p in perm]
        rows_out[ravel_index(tdims, tmulti)] = m.data[idx]
    return Matrix(m.field, rows_out, m.cols)


def _rref_insert(field: Field, basis: dict, order: list, row: list) -> Optional[int]:
    """Reduce `row` against the current reduced basis (pivot -> row) and
    insert it if independent.  `order` is the sorted pivot list, kept in
    step with `basis`.  Returns the new pivot column or None."""
    sub, mul, div = field.sub, field.mul, field.div
    n = len(row)
    for p in order:
        c = row[p]
        if c:
            brow = basis[p]
            for j in range(p, n):
                b = brow[j]
                if b:
                    row[j] = sub(row[j], mul(c, b))
    pivot = None
    for j in range(n):
        if row[j]:
            pivot = j
            break
    if pivot is None:
        return None
    lead = row[pivot]
    if lead != field.one:
        row = [div(x, lead) if x else x for x in row]
    for p, brow in basis.items():
        c = brow[pivot]
        if c:
            basis[p] = [sub(u, mul(c, v)) if v else u for u, v in zip(brow, row)]
    basis[pivot] = row
    insort(order, pivot)
    return pivot


def rref_rows(field: Field, rows, ncols: int):
    """Canonical RREF of the span of `rows` (each a length-ncols sequence).

    Returns (pivots, basis_rows) with pivots strictly increasing and
    basis_rows the unique reduced row-echelon basis of the row space.
    """
    basis: dict = {}
    order: list = []
    for row in rows:
        _rref_insert(field, basis, order, list(row))
    return list(order), [basis[p] for p in order]


def rank(m: Matrix) -> int:
    pivots, _ = rref_rows(m.field, m.data, m.cols)
    return len(pivots)


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form the canonical basis of the null space of m."""
    f = m.field
    pivots, basis = rref_rows(f, m.data, m.cols)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    z, o = f.zero, f.one
    neg = f.neg
    cols = []
    for fc in free:
        v = [z] * m.cols
        v[fc] = o
        for i, p in enumerate(pivots):
            c = basis[i][fc]
            if c:
                v[p] = neg(c)
        cols.append(v)
    return Matrix.from_columns(f, cols, m.cols)


@dataclass(frozen=True)
class SolutionSet:
    """Exact solution set of a linear system a*x = b.

    `particular` solves a*particular = b column-by-column when
    `consistent`; the full solution set per column is particular plus
    arbitrary combinations of the kernel columns.
    """

    consistent: bool
    particular: Optional[Matrix]
    kernel: Optional[Matrix]


def solve(a: Matrix, b: Matrix, want_kernel: bool = True) -> SolutionSet:
    a._check(b)
    if a.rows != b.rows:
        raise ValueError("solve: row mismatch %d vs %d" % (a.rows, b.rows))
    f = a.field
    z = f.zero
    aug = [list(ra) + list(rb) for ra, rb in zip(a.data, b.data)]
    pivots, basis = rref_rows(f, aug, a.cols + b.cols)
    ker = kernel_basis(a) if want_kernel else None
    for p in pivots:
        if p >= a.cols:
            return SolutionSet(False, None, ker)
    part = [[z] * b.cols for _ in range(a.cols)]
    for i, p in enumerate(pivots):
        for j in range(b.cols):
            part[p][j] = basis[i][a.cols + j]
    return SolutionSet(True, Matrix(f, part, b.cols), ker)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    # for a square system, m x = I is consistent exactly when m has full
    # rank, so consistency alone decides invertibility
    sol = solve(m, Matrix.identity(m.field, m.rows), want_kernel=False)
    if not sol.consistent:
        raise ValueError("matrix is singular")
    return sol.particular


def quotient_by_span(field: Field, plain_dim: int, relation_rows) -> tuple:
    """Quotient of k^plain_dim by the span of the given relation vectors.

    Returns (projection, section): projection has a row per quotient
    basis vector and kernel exactly the span; section embeds the quotient
    back (the non-pivot coordinate subspace of the reduced relations) with
    projection * section = identity.
    """
    pivots, basis = rref_rows(field, relation_rows, plain_dim)
    pivset = set(pivots)
    free = [j for j in range(plain_dim) if j not in pivset]
    z, o = field.zero, field.one
    neg = field.neg
    proj = [[z] * plain_dim for _ in free]
    for fi, j in enumerate(free):
        proj[fi][j] = o
        for i, p in enumerate(pivots):
            c = basis[i][j]
            if c:
                proj[fi][p] = neg(c)
    sect = [[z] * len(free) for _ in range(plain_dim)]
    for fi, j in enumerate(free):
        sect[j][fi] = o
    return Matrix(field, proj, plain_dim), Matrix(field, sect, len(free))


def column_space_contains(m: Matrix, vectors: Matrix) -> bool:
    """Whether every column of `vectors` lies in the column space of m."""
    return solve(m, vectors).consistent


def same_column_space(a: Matrix, b: Matrix) -> bool:
    return column_space_contains(a, b) and column_space_contains(b, a)
