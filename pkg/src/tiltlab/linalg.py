"""Exact dense linear algebra over Q and over prime fields F_p.

Scalars are ``fractions.Fraction`` over Q and least nonnegative residues
(plain ints) over F_p.  Everything here is immutable and pure; matrices act
on column vectors, so the matrix of "f then g" is ``mat(g) @ mat(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class LinAlgError(ValueError):
    pass


class DimensionMismatch(LinAlgError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: kind "Q" (rationals) or "Fp" (prime field, p < 2**31)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise LinAlgError("rational field takes no modulus")
        elif self.kind == "Fp":
            if self.p is None or self.p < 2 or self.p >= 2**31 or not _is_prime(self.p):
                raise LinAlgError(f"modulus must be a prime below 2**31, got {self.p}")
        else:
            raise LinAlgError(f"unknown field kind {self.kind!r}")

    # -- scalar arithmetic ------------------------------------------------

    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def from_int(self, n):
        return Fraction(n) if self.kind == "Q" else n % self.p

    def add(self, a, b):
        return a + b if self.kind == "Q" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "Q" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "Q" else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == "Q" else (-a) % self.p

    def inv(self, a):
        if self.kind == "Q":
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a == 0

    # -- serialization ----------------------------------------------------

    def parse_scalar(self, text):
        """Parse "n" or "n/d" into a canonical scalar."""
        text = text.strip()
        if self.kind == "Q":
            return Fraction(text)
        if "/" in text:
            num, den = text.split("/", 1)
            return self.mul(int(num) % self.p, self.inv(int(den) % self.p))
        return int(text) % self.p

    def format_scalar(self, a):
        if self.kind == "Q":
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a % self.p)

    def to_json(self):
        return {"kind": self.kind} if self.kind == "Q" else {"kind": self.kind, "p": self.p}

    @staticmethod
    def from_json(obj):
        return FieldSpec(obj["kind"], obj.get("p"))


QQ = FieldSpec("Q")


def GF(p):
    return FieldSpec("Fp", p)


# ---------------------------------------------------------------------------
# dense matrices


@dataclass(frozen=True)
class Mat:
    """Immutable dense matrix; ``entries`` is a tuple of row tuples."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("entry grid does not match declared shape")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rows(field, rows):
        rows = tuple(tuple(field.from_int(x) if isinstance(x, int) else x for x in r) for r in rows)
        ncols = len(rows[0]) if rows else 0
        return Mat(field, len(rows), ncols, rows)

    @staticmethod
    def zeros(field, rows, cols):
        z = field.zero()
        return Mat(field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(field, n):
        one, zero = field.one(), field.zero()
        return Mat(field, n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    # -- basic algebra -----------------------------------------------------

    def _check_same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")

    def add(self, other):
        self._check_same_shape(other)
        f = self.field
        return Mat(f, self.rows, self.cols,
                   tuple(tuple(f.add(a, b) for a, b in zip(ra, rb))
                         for ra, rb in zip(self.entries, other.entries)))

    def sub(self, other):
        self._check_same_shape(other)
        f = self.field
        return Mat(f, self.rows, self.cols,
                   tuple(tuple(f.sub(a, b) for a, b in zip(ra, rb))
                         for ra, rb in zip(self.entries, other.entries)))

    def scale(self, c):
        f = self.field
        return Mat(f, self.rows, self.cols,
                   tuple(tuple(f.mul(c, a) for a in r) for r in self.entries))

    def mul(self, other):
        """Matrix product self @ other."""
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        f = self.field
        ot = tuple(zip(*other.entries)) if other.entries else tuple()
        out = []
        for row in self.entries:
            new_row = []
            for j in range(other.cols):
                col = ot[j] if ot else ()
                acc = f.zero()
                for a, b in zip(row, col):
                    if a != 0 and b != 0:
                        acc = f.add(acc, f.mul(a, b))
                new_row.append(acc)
            out.append(tuple(new_row))
        return Mat(f, self.rows, other.cols, tuple(out))

    def apply(self, vec):
        """Apply to a column vector given as a tuple."""
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        f = self.field
        return tuple(
            _dot(f, row, vec) for row in self.entries
        )

    def transpose(self):
        return Mat(self.field, self.cols, self.rows, tuple(zip(*self.entries)) if self.entries else tuple(() for _ in range(self.cols)))

    def is_zero(self):
        return all(x == 0 for row in self.entries for x in row)

    def col(self, j):
        return tuple(row[j] for row in self.entries)

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch("row count mismatch")
        return Mat(self.field, self.rows, self.cols + other.cols,
                   tuple(ra + rb for ra, rb in zip(self.entries, other.entries)))

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionMismatch("column count mismatch")
        return Mat(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    @staticmethod
    def block_diag(field, blocks):
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        z = field.zero()
        grid = [[z] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.entries):
                grid[r0 + i][c0:c0 + b.cols] = list(row)
            r0 += b.rows
            c0 += b.cols
        return Mat(field, rows, cols, tuple(tuple(r) for r in grid))

    def to_strings(self):
        return [[self.field.format_scalar(x) for x in row] for row in self.entries]

    @staticmethod
    def from_strings(field, rows, nrows, ncols):
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise DimensionMismatch("matrix shape does not match declared dimensions")
        return Mat(field, nrows, ncols,
                   tuple(tuple(field.parse_scalar(x) for x in row) for row in rows))


def _dot(field, u, v):
    acc = field.zero()
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            acc = field.add(acc, field.mul(a, b))
    return acc


def vec_add(field, u, v):
    return tuple(field.add(a, b) for a, b in zip(u, v))

def vec_sub(field, u, v):
    return tuple(field.sub(a, b) for a, b in zip(u, v))

def vec_scale(field, c, u):
    return tuple(field.mul(c, a) for a in u)

def zero_vec(field, n):
    z = field.zero()
    return (z,) * n


# ---------------------------------------------------------------------------
# row reduction


def rref_rank(m):
    """Reduced row-echelon form of ``m``; returns (reduced, rank, pivot_cols).

    Pivoting is deterministic: leftmost column first, first nonzero row.
    """
    f = m.field
    rows = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        sel = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = f.inv(rows[r][c])
        if inv != f.one():
            rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    reduced = Mat(f, nrows, ncols, tuple(tuple(row) for row in rows))
    return reduced, len(pivots), pivots


def kernel_vectors(m):
    """Canonical basis of the right kernel of ``m`` (list of tuples)."""
    f = m.field
    red, rank, pivots = rref_rank(m)
    free = [c for c in range(m.cols) if c not in pivots]
    out = []
    for fc in free:
        v = [f.zero()] * m.cols
        v[fc] = f.one()
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(red.entries[r][fc])
        out.append(tuple(v))
    return out


def solve_right(a, b):
    """Least-pivot particular solution x of a @ x = b, or None.

    Free variables are set to zero, so repeated runs give identical output.
    """
    if len(b) != a.rows:
        raise DimensionMismatch("rhs length mismatch")
    f = a.field
    aug = a.hstack(Mat(f, a.rows, 1, tuple((x,) for x in b)))
    red, rank, pivots = rref_rank(aug)
    if a.cols in pivots:
        return None
    x = [f.zero()] * a.cols
    for r, pc in enumerate(pivots):
        x[pc] = red.entries[r][a.cols]
    return tuple(x)


def solve_matrix(a, b):
    """Columnwise solve a @ X = b; returns Mat X or None."""
    cols = []
    for j in range(b.cols):
        x = solve_right(a, b.col(j))
        if x is None:
            return None
        cols.append(x)
    return Mat(a.field, a.cols, b.cols, tuple(zip(*cols))) if cols else Mat(a.field, a.cols, 0, tuple(() for _ in range(a.cols)))


# ---------------------------------------------------------------------------
# subspaces in canonical echelon form


@dataclass(frozen=True)
class SubspaceBasis:
    """Subspace of k^n stored as RREF rows, so equality is structural."""

    field: FieldSpec
    ambient_dim: int
    vectors: tuple          # tuple of row tuples, reduced echelon, no zero rows
    pivots: tuple

    @staticmethod
    def from_vectors(field, ambient_dim, vecs):
        vecs = [tuple(v) for v in vecs]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionMismatch("vector length differs from ambient dimension")
        if not vecs:
            return SubspaceBasis(field, ambient_dim, tuple(), tuple())
        m = Mat(field, len(vecs), ambient_dim, tuple(vecs))
        red, rank, pivots = rref_rank(m)
        return SubspaceBasis(field, ambient_dim, red.entries[:rank], tuple(pivots))

    @staticmethod
    def zero(field, ambient_dim):
        return SubspaceBasis(field, ambient_dim, tuple(), tuple())

    @staticmethod
    def full(field, ambient_dim):
        eye = Mat.identity(field, ambient_dim)
        return SubspaceBasis(field, ambient_dim, eye.entries, tuple(range(ambient_dim)))

    @property
    def dim(self):
        return len(self.vectors)

    def reduce(self, vec):
        """Residual of ``vec`` after subtracting its projection on the span."""
        f = self.field
        v = list(vec)
        for row, p in zip(self.vectors, self.pivots):
            c = v[p]
            if c != 0:
                for j in range(self.ambient_dim):
                    if row[j] != 0:
                        v[j] = f.sub(v[j], f.mul(c, row[j]))
        return tuple(v)

    def contains_vector(self, vec):
        return all(x == 0 for x in self.reduce(vec))

    def coords_of(self, vec):
        """Coordinates w.r.t. the stored basis; raises if not a member."""
        coords = tuple(vec[p] for p in self.pivots)
        if not self.contains_vector(vec):
            raise LinAlgError("vector is not in the subspace")
        return coords

    def linear_combination(self, coords):
        f = self.field
        v = [f.zero()] * self.ambient_dim
        for c, row in zip(coords, self.vectors):
            if c != 0:
                for j in range(self.ambient_dim):
                    if row[j] != 0:
                        v[j] = f.add(v[j], f.mul(c, row[j]))
        return tuple(v)

    def contains_subspace(self, other):
        return all(self.contains_vector(v) for v in other.vectors)

    def add(self, other):
        self._check_ambient(other)
        return SubspaceBasis.from_vectors(self.field, self.ambient_dim, list(self.vectors) + list(other.vectors))

    def intersect(self, other):
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return SubspaceBasis.zero(self.field, self.ambient_dim)
        # x = a^T u = b^T v  <=>  (u, v) in ker [A^T | -B^T]
        f = self.field
        a_t = Mat(f, self.ambient_dim, self.dim, tuple(zip(*self.vectors)))
        b_t = Mat(f, self.ambient_dim, other.dim, tuple(zip(*other.vectors)))
        stacked = a_t.hstack(Mat(f, b_t.rows, b_t.cols,
                                 tuple(tuple(f.neg(x) for x in row) for row in b_t.entries)))
        vecs = []
        for kv in kernel_vectors(stacked):
            u = kv[:self.dim]
            vecs.append(self.linear_combination(u))
        return SubspaceBasis.from_vectors(f, self.ambient_dim, vecs)

    def preimage(self, m):
        """{v : m @ v in self}; ``m`` maps the result's ambient into ours."""
        if m.rows != self.ambient_dim:
            raise DimensionMismatch("map target does not match ambient")
        f = self.field
        if self.dim == 0:
            return SubspaceBasis.from_vectors(f, m.cols, kernel_vectors(m))
        # m v = A^T c  <=>  (v, c) in ker [m | -A^T]
        a_t = Mat(f, self.ambient_dim, self.dim, tuple(zip(*self.vectors)))
        stacked = m.hstack(Mat(f, a_t.rows, a_t.cols,
                               tuple(tuple(f.neg(x) for x in row) for row in a_t.entries)))
        vecs = [kv[:m.cols] for kv in kernel_vectors(stacked)]
        return SubspaceBasis.from_vectors(f, m.cols, vecs)

    def image(self, m):
        """Image of the span under the linear map ``m`` (from our ambient)."""
        if m.cols != self.ambient_dim:
            raise DimensionMismatch("map source does not match ambient")
        return SubspaceBasis.from_vectors(self.field, m.rows, [m.apply(v) for v in self.vectors])

    def quotient(self):
        """Complement representatives and the projection onto quotient coords.

        Returns (reps, project) where reps are ambient unit vectors at the
        non-pivot positions and project maps an ambient vector to its
        coordinate tuple in the quotient.
        """
        nonpivots = [j for j in range(self.ambient_dim) if j not in self.pivots]
        f = self.field
        reps = []
        for j in nonpivots:
            v = [f.zero()] * self.ambient_dim
            v[j] = f.one()
            reps.append(tuple(v))

        def project(vec):
            w = self.reduce(vec)
            return tuple(w[j] for j in nonpivots)

        return reps, project

    def complement_in(self, larger):
        """Canonical representatives of larger/self (self must lie in larger)."""
        if not larger.contains_subspace(self):
            raise LinAlgError("not a subspace of the larger space")
        inner = SubspaceBasis.from_vectors(
            self.field, larger.dim, [larger.coords_of(v) for v in self.vectors])
        reps, project = inner.quotient()
        return [larger.linear_combination(r) for r in reps]

    def _check_ambient(self, other):
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise DimensionMismatch("ambient spaces differ")


def subspace_ops(a, b=None, op="Sum", m=None):
    """Dispatcher over subspace operations (Intersect, Sum, Contains,
    Preimage, Quotient)."""
    if op == "Intersect":
        return a.intersect(b)
    if op == "Sum":
        return a.add(b)
    if op == "Contains":
        return a.contains_subspace(b)
    if op == "Preimage":
        return a.preimage(m)
    if op == "Quotient":
        return a.quotient()
    raise LinAlgError(f"unknown subspace op {op!r}")


def kernel_image(m):
    """Kernel and image of a matrix, both in canonical form."""
    ker = SubspaceBasis.from_vectors(m.field, m.cols, kernel_vectors(m))
    img = SubspaceBasis.from_vectors(m.field, m.rows,
                                     [m.col(j) for j in range(m.cols)])
    return ker, img


class LinearQuotient:
    """Quotient K/H of nested subspaces of a common ambient space.

    Provides canonical representatives: a vector of K is reduced modulo H in
    K-coordinates, and the quotient coordinates are read off the non-pivot
    positions.  Deterministic by construction.
    """

    def __init__(self, space, sub):
        if not space.contains_subspace(sub):
            raise LinAlgError("sub is not contained in space")
        self.space = space
        self.sub = sub
        field = space.field
        self.sub_in_coords = SubspaceBasis.from_vectors(
            field, space.dim, [space.coords_of(v) for v in sub.vectors])
        self._nonpivots = [j for j in range(space.dim)
                           if j not in self.sub_in_coords.pivots]

    @property
    def dim(self):
        return len(self._nonpivots)

    def qcoords(self, vec):
        c = self.space.coords_of(vec)
        red = self.sub_in_coords.reduce(c)
        return tuple(red[j] for j in self._nonpivots)

    def reduce(self, vec):
        """Canonical ambient representative of the class of ``vec``."""
        c = self.space.coords_of(vec)
        red = self.sub_in_coords.reduce(c)
        return self.space.linear_combination(red)

    def representative(self, qc):
        f = self.space.field
        c = [f.zero()] * self.space.dim
        for val, j in zip(qc, self._nonpivots):
            c[j] = val
        return self.space.linear_combination(tuple(c))

    def representatives(self):
        f = self.space.field
        one = f.one()
        out = []
        for k in range(self.dim):
            qc = tuple(one if i == k else f.zero() for i in range(self.dim))
            out.append(self.representative(qc))
        return out
