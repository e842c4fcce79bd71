"""Path-algebra quotients with a verified nilpotency bound, and the generic
structure-constant algebra container used for all endomorphism-style rings.

The algebra product is written multiplicatively with paths composing in
function order: for paths p, q the product p*q is "traverse q, then p".
Consequently e_j * A * e_i is spanned by the paths from i to j, trivial paths
are orthogonal idempotents summing to 1, and left modules are the usual
covariant quiver representations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Mat, SubspaceBasis, vec_add, vec_scale, zero_vec
from .quiver import Path, QuiverError, RelationSet


class NilpotencyBoundExceeded(QuiverError):
    pass


_PATH_EXPLOSION_LIMIT = 200_000


@dataclass
class AlgebraReport:
    passed: bool
    failures: list

    def __bool__(self):
        return self.passed


class AlgebraWithBasis:
    """Finite-dimensional algebra given by basis, unit, structure constants.

    ``mult`` maps basis index pairs (i, j) to the coordinate vector of
    basis_i * basis_j; absent keys mean the product is zero.  ``block_labels``
    optionally tags each basis element with the hom-space it came from, and
    ``idempotent_hints`` optionally records an orthogonal decomposition of the
    unit used to seed idempotent searches.
    """

    def __init__(self, field, basis_labels, unit, mult,
                 block_labels=None, idempotent_hints=None, block_dims=None):
        self.field = field
        self.basis_labels = tuple(basis_labels)
        self.unit = tuple(unit)
        self.mult = dict(mult)
        self.block_labels = tuple(block_labels) if block_labels else None
        self.idempotent_hints = tuple(tuple(e) for e in idempotent_hints) if idempotent_hints else None
        self.block_dims = dict(block_dims) if block_dims else None

    @property
    def dim(self):
        return len(self.basis_labels)

    def zero(self):
        return zero_vec(self.field, self.dim)

    def basis_vector(self, i):
        f = self.field
        return tuple(f.one() if j == i else f.zero() for j in range(self.dim))

    def multiply(self, x, y):
        """Bilinear product of coordinate vectors."""
        if len(x) != self.dim or len(y) != self.dim:
            raise QuiverError("coordinate length mismatch")
        f = self.field
        acc = list(zero_vec(f, self.dim))
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                prod = self.mult.get((i, j))
                if prod is None:
                    continue
                c = f.mul(xi, yj)
                for k, pk in enumerate(prod):
                    if pk != 0:
                        acc[k] = f.add(acc[k], f.mul(c, pk))
        return tuple(acc)

    def left_mul_matrix(self, x):
        cols = [self.multiply(x, self.basis_vector(j)) for j in range(self.dim)]
        return Mat(self.field, self.dim, self.dim, tuple(zip(*cols)) if cols else ())

    def right_mul_matrix(self, x):
        cols = [self.multiply(self.basis_vector(j), x) for j in range(self.dim)]
        return Mat(self.field, self.dim, self.dim, tuple(zip(*cols)) if cols else ())

    def validate(self, max_failures=20):
        """Exhaustive unit and associativity check over basis triples."""
        failures = []
        for i in range(self.dim):
            b = self.basis_vector(i)
            if self.multiply(self.unit, b) != b:
                failures.append({"kind": "left_unit", "index": i})
            if self.multiply(b, self.unit) != b:
                failures.append({"kind": "right_unit", "index": i})
        products = {}
        for i in range(self.dim):
            for j in range(self.dim):
                products[(i, j)] = self.mult.get((i, j), self.zero())
        for i in range(self.dim):
            bi = self.basis_vector(i)
            for j in range(self.dim):
                pij = products[(i, j)]
                for k in range(self.dim):
                    bk = self.basis_vector(k)
                    left = self.multiply(pij, bk)
                    right = self.multiply(bi, products[(j, k)])
                    if left != right:
                        failures.append({"kind": "associativity", "triple": (i, j, k)})
                        if len(failures) >= max_failures:
                            return AlgebraReport(False, failures)
        return AlgebraReport(not failures, failures)


def validate_algebra(a, max_failures=20):
    return a.validate(max_failures=max_failures)


def algebra_multiply(a, x, y):
    return a.multiply(x, y)


class PathAlgebra:
    """kQ/I with basis the path normal forms of length <= max_path_len.

    Construction enumerates paths degree by degree, spans the ideal by
    untruncated generator products, certifies that every path of length
    max_path_len + 1 already lies in that span (so the quotient is finite
    dimensional and the basis complete), and then reduces modulo the ideal's
    image in the truncated path space.
    """

    def __init__(self, quiver, relations, max_path_len, field):
        if max_path_len < 1:
            raise QuiverError("max_path_len must be >= 1")
        relations.validate()
        self.quiver = quiver
        self.relations = relations
        self.max_path_len = max_path_len
        self.field = field
        self._opposite = None
        self._build()

    # -- construction ------------------------------------------------------

    def _enumerate_paths(self, upto):
        by_len = [[Path.trivial(v) for v in self.quiver.vertices]]
        total = len(by_len[0])
        for _ in range(upto):
            nxt = []
            for p in by_len[-1]:
                for a in self.quiver.arrows_from(p.target):
                    nxt.append(Path(p.source, a.target, p.arrows + (a.name,)))
                    total += 1
                    if total > _PATH_EXPLOSION_LIMIT:
                        raise NilpotencyBoundExceeded(
                            "path count explodes before the nilpotency bound")
            by_len.append(nxt)
        return by_len

    def _build(self):
        L = self.max_path_len + 1
        by_len = self._enumerate_paths(L)
        self._paths_le = [p for ps in by_len[:self.max_path_len + 1] for p in ps]
        self._index_le = {p: i for i, p in enumerate(self._paths_le)}
        full_paths = [p for ps in by_len for p in ps]
        full_index = {p: i for i, p in enumerate(full_paths)}
        f = self.field

        cert_rows = []
        basis_rows = []
        for g in self.relations.generators:
            g_src = g[0][1].source
            g_tgt = g[0][1].target
            g_min = min(len(p) for _, p in g)
            g_max = max(len(p) for _, p in g)
            lefts = [u for u in full_paths if u.target == g_src]
            rights = [v for v in full_paths if v.source == g_tgt]
            for u in lefts:
                for v in rights:
                    pad = len(u) + len(v)
                    if pad + g_min > self.max_path_len and pad + g_max > L:
                        continue
                    if pad + g_max <= L:
                        row = [f.zero()] * len(full_paths)
                        for c, p in g:
                            w = u.then(p).then(v)
                            row[full_index[w]] = f.add(row[full_index[w]], c)
                        cert_rows.append(tuple(row))
                    if pad + g_min <= self.max_path_len:
                        row = [f.zero()] * len(self._paths_le)
                        for c, p in g:
                            w = u.then(p).then(v)
                            if len(w) <= self.max_path_len:
                                row[self._index_le[w]] = f.add(row[self._index_le[w]], c)
                        basis_rows.append(tuple(row))

        cert_span = SubspaceBasis.from_vectors(f, len(full_paths), cert_rows)
        for w in by_len[L]:
            probe = [f.zero()] * len(full_paths)
            probe[full_index[w]] = f.one()
            if not cert_span.contains_vector(tuple(probe)):
                raise NilpotencyBoundExceeded(
                    f"path {w.label()} of length {L} is not visibly in the "
                    f"relation ideal; raise max_path_len")

        self.ideal = SubspaceBasis.from_vectors(f, len(self._paths_le), basis_rows)
        pivots = set(self.ideal.pivots)
        self.basis_paths = [p for i, p in enumerate(self._paths_le) if i not in pivots]
        self._basis_pos = {p: k for k, p in enumerate(self.basis_paths)}
        if any(len(p) <= 1 for i, p in enumerate(self._paths_le) if i in pivots):
            raise QuiverError("admissible ideal meets degree <= 1; invalid relations")
        self._nonpivots = [i for i in range(len(self._paths_le)) if i not in pivots]
        self.algebra = self._structure_constants()

    def _reduce_path_vector(self, vec):
        """Coordinates over basis_paths of a vector over paths of length <= bound."""
        red = self.ideal.reduce(vec)
        return tuple(red[i] for i in self._nonpivots)

    def path_coords(self, path):
        """Normal form of a single path as coordinates over basis_paths."""
        f = self.field
        if len(path) > self.max_path_len:
            return zero_vec(f, len(self.basis_paths))
        vec = [f.zero()] * len(self._paths_le)
        vec[self._index_le[path]] = f.one()
        return self._reduce_path_vector(tuple(vec))

    def _structure_constants(self):
        f = self.field
        n = len(self.basis_paths)
        mult = {}
        for i, p in enumerate(self.basis_paths):
            for j, q in enumerate(self.basis_paths):
                w = q.then(p)  # function order: q first, then p
                if w is None or len(w) > self.max_path_len:
                    continue
                coords = self.path_coords(w)
                if any(c != 0 for c in coords):
                    mult[(i, j)] = coords
        unit = [f.zero()] * n
        hints = []
        for v in self.quiver.vertices:
            k = self._basis_pos[Path.trivial(v)]
            unit[k] = f.one()
            hint = [f.zero()] * n
            hint[k] = f.one()
            hints.append(tuple(hint))
        return AlgebraWithBasis(
            f, [p.label() for p in self.basis_paths], tuple(unit), mult,
            block_labels=[f"paths({p.source}->{p.target})" for p in self.basis_paths],
            idempotent_hints=hints)

    # -- path-level services used by representations ------------------------

    @property
    def dim(self):
        return len(self.basis_paths)

    def basis_paths_from(self, vertex):
        return [p for p in self.basis_paths if p.source == vertex]

    def basis_paths_between(self, source, target):
        return [p for p in self.basis_paths if p.source == source and p.target == target]

    def extend_by_arrow(self, path, arrow):
        """Normal form of path-then-arrow as a combination of basis paths."""
        if path.target != arrow.source:
            raise QuiverError("arrow does not extend path")
        w = Path(path.source, arrow.target, path.arrows + (arrow.name,))
        return self.path_coords(w)

    def opposite(self):
        if self._opposite is None:
            qop = self.quiver.opposite()
            self._opposite = PathAlgebra(
                qop, self.relations.opposite(qop), self.max_path_len, self.field)
        return self._opposite


def build_path_algebra(quiver, relations, max_path_len, field):
    if not isinstance(relations, RelationSet):
        relations = RelationSet.build(quiver, field, relations)
    return PathAlgebra(quiver, relations, max_path_len, field)
