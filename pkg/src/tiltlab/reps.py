"""Modules over a path-algebra quotient as quiver representations.

A representation assigns a vector space to each vertex and a matrix to each
arrow (source space -> target space, column convention).  A homomorphism is a
family of per-vertex matrices intertwining the arrow actions.  Morphisms
compose left to right: ``f.then(g)`` is "first f, then g", with per-vertex
matrices ``mat(g) @ mat(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Mat, SubspaceBasis, kernel_vectors, zero_vec
from .quiver import Path


class RepError(ValueError):
    pass


class ShapeMismatch(RepError):
    pass


class NotExact(RepError):
    pass


class NotInAddM(RepError):
    pass


class QuiverRep:
    """Finite-dimensional representation of the quiver of a PathAlgebra,
    satisfying its relations."""

    def __init__(self, algebra, dims, arrow_maps=None, name="", validate=True):
        self.algebra = algebra
        self.name = name
        q = algebra.quiver
        self.dims = {v: int(dims.get(v, 0)) for v in q.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise ShapeMismatch("negative dimension")
        arrow_maps = arrow_maps or {}
        self.arrow_maps = {}
        for a in q.arrows:
            mat = arrow_maps.get(a.name)
            shape = (self.dims[a.target], self.dims[a.source])
            if mat is None or (mat.is_zero() and (mat.rows, mat.cols) != shape):
                mat = Mat.zeros(algebra.field, *shape)
            if (mat.rows, mat.cols) != shape:
                raise ShapeMismatch(
                    f"arrow {a.name} map has shape {(mat.rows, mat.cols)}, wants {shape}")
            self.arrow_maps[a.name] = mat
        if validate:
            report = self.validate()
            if not report["ok"]:
                raise RepError(f"invalid representation {name!r}: {report}")

    # -- structure ----------------------------------------------------------

    @property
    def field(self):
        return self.algebra.field

    @property
    def quiver(self):
        return self.algebra.quiver

    @property
    def total_dim(self):
        return sum(self.dims.values())

    def is_zero(self):
        return self.total_dim == 0

    def dim_vector(self):
        return tuple(self.dims[v] for v in self.quiver.vertices)

    def validate(self):
        """Shape check plus vanishing of every relation generator."""
        failures = []
        for a in self.quiver.arrows:
            m = self.arrow_maps[a.name]
            if (m.rows, m.cols) != (self.dims[a.target], self.dims[a.source]):
                failures.append({"kind": "shape", "arrow": a.name})
        if not failures:
            for gi, g in enumerate(self.algebra.relations.generators):
                src = g[0][1].source
                tgt = g[0][1].target
                acc = Mat.zeros(self.field, self.dims[tgt], self.dims[src])
                for c, p in g:
                    acc = acc.add(self.path_matrix(p).scale(c))
                if not acc.is_zero():
                    failures.append({"kind": "relation", "index": gi,
                                     "paths": [p.label() for _, p in g]})
        return {"ok": not failures, "failures": failures}

    def path_matrix(self, path):
        """Evaluate a path: apply its arrows in traversal order."""
        mat = Mat.identity(self.field, self.dims[path.source])
        for a in path.arrows:
            mat = self.arrow_maps[a].mul(mat)
        return mat

    def apply_path(self, path, vec):
        return self.path_matrix(path).apply(vec)

    def same_presentation(self, other):
        return (self.dims == other.dims
                and all(self.arrow_maps[a.name] == other.arrow_maps[a.name]
                        for a in self.quiver.arrows))

    def __repr__(self):
        return f"QuiverRep({self.name or 'unnamed'}, dims={self.dim_vector()})"


def validate_rep(m):
    return m.validate()


def zero_rep(algebra):
    return QuiverRep(algebra, {}, name="0", validate=False)


def direct_sum(algebra, summands, name=""):
    """Direct sum with canonical injections and projections."""
    field = algebra.field
    q = algebra.quiver
    dims = {v: sum(s.dims[v] for s in summands) for v in q.vertices}
    arrow_maps = {}
    for a in q.arrows:
        arrow_maps[a.name] = Mat.block_diag(field, [s.arrow_maps[a.name] for s in summands])
    total = QuiverRep(algebra, dims, arrow_maps, name=name or "+".join(s.name for s in summands),
                      validate=False)
    injections, projections = [], []
    offsets = {v: 0 for v in q.vertices}
    for s in summands:
        inj, proj = {}, {}
        for v in q.vertices:
            n, k, off = dims[v], s.dims[v], offsets[v]
            zero, one = field.zero(), field.one()
            inj[v] = Mat(field, n, k, tuple(
                tuple(one if (i == off + j) else zero for j in range(k)) for i in range(n)))
            proj[v] = Mat(field, k, n, tuple(
                tuple(one if (j == off + i) else zero for j in range(n)) for i in range(k)))
        injections.append(ModuleMap(s, total, inj, validate=False))
        projections.append(ModuleMap(total, s, proj, validate=False))
        for v in q.vertices:
            offsets[v] += s.dims[v]
    return total, injections, projections


class ModuleMap:
    """Homomorphism of representations: per-vertex matrices intertwining the
    arrow actions."""

    def __init__(self, source, target, vertex_maps, validate=True):
        if source.algebra is not target.algebra:
            raise ShapeMismatch("maps must stay over one algebra")
        self.source = source
        self.target = target
        self.vertex_maps = {}
        for v in source.quiver.vertices:
            m = vertex_maps.get(v)
            if m is None:
                m = Mat.zeros(source.field, target.dims[v], source.dims[v])
            if (m.rows, m.cols) != (target.dims[v], source.dims[v]):
                raise ShapeMismatch(f"vertex map at {v} has wrong shape")
            self.vertex_maps[v] = m
        if validate and not self.intertwines():
            raise RepError("vertex maps do not intertwine the arrow actions")

    @property
    def field(self):
        return self.source.field

    def intertwines(self):
        for a in self.source.quiver.arrows:
            lhs = self.target.arrow_maps[a.name].mul(self.vertex_maps[a.source])
            rhs = self.vertex_maps[a.target].mul(self.source.arrow_maps[a.name])
            if lhs != rhs:
                return False
        return True

    def then(self, other):
        """Composition "self then other"."""
        if self.target is not other.source:
            raise ShapeMismatch("composition endpoint mismatch")
        maps = {v: other.vertex_maps[v].mul(self.vertex_maps[v])
                for v in self.source.quiver.vertices}
        return ModuleMap(self.source, other.target, maps, validate=False)

    def add(self, other):
        maps = {v: self.vertex_maps[v].add(other.vertex_maps[v])
                for v in self.source.quiver.vertices}
        return ModuleMap(self.source, self.target, maps, validate=False)

    def sub(self, other):
        maps = {v: self.vertex_maps[v].sub(other.vertex_maps[v])
                for v in self.source.quiver.vertices}
        return ModuleMap(self.source, self.target, maps, validate=False)

    def scale(self, c):
        maps = {v: self.vertex_maps[v].scale(c) for v in self.source.quiver.vertices}
        return ModuleMap(self.source, self.target, maps, validate=False)

    def is_zero(self):
        return all(m.is_zero() for m in self.vertex_maps.values())

    def flatten(self):
        out = []
        for v in self.source.quiver.vertices:
            for row in self.vertex_maps[v].entries:
                out.extend(row)
        return tuple(out)

    @staticmethod
    def identity(rep):
        return ModuleMap(rep, rep,
                         {v: Mat.identity(rep.field, rep.dims[v]) for v in rep.quiver.vertices},
                         validate=False)

    @staticmethod
    def zero_map(source, target):
        return ModuleMap(source, target, {}, validate=False)

    @staticmethod
    def unflatten(source, target, flat):
        maps = {}
        pos = 0
        for v in source.quiver.vertices:
            r, c = target.dims[v], source.dims[v]
            rows = []
            for _ in range(r):
                rows.append(tuple(flat[pos:pos + c]))
                pos += c
            maps[v] = Mat(source.field, r, c, tuple(rows))
        return ModuleMap(source, target, maps, validate=False)

    def __repr__(self):
        return f"ModuleMap({self.source.name}->{self.target.name})"


class HomSpace:
    """Solution space of the intertwining equations, with coordinates.

    The flat variable order is fixed (vertices in quiver order, row-major per
    vertex), so bases and coordinates are reproducible.
    """

    def __init__(self, m, n):
        if m.algebra is not n.algebra:
            raise ShapeMismatch("hom between modules over different algebras")
        self.source = m
        self.target = n
        field = m.field
        q = m.quiver
        nvars = sum(n.dims[v] * m.dims[v] for v in q.vertices)
        offsets = {}
        pos = 0
        for v in q.vertices:
            offsets[v] = pos
            pos += n.dims[v] * m.dims[v]

        rows = []
        zero = field.zero()
        for a in q.arrows:
            s, t = a.source, a.target
            ms, nt = m.dims[s], n.dims[t]
            A = m.arrow_maps[a.name]   # m_s -> m_t
            B = n.arrow_maps[a.name]   # n_s -> n_t
            # equation: B @ F_s - F_t @ A = 0, entry (i, j) for i < nt, j < ms
            for i in range(nt):
                for j in range(ms):
                    row = [zero] * nvars
                    for k in range(n.dims[s]):
                        if B.entries[i][k] != 0:
                            row[offsets[s] + k * m.dims[s] + j] = B.entries[i][k]
                    for k in range(m.dims[t]):
                        if A.entries[k][j] != 0:
                            idx = offsets[t] + i * m.dims[t] + k
                            row[idx] = field.sub(row[idx], A.entries[k][j])
                    rows.append(tuple(row))
        if rows:
            eq = Mat(field, len(rows), nvars, tuple(rows))
            vecs = kernel_vectors(eq)
        else:
            vecs = [tuple(field.one() if i == k else zero for i in range(nvars))
                    for k in range(nvars)]
        self.flat_space = SubspaceBasis.from_vectors(field, nvars, vecs)
        self.basis = [ModuleMap.unflatten(m, n, v) for v in self.flat_space.vectors]

    @property
    def dim(self):
        return self.flat_space.dim

    def coords_of(self, module_map):
        return self.flat_space.coords_of(module_map.flatten())

    def map_from_coords(self, coords):
        return ModuleMap.unflatten(self.source, self.target,
                                   self.flat_space.linear_combination(coords))


def hom_basis(m, n):
    return HomSpace(m, n).basis


# ---------------------------------------------------------------------------
# kernels, cokernels, images


def kernel_map(f):
    """Kernel subrepresentation with its inclusion."""
    alg = f.source.algebra
    field = f.field
    q = f.source.quiver
    bases = {v: SubspaceBasis.from_vectors(field, f.source.dims[v],
                                           kernel_vectors(f.vertex_maps[v]))
             for v in q.vertices}
    dims = {v: bases[v].dim for v in q.vertices}
    arrow_maps = {}
    for a in q.arrows:
        cols = []
        for u in bases[a.source].vectors:
            w = f.source.arrow_maps[a.name].apply(u)
            cols.append(bases[a.target].coords_of(w))
        arrow_maps[a.name] = Mat(field, dims[a.target], dims[a.source],
                                 tuple(zip(*cols)) if cols else tuple(() for _ in range(dims[a.target])))
    ker = QuiverRep(alg, dims, arrow_maps, name=f"ker({f.source.name})", validate=False)
    incl = ModuleMap(ker, f.source,
                     {v: Mat(field, f.source.dims[v], dims[v],
                             tuple(zip(*bases[v].vectors)) if bases[v].vectors
                             else tuple(() for _ in range(f.source.dims[v])))
                      for v in q.vertices}, validate=False)
    return ker, incl


def cokernel_map(f):
    """Cokernel with its projection."""
    alg = f.target.algebra
    field = f.field
    q = f.target.quiver
    images = {v: SubspaceBasis.from_vectors(
        field, f.target.dims[v],
        [f.vertex_maps[v].col(j) for j in range(f.vertex_maps[v].cols)])
        for v in q.vertices}
    reps, projs = {}, {}
    for v in q.vertices:
        r, p = images[v].quotient()
        reps[v], projs[v] = r, p
    dims = {v: len(reps[v]) for v in q.vertices}
    proj_mats = {}
    for v in q.vertices:
        n = f.target.dims[v]
        cols = [projs[v](tuple(field.one() if i == j else field.zero() for i in range(n)))
                for j in range(n)]
        proj_mats[v] = Mat(field, dims[v], n,
                           tuple(zip(*cols)) if cols else tuple(() for _ in range(dims[v])))
    arrow_maps = {}
    for a in q.arrows:
        cols = []
        for u in reps[a.source]:
            w = f.target.arrow_maps[a.name].apply(u)
            cols.append(projs[a.target](w))
        arrow_maps[a.name] = Mat(field, dims[a.target], dims[a.source],
                                 tuple(zip(*cols)) if cols else tuple(() for _ in range(dims[a.target])))
    coker = QuiverRep(alg, dims, arrow_maps, name=f"coker({f.target.name})", validate=False)
    proj = ModuleMap(f.target, coker, proj_mats, validate=False)
    return coker, proj


def image_rep(f):
    """Image subrepresentation of the target, with its inclusion."""
    alg = f.target.algebra
    field = f.field
    q = f.target.quiver
    bases = {v: SubspaceBasis.from_vectors(
        field, f.target.dims[v],
        [f.vertex_maps[v].col(j) for j in range(f.vertex_maps[v].cols)])
        for v in q.vertices}
    dims = {v: bases[v].dim for v in q.vertices}
    arrow_maps = {}
    for a in q.arrows:
        cols = []
        for u in bases[a.source].vectors:
            w = f.target.arrow_maps[a.name].apply(u)
            cols.append(bases[a.target].coords_of(w))
        arrow_maps[a.name] = Mat(field, dims[a.target], dims[a.source],
                                 tuple(zip(*cols)) if cols else tuple(() for _ in range(dims[a.target])))
    img = QuiverRep(alg, dims, arrow_maps, name=f"im({f.source.name})", validate=False)
    incl = ModuleMap(img, f.target,
                     {v: Mat(field, f.target.dims[v], dims[v],
                             tuple(zip(*bases[v].vectors)) if bases[v].vectors
                             else tuple(() for _ in range(f.target.dims[v])))
                      for v in q.vertices}, validate=False)
    return img, incl


def kernel_cokernel(f):
    ker, incl = kernel_map(f)
    coker, proj = cokernel_map(f)
    return ker, incl, coker, proj


# ---------------------------------------------------------------------------
# standard modules


def simple_module(algebra, vertex):
    return QuiverRep(algebra, {vertex: 1}, name=f"S({vertex})", validate=False)


def projective_module(algebra, vertex):
    """P(vertex): basis the path normal forms starting at vertex."""
    q = algebra.quiver
    paths = algebra.basis_paths_from(vertex)
    at = {v: [p for p in paths if p.target == v] for v in q.vertices}
    pos = {p: algebra.basis_paths.index(p) for p in paths}
    dims = {v: len(at[v]) for v in q.vertices}
    field = algebra.field
    arrow_maps = {}
    for a in q.arrows:
        cols = []
        for p in at[a.source]:
            coords = algebra.extend_by_arrow(p, a)
            cols.append(tuple(coords[pos[qq]] for qq in at[a.target]))
        arrow_maps[a.name] = Mat(field, dims[a.target], dims[a.source],
                                 tuple(zip(*cols)) if cols else tuple(() for _ in range(dims[a.target])))
    return QuiverRep(algebra, dims, arrow_maps, name=f"P({vertex})", validate=False)


def injective_module(algebra, vertex):
    """I(vertex): vector-space dual of the opposite projective."""
    op = algebra.opposite()
    p_op = projective_module(op, vertex)
    dims = dict(p_op.dims)
    arrow_maps = {}
    for a in algebra.quiver.arrows:
        arrow_maps[a.name] = p_op.arrow_maps[a.name].transpose()
    return QuiverRep(algebra, dims, arrow_maps, name=f"I({vertex})", validate=False)


def standard_modules(algebra):
    """Families P(i), I(i), S(i) keyed by vertex."""
    q = algebra.quiver
    return ({v: projective_module(algebra, v) for v in q.vertices},
            {v: injective_module(algebra, v) for v in q.vertices},
            {v: simple_module(algebra, v) for v in q.vertices})


def radical_subspaces(m):
    """rad(M) at each vertex: the span of all incoming arrow images."""
    field = m.field
    out = {}
    for v in m.quiver.vertices:
        vecs = []
        for a in m.quiver.arrows_into(v):
            mat = m.arrow_maps[a.name]
            vecs.extend(mat.col(j) for j in range(mat.cols))
        out[v] = SubspaceBasis.from_vectors(field, m.dims[v], vecs)
    return out


def projective_cover_syzygy(m):
    """Minimal projective cover P ->> m and its syzygy kernel.

    Cover multiplicities read off top(m) = m / rad(m); the epi sends the
    canonical generator of each P(i)-copy to a chosen representative of
    top(m) at i, so the kernel is superfluous by construction.
    """
    alg = m.algebra
    field = m.field
    q = m.quiver
    rad = radical_subspaces(m)
    pieces = []
    for v in q.vertices:
        reps, _ = rad[v].quotient()
        for g in reps:
            pieces.append((v, g))
    if not pieces:
        p = zero_rep(alg)
        epi = ModuleMap(p, m, {}, validate=False)
        omega, incl = kernel_map(epi)
        return p, epi, omega, incl
    summands = [projective_module(alg, v) for v, _ in pieces]
    total, injections, _ = direct_sum(alg, summands, name=f"P({m.name})")
    # epi on each copy: basis path p of P(i) goes to (path action on generator)
    vmaps = {v: [] for v in q.vertices}
    for (i, gen), summand in zip(pieces, summands):
        paths = alg.basis_paths_from(i)
        at = {v: [p for p in paths if p.target == v] for v in q.vertices}
        for v in q.vertices:
            for p in at[v]:
                vmaps[v].append(m.apply_path(p, gen))
    epi_maps = {}
    for v in q.vertices:
        cols = vmaps[v]
        epi_maps[v] = Mat(field, m.dims[v], len(cols),
                          tuple(zip(*cols)) if cols else tuple(() for _ in range(m.dims[v])))
    epi = ModuleMap(total, m, epi_maps, validate=False)
    if not epi.intertwines():
        raise RepError("projective cover construction failed to intertwine")
    from .linalg import rref_rank
    for v in q.vertices:
        _, rank, _ = rref_rank(epi_maps[v])
        if rank != m.dims[v]:
            raise RepError("projective cover is not surjective; corrupt input")
    omega, incl = kernel_map(epi)
    omega.name = f"Omega({m.name})"
    return total, epi, omega, incl


# ---------------------------------------------------------------------------
# exact triples


@dataclass
class AddWitness:
    """Declared decomposition of M1 over named summands of M, with an
    optional per-vertex base change T: (sum of summands) -> M1."""

    summand_names: tuple
    summands: tuple
    base_change: dict | None = None


class ExactTriple:
    """0 -> X --alpha--> M1 --beta--> Y -> 0 with an add(M) witness."""

    def __init__(self, X, M1, Y, alpha, beta, witness=None):
        self.X = X
        self.M1 = M1
        self.Y = Y
        self.alpha = alpha
        self.beta = beta
        self.witness = witness

    def algebra(self):
        return self.X.algebra


def check_exact_triple(t):
    """Structural report: exactness per vertex plus the add(M) witness."""
    from .linalg import rref_rank
    errors = []
    if t.alpha.source is not t.X or t.alpha.target is not t.M1:
        errors.append({"code": "ShapeMismatch", "detail": "alpha endpoints"})
    if t.beta.source is not t.M1 or t.beta.target is not t.Y:
        errors.append({"code": "ShapeMismatch", "detail": "beta endpoints"})
    if errors:
        return {"ok": False, "errors": errors}
    if not t.alpha.intertwines():
        errors.append({"code": "NotExact", "detail": "alpha is not a module map"})
    if not t.beta.intertwines():
        errors.append({"code": "NotExact", "detail": "beta is not a module map"})
    for v in t.X.quiver.vertices:
        av, bv = t.alpha.vertex_maps[v], t.beta.vertex_maps[v]
        _, rank_a, _ = rref_rank(av)
        if rank_a != t.X.dims[v]:
            errors.append({"code": "NotExact", "detail": f"alpha not injective at {v}"})
        _, rank_b, _ = rref_rank(bv)
        if rank_b != t.Y.dims[v]:
            errors.append({"code": "NotExact", "detail": f"beta not surjective at {v}"})
        if not bv.mul(av).is_zero():
            errors.append({"code": "NotExact", "detail": f"alpha;beta nonzero at {v}"})
        img = SubspaceBasis.from_vectors(t.X.field, t.M1.dims[v],
                                         [av.col(j) for j in range(av.cols)])
        ker = SubspaceBasis.from_vectors(t.X.field, t.M1.dims[v], kernel_vectors(bv))
        if img != ker:
            errors.append({"code": "NotExact", "detail": f"im(alpha) != ker(beta) at {v}"})
    if t.witness is not None:
        w = t.witness
        total, _, _ = direct_sum(t.M1.algebra, list(w.summands)) if w.summands else (zero_rep(t.M1.algebra), [], [])
        if w.base_change is None:
            if not t.M1.same_presentation(total):
                errors.append({"code": "NotInAddM",
                               "detail": "M1 is not structurally the declared sum"})
        else:
            ok = True
            for v in t.X.quiver.vertices:
                T = w.base_change.get(v)
                if T is None or T.rows != t.M1.dims[v] or T.cols != total.dims[v]:
                    ok = False
                    break
                _, rank, _ = rref_rank(T)
                if rank != T.rows or T.rows != T.cols:
                    ok = False
                    break
            if ok:
                for a in t.X.quiver.arrows:
                    lhs = t.M1.arrow_maps[a.name].mul(w.base_change[a.source])
                    rhs = w.base_change[a.target].mul(total.arrow_maps[a.name])
                    if lhs != rhs:
                        ok = False
                        break
            if not ok:
                errors.append({"code": "NotInAddM",
                               "detail": "declared base change is not an isomorphism"})
    return {"ok": not errors, "errors": errors}


def split_triple(X, Y):
    """The canonical split sequence 0 -> X -> X + Y -> Y -> 0."""
    total, injections, projections = direct_sum(X.algebra, [X, Y])
    return ExactTriple(X, total, Y, injections[0], projections[1])


def approximation_check(t, m):
    """Are Hom(M1, m) -> Hom(X, m) and Hom(m, M1) -> Hom(m, Y) onto?"""
    field = t.X.field
    hm1_m = HomSpace(t.M1, m)
    hx_m = HomSpace(t.X, m)
    vecs = [hx_m.coords_of(t.alpha.then(h)) for h in hm1_m.basis]
    left_rank = SubspaceBasis.from_vectors(field, hx_m.dim, vecs).dim
    left_ok = left_rank == hx_m.dim

    hm_m1 = HomSpace(m, t.M1)
    hm_y = HomSpace(m, t.Y)
    vecs = [hm_y.coords_of(h.then(t.beta)) for h in hm_m1.basis]
    right_rank = SubspaceBasis.from_vectors(field, hm_y.dim, vecs).dim
    right_ok = right_rank == hm_y.dim
    return left_ok, right_ok
