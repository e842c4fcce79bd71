import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltlab.linalg import (
    GF,
    QQ,
    FieldSpec,
    LinAlgError,
    LinearQuotient,
    Mat,
    SubspaceBasis,
    kernel_image,
    kernel_vectors,
    rref_rank,
    solve_right,
    subspace_ops,
)

F2 = GF(2)
F3 = GF(3)


def mat(field, rows):
    return Mat.from_rows(field, rows)


def test_field_spec_validation():
    with pytest.raises(LinAlgError):
        FieldSpec("Fp", 4)
    with pytest.raises(LinAlgError):
        FieldSpec("Fp", 1)
    with pytest.raises(LinAlgError):
        FieldSpec("R")
    assert GF(2).p == 2
    assert QQ.kind == "Q"


def test_scalar_roundtrip():
    assert QQ.format_scalar(QQ.parse_scalar("-3/6")) == "-1/2"
    assert QQ.format_scalar(QQ.parse_scalar("4/2")) == "2"
    assert F3.parse_scalar("5") == 2
    assert F3.format_scalar(F3.parse_scalar("1/2")) == "2"


def test_rref_identity_and_zero():
    eye = Mat.identity(QQ, 2)
    red, rank, pivots = rref_rank(eye)
    assert red == eye and rank == 2 and pivots == [0, 1]

    z = Mat.zeros(QQ, 3, 2)
    red, rank, pivots = rref_rank(z)
    assert red == z and rank == 0 and pivots == []


def test_rref_rank_one():
    # hand row-reduction: [[1,2],[2,4]] -> [[1,2],[0,0]]
    m = mat(QQ, [[1, 2], [2, 4]])
    red, rank, pivots = rref_rank(m)
    assert rank == 1
    assert pivots == [0]
    assert red == mat(QQ, [[1, 2], [0, 0]])


def test_kernel_image_identity_zero():
    eye = Mat.identity(QQ, 3)
    ker, img = kernel_image(eye)
    assert ker.dim == 0 and img.dim == 3

    z = Mat.zeros(QQ, 2, 3)
    ker, img = kernel_image(z)
    assert ker.dim == 3 and img.dim == 0


def test_kernel_f2_enumeration():
    m = mat(F2, [[1, 1], [1, 1]])
    ker, img = kernel_image(m)
    assert ker.dim == 1
    assert ker.vectors[0] == (1, 1)
    # oracle: all four vectors of F_2^2
    members = [v for v in itertools.product(range(2), repeat=2) if m.apply(v) == (0, 0)]
    assert len(members) == 2 ** ker.dim


def test_subspace_canonical_and_ops():
    a = SubspaceBasis.from_vectors(F2, 3, [(1, 0, 0), (0, 1, 0)])
    b = SubspaceBasis.from_vectors(F2, 3, [(0, 1, 0), (0, 0, 1)])
    inter = a.intersect(b)
    assert inter.vectors == ((0, 1, 0),)
    assert a.intersect(a) == a
    total = a.add(b)
    assert total.dim == 3
    assert a.dim + b.dim == inter.dim + total.dim


def test_preimage_zero_map():
    z = Mat.zeros(QQ, 2, 3)
    s = SubspaceBasis.from_vectors(QQ, 2, [(1, 0)])
    pre = s.preimage(z)
    assert pre.dim == 3


def test_subspace_ops_dispatch():
    a = SubspaceBasis.from_vectors(QQ, 2, [(1, 0)])
    b = SubspaceBasis.from_vectors(QQ, 2, [(0, 1)])
    assert subspace_ops(a, b, "Sum").dim == 2
    assert subspace_ops(a, b, "Intersect").dim == 0
    assert subspace_ops(a, a, "Contains") is True
    reps, project = subspace_ops(a, op="Quotient")
    assert len(reps) == 1 and project((5, 7)) == (7,)


def test_solve_right_deterministic():
    a = mat(QQ, [[1, 1, 0], [0, 0, 1]])
    x = solve_right(a, (3, 5))
    assert x == (3, 0, 5)  # free variable pinned to zero
    assert solve_right(mat(QQ, [[1], [1]]), (1, 2)) is None


def test_linear_quotient_representatives():
    space = SubspaceBasis.from_vectors(QQ, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    sub = SubspaceBasis.from_vectors(QQ, 3, [(1, 1, 0)])
    q = LinearQuotient(space, sub)
    assert q.dim == 2
    v = (2, 3, 4)
    red = q.reduce(v)
    assert q.qcoords(v) == q.qcoords(red)
    # adding a sub vector does not change the class
    shifted = tuple(x + y for x, y in zip(v, (5, 5, 0)))
    assert q.qcoords(shifted) == q.qcoords(v)


# ---------------------------------------------------------------------------
# property tests


def scalars(field):
    if field.kind == "Q":
        return st.builds(
            QQ.parse_scalar,
            st.integers(-8, 8).flatmap(
                lambda n: st.integers(1, 4).map(lambda d: f"{n}/{d}")
            ),
        )
    return st.integers(min_value=0, max_value=field.p - 1)


def matrices(field, max_dim=4):
    def build(shape):
        r, c = shape
        return st.lists(
            st.lists(scalars(field), min_size=c, max_size=c),
            min_size=r, max_size=r,
        ).map(lambda rows: Mat.from_rows(field, rows) if r else Mat.zeros(field, 0, c))
    return st.tuples(st.integers(1, max_dim), st.integers(1, max_dim)).flatmap(build)


@settings(max_examples=60, deadline=None)
@given(matrices(QQ))
def test_rref_is_idempotent(m):
    red, _, _ = rref_rank(m)
    red2, _, _ = rref_rank(red)
    assert red == red2


@settings(max_examples=60, deadline=None)
@given(st.one_of(matrices(QQ), matrices(F2), matrices(F3)))
def test_rank_nullity(m):
    ker, img = kernel_image(m)
    assert ker.dim + img.dim == m.cols
    for v in ker.vectors:
        assert all(x == 0 for x in m.apply(v))


@settings(max_examples=60, deadline=None)
@given(matrices(QQ, 3), st.randoms(use_true_random=False))
def test_subspace_canonical_form(m, rnd):
    rows = [tuple(r) for r in m.entries]
    s1 = SubspaceBasis.from_vectors(QQ, m.cols, rows)
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    # add random combinations of existing rows: same span, same storage
    if shuffled:
        extra = tuple(QQ.add(a, b) for a, b in zip(shuffled[0], shuffled[-1]))
        shuffled.append(extra)
    s2 = SubspaceBasis.from_vectors(QQ, m.cols, shuffled)
    assert s1 == s2


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 3), st.integers(1, 3), st.data())
def test_kernel_agrees_with_enumeration_small_fields(p, r, c, data):
    field = GF(p)
    m = data.draw(st.lists(
        st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
        min_size=r, max_size=r).map(lambda rows: Mat.from_rows(field, rows)))
    ker, img = kernel_image(m)
    count = sum(
        1 for v in itertools.product(range(p), repeat=c)
        if all(x == 0 for x in m.apply(v))
    )
    assert count == p ** ker.dim
    image_count = len({m.apply(v) for v in itertools.product(range(p), repeat=c)})
    assert image_count == p ** img.dim
