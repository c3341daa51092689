import random

import pytest
from hypothesis import given, settings, strategies as st

from commcoh.field import make_field
from commcoh.linalg import (
    ContainmentError,
    Matrix,
    SizeCapError,
    Subspace,
    entry_cap_override,
    image_basis,
    kernel_basis,
    quotient_basis,
    rank,
    row_space,
    solve,
)

GF2 = make_field(1)
GF4 = make_field(2)
GF8 = make_field(3)


def random_matrix(rng, f, nrows, ncols, density=0.5):
    rows = [
        [rng.choice(list(f.elements())) if rng.random() < density else 0 for _ in range(ncols)]
        for _ in range(nrows)
    ]
    return Matrix.from_rows(f, rows, ncols)


def random_binary_rows(rng, nrows, ncols):
    return [[rng.randrange(2) for _ in range(ncols)] for _ in range(nrows)]


# ------------------------------------------------------------------
# packed GF(2) path vs the generic path
# ------------------------------------------------------------------


def test_packed_vs_generic_rank_and_kernel():
    """A 0/1 matrix has the same rank over GF(2) and GF(4), and row reduction
    never leaves the prime subfield, so the two code paths must agree."""
    rng = random.Random(11)
    for trial in range(300):
        nrows = rng.randrange(1, 25)
        ncols = rng.randrange(1, 25)
        rows = random_binary_rows(rng, nrows, ncols)
        a2 = Matrix.from_rows(GF2, rows, ncols)
        a4 = Matrix.from_rows(GF4, rows, ncols)
        assert rank(a2) == rank(a4), trial
        k2 = kernel_basis(a2)
        k4 = kernel_basis(a4)
        assert k2.dim == k4.dim
        assert [tuple(v) for v in k2.basis] == [tuple(v) for v in k4.basis]
        assert ncols == rank(a2) + k2.dim  # rank plus nullity


def test_packed_vs_generic_product():
    rng = random.Random(12)
    for _ in range(100):
        n, k, m = rng.randrange(1, 12), rng.randrange(1, 12), rng.randrange(1, 12)
        arows = random_binary_rows(rng, n, k)
        brows = random_binary_rows(rng, k, m)
        p2 = Matrix.from_rows(GF2, arows, k).mul(Matrix.from_rows(GF2, brows, m))
        p4 = Matrix.from_rows(GF4, arows, k).mul(Matrix.from_rows(GF4, brows, m))
        assert p2.rows() == p4.rows()


def test_mul_against_direct_sum():
    rng = random.Random(13)
    for f in (GF2, GF8):
        for _ in range(40):
            n, k, m = rng.randrange(1, 8), rng.randrange(1, 8), rng.randrange(1, 8)
            a = random_matrix(rng, f, n, k)
            b = random_matrix(rng, f, k, m)
            prod = a.mul(b)
            for i in range(n):
                for j in range(m):
                    acc = 0
                    for t in range(k):
                        acc = f.add(acc, f.mul(a.entry(i, t), b.entry(t, j)))
                    assert prod.entry(i, j) == acc


def test_matrix_algebra_identities():
    rng = random.Random(14)
    for f in (GF2, GF4):
        a = random_matrix(rng, f, 9, 7)
        b = random_matrix(rng, f, 7, 5)
        assert a.mul(b).transpose() == b.transpose().mul(a.transpose())
        assert Matrix.identity(f, 9).mul(a) == a
        assert a.add(a).is_zero()
        vec = [rng.randrange(f.order) for _ in range(7)]
        assert a.mul_vec(vec) == a.mul(Matrix.from_rows(f, [[v] for v in vec], 1)).col(0)


# ------------------------------------------------------------------
# kernel, image, solve
# ------------------------------------------------------------------


def test_kernel_vectors_are_in_kernel():
    rng = random.Random(15)
    for f in (GF2, GF4):
        for _ in range(60):
            a = random_matrix(rng, f, rng.randrange(1, 15), rng.randrange(1, 15))
            ker = kernel_basis(a)
            for v in ker.basis:
                assert all(x == 0 for x in a.mul_vec(list(v)))
            assert ker.dim == a.ncols - rank(a)


def test_image_members_are_solvable():
    rng = random.Random(16)
    for f in (GF2, GF8):
        for _ in range(40):
            a = random_matrix(rng, f, rng.randrange(1, 12), rng.randrange(1, 12))
            img = image_basis(a)
            assert img.dim == rank(a)
            for v in img.basis:
                assert solve(a, list(v)) is not None


def test_solve_roundtrip_and_inconsistency():
    rng = random.Random(17)
    for f in (GF2, GF4):
        for _ in range(80):
            nrows, ncols = rng.randrange(1, 14), rng.randrange(1, 14)
            a = random_matrix(rng, f, nrows, ncols)
            x = [rng.randrange(f.order) for _ in range(ncols)]
            b = a.mul_vec(x)
            sol = solve(a, b)
            assert sol is not None
            assert a.mul_vec(sol) == b
            img = image_basis(a)
            if img.dim < nrows:
                # perturb b out of the image: add any vector not contained in it
                for j in range(nrows):
                    probe = list(b)
                    probe[j] = f.add(probe[j], 1)
                    if not img.contains(probe):
                        assert solve(a, probe) is None
                        break


def test_row_space_matches_image_of_transpose():
    rng = random.Random(18)
    a = random_matrix(rng, GF2, 10, 6)
    assert row_space(a) == image_basis(a.transpose())


# ------------------------------------------------------------------
# subspaces
# ------------------------------------------------------------------


def test_subspace_rref_is_canonical():
    rng = random.Random(19)
    for f in (GF2, GF4):
        for _ in range(40):
            dim = rng.randrange(1, 10)
            vecs = [[rng.randrange(f.order) for _ in range(dim)] for _ in range(6)]
            s1 = Subspace.from_vectors(f, vecs, dim)
            shuffled = vecs[:]
            rng.shuffle(shuffled)
            # also throw in sums of pairs; the span is unchanged
            shuffled.append([f.add(a, b) for a, b in zip(vecs[0], vecs[-1])])
            s2 = Subspace.from_vectors(f, shuffled, dim)
            assert s1 == s2
            assert s1.basis == s2.basis


def test_subspace_contains_and_coordinates():
    rng = random.Random(20)
    f = GF4
    vecs = [[rng.randrange(4) for _ in range(8)] for _ in range(4)]
    s = Subspace.from_vectors(f, vecs, 8)
    for _ in range(30):
        coeffs = [rng.randrange(4) for _ in range(s.dim)]
        v = [0] * 8
        for c, bvec in zip(coeffs, s.basis):
            v = [f.add(x, f.mul(c, y)) for x, y in zip(v, bvec)]
        assert s.contains(v)
        assert s.coordinates(v) == coeffs
    if s.dim < 8:
        outside = [1 if i == max(set(range(8)) - set(s.pivots)) else 0 for i in range(8)]
        assert not s.contains(outside)
        assert s.coordinates(outside) is None


def test_subspace_reduce_is_idempotent_and_kills_members():
    rng = random.Random(21)
    f = GF2
    vecs = [[rng.randrange(2) for _ in range(10)] for _ in range(5)]
    s = Subspace.from_vectors(f, vecs, 10)
    for v in vecs:
        assert all(x == 0 for x in s.reduce(v))
    w = [rng.randrange(2) for _ in range(10)]
    r = s.reduce(w)
    assert s.reduce(list(r)) == r
    assert s.contains([f.add(a, b) for a, b in zip(w, r)])


def test_quotient_basis_dimensions_and_containment():
    rng = random.Random(22)
    for f in (GF2, GF4):
        for _ in range(40):
            n = rng.randrange(2, 10)
            zvecs = [[rng.randrange(f.order) for _ in range(n)] for _ in range(n)]
            z = Subspace.from_vectors(f, zvecs, n)
            if z.dim == 0:
                continue
            # random subspace of z
            bvecs = []
            for _ in range(rng.randrange(0, z.dim + 1)):
                v = [0] * n
                for u in z.basis:
                    c = rng.randrange(f.order)
                    v = [f.add(x, f.mul(c, y)) for x, y in zip(v, u)]
                bvecs.append(v)
            b = Subspace.from_vectors(f, bvecs, n)
            reps = quotient_basis(z, b)
            assert len(reps) == z.dim - b.dim
            # reps extend a basis of b to a basis of z
            together = Subspace.from_vectors(f, [list(v) for v in reps] + [list(v) for v in b.basis], n)
            assert together == z


def test_quotient_basis_requires_containment():
    f = GF2
    z = Subspace.from_vectors(f, [[1, 0, 0], [0, 1, 0]], 3)
    b = Subspace.from_vectors(f, [[0, 0, 1]], 3)
    with pytest.raises(ContainmentError):
        quotient_basis(z, b)


def test_contains_subspace():
    f = GF2
    big = Subspace.from_vectors(f, [[1, 0, 0], [0, 1, 0]], 3)
    small = Subspace.from_vectors(f, [[1, 1, 0]], 3)
    other = Subspace.from_vectors(f, [[0, 0, 1]], 3)
    assert big.contains_subspace(small)
    assert not big.contains_subspace(other)


# ------------------------------------------------------------------
# size cap
# ------------------------------------------------------------------


def test_entry_cap_blocks_large_alloc():
    with entry_cap_override(100):
        with pytest.raises(SizeCapError):
            Matrix.zeros(GF2, 101, 1)
        Matrix.zeros(GF2, 10, 10)  # exactly at the cap is fine
    Matrix.zeros(GF2, 101, 1)  # restored afterwards


@settings(max_examples=60)
@given(st.integers(0, 2**30 - 1), st.integers(1, 6), st.integers(1, 6))
def test_solve_always_verifies(seed, nrows, ncols):
    rng = random.Random(seed)
    a = random_matrix(rng, GF2, nrows, ncols)
    b = [rng.randrange(2) for _ in range(nrows)]
    sol = solve(a, b)
    if sol is None:
        assert not image_basis(a).contains(b)
    else:
        assert a.mul_vec(sol) == b
