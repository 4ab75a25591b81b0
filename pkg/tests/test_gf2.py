from __future__ import annotations

import numpy as np
import pytest

from swlab.gf2 import (
    BitMatrix,
    EchelonBasis,
    null_space,
    pack_int,
    rank,
    solve,
    unpack_int,
)


def random_matrix(rng, rows, cols, density=0.4):
    mask = rng.random((rows, cols)) < density
    entries = [(int(i), int(j)) for i, j in zip(*np.nonzero(mask))]
    return BitMatrix.from_entries(rows, cols, entries)


def test_pack_unpack_roundtrip():
    rng = np.random.default_rng(0)
    for _ in range(50):
        nbits = int(rng.integers(1, 300))
        x = int(rng.integers(0, 2 ** 62)) % (1 << nbits)
        assert unpack_int(pack_int(x, nbits)) == x


def test_from_entries_and_get():
    # entries are positions of ones; repeats are idempotent
    m = BitMatrix.from_entries(3, 4, [(0, 1), (2, 3), (0, 1)])
    assert m.get(0, 1) == 1
    assert m.get(2, 3) == 1
    assert m.get(1, 0) == 0
    assert m.nnz == 2


def test_identity_and_matmul():
    rng = np.random.default_rng(1)
    a = random_matrix(rng, 17, 23)
    eye = BitMatrix.identity(17)
    assert eye.matmul(a) == a
    assert a.matmul(BitMatrix.identity(23)) == a


def random_bits(rng, nbits):
    return int.from_bytes(rng.bytes((nbits + 7) // 8), "little") % (1 << nbits)


def test_transpose_involution_and_matvec_t():
    rng = np.random.default_rng(2)
    a = random_matrix(rng, 13, 31)
    assert a.transpose().transpose() == a
    for _ in range(20):
        y = random_bits(rng, 13)
        assert a.transpose().matvec(y) == a.matvec_t(y)


def test_matvec_matches_dense_arithmetic():
    rng = np.random.default_rng(3)
    rows, cols = 9, 14
    a = random_matrix(rng, rows, cols)
    dense = np.array([[a.get(i, j) for j in range(cols)]
                      for i in range(rows)], dtype=np.int64)
    for _ in range(25):
        x = random_bits(rng, cols)
        xv = np.array([(x >> j) & 1 for j in range(cols)], dtype=np.int64)
        want = (dense @ xv) % 2
        got = a.matvec(x)
        assert [(got >> i) & 1 for i in range(rows)] == list(want)


def test_matmul_associative_random():
    rng = np.random.default_rng(4)
    a = random_matrix(rng, 8, 12)
    b = random_matrix(rng, 12, 9)
    c = random_matrix(rng, 9, 15)
    assert a.matmul(b).matmul(c) == a.matmul(b.matmul(c))


def test_rank_of_identity_and_zero():
    assert BitMatrix.identity(40).rank() == 40
    assert BitMatrix.zeros(7, 11).rank() == 0


def test_rank_invariant_under_transpose():
    rng = np.random.default_rng(5)
    for _ in range(10):
        a = random_matrix(rng, int(rng.integers(1, 40)),
                          int(rng.integers(1, 40)))
        assert a.rank() == a.transpose().rank()
        assert rank(a) == a.rank()


def test_solve_reconstructs_known_solution():
    rng = np.random.default_rng(6)
    for _ in range(30):
        a = random_matrix(rng, 20, 16)
        x = random_bits(rng, 16)
        b = a.matvec(x)
        got = a.solve(b)
        assert got is not None
        assert a.matvec(got) == b
        assert solve(a, b) == got


def test_solve_detects_inconsistency():
    # x + y = 0 and x + y = 1 cannot both hold
    a = BitMatrix.from_entries(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    assert a.solve(0b10) is None


def test_null_space_annihilates():
    rng = np.random.default_rng(7)
    a = random_matrix(rng, 14, 22)
    basis = a.null_space()
    assert len(basis) == 22 - a.rank()
    for v in basis:
        assert a.matvec(v) == 0
    assert null_space(a) == basis


def test_null_space_basis_independent():
    rng = np.random.default_rng(8)
    a = random_matrix(rng, 14, 22)
    seen = []
    for v in a.null_space():
        row = BitMatrix.from_row_ints(seen + [v], 22)
        assert row.rank() == len(seen) + 1
        seen.append(v)


def test_row_space_membership():
    rng = np.random.default_rng(9)
    a = random_matrix(rng, 12, 18)
    space = a.row_space()
    for i in range(12):
        assert space.contains(a.row_int(i))
    combo = a.row_int(0) ^ a.row_int(5) ^ a.row_int(11)
    assert space.contains(combo)


def test_column_space_is_transpose_row_space():
    rng = np.random.default_rng(10)
    a = random_matrix(rng, 15, 10)
    col = a.column_space()
    for _ in range(20):
        x = random_bits(rng, 10)
        assert col.contains(a.matvec(x))


def test_echelon_basis_reduce_idempotent():
    rng = np.random.default_rng(11)
    a = random_matrix(rng, 9, 30)
    space = a.row_space()
    for _ in range(40):
        v = random_bits(rng, 30)
        r = space.reduce(v)
        assert space.reduce(r) == r
        assert space.contains(v ^ r)


def test_rank_at_scale_is_fast():
    rng = np.random.default_rng(12)
    big = random_matrix(rng, 1024, 2048, density=0.02)
    assert 0 < big.rank() <= 1024


@pytest.mark.parametrize("rows,cols", [(1, 1), (1, 64), (64, 1), (65, 129)])
def test_word_boundary_shapes(rows, cols):
    rng = np.random.default_rng(13)
    a = random_matrix(rng, rows, cols, density=0.5)
    x = random_bits(rng, cols)
    assert a.transpose().transpose() == a
    assert a.transpose().matvec_t(x) == a.matvec(x)
