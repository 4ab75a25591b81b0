from __future__ import annotations

import math

import numpy as np
import pytest

from swlab.errors import DimensionOutOfRange, NotAFlagCell, NotPseudomanifold
from swlab.simplicial import Chain, build_complex
from swlab.subdivision import (
    FlagSimplex,
    barycentric_subdivide,
    flag_dual_cells,
    flag_partner,
    subdivision_chain_map,
)

S2_FACETS = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def sub_sphere():
    return barycentric_subdivide(build_complex(S2_FACETS))


def test_derived_counts():
    S = sub_sphere()
    base, derived = S.base, S.derived
    # one derived vertex per base simplex
    assert derived.n_simplices(0) == base.total_simplices()
    # top simplices are full flags: (n+1)! per facet
    assert derived.n_simplices(2) == base.n_simplices(2) * math.factorial(3)
    assert derived.euler_characteristic() == base.euler_characteristic()


def test_vertex_ids_cover_base_simplices():
    S = sub_sphere()
    assert set(S.vertex_id) == set(S.base.simplices())
    assert sorted(S.vertex_id.values()) == list(range(len(S.vertex_id)))


def test_flag_roundtrip():
    S = sub_sphere()
    for t in S.derived.skeleton(1):
        flag = S.flag_of(t)
        assert S.derived_index_of_flag(flag) == S.derived.index(t)
        assert flag.bottom == flag.chain[-1]
        assert flag.top == flag.chain[0]
    with pytest.raises(NotAFlagCell):
        S.flag_of((0, 999))


def test_flag_simplex_rejects_non_flags():
    with pytest.raises(NotAFlagCell):
        FlagSimplex(((0, 1), (2,)))  # (2,) is not a face of (0, 1)


def test_chain_map_commutes_with_boundary():
    S = sub_sphere()
    for d in (1, 2):
        lam_d = subdivision_chain_map(S, d)
        lam_prev = subdivision_chain_map(S, d - 1)
        del_base = S.base.boundary_matrix(d)
        del_derived = S.derived.boundary_matrix(d)
        assert del_derived.matmul(lam_d) == lam_prev.matmul(del_base)


def test_chain_map_of_fundamental_cycle_is_cycle():
    S = sub_sphere()
    pushed = Chain(S.derived, 2,
                   S.chain_map(2).matvec(Chain.all_ones(S.base, 2).bits))
    assert pushed.boundary().is_zero()
    # the subdivided fundamental cycle is the all-ones top chain
    assert pushed == Chain.all_ones(S.derived, 2)


def test_chain_map_rejects_bad_dimension():
    S = sub_sphere()
    with pytest.raises(DimensionOutOfRange):
        S.chain_map(3)


def test_flag_dual_cells_grouping():
    S = sub_sphere()
    cells = flag_dual_cells(S, 1)
    # one group per base edge, two cells per group (one per adjacent facet)
    assert set(cells) == set(S.base.skeleton(1))
    for ids in cells.values():
        assert len(ids) == 2
    top_cells = flag_dual_cells(S, 2)
    for vertex, ids in top_cells.items():
        # cells around a vertex = flags facet > edge > vertex at it
        count = sum(1 for e in S.base.cofacets(vertex)
                    for f in S.base.cofacets(e))
        assert len(ids) == count


def test_flag_partner_is_fixed_point_free_involution():
    S = sub_sphere()
    for i in (1, 2):
        for ids in flag_dual_cells(S, i).values():
            for t in ids:
                flag = S.flag_of(t)
                partner = flag_partner(S, flag)
                assert partner != flag
                assert partner.bottom == flag.bottom
                assert flag_partner(S, partner) == flag


def test_flag_partner_rejects_degree_zero_and_skew_flags():
    S = sub_sphere()
    vertex_flag = S.flag_of((S.vertex_id[(0, 1, 2)],))
    with pytest.raises(NotAFlagCell):
        flag_partner(S, vertex_flag)
    # edge barycenter -> vertex flag skips the facet level
    skew = S.flag_of((S.vertex_id[(0, 1)], S.vertex_id[(0,)]))
    with pytest.raises(NotAFlagCell):
        flag_partner(S, skew)


def test_flag_dual_cells_requires_closed_base():
    S = barycentric_subdivide(build_complex([(0, 1, 2)]))
    with pytest.raises(NotPseudomanifold):
        flag_dual_cells(S, 1)


def test_subdivision_of_torus_counts():
    row = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    row += [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
    S = barycentric_subdivide(build_complex(row))
    assert S.derived.n_simplices(2) == 14 * 6
    assert S.derived.euler_characteristic() == 0
    assert S.derived.is_closed_pseudomanifold().passed
