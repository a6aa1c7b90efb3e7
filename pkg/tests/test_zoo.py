from __future__ import annotations

from math import comb

import pytest

import oracles
from artifact.algebra import cartan_matrix, check_associativity, find_isomorphism, gabriel_presentation
from artifact.errors import BadParameters, KindMismatch
from artifact.morse import (morsification_data, morsification_poly, orbit_count, parity_matches,
                            values_ok)
from artifact.zoo import (build_A, build_G, build_Ghat, build_alternating, index_set, intertwines,
                          iop, parity_index, presentation_A, presentation_G, rev, sym_quotient)

# frozen from oracles.intertwining_count
A_DIMS = {(4, 2): 15, (5, 2): 35, (4, 3): 7, (5, 3): 28, (6, 3): 84}


def test_index_sets():
    N = index_set(4, 2, "N")
    assert len(N) == 6 and N[0] == (1, 2) and N[-1] == (3, 4)
    assert len(index_set(2, 2, "Ihat")) == 4
    I = index_set(4, 2, "I")
    assert sorted(I) == N
    assert [parity_index(x) for x in I] == sorted(parity_index(x) for x in I)
    assert I[0] == (1, 3)
    with pytest.raises(BadParameters):
        index_set(2, 3, "N")


@pytest.mark.parametrize("n", range(1, 9))
def test_index_set_sizes(n):
    for d in range(1, n + 1):
        assert len(index_set(n, d, "N")) == len(index_set(n, d, "I")) == comb(n, d)
        assert len(index_set(n, d, "Ihat")) == n ** d


def test_intertwines():
    assert intertwines((1, 3), (1, 3))
    assert not intertwines((1, 2), (2, 3))
    N = index_set(4, 2)
    assert sum(intertwines(I, J) for I in N for J in N) == 15
    with pytest.raises(KindMismatch):
        intertwines((1, 2), (1, 2, 3))


def test_iop_and_rev():
    assert iop((1, 2), 4, 2) == ((2, 3), True)
    assert iop((2, 3), 4, 2) == ((1, 2), True)
    assert iop((1, 5), 5, 2) == ((0, 4), False)
    for I in index_set(5, 2):
        assert rev(rev(I, 5), 5) == I


def test_alternating():
    assert build_alternating(1).dim == 1
    G = build_alternating(4)
    assert G.dim == 7
    arrows = sorted((G.basis[a].src, G.basis[a].tgt) for a in G.arrows)
    assert arrows == [((1,), (2,)), ((3,), (2,)), ((3,), (4,))]
    assert all(G.basis[k[0]].grade == 0 or G.basis[k[1]].grade == 0 for k in G.mult)


def test_ghat_dims():
    assert build_Ghat(3, 2).dim == 25
    assert build_Ghat(2, 3).dim == 27
    for n in range(1, 5):
        for d in range(1, 3):
            assert build_Ghat(n, d).dim == (2 * n - 1) ** d


def test_build_g():
    G = build_G(4, 2)
    assert G.dim == 13 and len(G.arrows) == 6 and len(G.vertices) == 6
    c = cartan_matrix(G)
    i, j = G.vertices.index((1, 3)), G.vertices.index((2, 4))
    assert c[i][j] == 1
    for n in range(1, 6):
        assert find_isomorphism(build_G(n, 1), build_alternating(n),
                                {(i,): (i,) for i in range(1, n + 1)}) is not None


def test_build_a_small_cases():
    for n in range(1, 7):
        assert build_A(n, 1).dim == n * (n + 1) // 2
    for d in range(1, 4):
        assert build_A(d, d).dim == 1
    for key, dim in A_DIMS.items():
        assert build_A(*key).dim == dim == oracles.intertwining_count(*key)


@pytest.mark.parametrize("nd", [(4, 2), (5, 2), (5, 3), (6, 3)])
def test_build_a_matches_path_quotient_oracle(nd):
    q, rels = presentation_A(*nd)
    arrows = [(a.id, a.src, a.tgt) for a in q.arrows]
    assert cartan_matrix(build_A(*nd)) == oracles.path_quotient_cartan(q.vertices, arrows, rels)


@pytest.mark.parametrize("nd", [(4, 2), (5, 2), (5, 3)])
def test_build_g_matches_path_quotient_oracle(nd):
    q, rels = presentation_G(*nd)
    arrows = [(a.id, a.src, a.tgt) for a in q.arrows]
    assert cartan_matrix(build_G(*nd)) == oracles.path_quotient_cartan(q.vertices, arrows, rels)


def test_a_4_2_gabriel_quiver():
    q, _ = gabriel_presentation(build_A(4, 2), max_length=2)
    assert len(q.arrows) == 6
    for a in q.arrows:
        diff = [t - s for s, t in zip(a.src, a.tgt)]
        assert sorted(diff) == [0, 1]


def test_sym_quotient():
    Q = sym_quotient(build_Ghat(4, 2), 4, 2)
    assert Q.dim == 13 and check_associativity(Q)
    assert find_isomorphism(Q, build_G(4, 2), {v: v for v in Q.vertices}) is not None
    assert sym_quotient(build_Ghat(3, 1), 3, 1).dim == build_Ghat(3, 1).dim
    assert sym_quotient(build_Ghat(3, 3), 3, 3).dim == 1


def test_morsification_examples():
    data = morsification_data(3)
    assert [round(c.location, 9) for c in data] == [-1.0, -1.5, -2.0]
    assert [round(c.value, 9) for c in data] == [0.0, 0.0625, 0.0]
    (only,) = morsification_data(1)
    assert abs(only.location + 1) < 1e-9 and abs(only.value) < 1e-9
    four = morsification_data(4)
    assert sum(c.double_root for c in four) == 2
    assert sum(c.value > 1e-9 for c in four) == 2
    with pytest.raises(BadParameters):
        morsification_poly(13)


@pytest.mark.parametrize("n", range(1, 9))
def test_morsification_counts(n):
    data = morsification_data(n)
    assert len(data) == n
    assert values_ok(data) and parity_matches(data)
    for d in range(1, min(n, 3) + 1):
        assert orbit_count(n, d) == comb(n, d)
