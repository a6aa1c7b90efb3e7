from __future__ import annotations

import json

import pytest

from artifact.algebra import cartan_matrix, check_associativity, find_isomorphism
from artifact.arcs import (Arc, CohomologyTable, DiskWithStops, ProductArc, auroux_quasi_iso,
                           auroux_triangle, background_choices, collection_from_json, compose,
                           crossings, differential, dumps_collection, end_algebra_of_collection,
                           fan_collection, fan_products, generation_check, grading_consistent,
                           hom_basis, hom_cohomology, place_arcs, regions, swinging_collection,
                           swinging_pairs, swinging_products)
from artifact.errors import ArcsIntersect, BadIndices, NotComposable, NotDisjoint, NotTame
from artifact.linalg import Field
from artifact.zoo import build_G
from oracles import intertwining_matrix


def test_swinging_pairs_n4():
    assert swinging_pairs(4) == [(1, 2), (1, 3), (0, 3), (0, 4)]


def test_swinging_pairs_odd_n():
    # odd n rounds the lower endpoint up
    assert swinging_pairs(3) == [(1, 2), (1, 3), (0, 3)]
    assert swinging_pairs(5) == [(2, 3), (2, 4), (1, 4), (1, 5), (0, 5)]


@pytest.mark.parametrize("n", range(1, 9))
def test_swinging_at_most_two_endpoints(n):
    assert max(swinging_collection(n).load().values()) <= 2


def test_fan_slots():
    disk = fan_collection(3)
    assert disk.load() == {0: 3, 1: 1, 2: 1, 3: 1}


@pytest.mark.parametrize("n", range(1, 9))
def test_generation(n):
    assert generation_check(swinging_collection(n))
    assert generation_check(fan_collection(n))
    assert grading_consistent(swinging_collection(n))


def test_generation_fails_for_single_arc():
    assert not generation_check(place_arcs(2, [(0, 1)]))


def test_regions_of_fan():
    regs = regions(fan_collection(3))
    assert len(regs) == 4
    assert sorted(r.stops for r in regs) == [1, 1, 1, 1]


def test_crossing_arcs_rejected():
    with pytest.raises(ArcsIntersect):
        DiskWithStops(3, [Arc(0, 0, 2, 0), Arc(1, 0, 3, 0)])
    with pytest.raises(ArcsIntersect):
        DiskWithStops(3, [Arc(0, 0, 2, 0), Arc(0, 1, 2, 1)])


def test_hom_identity_only_on_self():
    disk, objs, _ = swinging_products(4, 2)
    for X in objs:
        (m,) = hom_basis(disk, X, X)
        assert all(ch is None for _, _, ch in m.moves)


def test_swinging_n2_single_arrow():
    disk = swinging_collection(2)
    L1, L2 = ProductArc((0,)), ProductArc((1,))
    assert (len(hom_basis(disk, L1, L2)), len(hom_basis(disk, L2, L1))) == (1, 0)


def test_fan_n3_triangular():
    disk, objs, _ = fan_products(3, 1)
    dims = [[len(hom_basis(disk, X, Y)) for Y in objs] for X in objs]
    assert dims == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]


def test_compose_identity_and_concatenation():
    disk = fan_collection(3)
    l1, l2, l3 = (ProductArc((k,)) for k in range(3))
    (f,) = hom_basis(disk, l1, l2)
    (g,) = hom_basis(disk, l2, l3)
    (ident,) = hom_basis(disk, l2, l2)
    assert compose(disk, ident, f) == f
    h = compose(disk, g, f)
    assert h is not None and h.moves == hom_basis(disk, l1, l3)[0].moves
    with pytest.raises(NotComposable):
        compose(disk, f, f)


def test_swinging_compositions_vanish():
    disk = swinging_collection(5)
    objs = [ProductArc((k,)) for k in range(5)]
    for X in objs:
        for Y in objs:
            for f in hom_basis(disk, X, Y):
                if X == Y:
                    continue
                for Z in objs:
                    for g in hom_basis(disk, Y, Z):
                        if Y != Z:
                            assert compose(disk, g, f) is None


def test_fan_crossing_cancels():
    # ell_1 x ell_2 -> ell_3 x ell_4 has an uncrossed and a crossed strand pair
    disk, _, _ = fan_products(4, 2)
    X, Y = ProductArc((0, 1)), ProductArc((2, 3))
    basis = hom_basis(disk, X, Y)
    assert sorted(crossings(disk, m.moves) for m in basis) == [0, 1]
    crossed = next(m for m in basis if m.degree == -1)
    assert [m.moves for m in differential(disk, crossed)] == [next(m for m in basis if m.degree == 0).moves]
    assert hom_cohomology(disk, X, Y) == {}


@pytest.mark.parametrize("n,d", [(2, 1), (3, 1), (4, 1), (5, 1), (3, 2), (4, 2), (5, 2)])
def test_swinging_end_is_G(n, d):
    disk, objs, labels = swinging_products(n, d)
    E = end_algebra_of_collection(disk, objs, labels)
    assert check_associativity(E)
    assert all(b.degree == 0 for b in E.basis)
    assert find_isomorphism(E, build_G(n, d), {v: v for v in labels}) is not None


@pytest.mark.parametrize("n,d", [(3, 1), (5, 1), (4, 2), (5, 2)])
def test_fan_cohomology_is_intertwining(n, d):
    disk, objs, labels = fan_products(n, d)
    T = end_algebra_of_collection(disk, objs, labels)
    assert isinstance(T, CohomologyTable)
    assert T.totals() == intertwining_matrix(n, d)
    assert all(set(h) <= {0} for row in T.dims for h in row)


def test_tame_end_cartan():
    disk, objs, labels = swinging_products(3, 1)
    E = end_algebra_of_collection(disk, objs, labels, strict=True)
    assert cartan_matrix(E) == cartan_matrix(build_G(3, 1))


def test_fan_strict_raises():
    disk, objs, labels = fan_products(4, 2)
    with pytest.raises(NotTame):
        end_algebra_of_collection(disk, objs, labels, strict=True)


def test_fan_over_f2():
    disk, objs, labels = fan_products(4, 2)
    T = end_algebra_of_collection(disk, objs, labels, field=Field(2))
    assert T.totals() == intertwining_matrix(4, 2)


def test_auroux_triangle_n2():
    T = auroux_triangle(2, 0, 1, 2)
    assert T.ok
    assert T.shifts[("01", "02")] == 0
    assert T.shifts[("02", "12")] == -1
    assert T.maps[("12", "01")].degree == 1


def test_auroux_triangle_with_background():
    assert background_choices(4, 0, 1, 2) == [(3, 4)]
    assert auroux_triangle(4, 0, 1, 2, [(3, 4)]).ok


def test_auroux_quasi_iso():
    assert auroux_quasi_iso(2, 0, 1, 2)
    assert auroux_quasi_iso(4, 1, 2, 3, [(0, 4)])


def test_auroux_errors():
    with pytest.raises(BadIndices):
        auroux_triangle(3, 1, 1, 2)
    with pytest.raises(NotDisjoint):
        auroux_triangle(4, 0, 1, 2, [(1, 3)])
    with pytest.raises(NotDisjoint):
        auroux_triangle(4, 0, 2, 3, [(1, 4)])


def test_collection_json_round_trip():
    disk, objs, _ = swinging_products(4, 2)
    text = dumps_collection(disk, objs, 2)
    disk2, objs2, d = collection_from_json(json.loads(text))
    assert d == 2 and objs2 == objs and disk2.arcs == disk.arcs
    assert dumps_collection(disk2, objs2, 2) == text


def test_collection_json_rejects_bad_index():
    data = json.loads(dumps_collection(*swinging_products(3, 1)[:2], 1))
    data["objects"].append([7])
    with pytest.raises(BadIndices):
        collection_from_json(data)
