from __future__ import annotations

import random
from fractions import Fraction

import pytest

from artifact.linalg import QQ, Field, Subspace, kernel_basis, matmul, matvec, rank, solve, zeros

F3 = Field(3)


def test_rank_examples():
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank(zeros(3, 4)) == 0
    assert rank([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 1


def test_kernel_examples():
    assert kernel_basis([[Fraction(1), 0], [0, Fraction(1)]]) == []
    assert len(kernel_basis(zeros(2, 3))) == 3
    (v,) = kernel_basis([[Fraction(1), Fraction(1)]])
    assert v[0] == -v[1] != 0


def test_solve_examples():
    b = [Fraction(3), Fraction(-2)]
    assert solve([[Fraction(1), 0], [0, Fraction(1)]], b) == b
    x = solve([[Fraction(1), Fraction(1)]], [Fraction(1)])
    assert x[0] + x[1] == 1
    assert solve([[Fraction(1)], [Fraction(1)]], [Fraction(1), Fraction(2)]) is None
    with pytest.raises(ValueError):
        solve([[Fraction(1)]], [Fraction(1), Fraction(2)])


@pytest.mark.parametrize("field", [QQ, Field(2), F3, Field(7)])
def test_rank_nullity_random(field):
    rng = random.Random(field.p + 11)
    for _ in range(40):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        M = [[field(rng.randint(-3, 3)) for _ in range(c)] for _ in range(r)]
        K = kernel_basis(M, field)
        assert rank(M, field) + len(K) == c
        for v in K:
            assert not any(matvec(M, v, field))


def test_solve_substitution_random():
    rng = random.Random(5)
    for _ in range(40):
        M = [[QQ(rng.randint(-2, 2)) for _ in range(4)] for _ in range(3)]
        x0 = [QQ(rng.randint(-3, 3)) for _ in range(4)]
        b = matvec(M, x0)
        x = solve(M, b)
        assert matvec(M, x) == b


def test_field_parsing_and_reduction():
    assert Field.parse("Q") == QQ
    assert Field.parse("Fp:3") == F3 == Field.parse("3")
    assert F3(Fraction(1, 2)) == 2
    assert F3.name == "Fp:3"
    with pytest.raises(ValueError):
        Field(4)


def test_subspace_coordinates():
    s = Subspace(3, QQ, track=True)
    gens = [[QQ(1), QQ(1), 0], [0, QQ(1), QQ(1)], [QQ(1), QQ(2), QQ(1)]]
    added = [s.add(g) for g in gens]
    assert added == [True, True, False]
    target = [QQ(2), QQ(5), QQ(3)]
    coords = s.coordinates(target)
    combo = [sum(coords.get(g, 0) * gens[g][i] for g in coords) for i in range(3)]
    assert combo == target
    assert s.coordinates([QQ(1), 0, 0]) is None


def test_matmul_shapes():
    A = [[QQ(1), QQ(2)]]
    B = [[QQ(3)], [QQ(4)]]
    assert matmul(A, B) == [[QQ(11)]]
    assert matmul([], B, inner=2) == []
