"""Closed-form constructors: index sets and the algebras Ĝ_{n,d}, G_{n,d}, A_{n,d}."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import List, Sequence, Tuple

from .algebra import (PresentedAlgebra, Quiver, corner_algebra, present_algebra,
                      reorder_vertices, tensor_algebra, vertex_name)
from .errors import BadParameters, KindMismatch
from .linalg import QQ, Field

Index = Tuple[int, ...]

KINDS = {"N": "N", "I": "I", "Ihat": "Ihat", "Î": "Ihat", "IHAT": "Ihat", "ihat": "Ihat"}


def parity_index(I: Sequence[int]) -> int:
    """Number of even entries."""
    return sum(1 for i in I if i % 2 == 0)


def index_set(n: int, d: int, kind: str = "N") -> List[Index]:
    """``N`` in lex order; ``Ihat`` and ``I`` ordered by parity index, then lex."""
    k = KINDS.get(kind)
    if k is None:
        raise BadParameters(f"unknown index kind {kind!r}")
    if n < 1 or d < 1:
        raise BadParameters("need n >= 1 and d >= 1")
    if k == "Ihat":
        out = list(product(range(1, n + 1), repeat=d))
    else:
        if d > n:
            raise BadParameters("need n >= d")
        out = list(combinations(range(1, n + 1), d))
    if k == "N":
        return out
    return sorted(out, key=lambda I: (parity_index(I), I))


def _check_increasing(I: Sequence[int]) -> None:
    if any(a >= b for a, b in zip(I, I[1:])):
        raise KindMismatch(f"{tuple(I)} is not strictly increasing")


def intertwines(I: Sequence[int], J: Sequence[int]) -> bool:
    """``i_1 <= j_1 < i_2 <= j_2 < ... < i_d <= j_d``."""
    if len(I) != len(J):
        raise KindMismatch("tuples of different lengths")
    _check_increasing(I)
    _check_increasing(J)
    for h in range(len(I)):
        if not I[h] <= J[h]:
            return False
        if h + 1 < len(I) and not J[h] < I[h + 1]:
            return False
    return True


def iop(I: Sequence[int], n: int, d: int) -> Tuple[Index, bool]:
    """The formula ``(n+d-2-i_d, ..., n+d-2-i_1)`` and whether it lands in range."""
    out = tuple(n + d - 2 - i for i in reversed(I))
    ok = all(1 <= x <= n for x in out) and all(a < b for a, b in zip(out, out[1:]))
    return out, ok


def rev(I: Sequence[int], n: int) -> Index:
    """The in-range involution ``(n+1-i_d, ..., n+1-i_1)`` of ``N_{n,d}``."""
    return tuple(n + 1 - i for i in reversed(I))


def swinging_alpha(n: int, i: int) -> int:
    """Lower endpoint of the swinging arc of width ``i``: floor for even ``n``, ceiling for odd."""
    if not 1 <= i <= n:
        raise BadParameters(f"need 1 <= i <= {n}")
    return (n - i) // 2 if n % 2 == 0 else (n - i + 1) // 2


# ---------------------------------------------------------------- algebras


def _arrow_id(v: Index, tag: str) -> str:
    return f"{vertex_name(v)}{tag}"


@lru_cache(maxsize=None)
def build_alternating(n: int, field: Field = QQ) -> PresentedAlgebra:
    """Linear A_n with odd vertices as sources."""
    if n < 1:
        raise BadParameters("need n >= 1")
    vertices = [(i,) for i in range(1, n + 1)]
    arrows = []
    for v in range(1, n + 1, 2):
        for w in (v - 1, v + 1):
            if 1 <= w <= n:
                arrows.append((f"{v}>{w}", (v,), (w,)))
    return present_algebra(Quiver(vertices, arrows), [], field, name=f"Ghat_{n},1")


@lru_cache(maxsize=None)
def build_Ghat(n: int, d: int, field: Field = QQ) -> PresentedAlgebra:
    """d-fold tensor power of the alternating A_n algebra, vertices reordered as Î_{n,d}."""
    if d < 1:
        raise BadParameters("need d >= 1")
    B = build_alternating(n, field)
    A = B
    for _ in range(d - 1):
        A = tensor_algebra(A, B)
    return reorder_vertices(A, index_set(n, d, "Ihat"), name=f"Ghat_{n},{d}")


def _check_nd(n: int, d: int) -> None:
    if d < 1 or n < d:
        raise BadParameters(f"need n >= d >= 1, got n={n}, d={d}")


@lru_cache(maxsize=None)
def build_G(n: int, d: int, field: Field = QQ) -> PresentedAlgebra:
    """Arrows move an odd coordinate by one; commutativity on squares, zero otherwise."""
    q, rels = presentation_G(n, d)
    return present_algebra(q, rels, field, name=f"G_{n},{d}")


def presentation_G(n: int, d: int) -> Tuple[Quiver, List[dict]]:
    _check_nd(n, d)
    verts = index_set(n, d, "I")
    vset = set(verts)
    arrows = []
    amap = {}
    for v in verts:
        for h in range(d):
            if v[h] % 2 == 0:
                continue
            for s in (-1, 1):
                w = v[:h] + (v[h] + s,) + v[h + 1:]
                if w in vset:
                    aid = _arrow_id(v, f"{h + 1}{'+' if s > 0 else '-'}")
                    arrows.append((aid, v, w))
                    amap[(v, h, s)] = (aid, w)
    rels = []
    seen = set()
    for v in verts:
        for (h, s), (k, t) in combinations([(h, s) for h in range(d) for s in (-1, 1)], 2):
            if h == k:
                continue
            routes = []
            if (v, h, s) in amap:
                a1, w1 = amap[(v, h, s)]
                if (w1, k, t) in amap:
                    routes.append((a1, amap[(w1, k, t)][0]))
            if (v, k, t) in amap:
                a1, w1 = amap[(v, k, t)]
                if (w1, h, s) in amap:
                    routes.append((a1, amap[(w1, h, s)][0]))
            if not routes:
                continue
            key = frozenset(routes)
            if key in seen:
                continue
            seen.add(key)
            if len(routes) == 2:
                rels.append({routes[0]: 1, routes[1]: -1})
            else:
                rels.append({routes[0]: 1})
    return Quiver(verts, arrows), rels


@lru_cache(maxsize=None)
def build_A(n: int, d: int, field: Field = QQ) -> PresentedAlgebra:
    """Arrows ``I -> I + e_h``; commutativity where both routes exist, zero on single routes."""
    q, rels = presentation_A(n, d)
    return present_algebra(q, rels, field, name=f"A_{n},{d}")


def presentation_A(n: int, d: int) -> Tuple[Quiver, List[dict]]:
    _check_nd(n, d)
    verts = index_set(n, d, "N")
    vset = set(verts)

    def step(v: Index, h: int) -> Index:
        return v[:h] + (v[h] + 1,) + v[h + 1:]

    def inside(v: Index) -> bool:
        return v in vset

    arrows = []
    for v in verts:
        for h in range(d):
            w = step(v, h)
            if inside(w):
                arrows.append((_arrow_id(v, f"+{h + 1}"), v, w))
    rels = []
    for v in verts:
        for h, k in combinations(range(d), 2):
            target = step(step(v, h), k)
            if not inside(target):
                continue
            routes = []
            for a, b in ((h, k), (k, h)):
                mid = step(v, a)
                if inside(mid):
                    routes.append((_arrow_id(v, f"+{a + 1}"), _arrow_id(mid, f"+{b + 1}")))
            if len(routes) == 2:
                rels.append({routes[0]: 1, routes[1]: -1})
            elif routes:
                rels.append({routes[0]: 1})
    return Quiver(verts, arrows), rels


def sym_quotient(Ghat: PresentedAlgebra, n: int, d: int) -> PresentedAlgebra:
    """Corner algebra of Ĝ_{n,d} at the strictly increasing vertices, ordered as I_{n,d}."""
    _check_nd(n, d)
    keep = index_set(n, d, "I")
    if not set(keep) <= set(Ghat.vertices):
        raise BadParameters("algebra is not indexed by tuples in 1..n")
    return corner_algebra(Ghat, keep, name=f"Ghat_{n},{d}/S_{d}")
