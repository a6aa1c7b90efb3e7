"""Arcs in a disk with boundary stops and the chord model of their morphisms.

The boundary carries stops ``p_0, ..., p_n`` in counter-clockwise order and
component ``c`` is the boundary interval from ``p_c`` to ``p_{c+1}``.  Each
component holds an ordered list of slots; an arc joins a slot on one
component to a slot on another.  A chord runs inside one component from a
slot to an earlier slot (the boundary orientation is opposite to the
labelling), so it never passes a stop.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import BasisElement, PresentedAlgebra, regrade, vertex_name
from .derived import ChainMap, HomComplex, cone, direct_sum, shift, stalk
from .errors import ArcsIntersect, BadIndices, NotComposable, NotDisjoint, NotTame
from .linalg import QQ, Field, rank
from .zoo import index_set, swinging_alpha

Endpoint = Tuple[int, int]  # (component, slot)
Chord = Tuple[int, int, int]  # (component, from slot, to slot)


@dataclass(frozen=True)
class Arc:
    a: int
    slot_a: int
    b: int
    slot_b: int

    @property
    def endpoints(self) -> Tuple[Endpoint, Endpoint]:
        return (self.a, self.slot_a), (self.b, self.slot_b)

    def on(self, c: int) -> Optional[int]:
        """Slot of this arc on component ``c``, if any."""
        for comp, s in self.endpoints:
            if comp == c:
                return s
        return None


def _interleave(x: Arc, y: Arc) -> bool:
    p, q = sorted(x.endpoints)
    r, s = sorted(y.endpoints)
    return (p < r < q) != (p < s < q)


class DiskWithStops:
    """``n + 1`` stops on the boundary and a fixed system of disjoint arcs."""

    def __init__(self, n: int, arcs: Sequence[Arc], winding: Optional[Mapping[int, int]] = None):
        if n < 1:
            raise BadIndices("need n >= 1")
        self.n = n
        self.arcs = list(arcs)
        # grading offset between the b-end and the a-end of each arc
        self.winding = {k: int(w) for k, w in (winding or {}).items() if w}
        used = set()
        for x in self.arcs:
            if x.a == x.b:
                raise ArcsIntersect(f"{x} has both ends on one component")
            for c, s in x.endpoints:
                if not 0 <= c <= n or s < 0:
                    raise ArcsIntersect(f"{x} leaves the disk")
                if (c, s) in used:
                    raise ArcsIntersect(f"slot {(c, s)} is used twice")
                used.add((c, s))
        for i, x in enumerate(self.arcs):
            for y in self.arcs[:i]:
                if _interleave(x, y):
                    raise ArcsIntersect(f"{x} and {y} cross")
                if {x.a, x.b} == {y.a, y.b}:
                    raise ArcsIntersect(f"{x} and {y} are isotopic")
        self.slots: Dict[int, List[int]] = {c: [] for c in range(n + 1)}
        for k, x in enumerate(self.arcs):
            for c, s in x.endpoints:
                self.slots[c].append(k)
        for c in self.slots:
            self.slots[c].sort(key=lambda k: self.arcs[k].on(c))

    def potential(self, k: int, c: int) -> int:
        """Grading of arc ``k`` at its end on component ``c``."""
        return -self.winding.get(k, 0) if c == self.arcs[k].b else 0

    def chord_degree(self, x: int, y: int, c: int) -> int:
        return self.potential(y, c) - self.potential(x, c)

    def load(self, arc_ids: Sequence[int] = ()) -> Dict[int, int]:
        """Number of arc endpoints per component."""
        ids = range(len(self.arcs)) if not arc_ids else arc_ids
        out = {c: 0 for c in range(self.n + 1)}
        for k in ids:
            for c, _ in self.arcs[k].endpoints:
                out[c] += 1
        return out

    def is_tame(self, arc_ids: Sequence[int] = ()) -> bool:
        return max(self.load(arc_ids).values()) <= 2


def place_arcs(n: int, pairs: Sequence[Tuple[int, int]],
               winding: Optional[Mapping[int, int]] = None) -> DiskWithStops:
    """Arcs joining the given component pairs, with slots chosen so none cross."""
    ends: Dict[int, List[Tuple[int, int]]] = {c: [] for c in range(n + 1)}
    for k, (a, b) in enumerate(pairs):
        if not (0 <= a <= n and 0 <= b <= n) or a == b:
            raise BadIndices(f"bad component pair {(a, b)}")
        ends[a].append((k, b))
        ends[b].append((k, a))
    slot: Dict[Tuple[int, int], int] = {}
    for c, lst in ends.items():
        # farther-ahead partners come first along the component
        lst.sort(key=lambda kb: -((kb[1] - c) % (n + 1)))
        for s, (k, _) in enumerate(lst):
            slot[(k, c)] = s
    arcs = [Arc(a, slot[(k, a)], b, slot[(k, b)]) for k, (a, b) in enumerate(pairs)]
    return DiskWithStops(n, arcs, winding)


def swinging_pairs(n: int) -> List[Tuple[int, int]]:
    return [(swinging_alpha(n, i), swinging_alpha(n, i) + i) for i in range(1, n + 1)]


def swinging_collection(n: int) -> DiskWithStops:
    """Arc ``i`` (index ``i - 1``) joins ``swinging_alpha(n, i)`` to that plus ``i``."""
    return place_arcs(n, swinging_pairs(n))


def fan_collection(n: int) -> DiskWithStops:
    """Arc ``i`` (index ``i - 1``) joins component 0 to component ``i``."""
    return place_arcs(n, [(0, i) for i in range(1, n + 1)])


@dataclass
class Region:
    stops: int
    # boundary pieces as (arc ending the piece's start, arc at its end, component or None)
    pieces: List[Tuple[int, int, Optional[int]]]


def regions(disk: DiskWithStops) -> List[Region]:
    """Complementary regions of the arc system, read off the cyclic endpoint order."""
    n = disk.n
    events: List[Tuple[str, object]] = []
    for c in range(n + 1):
        events.append(("stop", c))
        for k in disk.slots[c]:
            events.append(("end", (k, c)))
    ends = [i for i, e in enumerate(events) if e[0] == "end"]
    if not ends:
        return [Region(n + 1, [])]
    # piece t runs from ends[t] to ends[t + 1] (cyclically)
    m = len(ends)
    start_of = {events[ends[t]][1]: t for t in range(m)}
    pieces = []
    for t in range(m):
        lo, hi = ends[t], ends[(t + 1) % m]
        span = range(lo + 1, hi) if hi > lo else list(range(lo + 1, len(events))) + list(range(hi))
        stops = sum(1 for i in span if events[i][0] == "stop")
        (k1, c1), (k2, _) = events[lo][1], events[hi][1]
        pieces.append((stops, (k1, k2, c1 if not stops else None)))
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in range(m):
        k, c = events[ends[(t + 1) % m]][1]
        x = disk.arcs[k]
        other = x.b if c == x.a else x.a
        parent[find(t)] = find(start_of[(k, other)])
    groups: Dict[int, Region] = {}
    for t in range(m):
        reg = groups.setdefault(find(t), Region(0, []))
        reg.stops += pieces[t][0]
        reg.pieces.append(pieces[t][1])
    return list(groups.values())


def generation_check(disk: DiskWithStops) -> bool:
    """Every region cut out by the arcs holds at most one stop."""
    return all(r.stops <= 1 for r in regions(disk))


def grading_consistent(disk: DiskWithStops) -> bool:
    """Around a stop-free region with ``m`` boundary chords the chord degrees add up to ``m - 2``."""
    for r in regions(disk):
        if r.stops:
            continue
        # each piece runs up one component from arc k1 to arc k2; its chord goes k2 -> k1
        total = sum(disk.chord_degree(k2, k1, c) for k1, k2, c in r.pieces)
        if total != len(r.pieces) - 2:
            return False
    return True


# ---------------------------------------------------------------- product objects and morphisms


@dataclass(frozen=True)
class ProductArc:
    arcs: Tuple[int, ...]
    shift: int = 0

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))
        if len(set(self.arcs)) != len(self.arcs):
            raise NotDisjoint("repeated arc in a product")


@dataclass(frozen=True)
class StrandMorphism:
    """``moves[k] = (x, y, chord)`` sends arc ``x`` of the source to arc ``y``;
    ``chord`` is ``None`` for the identity strand."""

    src: ProductArc
    tgt: ProductArc
    moves: Tuple[Tuple[int, int, Optional[Chord]], ...]
    degree: int = 0

    @property
    def key(self):
        return self.moves


def _strands(disk: DiskWithStops, moves) -> Dict[int, List[Tuple[int, int, int]]]:
    """Per component: ``(from slot, to slot, move index)``; idle arcs contribute flat strands."""
    out: Dict[int, List[Tuple[int, int, int]]] = {}
    for i, (x, _, ch) in enumerate(moves):
        if ch is None:
            for c, s in disk.arcs[x].endpoints:
                out.setdefault(c, []).append((s, s, i))
        else:
            c, s, t = ch
            out.setdefault(c, []).append((s, t, i))
    return out


def crossings(disk: DiskWithStops, moves) -> int:
    total = 0
    for lst in _strands(disk, moves).values():
        for u in range(len(lst)):
            for v in range(u):
                s1, t1, _ = lst[u]
                s2, t2, _ = lst[v]
                if (s1 - s2) * (t1 - t2) < 0:
                    total += 1
    return total


def _make(disk: DiskWithStops, X: ProductArc, Y: ProductArc, moves) -> StrandMorphism:
    moves = tuple(sorted(moves))
    deg = Y.shift - X.shift - crossings(disk, moves)
    deg += sum(disk.chord_degree(x, y, ch[0]) for x, y, ch in moves if ch is not None)
    return StrandMorphism(X, Y, moves, deg)


def hom_basis(disk: DiskWithStops, X: ProductArc, Y: ProductArc) -> List[StrandMorphism]:
    if len(X.arcs) != len(Y.arcs):
        return []
    out = []
    for perm in permutations(Y.arcs):
        options = []
        for x, y in zip(X.arcs, perm):
            if x == y:
                options.append([None])
                continue
            chords = []
            for c, s in disk.arcs[x].endpoints:
                t = disk.arcs[y].on(c)
                if t is not None and t < s:
                    chords.append((c, s, t))
            if not chords:
                break
            options.append(chords)
        else:
            for pick in product(*options):
                out.append(_make(disk, X, Y, zip(X.arcs, perm, pick)))
    out.sort(key=lambda m: (m.degree, m.moves))
    return out


def compose(disk: DiskWithStops, g: StrandMorphism, f: StrandMorphism) -> Optional[StrandMorphism]:
    """``g o f`` as a basis morphism, or ``None`` for zero."""
    if f.tgt != g.src:
        raise NotComposable("target of f differs from source of g")
    gm = {x: (y, ch) for x, y, ch in g.moves}
    moves = []
    for x, y, cf in f.moves:
        z, cg = gm[y]
        if cf is None:
            ch = cg
        elif cg is None:
            ch = cf
        elif cf[0] == cg[0] and cf[2] == cg[1]:
            ch = (cf[0], cf[1], cg[2])
        else:
            return None
        moves.append((x, z, ch))
    h = _make(disk, f.src, g.tgt, moves)
    if crossings(disk, h.moves) != crossings(disk, f.moves) + crossings(disk, g.moves):
        return None
    return h


def differential(disk: DiskWithStops, m: StrandMorphism) -> List[StrandMorphism]:
    """Smoothings of single crossings that lower the crossing number by exactly one."""
    cr = crossings(disk, m.moves)
    if not cr:
        return []
    out = []
    for comp, lst in _strands(disk, m.moves).items():
        for u in range(len(lst)):
            for v in range(u):
                s1, t1, i = lst[u]
                s2, t2, j = lst[v]
                if (s1 - s2) * (t1 - t2) >= 0 or i == j:
                    continue
                moves = list(m.moves)
                (x1, y1, _), (x2, y2, _) = moves[i], moves[j]
                moves[i] = (x1, y2, None if x1 == y2 else (comp, s1, t2))
                moves[j] = (x2, y1, None if x2 == y1 else (comp, s2, t1))
                new = _make(disk, m.src, m.tgt, moves)
                if crossings(disk, new.moves) == cr - 1:
                    out.append(new)
    return out


def hom_cohomology(disk: DiskWithStops, X: ProductArc, Y: ProductArc, field: Field = QQ) -> Dict[int, int]:
    basis = hom_basis(disk, X, Y)
    by_deg: Dict[int, List[StrandMorphism]] = {}
    for m in basis:
        by_deg.setdefault(m.degree, []).append(m)
    pos = {m.moves: i for lst in by_deg.values() for i, m in enumerate(lst)}

    def D(k: int) -> List[list]:
        src, tgt = by_deg.get(k, []), by_deg.get(k + 1, [])
        mat = [[field.zero] * len(src) for _ in tgt]
        for c, m in enumerate(src):
            for r in differential(disk, m):
                mat[pos[r.moves]][c] = field.norm(mat[pos[r.moves]][c] + field.one)
        return mat

    out = {}
    for k in sorted(by_deg):
        dim = len(by_deg[k])
        rk_out = rank(D(k), field) if by_deg.get(k + 1) else 0
        rk_in = rank(D(k - 1), field) if by_deg.get(k - 1) else 0
        h = dim - rk_out - rk_in
        if h:
            out[k] = h
    return out


# ---------------------------------------------------------------- end algebras


@dataclass
class CohomologyTable:
    labels: List
    dims: List[List[Dict[int, int]]]

    def totals(self) -> List[List[int]]:
        return [[sum(h.values()) for h in row] for row in self.dims]


def _arc_ids(objects: Sequence[ProductArc]) -> List[int]:
    return sorted({k for X in objects for k in X.arcs})


def end_algebra_of_collection(disk: DiskWithStops, objects: Sequence[ProductArc],
                              labels: Optional[Sequence] = None, field: Field = QQ,
                              strict: bool = False, name: str = ""):
    """Tame collections give a ``PresentedAlgebra``; otherwise a ``CohomologyTable``.

    Block ``a -> b`` is ``Hom(X_a, X_b)`` and ``g o f`` is the product ``g * f``.
    """
    labels = list(labels) if labels is not None else list(range(len(objects)))
    if not disk.is_tame(_arc_ids(objects)):
        if strict:
            raise NotTame("a component carries more than two arc endpoints")
        dims = [[hom_cohomology(disk, X, Y, field) for Y in objects] for X in objects]
        return CohomologyTable(labels, dims)
    basis: List[BasisElement] = []
    index: Dict[Tuple[int, int], List[Tuple[int, StrandMorphism]]] = {}
    for a, X in enumerate(objects):
        for b, Y in enumerate(objects):
            for m in hom_basis(disk, X, Y):
                grade = 0 if all(ch is None for _, _, ch in m.moves) and a == b else 1
                index.setdefault((a, b), []).append((len(basis), m))
                basis.append(BasisElement(labels[a], labels[b], grade, m.degree, label=_label(m)))
    lookup = {(a, b, m.moves): i for (a, b), lst in index.items() for i, m in lst}
    mult = {}
    m_obj = len(objects)
    for (a, b), fs in index.items():
        for c in range(m_obj):
            for l, g in index.get((b, c), []):
                for r, f in fs:
                    h = compose(disk, g, f)
                    if h is not None:
                        mult[(l, r)] = {lookup[(a, c, h.moves)]: field.one}
    E = PresentedAlgebra(field, labels, basis, mult, name=name or "End")
    return regrade(E)


def _label(m: StrandMorphism) -> str:
    parts = []
    for x, y, ch in m.moves:
        parts.append(f"{x}" if ch is None else f"{x}>{y}@{ch[0]}")
    return ",".join(parts)


def swinging_products(n: int, d: int) -> Tuple[DiskWithStops, List[ProductArc], List[tuple]]:
    """``L_I`` for ``I`` in ``I_{n,d}``: the product of arcs ``i_1, ..., i_d``."""
    disk = swinging_collection(n)
    labels = index_set(n, d, "I")
    return disk, [ProductArc(tuple(i - 1 for i in I)) for I in labels], labels


def fan_products(n: int, d: int) -> Tuple[DiskWithStops, List[ProductArc], List[tuple]]:
    """Products of fan arcs labelled by ``N_{n,d}``."""
    disk = fan_collection(n)
    labels = index_set(n, d, "N")
    return disk, [ProductArc(tuple(j - 1 for j in J)) for J in labels], labels


# ---------------------------------------------------------------- exact triangles


@dataclass
class AurouxTriangle:
    disk: DiskWithStops
    labels: List[str]
    objects: List[ProductArc]
    algebra: PresentedAlgebra
    maps: Dict[Tuple[str, str], StrandMorphism]
    shifts: Dict[Tuple[str, str], Optional[int]]
    non_split: Dict[Tuple[str, str], bool]

    @property
    def ok(self) -> bool:
        first = (self.labels[0], self.labels[1])
        return first in self.shifts and all(s is not None for s in self.shifts.values()) \
            and all(self.non_split.values())


def _tables(E: PresentedAlgebra, Z) -> Tuple[list, list]:
    gens = [stalk(E, v) for v in E.vertices]
    return ([HomComplex(G, Z).cohomology() for G in gens],
            [HomComplex(Z, G).cohomology() for G in gens])


def auroux_triangle(n: int, i: int, j: int, k: int,
                    background: Sequence[Tuple[int, int]] = (), field: Field = QQ) -> AurouxTriangle:
    """Certifies ``Cone(X -> Y) = Z[s]`` for each chord map among ``L_ij, L_ik, L_jk`` times the background.

    ``L_ij`` carries winding ``-1`` so that the stop-free triangle between the
    three arcs is graded consistently: ``L_ij -> L_ik -> L_jk`` sit in degree 0
    and the connecting chord ``L_jk -> L_ij`` in degree 1.  Cones are taken of
    the degree-0 maps.
    """
    if not 0 <= i < j < k <= n:
        raise BadIndices(f"need 0 <= i < j < k <= {n}, got {(i, j, k)}")
    triple = [(i, j), (i, k), (j, k)]
    for a, b in background:
        if {a, b} & {i, j, k}:
            raise NotDisjoint(f"background arc {(a, b)} touches a component of the triangle")
    try:
        disk = place_arcs(n, triple + list(background), winding={0: -1})
    except ArcsIntersect as exc:
        raise NotDisjoint(str(exc)) from exc
    if not grading_consistent(disk):
        raise NotDisjoint("background arcs close off a stop-free region")
    bg = tuple(range(3, 3 + len(background)))
    labels = [f"{a}{b}" for a, b in triple]
    objects = [ProductArc((t,) + bg) for t in range(3)]
    E = end_algebra_of_collection(disk, objects, labels, field, strict=True, name="triangle")
    maps, shifts, non_split = {}, {}, {}
    for x in range(3):
        for y in range(3):
            hs = hom_basis(disk, objects[x], objects[y]) if x != y else []
            if not hs:
                continue
            (m,) = hs
            maps[(labels[x], labels[y])] = m
            (e,) = E.block(labels[x], labels[y])
            if m.degree != 0:
                continue
            X, Y = stalk(E, labels[x]), stalk(E, labels[y])
            C = cone(ChainMap(X, Y, {(0, 0, 0, 0): {e: field.one}}, 0))
            got = _tables(E, C)
            z = labels[3 - x - y]
            shifts[(labels[x], labels[y])] = next(
                (s for s in range(-3, 4) if _tables(E, stalk(E, z, s)) == got), None)
            split, _ = direct_sum([shift(X, 1), Y])
            non_split[(labels[x], labels[y])] = _tables(E, split) != got
    return AurouxTriangle(disk, labels, objects, E, maps, shifts, non_split)


def auroux_quasi_iso(n: int, i: int, j: int, k: int,
                     background: Sequence[Tuple[int, int]] = ()) -> bool:
    """``L_ij x L_ik`` and ``L_ij x L_jk`` (times the background) have equal total Hom tables
    against the three pairwise products."""
    if not 0 <= i < j < k <= n:
        raise BadIndices(f"need 0 <= i < j < k <= {n}, got {(i, j, k)}")
    for a, b in background:
        if {a, b} & {i, j, k}:
            raise NotDisjoint(f"background arc {(a, b)} touches a component of the triangle")
    try:
        disk = place_arcs(n, [(i, j), (i, k), (j, k)] + list(background))
    except ArcsIntersect as exc:
        raise NotDisjoint(str(exc)) from exc
    bg = tuple(range(3, 3 + len(background)))
    objs = [ProductArc(pair + bg) for pair in ((0, 1), (0, 2), (1, 2))]
    dims = [[len(hom_basis(disk, X, Y)) for Y in objs] for X in objs]
    cols = [list(c) for c in zip(*dims)]
    return dims[0] == dims[1] and cols[0] == cols[1]


def background_choices(n: int, i: int, j: int, k: int) -> List[Tuple[int, int]]:
    """Component pairs inside one gap of ``{i, j, k}``; these give disjoint background arcs."""
    out = []
    gaps = [range(i + 1, j), range(j + 1, k), [c for c in range(n + 1) if c > k or c < i]]
    for gap in gaps:
        g = sorted(gap)
        for p in range(len(g)):
            for q in range(p + 1, len(g)):
                out.append((g[p], g[q]))
    return out


# ---------------------------------------------------------------- JSON


def collection_to_json(disk: DiskWithStops, objects: Sequence[ProductArc], d: int) -> dict:
    return {
        "n": disk.n,
        "d": d,
        "arcs": [{"a": x.a, "slotA": x.slot_a, "b": x.b, "slotB": x.slot_b} for x in disk.arcs],
        "objects": [list(X.arcs) for X in objects],
    }


def collection_from_json(data: Mapping) -> Tuple[DiskWithStops, List[ProductArc], int]:
    disk = DiskWithStops(int(data["n"]), [Arc(int(a["a"]), int(a["slotA"]), int(a["b"]), int(a["slotB"]))
                                           for a in data["arcs"]])
    objects = [ProductArc(tuple(int(k) for k in obj)) for obj in data["objects"]]
    d = int(data["d"])
    if any(len(X.arcs) != d for X in objects):
        raise BadIndices("object size differs from d")
    for X in objects:
        for x in X.arcs:
            if not 0 <= x < len(disk.arcs):
                raise BadIndices(f"arc index {x} out of range")
    return disk, objects, d


def dumps_collection(disk: DiskWithStops, objects: Sequence[ProductArc], d: int) -> str:
    return json.dumps(collection_to_json(disk, objects, d), sort_keys=True, indent=2)


def object_name(disk: DiskWithStops, X: ProductArc) -> str:
    return "x".join(vertex_name((disk.arcs[k].a, disk.arcs[k].b)) for k in X.arcs)
