"""Finite acyclic quivers and presented algebras with explicit bases.

Conventions: modules are left modules and paths compose right to left, so a
basis element ``x`` with ``src == u`` and ``tgt == v`` lives in ``e_v A e_u``.
In the multiplication table the key ``(l, r)`` stands for ``l * r``: first
``r``, then ``l``; it is only defined when ``basis[r].tgt == basis[l].src``.
Paths themselves are stored in traversal order (first arrow first).
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import CyclicQuiver, RelationNotParallel, VertexMapInvalid
from .linalg import QQ, Field, Scalar, Subspace, rank

Vertex = Hashable
Element = Dict[int, Scalar]


# ---------------------------------------------------------------- quivers


@dataclass(frozen=True)
class Arrow:
    id: str
    src: Vertex
    tgt: Vertex


class Quiver:
    """A finite quiver without oriented cycles."""

    def __init__(self, vertices: Iterable[Vertex], arrows: Iterable):
        self.vertices: List[Vertex] = list(vertices)
        self.arrows: List[Arrow] = [a if isinstance(a, Arrow) else Arrow(*a) for a in arrows]
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate arrow ids")
        for a in self.arrows:
            if a.src not in vset or a.tgt not in vset:
                raise ValueError(f"arrow {a.id} has an unknown endpoint")
        self.arrow = {a.id: a for a in self.arrows}
        self._out: Dict[Vertex, List[Arrow]] = defaultdict(list)
        self._in: Dict[Vertex, List[Arrow]] = defaultdict(list)
        for a in self.arrows:
            self._out[a.src].append(a)
            self._in[a.tgt].append(a)
        self.order = self._topological_order()

    def _topological_order(self) -> List[Vertex]:
        indeg = {v: len(self._in[v]) for v in self.vertices}
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self._out[v]:
                indeg[a.tgt] -= 1
                if indeg[a.tgt] == 0:
                    ready.append(a.tgt)
        if len(order) != len(self.vertices):
            raise CyclicQuiver("quiver has an oriented cycle")
        return order

    def out_arrows(self, v: Vertex) -> List[Arrow]:
        return self._out[v]

    def in_arrows(self, v: Vertex) -> List[Arrow]:
        return self._in[v]

    def path_endpoints(self, path: Sequence[str]) -> Tuple[Vertex, Vertex]:
        if not path:
            raise ValueError("empty path has no well-defined endpoints here")
        arrows = [self.arrow[a] for a in path]
        for x, y in zip(arrows, arrows[1:]):
            if x.tgt != y.src:
                raise RelationNotParallel(f"path {path} is not composable")
        return arrows[0].src, arrows[-1].tgt

    def paths(self, length: int, start: Optional[Vertex] = None) -> List[Tuple[str, ...]]:
        """All paths with ``length`` arrows (traversal order)."""
        starts = [start] if start is not None else self.vertices
        out = []
        for s in starts:
            frontier: List[Tuple[Tuple[str, ...], Vertex]] = [((), s)]
            for _ in range(length):
                frontier = [(p + (a.id,), a.tgt) for p, v in frontier for a in self._out[v]]
            out.extend(p for p, _ in frontier)
        return out

    def __repr__(self) -> str:
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


Relation = Mapping[Tuple[str, ...], object]


# ---------------------------------------------------------------- algebras


@dataclass
class BasisElement:
    src: Vertex
    tgt: Vertex
    grade: int
    degree: int = 0
    word: Optional[Tuple[str, ...]] = None
    label: str = ""


class PresentedAlgebra:
    """Finite-dimensional algebra given by a basis and structure constants."""

    def __init__(self, field: Field, vertices: Sequence[Vertex], basis: Sequence[BasisElement],
                 mult: Mapping[Tuple[int, int], Mapping[int, Scalar]],
                 arrows: Optional[Sequence[int]] = None, quiver: Optional[Quiver] = None,
                 name: str = ""):
        self.field = field
        self.vertices = list(vertices)
        self.basis = list(basis)
        self.mult: Dict[Tuple[int, int], Dict[int, Scalar]] = {
            k: {r: c for r, c in v.items() if c} for k, v in mult.items()}
        self.mult = {k: v for k, v in self.mult.items() if v}
        self.quiver = quiver
        self.name = name
        self.blocks: Dict[Tuple[Vertex, Vertex], List[int]] = defaultdict(list)
        for i, b in enumerate(self.basis):
            self.blocks[(b.src, b.tgt)].append(i)
        self.idem: Dict[Vertex, int] = {}
        for v in self.vertices:
            cands = [i for i in self.blocks.get((v, v), []) if self.basis[i].grade == 0]
            if len(cands) != 1:
                raise ValueError(f"vertex {v!r} needs exactly one grade-0 idempotent")
            self.idem[v] = cands[0]
        self._arrows = list(arrows) if arrows is not None else None
        self._words: Optional[Dict[int, List[Tuple[Scalar, Tuple[int, ...]]]]] = None
        self._left: Dict[int, List[Tuple[int, Dict[int, Scalar]]]] = defaultdict(list)
        self._right: Dict[int, List[Tuple[int, Dict[int, Scalar]]]] = defaultdict(list)
        for (l, r), res in self.mult.items():
            self._left[r].append((l, res))
            self._right[l].append((r, res))

    # -- basic queries
    @property
    def dim(self) -> int:
        return len(self.basis)

    def block(self, u: Vertex, v: Vertex) -> List[int]:
        return self.blocks.get((u, v), [])

    @property
    def arrows(self) -> List[int]:
        if self._arrows is None:
            self._arrows = gabriel_arrows(self)
        return self._arrows

    def is_graded_by_degree(self) -> bool:
        return any(b.degree for b in self.basis)

    def mul_basis(self, l: int, r: int) -> Dict[int, Scalar]:
        return self.mult.get((l, r), {})

    def mul(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Element:
        """Product ``x * y`` of two sparse elements (``y`` acts first)."""
        out: Dict[int, Scalar] = {}
        p = self.field.p
        for l, a in x.items():
            if not a:
                continue
            for r, b in y.items():
                if not b:
                    continue
                res = self.mult.get((l, r))
                if res:
                    ab = a * b
                    for k, c in res.items():
                        out[k] = out.get(k, 0) + ab * c
        if p:
            return {k: v % p for k, v in out.items() if v % p}
        return {k: v for k, v in out.items() if v}

    def left_products(self, r: int) -> List[Tuple[int, Dict[int, Scalar]]]:
        """All ``(l, l*r)`` with nonzero product."""
        return self._left[r]

    def right_products(self, l: int) -> List[Tuple[int, Dict[int, Scalar]]]:
        return self._right[l]

    def words(self) -> Dict[int, List[Tuple[Scalar, Tuple[int, ...]]]]:
        """Each basis element as a combination of products of arrows.

        Words are tuples of arrow basis ids in traversal order.
        """
        if self._words is None:
            self._words = word_expressions(self)
        return self._words

    def summary(self) -> dict:
        return {
            "name": self.name,
            "field": self.field.name,
            "vertices": len(self.vertices),
            "arrows": len(self.arrows),
            "dim": self.dim,
        }

    def __repr__(self) -> str:
        return f"PresentedAlgebra({self.name or '?'}, dim={self.dim}, field={self.field.name})"


def element_vector(x: Mapping[int, Scalar], ids: Sequence[int], field: Field) -> List[Scalar]:
    return [x.get(i, field.zero) for i in ids]


# ---------------------------------------------------------------- presentation


def present_algebra(q: Quiver, rels: Sequence[Relation] = (), field: Field = QQ,
                    name: str = "") -> PresentedAlgebra:
    """Path algebra of ``q`` modulo the ideal generated by ``rels``.

    Relations must be length-homogeneous combinations of parallel paths; the
    quotient is built one path length at a time:
    ``A_L = (A_{L-1} (x) V) / image(A_{L-l} (x) R_l)``.
    """
    clean: Dict[int, List[Tuple[Vertex, Vertex, Dict[Tuple[str, ...], Scalar]]]] = defaultdict(list)
    for rel in rels:
        terms = {tuple(p): field(c) for p, c in rel.items()}
        terms = {p: c for p, c in terms.items() if c}
        if not terms:
            raise RelationNotParallel("relation is the zero combination")
        ends = {q.path_endpoints(p) for p in terms}
        lengths = {len(p) for p in terms}
        if len(ends) != 1:
            raise RelationNotParallel(f"relation mixes endpoints: {sorted(map(str, ends))}")
        if len(lengths) != 1:
            raise RelationNotParallel("relation is not length-homogeneous")
        (src, tgt), = ends
        clean[lengths.pop()].append((src, tgt, terms))

    basis: List[BasisElement] = []
    # level data: per level, per block, list of basis ids
    level_blocks: List[Dict[Tuple[Vertex, Vertex], List[int]]] = []
    # reduce map: (basis id at level L-1, arrow id) -> element at level L
    reduce_map: Dict[Tuple[int, str], Dict[int, Scalar]] = {}

    lvl0: Dict[Tuple[Vertex, Vertex], List[int]] = {}
    for v in q.vertices:
        basis.append(BasisElement(v, v, 0, 0, (), f"e{_vname(v)}"))
        lvl0[(v, v)] = [len(basis) - 1]
    level_blocks.append(lvl0)

    def nf_extend(vec: Mapping[int, Scalar], arrow_id: str) -> Dict[int, Scalar]:
        out: Dict[int, Scalar] = {}
        for b, c in vec.items():
            img = reduce_map.get((b, arrow_id))
            if img is None:
                continue
            for k, val in img.items():
                out[k] = field.norm(out.get(k, 0) + c * val)
        return {k: v for k, v in out.items() if v}

    def nf_word(start: Vertex, word: Sequence[str]) -> Dict[int, Scalar]:
        vec: Dict[int, Scalar] = {level_blocks[0][(start, start)][0]: field.one}
        for a in word:
            vec = nf_extend(vec, a)
            if not vec:
                break
        return vec

    L = 0
    while True:
        L += 1
        prev = level_blocks[L - 1]
        # candidates per block (u, v)
        cands: Dict[Tuple[Vertex, Vertex], List[Tuple[int, str]]] = defaultdict(list)
        for (u, w), ids in prev.items():
            for a in q.out_arrows(w):
                for b in ids:
                    cands[(u, a.tgt)].append((b, a.id))
        if not cands:
            break
        # relation images
        rel_vecs: Dict[Tuple[Vertex, Vertex], List[Dict[Tuple[int, str], Scalar]]] = defaultdict(list)
        for ell, rlist in clean.items():
            if ell > L:
                continue
            base = level_blocks[L - ell]
            for (x, v, terms) in rlist:
                for (u, xx), ids in base.items():
                    if xx != x:
                        continue
                    for b in ids:
                        word_b = basis[b].word
                        vec: Dict[Tuple[int, str], Scalar] = {}
                        for path, c in terms.items():
                            head = nf_word(u, tuple(word_b) + tuple(path[:-1]))
                            for k, val in head.items():
                                key = (k, path[-1])
                                vec[key] = field.norm(vec.get(key, 0) + c * val)
                        vec = {k: val for k, val in vec.items() if val}
                        if vec:
                            rel_vecs[(u, v)].append(vec)
        new_blocks: Dict[Tuple[Vertex, Vertex], List[int]] = {}
        for key in sorted(cands, key=lambda k: (_sort_key(k[0]), _sort_key(k[1]))):
            clist = cands[key]
            col = {c: i for i, c in enumerate(clist)}
            n = len(clist)
            # columns reversed so that pivots fall on later candidates
            space = Subspace(n, field)
            for rv in rel_vecs.get(key, []):
                dense = [field.zero] * n
                for c, val in rv.items():
                    dense[n - 1 - col[c]] = val
                space.add(dense)
            pivot_cols = {n - 1 - pc for pc in space.pivots}
            ids = []
            for i, (b, a) in enumerate(clist):
                if i in pivot_cols:
                    continue
                word = tuple(basis[b].word) + (a,)
                basis.append(BasisElement(key[0], key[1], L, 0, word, _word_label(word)))
                ids.append(len(basis) - 1)
                reduce_map[(b, a)] = {len(basis) - 1: field.one}
            nonpiv_index = {i: bid for i, bid in zip([i for i in range(n) if i not in pivot_cols], ids)}
            for row, pc in zip(space.rows, space.pivots):
                i = n - 1 - pc
                img: Dict[int, Scalar] = {}
                for j in range(n):
                    jj = n - 1 - j
                    if jj in nonpiv_index and row[j]:
                        img[nonpiv_index[jj]] = field.norm(-row[j])
                reduce_map[clist[i]] = img
            if ids:
                new_blocks[key] = ids
        if not new_blocks:
            break
        level_blocks.append(new_blocks)

    # multiplication
    mult: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    by_src: Dict[Vertex, List[int]] = defaultdict(list)
    for i, b in enumerate(basis):
        by_src[b.src].append(i)
    for r, br in enumerate(basis):
        for l in by_src[br.tgt]:
            bl = basis[l]
            vec = {r: field.one}
            for a in bl.word:
                vec = nf_extend(vec, a)
                if not vec:
                    break
            if vec:
                mult[(l, r)] = vec
    arrows = [i for i, b in enumerate(basis) if b.grade == 1]
    return PresentedAlgebra(field, q.vertices, basis, mult, arrows=arrows, quiver=q, name=name)


def _word_label(word: Sequence[str]) -> str:
    return "*".join(reversed(word))


def _vname(v: Vertex) -> str:
    return vertex_name(v)


def vertex_name(v: Vertex) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(str(x) for x in v) + ")"
    return str(v)


def parse_vertex(s: str) -> Vertex:
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        inner = s[1:-1].strip()
        if not inner:
            return ()
        return tuple(int(x) for x in inner.split(","))
    try:
        return int(s)
    except ValueError:
        return s


def _sort_key(v: Vertex):
    if isinstance(v, tuple):
        return (1, tuple(_sort_key(x) for x in v))
    if isinstance(v, int):
        return (0, v)
    return (2, str(v))


# ---------------------------------------------------------------- constructions


def _pair(u: Vertex, v: Vertex) -> Vertex:
    return (u if isinstance(u, tuple) else (u,)) + (v if isinstance(v, tuple) else (v,))


def tensor_algebra(A: PresentedAlgebra, B: PresentedAlgebra, name: str = "") -> PresentedAlgebra:
    """``A (x) B`` with componentwise multiplication (Koszul sign on degrees)."""
    if A.field != B.field:
        raise ValueError("tensor factors must share a field")
    f = A.field
    vertices = [_pair(u, v) for u in A.vertices for v in B.vertices]
    if len(set(vertices)) != len(vertices):
        vertices = [(u, v) for u in A.vertices for v in B.vertices]
        pair = lambda u, v: (u, v)  # noqa: E731
    else:
        pair = _pair
    index: Dict[Tuple[int, int], int] = {}
    basis: List[BasisElement] = []
    for i, a in enumerate(A.basis):
        for j, b in enumerate(B.basis):
            index[(i, j)] = len(basis)
            lab = a.label if b.grade == 0 else (b.label if a.grade == 0 else f"{a.label}(x){b.label}")
            basis.append(BasisElement(pair(a.src, b.src), pair(a.tgt, b.tgt), a.grade + b.grade,
                                      a.degree + b.degree, None, lab))
    mult: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    for (l1, r1), res1 in A.mult.items():
        for (l2, r2), res2 in B.mult.items():
            sign = -1 if (B.basis[l2].degree * A.basis[r1].degree) % 2 else 1
            out = {}
            for k1, c1 in res1.items():
                for k2, c2 in res2.items():
                    out[index[(k1, k2)]] = f.norm(sign * c1 * c2)
            mult[(index[(l1, l2)], index[(r1, r2)])] = out
    arrows = sorted({index[(a, B.idem[v])] for a in A.arrows for v in B.vertices}
                    | {index[(A.idem[u], b)] for b in B.arrows for u in A.vertices})
    return PresentedAlgebra(f, vertices, basis, mult, arrows=arrows, name=name)


def opposite(A: PresentedAlgebra, name: str = "") -> PresentedAlgebra:
    basis = [BasisElement(b.tgt, b.src, b.grade, b.degree,
                          tuple(reversed(b.word)) if b.word is not None else None, b.label)
             for b in A.basis]
    mult = {}
    for (l, r), res in A.mult.items():
        sign = -1 if (A.basis[l].degree * A.basis[r].degree) % 2 else 1
        mult[(r, l)] = {k: A.field.norm(sign * c) for k, c in res.items()}
    return PresentedAlgebra(A.field, A.vertices, basis, mult, arrows=list(A.arrows),
                            name=name or (A.name + "^op" if A.name else ""))


def corner_algebra(A: PresentedAlgebra, keep: Sequence[Vertex], name: str = "") -> PresentedAlgebra:
    """``e A e`` for ``e`` the sum of the idempotents at ``keep``."""
    kset = set(keep)
    old = [i for i, b in enumerate(A.basis) if b.src in kset and b.tgt in kset]
    new_id = {o: n for n, o in enumerate(old)}
    basis = [A.basis[o] for o in old]
    basis = [BasisElement(b.src, b.tgt, b.grade, b.degree, b.word, b.label) for b in basis]
    mult = {}
    for (l, r), res in A.mult.items():
        if l in new_id and r in new_id:
            mult[(new_id[l], new_id[r])] = {new_id[k]: c for k, c in res.items()}
    return PresentedAlgebra(A.field, list(keep), basis, mult, name=name)


def reorder_vertices(A: PresentedAlgebra, order: Sequence[Vertex], name: str = "") -> PresentedAlgebra:
    """Same algebra with its vertex list permuted."""
    if sorted(map(repr, order)) != sorted(map(repr, A.vertices)):
        raise ValueError("order must be a permutation of the vertices")
    return PresentedAlgebra(A.field, order, A.basis, A.mult, arrows=A._arrows, quiver=A.quiver,
                            name=name or A.name)


def change_field(A: PresentedAlgebra, field: Field) -> PresentedAlgebra:
    """Reduces integral structure constants into another field."""
    mult = {k: {r: field(c) for r, c in v.items()} for k, v in A.mult.items()}
    return PresentedAlgebra(field, A.vertices, A.basis, mult, arrows=A._arrows, quiver=A.quiver,
                            name=A.name)


# ---------------------------------------------------------------- invariants


def cartan_matrix(A: PresentedAlgebra) -> List[List[int]]:
    """Entry ``[u][v]`` is the dimension of the basis from ``u`` to ``v``."""
    return [[len(A.block(u, v)) for v in A.vertices] for u in A.vertices]


def _check_directed(A: PresentedAlgebra) -> None:
    for v in A.vertices:
        if len(A.block(v, v)) != 1:
            raise ValueError(f"vertex {v!r} carries loops; only directed algebras are supported")


def _rad2_space(A: PresentedAlgebra, u: Vertex, v: Vertex) -> Subspace:
    ids = A.block(u, v)
    pos = {i: k for k, i in enumerate(ids)}
    space = Subspace(len(ids), A.field)
    for w in A.vertices:
        if w == u or w == v:
            continue
        for y in A.block(u, w):
            for x, res in A.left_products(y):
                if A.basis[x].tgt != v:
                    continue
                vec = [A.field.zero] * len(ids)
                for k, c in res.items():
                    vec[pos[k]] = c
                space.add(vec)
    return space


def gabriel_arrows(A: PresentedAlgebra) -> List[int]:
    """Basis elements projecting to a basis of ``rad / rad^2``."""
    _check_directed(A)
    arrows = []
    for u in A.vertices:
        for v in A.vertices:
            if u == v or not A.block(u, v):
                continue
            ids = A.block(u, v)
            pos = {i: k for k, i in enumerate(ids)}
            space = _rad2_space(A, u, v)
            for i in sorted(ids, key=lambda i: (A.basis[i].grade, i)):
                vec = [A.field.zero] * len(ids)
                vec[pos[i]] = A.field.one
                if space.add(vec):
                    arrows.append(i)
    return sorted(arrows)


def word_expressions(A: PresentedAlgebra) -> Dict[int, List[Tuple[Scalar, Tuple[int, ...]]]]:
    f = A.field
    arrows = A.arrows
    out_arrows: Dict[Vertex, List[int]] = defaultdict(list)
    for a in arrows:
        out_arrows[A.basis[a].src].append(a)
    result: Dict[int, List[Tuple[Scalar, Tuple[int, ...]]]] = {}
    for u in A.vertices:
        spaces: Dict[Vertex, Subspace] = {}
        words: Dict[Vertex, List[Tuple[int, ...]]] = defaultdict(list)
        frontier = [((), u, {A.idem[u]: f.one})]
        while frontier:
            nxt = []
            for word, w, vec in frontier:
                ids = A.block(u, w)
                if w not in spaces:
                    spaces[w] = Subspace(len(ids), f, track=True)
                dense = element_vector(vec, ids, f)
                if not spaces[w].add(dense):
                    continue
                words[w].append(word)
                for a in out_arrows[w]:
                    prod = A.mul({a: f.one}, vec)
                    if prod:
                        nxt.append((word + (a,), A.basis[a].tgt, prod))
            frontier = nxt
        for v in A.vertices:
            ids = A.block(u, v)
            for k, i in enumerate(ids):
                dense = [f.zero] * len(ids)
                dense[k] = f.one
                coords = spaces[v].coordinates(dense) if v in spaces else None
                if coords is None:
                    raise ValueError("arrows do not generate the algebra")
                result[i] = [(c, words[v][g]) for g, c in sorted(coords.items())]
    return result


def gabriel_presentation(A: PresentedAlgebra, max_length: Optional[int] = None) -> Tuple[Quiver, Dict[int, int]]:
    """Gabriel quiver of ``A`` plus the per-length relation dimensions.

    The profile maps a path length ``L >= 2`` to the dimension of the kernel
    of the evaluation map from length-``L`` paths of the Gabriel quiver to ``A``.
    """
    arrows = A.arrows
    q = Quiver(A.vertices, [Arrow(f"a{i}", A.basis[i].src, A.basis[i].tgt) for i in arrows])
    f = A.field
    profile: Dict[int, int] = {}
    L = 2
    while max_length is None or L <= max_length:
        paths = q.paths(L)
        if not paths:
            break
        groups: Dict[Tuple[Vertex, Vertex], List[Tuple[str, ...]]] = defaultdict(list)
        for p in paths:
            groups[q.path_endpoints(p)].append(p)
        kernel = 0
        for (u, v), plist in groups.items():
            ids = A.block(u, v)
            rows = []
            for p in plist:
                vec = {A.idem[u]: f.one}
                for a in p:
                    vec = A.mul({int(a[1:]): f.one}, vec)
                rows.append(element_vector(vec, ids, f))
            kernel += len(plist) - (rank(rows, f) if ids else 0)
        profile[L] = kernel
        L += 1
    return q, profile


def check_associativity(A: PresentedAlgebra) -> bool:
    """``(xy)z == x(yz)`` on all composable basis triples, plus unit laws."""
    f = A.field
    for i, b in enumerate(A.basis):
        if A.mul_basis(A.idem[b.tgt], i) != {i: f.one} or A.mul_basis(i, A.idem[b.src]) != {i: f.one}:
            return False
    by_src: Dict[Vertex, List[int]] = defaultdict(list)
    for i, b in enumerate(A.basis):
        by_src[b.src].append(i)
    for z, bz in enumerate(A.basis):
        for y in by_src[bz.tgt]:
            yz = A.mul_basis(y, z)
            for x in by_src[A.basis[y].tgt]:
                lhs = A.mul(A.mul_basis(x, y), {z: f.one})
                rhs = A.mul({x: f.one}, yz)
                if lhs != rhs:
                    return False
    return True


def check_grading(A: PresentedAlgebra) -> bool:
    for (l, r), res in A.mult.items():
        g = A.basis[l].grade + A.basis[r].grade
        if any(A.basis[k].grade != g for k in res):
            return False
    return True


def regrade(E: PresentedAlgebra) -> PresentedAlgebra:
    """Re-grades a directed algebra by its radical filtration, changing basis to an adapted one."""
    f = E.field
    verts = E.vertices
    # rad^k per block as subspaces in original coordinates
    current: Dict[Tuple[Vertex, Vertex], List[list]] = {}
    for (u, v), ids in E.blocks.items():
        if u != v:
            current[(u, v)] = [[f.one if j == k else f.zero for j in range(len(ids))] for k in range(len(ids))]
    k = 1
    level_spaces = [dict(current)]
    while any(current.values()):
        nxt: Dict[Tuple[Vertex, Vertex], List[list]] = {}
        for (u, w), vecs in current.items():
            for v in verts:
                if v == w or v == u or not E.block(w, v) or not E.block(u, v):
                    continue
                ids_uw, ids_uv = E.block(u, w), E.block(u, v)
                s = Subspace(len(ids_uv), f)
                for vec in nxt.get((u, v), []):
                    s.add(vec)
                for vec in vecs:
                    x = {ids_uw[j]: c for j, c in enumerate(vec) if c}
                    for a in E.block(w, v):
                        prod_ = E.mul({a: f.one}, x)
                        dense = [prod_.get(i, f.zero) for i in ids_uv]
                        if s.add(dense):
                            nxt.setdefault((u, v), []).append(dense)
        current = {key: vecs for key, vecs in nxt.items() if vecs}
        if current:
            level_spaces.append(dict(current))
        k += 1
    # adapted basis per block: deepest layer first
    new_basis: List[BasisElement] = []
    change: List[Dict[int, object]] = []  # new id -> combination of old ids
    old_to_new: Dict[int, int] = {}
    for v in verts:
        i = E.idem[v]
        old_to_new[i] = len(new_basis)
        new_basis.append(BasisElement(v, v, 0, E.basis[i].degree, None, E.basis[i].label))
        change.append({i: f.one})
    for (u, v), ids in sorted(E.blocks.items(), key=lambda kv: min(kv[1])):
        if u == v:
            continue
        s = Subspace(len(ids), f)
        chosen = []
        for lvl in range(len(level_spaces) - 1, -1, -1):
            for vec in level_spaces[lvl].get((u, v), []):
                if s.add(vec):
                    chosen.append((lvl + 1, vec))
        for grade, vec in sorted(chosen, key=lambda t: t[0]):
            new_basis.append(BasisElement(u, v, grade, E.basis[ids[0]].degree, None, ""))
            change.append({ids[j]: c for j, c in enumerate(vec) if c})
    # express products in the new basis
    coord_space: Dict[Tuple[Vertex, Vertex], Tuple[Subspace, List[int]]] = {}
    for n_id, b in enumerate(new_basis):
        key = (b.src, b.tgt)
        if key not in coord_space:
            coord_space[key] = (Subspace(len(E.block(*key)), f, track=True), [])
        s, members = coord_space[key]
        s.add([change[n_id].get(i, f.zero) for i in E.block(*key)])
        members.append(n_id)
    mult = {}
    for r, br in enumerate(new_basis):
        for l, bl in enumerate(new_basis):
            if bl.src != br.tgt:
                continue
            prod_ = E.mul(change[l], change[r])
            if not prod_:
                continue
            key = (br.src, bl.tgt)
            s, members = coord_space[key]
            coords = s.coordinates([prod_.get(i, f.zero) for i in E.block(*key)])
            mult[(l, r)] = {members[g]: c for g, c in coords.items() if c}
    return PresentedAlgebra(f, verts, new_basis, mult, name=E.name)


# ---------------------------------------------------------------- isomorphisms


@dataclass
class Isomorphism:
    """Certified algebra isomorphism: ``images[i] = (j, s)`` maps basis ``i`` to ``s * b_j``."""

    vmap: Dict[Vertex, Vertex]
    images: Dict[int, Tuple[int, Scalar]]
    arrow_images: Dict[int, Tuple[int, Scalar]] = dc_field(default_factory=dict)


def find_isomorphism(A: PresentedAlgebra, B: PresentedAlgebra,
                     vmap: Mapping[Vertex, Vertex]) -> Optional[Isomorphism]:
    """Searches arrow rescalings giving an isomorphism compatible with ``vmap``.

    Supports algebras whose Hom blocks have dimension at most one (this holds
    for every algebra in the package).  Returns ``None`` if none exists.
    """
    vmap = dict(vmap)
    if set(vmap) != set(A.vertices) or sorted(map(repr, vmap.values())) != sorted(map(repr, B.vertices)) \
            or len(set(vmap.values())) != len(vmap):
        raise VertexMapInvalid("vertex map is not a bijection between the vertex sets")
    if A.field != B.field:
        raise VertexMapInvalid("algebras live over different fields")
    for u in A.vertices:
        for v in A.vertices:
            if len(A.block(u, v)) != len(B.block(vmap[u], vmap[v])):
                raise VertexMapInvalid(f"Cartan entries differ at ({u!r}, {v!r})")
    for key, ids in A.blocks.items():
        if len(ids) > 1:
            raise ValueError("find_isomorphism supports Hom blocks of dimension <= 1")
    for key, ids in B.blocks.items():
        if len(ids) > 1:
            raise ValueError("find_isomorphism supports Hom blocks of dimension <= 1")
    f = A.field
    if any(A.basis[i].degree != B.basis[B.block(vmap[A.basis[i].src], vmap[A.basis[i].tgt])[0]].degree
           for i in range(A.dim)):
        return None
    xa = {k: ids[0] for k, ids in A.blocks.items()}
    xb = {k: ids[0] for k, ids in B.blocks.items()}
    unknown = [k for k in xa if k[0] != k[1]]
    s: Dict[Tuple[Vertex, Vertex], Scalar] = {(v, v): f.one for v in A.vertices}

    # equations s(w,v) s(u,w) m' = m s(u,v)
    eqs = []
    for (u, w), y in xa.items():
        if u == w:
            continue
        for x, res in A.left_products(y):
            v = A.basis[x].tgt
            if v == w:
                continue
            m = res.get(xa.get((u, v), -1), f.zero) if (u, v) in xa else f.zero
            yb, xbb = xb[(vmap[u], vmap[w])], xb[(vmap[w], vmap[v])]
            resb = B.mul_basis(xbb, yb)
            mb = resb.get(xb.get((vmap[u], vmap[v]), -1), f.zero)
            if bool(m) != bool(mb):
                return None
            if m:
                eqs.append(((w, v), (u, w), mb, m, (u, v)))
    arrow_blocks = [(A.basis[a].src, A.basis[a].tgt) for a in A.arrows]
    # spanning forest gauge
    parent = {v: v for v in A.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (u, v) in arrow_blocks:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            s[(u, v)] = f.one

    by_unknown: Dict[Tuple[Vertex, Vertex], List[int]] = defaultdict(list)
    for n, (a, b, mb, m, c) in enumerate(eqs):
        for k in (a, b, c):
            by_unknown[k].append(n)

    def try_solve(n) -> Optional[bool]:
        a, b, mb, m, c = eqs[n]
        missing = [k for k in (a, b, c) if k not in s]
        if len(missing) != 1:
            return None
        k = missing[0]
        if k == c:
            s[c] = f.norm(s[a] * s[b] * mb * f.inv(m))
        elif k == a:
            s[a] = f.norm(m * s[c] * f.inv(s[b] * mb))
        else:
            s[b] = f.norm(m * s[c] * f.inv(s[a] * mb))
        return True

    work = list(range(len(eqs)))
    remaining = [k for k in unknown if k not in s]
    while True:
        progress = True
        while progress and work:
            progress = False
            nxt = []
            for n in work:
                r = try_solve(n)
                if r:
                    progress = True
                elif r is None and any(k not in s for k in (eqs[n][0], eqs[n][1], eqs[n][4])):
                    nxt.append(n)
            work = nxt
        remaining = [k for k in unknown if k not in s]
        if not remaining:
            break
        pick = next((k for k in remaining if k in set(arrow_blocks)), remaining[0])
        s[pick] = f.one
    for a, b, mb, m, c in eqs:
        if f.norm(s[a] * s[b] * mb - m * s[c]):
            return None
    images = {xa[k]: (xb[(vmap[k[0]], vmap[k[1]])], s[k]) for k in xa}
    if any(not sc for _, sc in images.values()):
        return None
    # final certificate: multiplicativity on every basis pair
    for (l, r), res in A.mult.items():
        jl, sl = images[l]
        jr, sr = images[r]
        lhs = {images[k][0]: f.norm(c * images[k][1]) for k, c in res.items()}
        rhs = {k: f.norm(c * sl * sr) for k, c in B.mul_basis(jl, jr).items()}
        if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
            return None
    # every nonzero B product must come from a nonzero A product
    inv_img = {j: i for i, (j, _) in images.items()}
    for (l, r), res in B.mult.items():
        if (inv_img[l], inv_img[r]) not in A.mult:
            return None
    return Isomorphism(vmap, images, {a: images[a] for a in A.arrows})


# ---------------------------------------------------------------- I/O


def to_json(A: PresentedAlgebra) -> dict:
    names = [vertex_name(v) for v in A.vertices]
    basis = [{"id": i, "src": vertex_name(b.src), "tgt": vertex_name(b.tgt), "grade": b.grade,
              "degree": b.degree} for i, b in enumerate(A.basis)]
    mult = []
    for (l, r) in sorted(A.mult):
        for k, c in sorted(A.mult[(l, r)].items()):
            mult.append([l, r, k, A.field.fmt(c)])
    return {"field": A.field.name, "vertices": names, "basis": basis, "mult": mult}


def from_json(data: Mapping) -> PresentedAlgebra:
    field = Field.parse(data["field"])
    vertices = [parse_vertex(v) for v in data["vertices"]]
    basis: List[Optional[BasisElement]] = [None] * len(data["basis"])
    for b in data["basis"]:
        basis[b["id"]] = BasisElement(parse_vertex(b["src"]), parse_vertex(b["tgt"]), b["grade"],
                                      b.get("degree", 0), None, f"b{b['id']}")
    mult: Dict[Tuple[int, int], Dict[int, Scalar]] = defaultdict(dict)
    for l, r, k, c in data["mult"]:
        mult[(l, r)][k] = field(c)
    return PresentedAlgebra(field, vertices, basis, mult)


def dumps(A: PresentedAlgebra) -> str:
    return json.dumps(to_json(A), sort_keys=True, indent=2) + "\n"


def to_dot(q: Quiver, name: str = "Q") -> str:
    lines = [f"digraph {json.dumps(name)} {{"]
    for v in q.vertices:
        lines.append(f"  {json.dumps(vertex_name(v))};")
    for a in q.arrows:
        lines.append(f"  {json.dumps(vertex_name(a.src))} -> {json.dumps(vertex_name(a.tgt))}"
                     f" [label={json.dumps(a.id)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
