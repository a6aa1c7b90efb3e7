"""Representations of presented algebras: Hom, Ext, resolutions and End algebras."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (BasisElement, PresentedAlgebra, Vertex, find_isomorphism, opposite,
                      regrade, vertex_name)
from .errors import AlgebraMismatch, DecomposableSummand, FirstEntryOne, KindMismatch
from .linalg import Field, Matrix, Subspace, identity, kernel_basis, matmul, rank, zeros
from .zoo import build_A, index_set, rev

Element = Dict[int, object]


class Representation:
    """A left module: one space per vertex and one matrix per Gabriel arrow.

    ``maps[a]`` has shape ``dims[tgt(a)] x dims[src(a)]``.
    """

    def __init__(self, algebra: PresentedAlgebra, dims: Mapping[Vertex, int],
                 maps: Mapping[int, Matrix], name: str = ""):
        self.algebra = algebra
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        self.maps = {a: maps[a] for a in algebra.arrows if a in maps}
        self.name = name
        self._act: Dict[int, Matrix] = {}
        for a in algebra.arrows:
            b = algebra.basis[a]
            m = self.maps.get(a)
            rows, cols = self.dims[b.tgt], self.dims[b.src]
            if m is None:
                self.maps[a] = zeros(rows, cols, algebra.field)
            elif len(m) != rows or any(len(r) != cols for r in m):
                raise ValueError(f"arrow {a} matrix has the wrong shape")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dimvec(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def act(self, x: int) -> Matrix:
        """Matrix of the basis element ``x`` acting from ``src(x)`` to ``tgt(x)``."""
        if x in self._act:
            return self._act[x]
        A = self.algebra
        f = self.field
        b = A.basis[x]
        rows, cols = self.dims[b.tgt], self.dims[b.src]
        out = zeros(rows, cols, f)
        if rows and cols:
            for c, word in A.words()[x]:
                m = identity(cols, f)
                for a in word:
                    m = matmul(self.maps[a], m, f, inner=len(m))
                for i in range(rows):
                    for j in range(cols):
                        if m[i][j]:
                            out[i][j] = f.norm(out[i][j] + c * m[i][j])
        self._act[x] = out
        return out

    def act_element(self, x: Mapping[int, object], u: Vertex, v: Vertex) -> Matrix:
        f = self.field
        out = zeros(self.dims[v], self.dims[u], f)
        for k, c in x.items():
            m = self.act(k)
            for i, row in enumerate(m):
                for j, val in enumerate(row):
                    if val:
                        out[i][j] = f.norm(out[i][j] + c * val)
        return out

    def is_module(self) -> bool:
        """Every arrow acts compatibly with the multiplication table."""
        A = self.algebra
        f = self.field
        for a in A.arrows:
            for y, res in A.right_products(a):
                by = A.basis[y]
                lhs = matmul(self.act(a), self.act(y), f, inner=self.dims[by.tgt])
                rhs = self.act_element(res, by.src, A.basis[a].tgt)
                if lhs != rhs:
                    return False
        return True

    def to_json(self) -> dict:
        A = self.algebra
        return {
            "algebra": A.name,
            "dims": {vertex_name(v): self.dims[v] for v in A.vertices},
            "maps": {str(a): [[self.field.fmt(x) for x in row] for row in m]
                     for a, m in sorted(self.maps.items())},
        }

    def __repr__(self) -> str:
        return f"Representation({self.name or '?'}, dims={self.dimvec()})"


def representation_from_json(A: PresentedAlgebra, data: Mapping) -> Representation:
    from .algebra import parse_vertex
    dims = {parse_vertex(k): v for k, v in data["dims"].items()}
    maps = {int(k): [[A.field(x) for x in row] for row in m] for k, m in data["maps"].items()}
    return Representation(A, dims, maps)


# ---------------------------------------------------------------- basic modules


def projective(A: PresentedAlgebra, v: Vertex) -> Representation:
    """``A e_v``: at vertex ``w`` the basis elements from ``v`` to ``w``."""
    f = A.field
    dims = {w: len(A.block(v, w)) for w in A.vertices}
    maps = {}
    for a in A.arrows:
        ba = A.basis[a]
        src, tgt = A.block(v, ba.src), A.block(v, ba.tgt)
        pos = {y: i for i, y in enumerate(tgt)}
        m = zeros(len(tgt), len(src), f)
        for j, x in enumerate(src):
            for y, c in A.mul_basis(a, x).items():
                m[pos[y]][j] = c
        maps[a] = m
    return Representation(A, dims, maps, name=f"P{vertex_name(v)}")


def injective(A: PresentedAlgebra, v: Vertex) -> Representation:
    """``D(e_v A)``: at vertex ``w`` the dual of the basis from ``w`` to ``v``."""
    f = A.field
    dims = {w: len(A.block(w, v)) for w in A.vertices}
    maps = {}
    for a in A.arrows:
        ba = A.basis[a]
        src, tgt = A.block(ba.src, v), A.block(ba.tgt, v)
        pos = {x: j for j, x in enumerate(src)}
        m = zeros(len(tgt), len(src), f)
        for i, y in enumerate(tgt):
            for x, c in A.mul_basis(y, a).items():
                m[i][pos[x]] = c
        maps[a] = m
    return Representation(A, dims, maps, name=f"I{vertex_name(v)}")


def simple(A: PresentedAlgebra, v: Vertex) -> Representation:
    return Representation(A, {v: 1}, {}, name=f"S{vertex_name(v)}")


def dual_module(M: Representation, Aop: PresentedAlgebra) -> Representation:
    """``D M`` as a module over the opposite algebra (arrow ids are shared)."""
    maps = {a: [list(c) for c in zip(*m)] if m and m[0] else zeros(M.dims[M.algebra.basis[a].src],
                                                                    M.dims[M.algebra.basis[a].tgt],
                                                                    M.field)
            for a, m in M.maps.items()}
    return Representation(Aop, M.dims, maps, name=f"D{M.name}")


# ---------------------------------------------------------------- Hom


def _same_algebra(M: Representation, N: Representation) -> None:
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules live over different algebras")


def hom_space(M: Representation, N: Representation) -> List[Dict[Vertex, Matrix]]:
    """Basis of ``Hom_A(M, N)``; each element maps vertex ``v`` to a ``dims_N x dims_M`` matrix."""
    _same_algebra(M, N)
    A = M.algebra
    f = M.field
    offset = {}
    n = 0
    for v in A.vertices:
        offset[v] = n
        n += N.dims[v] * M.dims[v]
    if n == 0:
        return []
    rows = []
    for a in A.arrows:
        ba = A.basis[a]
        u, v = ba.src, ba.tgt
        Ma, Na = M.maps[a], N.maps[a]
        # (f_v M_a - N_a f_u)[i][j]
        for i in range(N.dims[v]):
            for j in range(M.dims[u]):
                row = [f.zero] * n
                for k in range(M.dims[v]):
                    if Ma[k][j]:
                        row[offset[v] + i * M.dims[v] + k] = Ma[k][j]
                for k in range(N.dims[u]):
                    if Na[i][k]:
                        idx = offset[u] + k * M.dims[u] + j
                        row[idx] = f.norm(row[idx] - Na[i][k])
                if any(row):
                    rows.append(row)
    basis = kernel_basis(rows, f, cols=n) if rows else [[f.one if i == j else f.zero for i in range(n)]
                                                         for j in range(n)]
    out = []
    for vec in basis:
        fam = {}
        for v in A.vertices:
            r, c = N.dims[v], M.dims[v]
            fam[v] = [vec[offset[v] + i * c: offset[v] + (i + 1) * c] for i in range(r)]
        out.append(fam)
    return out


def _flatten(fam: Mapping[Vertex, Matrix], vertices: Sequence[Vertex]) -> list:
    return [x for v in vertices for row in fam[v] for x in row]


def compose(g: Mapping[Vertex, Matrix], f_: Mapping[Vertex, Matrix], M: Representation,
            field: Field) -> Dict[Vertex, Matrix]:
    """``g o f`` vertexwise; ``M`` is the source of ``f``."""
    return {v: matmul(g[v], f_[v], field, inner=len(f_[v])) for v in M.algebra.vertices}


# ---------------------------------------------------------------- resolutions


@dataclass
class Resolution:
    """Minimal projective resolution ``... -> P_1 -> P_0 -> M``.

    ``terms[i]`` lists the vertices of the indecomposable summands of ``P_i``.
    ``diffs[i]`` (for ``i >= 1``) sends generator ``c`` of ``P_i`` to a sparse
    element ``{(r, basis id): coeff}`` of ``P_{i-1}``, where the basis id lies in
    the block from ``terms[i-1][r]`` to ``terms[i][c]``.
    """

    module: Representation
    terms: List[List[Vertex]]
    diffs: List[List[Dict[Tuple[int, int], object]]]
    truncated: bool = False

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def dimvec_check(self) -> bool:
        """Alternating sum of projective dimension vectors equals that of the module."""
        A = self.module.algebra
        tot = {v: 0 for v in A.vertices}
        for i, term in enumerate(self.terms):
            for w in term:
                for v in A.vertices:
                    tot[v] += (-1) ** i * len(A.block(w, v))
        return self.truncated or all(tot[v] == self.module.dims[v] for v in A.vertices)

    def is_minimal(self) -> bool:
        A = self.module.algebra
        for i in range(1, len(self.terms)):
            for col in self.diffs[i]:
                for (_, x) in col:
                    if A.basis[x].src == A.basis[x].tgt:
                        return False
        return True


def top_generators(M: Representation) -> List[Tuple[Vertex, List]]:
    """Vectors spanning a complement of the radical at each vertex."""
    A = M.algebra
    f = M.field
    out = []
    for v in A.vertices:
        dv = M.dims[v]
        if dv == 0:
            continue
        space = Subspace(dv, f)
        for a in A.arrows:
            if A.basis[a].tgt == v:
                for col in zip(*M.maps[a]) if M.maps[a] and M.maps[a][0] else []:
                    space.add(list(col))
        for i in range(dv):
            e = [f.zero] * dv
            e[i] = f.one
            if space.add(e):
                out.append((v, e))
    return out


def _cover(M: Representation):
    """Projective cover data: generators, the map ``P -> M`` per vertex, column labels."""
    A = M.algebra
    f = M.field
    gens = top_generators(M)
    cols: Dict[Vertex, List[Tuple[int, int]]] = {w: [] for w in A.vertices}
    for g, (v, _) in enumerate(gens):
        for w in A.vertices:
            for x in A.block(v, w):
                cols[w].append((g, x))
    pi: Dict[Vertex, Matrix] = {}
    for w in A.vertices:
        m = zeros(M.dims[w], len(cols[w]), f)
        for j, (g, x) in enumerate(cols[w]):
            v, vec = gens[g]
            img = [sum(a * b for a, b in zip(row, vec)) for row in M.act(x)]
            for i, val in enumerate(img):
                m[i][j] = f.norm(val)
        pi[w] = m
    return gens, cols, pi


def _submodule(A: PresentedAlgebra, gens, cols, basis_cols: Dict[Vertex, List[List]]) -> Representation:
    """Submodule of the free cover spanned by the given column vectors at each vertex."""
    f = A.field
    maps = {}
    for a in A.arrows:
        ba = A.basis[a]
        u, v = ba.src, ba.tgt
        tgt_space = Subspace(len(cols[v]), f, track=True)
        for vec in basis_cols[v]:
            tgt_space.add(vec)
        pos = {c: i for i, c in enumerate(cols[v])}
        m = zeros(len(basis_cols[v]), len(basis_cols[u]), f)
        for j, vec in enumerate(basis_cols[u]):
            img = [f.zero] * len(cols[v])
            for k, (g, x) in enumerate(cols[u]):
                if vec[k]:
                    for y, c in A.mul_basis(a, x).items():
                        i = pos[(g, y)]
                        img[i] = f.norm(img[i] + vec[k] * c)
            coords = tgt_space.coordinates(img)
            if coords is None:
                raise ArithmeticError("kernel is not a submodule")
            for i, c in coords.items():
                m[i][j] = c
        maps[a] = m
    return Representation(A, {v: len(basis_cols[v]) for v in A.vertices}, maps)


def min_proj_resolution(M: Representation, cap: int = 64) -> Resolution:
    A = M.algebra
    f = M.field
    terms: List[List[Vertex]] = []
    diffs: List[List[Dict[Tuple[int, int], object]]] = [[]]
    current = M
    embed: Optional[Tuple] = None  # how current sits inside the previous cover
    while True:
        gens, cols, pi = _cover(current)
        if not gens:
            break
        terms.append([v for v, _ in gens])
        if embed is not None:
            prev_cols, kernel_cols = embed
            col_elems = []
            for v, vec in gens:
                # vec lives in the kernel basis at v; push into the previous cover
                full = [f.zero] * len(prev_cols[v])
                for k, c in enumerate(vec):
                    if c:
                        for i, val in enumerate(kernel_cols[v][k]):
                            if val:
                                full[i] = f.norm(full[i] + c * val)
                elem = {}
                for i, val in enumerate(full):
                    if val:
                        elem[prev_cols[v][i]] = val
                col_elems.append(elem)
            diffs.append(col_elems)
        if len(terms) > cap:
            return Resolution(M, terms, diffs, truncated=True)
        kernel_cols = {w: kernel_basis(pi[w], f, cols=len(cols[w])) if cols[w] else []
                       for w in A.vertices}
        if not any(kernel_cols.values()):
            break
        current = _submodule(A, gens, cols, kernel_cols)
        embed = (cols, kernel_cols)
    return Resolution(M, terms, diffs)


def projective_dimension(M: Representation, cap: int = 64) -> int:
    return min_proj_resolution(M, cap).length


def _hom_to_complex(res: Resolution, N: Representation, i: int) -> Matrix:
    """Matrix of ``Hom(P_i, N) -> Hom(P_{i+1}, N)``."""
    f = N.field
    src = res.terms[i] if i < len(res.terms) else []
    tgt = res.terms[i + 1] if i + 1 < len(res.terms) else []
    soff, n = [], 0
    for v in src:
        soff.append(n)
        n += N.dims[v]
    toff, m = [], 0
    for v in tgt:
        toff.append(m)
        m += N.dims[v]
    mat = zeros(m, n, f)
    if not (m and n):
        return mat
    for c, elem in enumerate(res.diffs[i + 1]):
        for (r, x), coeff in elem.items():
            act = N.act(x)
            for a, row in enumerate(act):
                for b, val in enumerate(row):
                    if val:
                        mat[toff[c] + a][soff[r] + b] = f.norm(mat[toff[c] + a][soff[r] + b] + coeff * val)
    return mat


def ext(M: Representation, N: Representation, i: int, res: Optional[Resolution] = None) -> int:
    """``dim Ext^i(M, N)`` from the minimal projective resolution of ``M``."""
    _same_algebra(M, N)
    if res is None:
        res = min_proj_resolution(M)
    if i > res.length:
        return 0
    dim_i = sum(N.dims[v] for v in res.terms[i])
    r_out = rank(_hom_to_complex(res, N, i), N.field) if dim_i else 0
    r_in = rank(_hom_to_complex(res, N, i - 1), N.field) if i > 0 and dim_i else 0
    return dim_i - r_out - r_in


def global_dimension(A: PresentedAlgebra) -> int:
    return max(projective_dimension(simple(A, v)) for v in A.vertices)


def _is_proj_inj(A: PresentedAlgebra) -> Dict[Vertex, bool]:
    """Which injectives ``I_w`` are also projective."""
    out = {}
    for w in A.vertices:
        I = injective(A, w)
        tops = top_generators(I)
        ok = False
        if len(tops) == 1:
            u = tops[0][0]
            ok = projective(A, u).dimvec() == I.dimvec()
        out[w] = ok
    return out


def dominant_dimension(A: PresentedAlgebra) -> float:
    """Leading projective-injective terms in the minimal injective coresolution of ``A``.

    Coresolutions are obtained as duals of projective resolutions over ``A^op``.
    Returns ``math.inf`` when every term is projective-injective.
    """
    Aop = opposite(A)
    pi = _is_proj_inj(A)
    best = math.inf
    for v in A.vertices:
        D = dual_module(projective(A, v), Aop)
        res = min_proj_resolution(D)
        count = 0
        for term in res.terms:
            if all(pi[w] for w in term):
                count += 1
            else:
                break
        else:
            count = math.inf
        best = min(best, count)
    return best


# ---------------------------------------------------------------- cluster tilting


def ext_table(summands: Sequence[Representation], i: int) -> List[List[int]]:
    """``table[a][b] = dim Ext^i(X_a, X_b)``."""
    ress = [min_proj_resolution(X) for X in summands]
    return [[ext(X, Y, i, ress[a]) for Y in summands] for a, X in enumerate(summands)]


def cluster_tilting_check(A: PresentedAlgebra, d: int, summands: Sequence[Representation]) -> bool:
    """``Ext^i`` vanishes between all summands for ``0 < i < d``."""
    for X in summands:
        if X.algebra is not A:
            raise AlgebraMismatch("summand over a different algebra")
    ress = [min_proj_resolution(X) for X in summands]
    for a, X in enumerate(summands):
        for Y in summands:
            for i in range(1, d):
                if ext(X, Y, i, ress[a]):
                    return False
    return True


def end_algebra(summands: Sequence[Representation], labels: Optional[Sequence[Vertex]] = None,
                name: str = "") -> PresentedAlgebra:
    """``End(X_1 + ... + X_m)`` with vertices ``labels``.

    The block from ``u`` to ``v`` is ``Hom(X_v, X_u)`` and ``x * y = y o x``,
    so the projectives of ``A`` give back ``A`` with the identity vertex map.
    Every summand must be a brick (one-dimensional endomorphisms).
    """
    if not summands:
        raise ValueError("need at least one summand")
    A = summands[0].algebra
    f = A.field
    for X in summands:
        if X.algebra is not A:
            raise AlgebraMismatch("summands over different algebras")
    m = len(summands)
    labels = list(labels) if labels is not None else list(range(m))
    homs: Dict[Tuple[int, int], List[Dict[Vertex, Matrix]]] = {}
    for a in range(m):
        for b in range(m):
            homs[(a, b)] = hom_space(summands[a], summands[b])  # Hom(X_a, X_b)
    basis: List[BasisElement] = []
    index: Dict[Tuple[int, int], List[int]] = {}
    maps: List[Dict[Vertex, Matrix]] = []
    for u in range(m):
        if len(homs[(u, u)]) != 1:
            raise DecomposableSummand(f"summand {labels[u]!r} has {len(homs[(u, u)])}-dimensional End")
        Xu = summands[u]
        ident = {v: identity(Xu.dims[v], f) for v in A.vertices}
        index[(u, u)] = [len(basis)]
        basis.append(BasisElement(labels[u], labels[u], 0))
        maps.append(ident)
    for u in range(m):
        for v in range(m):
            if u == v:
                continue
            # block from u to v is Hom(X_v, X_u)
            ids = []
            for h in homs[(v, u)]:
                ids.append(len(basis))
                basis.append(BasisElement(labels[u], labels[v], 1))
                maps.append(h)
            index[(u, v)] = ids
    spaces: Dict[Tuple[int, int], Subspace] = {}
    for (u, v), ids in index.items():
        s = Subspace(sum(summands[v].dims[w] * summands[u].dims[w] for w in A.vertices), f, track=True)
        for i in ids:
            s.add(_flatten(maps[i], A.vertices))
        spaces[(u, v)] = s
    lab = {x: i for i, x in enumerate(labels)}
    mult = {}
    for r, br in enumerate(basis):
        u, v = lab[br.src], lab[br.tgt]
        for w in range(m):
            for l in index[(v, w)]:
                # l * r = r o l : X_w -> X_v -> X_u
                comp = compose(maps[r], maps[l], summands[w], f)
                coords = spaces[(u, w)].coordinates(_flatten(comp, A.vertices))
                if coords is None:
                    raise ArithmeticError("composition left the Hom space")
                res = {index[(u, w)][g]: c for g, c in coords.items() if c}
                if res:
                    mult[(l, r)] = res
    E = PresentedAlgebra(f, labels, basis, mult, name=name)
    return regrade(E)


# ---------------------------------------------------------------- OT12 modules


def j_hat(J: Sequence[int], h: int) -> Tuple[int, ...]:
    """Drop ``j_h`` (1-based) and subtract one from the remaining entries."""
    return tuple(j - 1 for k, j in enumerate(J, start=1) if k != h)


def proj_label(I: Sequence[int], n: int) -> Tuple[int, ...]:
    """Vertex of ``A_{n,d}`` carrying the projective labelled ``P_I``."""
    return rev(I, n)


@dataclass
class OT12Module:
    module: Representation
    resolution: Resolution
    expected: List[List[Vertex]]

    @property
    def verified(self) -> bool:
        return self.resolution.terms == self.expected


def _quotient(P: Representation, sub_gens: Sequence[Tuple[Vertex, list]]) -> Representation:
    """``P`` modulo the submodule generated by the given vectors."""
    A = P.algebra
    f = P.field
    spaces = {w: Subspace(P.dims[w], f) for w in A.vertices}
    for v, vec in sub_gens:
        for w in A.vertices:
            for x in A.block(v, w):
                img = [f.norm(sum(a * b for a, b in zip(row, vec))) for row in P.act(x)]
                spaces[w].add(img)
    # complement coordinates: non-pivot positions
    keep = {w: [i for i in range(P.dims[w]) if i not in set(spaces[w].pivots)] for w in A.vertices}
    maps = {}
    for a in A.arrows:
        ba = A.basis[a]
        u, v = ba.src, ba.tgt
        m = zeros(len(keep[v]), len(keep[u]), f)
        for j, col in enumerate(keep[u]):
            img = [P.maps[a][i][col] for i in range(P.dims[v])]
            red = spaces[v].reduce(img)
            for i, row in enumerate(keep[v]):
                m[i][j] = red[row]
        maps[a] = m
    return Representation(A, {w: len(keep[w]) for w in A.vertices}, maps)


def ot12_module(n: int, d: int, J: Sequence[int], A: Optional[PresentedAlgebra] = None) -> OT12Module:
    """The module ``M_J`` over ``A_{n,d}`` with its verified staircase resolution."""
    J = tuple(J)
    if len(J) != d + 1 or any(a >= b for a, b in zip(J, J[1:])) or J[0] < 1 or J[-1] > n + 1:
        raise KindMismatch(f"{J} is not in N_{{{n + 1},{d + 1}}}")
    if J[0] == 1:
        raise FirstEntryOne(f"{J} starts with 1; that summand is projective")
    if A is None:
        A = build_A(n, d)
    f = A.field
    top = proj_label(j_hat(J, 1), n)
    sub = proj_label(j_hat(J, 2), n)
    P = projective(A, top)
    block = A.block(top, sub)
    if len(block) != 1:
        raise ArithmeticError("expected a one-dimensional Hom block")
    x = block[0]
    vec = [f.zero] * P.dims[sub]
    vec[A.block(top, sub).index(x)] = f.one
    M = _quotient(P, [(sub, vec)])
    M.name = f"M{vertex_name(J)}"
    res = min_proj_resolution(M)
    expected = [[proj_label(j_hat(J, h), n)] for h in range(1, d + 2)]
    return OT12Module(M, res, expected)


def auslander_summands(n: int, d: int, A: Optional[PresentedAlgebra] = None):
    """Summands indexed by ``N_{n+1,d+1}`` in lex order."""
    if A is None:
        A = build_A(n, d)
    labels = index_set(n + 1, d + 1, "N")
    out = []
    for J in labels:
        if J[0] == 1:
            out.append(projective(A, proj_label(tuple(j - 1 for j in J[1:]), n)))
        else:
            out.append(ot12_module(n, d, J, A).module)
    return labels, out


@dataclass
class AuslanderStep:
    algebra: PresentedAlgebra
    labels: List[Tuple[int, ...]]
    cluster_tilting: bool
    count_ok: bool
    isomorphism: object

    @property
    def ok(self) -> bool:
        return self.cluster_tilting and self.count_ok and self.isomorphism is not None


def auslander_step(n: int, d: int, A: Optional[PresentedAlgebra] = None) -> AuslanderStep:
    """``End`` of the cluster-tilting module over ``A_{n,d}``, compared with ``A_{n+1,d+1}``."""
    if A is None:
        A = build_A(n, d)
    labels, summands = auslander_summands(n, d, A)
    ct = cluster_tilting_check(A, d, summands)
    E = end_algebra(summands, labels, name=f"End_M(A_{n},{d})")
    target = build_A(n + 1, d + 1, A.field)
    count_ok = len(labels) == math.comb(n + 1, d + 1)
    vmap = {J: rev(J, n + 1) for J in labels}
    iso = find_isomorphism(E, target, vmap)
    return AuslanderStep(E, labels, ct, count_ok, iso)
