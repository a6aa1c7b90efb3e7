"""Bounded complexes of projectives and the operations built on them.

Complexes live in the additive category of indecomposable projectives in its
path-category form: objects are the vertices of a directed algebra and
``Hom(P_u, P_v)`` is the basis block from ``u`` to ``v``; composition ``g o f``
is the algebra product ``g * f``.  Differentials raise degree by one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (BasisElement, PresentedAlgebra, Quiver, Vertex, cartan_matrix,
                      find_isomorphism, present_algebra, regrade, tensor_algebra, vertex_name)
from .errors import (AlgebraMismatch, BadIndices, NotChainMap, NotExceptional, NotTilting,
                     VertexMapInvalid)
from .linalg import QQ, Subspace, kernel_basis, rank
from .zoo import build_A, build_G, index_set, rev, swinging_alpha

Element = Dict[int, object]
# component key: (source degree, source summand, target degree, target summand)
Key = Tuple[int, int, int, int]


class ProjComplex:
    """``terms[p]`` lists summand vertices in degree ``p``.

    ``diff[p][(r, c)]`` is the element from summand ``c`` of degree ``p`` to
    summand ``r`` of degree ``p + 1``.
    """

    def __init__(self, algebra: PresentedAlgebra, terms: Mapping[int, Sequence[Vertex]],
                 diff: Optional[Mapping[int, Mapping[Tuple[int, int], Element]]] = None,
                 name: str = "", check: bool = True):
        self.algebra = algebra
        self.terms = {p: list(v) for p, v in terms.items() if v}
        self.diff: Dict[int, Dict[Tuple[int, int], Element]] = {}
        f = algebra.field
        for p, entries in (diff or {}).items():
            clean = {}
            for (r, c), x in entries.items():
                x = {k: f.norm(v) for k, v in x.items() if f.norm(v)}
                if not x:
                    continue
                src, tgt = self.terms[p][c], self.terms[p + 1][r]
                for k in x:
                    b = algebra.basis[k]
                    if (b.src, b.tgt) != (src, tgt):
                        raise ValueError(f"differential entry {k} not in block {src!r} -> {tgt!r}")
                clean[(r, c)] = x
            if clean:
                self.diff[p] = clean
        self.name = name
        if check and not self.d_squared_zero():
            raise NotChainMap("differential does not square to zero")

    def degrees(self) -> List[int]:
        return sorted(self.terms)

    def summands(self, p: int) -> List[Vertex]:
        return self.terms.get(p, [])

    def is_zero(self) -> bool:
        return not self.terms

    def d_squared_zero(self) -> bool:
        A = self.algebra
        for p, d1 in self.diff.items():
            d2 = self.diff.get(p + 1)
            if not d2:
                continue
            acc: Dict[Tuple[int, int], Element] = {}
            for (m, c), x in d1.items():
                for (r, m2), y in d2.items():
                    if m2 != m:
                        continue
                    prod_ = A.mul(y, x)
                    cur = acc.setdefault((r, c), {})
                    for k, v in prod_.items():
                        cur[k] = A.field.norm(cur.get(k, 0) + v)
            if any(any(v for v in e.values()) for e in acc.values()):
                return False
        return True

    def kclass(self) -> Dict[Vertex, int]:
        """Class in the Grothendieck group of projectives."""
        out: Dict[Vertex, int] = {}
        for p, vs in self.terms.items():
            for v in vs:
                out[v] = out.get(v, 0) + (-1) ** (p % 2)
        return {v: c for v, c in out.items() if c}

    def to_json(self) -> dict:
        f = self.algebra.field
        terms = [{"degree": p, "summands": [vertex_name(v) for v in self.terms[p]]} for p in self.degrees()]
        diffs = []
        for p in sorted(self.diff):
            rows, cols = len(self.summands(p + 1)), len(self.summands(p))
            mat = [[0] * cols for _ in range(rows)]
            for (r, c), x in self.diff[p].items():
                mat[r][c] = [[k, f.fmt(v)] for k, v in sorted(x.items())]
            diffs.append({"from": p, "to": p + 1, "matrix": mat})
        return {"algebra": self.algebra.name, "terms": terms, "diff": diffs}

    def __repr__(self) -> str:
        desc = ", ".join(f"{p}:{[vertex_name(v) for v in vs]}" for p, vs in sorted(self.terms.items()))
        return f"ProjComplex({self.name or '?'}; {desc})"


def stalk(A: PresentedAlgebra, v: Vertex, degree: int = 0) -> ProjComplex:
    return ProjComplex(A, {degree: [v]}, {}, name=f"P{vertex_name(v)}")


def shift(X: ProjComplex, k: int) -> ProjComplex:
    """``X[k]``: degree ``p`` holds ``X^{p+k}``; the differential is negated for odd ``k``."""
    sign = -1 if k % 2 else 1
    terms = {p - k: vs for p, vs in X.terms.items()}
    diff = {p - k: {rc: {b: sign * c for b, c in x.items()} for rc, x in e.items()}
            for p, e in X.diff.items()}
    return ProjComplex(X.algebra, terms, diff, name=f"{X.name}[{k}]" if k else X.name, check=False)


def direct_sum(parts: Sequence[ProjComplex]) -> Tuple[ProjComplex, List[Dict[int, int]]]:
    """Direct sum plus, per part, the summand offset in each degree."""
    A = parts[0].algebra
    terms: Dict[int, List[Vertex]] = {}
    offsets: List[Dict[int, int]] = []
    for X in parts:
        off = {}
        for p, vs in X.terms.items():
            off[p] = len(terms.get(p, []))
            terms.setdefault(p, []).extend(vs)
        offsets.append(off)
    diff: Dict[int, Dict[Tuple[int, int], Element]] = {}
    for X, off in zip(parts, offsets):
        for p, e in X.diff.items():
            for (r, c), x in e.items():
                diff.setdefault(p, {})[(r + off[p + 1], c + off[p])] = dict(x)
    return ProjComplex(A, terms, diff, name="+".join(X.name for X in parts), check=False), offsets


# ---------------------------------------------------------------- Hom complexes


@dataclass
class ChainMap:
    """Components ``(p, c, q, r) -> element`` of a map ``X -> Y`` of the given degree."""

    src: ProjComplex
    tgt: ProjComplex
    comps: Dict[Key, Element]
    degree: int = 0


class HomComplex:
    """Total complex ``Hom(X, Y)``; a component ``X^p -> Y^q`` with basis element ``b``
    has degree ``deg(b) + q - p`` and ``D f = d_Y f - (-1)^{|f|} f d_X``."""

    def __init__(self, X: ProjComplex, Y: ProjComplex):
        if X.algebra is not Y.algebra:
            raise AlgebraMismatch("complexes over different algebras")
        self.X, self.Y = X, Y
        A = X.algebra
        self.field = A.field
        self.basis: Dict[int, List[Tuple[int, int, int, int, int]]] = {}
        for p, xs in X.terms.items():
            for c, u in enumerate(xs):
                for q, ys in Y.terms.items():
                    for r, v in enumerate(ys):
                        for b in A.block(u, v):
                            k = A.basis[b].degree + q - p
                            self.basis.setdefault(k, []).append((p, c, q, r, b))
        self.index = {k: {e: i for i, e in enumerate(es)} for k, es in self.basis.items()}
        self._D: Dict[int, List[list]] = {}
        self._cohom: Optional[Dict[int, int]] = None

    def dim(self, k: int) -> int:
        return len(self.basis.get(k, []))

    def apply_D(self, k: int, comps: Mapping[Tuple[int, int, int, int, int], object]) -> Dict:
        """``D`` of a degree-``k`` cochain given by basis coefficients."""
        A = self.X.algebra
        f = self.field
        out: Dict[Tuple[int, int, int, int, int], object] = {}
        sign = -1 if k % 2 else 1
        dY, dX = self.Y.diff, self.X.diff
        for (p, c, q, r, b), coef in comps.items():
            if not coef:
                continue
            for (r2, rr), y in dY.get(q, {}).items():
                if rr != r:
                    continue
                for b2, val in A.mul(y, {b: coef}).items():
                    key = (p, c, q + 1, r2, b2)
                    out[key] = f.norm(out.get(key, 0) + val)
            for (cc, c2), z in dX.get(p - 1, {}).items():
                if cc != c:
                    continue
                for b2, val in A.mul({b: coef}, z).items():
                    key = (p - 1, c2, q, r, b2)
                    out[key] = f.norm(out.get(key, 0) - sign * val)
        return {key: v for key, v in out.items() if v}

    def D(self, k: int) -> List[list]:
        """Dense matrix of ``D: C^k -> C^{k+1}`` (rows index ``C^{k+1}``)."""
        if k in self._D:
            return self._D[k]
        f = self.field
        src = self.basis.get(k, [])
        tgt_index = self.index.get(k + 1, {})
        mat = [[f.zero] * len(src) for _ in range(len(tgt_index))]
        for j, e in enumerate(src):
            for key, v in self.apply_D(k, {e: f.one}).items():
                mat[tgt_index[key]][j] = v
        self._D[k] = mat
        return mat

    def _rank_D(self, k: int) -> int:
        if not self.dim(k) or not self.dim(k + 1):
            return 0
        return rank(self.D(k), self.field)

    def cohomology(self) -> Dict[int, int]:
        if self._cohom is None:
            out = {}
            for k in sorted(self.basis):
                h = self.dim(k) - self._rank_D(k) - self._rank_D(k - 1)
                if h:
                    out[k] = h
            self._cohom = out
        return self._cohom

    def total(self) -> int:
        return sum(self.cohomology().values())

    def euler(self) -> int:
        return sum((-1) ** (k % 2) * self.dim(k) for k in self.basis)

    def representatives(self, k: int = 0) -> Tuple[List[dict], Subspace, int]:
        """Cocycles spanning ``H^k`` and a tracked space ``B^k + reps`` for projection."""
        f = self.field
        n = self.dim(k)
        space = Subspace(n, f, track=True)
        nb = 0
        if n and self.dim(k - 1):
            Dm = self.D(k - 1)
            for j in range(self.dim(k - 1)):
                space.add([Dm[i][j] for i in range(n)])
                nb += 1
        reps = []
        if n:
            Z = kernel_basis(self.D(k), f, cols=n) if self.dim(k + 1) else \
                [[f.one if i == j else f.zero for i in range(n)] for j in range(n)]
            for z in Z:
                if space.add(z):
                    reps.append(z)
        return reps, space, nb

    def vector_to_comps(self, k: int, vec: Sequence) -> Dict[Tuple[int, int, int, int, int], object]:
        return {e: v for e, v in zip(self.basis.get(k, []), vec) if v}

    def comps_to_vector(self, k: int, comps: Mapping) -> list:
        f = self.field
        vec = [f.zero] * self.dim(k)
        for key, v in comps.items():
            vec[self.index[k][key]] = f.norm(vec[self.index[k][key]] + v)
        return vec


def hom_complex(X: ProjComplex, Y: ProjComplex) -> HomComplex:
    return HomComplex(X, Y)


def compose_cochains(A: PresentedAlgebra, g: Mapping, f_: Mapping) -> Dict:
    """``g o f`` for cochains keyed ``(p, c, q, r, b)``."""
    out: Dict[Tuple[int, int, int, int, int], object] = {}
    by_src: Dict[Tuple[int, int], List] = {}
    for (q, r, s, t, b), v in g.items():
        by_src.setdefault((q, r), []).append((s, t, b, v))
    for (p, c, q, r, b1), v1 in f_.items():
        for s, t, b2, v2 in by_src.get((q, r), []):
            for b, val in A.mul_basis(b2, b1).items():
                key = (p, c, s, t, b)
                out[key] = A.field.norm(out.get(key, 0) + v1 * v2 * val)
    return {k: v for k, v in out.items() if v}


def identity_cochain(X: ProjComplex) -> Dict:
    A = X.algebra
    return {(p, c, p, c, A.idem[v]): A.field.one for p, vs in X.terms.items() for c, v in enumerate(vs)}


def euler_pairing(X: ProjComplex, Y: ProjComplex) -> int:
    """``chi Hom(X, Y)`` from the Cartan matrix of the path category."""
    A = X.algebra
    C = cartan_matrix(A)
    pos = {v: i for i, v in enumerate(A.vertices)}
    kx, ky = X.kclass(), Y.kclass()
    return sum(a * b * C[pos[u]][pos[v]] for u, a in kx.items() for v, b in ky.items())


# ---------------------------------------------------------------- cones


def _as_chain_map(H: HomComplex, k: int, comps: Mapping) -> ChainMap:
    out: Dict[Key, Element] = {}
    for (p, c, q, r, b), v in comps.items():
        out.setdefault((p, c, q, r), {})[b] = v
    return ChainMap(H.X, H.Y, out, k)


def is_chain_map(fmap: ChainMap) -> bool:
    H = HomComplex(fmap.src, fmap.tgt)
    comps = {(p, c, q, r, b): v for (p, c, q, r), x in fmap.comps.items() for b, v in x.items()}
    return not H.apply_D(fmap.degree, comps)


def cone(fmap: ChainMap) -> ProjComplex:
    """``Cone(f)^p = X^{p+1} + Y^p`` with differential ``[[-d_X, 0], [f, d_Y]]``."""
    if fmap.degree != 0:
        raise NotChainMap("cone needs a degree-0 map")
    if not is_chain_map(fmap):
        raise NotChainMap("components do not commute with the differentials")
    X, Y = fmap.src, fmap.tgt
    A = X.algebra
    degs = set(p - 1 for p in X.terms) | set(Y.terms)
    terms = {p: list(X.summands(p + 1)) + list(Y.summands(p)) for p in degs}
    nx = {p: len(X.summands(p + 1)) for p in degs}
    diff: Dict[int, Dict[Tuple[int, int], Element]] = {}
    for p, e in X.diff.items():
        # X^{p} -> X^{p+1} lives in cone degree p-1 -> p
        for (r, c), x in e.items():
            diff.setdefault(p - 1, {})[(r, c)] = {b: -v for b, v in x.items()}
    for p, e in Y.diff.items():
        for (r, c), x in e.items():
            diff.setdefault(p, {})[(r + nx.get(p + 1, 0), c + nx.get(p, 0))] = dict(x)
    for (p, c, q, r), x in fmap.comps.items():
        # X^p -> Y^p, cone degree p-1 -> p
        key = (r + nx.get(p, 0), c)
        cur = diff.setdefault(p - 1, {}).setdefault(key, {})
        for b, v in x.items():
            cur[b] = A.field.norm(cur.get(b, 0) + v)
    C = ProjComplex(A, terms, diff, name=f"Cone({X.name}->{Y.name})", check=False)
    if not C.d_squared_zero():
        raise NotChainMap("cone differential does not square to zero")
    return C


def _cohomology_basis(H: HomComplex) -> List[Tuple[int, Dict]]:
    out = []
    for k in sorted(H.cohomology()):
        reps, _, _ = H.representatives(k)
        for z in reps:
            out.append((k, H.vector_to_comps(k, z)))
    return out


def evaluation(E: ProjComplex, X: ProjComplex) -> ChainMap:
    """``ev: (+_i E[-k_i]) -> X`` over a basis of ``H^* Hom(E, X)``."""
    H = HomComplex(E, X)
    classes = _cohomology_basis(H)
    parts = [shift(E, -k) for k, _ in classes]
    if not parts:
        src = ProjComplex(E.algebra, {}, {}, name="0")
        return ChainMap(src, X, {}, 0)
    src, offsets = direct_sum(parts)
    comps: Dict[Key, Element] = {}
    for (k, cochain), off in zip(classes, offsets):
        for (p, c, q, r, b), v in cochain.items():
            # E^p sits in E[-k] at degree p + k = q
            key = (p + k, c + off[p + k], q, r)
            comps.setdefault(key, {})[b] = v
    return ChainMap(src, X, comps, 0)


def coevaluation(E: ProjComplex, F: ProjComplex) -> ChainMap:
    """``E -> (+_i F[k_i])`` over a basis of ``H^* Hom(E, F)``."""
    H = HomComplex(E, F)
    classes = _cohomology_basis(H)
    parts = [shift(F, k) for k, _ in classes]
    if not parts:
        return ChainMap(E, ProjComplex(E.algebra, {}, {}, name="0"), {}, 0)
    tgt, offsets = direct_sum(parts)
    comps: Dict[Key, Element] = {}
    for (k, cochain), off in zip(classes, offsets):
        for (p, c, q, r, b), v in cochain.items():
            # F^q sits in F[k] at degree q - k = p
            key = (p, c, p, r + off[p])
            comps.setdefault(key, {})[b] = v
    return ChainMap(E, tgt, comps, 0)


def twist(E: ProjComplex, X: ProjComplex) -> ProjComplex:
    """Cone of the evaluation map ``Hom(E, X) (x) E -> X``."""
    return cone(evaluation(E, X))


# ---------------------------------------------------------------- collections


def hom_table(objects: Sequence[ProjComplex]) -> List[List[Dict[int, int]]]:
    """``table[a][b]`` is the cohomology of ``Hom(E_a, E_b)`` by degree."""
    return [[HomComplex(X, Y).cohomology() for Y in objects] for X in objects]


def total_table(objects: Sequence[ProjComplex]) -> List[List[int]]:
    return [[sum(h.values()) for h in row] for row in hom_table(objects)]


def is_exceptional(objects: Sequence[ProjComplex]) -> bool:
    for a, X in enumerate(objects):
        if HomComplex(X, X).cohomology() != {0: 1}:
            return False
        for Y in objects[:a]:
            if HomComplex(X, Y).cohomology():
                return False
    return True


def mutate(objects: Sequence[ProjComplex], k: int, side: str = "left",
           check: bool = True) -> List[ProjComplex]:
    """Mutation at the adjacent pair ``(E_k, E_{k+1})`` (1-based)."""
    objs = list(objects)
    if not 1 <= k < len(objs):
        raise BadIndices(f"mutation position {k} out of range")
    if check and not is_exceptional(objs):
        raise NotExceptional("collection is not exceptional")
    E, F = objs[k - 1], objs[k]
    if side == "left":
        L = cone(evaluation(E, F))
        L.name = f"L_{E.name}({F.name})"
        objs[k - 1:k + 1] = [L, E]
    elif side == "right":
        R = shift(cone(coevaluation(E, F)), -1)
        R.name = f"R_{F.name}({E.name})"
        objs[k - 1:k + 1] = [F, R]
    else:
        raise ValueError("side must be 'left' or 'right'")
    if check and not is_exceptional(objs):
        raise NotExceptional("mutated collection is not exceptional")
    return objs


def triangular_pattern(objects: Sequence[ProjComplex]) -> bool:
    """Total Hom dims are 1 on and above the diagonal and 0 below (linear A_m)."""
    T = total_table(objects)
    m = len(T)
    return all(T[a][b] == (1 if a <= b else 0) for a in range(m) for b in range(m))


def hurwitz_search(objects: Sequence[ProjComplex], goal, max_depth: int = 4):
    """Breadth-first search over mutation words; returns the first word reaching ``goal``."""
    start = list(objects)
    if goal(start):
        return [], start
    queue = deque([([], start)])
    while queue:
        word, objs = queue.popleft()
        if len(word) >= max_depth:
            continue
        for k in range(1, len(objs)):
            for side in ("left", "right"):
                if word and word[-1] == (k, "right" if side == "left" else "left"):
                    continue
                new = mutate(objs, k, side, check=False)
                w = word + [(k, side)]
                if goal(new):
                    return w, new
                queue.append((w, new))
    return None


# ---------------------------------------------------------------- degree-0 algebras


def solve_shifts(objects: Sequence[ProjComplex]) -> Optional[List[int]]:
    """Shifts ``s`` making every ``Hom(E_a[s_a], E_b[s_b])`` concentrated in degree 0."""
    m = len(objects)
    table = hom_table(objects)
    cons: Dict[int, List[Tuple[int, int]]] = {a: [] for a in range(m)}
    for a in range(m):
        if set(table[a][a]) - {0}:
            return None
        for b in range(m):
            if a == b or not table[a][b]:
                continue
            if len(table[a][b]) > 1:
                return None
            (delta,) = table[a][b]
            cons[a].append((b, delta))
            cons[b].append((a, -delta))
    shifts: List[Optional[int]] = [None] * m
    for root in range(m):
        if shifts[root] is not None:
            continue
        shifts[root] = 0
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for b, delta in cons[a]:
                want = shifts[a] + delta
                if shifts[b] is None:
                    shifts[b] = want
                    queue.append(b)
                elif shifts[b] != want:
                    return None
    return [int(s) for s in shifts]


def degree0_algebra(objects: Sequence[ProjComplex], labels: Optional[Sequence[Vertex]] = None,
                    name: str = "") -> PresentedAlgebra:
    """Algebra with block ``a -> b`` equal to ``H^0 Hom(E_a, E_b)``; composition as product."""
    A = objects[0].algebra
    f = A.field
    m = len(objects)
    labels = list(labels) if labels is not None else list(range(m))
    Hs = {(a, b): HomComplex(objects[a], objects[b]) for a in range(m) for b in range(m)}
    basis: List[BasisElement] = []
    reps: List[Dict] = []
    index: Dict[Tuple[int, int], List[int]] = {}
    proj: Dict[Tuple[int, int], Tuple[Subspace, int, List[int]]] = {}
    for a in range(m):
        H = Hs[(a, a)]
        ident = identity_cochain(objects[a])
        zs, space, nb = H.representatives(0)
        if len(zs) != 1:
            raise NotExceptional(f"object {labels[a]!r} has {len(zs)}-dimensional End^0")
        idv = H.comps_to_vector(0, ident)
        space2 = Subspace(H.dim(0), f, track=True)
        Dm = H.D(-1) if H.dim(-1) else []
        nb2 = 0
        for j in range(H.dim(-1)):
            space2.add([Dm[i][j] for i in range(H.dim(0))])
            nb2 += 1
        if not space2.add(idv):
            raise NotExceptional(f"identity of {labels[a]!r} is null-homotopic")
        index[(a, a)] = [len(basis)]
        proj[(a, a)] = (space2, nb2, [len(basis)])
        basis.append(BasisElement(labels[a], labels[a], 0))
        reps.append(ident)
    for a in range(m):
        for b in range(m):
            if a == b:
                continue
            H = Hs[(a, b)]
            zs, space, nb = H.representatives(0)
            ids = []
            for z in zs:
                ids.append(len(basis))
                basis.append(BasisElement(labels[a], labels[b], 1))
                reps.append(H.vector_to_comps(0, z))
            index[(a, b)] = ids
            proj[(a, b)] = (space, nb, ids)
    lab = {x: i for i, x in enumerate(labels)}
    mult = {}
    for r, br in enumerate(basis):
        a, b = lab[br.src], lab[br.tgt]
        for c in range(m):
            for l in index[(b, c)]:
                comp = compose_cochains(A, reps[l], reps[r])
                if not comp:
                    continue
                H = Hs[(a, c)]
                space, nb, ids = proj[(a, c)]
                coords = space.coordinates(H.comps_to_vector(0, comp))
                if coords is None:
                    raise ArithmeticError("composite is not a cocycle")
                res = {ids[g - nb]: v for g, v in coords.items() if g >= nb and v}
                if res:
                    mult[(l, r)] = res
    return regrade(PresentedAlgebra(f, labels, basis, mult, name=name))


# ---------------------------------------------------------------- Thom-Sebastiani


def linear_path_algebra(k: int, field=None) -> PresentedAlgebra:
    """Linear A_k with arrows ``j+1 -> j`` and all paths."""
    q = Quiver(list(range(1, k + 1)), [(f"t{j + 1}>{j}", j + 1, j) for j in range(1, k)])
    return present_algebra(q, [], field or QQ, name=f"T_{k}")


def _ts_pair(j: int, n: int) -> Tuple[int, int]:
    if j == 1:
        return 2, 1
    if j % 2 == 0:
        return (2 * n + 4 - j) // 2, (j + 2) // 2
    return (2 * n + 5 - j) // 2, (j + 3) // 2


def _tuple(v: Vertex) -> tuple:
    return v if isinstance(v, tuple) else (v,)


@dataclass
class ThomSebastiani:
    algebra: PresentedAlgebra
    objects: List[ProjComplex]
    labels: List[tuple]
    shifts: List[int]
    concentrated: bool


def thom_sebastiani_data(B: PresentedAlgebra, k: int) -> ThomSebastiani:
    """Cone objects ``S_{i,j}`` over ``B (x) T_k`` and their degree-0 algebra."""
    if k < 2:
        raise BadIndices("need k >= 2")
    n = k - 1
    T = linear_path_algebra(k, B.field)
    V = tensor_algebra(B, T)
    objects, labels = [], []
    for i in B.vertices:
        for j in range(1, n + 1):
            a, b = _ts_pair(j, n)
            va, vb = _tuple(i) + (a,), _tuple(i) + (b,)
            if va not in V.idem:
                va, vb = (i, a), (i, b)
            (e,) = V.block(va, vb)
            X, Y = stalk(V, va), stalk(V, vb)
            S = cone(ChainMap(X, Y, {(0, 0, 0, 0): {e: V.field.one}}, 0))
            S.name = f"S{vertex_name(_tuple(i) + (j,))}"
            objects.append(S)
            labels.append(_tuple(i) + (j,))
    shifts = solve_shifts(objects)
    if shifts is None:
        return ThomSebastiani(None, objects, labels, [], False)
    objs = [shift(X, s) for X, s in zip(objects, shifts)]
    table = hom_table(objs)
    conc = all(set(h) <= {0} for row in table for h in row)
    E = degree0_algebra(objs, labels, name=f"TS({B.name},{k})")
    return ThomSebastiani(E, objs, labels, shifts, conc)


def thom_sebastiani(B: PresentedAlgebra, k: int) -> PresentedAlgebra:
    data = thom_sebastiani_data(B, k)
    if data.algebra is None:
        raise NotTilting("cone objects cannot be shifted into degree 0", None)
    return data.algebra


def point_algebra(field=None) -> PresentedAlgebra:
    return present_algebra(Quiver([()], []), [], field or QQ, name="k")


# ---------------------------------------------------------------- K-complexes


def _unique_element(A: PresentedAlgebra, u: Vertex, v: Vertex) -> Optional[int]:
    ids = A.block(u, v)
    if len(ids) > 1:
        raise ValueError(f"block {u!r} -> {v!r} is not one-dimensional")
    return ids[0] if ids else None


def _jhat(J: Sequence[int], h: int) -> tuple:
    return tuple(j - 1 for k, j in enumerate(J, start=1) if k != h)


def _check_J(n: int, d: int, J: Sequence[int]) -> None:
    if len(J) != d + 1 or any(a >= b for a, b in zip(J, J[1:])) or J[0] < 2 or J[-1] > n + 1:
        raise BadIndices(f"{tuple(J)} is not in N_{{{n + 1},{d + 1}}} with j_1 > 1")


def k_complex(n: int, d: int, J: Sequence[int], h: int, A: Optional[PresentedAlgebra] = None) -> ProjComplex:
    """``P_{J^h} -> ... -> P_{J^1}`` with ``J^m`` the tuple ``J`` minus ``j_m``, shifted down by one."""
    J = tuple(J)
    _check_J(n, d, J)
    if not 2 <= h <= d:
        raise BadIndices(f"need 2 <= h <= d, got h={h}")
    A = A or build_A(n, d)
    xs = [_jhat(J, m) for m in range(1, h + 1)]
    terms = {-(m - 1): [xs[m - 1]] for m in range(1, h + 1)}
    diff = {}
    for m in range(2, h + 1):
        e = _unique_element(A, xs[m - 1], xs[m - 2])
        if e is not None:
            diff[-(m - 1)] = {(0, 0): {e: A.field.one}}
    return ProjComplex(A, terms, diff, name=f"K{vertex_name(J)},{h}")


def k_orthogonality(n: int, d: int, J: Sequence[int], h: int,
                    A: Optional[PresentedAlgebra] = None) -> bool:
    """Hom in both directions vanishes against projectives strictly between ``J^{h+1}`` and ``J^h``."""
    A = A or build_A(n, d)
    K = k_complex(n, d, J, h, A)
    lo, hi = _jhat(J, h + 1), _jhat(J, h)
    for P in index_set(n, d, "N"):
        if lo < P < hi:
            S = stalk(A, P)
            if HomComplex(K, S).cohomology() or HomComplex(S, K).cohomology():
                return False
    return True


def admissible_k_data(n: int, d: int):
    for J in index_set(n + 1, d + 1, "N"):
        if J[0] == 1:
            continue
        for h in range(2, d + 1):
            yield J, h


# ---------------------------------------------------------------- staircase


def staircase_corners(n: int, d: int, I: Sequence[int]) -> Dict[frozenset, Optional[tuple]]:
    """Corner vertex (or ``None`` for a zero term) for each set of coordinates choosing beta."""
    alpha = [swinging_alpha(n, i) for i in I]
    beta = [a + i for a, i in zip(alpha, I)]
    out = {}
    for size in range(d + 1):
        for S in combinations(range(d), size):
            gamma = [beta[h] if h in S else alpha[h] for h in range(d)]
            if 0 in gamma or len(set(gamma)) < d:
                out[frozenset(S)] = None
            else:
                out[frozenset(S)] = tuple(sorted(gamma))
    return out


def staircase_object(n: int, d: int, I: Sequence[int], A: Optional[PresentedAlgebra] = None) -> ProjComplex:
    """Hypercube of projectives: the corner choosing beta on ``S`` sits in degree ``|S| - d``."""
    I = tuple(I)
    if len(I) != d or any(a >= b for a, b in zip(I, I[1:])) or I[0] < 1 or I[-1] > n:
        raise BadIndices(f"{I} is not in I_{{{n},{d}}}")
    A = A or build_A(n, d)
    corners = staircase_corners(n, d, I)
    terms: Dict[int, List[Vertex]] = {}
    pos: Dict[frozenset, Tuple[int, int]] = {}
    for S in sorted(corners, key=lambda s: (len(s), sorted(s))):
        v = corners[S]
        if v is None:
            continue
        p = len(S) - d
        pos[S] = (p, len(terms.get(p, [])))
        terms.setdefault(p, []).append(v)
    diff: Dict[int, Dict[Tuple[int, int], Element]] = {}
    for S, (p, c) in pos.items():
        for h in range(d):
            if h in S or S | {h} not in pos:
                continue
            T = S | {h}
            e = _unique_element(A, corners[S], corners[T])
            if e is None:
                continue
            sign = (-1) ** sum(1 for x in S if x < h)
            diff.setdefault(p, {})[(pos[T][1], c)] = {e: A.field(sign)}
    return ProjComplex(A, terms, diff, name=f"T{vertex_name(I)}")


def _candidate_vmaps(labels: Sequence[Vertex], target: PresentedAlgebra) -> List[Dict]:
    """Identity first, then the reversal ``I -> rev(I)`` when labels are index tuples."""
    out = [{v: v for v in labels}]
    if labels and all(isinstance(v, tuple) and v and all(isinstance(x, int) for x in v) for v in labels):
        n = max(max(v) for v in labels)
        flipped = {v: rev(v, n) for v in labels}
        if set(flipped.values()) == set(target.vertices) and flipped != out[0]:
            out.append(flipped)
    return out


@dataclass
class TiltingReport:
    ok: bool
    concentrated: bool
    algebra: Optional[PresentedAlgebra]
    isomorphism: object
    failing_pair: Optional[Tuple] = None
    table: List = dc_field(default_factory=list)


def tilting_report(objects: Sequence[ProjComplex], labels: Sequence[Vertex],
                   target: Optional[PresentedAlgebra] = None) -> TiltingReport:
    table = hom_table(objects)
    for a, row in enumerate(table):
        for b, h in enumerate(row):
            if set(h) - {0}:
                return TiltingReport(False, False, None, None, (labels[a], labels[b]), table)
    try:
        E = degree0_algebra(objects, labels)
    except NotExceptional as exc:
        bad = exc.args[0] if exc.args else None
        return TiltingReport(False, True, None, None, (bad, None), table)
    iso = None
    if target is not None:
        for vmap in _candidate_vmaps(labels, target):
            try:
                iso = find_isomorphism(E, target, vmap)
            except VertexMapInvalid:
                iso = None
            if iso is not None:
                break
    ok = target is None or iso is not None
    return TiltingReport(ok, True, E, iso, None if ok else (None, None), table)


def tilting_check(objects: Sequence[ProjComplex], labels: Sequence[Vertex],
                  target: Optional[PresentedAlgebra] = None, raise_on_fail: bool = False) -> bool:
    """Self-Homs concentrated in degree 0, and ``End^0`` isomorphic to ``target`` if given."""
    rep = tilting_report(objects, labels, target)
    if not rep.ok and raise_on_fail:
        raise NotTilting("tilting check failed", rep.failing_pair)
    return rep.ok


def staircase_collection(n: int, d: int, A: Optional[PresentedAlgebra] = None):
    A = A or build_A(n, d)
    labels = index_set(n, d, "I")
    return labels, [staircase_object(n, d, I, A) for I in labels]


def staircase_tilting(n: int, d: int) -> TiltingReport:
    labels, objs = staircase_collection(n, d)
    return tilting_report(objs, labels, build_G(n, d))
