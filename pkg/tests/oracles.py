"""Independent brute-force oracles used to derive expected values.

Nothing here imports the package's linear algebra; ranks are recomputed with a
separate elimination so that agreement is meaningful.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import comb


def frac_rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows if any(r)]
    if not rows:
        return 0
    m = [r[:] for r in rows]
    r = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                fct = m[i][c] / m[r][c]
                m[i] = [a - fct * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def n_set(n, d):
    return list(combinations(range(1, n + 1), d))


def intertwines(I, J):
    d = len(I)
    return all(I[h] <= J[h] for h in range(d)) and all(J[h] < I[h + 1] for h in range(d - 1))


def intertwining_matrix(n, d):
    N = n_set(n, d)
    return [[int(intertwines(I, J)) for J in N] for I in N]


def intertwining_count(n, d):
    return sum(map(sum, intertwining_matrix(n, d)))


def weakly_increasing_count(n):
    """Tuples ``c <= a <= d <= b`` in ``1..n``."""
    return sum(1 for c, a, d, b in product(range(1, n + 1), repeat=4) if c <= a <= d <= b)


def path_quotient_cartan(vertices, arrows, rels):
    """Cartan matrix of ``kQ / (rels)`` by brute force over all paths.

    ``arrows`` is a list of ``(id, src, tgt)``; ``rels`` are dicts from arrow-id
    tuples (traversal order) to coefficients.  The ideal is spanned by
    ``p . r . q`` for paths ``p``, ``q``.
    """
    out = {}
    for a in arrows:
        out.setdefault(a[1], []).append(a)
    paths = {(v, v): [()] for v in vertices}
    frontier = [((), v, v) for v in vertices]
    while frontier:
        nxt = []
        for p, s, t in frontier:
            for aid, _, w in out.get(t, []):
                q = p + (aid,)
                paths.setdefault((s, w), []).append(q)
                nxt.append((q, s, w))
        frontier = nxt
    src = {a[0]: a[1] for a in arrows}
    tgt = {a[0]: a[2] for a in arrows}

    def ends(p, default):
        return (src[p[0]], tgt[p[-1]]) if p else (default, default)

    ideal = {}
    all_paths = [p for ps in paths.values() for p in ps]
    for r in rels:
        rp = next(iter(r))
        rs, rt = src[rp[0]], tgt[rp[-1]]
        for before in all_paths:
            if before and tgt[before[-1]] != rs:
                continue
            for after in all_paths:
                if after and src[after[0]] != rt:
                    continue
                s = src[before[0]] if before else rs
                t = tgt[after[-1]] if after else rt
                vec = {before + p + after: c for p, c in r.items()}
                ideal.setdefault((s, t), []).append(vec)
    cart = []
    for u in vertices:
        row = []
        for v in vertices:
            ps = paths.get((u, v), [])
            pos = {p: i for i, p in enumerate(ps)}
            rows = []
            for vec in ideal.get((u, v), []):
                dense = [0] * len(ps)
                for p, c in vec.items():
                    dense[pos[p]] += c
                rows.append(dense)
            row.append(len(ps) - frac_rank(rows))
        cart.append(row)
    return cart


def binom(n, d):
    return comb(n, d)
