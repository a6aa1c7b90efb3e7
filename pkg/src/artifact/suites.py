"""Named verification suites with ordered, deterministic reports."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .algebra import cartan_matrix, find_isomorphism, vertex_name
from .arcs import (CohomologyTable, auroux_triangle, background_choices, end_algebra_of_collection,
                   fan_products, swinging_products)
from .derived import (admissible_k_data, k_orthogonality, point_algebra, staircase_collection,
                      thom_sebastiani_data, tilting_report)
from .errors import BadParameters, UnknownTarget
from .linalg import QQ, Field
from .morse import morsification_data, orbit_count, values_ok
from .reps import auslander_step, dominant_dimension, global_dimension
from .zoo import build_A, build_G, build_Ghat, index_set, intertwines, sym_quotient


@dataclass
class Check:
    name: str
    ok: bool
    witness: Dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": "PASS" if self.ok else "FAIL", "witness": self.witness}


@dataclass
class SuiteReport:
    suite: str
    claim: str
    checks: List[Check]
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self, timing: bool = False) -> dict:
        out = {"suite": self.suite, "claim": self.claim, "status": "PASS" if self.ok else "FAIL",
               "checks": [c.to_json() for c in self.checks]}
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def _grid(max_n: int, max_d: int, d_lt_n: bool = False, min_n: int = 1) -> Iterator[Tuple[int, int]]:
    for n in range(min_n, max_n + 1):
        for d in range(1, min(max_d, n - 1 if d_lt_n else n) + 1):
            yield n, d


def intertwining_table(n: int, d: int) -> List[List[int]]:
    labels = index_set(n, d, "N")
    return [[int(intertwines(I, J)) for J in labels] for I in labels]


# ---------------------------------------------------------------- suites


def _cartan(n: int, d: int, field: Field) -> Check:
    A = build_A(n, d, field)
    got = cartan_matrix(A)
    want = intertwining_table(n, d)
    w = {"n": n, "d": d, "dim": A.dim}
    if got != want:
        w["cartan"], w["expected"] = got, want
    return Check(f"cartan A_{n},{d}", got == want, w)


def _quotient(n: int, d: int, field: Field) -> Check:
    Q = sym_quotient(build_Ghat(n, d, field), n, d)
    G = build_G(n, d, field)
    iso = find_isomorphism(Q, G, {v: v for v in Q.vertices})
    w = {"n": n, "d": d, "dim": Q.dim, "target_dim": G.dim}
    if iso is not None:
        w["certificate"] = {"vertex_map": "identity", "arrow_images": len(iso.arrow_images)}
    else:
        w["cartan"], w["expected"] = cartan_matrix(Q), cartan_matrix(G)
    return Check(f"quotient Ghat_{n},{d} = G_{n},{d}", iso is not None, w)


def _tower(max_n: int, max_d: int, field: Field) -> List[Check]:
    out = []
    for n in range(1, max_n + 1):
        B = point_algebra(field)
        for d in range(1, max_d + 1):
            data = thom_sebastiani_data(B, n + 1)
            B = data.algebra
            target = build_Ghat(n, d, field)
            iso = find_isomorphism(B, target, {v: v for v in target.vertices}) \
                if sorted(map(repr, B.vertices)) == sorted(map(repr, target.vertices)) else None
            ok = data.concentrated and iso is not None
            w = {"n": n, "d": d, "dim": B.dim, "concentrated": data.concentrated}
            if not ok:
                w["cartan"], w["expected"] = cartan_matrix(B), cartan_matrix(target)
            out.append(Check(f"tower Ghat_{n},{d}", ok, w))
    return out


def _arc_model(n: int, d: int, field: Field) -> Check:
    disk, objs, labels = swinging_products(n, d)
    E = end_algebra_of_collection(disk, objs, labels, field)
    G = build_G(n, d, field)
    iso = None
    if not isinstance(E, CohomologyTable):
        iso = find_isomorphism(E, G, {v: v for v in labels})
    w = {"n": n, "d": d, "target_dim": G.dim}
    if iso is None:
        w["expected"] = cartan_matrix(G)
        w["table"] = E.totals() if isinstance(E, CohomologyTable) else cartan_matrix(E)
    else:
        w["dim"] = E.dim
    return Check(f"swinging End = G_{n},{d}", iso is not None, w)


def _fan(n: int, d: int, field: Field) -> Check:
    disk, objs, labels = fan_products(n, d)
    E = end_algebra_of_collection(disk, objs, labels, field)
    if isinstance(E, CohomologyTable):
        got = E.totals()
        degrees = sorted({k for row in E.dims for h in row for k in h})
    else:
        got = cartan_matrix(E)
        degrees = sorted({b.degree for b in E.basis})
    want = intertwining_table(n, d)
    ok = got == want and set(degrees) <= {0}
    w = {"n": n, "d": d, "dim": sum(map(sum, got)), "degrees": degrees}
    if not ok:
        w["table"], w["expected"] = got, want
    return Check(f"fan cohomology = A_{n},{d}", ok, w)


def _auslander(n: int, d: int, field: Field) -> Check:
    step = auslander_step(n, d, build_A(n, d, field))
    w = {"n": n, "d": d, "dim": step.algebra.dim, "summands": len(step.labels),
         "cluster_tilting": step.cluster_tilting, "target": f"A_{n + 1},{d + 1}"}
    if not step.ok:
        w["cartan"] = cartan_matrix(step.algebra)
        w["expected"] = cartan_matrix(build_A(n + 1, d + 1, field))
    return Check(f"End(M) over A_{n},{d} = A_{n + 1},{d + 1}", step.ok, w)


def _tilting(n: int, d: int, field: Field) -> Check:
    labels, objs = staircase_collection(n, d, build_A(n, d, field))
    rep = tilting_report(objs, labels, build_G(n, d, field))
    w = {"n": n, "d": d, "concentrated": rep.concentrated}
    if rep.algebra is not None:
        w["dim"] = rep.algebra.dim
    if not rep.ok:
        w["failing_pair"] = [None if x is None else vertex_name(x) for x in rep.failing_pair or ()]
        w["table"] = [[sum(h.values()) for h in row] for row in rep.table]
        w["expected"] = cartan_matrix(build_G(n, d, field))
    return Check(f"staircase tilting G_{n},{d}", rep.ok, w)


def _dehn(n: int, d: int, field: Field) -> Check:
    A = build_A(n, d, field)
    bad = [(J, h) for J, h in admissible_k_data(n, d) if not k_orthogonality(n, d, J, h, A)]
    count = sum(1 for _ in admissible_k_data(n, d))
    w = {"n": n, "d": d, "cases": count}
    if bad:
        w["counterexample"] = {"J": list(bad[0][0]), "h": bad[0][1]}
    return Check(f"K-orthogonality A_{n},{d}", not bad, w)


def _gl_dom(n: int, d: int, field: Field) -> Check:
    A = build_A(n, d, field)
    gl = global_dimension(A)
    dom = dominant_dimension(A)
    ok = gl <= d <= dom
    w = {"n": n, "d": d, "gldim": gl, "domdim": "inf" if dom == math.inf else int(dom)}
    if not ok:
        w["cartan"] = cartan_matrix(A)
    return Check(f"gldim <= {d} <= domdim for A_{n},{d}", ok, w)


def _morse(n: int, max_d: int) -> Check:
    data = morsification_data(n)
    orbits = {d: orbit_count(n, d) for d in range(1, min(n, max_d) + 1)}
    ok = len(data) == n and values_ok(data) and all(orbits[d] == math.comb(n, d) for d in orbits)
    w = {"n": n, "critical_points": len(data), "values_ok": values_ok(data),
         "orbits": {str(d): c for d, c in orbits.items()}}
    if not ok:
        w["values"] = [c.value for c in data]
    return Check(f"morsification n={n}", ok, w)


def _auroux(n: int, d: int, field: Field) -> List[Check]:
    out = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                if d == 1:
                    backgrounds = [()]
                else:
                    backgrounds = [(b,) for b in background_choices(n, i, j, k)] if d == 2 else []
                for bg in backgrounds:
                    T = auroux_triangle(n, i, j, k, list(bg), field)
                    w = {"n": n, "d": d, "triple": [i, j, k], "background": [list(b) for b in bg],
                         "shifts": {f"{a}->{b}": s for (a, b), s in sorted(T.shifts.items())}}
                    out.append(Check(f"triangle {i}{j}{k}" + "".join(f"+{a}{b}" for a, b in bg), T.ok, w))
    return out


SUITES: Dict[str, Tuple[str, Tuple[int, int]]] = {
    "cartan": ("Cartan matrix of A_{n,d} is the intertwining indicator", (6, 3)),
    "mainthm1": ("Thom-Sebastiani tower of the one-vertex algebra reproduces Ghat_{n,d}", (4, 3)),
    "mainthm2": ("corner quotient of Ghat_{n,d} is isomorphic to G_{n,d}", (5, 3)),
    "mainthm3": ("swinging arc products have End isomorphic to G_{n,d}", (5, 2)),
    "maincor": ("fan arc products have Hom cohomology equal to the A_{n,d} Cartan matrix", (5, 2)),
    "auslander-step": ("End of the d-cluster-tilting module over A_{n,d} is A_{n+1,d+1}", (4, 2)),
    "tilting": ("staircase complexes form a tilting object with End^0 = G_{n,d}", (4, 2)),
    "dehn-orthogonality": ("K-complexes are orthogonal to the intermediate projectives", (4, 2)),
    "dimensions": ("A_{n,d} satisfies gl.dim <= d <= dom.dim", (6, 5)),
    "morsification": ("one-variable Morsification has n critical points with values in {0} u (0,inf)",
                      (8, 8)),
    "auroux": ("cone of a chord between disjoint-background arc pairs is the third pair", (4, 2)),
}
ALIASES = {"quotient": "mainthm2"}
AUSLANDER_PAIRS = [(2, 1), (3, 1), (4, 1), (3, 2), (4, 2)]


def suite_names() -> List[str]:
    return sorted(set(SUITES) | set(ALIASES))


def run_suite(name: str, field: Field = QQ, max_n: Optional[int] = None, max_d: Optional[int] = None,
              n: Optional[int] = None, d: Optional[int] = None) -> SuiteReport:
    """Runs a suite over ``n <= max_n, d <= max_d`` or over the single pair ``(n, d)``."""
    key = ALIASES.get(name, name)
    if key not in SUITES:
        raise UnknownTarget(f"unknown suite {name!r}; choose from {', '.join(suite_names())}")
    claim, (dn, dd) = SUITES[key]
    if (n is None) != (d is None) and key != "morsification":
        raise BadParameters("--n and --d must be given together")
    max_n = dn if max_n is None else max_n
    max_d = dd if max_d is None else max_d
    start = time.perf_counter()
    per_pair: Dict[str, Callable[[int, int, Field], Check]] = {
        "cartan": _cartan, "mainthm2": _quotient, "mainthm3": _arc_model, "maincor": _fan, "auslander-step": _auslander,
        "tilting": _tilting, "dehn-orthogonality": _dehn, "dimensions": _gl_dom,
    }
    checks: List[Check] = []
    if key == "mainthm1":
        if n is not None:
            checks = [c for c in _tower(n, d, field) if c.witness["n"] == n and c.witness["d"] == d]
        else:
            checks = _tower(max_n, max_d, field)
    elif key == "morsification":
        ns = [n] if n is not None else range(1, max_n + 1)
        checks = [_morse(m, d if d is not None else max_d) for m in ns]
    elif key == "auroux":
        pairs = [(n, d)] if n is not None else list(_grid(max_n, max_d, min_n=2))
        for m, e in pairs:
            checks.extend(_auroux(m, e, field))
    else:
        fn = per_pair[key]
        if n is not None:
            pairs = [(n, d)]
        elif key == "auslander-step":
            pairs = [p for p in AUSLANDER_PAIRS if p[0] <= max_n and p[1] <= max_d]
        elif key == "dimensions":
            pairs = list(_grid(max_n, max_d, d_lt_n=True))
        elif key == "dehn-orthogonality":
            pairs = [p for p in _grid(max_n, max_d) if p[1] >= 2]
        else:
            pairs = list(_grid(max_n, max_d))
        checks = [fn(m, e, field) for m, e in pairs]
    return SuiteReport(key, claim, checks, time.perf_counter() - start)
