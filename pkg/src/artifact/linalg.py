"""Exact scalar fields and dense matrix routines.

Two fields are supported: the rationals (elements are ``fractions.Fraction``)
and prime fields F_p (elements are ``int`` in ``range(p)``).  Every routine
takes the field explicitly; nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

Scalar = Union[int, Fraction]
Vector = List[Scalar]
Matrix = List[List[Scalar]]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The ground field: ``p == 0`` means Q, otherwise F_p."""

    p: int = 0

    def __post_init__(self) -> None:
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"characteristic must be 0 or a prime, got {self.p}")

    @classmethod
    def parse(cls, text: Union[str, int, "Field"]) -> "Field":
        """Accepts ``Q``, ``0``, ``Fp:3``, ``3`` or an existing field."""
        if isinstance(text, Field):
            return text
        if isinstance(text, int):
            return cls(text)
        s = str(text).strip()
        if s in ("Q", "0", ""):
            return cls(0)
        if s.startswith("Fp:"):
            s = s[3:]
        return cls(int(s))

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    @property
    def zero(self) -> Scalar:
        return 0 if self.p else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.p else Fraction(1)

    def __call__(self, x: Union[int, Fraction, str]) -> Scalar:
        if isinstance(x, str):
            x = Fraction(x)
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{x} has no image in {self.name}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def norm(self, x: Scalar) -> Scalar:
        return x % self.p if self.p else x

    def inv(self, x: Scalar) -> Scalar:
        if self.p:
            return pow(int(x), -1, self.p)
        return 1 / Fraction(x)

    def fmt(self, x: Scalar) -> str:
        return str(x)

    def __repr__(self) -> str:
        return f"Field({self.name})"


QQ = Field(0)


def zeros(rows: int, cols: int, field: Field = QQ) -> Matrix:
    return [[field.zero] * cols for _ in range(rows)]


def identity(n: int, field: Field = QQ) -> Matrix:
    m = zeros(n, n, field)
    for i in range(n):
        m[i][i] = field.one
    return m


def to_field(M: Iterable[Iterable], field: Field = QQ) -> Matrix:
    return [[field(x) for x in row] for row in M]


def matmul(A: Sequence[Sequence[Scalar]], B: Sequence[Sequence[Scalar]], field: Field = QQ,
           inner: Optional[int] = None) -> Matrix:
    """Product ``A @ B``.  ``inner`` is needed only when ``A`` has no rows."""
    n = len(B) if inner is None else inner
    cols = len(B[0]) if B else 0
    out = []
    p = field.p
    for row in A:
        acc = [0] * cols
        for k in range(n):
            a = row[k]
            if a:
                brow = B[k]
                for j in range(cols):
                    b = brow[j]
                    if b:
                        acc[j] += a * b
        if p:
            out.append([x % p for x in acc])
        else:
            out.append([Fraction(x) for x in acc])
    return out


def matvec(A: Sequence[Sequence[Scalar]], v: Sequence[Scalar], field: Field = QQ) -> Vector:
    out = []
    for row in A:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s += a * b
        out.append(field.norm(s) if field.p else Fraction(s))
    return out


def transpose(A: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> Matrix:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(c) for c in zip(*A)]


def rref(M: Sequence[Sequence[Scalar]], field: Field = QQ) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form.  Returns the nonzero rows and pivot columns."""
    rows = [list(r) for r in M]
    if not rows:
        return [], []
    ncols = len(rows[0])
    p = field.p
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        if p:
            rows[r] = [x * inv % p for x in rows[r]]
        else:
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    if p:
                        rows[i] = [(x - f * y) % p for x, y in zip(row, prow)]
                    else:
                        rows[i] = [x - f * y for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(M: Sequence[Sequence[Scalar]], field: Field = QQ) -> int:
    return len(rref(M, field)[1])


def kernel_basis(M: Sequence[Sequence[Scalar]], field: Field = QQ,
                 cols: Optional[int] = None) -> List[Vector]:
    """Basis of the right kernel ``{v : M v = 0}``."""
    ncols = len(M[0]) if M else (cols or 0)
    R, pivots = rref(M, field)
    piv_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in piv_set:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for row, pc in zip(R, pivots):
            if row[free]:
                v[pc] = field.norm(-row[free])
        basis.append(v)
    return basis


def solve(M: Sequence[Sequence[Scalar]], b: Sequence[Scalar], field: Field = QQ,
          cols: Optional[int] = None) -> Optional[Vector]:
    """One solution of ``M x = b`` or ``None`` when the system is inconsistent."""
    if len(b) != len(M):
        raise ValueError("right-hand side length must equal the number of rows")
    ncols = len(M[0]) if M else (cols or 0)
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = rref(aug, field)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


class Subspace:
    """Incrementally built span of vectors, kept in reduced echelon form.

    With ``track=True`` every stored row remembers how it was obtained from the
    vectors passed to :meth:`add`, so :meth:`coordinates` can express a member
    in terms of those generators.
    """

    def __init__(self, dim: int, field: Field = QQ, track: bool = False):
        self.dim = dim
        self.field = field
        self.track = track
        self.rows: List[Vector] = []
        self.pivots: List[int] = []
        self.combos: List[dict] = []
        self.ngens = 0

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Sequence[Scalar]) -> Tuple[Vector, dict]:
        p = self.field.p
        w = list(v)
        combo: dict = {}
        for row, pc, rc in zip(self.rows, self.pivots, self.combos):
            c = w[pc]
            if c:
                if p:
                    w = [(x - c * y) % p for x, y in zip(w, row)]
                else:
                    w = [x - c * y for x, y in zip(w, row)]
                if self.track:
                    for k, val in rc.items():
                        combo[k] = self.field.norm(combo.get(k, 0) - c * val)
        return w, combo

    def reduce(self, v: Sequence[Scalar]) -> Vector:
        return self._reduce(v)[0]

    def contains(self, v: Sequence[Scalar]) -> bool:
        return not any(self._reduce(v)[0])

    def add(self, v: Sequence[Scalar]) -> bool:
        """Adds ``v``; returns whether it enlarged the span."""
        gen = self.ngens
        self.ngens += 1
        w, combo = self._reduce(v)
        pc = next((i for i, x in enumerate(w) if x), None)
        if pc is None:
            return False
        f = self.field
        inv = f.inv(w[pc])
        w = [f.norm(x * inv) for x in w]
        if self.track:
            combo = {k: f.norm(val * inv) for k, val in combo.items()}
            combo[gen] = f.norm(combo.get(gen, 0) + inv)
            combo = {k: val for k, val in combo.items() if val}
        p = f.p
        for i, row in enumerate(self.rows):
            c = row[pc]
            if c:
                if p:
                    self.rows[i] = [(x - c * y) % p for x, y in zip(row, w)]
                else:
                    self.rows[i] = [x - c * y for x, y in zip(row, w)]
                if self.track:
                    rc = dict(self.combos[i])
                    for k, val in combo.items():
                        rc[k] = f.norm(rc.get(k, 0) - c * val)
                    self.combos[i] = {k: val for k, val in rc.items() if val}
        self.rows.append(w)
        self.pivots.append(pc)
        self.combos.append(combo)
        return True

    def coordinates(self, v: Sequence[Scalar]) -> Optional[dict]:
        """Generator coefficients expressing ``v``, or ``None`` if ``v`` is outside."""
        if not self.track:
            raise ValueError("coordinates need track=True")
        f = self.field
        out: dict = {}
        w = list(v)
        for row, pc, rc in zip(self.rows, self.pivots, self.combos):
            c = w[pc]
            if c:
                w = [f.norm(x - c * y) for x, y in zip(w, row)]
                for k, val in rc.items():
                    out[k] = f.norm(out.get(k, 0) + c * val)
        if any(w):
            return None
        return {k: val for k, val in out.items() if val}
