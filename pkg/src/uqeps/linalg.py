"""Exact linear algebra over an arbitrary field of Python scalars.

Entries only need ``+ - * /`` and comparison with zero, so the same routines
run over ``Fraction``, gmpy2 ``mpq`` and :class:`~uqeps.scalars.LaurentFrac`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence


def _is_zero(x) -> bool:
    return not x


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of sparse vectors.

    Vectors are dicts ``key -> coeff``; keys must be totally ordered.  The
    pivot of each row is its smallest key and pivots are cleared from all
    other rows, so the remainder returned by :meth:`reduce` is the canonical
    representative of a vector modulo the span.
    """

    def __init__(self):
        self.rows: dict[Hashable, dict] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        out = {k: c for k, c in vec.items() if not _is_zero(c)}
        for p in [k for k in out if k in self.rows]:
            c = out.get(p)
            if c is None or _is_zero(c):
                continue
            for k, rc in self.rows[p].items():
                nc = out.get(k)
                nc = -c * rc if nc is None else nc - c * rc
                if _is_zero(nc):
                    out.pop(k, None)
                else:
                    out[k] = nc
        return out

    def add(self, vec: dict) -> bool:
        """Add ``vec`` to the span; returns False if it was already inside."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: c * inv for k, c in r.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c is not None:
                for k, rc in r.items():
                    nc = row.get(k)
                    nc = -c * rc if nc is None else nc - c * rc
                    if _is_zero(nc):
                        row.pop(k, None)
                    else:
                        row[k] = nc
        self.rows[p] = r
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]


def rref(matrix: Sequence[Sequence], zero=0):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(r) for r in matrix]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not _is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(matrix: Sequence[Sequence]) -> int:
    if not matrix or not matrix[0]:
        return 0
    return len(rref(matrix)[1])


def kernel(matrix: Sequence[Sequence], ncols: int | None = None, zero=0, one=1) -> list[list]:
    """Basis of the right null space {x : M x = 0}."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for row, p in zip(rows, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence, zero=0):
    """Unique solution of a square nonsingular system."""
    n = len(matrix)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    rows, pivots = rref(aug)
    if len(pivots) != n or (pivots and pivots[-1] == n):
        raise ValueError("singular system")
    return [rows[i][n] for i in range(n)]


def inverse(matrix: Sequence[Sequence], zero=0, one=1):
    n = len(matrix)
    aug = [list(matrix[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("singular matrix")
    return [r[n:] for r in rows]


def matmul(a, b, zero=0):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if _is_zero(x):
                continue
            bt = b[t]
            for j in range(m):
                y = bt[j]
                if not _is_zero(y):
                    oi[j] = oi[j] + x * y
    return out


def transpose(a):
    return [list(r) for r in zip(*a)] if a else []


@dataclass
class Inertia:
    """Result of a symmetric elimination."""

    n_pos: int
    n_neg: int
    n_zero: int
    witness: list | None = None     # vector w with w^T G w < 0, if any
    witness_value: object = None
    pivots: list = field(default_factory=list)


def symmetric_inertia(gram: Sequence[Sequence], zero=0, one=1, stop_at_negative=False) -> Inertia:
    """Inertia of a symmetric matrix by congruence with diagonal pivoting.

    Each step takes the diagonal entry of largest absolute value.  If the
    remaining diagonal is identically zero but an off-diagonal entry b is
    not, the vector e_i - sign(b) e_j has norm -2|b| < 0 and is split off as a
    hyperbolic pair (one positive, one negative direction).  The current
    directions are tracked in original coordinates so the first negative
    direction is returned as an exact witness.
    """
    n = len(gram)
    g = [list(r) for r in gram]
    vecs = [[one if i == j else zero for j in range(n)] for i in range(n)]
    active = list(range(n))
    pos = neg = 0
    witness = wval = None
    pivots = []

    def norm(w):
        s = zero
        for i in range(n):
            if _is_zero(w[i]):
                continue
            for j in range(n):
                if not _is_zero(w[j]):
                    s = s + w[i] * g0[i][j] * w[j]
        return s

    g0 = [list(r) for r in gram]

    while active:
        diag = [(abs(g[i][i]), i) for i in active if not _is_zero(g[i][i])]
        if diag:
            _, p = max(diag, key=lambda t: (t[0], -t[1]))
            d = g[p][p]
            pivots.append(d)
            if d > 0:
                pos += 1
            else:
                neg += 1
                if witness is None:
                    witness = list(vecs[p])
                    wval = norm(witness)
                    if stop_at_negative:
                        return Inertia(pos, neg, 0, witness, wval, pivots)
            active.remove(p)
            for i in active:
                f = g[i][p] / d
                if _is_zero(f):
                    continue
                for j in active:
                    g[i][j] = g[i][j] - f * g[p][j]
                vecs[i] = [a - f * b for a, b in zip(vecs[i], vecs[p])]
            continue
        off = next(((i, j) for i in active for j in active if i < j and not _is_zero(g[i][j])), None)
        if off is None:
            break
        i, j = off
        b = g[i][j]
        s = one if b > 0 else -one
        # u = e_i + s e_j has norm 2|b|, w = e_i - s e_j has norm -2|b|, and they are orthogonal
        u = [a + s * c for a, c in zip(vecs[i], vecs[j])]
        w = [a - s * c for a, c in zip(vecs[i], vecs[j])]
        pos += 1
        neg += 1
        pivots.extend([2 * abs(b), -2 * abs(b)])
        if witness is None:
            witness, wval = w, norm(w)
            if stop_at_negative:
                return Inertia(pos, neg, 0, witness, wval, pivots)
        # project the remaining directions off span(u, w)
        gu = [g[k][i] + s * g[k][j] for k in range(n)]
        gw = [g[k][i] - s * g[k][j] for k in range(n)]
        nu, nw = 2 * abs(b), -2 * abs(b)
        active.remove(i)
        active.remove(j)
        for k in active:
            fu, fw = gu[k] / nu, gw[k] / nw
            vecs[k] = [a - fu * x - fw * y for a, x, y in zip(vecs[k], u, w)]
        # recompute the Gram matrix on the remaining directions
        for k in active:
            for l in active:
                g[k][l] = _bilinear(g0, vecs[k], vecs[l], zero)
    zero_count = n - pos - neg
    return Inertia(pos, neg, zero_count, witness, wval, pivots)


def _bilinear(g, x, y, zero):
    s = zero
    for i, xi in enumerate(x):
        if _is_zero(xi):
            continue
        row = g[i]
        for j, yj in enumerate(y):
            if not _is_zero(yj):
                s = s + xi * row[j] * yj
    return s
