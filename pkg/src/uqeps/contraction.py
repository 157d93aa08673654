"""The classical Lie *-algebras g_eps inside g (+) g for g = sl(l+1), their
real forms, Killing signatures and the presentation by generators.

Matrices are sparse dicts ``(i, j) -> (re, im)`` with Fraction parts; an
element of a direct sum is a tuple of such matrices.  Root vectors are the
elementary matrices: X_{ij}^+ = E_ij (i < j), X_{ij}^- = E_ji, h_r = E_rr - E_{r+1,r+1},
so (X^+)^dagger = X^- and [X_r^+, X_r^-] = h_r.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .linalg import EchelonBasis, symmetric_inertia

ZERO = Fraction(0)
ONE = Fraction(1)

CMat = dict          # (i, j) -> (re, im)


def _cm_add(a: CMat, b: CMat, s: Fraction = ONE) -> CMat:
    out = dict(a)
    for k, (br, bi) in b.items():
        ar, ai = out.get(k, (ZERO, ZERO))
        v = (ar + s * br, ai + s * bi)
        if v[0] or v[1]:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _cm_mul(a: CMat, b: CMat) -> CMat:
    rows: dict[int, list] = {}
    for (k, j), v in b.items():
        rows.setdefault(k, []).append((j, v))
    out: dict = {}
    for (i, k), (ar, ai) in a.items():
        for j, (br, bi) in rows.get(k, ()):
            r, im = out.get((i, j), (ZERO, ZERO))
            out[(i, j)] = (r + ar * br - ai * bi, im + ar * bi + ai * br)
    return {k: v for k, v in out.items() if v[0] or v[1]}


def _cm_bracket(a: CMat, b: CMat) -> CMat:
    return _cm_add(_cm_mul(a, b), _cm_mul(b, a), -ONE)


def _cm_scale(a: CMat, re: Fraction, im: Fraction = ZERO) -> CMat:
    out = {}
    for k, (ar, ai) in a.items():
        v = (re * ar - im * ai, re * ai + im * ar)
        if v[0] or v[1]:
            out[k] = v
    return out


def _cm_dagger(a: CMat) -> CMat:
    return {(j, i): (r, -im) for (i, j), (r, im) in a.items()}


def elementary(i: int, j: int) -> CMat:
    return {(i, j): (ONE, ZERO)}


Ambient = tuple        # tuple of CMat


def _amb_bracket(x: Ambient, y: Ambient) -> Ambient:
    return tuple(_cm_bracket(a, b) for a, b in zip(x, y))


def _amb_add(x: Ambient, y: Ambient, s: Fraction = ONE) -> Ambient:
    return tuple(_cm_add(a, b, s) for a, b in zip(x, y))


def _flatten(x: Ambient) -> dict:
    out = {}
    for c, m in enumerate(x):
        for (i, j), (r, im) in m.items():
            if r:
                out[(0, c, i, j, 0)] = r
            if im:
                out[(0, c, i, j, 1)] = im
    return out


class ClosureFailure(RuntimeError):
    pass


class CoordinateSolver:
    """Coordinates of ambient vectors on a fixed independent family."""

    def __init__(self, elements: Sequence[Ambient]):
        self.n = len(elements)
        self.basis = EchelonBasis()
        for idx, x in enumerate(elements):
            row = _flatten(x)
            row[(1, idx)] = ONE
            if not self.basis.add(row):
                raise ClosureFailure("basis elements are linearly dependent")

    def coords(self, x: Ambient) -> dict[int, Fraction]:
        rem = self.basis.reduce(_flatten(x))
        if any(k[0] == 0 for k in rem):
            raise ClosureFailure("element lies outside the span")
        return {k[1]: -c for k, c in rem.items()}


@dataclass
class LieAlgebraSC:
    labels: list[str]
    structure: list[list[dict[int, Fraction]]]          # [i][j] -> {k: c_ij^k}
    star: list[dict[int, Fraction]] | None = None       # coordinates of b_j^*
    elements: list | None = None                        # ambient realization, if any

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket(self, x: dict[int, Fraction], y: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.structure[i][j].items():
                    out[k] = out.get(k, ZERO) + a * b * c
        return {k: v for k, v in out.items() if v}

    def basis_vector(self, i: int) -> dict[int, Fraction]:
        return {i: ONE}

    def antisymmetric(self) -> bool:
        n = self.dim
        for i in range(n):
            for j in range(n):
                s = self.structure[i][j]
                t = self.structure[j][i]
                if set(s) | set(t) and any(s.get(k, ZERO) + t.get(k, ZERO) for k in set(s) | set(t)):
                    return False
        return True

    def jacobi(self) -> bool:
        n = self.dim
        for i, j, k in itertools.combinations(range(n), 3):
            x, y, z = ({i: ONE}, {j: ONE}, {k: ONE})
            total: dict[int, Fraction] = {}
            for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                for key, v in self.bracket(a, self.bracket(b, c)).items():
                    total[key] = total.get(key, ZERO) + v
            if any(total.values()):
                return False
        return True

    def star_antiautomorphism(self) -> bool:
        """[x, y]^* = [y^*, x^*] on basis pairs, and ** = id."""
        if self.star is None:
            return True
        n = self.dim

        def apply(v):
            out: dict[int, Fraction] = {}
            for j, a in v.items():
                for k, c in self.star[j].items():
                    out[k] = out.get(k, ZERO) + a * c
            return {k: c for k, c in out.items() if c}

        for j in range(n):
            if apply(self.star[j]) != {j: ONE}:
                return False
        for i in range(n):
            for j in range(n):
                if apply(self.bracket({i: ONE}, {j: ONE})) != self.bracket(self.star[j], self.star[i]):
                    return False
        return True

    def ad(self, i: int) -> list[list[Fraction]]:
        n = self.dim
        m = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            for k, c in self.structure[i][j].items():
                m[k][j] = c
        return m

    def killing_form(self) -> list[list[Fraction]]:
        ads = [self.ad(i) for i in range(self.dim)]
        n = self.dim
        out = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                a, b = ads[i], ads[j]
                s = sum((a[k][m] * b[m][k] for k in range(n) for m in range(n) if a[k][m] and b[m][k]), ZERO)
                out[i][j] = out[j][i] = s
        return out


def from_ambient(labels: list[str], elements: list[Ambient], bracket: Callable = _amb_bracket,
                 star: Callable | None = None) -> LieAlgebraSC:
    """Structure constants of the span of ``elements``; raises ClosureFailure."""
    solver = CoordinateSolver(elements)
    n = len(elements)
    structure = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = solver.coords(bracket(elements[i], elements[j]))
            structure[i][j] = c
            structure[j][i] = {k: -v for k, v in c.items()}
    star_coords = None
    if star is not None:
        star_coords = [solver.coords(star(x)) for x in elements]
    return LieAlgebraSC(labels, structure, star_coords, list(elements))


# -- type A data ----------------------------------------------------------------------

class UnsupportedSeries(ValueError):
    pass


def positive_roots_A(l: int) -> list[tuple[int, int]]:
    """(i, j) with i < j, ordered by height; the root is alpha_i + ... + alpha_{j-1}."""
    return sorted(((i, j) for i in range(l + 1) for j in range(i + 1, l + 2) if j <= l),
                  key=lambda p: (p[1] - p[0], p[0]))


def eps_root(eps: Sequence[Fraction], i: int, j: int) -> Fraction:
    out = ONE
    for r in range(i, j):
        out *= Fraction(eps[r])
    return out


def cartan_h(l: int, r: int) -> CMat:
    return {(r, r): (ONE, ZERO), (r + 1, r + 1): (-ONE, ZERO)}


def _check_type(series: str):
    if series.upper() != "A":
        raise UnsupportedSeries("contractions are implemented for type A only")


def build_g_eps(l: int, eps: Sequence, series: str = "A") -> LieAlgebraSC:
    """g_eps = span{(eps_a X_a^+, X_a^+), (X_a^-, eps_a X_a^-), (h_r, h_r)} in g (+) g."""
    _check_type(series)
    eps = [Fraction(e) for e in eps]
    if len(eps) != l:
        raise ValueError("eps must have one entry per simple root")
    labels, elements = [], []
    for i, j in positive_roots_A(l):
        e = eps_root(eps, i, j)
        labels.append(f"X+{i + 1}{j + 1}")
        elements.append((_cm_scale(elementary(i, j), e), elementary(i, j)))
    for i, j in positive_roots_A(l):
        e = eps_root(eps, i, j)
        labels.append(f"X-{i + 1}{j + 1}")
        elements.append((elementary(j, i), _cm_scale(elementary(j, i), e)))
    for r in range(l):
        labels.append(f"H{r + 1}")
        elements.append((cartan_h(l, r), cartan_h(l, r)))

    def star(x):
        w, z = x
        return (_cm_dagger(z), _cm_dagger(w))

    return from_ambient(labels, elements, star=star)


def real_form_basis(l: int, eps: Sequence, series: str = "A") -> LieAlgebraSC:
    """The real span of X^(eps)_a = X_a^+ - eps_a X_a^-, Y^(eps)_a = i(X_a^+ + eps_a X_a^-)
    and i h_r inside sl(l+1)."""
    _check_type(series)
    eps = [Fraction(e) for e in eps]
    labels, elements = [], []
    for i, j in positive_roots_A(l):
        e = eps_root(eps, i, j)
        plus, minus = elementary(i, j), elementary(j, i)
        labels.append(f"X{i + 1}{j + 1}")
        elements.append((_cm_add(plus, minus, -e),))
        labels.append(f"Y{i + 1}{j + 1}")
        elements.append((_cm_scale(_cm_add(plus, minus, e), ZERO, ONE),))
    for r in range(l):
        labels.append(f"iH{r + 1}")
        elements.append((_cm_scale(cartan_h(l, r), ZERO, ONE),))
    return from_ambient(labels, elements)


def real_form_intrinsic(l: int, eps: Sequence, series: str = "A") -> LieAlgebraSC:
    """{z in g_eps : z^* = -z} realized in g (+) g: for every root the two
    skew combinations b^+ - b^- and i(b^+ + b^-), and i(h_r, h_r)."""
    _check_type(series)
    g = build_g_eps(l, eps)
    npos = len(positive_roots_A(l))
    labels, elements = [], []
    for a in range(npos):
        bp, bm = g.elements[a], g.elements[npos + a]
        labels.append(f"A{a}")
        elements.append(_amb_add(bp, bm, -ONE))
        labels.append(f"B{a}")
        elements.append(tuple(_cm_scale(m, ZERO, ONE) for m in _amb_add(bp, bm)))
    for r in range(l):
        labels.append(f"iH{r + 1}")
        elements.append(tuple(_cm_scale(m, ZERO, ONE) for m in g.elements[2 * npos + r]))
    return from_ambient(labels, elements)


def killing_signature(L: LieAlgebraSC) -> tuple[int, int, int]:
    inertia = symmetric_inertia(L.killing_form(), ZERO, ONE)
    return (inertia.n_pos, inertia.n_neg, inertia.n_zero)


# -- classification ----------------------------------------------------------------------

def sigma_assignment(eps: Sequence) -> list[int]:
    """sigma_0 = 1 and eps_r = sigma_{r-1} sigma_r (eps in {+-1}^l)."""
    sig = [1]
    for e in eps:
        e = Fraction(e)
        if e not in (1, -1):
            raise ValueError("sigma assignment needs eps in {+1, -1}")
        sig.append(sig[-1] * int(e))
    return sig


def su_pq_name(eps: Sequence) -> tuple[str, int, int]:
    sig = sigma_assignment(eps)
    p = sum(1 for s in sig if s < 0)
    q = len(sig) - p
    name = f"su({len(sig)})" if p == 0 or q == 0 else f"su({p},{q})"
    return name, p, q


def su_pq_signature(p: int, q: int) -> tuple[int, int, int]:
    """Killing signature of su(p, q): noncompact part 2pq, compact part p^2 + q^2 - 1."""
    return (2 * p * q, p * p + q * q - 1, 0)


# -- presentation -----------------------------------------------------------------------

@dataclass
class PresentationReport:
    failures: list[str] = field(default_factory=list)
    generated_dim: int = 0
    dim: int = 0
    positive_part_dim: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def cartan_matrix_A(l: int) -> list[list[int]]:
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(l)] for i in range(l)]


def verify_presentation(l: int, eps: Sequence) -> PresentationReport:
    """Relations (H), (T), (S), (C)_eps for the images of the generators,
    generation of all of g_eps, and dim of the free positive part modulo Serre."""
    eps = [Fraction(e) for e in eps]
    g = build_g_eps(l, eps)
    a = cartan_matrix_A(l)
    rpt = PresentationReport(dim=g.dim)
    npos = len(positive_roots_A(l))
    simple = {i: k for k, (i, j) in enumerate(positive_roots_A(l)) if j == i + 1}
    Xp = [{simple[r]: ONE} for r in range(l)]
    Xm = [{npos + simple[r]: ONE} for r in range(l)]
    H = [{2 * npos + r: ONE} for r in range(l)]

    def scale(v, c):
        return {k: c * x for k, x in v.items() if c * x}

    br = g.bracket
    for r in range(l):
        for s in range(l):
            if br(H[r], H[s]):
                rpt.failures.append(f"(H) [H{r + 1},H{s + 1}] != 0")
            if br(H[r], Xp[s]) != scale(Xp[s], Fraction(a[r][s])):
                rpt.failures.append(f"(T) [H{r + 1},X+{s + 1}]")
            if br(H[r], Xm[s]) != scale(Xm[s], Fraction(-a[r][s])):
                rpt.failures.append(f"(T) [H{r + 1},X-{s + 1}]")
            expect = scale(H[r], eps[r]) if r == s else {}
            if br(Xp[r], Xm[s]) != expect:
                rpt.failures.append(f"(C) [X+{r + 1},X-{s + 1}]")
            if r != s:
                for gens in (Xp, Xm):
                    v = gens[s]
                    for _ in range(1 - a[r][s]):
                        v = br(gens[r], v)
                    if v:
                        rpt.failures.append(f"(S) ad^{1 - a[r][s]} at ({r + 1},{s + 1})")
    # generated subalgebra
    span = EchelonBasis()
    frontier = []
    for v in Xp + Xm + H:
        if span.add(v):
            frontier.append(v)
    gens = Xp + Xm + H
    while frontier:
        nxt = []
        for v in frontier:
            for w in gens:
                u = br(w, v)
                if u and span.add(u):
                    nxt.append(u)
        frontier = nxt
    rpt.generated_dim = len(span)
    if rpt.generated_dim != g.dim:
        rpt.failures.append(f"generated subalgebra has dim {rpt.generated_dim} != {g.dim}")
    rpt.positive_part_dim = free_positive_part_dim(a)
    if 2 * rpt.positive_part_dim + l != g.dim:
        rpt.failures.append("triangular bound on the presented algebra does not match dim g_eps")
    return rpt


def free_positive_part_dim(a: list[list[int]]) -> int:
    """dim of the Lie algebra on generators x_r modulo the classical Serre
    relations ad(x_r)^{1-a_rs} x_s = 0.

    Weight spaces of its enveloping algebra (free associative algebra modulo
    the Serre ideal) are computed by linear algebra; root multiplicities
    follow by inverting the PBW product formula, weight by weight, until a
    whole height is empty."""
    l = len(a)
    mult: dict[tuple, int] = {}
    serre = []
    for r in range(l):
        for s in range(l):
            if r != s:
                m = 1 - a[r][s]
                vec = {}
                for k in range(m + 1):
                    # ad(x_r)^m x_s = sum_k (-1)^k C(m,k) x_r^{m-k} x_s x_r^k
                    word = (r,) * (m - k) + (s,) + (r,) * k
                    vec[word] = vec.get(word, 0) + (-1) ** k * math.comb(m, k)
                n = [0] * l
                n[r] += m
                n[s] += 1
                serre.append((tuple(n), {w: Fraction(c) for w, c in vec.items() if c}))
    height = 1
    while True:
        found = False
        for n in _compositions(l, height):
            dim_u = _enveloping_dim(n, serre)
            m = dim_u - _pbw_count(n, mult)
            if m < 0:
                raise ClosureFailure("negative multiplicity")
            if m:
                mult[n] = m
                found = True
        if not found:
            break
        height += 1
    return sum(mult.values())


def _compositions(l: int, h: int):
    for n in itertools.product(range(h + 1), repeat=l):
        if sum(n) == h:
            yield n


def _words(n):
    from .qea import words_of_weight
    return words_of_weight(n)


def _enveloping_dim(n, serre) -> int:
    basis = EchelonBasis()
    for wt, rel in serre:
        rest = tuple(x - y for x, y in zip(n, wt))
        if any(x < 0 for x in rest):
            continue
        for left in itertools.product(*(range(x + 1) for x in rest)):
            right = tuple(x - y for x, y in zip(rest, left))
            for u in _words(left):
                for w in _words(right):
                    basis.add({u + k + w: c for k, c in rel.items()})
    return len(_words(n)) - len(basis)


def _pbw_count(n, mult) -> int:
    """Coefficient of e^n in prod_gamma (1 - e^gamma)^{-mult gamma}, over known gamma."""
    items = [g for g in mult for _ in range(mult[g])]
    target = tuple(n)

    def count(t, i):
        if not any(t):
            return 1
        if i == len(items):
            return 0
        total = 0
        g = items[i]
        while all(x >= 0 for x in t):
            total += count(t, i + 1)
            t = tuple(x - y for x, y in zip(t, g))
        return total

    return count(target, 0)


# -- rescaling isomorphism --------------------------------------------------------------

def rescaling_isomorphism(l: int, eps: Sequence, eps2: Sequence, scale_roots: Sequence) -> bool:
    """With eps_r = lambda_r eps2_r and a_r^2 = lambda_r, the map
    b^pm_alpha -> a_alpha b'^pm_alpha, H -> H is a bracket- and star-preserving
    isomorphism g_eps -> g_eps2.  Returns True when every check passes."""
    eps = [Fraction(e) for e in eps]
    eps2 = [Fraction(e) for e in eps2]
    a = [Fraction(x) for x in scale_roots]
    for r in range(l):
        if a[r] <= 0 or eps[r] != a[r] ** 2 * eps2[r]:
            raise ValueError("need eps_r = a_r^2 eps2_r with a_r > 0")
    g, h = build_g_eps(l, eps), build_g_eps(l, eps2)
    roots = positive_roots_A(l)
    npos = len(roots)
    diag = []
    for i, j in roots:
        c = ONE
        for r in range(i, j):
            c *= a[r]
        diag.append(c)
    diag = diag + diag + [ONE] * l

    def phi(v):
        return {k: diag[k] * x for k, x in v.items()}

    for i in range(g.dim):
        if phi(g.star[i]) != {k: x * diag[i] for k, x in h.star[i].items()}:
            return False
        for j in range(g.dim):
            if phi(g.bracket({i: ONE}, {j: ONE})) != h.bracket(phi({i: ONE}), phi({j: ONE})):
                return False
    return True


@dataclass
class ContractionRow:
    eps: tuple
    dim: int
    jacobi: bool
    star_ok: bool
    signature: tuple[int, int, int]
    intrinsic_signature: tuple[int, int, int]
    form: str | None
    expected_signature: tuple[int, int, int] | None

    @property
    def ok(self) -> bool:
        base = self.jacobi and self.star_ok and self.signature == self.intrinsic_signature
        return base and (self.expected_signature is None or self.signature == self.expected_signature)


def contraction_row(l: int, eps: Sequence) -> ContractionRow:
    g = build_g_eps(l, eps)
    real = real_form_basis(l, eps)
    intrinsic = real_form_intrinsic(l, eps)
    sig = killing_signature(real)
    form = expected = None
    if all(Fraction(e) in (1, -1) for e in eps):
        form, p, q = su_pq_name(eps)
        expected = su_pq_signature(p, q)
    return ContractionRow(tuple(Fraction(e) for e in eps), g.dim,
                          g.jacobi() and g.antisymmetric() and real.jacobi(),
                          g.star_antiautomorphism(), sig, killing_signature(intrinsic), form, expected)
