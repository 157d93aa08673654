"""Cartan data, weight lattice, Weyl groups, q-numbers and the characters
eps (on the positive root cone) and lambda (on the weight lattice).

Conventions
-----------
* Dynkin nodes follow Bourbaki ordering, 0-based internally, 1-based in text.
* ``a[r][s] = (alpha_r^vee, alpha_s)``; symmetrizers ``d_r = (alpha_r, alpha_r)/2``
  with short roots of squared length 2.
* Weights are integer vectors in the fundamental weight basis; elements of
  the root lattice are integer vectors in the simple root basis ("root coords").
* ``q_r = q**d_r``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .scalars import ScalarContext

SUPPORTED = {"A": range(1, 9), "B": range(2, 9), "C": range(2, 9), "D": range(4, 9), "G": range(2, 3)}

Vec = tuple[int, ...]


class UnsupportedType(ValueError):
    pass


class WeylCapExceeded(RuntimeError):
    pass


def cartan_matrix(series: str, rank: int) -> list[list[int]]:
    if series not in SUPPORTED or rank not in SUPPORTED[series]:
        raise UnsupportedType(f"unsupported type {series}{rank}")
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i in range(rank - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if series == "B":
        a[rank - 1][rank - 2] = -2      # alpha_l short
    elif series == "C":
        a[rank - 2][rank - 1] = -2      # alpha_l long
    elif series == "D":
        a[rank - 2][rank - 1] = a[rank - 1][rank - 2] = 0
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1
    elif series == "G":
        a[0][1] = -3                    # alpha_1 short
    return a


def _symmetrizers(a: list[list[int]]) -> list[int]:
    n = len(a)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        r = stack.pop()
        for s in range(n):
            if s != r and a[r][s] != 0 and d[s] is None:
                d[s] = d[r] * a[r][s] / a[s][r]
                stack.append(s)
    if any(x is None for x in d):
        raise UnsupportedType("disconnected Dynkin diagram")
    lo = min(d)
    d = [x / lo for x in d]
    den = math.lcm(*(x.denominator for x in d))
    return [int(x * den) for x in d]


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in m[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: a word in simple reflections and its matrix on
    fundamental-weight coordinates (row-major, acting on column vectors)."""

    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def act(self, mu: Sequence[int]) -> Vec:
        return tuple(sum(row[j] * mu[j] for j in range(len(mu))) for row in self.matrix)

    def __len__(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class RootDatum:
    series: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    weight_form: tuple[tuple[Fraction, ...], ...]    # (omega_i, omega_j)
    weyl_cap: int = 10_000

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def rho(self) -> Vec:
        return (1,) * self.rank

    def fundamental(self, r: int) -> Vec:
        return tuple(int(i == r) for i in range(self.rank))

    def simple_root(self, r: int) -> Vec:
        """alpha_r in fundamental-weight coordinates (column r of the Cartan matrix)."""
        return tuple(self.cartan[s][r] for s in range(self.rank))

    # -- lattice conversions -------------------------------------------------

    def root_to_weight(self, n: Sequence[int]) -> Vec:
        return tuple(sum(self.cartan[s][r] * n[r] for r in range(self.rank)) for s in range(self.rank))

    @cached_property
    def _cartan_inverse(self):
        return _inverse([[Fraction(x) for x in row] for row in self.cartan])

    def weight_to_root(self, mu: Sequence[int]) -> tuple[Fraction, ...]:
        """Rational root coordinates of a weight (integral iff mu is in Q)."""
        inv = self._cartan_inverse
        return tuple(sum(inv[r][s] * mu[s] for s in range(self.rank)) for r in range(self.rank))

    # -- bilinear form -------------------------------------------------------

    def pair(self, mu: Sequence, nu: Sequence) -> Fraction:
        """(mu, nu) for weights in fundamental coordinates."""
        g = self.weight_form
        return sum((g[i][j] * mu[i] * nu[j] for i in range(self.rank) for j in range(self.rank)
                    if mu[i] and nu[j]), Fraction(0))

    def pair_root(self, mu: Sequence[int], n: Sequence[int]) -> int:
        """(mu, sum_r n_r alpha_r) for a weight mu; always an integer."""
        return sum(self.d[r] * mu[r] * n[r] for r in range(self.rank))

    def root_pair(self, m: Sequence[int], n: Sequence[int]) -> int:
        """(sum m_r alpha_r, sum n_s alpha_s) = sum m_r n_s d_r a_rs."""
        return sum(m[r] * n[s] * self.d[r] * self.cartan[r][s]
                   for r in range(self.rank) for s in range(self.rank) if m[r] and n[s])

    def coroot_pairing(self, n: Sequence[int], r: int) -> int:
        """(beta, alpha_r^vee) for beta = sum n_s alpha_s."""
        return sum(self.cartan[r][s] * n[s] for s in range(self.rank))

    def exponent_denominator(self, exponents: Sequence = ()) -> int:
        """Smallest D (a multiple of 4) making every q-power used an integral
        power of v = q^(1/D): the half-pairings of weights and the supplied
        lambda exponents."""
        dens = [4]
        for row in self.weight_form:
            dens.extend((x / 2).denominator for x in row)
        dens.extend(Fraction(e).denominator for e in exponents)
        return math.lcm(*dens)

    # -- roots ---------------------------------------------------------------

    @cached_property
    def positive_roots(self) -> tuple[Vec, ...]:
        """Positive roots in root coordinates, sorted by height then lexicographically."""
        simple = [tuple(int(i == r) for i in range(self.rank)) for r in range(self.rank)]
        roots = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for beta in frontier:
                for r in range(self.rank):
                    c = self.coroot_pairing(beta, r)
                    img = tuple(beta[s] - (c if s == r else 0) for s in range(self.rank))
                    if img not in roots and all(x >= 0 for x in img) and any(img):
                        roots.add(img)
                        new.append(img)
            frontier = new
        return tuple(sorted(roots, key=lambda b: (sum(b), b)))

    def highest_root(self) -> Vec:
        return self.positive_roots[-1]

    # -- Weyl group ----------------------------------------------------------

    def reflection_matrix(self, r: int) -> tuple[tuple[int, ...], ...]:
        """s_r on fundamental coordinates: s_r(mu) = mu - mu_r alpha_r."""
        alpha = self.simple_root(r)
        rows = []
        for i in range(self.rank):
            rows.append(tuple(int(i == j) - (alpha[i] if j == r else 0) for j in range(self.rank)))
        return tuple(rows)

    def weyl_group(self, subset: Sequence[int] | None = None, cap: int | None = None) -> list[WeylElement]:
        """Full enumeration of W_S (S = all nodes by default), identity first,
        breadth-first by word length."""
        cap = self.weyl_cap if cap is None else cap
        subset = range(self.rank) if subset is None else sorted(set(subset))
        ident = tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))
        refl = {r: self.reflection_matrix(r) for r in subset}
        seen = {ident: WeylElement((), ident)}
        order = [seen[ident]]
        frontier = [seen[ident]]
        while frontier:
            new = []
            for w in frontier:
                for r in subset:
                    m = _matmul_int(w.matrix, refl[r])
                    if m not in seen:
                        el = WeylElement(w.word + (r,), m)
                        seen[m] = el
                        order.append(el)
                        new.append(el)
                        if len(order) > cap:
                            raise WeylCapExceeded(f"|W_S| exceeds cap {cap}")
            frontier = new
        return order

    # -- misc ----------------------------------------------------------------

    def is_dominant(self, mu: Sequence[int]) -> bool:
        return all(x >= 0 for x in mu)

    def weyl_dimension(self, mu: Sequence[int]) -> int:
        """Classical Weyl dimension formula for a dominant integral weight."""
        num = Fraction(1)
        lam = tuple(m + 1 for m in mu)
        for beta in self.positive_roots:
            bw = self.root_to_weight(beta)
            # (lambda + rho, beta^vee) / (rho, beta^vee)
            top = self.pair(lam, bw)
            bot = self.pair(self.rho, bw)
            num *= top / bot
        assert num.denominator == 1
        return int(num)

    def kostant_partition_count(self, n: Sequence[int]) -> int:
        """Number of ways to write sum n_r alpha_r as an N-combination of positive roots."""
        roots = self.positive_roots

        def count(target: Vec, i: int) -> int:
            if not any(target):
                return 1
            if i == len(roots):
                return 0
            beta = roots[i]
            total = 0
            t = target
            while all(x >= 0 for x in t):
                total += count(t, i + 1)
                t = tuple(a - b for a, b in zip(t, beta))
            return total

        return count(tuple(n), 0)


def _matmul_int(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def build_root_datum(series: str, rank: int, weyl_cap: int = 10_000) -> RootDatum:
    series = series.upper()
    a = cartan_matrix(series, rank)
    d = _symmetrizers(a)
    # (omega_i, alpha_j) = d_j delta_ij and alpha_j is column j of A, so G A = diag(d)
    inv = _inverse([[Fraction(x) for x in row] for row in a])
    form = [[d[i] * inv[i][j] for j in range(rank)] for i in range(rank)]
    datum = RootDatum(series, rank, tuple(map(tuple, a)), tuple(d),
                      tuple(tuple(row) for row in form), weyl_cap)
    _check(datum)
    return datum


def _check(datum: RootDatum) -> None:
    a, d, n = datum.cartan, datum.d, datum.rank
    for r in range(n):
        assert a[r][r] == 2
        for s in range(n):
            if r != s:
                assert a[r][s] <= 0 and (a[r][s] == 0) == (a[s][r] == 0)
            assert d[r] * a[r][s] == d[s] * a[s][r]
    for r in range(n):
        for s in range(n):
            # (omega_s, alpha_r^vee) = delta_rs
            val = datum.pair(datum.fundamental(s), datum.simple_root(r)) / d[r]
            assert val == int(r == s), (r, s, val)
            assert datum.weight_form[r][s] == datum.weight_form[s][r]


# -- q-numbers --------------------------------------------------------------

def q_number(ctx: ScalarContext, datum: RootDatum, n: int, r: int):
    """[n]_r = (q_r^n - q_r^-n)/(q_r - q_r^-1) as a Laurent polynomial in v."""
    if n < 0:
        raise ValueError("q-number index must be nonnegative")
    step = ctx.D * datum.d[r]
    total = ctx.zero()
    for j in range(n):
        total = total + ctx.vpow(step * (n - 1 - 2 * j))
    return total


def q_factorial(ctx: ScalarContext, datum: RootDatum, n: int, r: int):
    if n < 0:
        raise ValueError("q-factorial index must be nonnegative")
    out = ctx.one()
    for k in range(1, n + 1):
        out = out * q_number(ctx, datum, k, r)
    return out


def q_binomial(ctx: ScalarContext, datum: RootDatum, m: int, n: int, r: int):
    if not 0 <= n <= m:
        raise ValueError("q-binomial needs 0 <= n <= m")
    return q_factorial(ctx, datum, m, r) / (q_factorial(ctx, datum, n, r) * q_factorial(ctx, datum, m - n, r))


# -- characters -------------------------------------------------------------

@dataclass(frozen=True)
class EpsChar:
    """A character of the monoid Q^+, given by its values on simple roots."""

    values: tuple[Fraction, ...]

    @classmethod
    def of(cls, values) -> "EpsChar":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def plus(cls, rank: int) -> "EpsChar":
        return cls((Fraction(1),) * rank)

    def __getitem__(self, r: int) -> Fraction:
        return self.values[r]

    def __len__(self) -> int:
        return len(self.values)

    def value(self, n: Sequence[int]) -> Fraction:
        return eps_value(self, n)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"


def eps_value(eps: EpsChar, n: Sequence[int]) -> Fraction:
    """prod_r eps_r^{n_r} for n in Q^+ (root coordinates), with 0^0 = 1."""
    if any(x < 0 for x in n):
        raise ValueError(f"{tuple(n)} is not in Q^+")
    out = Fraction(1)
    for e, k in zip(eps.values, n):
        if k:
            out *= e ** k
    return out


@dataclass(frozen=True)
class LambdaChar:
    """A positive character of P.  Exact mode: lambda_{omega_r} = q^{e_r} with
    rational exponents.  Numeric mode (``values`` set): lambda_{omega_r} are
    given positive reals; excluded from exact checks."""

    exponents: tuple[Fraction, ...]
    values: tuple | None = None

    @classmethod
    def of(cls, exponents) -> "LambdaChar":
        return cls(tuple(Fraction(e) for e in exponents))

    @classmethod
    def numeric(cls, values) -> "LambdaChar":
        if any(v <= 0 for v in values):
            raise ValueError("numeric lambda values must be positive")
        return cls(tuple(Fraction(0) for _ in values), tuple(values))

    @classmethod
    def from_alpha_powers(cls, datum: RootDatum, m: Sequence) -> "LambdaChar":
        """The exact character with lambda_{alpha_r}^4 = q^{m_r}."""
        # lambda_{alpha_r} = q^{sum_s a_sr e_s}: solve A^T e = m/4
        inv = datum._cartan_inverse
        n = datum.rank
        e = [sum(inv[s][r] * Fraction(m[s]) / 4 for s in range(n)) for r in range(n)]
        # (A^T)^{-1} = (A^{-1})^T
        return cls(tuple(e))

    @property
    def is_exact(self) -> bool:
        return self.values is None

    def exponent(self, mu: Sequence[int]) -> Fraction:
        """log_q lambda_mu."""
        return sum((e * m for e, m in zip(self.exponents, mu) if m), Fraction(0))

    def alpha_power4(self, datum: RootDatum, r: int) -> Fraction:
        """Exponent m with lambda_{alpha_r}^4 = q^m."""
        return 4 * self.exponent(datum.simple_root(r))

    def value(self, ctx: ScalarContext, mu: Sequence[int]):
        if self.values is None:
            return ctx.qpow(self.exponent(mu))
        out = ctx.one()
        for v, m in zip(self.values, mu):
            if m:
                out = out * (ctx.const(v) ** m if m > 0 else 1 / ctx.const(v) ** (-m))
        return out

    def __str__(self) -> str:
        if self.values is not None:
            return "num(" + ",".join(str(v) for v in self.values) + ")"
        return "(" + ",".join(str(e) for e in self.exponents) + ")"


def finite_condition(datum: RootDatum, lam: LambdaChar, r: int) -> bool:
    """lambda_{alpha_r}^4 in q_r^{2N}."""
    m = lam.alpha_power4(datum, r)
    step = 2 * datum.d[r]
    return m >= 0 and (m / step).denominator == 1


def weights_up_to(rank: int, depth: int) -> list[Vec]:
    """All n in N^rank with |n| <= depth, ordered by height then lexicographically."""
    out = []
    for h in range(depth + 1):
        for n in itertools.product(range(h + 1), repeat=rank):
            if sum(n) == h:
                out.append(tuple(n))
    return out
