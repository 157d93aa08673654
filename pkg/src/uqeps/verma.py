"""Verma modules, their invariant Hermitian forms and unitarizability checks.

The module M_lambda is modelled on F-words: a vector is a dict ``word ->
coeff`` and stands for sum coeff * F-word . v_lambda.  The form is
<x v, y v> = chi_lambda(tau(x^* y)); on word vectors this only needs the
E-word x F-word products of the algebra kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import Inertia, rank as matrix_rank, symmetric_inertia
from .qea import QEA, Element, Word, word_weight, words_of_weight
from .root_data import EpsChar, LambdaChar, RootDatum, weights_up_to
from .scalars import PointContext, ScalarContext, SymbolicContext


class DepthExceeded(ValueError):
    pass


def session_denominator(datum: RootDatum, lam: LambdaChar) -> int:
    return datum.exponent_denominator(lam.exponents)


@dataclass
class GramBlock:
    weight: tuple[int, ...]          # root coordinates of the F-weight
    basis: list[Word]
    gram: list[list]

    def rank(self) -> int:
        return matrix_rank(self.gram) if self.basis else 0


class VermaModule:
    """M_lambda^{eps, eta} over the algebra's scalar context."""

    def __init__(self, alg: QEA, lam: LambdaChar, max_depth: int = 8):
        self.alg = alg
        self.lam = lam
        self.max_depth = max_depth
        self._blocks: dict[tuple, GramBlock] = {}

    @property
    def ctx(self):
        return self.alg.ctx

    def pairing(self, f1: Word, f2: Word):
        """<F_{f1} v, F_{f2} v>."""
        total = self.ctx.zero()
        for (f, k, e), c in self.alg._ef(f1[::-1], f2).items():
            if not f and not e:
                total = total + c * self.lam.value(self.ctx, k)
        return total

    def gram_block(self, n: Sequence[int]) -> GramBlock:
        n = tuple(n)
        if sum(n) > self.max_depth:
            raise DepthExceeded(f"weight {n} beyond depth bound {self.max_depth}")
        hit = self._blocks.get(n)
        if hit is None:
            words = words_of_weight(n)
            g = [[None] * len(words) for _ in words]
            for i, a in enumerate(words):
                for j in range(i, len(words)):
                    g[i][j] = g[j][i] = self.pairing(a, words[j])
            hit = self._blocks[n] = GramBlock(n, words, g)
        return hit

    # -- module action and form on arbitrary vectors ------------------------------

    def act(self, x: Element, vec: dict[Word, object]) -> dict[Word, object]:
        """x . (sum c_w F_w v)."""
        out: dict[Word, object] = {}
        alg = self.alg
        zero_k = alg.zero_weight
        for w, c in vec.items():
            prod: dict = {}
            for t, ct in x.terms.items():
                for key, cc in alg.mul_terms(t, (w, zero_k, ())).items():
                    prod[key] = prod[key] + ct * cc if key in prod else ct * cc
            for (f, k, e), cc in prod.items():
                if e or not cc:
                    continue
                # F_f K_k v = lambda_k F_f v
                val = c * cc * self.lam.value(self.ctx, k)
                old = out.get(f)
                out[f] = val if old is None else old + val
        return {w: c for w, c in out.items() if c}

    def form(self, u: dict[Word, object], w: dict[Word, object]):
        total = self.ctx.zero()
        for a, ca in u.items():
            na = word_weight(a, self.alg.rank)
            for b, cb in w.items():
                if word_weight(b, self.alg.rank) == na:
                    total = total + ca * cb * self.pairing(a, b)     # real scalars
        return total


def _point(ctx: ScalarContext):
    return isinstance(ctx, PointContext)


def shapovalov_gram(datum: RootDatum, lam: LambdaChar, eps: EpsChar, eta: EpsChar, n: Sequence[int],
                    ctx: ScalarContext | None = None, depth: int = 8) -> GramBlock:
    ctx = ctx or SymbolicContext(session_denominator(datum, lam))
    return VermaModule(QEA(datum, eps, eta, ctx), lam, depth).gram_block(n)


def evaluate_block(block: GramBlock, ctx: ScalarContext, point: PointContext):
    if ctx is point:
        return block.gram
    return [[point.from_symbolic(x) for x in row] for row in block.gram]


@dataclass
class NegativeWitness:
    weight: tuple[int, ...]
    vector: dict                      # word -> exact rational coefficient
    value: Fraction                   # w^T G w < 0 at the evaluation point


@dataclass
class UnitarizabilityVerdict:
    psd: bool
    depth: int
    v0: Fraction
    ranks: dict[tuple[int, ...], int] = field(default_factory=dict)
    witness: NegativeWitness | None = None

    @property
    def status(self) -> str:
        return "PSD_up_to_depth" if self.psd else "NegativeWitness"

    def height_ranks(self) -> list[int]:
        """Rank per height; after an early stop only the heights reached are listed."""
        top = self.depth if self.psd else max(sum(n) for n in self.ranks)
        out = [0] * (top + 1)
        for n, r in self.ranks.items():
            out[sum(n)] += r
        return out

    def total_rank(self) -> int:
        return sum(self.ranks.values())


def point_module(datum: RootDatum, lam: LambdaChar, eps: EpsChar, eta: EpsChar | None = None,
                 v0=Fraction(1, 2), depth: int = 8) -> VermaModule:
    ctx = PointContext(session_denominator(datum, lam), v0)
    eta = eta if eta is not None else EpsChar.plus(datum.rank)
    return VermaModule(QEA(datum, eps, eta, ctx), lam, depth)


def is_unitarizable_up_to(datum: RootDatum, lam: LambdaChar, eps: EpsChar, depth: int = 6,
                          v0=Fraction(1, 2), eta: EpsChar | None = None,
                          stop_at_negative: bool = True) -> UnitarizabilityVerdict:
    """Gram positivity on every weight of height <= depth, decided exactly at
    v = v0 (q = v0^D)."""
    if not lam.is_exact:
        raise ValueError("exact verdicts need a q-power lambda")
    mod = point_module(datum, lam, eps, eta, v0, depth)
    verdict = UnitarizabilityVerdict(True, depth, Fraction(v0))
    ctx = mod.ctx
    for n in weights_up_to(datum.rank, depth):
        block = mod.gram_block(n)
        inertia = symmetric_inertia(block.gram, ctx.zero(), ctx.one())
        verdict.ranks[n] = inertia.n_pos + inertia.n_neg
        if inertia.n_neg and verdict.witness is None:
            verdict.psd = False
            vec = {w: ctx.to_rational(c) for w, c in zip(block.basis, inertia.witness) if c}
            verdict.witness = NegativeWitness(n, vec, ctx.to_rational(inertia.witness_value))
            if stop_at_negative:
                break
    return verdict


def irreducible_dims(datum: RootDatum, lam: LambdaChar, eps: EpsChar, depth: int = 6,
                     v0=Fraction(1, 2), eta: EpsChar | None = None) -> dict[tuple[int, ...], int]:
    """rank of every Gram block = weight multiplicities of the simple quotient."""
    mod = point_module(datum, lam, eps, eta, v0, depth)
    return {n: mod.gram_block(n).rank() for n in weights_up_to(datum.rank, depth)}


def serre_radical_check(mod: VermaModule, n: Sequence[int]) -> bool:
    """Every Serre relator vector of weight n lies in the Gram kernel."""
    block = mod.gram_block(n)
    basis = mod.alg.serre_basis(tuple(n))
    index = {w: i for i, w in enumerate(block.basis)}
    zero = mod.ctx.zero()
    for row in basis.basis():
        for i in range(len(block.basis)):
            s = zero
            for w, c in row.items():
                s = s + block.gram[i][index[w]] * c
            if s:
                return False
    return True


# -- oracles -------------------------------------------------------------------

def sl2_shapovalov_oracle(ctx: ScalarContext, lam_alpha_exponent, k: int, eps=1, eta=1):
    """prod_{l=1}^k (q^l - q^-l)(eps q^{1-l} lam^2 - eta q^{l-1} lam^-2)/(q - q^-1)^2,
    where lam = lambda_alpha = q^{lam_alpha_exponent}."""
    q = ctx.qpow(1)
    qi = ctx.qpow(-1)
    lam2 = ctx.qpow(2 * Fraction(lam_alpha_exponent))
    lam2i = ctx.qpow(-2 * Fraction(lam_alpha_exponent))
    den = (q - qi) * (q - qi)
    out = ctx.one()
    for l in range(1, k + 1):
        out = out * (ctx.qpow(l) - ctx.qpow(-l)) * (ctx.const(eps) * ctx.qpow(1 - l) * lam2
                                                   - ctx.const(eta) * ctx.qpow(l - 1) * lam2i) / den
    return out


def highest_weight_from_lambda(datum: RootDatum, lam: LambdaChar) -> tuple[int, ...] | None:
    """m with lambda_{alpha_r}^4 = q_r^{2 m_r}, if every m_r is a nonnegative integer."""
    out = []
    for r in range(datum.rank):
        m = lam.alpha_power4(datum, r) / (2 * datum.d[r])
        if m.denominator != 1 or m < 0:
            return None
        out.append(int(m))
    return tuple(out)


def induced_character(datum: RootDatum, subset: Sequence[int], m: Sequence[int], depth: int) -> dict:
    """Weight multiplicities (by root coordinates of the F-weight) of
    U(u^-) (x) V, with V the simple module of highest weight m over the Levi
    part on ``subset`` and u^- spanned by negative roots outside that Levi.
    V is enumerated by Kostant's multiplicity formula for the Levi, u^- by
    partitions into the remaining positive roots."""
    subset = sorted(subset)
    roots = datum.positive_roots
    levi = [b for b in roots if all(b[r] == 0 for r in range(datum.rank) if r not in subset)]
    rest = [b for b in roots if b not in levi]
    vchar = _levi_character(datum, subset, levi, m, depth)
    out: dict = {}
    for n in weights_up_to(datum.rank, depth):
        total = 0
        for gamma, mult in vchar.items():
            diff = tuple(a - b for a, b in zip(n, gamma))
            if all(x >= 0 for x in diff):
                total += mult * _partitions(diff, rest)
        out[n] = total
    return out


def _partitions(target, roots) -> int:
    def count(t, i):
        if not any(t):
            return 1
        if i == len(roots):
            return 0
        total = 0
        while all(x >= 0 for x in t):
            total += count(t, i + 1)
            t = tuple(a - b for a, b in zip(t, roots[i]))
        return total
    return count(tuple(target), 0)


def _levi_character(datum, subset, levi_roots, m, depth) -> dict:
    """Kostant's multiplicity formula for the Levi factor, restricted to the
    weights mu = m - gamma (gamma in root coords, supported on ``subset``)."""
    weyl = datum.weyl_group(subset)
    rho = datum.rho
    out = {}
    for gamma in weights_up_to(datum.rank, depth):
        if any(gamma[r] for r in range(datum.rank) if r not in subset):
            continue
        mu = tuple(a - b for a, b in zip(m, datum.root_to_weight(gamma)))
        total = 0
        for w in weyl:
            # w(m + rho) - (mu + rho) must be a sum of Levi positive roots
            top = w.act(tuple(a + b for a, b in zip(m, rho)))
            diff_w = tuple(a - b - c for a, b, c in zip(top, mu, rho))
            coords = datum.weight_to_root(diff_w)
            if any(c.denominator != 1 or c < 0 for c in coords):
                continue
            sign = -1 if len(w.word) % 2 else 1
            total += sign * _partitions(tuple(int(c) for c in coords), levi_roots)
        if total:
            out[gamma] = total
    return out
