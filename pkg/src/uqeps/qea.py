"""The algebras U_q(g; eps, eta) in triangular normal form.

Elements are finite sums of terms ``F-word * K_mu * E-word``.  Words are
tuples of 0-based node indices; ``K_mu`` is a weight in fundamental
coordinates.  Nothing here knows about the Serre relations: products are
computed in the algebra with relations (K), (T), (C) only, which has the
F-word x K x E-word PBW basis.  Serre relations enter through
:func:`serre_component` and :meth:`QEA.reduce_mod_serre`, where equality is
decided weight by weight with linear algebra.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

from .linalg import EchelonBasis
from .root_data import EpsChar, LambdaChar, RootDatum, q_binomial
from .scalars import ScalarContext, SymbolicContext

Word = tuple[int, ...]
Key = tuple[Word, tuple[int, ...], Word]     # (F-word, K weight, E-word)


class ContextMismatch(ValueError):
    pass


class NotTorus(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


def word_weight(word: Sequence[int], rank: int) -> tuple[int, ...]:
    n = [0] * rank
    for a in word:
        n[a] += 1
    return tuple(n)


def words_of_weight(n: Sequence[int]) -> list[Word]:
    """All words with letter multiplicities n, in lexicographic order."""
    out: list[Word] = []
    n = list(n)
    total = sum(n)

    def rec(prefix: list[int]):
        if len(prefix) == total:
            out.append(tuple(prefix))
            return
        for a in range(len(n)):
            if n[a]:
                n[a] -= 1
                prefix.append(a)
                rec(prefix)
                prefix.pop()
                n[a] += 1

    rec([])
    return out


class QEA:
    """U_q(g; eps, eta) over a scalar context."""

    def __init__(self, datum: RootDatum, eps: EpsChar | None = None, eta: EpsChar | None = None,
                 ctx: ScalarContext | None = None):
        self.datum = datum
        self.rank = datum.rank
        self.eps = eps if eps is not None else EpsChar.plus(datum.rank)
        self.eta = eta if eta is not None else EpsChar.plus(datum.rank)
        if len(self.eps) != self.rank or len(self.eta) != self.rank:
            raise ValueError("eps/eta length must equal the rank")
        self.ctx = ctx if ctx is not None else SymbolicContext(datum.exponent_denominator())
        if self.ctx.D % 4:
            raise ValueError("exponent denominator must be a multiple of 4")
        self._half = self.ctx.D // 2
        self.zero_weight = (0,) * self.rank
        self._alpha = [datum.simple_root(r) for r in range(self.rank)]
        c = self.ctx
        self._qr = [c.vpow(c.D * datum.d[r]) for r in range(self.rank)]
        self._qr_inv = [c.vpow(-c.D * datum.d[r]) for r in range(self.rank)]
        inv_diff = [1 / (self._qr[r] - self._qr_inv[r]) for r in range(self.rank)]
        self._cplus = [c.const(self.eps[r]) * inv_diff[r] for r in range(self.rank)]
        self._cminus = [-c.const(self.eta[r]) * inv_diff[r] for r in range(self.rank)]
        self._k2 = [tuple(2 * x for x in self._alpha[r]) for r in range(self.rank)]
        self._km2 = [tuple(-2 * x for x in self._alpha[r]) for r in range(self.rank)]
        self._ef_cache: dict[tuple[Word, Word], dict[Key, object]] = {}
        self._serre_cache: dict[tuple[int, ...], EchelonBasis] = {}

    # -- identity --------------------------------------------------------------

    @property
    def signature(self):
        return (self.datum.name, self.eps.values, self.eta.values, self.ctx.D, repr(self.ctx))

    def same_context(self, other: "QEA") -> bool:
        return self is other or self.signature == other.signature

    def __repr__(self) -> str:
        return f"QEA({self.datum.name}, eps={self.eps}, eta={self.eta}, {self.ctx!r})"

    # -- scalar helpers --------------------------------------------------------

    def qr(self, r: int):
        return self._qr[r]

    def qr_inv(self, r: int):
        return self._qr_inv[r]

    def half_pair_vexp(self, mu: Sequence[int], n: Sequence[int]) -> int:
        """Exponent k with v^k = q^{(mu, sum n_r alpha_r)/2}."""
        d = self.datum.d
        return self._half * sum(d[r] * mu[r] * n[r] for r in range(self.rank) if mu[r] and n[r])

    def qhalf(self, mu, n):
        return self.ctx.vpow(self.half_pair_vexp(mu, n))

    # -- constructors ----------------------------------------------------------

    def element(self, terms: dict) -> "Element":
        return Element(self, {k: c for k, c in terms.items() if c})

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {((), self.zero_weight, ()): self.ctx.one()})

    def scalar(self, c) -> "Element":
        return self.one().scale(self.ctx.const(c) if not _is_field(c) else c)

    def E(self, r: int) -> "Element":
        return Element(self, {((), self.zero_weight, (r,)): self.ctx.one()})

    def F(self, r: int) -> "Element":
        return Element(self, {((r,), self.zero_weight, ()): self.ctx.one()})

    def K(self, mu: Sequence[int]) -> "Element":
        return Element(self, {((), tuple(mu), ()): self.ctx.one()})

    def term(self, f: Word = (), mu: Sequence[int] | None = None, e: Word = (), coeff=None) -> "Element":
        mu = self.zero_weight if mu is None else tuple(mu)
        coeff = self.ctx.one() if coeff is None else coeff
        return self.element({(tuple(f), mu, tuple(e)): coeff})

    def letter(self, letter) -> "Element":
        kind, arg = letter
        if kind == "E":
            return self.E(arg)
        if kind == "F":
            return self.F(arg)
        if kind == "K":
            return self.K(arg)
        raise ValueError(f"unknown generator {letter!r}")

    def word(self, letters: Iterable) -> "Element":
        """Product of generators, computed with the fast multiplication."""
        out = self.one()
        for letter in letters:
            out = out * self.letter(letter)
        return out

    # -- multiplication kernel -------------------------------------------------

    def _e1f(self, a: int, f: Word) -> dict[Key, object]:
        """E_a * F-word in normal form."""
        return self._ef((a,), f)

    def _ef(self, e: Word, f: Word) -> dict[Key, object]:
        """E-word * F-word in normal form (memoized)."""
        key = (e, f)
        hit = self._ef_cache.get(key)
        if hit is not None:
            return hit
        one = self.ctx.one()
        z = self.zero_weight
        if not e or not f:
            out = {(f, z, e): one}
        elif len(e) == 1:
            a = e[0]
            b, rest = f[0], f[1:]
            out = {}
            # E_a F_b rest = F_b (E_a rest) + delta_ab (eps K_{2a} - eta K_{-2a})/(q_a - q_a^-1) rest
            for (f2, k2, e2), c in self._ef((a,), rest).items():
                _acc(out, ((b,) + f2, k2, e2), c)
            if a == b:
                nrest = word_weight(rest, self.rank)
                nrest_neg = tuple(-x for x in nrest)
                for kk, cc in ((self._k2[a], self._cplus[a]), (self._km2[a], self._cminus[a])):
                    if cc:
                        # K_mu rest = q^{(mu, wt rest)/2} rest K_mu
                        _acc(out, (rest, kk, ()), cc * self.qhalf(kk, nrest_neg))
        else:
            head, a = e[:-1], e[-1]
            out = {}
            for (f1, k1, e1), c1 in self._ef((a,), f).items():
                for (f2, k2, e2), c2 in self._ef(head, f1).items():
                    # (f2 K2 e2) K1 e1: move e2 right past K1
                    coeff = c1 * c2
                    if e2 and any(k1):
                        coeff = coeff * self.ctx.vpow(-self.half_pair_vexp(k1, word_weight(e2, self.rank)))
                    _acc(out, (f2, _add(k2, k1), e2 + e1), coeff)
        out = {k: c for k, c in out.items() if c}
        self._ef_cache[key] = out
        return out

    def mul_terms(self, t1: Key, t2: Key) -> dict[Key, object]:
        f1, k1, e1 = t1
        f2, k2, e2 = t2
        out: dict[Key, object] = {}
        for (fp, kp, ep), c in self._ef(e1, f2).items():
            vexp = 0
            if fp and any(k1):
                vexp += self.half_pair_vexp(k1, [-x for x in word_weight(fp, self.rank)])
            if ep and any(k2):
                vexp -= self.half_pair_vexp(k2, word_weight(ep, self.rank))
            coeff = c if vexp == 0 else c * self.ctx.vpow(vexp)
            _acc(out, (f1 + fp, _add(_add(k1, kp), k2), ep + e2), coeff)
        return out

    def mul(self, x: "Element", y: "Element") -> "Element":
        self._check(x)
        self._check(y)
        out: dict[Key, object] = {}
        for t1, c1 in x.terms.items():
            for t2, c2 in y.terms.items():
                c12 = c1 * c2
                for t, c in self.mul_terms(t1, t2).items():
                    _acc(out, t, c12 * c)
        return self.element(out)

    def _check(self, x: "Element"):
        if not self.same_context(x.alg):
            raise ContextMismatch(f"element of {x.alg!r} used in {self!r}")

    # -- involutions and projections -----------------------------------------

    def star(self, x: "Element") -> "Element":
        """(f K e)^* = rev(e) K rev(f) with E and F swapped; coefficients are real."""
        out = {}
        for (f, k, e), c in x.terms.items():
            _acc(out, (e[::-1], k, f[::-1]), c.conj() if hasattr(c, "conj") else c)
        return self.element(out)

    def tau(self, x: "Element") -> "Element":
        return self.element({t: c for t, c in x.terms.items() if not t[0] and not t[2]})

    def chi_lambda(self, t: "Element", lam: LambdaChar):
        total = self.ctx.zero()
        for (f, k, e), c in t.terms.items():
            if f or e:
                raise NotTorus("chi_lambda needs a torus-only element")
            total = total + c * lam.value(self.ctx, k)
        return total

    # -- Serre relations ---------------------------------------------------------

    def serre_elements(self) -> list[tuple[tuple[int, ...], dict[Word, object]]]:
        """The Serre relators on one side, as (weight, {word: coeff})."""
        out = []
        a = self.datum.cartan
        for r in range(self.rank):
            for s in range(self.rank):
                if r == s:
                    continue
                m = 1 - a[r][s]
                vec: dict[Word, object] = {}
                for k in range(m + 1):
                    c = q_binomial(self.ctx, self.datum, m, k, r)
                    if k % 2:
                        c = -c
                    _acc(vec, (r,) * k + (s,) + (r,) * (m - k), c)
                n = [0] * self.rank
                n[r] += m
                n[s] += 1
                out.append((tuple(n), vec))
        return out

    def serre_basis(self, n: Sequence[int], bound: int | None = None) -> EchelonBasis:
        """Reduced echelon basis of the Serre ideal of U(n^-) (or U(n^+),
        the same coefficient vectors) in the weight with letter counts n."""
        n = tuple(n)
        if bound is not None and sum(n) > bound:
            raise BoundExceeded(f"weight {n} exceeds degree bound {bound}")
        hit = self._serre_cache.get(n)
        if hit is not None:
            return hit
        basis = EchelonBasis()
        for wt, rel in self.serre_elements():
            rest = tuple(x - y for x, y in zip(n, wt))
            if any(x < 0 for x in rest):
                continue
            for left in itertools.product(*(range(x + 1) for x in rest)):
                right = tuple(x - y for x, y in zip(rest, left))
                for u in words_of_weight(left):
                    for w in words_of_weight(right):
                        basis.add({u + word + w: c for word, c in rel.items()})
        self._serre_cache[n] = basis
        return basis

    def reduce_mod_serre(self, x: "Element") -> "Element":
        """Canonical representative modulo the two-sided ideal generated by
        the Serre relators: in each (K, F-weight, E-weight) block reduce the
        F-leg and then the E-leg against the echelon bases."""
        blocks: dict[tuple, dict[tuple[Word, Word], object]] = {}
        for (f, k, e), c in x.terms.items():
            key = (k, word_weight(f, self.rank), word_weight(e, self.rank))
            blocks.setdefault(key, {})[(f, e)] = c
        out: dict[Key, object] = {}
        for (k, nf, ne), block in blocks.items():
            bf = self.serre_basis(nf)
            be = self.serre_basis(ne)
            # reduce the F leg for every fixed E-word
            by_e: dict[Word, dict[Word, object]] = {}
            for (f, e), c in block.items():
                by_e.setdefault(e, {})[f] = c
            stage: dict[Word, dict[Word, object]] = {}
            for e, vec in by_e.items():
                red = bf.reduce(vec) if len(bf) else vec
                for f, c in red.items():
                    stage.setdefault(f, {})[e] = c
            for f, vec in stage.items():
                red = be.reduce(vec) if len(be) else vec
                for e, c in red.items():
                    if c:
                        out[(f, k, e)] = c
        return self.element(out)

    def equal_mod_serre(self, x: "Element", y: "Element") -> bool:
        return not self.reduce_mod_serre(x - y).terms

    # -- text -------------------------------------------------------------------

    def text(self, x: "Element") -> str:
        if not x.terms:
            return "0"
        parts = []
        for (f, k, e) in sorted(x.terms, key=lambda t: (t[2], t[1], t[0])):
            c = x.terms[(f, k, e)]
            parts.append(f"({self.ctx.text(c)})*{_term_text(f, k, e)}")
        return " + ".join(parts)


def _term_text(f: Word, k, e: Word) -> str:
    pieces = [f"F{a + 1}" for a in f]
    if any(k):
        pieces.append("K(" + ",".join(str(x) for x in k) + ")")
    pieces.extend(f"E{a + 1}" for a in e)
    return "*".join(pieces) if pieces else "1"


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _acc(d: dict, key, c):
    old = d.get(key)
    if old is None:
        d[key] = c
    else:
        new = old + c
        if new:
            d[key] = new
        else:
            del d[key]


def _is_field(c) -> bool:
    return not isinstance(c, (int, Fraction, str))


class Element:
    """A TriangularElement: a sum of terms F-word * K_mu * E-word."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: QEA, terms: dict):
        self.alg = alg
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, Element):
            self.alg._check(other)
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            _acc(out, t, c)
        return Element(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Element":
        if not c:
            return Element(self.alg, {})
        return Element(self.alg, {t: c * x for t, x in self.terms.items() if c * x})

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.alg.mul(self, other)
        return self.scale(self.alg.ctx.const(other) if not _is_field(other) else other)

    def __rmul__(self, other):
        return self.scale(self.alg.ctx.const(other) if not _is_field(other) else other)

    def __eq__(self, other):
        if not isinstance(other, Element):
            try:
                other = self.alg.scalar(other)
            except Exception:
                return NotImplemented
        return self.alg.same_context(other.alg) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def star(self) -> "Element":
        return self.alg.star(self)

    def tau(self) -> "Element":
        return self.alg.tau(self)

    def is_torus(self) -> bool:
        return all(not f and not e for f, _, e in self.terms)

    def coefficient(self, f: Word = (), mu=None, e: Word = ()):
        mu = self.alg.zero_weight if mu is None else tuple(mu)
        return self.terms.get((tuple(f), mu, tuple(e)), self.alg.ctx.zero())

    def __str__(self):
        return self.alg.text(self)

    def __repr__(self):
        return f"Element({self})"


# -- module-level API ---------------------------------------------------------

Letter = tuple


def parse_word(text: str, rank: int) -> list[Letter]:
    """Parse e.g. ``"E1 F2 K(1,-1) F1"`` (1-based node labels)."""
    out = []
    for tok in re.findall(r"[EF]\d+|K\([^)]*\)", text.replace("*", " ")):
        if tok[0] in "EF":
            r = int(tok[1:]) - 1
            if not 0 <= r < rank:
                raise ValueError(f"node {tok} out of range")
            out.append((tok[0], r))
        else:
            mu = tuple(int(x) for x in tok[2:-1].split(","))
            if len(mu) != rank:
                raise ValueError(f"weight {tok} has wrong length")
            out.append(("K", mu))
    return out


def _normal_key(word: tuple, rank: int) -> Key | None:
    """The term key if the word is already in F* K? E* shape, else None."""
    f, e = [], []
    k = None
    phase = 0
    for kind, arg in word:
        if kind == "F":
            if phase > 0:
                return None
            f.append(arg)
        elif kind == "K":
            if phase > 0:
                return None
            k = arg
            phase = 1
        else:
            phase = 2
            e.append(arg)
    return (tuple(f), tuple(k) if k is not None else (0,) * rank, tuple(e))


def straighten(alg: QEA, word: Sequence[Letter], rng: random.Random | None = None) -> Element:
    """Rewrite a word to normal form by local moves.

    This is the slow, independent route to the normal form: adjacent
    pairs E F, E K, K F and K K are rewritten one at a time, leftmost first,
    or at a random position when ``rng`` is given.
    """
    rank = alg.rank
    pending: dict[tuple, object] = {tuple(word): alg.ctx.one()}
    done: dict[Key, object] = {}
    while pending:
        w, c = pending.popitem()
        positions = []
        for i in range(len(w) - 1):
            (x, a), (y, b) = w[i], w[i + 1]
            if (x, y) in (("E", "F"), ("E", "K"), ("K", "F"), ("K", "K")):
                positions.append(i)
                if rng is None:
                    break
        if not positions:
            key = _normal_key(w, rank)
            assert key is not None
            _acc(done, key, c)
            continue
        i = positions[0] if rng is None else rng.choice(positions)
        (x, a), (y, b) = w[i], w[i + 1]
        pre, post = w[:i], w[i + 2:]
        if (x, y) == ("E", "F"):
            _acc(pending, pre + (("F", b), ("E", a)) + post, c)
            if a == b:
                for kk, cc in ((alg._k2[a], alg._cplus[a]), (alg._km2[a], alg._cminus[a])):
                    if cc:
                        _acc(pending, pre + (("K", kk),) + post, c * cc)
        elif (x, y) == ("E", "K"):
            # E_a K_mu = q^{-(mu, alpha_a)/2} K_mu E_a
            n = [0] * rank
            n[a] = 1
            _acc(pending, pre + (("K", b), ("E", a)) + post, c * alg.ctx.vpow(-alg.half_pair_vexp(b, n)))
        elif (x, y) == ("K", "F"):
            # K_mu F_b = q^{-(mu, alpha_b)/2} F_b K_mu
            n = [0] * rank
            n[b] = 1
            _acc(pending, pre + (("F", b), ("K", a)) + post, c * alg.ctx.vpow(-alg.half_pair_vexp(a, n)))
        else:
            _acc(pending, pre + (("K", _add(a, b)),) + post, c)
        pending = {k: v for k, v in pending.items() if v}
    return alg.element(done)


def serre_component(alg: QEA, side: str, n: Sequence[int], bound: int = 8) -> list[dict[Word, object]]:
    """Row-reduced basis of the Serre ideal in the word span of weight n
    (letter counts) on the given side (``"+"`` for E-words, ``"-"`` for F-words)."""
    if side not in "+-":
        raise ValueError("side must be '+' or '-'")
    return alg.serre_basis(n, bound).basis()


def pbw_dimension(alg: QEA, n: Sequence[int], bound: int = 8) -> int:
    """dim of U(n^-) in weight n: words minus Serre component."""
    return len(words_of_weight(n)) - len(alg.serre_basis(n, bound))


# -- rescaling isomorphism ----------------------------------------------------

class NotRepresentable(ValueError):
    pass


def exact_root(x: Fraction, n: int) -> Fraction:
    """The positive rational n-th root of x > 0, or NotRepresentable."""
    x = Fraction(x)
    if x <= 0:
        raise NotRepresentable(f"{x} has no positive real {n}-th root")
    p, pe = gmpy2.iroot(gmpy2.mpz(x.numerator), n)
    q, qe = gmpy2.iroot(gmpy2.mpz(x.denominator), n)
    if not (pe and qe):
        raise NotRepresentable(f"{x}^(1/{n}) is irrational")
    return Fraction(int(p), int(q))


class Rescaling:
    """The isomorphism U_q(g; eps, eta) -> U_q(g), X_r^pm -> a_r X_r^pm,
    K_mu -> b_mu K_mu with b_{alpha_r}^4 = eta_r/eps_r and a_r^2 = b_{alpha_r}^2 eps_r.

    Only the real case with positive eps_r, eta_r is handled; b is the
    positive character, evaluated lazily on the weights that occur."""

    def __init__(self, alg: QEA, b_alpha: Sequence | None = None):
        self.source = alg
        datum = alg.datum
        for r in range(alg.rank):
            if not (alg.eps[r] > 0 and alg.eta[r] > 0):
                raise NotRepresentable("rescaling needs eps_r > 0 and eta_r > 0 for every r")
        if b_alpha is None:
            b_alpha = [exact_root(alg.eta[r] / alg.eps[r], 4) for r in range(alg.rank)]
        self.b_alpha = [Fraction(b) for b in b_alpha]
        for r in range(alg.rank):
            if self.b_alpha[r] ** 4 != alg.eta[r] / alg.eps[r]:
                raise ValueError("supplied b_alpha does not satisfy b^4 = eta/eps")
        self.a = [exact_root(self.b_alpha[r] ** 2 * alg.eps[r], 2) for r in range(alg.rank)]
        self.target = QEA(datum, EpsChar.plus(alg.rank), EpsChar.plus(alg.rank), alg.ctx)
        self._b_cache: dict[tuple, Fraction] = {}

    def b(self, mu: Sequence[int]) -> Fraction:
        mu = tuple(mu)
        hit = self._b_cache.get(mu)
        if hit is None:
            coords = self.source.datum.weight_to_root(mu)
            den = math.lcm(*(c.denominator for c in coords))
            power = Fraction(1)
            for r, c in enumerate(coords):
                power *= self.b_alpha[r] ** int(c * den)
            hit = self._b_cache[mu] = exact_root(power, den) if den > 1 else power
        return hit

    def __call__(self, x: Element) -> Element:
        self.source._check(x)
        ctx = self.source.ctx
        out = {}
        for (f, k, e), c in x.terms.items():
            factor = self.b(k)
            for a in f + e:
                factor *= self.a[a]
            out[(f, k, e)] = c * ctx.const(factor)
        return self.target.element(out)


def rescale_to_standard(x: Element, b_alpha: Sequence | None = None) -> Element:
    return Rescaling(x.alg, b_alpha)(x)
