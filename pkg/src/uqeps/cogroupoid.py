"""Coproducts between the algebras U(eps, eta), counit, antipode, the right
adjoint action and locally finite closures.

The family {U(eps, eta)} is a cogroupoid: for every middle index mu there is
a coproduct U(eps, eta) -> U(eps, mu) (x) U(mu, eta).  All maps below are
computed exactly in the Serre-free algebras (where they are already well
defined); only the closure computation works modulo Serre.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .linalg import EchelonBasis
from .qea import QEA, Element, Key, _acc
from .root_data import EpsChar, RootDatum
from .scalars import ScalarContext, SymbolicContext

_ALGEBRAS: dict[tuple, QEA] = {}


def algebra(datum: RootDatum, eps: EpsChar, eta: EpsChar, ctx: ScalarContext) -> QEA:
    """Shared QEA instances, so multiplication caches are reused."""
    key = (datum, eps, eta, id(ctx))
    alg = _ALGEBRAS.get(key)
    if alg is None or alg.ctx is not ctx:
        alg = _ALGEBRAS[key] = QEA(datum, eps, eta, ctx)
    return alg


class Tensor:
    """An element of U_1 (x) ... (x) U_n with legs in normal form."""

    __slots__ = ("algs", "terms")

    def __init__(self, algs: tuple[QEA, ...], terms: dict[tuple[Key, ...], object]):
        self.algs = algs
        self.terms = terms

    def __add__(self, other: "Tensor") -> "Tensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return Tensor(self.algs, out)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + other.scale(-self.algs[0].ctx.one())

    def scale(self, c) -> "Tensor":
        return Tensor(self.algs, {k: c * x for k, x in self.terms.items() if c * x})

    def __mul__(self, other: "Tensor") -> "Tensor":
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                legs = [alg.mul_terms(a, b) for alg, a, b in zip(self.algs, k1, k2)]
                partial = {(): c1 * c2}
                for leg in legs:
                    nxt = {}
                    for pk, pc in partial.items():
                        for lk, lc in leg.items():
                            _acc(nxt, pk + (lk,), pc * lc)
                    partial = nxt
                for k, c in partial.items():
                    _acc(out, k, c)
        return Tensor(self.algs, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda ks: tuple((t[2], t[1], t[0]) for t in ks)):
            legs = " (x) ".join(str(alg.term(*k)).split("*", 1)[1] for alg, k in zip(self.algs, key))
            parts.append(f"({self.algs[0].ctx.text(self.terms[key])})*[{legs}]")
        return " + ".join(parts)

    def __str__(self):
        return self.text()


class Cogroupoid:
    """The maps between the algebras U(eps, eta) of one root datum."""

    def __init__(self, datum: RootDatum, ctx: ScalarContext | None = None):
        self.datum = datum
        self.ctx = ctx if ctx is not None else SymbolicContext(datum.exponent_denominator())
        self._delta_cache: dict[tuple, Tensor] = {}

    def alg(self, eps: EpsChar, eta: EpsChar) -> QEA:
        return algebra(self.datum, eps, eta, self.ctx)

    # -- coproduct ------------------------------------------------------------

    def _delta_term(self, src: QEA, mid: EpsChar, key: Key) -> Tensor:
        ck = (src.eps, src.eta, mid, key)
        hit = self._delta_cache.get(ck)
        if hit is not None:
            return hit
        left, right = self.alg(src.eps, mid), self.alg(mid, src.eta)
        algs = (left, right)
        one = self.ctx.one()
        z = src.zero_weight
        f, k, e = key
        out = Tensor(algs, {(((), k, ()), ((), k, ())): one})
        for b in reversed(f):
            a_b = src.datum.simple_root(b)
            na = tuple(-x for x in a_b)
            gen = Tensor(algs, {(((b,), z, ()), ((), a_b, ())): one,
                                (((), na, ()), ((b,), z, ())): one})
            out = gen * out
        for a in e:
            a_a = src.datum.simple_root(a)
            na = tuple(-x for x in a_a)
            gen = Tensor(algs, {(((), z, (a,)), ((), a_a, ())): one,
                                (((), na, ()), ((), z, (a,))): one})
            out = out * gen
        self._delta_cache[ck] = out
        return out

    def coproduct(self, x: Element, mid: EpsChar | None = None) -> Tensor:
        """Delta^mid: U(eps, eta) -> U(eps, mid) (x) U(mid, eta); mid defaults to eta."""
        src = x.alg
        mid = src.eta if mid is None else mid
        algs = (self.alg(src.eps, mid), self.alg(mid, src.eta))
        out = Tensor(algs, {})
        acc: dict = {}
        for key, c in x.terms.items():
            for k, cc in self._delta_term(src, mid, key).terms.items():
                _acc(acc, k, c * cc)
        out.terms = acc
        return out

    def counit(self, x: Element):
        if x.alg.eps != x.alg.eta:
            raise ValueError("counit is only defined on U(eps, eps)")
        total = self.ctx.zero()
        for (f, k, e), c in x.terms.items():
            if not f and not e:
                total = total + c
        return total

    def antipode(self, x: Element) -> Element:
        """S: U(eps, eta) -> U(eta, eps), anti-multiplicative with
        S(E_r) = -q_r E_r, S(F_r) = -q_r^{-1} F_r, S(K_mu) = K_{-mu}."""
        src = x.alg
        tgt = self.alg(src.eta, src.eps)
        out = tgt.zero()
        for (f, k, e), c in x.terms.items():
            coeff = c
            for a in e:
                coeff = -coeff * src.qr(a)
            for b in f:
                coeff = -coeff * src.qr_inv(b)
            # S(f K e) = S(e) S(K) S(f) = rev(e) K_{-mu} rev(f), which needs reordering
            img = tgt.term((), None, e[::-1]) * tgt.K(tuple(-m for m in k)) * tgt.term(f[::-1], None, ())
            out = out + img.scale(coeff)
        return out

    # -- adjoint action -------------------------------------------------------

    def adjoint_action(self, x: Element, h: Element) -> Element:
        """x <| h = S(h_(1)) x h_(2) for x in U(eps, eta), h in U(eta, eta)."""
        alg = x.alg
        if h.alg.eps != alg.eta or h.alg.eta != alg.eta:
            raise ValueError("h must lie in U(eta, eta) for x in U(eps, eta)")
        delta = self.coproduct(h, alg.eps)          # U(eta, eps) (x) U(eps, eta)
        left_alg = delta.algs[0]
        out = alg.zero()
        for (k1, k2), c in delta.terms.items():
            s = self.antipode(left_alg.term(*k1))
            out = out + (s * x * alg.term(*k2)).scale(c)
        return out

    def generators(self, alg: QEA) -> list[tuple[str, Element]]:
        """E_r, F_r, K_{omega_r}^{+-1} of the acting algebra U(eta, eta)."""
        gens = []
        for r in range(alg.rank):
            gens.append((f"E{r + 1}", alg.E(r)))
            gens.append((f"F{r + 1}", alg.F(r)))
        for r in range(alg.rank):
            w = self.datum.fundamental(r)
            gens.append((f"K{r + 1}", alg.K(w)))
            gens.append((f"K{r + 1}^-1", alg.K(tuple(-m for m in w))))
        return gens

    def locally_finite_closure(self, x: Element, cap: int = 60) -> list[Element]:
        """Basis of x <| U(g) modulo Serre; raises CapExceeded past ``cap``."""
        alg = x.alg
        acting = self.alg(alg.eta, alg.eta)
        gens = [g for _, g in self.generators(acting)]
        basis = EchelonBasis()
        frontier = []
        start = alg.reduce_mod_serre(x)
        if start and basis.add(dict(start.terms)):
            frontier.append(start)
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    img = alg.reduce_mod_serre(self.adjoint_action(y, g))
                    if img and basis.add(dict(img.terms)):
                        nxt.append(img)
                        if len(basis) > cap:
                            raise CapExceeded(f"closure dimension exceeds cap {cap}")
            frontier = nxt
        return [alg.element(dict(row)) for row in basis.basis()]

    # -- axioms -------------------------------------------------------------------

    def apply_left(self, t: Tensor, fn: Callable[[Element], object]):
        return self._apply(t, 0, fn)

    def _apply(self, t: Tensor, leg: int, fn):
        """Apply a map to one leg; the map may return a Tensor or an Element."""
        out: dict = {}
        algs = None
        for key, c in t.terms.items():
            img = fn(t.algs[leg].term(*key[leg]))
            if isinstance(img, Tensor):
                algs_img, parts = img.algs, img.terms.items()
            else:
                algs_img, parts = (img.alg,), (((k,), v) for k, v in img.terms.items())
            algs = t.algs[:leg] + algs_img + t.algs[leg + 1:]
            for ik, ic in parts:
                _acc(out, key[:leg] + ik + key[leg + 1:], c * ic)
        return Tensor(algs or t.algs, out)

    def multiply_legs(self, t: Tensor, alg: QEA) -> Element:
        out = alg.zero()
        for (k1, k2), c in t.terms.items():
            out = out + (alg.term(*k1) * alg.term(*k2)).scale(c)
        return out

    def verify_axioms(self, x: Element, mu: EpsChar, nu: EpsChar) -> list[str]:
        """Check coassociativity and counit laws for x in U(eps, eta) and the
        antipode laws for the element with the same terms in U(eps, eps)."""
        failures = []
        alg = x.alg
        eps, eta = alg.eps, alg.eta
        lhs = self._apply(self.coproduct(x, nu), 1, lambda y: self.coproduct(y, mu))
        rhs = self._apply(self.coproduct(x, mu), 0, lambda y: self.coproduct(y, nu))
        if lhs.terms != rhs.terms:
            failures.append(f"coassociativity: {x}")
        if self._counit_leg(self.coproduct(x, eps), 0) != x or self._counit_leg(self.coproduct(x, eta), 1) != x:
            failures.append(f"counit: {x}")
        h = self.alg(eps, eps).element(dict(x.terms))
        d = self.coproduct(h, eta)                  # U(eps, eta) (x) U(eta, eps)
        target_left = self.alg(eta, eps)
        target_right = self.alg(eps, eta)
        lhs = self.multiply_legs(self._apply(d, 0, self.antipode), target_left)
        rhs = self.multiply_legs(self._apply(d, 1, self.antipode), target_right)
        cu = self.counit(h)
        if lhs != target_left.one().scale(cu):
            failures.append(f"antipode S(h1)h2: {x}")
        if rhs != target_right.one().scale(cu):
            failures.append(f"antipode h1S(h2): {x}")
        return failures

    def _counit_leg(self, t: Tensor, leg: int) -> Element:
        """Apply the counit to one leg of a two-leg tensor."""
        keep = t.algs[1 - leg]
        out: dict = {}
        for key, c in t.terms.items():
            f, k, e = key[leg]
            if not f and not e:
                _acc(out, key[1 - leg], c)
        return keep.element(out)


class CapExceeded(RuntimeError):
    pass


@dataclass
class AxiomReport:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def random_word(rng: random.Random, rank: int, max_degree: int, weights: Sequence | None = None) -> list:
    """A random word in E_r, F_r and K_{+-omega_r} of degree at most max_degree."""
    letters: list = []
    for r in range(rank):
        w = tuple(int(i == r) for i in range(rank))
        letters += [("E", r), ("F", r), ("K", w), ("K", tuple(-x for x in w))]
    return [rng.choice(letters) for _ in range(rng.randint(0, max_degree))]


def verify_cogroupoid_axioms(datum: RootDatum, eps: EpsChar, mu: EpsChar, nu: EpsChar, eta: EpsChar,
                             degree: int = 5, samples: int = 200, seed: int = 0,
                             ctx: ScalarContext | None = None) -> AxiomReport:
    """All generators plus ``samples`` random words of degree <= ``degree``."""
    cg = Cogroupoid(datum, ctx)
    alg = cg.alg(eps, eta)
    rng = random.Random(seed)
    report = AxiomReport()
    elements = [alg.one()] + [g for _, g in cg.generators(alg)]
    elements += [alg.word(random_word(rng, datum.rank, degree)) for _ in range(samples)]
    for x in elements:
        report.failures.extend(cg.verify_axioms(x, mu, nu))
        report.checked += 1
    return report
