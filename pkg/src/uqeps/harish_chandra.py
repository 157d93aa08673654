"""Central characters of U(eps, +), their W_S-orbit candidates, and central
elements obtained by projecting K_omega^{-4} <| U_q(g) onto its invariants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cogroupoid import CapExceeded, Cogroupoid
from .linalg import kernel
from .qea import QEA, Element
from .root_data import EpsChar, LambdaChar, RootDatum, eps_value, weights_up_to
from .scalars import ScalarContext, SymbolicContext


def _ctx_for(datum: RootDatum, *lams: LambdaChar) -> SymbolicContext:
    exps = [e for lam in lams for e in lam.exponents]
    return SymbolicContext(datum.exponent_denominator(exps))


def _root_coords(datum: RootDatum, mu) -> tuple[int, ...]:
    coords = datum.weight_to_root(mu)
    assert all(c.denominator == 1 for c in coords), mu
    return tuple(int(c) for c in coords)


def central_character(datum: RootDatum, lam: LambdaChar, eps: EpsChar, omega: Sequence[int],
                      ctx: ScalarContext | None = None):
    """sum over the orbit points mu = w omega of
    eps_{omega - mu} q^{-2(mu, rho)} lambda_{-4 mu}."""
    ctx = ctx or _ctx_for(datum, lam)
    omega = tuple(omega)
    if any(x < 0 for x in omega):
        raise ValueError("omega must be dominant")
    total = ctx.zero()
    for wo in weyl_orbit(datum, omega):
        coeff = eps_value(eps, _root_coords(datum, [a - b for a, b in zip(omega, wo)]))
        if not coeff:
            continue
        term = ctx.qpow(-2 * datum.pair(wo, datum.rho)) * lam.value(ctx, [-4 * x for x in wo])
        total = total + ctx.const(coeff) * term
    return total


def weyl_orbit(datum: RootDatum, mu: Sequence[int]) -> list[tuple[int, ...]]:
    """Distinct points w mu, in first-seen order over the enumerated group."""
    seen: dict[tuple[int, ...], None] = {}
    for w in datum.weyl_group():
        seen.setdefault(w.act(tuple(mu)), None)
    return list(seen)


def default_test_set(datum: RootDatum) -> list[tuple[int, ...]]:
    """fundamental weights, rho, and rho + omega_r."""
    out = [datum.fundamental(r) for r in range(datum.rank)]
    out.append(datum.rho)
    out += [tuple(1 + int(i == r) for i in range(datum.rank)) for r in range(datum.rank)]
    return out


def same_central_character(datum: RootDatum, lam: LambdaChar, lam2: LambdaChar, eps: EpsChar,
                           test_set: Sequence | None = None) -> bool:
    ctx = _ctx_for(datum, lam, lam2)
    for omega in test_set or default_test_set(datum):
        if central_character(datum, lam, eps, omega, ctx) != central_character(datum, lam2, eps, omega, ctx):
            return False
    return True


def orbit_candidates(datum: RootDatum, lam: LambdaChar, subset: Sequence[int]) -> list[LambdaChar]:
    """For w in W_S, the lambda' with q^{-2(omega,rho)} lambda'_{-4 omega} =
    q^{-2(w omega,rho)} lambda_{-4 w omega} for every omega, i.e.
    e'(omega) = e(w omega) + ((w omega, rho) - (omega, rho))/2."""
    out: list[LambdaChar] = []
    seen = set()
    for w in datum.weyl_group(subset):
        exps = []
        for r in range(datum.rank):
            om = datum.fundamental(r)
            wo = w.act(om)
            exps.append(lam.exponent(wo) + (datum.pair(wo, datum.rho) - datum.pair(om, datum.rho)) / 2)
        cand = LambdaChar(tuple(exps))
        if cand.exponents not in seen:
            seen.add(cand.exponents)
            out.append(cand)
    return out


def support_of_ones(eps: EpsChar) -> list[int]:
    return [r for r in range(len(eps)) if eps[r] == 1]


# -- weight multiplicities of finite-dimensional modules --------------------------

def weight_multiplicities(datum: RootDatum, omega: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Dominant weights nu of V_omega (fundamental coords) with multiplicities,
    by Kostant's multiplicity formula."""
    omega = tuple(omega)
    weyl = datum.weyl_group()
    roots = datum.positive_roots
    lowest = min((w.act(omega) for w in weyl), key=lambda mu: sum(_root_coords_rational(datum, mu)))
    depth = sum(int(c) for c in datum.weight_to_root([a - b for a, b in zip(omega, lowest)]))
    rho = datum.rho
    top = [w.act(tuple(a + b for a, b in zip(omega, rho))) for w in weyl]
    out = {}
    for gamma in weights_up_to(datum.rank, depth):
        nu = tuple(a - b for a, b in zip(omega, datum.root_to_weight(gamma)))
        if any(x < 0 for x in nu):
            continue
        total = 0
        for w, t in zip(weyl, top):
            diff = datum.weight_to_root([a - b - c for a, b, c in zip(t, nu, rho)])
            if any(c.denominator != 1 or c < 0 for c in diff):
                continue
            total += (-1) ** len(w.word) * datum.kostant_partition_count(tuple(int(c) for c in diff))
        if total:
            out[nu] = total
    return out


def _root_coords_rational(datum, mu):
    return datum.weight_to_root(mu)


def charmod_torus_part(alg: QEA, omega: Sequence[int]) -> Element:
    """sum_{nu dominant, omega - nu in Q^+} dim (V_omega)_nu
    sum_{mu in W nu} eps_{omega - mu} q^{-2(mu, rho)} K_{-4 mu}.

    Every weight of V_omega is counted once, so the inner sum runs over the
    orbit rather than over W (the two differ by |Stab(nu)|, which is not
    constant in nu)."""
    datum, ctx = alg.datum, alg.ctx
    out = alg.zero()
    for nu, mult in weight_multiplicities(datum, omega).items():
        for wn in weyl_orbit(datum, nu):
            coeff = eps_value(alg.eps, _root_coords(datum, [a - b for a, b in zip(omega, wn)]))
            if coeff:
                c = ctx.const(coeff * mult) * ctx.qpow(-2 * datum.pair(wn, datum.rho))
                out = out + alg.K([-4 * x for x in wn]).scale(c)
    return out


# -- central elements -----------------------------------------------------------------

class NotOneDimensional(RuntimeError):
    pass


@dataclass
class CentralElementReport:
    element: Element
    closure_dim: int
    central: bool
    charmod_scalar: object | None          # c with tau(z) = c * (character sum), None if no match
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.central and self.charmod_scalar is not None and not self.failures


def central_element_from(datum: RootDatum, omega: Sequence[int], eps: EpsChar, cap: int = 60,
                         ctx: ScalarContext | None = None) -> CentralElementReport:
    """The invariant part of K_omega^{-4} <| U_q(g) in U(eps, +), normalized
    so the K_{-4 omega} coefficient is 1, with centrality and torus checks."""
    ctx = ctx or SymbolicContext(datum.exponent_denominator())
    cg = Cogroupoid(datum, ctx)
    plus = EpsChar.plus(datum.rank)
    alg = cg.alg(eps, plus)
    acting = cg.alg(plus, plus)
    seed = alg.K([-4 * x for x in omega])
    basis = cg.locally_finite_closure(seed, cap)
    # invariance: x <| E_r = 0, x <| F_r = 0, x <| K = x (mod Serre)
    rows_by_key: dict = {}
    ncols = len(basis)
    for name, g in cg.generators(acting):
        for i, b in enumerate(basis):
            img = cg.adjoint_action(b, g)
            if name.startswith("K"):
                img = img - b
            img = alg.reduce_mod_serre(img)
            for key, c in img.terms.items():
                rows_by_key.setdefault((name, key), [ctx.zero()] * ncols)[i] = c
    matrix = list(rows_by_key.values())
    ker = kernel(matrix, ncols, ctx.zero(), ctx.one())
    if len(ker) != 1:
        raise NotOneDimensional(f"invariant subspace has dimension {len(ker)}")
    z = alg.zero()
    for c, b in zip(ker[0], basis):
        if c:
            z = z + b.scale(c)
    lead = z.coefficient((), seed_key(seed), ())
    if not lead:
        raise NotOneDimensional("invariant element has no K_{-4 omega} component")
    z = alg.reduce_mod_serre(z.scale(1 / lead))
    failures = []
    central = True
    for r in range(datum.rank):
        for g in (alg.E(r), alg.F(r), alg.K(datum.fundamental(r))):
            if not alg.equal_mod_serre(z * g, g * z):
                central = False
                failures.append(f"does not commute with {g}")
    tz = alg.tau(z)
    ref = charmod_torus_part(alg, omega)
    ref_lead = ref.coefficient((), seed_key(seed), ())
    scalar = None
    if ref_lead:
        c = lead_of(tz, seed) / ref_lead
        if tz == ref.scale(c):
            scalar = c
    if scalar is None:
        failures.append("torus part does not match the weighted Weyl sum")
    return CentralElementReport(z, len(basis), central, scalar, failures)


def seed_key(seed: Element):
    (key,) = seed.terms
    return key[1]


def lead_of(x: Element, seed: Element):
    return x.coefficient((), seed_key(seed), ())
