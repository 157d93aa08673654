"""JSON-in/JSON-out batch front end.

    python -m uqeps unitary < job.json
    python -m uqeps contract --job job.json
    python -m uqeps --golden tests/golden [--update]

Exit codes: 0 all checks pass, 1 a report contains failures, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import contraction
from .cogroupoid import CapExceeded, Cogroupoid, verify_cogroupoid_axioms
from .harish_chandra import (central_character, central_element_from, default_test_set,
                             orbit_candidates, support_of_ones)
from .qea import parse_word
from .quantum_space import (TruncatedModule, build_generators, expected_t_on_highest_weight,
                            modular_check, podles_parameters, verify_subalg_relations)
from .root_data import EpsChar, LambdaChar, UnsupportedType, build_root_datum, weights_up_to
from .scalars import SymbolicContext
from .verma import (VermaModule, irreducible_dims, is_unitarizable_up_to, serre_radical_check,
                    session_denominator)

DEFAULT_DEPTH_CAP = 10


class InputError(ValueError):
    pass


def _frac(x) -> Fraction:
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {x!r}") from exc


@dataclass
class JobSpec:
    series: str = "A"
    rank: int = 1
    v0: str = "1/2"
    eps: list[str] | str = "+"
    eta: list[str] | str = "+"
    lam: list[str] = field(default_factory=list)
    depth: int = 4
    options: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, data: dict) -> "JobSpec":
        if not isinstance(data, dict):
            raise InputError("job must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        extra = set(data) - known
        if extra:
            raise InputError(f"unknown job fields: {sorted(extra)}")
        job = cls(**data)
        job.validate()
        return job

    def to_dict(self) -> dict:
        return asdict(self)

    def validate(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise InputError("rank must be a positive integer")
        if not isinstance(self.depth, int) or self.depth < 0:
            raise InputError("depth must be a nonnegative integer")
        cap = int(os.environ.get("QEA_DEPTH_CAP", DEFAULT_DEPTH_CAP))
        if self.depth > cap:
            raise InputError(f"depth {self.depth} exceeds QEA_DEPTH_CAP={cap}")
        v0 = _frac(self.v0)
        if not 0 < v0 < 1:
            raise InputError("v0 must lie strictly between 0 and 1")
        for name in ("eps", "eta"):
            val = getattr(self, name)
            if val != "+" and (not isinstance(val, list) or len(val) != self.rank):
                raise InputError(f"{name} must be '+' or a list of {self.rank} rationals")
        if self.lam and len(self.lam) != self.rank:
            raise InputError(f"lam must have {self.rank} entries")
        if not isinstance(self.options, dict):
            raise InputError("options must be an object")

    # -- typed views ---------------------------------------------------------------

    def datum(self):
        try:
            return build_root_datum(self.series, self.rank)
        except UnsupportedType as exc:
            raise InputError(str(exc)) from exc

    def _char(self, val) -> EpsChar:
        if val == "+":
            return EpsChar.plus(self.rank)
        return EpsChar.of([_frac(x) for x in val])

    def eps_char(self) -> EpsChar:
        return self._char(self.eps)

    def eta_char(self) -> EpsChar:
        return self._char(self.eta)

    def lam_char(self) -> LambdaChar:
        if not self.lam:
            return LambdaChar.of([0] * self.rank)
        return LambdaChar.of([_frac(x) for x in self.lam])

    def v0_value(self) -> Fraction:
        return _frac(self.v0)

    def option(self, key, default=None):
        return self.options.get(key, default)


def _word_text(word) -> str:
    return "*".join(f"F{a + 1}" for a in word) or "1"


def _weight_key(n) -> str:
    return ",".join(str(x) for x in n)


# -- subcommands -------------------------------------------------------------------

def cmd_gram(job: JobSpec) -> tuple[dict, bool]:
    datum, lam = job.datum(), job.lam_char()
    ctx = SymbolicContext(session_denominator(datum, lam))
    mod = VermaModule(Cogroupoid(datum, ctx).alg(job.eps_char(), job.eta_char()), lam, job.depth)
    weights = [tuple(job.option("weight"))] if job.option("weight") else None
    if weights is None:
        weights = weights_up_to(datum.rank, job.depth)
    blocks = []
    ok = True
    for n in weights:
        if sum(n) > job.depth:
            raise InputError("weight beyond depth")
        b = mod.gram_block(n)
        serre_ok = serre_radical_check(mod, n)
        ok = ok and serre_ok
        blocks.append({"weight": list(n), "basis": [_word_text(w) for w in b.basis],
                       "gram": [[str(x) for x in row] for row in b.gram],
                       "rank": b.rank(), "serre_in_radical": serre_ok})
    return {"blocks": blocks, "D": ctx.D}, ok


def cmd_unitary(job: JobSpec) -> tuple[dict, bool]:
    v = is_unitarizable_up_to(job.datum(), job.lam_char(), job.eps_char(), job.depth,
                              job.v0_value(), job.eta_char())
    out = {"psd": v.psd, "ranks": v.height_ranks(), "status": v.status}
    if v.witness is not None:
        out["witness"] = {"weight": list(v.witness.weight), "value": str(v.witness.value),
                          "vector": {_word_text(w): str(c) for w, c in v.witness.vector.items()}}
    return out, True


def cmd_dims(job: JobSpec) -> tuple[dict, bool]:
    dims = irreducible_dims(job.datum(), job.lam_char(), job.eps_char(), job.depth,
                            job.v0_value(), job.eta_char())
    return {"ranks": {_weight_key(n): r for n, r in dims.items()},
            "total": sum(dims.values())}, True


def cmd_hc(job: JobSpec) -> tuple[dict, bool]:
    datum, lam, eps = job.datum(), job.lam_char(), job.eps_char()
    subset = support_of_ones(eps)
    cands = orbit_candidates(datum, lam, subset)
    exps = [e for c in cands for e in c.exponents] + list(lam.exponents)
    ctx = SymbolicContext(datum.exponent_denominator(exps))
    tests = [tuple(w) for w in job.option("test_set", [])] or default_test_set(datum)
    ref = {w: central_character(datum, lam, eps, w, ctx) for w in tests}
    rows, ok = [], True
    for c in cands:
        agree = all(central_character(datum, c, eps, w, ctx) == ref[w] for w in tests)
        ok = ok and agree
        rows.append({"lam": [str(e) for e in c.exponents], "agrees": agree})
    return {"subset": [r + 1 for r in subset],
            "characters": {_weight_key(w): str(ref[w]) for w in tests},
            "candidates": rows}, ok


def cmd_central(job: JobSpec) -> tuple[dict, bool]:
    datum = job.datum()
    omega = tuple(job.option("omega", datum.fundamental(0)))
    rpt = central_element_from(datum, omega, job.eps_char(), job.option("cap", 60))
    return {"element": str(rpt.element), "closure_dim": rpt.closure_dim, "central": rpt.central,
            "charmod_scalar": None if rpt.charmod_scalar is None else str(rpt.charmod_scalar),
            "failures": rpt.failures}, rpt.ok


def cmd_adjoint_closure(job: JobSpec) -> tuple[dict, bool]:
    datum = job.datum()
    ctx = SymbolicContext(datum.exponent_denominator())
    cg = Cogroupoid(datum, ctx)
    alg = cg.alg(job.eps_char(), job.eta_char())
    text = job.option("element")
    if not text:
        raise InputError("adjoint-closure needs options.element, e.g. \"K(-4)\"")
    try:
        x = alg.word(parse_word(text, datum.rank))
    except (ValueError, KeyError) as exc:
        raise InputError(str(exc)) from exc
    cap = job.option("cap", 30)
    try:
        basis = cg.locally_finite_closure(x, cap)
    except CapExceeded:
        return {"stabilized": False, "cap": cap}, True
    return {"stabilized": True, "dim": len(basis)}, True


def cmd_homspace(job: JobSpec) -> tuple[dict, bool]:
    datum = job.datum()
    module = TruncatedModule(datum, job.lam_char(), job.eps_char(), job.depth)
    gens = build_generators(module)
    rel = verify_subalg_relations(module, gens)
    failures = list(rel.failures)
    podles = []
    for r in range(datum.rank):
        p = podles_parameters(module, r, gens)
        if p.t != expected_t_on_highest_weight(module, r):
            failures.append(f"t_{r + 1} differs from its highest weight value")
        podles.append({"r": r + 1, "w": str(p.w), "t": str(p.t), "regime": p.description})
    out = {"finite": module.finite, "dimension": len(module.basis), "checked": len(rel.checked),
           "podles": podles}
    if module.finite:
        mc = modular_check(gens, job.option("pairs", 20), seed=job.option("seed", 0))
        failures += mc.failures
        out["invariant_state_checks"] = len(mc.checked)
    out["failures"] = failures
    return out, not failures


def cmd_axioms(job: JobSpec) -> tuple[dict, bool]:
    datum = job.datum()
    rank = datum.rank
    default = [str(Fraction(k + 2, 3)) for k in range(rank)]
    mu = job._char(job.option("mu", default))
    nu = job._char(job.option("nu", [str(Fraction(-1, k + 2)) for k in range(rank)]))
    eps = job.eps_char() if job.eps != "+" else job._char([str(Fraction(1, 2))] * rank)
    rpt = verify_cogroupoid_axioms(datum, eps, mu, nu, job.eta_char(),
                                   degree=job.option("degree", 5), samples=job.option("samples", 200),
                                   seed=job.option("seed", 0))
    return {"checked": rpt.checked, "failures": rpt.failures}, rpt.ok


def cmd_contract(job: JobSpec) -> tuple[dict, bool]:
    if job.series.upper() != "A":
        raise InputError("contract supports type A only")
    eps = [1] * job.rank if job.eps == "+" else [_frac(x) for x in job.eps]
    row = contraction.contraction_row(job.rank, eps)
    pres = contraction.verify_presentation(job.rank, eps)
    failures = list(pres.failures)
    if not row.ok:
        failures.append("structure or signature check failed")
    return {"dim": row.dim, "jacobi": row.jacobi, "star": row.star_ok,
            "signature": list(row.signature), "form": row.form,
            "presentation_failures": pres.failures, "failures": failures}, not failures


COMMANDS = {
    "gram": cmd_gram,
    "unitary": cmd_unitary,
    "dims": cmd_dims,
    "hc": cmd_hc,
    "central": cmd_central,
    "adjoint-closure": cmd_adjoint_closure,
    "homspace": cmd_homspace,
    "axioms": cmd_axioms,
    "contract": cmd_contract,
}


def run(command: str, data: dict) -> tuple[dict, int]:
    """Run one job; returns the report and the exit code."""
    if command not in COMMANDS:
        return {"error": f"unknown subcommand {command!r}"}, 2
    try:
        job = JobSpec.parse(data)
        report, ok = COMMANDS[command](job)
    except (InputError, TypeError) as exc:
        return {"error": str(exc)}, 2
    return report, 0 if ok else 1


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True) + "\n"


def run_golden(directory: Path, update: bool) -> int:
    """Each ``name.json`` holds {"command": ..., "job": {...}}; the expected
    output sits next to it in ``name.out``."""
    status = 0
    for path in sorted(directory.glob("*.json")):
        entry = json.loads(path.read_text())
        report, _ = run(entry["command"], entry.get("job", {}))
        text = dumps(report)
        expected = path.with_suffix(".out")
        if update:
            expected.write_text(text)
            print(f"updated {expected.name}")
        elif not expected.exists() or expected.read_text() != text:
            print(f"MISMATCH {path.name}")
            status = 1
        else:
            print(f"ok {path.name}")
    return status


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="uqeps", description=__doc__.splitlines()[0])
    parser.add_argument("command", nargs="?", choices=sorted(COMMANDS))
    parser.add_argument("--job", type=Path, help="job JSON file (default: stdin)")
    parser.add_argument("--golden", type=Path, help="run every job in a golden directory")
    parser.add_argument("--update", action="store_true", help="rewrite golden outputs")
    args = parser.parse_args(argv)
    if args.golden:
        return run_golden(args.golden, args.update)
    if not args.command:
        parser.error("a subcommand is required")
    try:
        raw = args.job.read_text() if args.job else sys.stdin.read()
        data = json.loads(raw) if raw.strip() else {}
    except (OSError, json.JSONDecodeError) as exc:
        sys.stdout.write(dumps({"error": f"malformed job: {exc}"}))
        return 2
    report, code = run(args.command, data)
    sys.stdout.write(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
