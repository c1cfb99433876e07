"""Command line front end: ``torres <command> --job job.json``.

Exit status is 0 on success (a negative verdict is still a success), 1 on
malformed input and 2 when the input violates a hypothesis of the theory.
Exact rationals are written as ``"p/q"`` strings.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Optional

import jsonschema

from . import lattice, polytopes
from .coxring import ParseError, Polynomial, parse
from .differentials import JacobianError, toric_jacobian
from .lattice import DegreeClass, Fan, FanError, IncompleteFanError
from .numeric import NumericError, SamplerConfig, residue_integral
from .polytopes import UnboundedPolytopeError
from .residue import (PreconditionError, check_condition3, critical_quotient_report,
                      is_nondegenerate, reduced_sequence, toric_residue)

COMMANDS = ("info", "jacobian", "residue", "check", "nondeg", "volume", "numeric")
JACOBIAN_REF = "@jacobian"


class JobError(ValueError):
    """Malformed job document (exit status 1)."""


@dataclass
class Job:
    fan: Fan
    names: List[str]
    raw: dict
    polynomials: Dict[str, Polynomial]

    @property
    def beta(self) -> DegreeClass:
        if "beta" not in self.raw:
            raise JobError("field 'beta' is required for this command")
        a = self.raw["beta"]
        if len(a) != self.fan.nrays:
            raise JobError(f"field 'beta' has {len(a)} entries, fan has {self.fan.nrays} rays")
        return lattice.degree_of(self.fan, a)

    def poly(self, field: str) -> Polynomial:
        if field not in self.raw:
            raise JobError(f"field '{field}' is required for this command")
        return self.lookup(self.raw[field], field)

    def lookup(self, name: str, where: str) -> Polynomial:
        if name not in self.polynomials:
            raise JobError(f"{where}: polynomial {name!r} is not defined in 'polynomials'")
        return self.polynomials[name]

    def f_sequence(self) -> List[Polynomial]:
        if "f_sequence" not in self.raw:
            raise JobError("field 'f_sequence' is required for this command")
        entry = self.raw["f_sequence"]
        if isinstance(entry, dict):
            f = self.lookup(entry["toric_derivatives_of"], "f_sequence.toric_derivatives_of")
            return reduced_sequence(self.fan, f)
        return [self.lookup(name, f"f_sequence[{k}]") for k, name in enumerate(entry)]


def _schema():
    return json.loads(resources.files("torres").joinpath("job.schema.json").read_text())


def load_job(path: str) -> Job:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise JobError(f"cannot read job file: {exc}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    errors = sorted(jsonschema.Draft202012Validator(_schema()).iter_errors(raw), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        where = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in e.path).lstrip(".") or "<root>"
        raise JobError(f"{path}: field {where}: {e.message}")
    fan_doc = raw["fan"]
    names = fan_doc["variable_names"]
    if len(names) != len(fan_doc["rays"]):
        raise JobError(f"fan.variable_names has {len(names)} names for {len(fan_doc['rays'])} rays")
    try:
        fan = lattice.build_fan(fan_doc["rays"], fan_doc["max_cones"])
    except FanError as exc:
        raise JobError(f"fan: {exc}") from None
    polys = {}
    for name, text in raw.get("polynomials", {}).items():
        try:
            polys[name] = parse(text, names)
        except ParseError as exc:
            raise JobError(f"polynomials.{name}: {exc}") from None
    return Job(fan, names, raw, polys)


def q(x) -> str:
    return str(Fraction(x))


def degree_json(d: DegreeClass) -> dict:
    out = {"free": list(d.free), "representative": list(d.representative)}
    if d.torsion:
        out["torsion"] = list(d.torsion)
    return out


def cmd_info(job: Job, args) -> dict:
    fan = job.fan
    out = {"rank": fan.rank, "rays": len(fan.rays), "complete": fan.complete,
           "simplicial": fan.simplicial, "smooth": fan.smooth}
    if not fan.complete:
        return out
    cg = lattice.class_group(fan)
    out["class_group"] = {"free_rank": cg.free_rank, "torsion": list(cg.torsion_invariants)}
    out["ray_degrees"] = [degree_json(lattice.degree_of(fan, e))["free"]
                          for e in ([int(i == j) for j in range(fan.nrays)] for i in range(fan.nrays))]
    out["beta0"] = degree_json(lattice.anticanonical(fan))
    if "beta" in job.raw:
        beta = job.beta
        rho = lattice.critical_degree(fan, beta)
        top = lattice.combine(fan, (fan.rank + 2, beta))
        out["beta"] = degree_json(beta)
        out["rho"] = degree_json(rho)
        out["cartier"] = polytopes.is_cartier(fan, beta.representative)
        out["ample"] = polytopes.is_ample(fan, beta.representative)
        out["dimensions"] = {
            "S_beta": len(polytopes.monomial_basis(fan, beta)),
            "S_rho": len(polytopes.monomial_basis(fan, rho)),
            "S_(n+2)beta": len(polytopes.monomial_basis(fan, top)),
        }
    return out


def cmd_jacobian(job: Job, args) -> dict:
    res = toric_jacobian(job.fan, job.f_sequence())
    return {"jacobian": res.J.to_string(job.names), "degree": degree_json(res.degree),
            "reference_subset": list(res.reference_subset)}


def cmd_residue(job: Job, args) -> dict:
    f_seq = job.f_sequence()
    g = toric_jacobian(job.fan, f_seq).J if job.raw.get("g") == JACOBIAN_REF else job.poly("g")
    cert = toric_residue(job.fan, job.beta, f_seq, g)
    out = {"c": q(cert.c), "residue": q(cert.residue_value), "deg_F": cert.deg_F,
           "degree": degree_json(cert.degree)}
    if args.cofactors:
        out["cofactors"] = [h.to_string(job.names) for h in cert.cofactors]
    return out


def cmd_check(job: Job, args) -> dict:
    f_seq = job.f_sequence()
    beta = job.beta
    ok = check_condition3(job.fan, beta, f_seq)
    return {"no_common_zero": ok, **critical_quotient_report(job.fan, beta, f_seq)}


def cmd_nondeg(job: Job, args) -> dict:
    res = is_nondegenerate(job.fan, job.beta, job.poly("f"))
    return {"nondegenerate": res.nondegenerate, "subset": list(res.subset),
            "generation_verified": res.generation_verified,
            "reduced_generators": [p.to_string(job.names) for p in res.reduced_generators]}


def cmd_volume(job: Job, args) -> dict:
    P = polytopes.polytope_of_divisor(job.fan, job.beta.representative)
    vol = P.normalized_volume
    return {"normalized_volume": vol if isinstance(vol, int) else q(vol),
            "lattice_points": len(P.lattice_points), "dimension": P.dimension,
            "vertices": [[q(x) for x in v] for v in P.vertices]}


def cmd_numeric(job: Job, args) -> dict:
    sampler = job.raw.get("sampler", {})
    config = SamplerConfig(
        sample_count=args.samples if args.samples is not None else sampler.get("samples", 10**6),
        seed=args.seed if args.seed is not None else sampler.get("seed", 0),
        chart=args.chart if args.chart is not None else sampler.get("chart", 0),
        workers=args.workers)
    f_seq = job.f_sequence()
    g = toric_jacobian(job.fan, f_seq).J if job.raw.get("g") == JACOBIAN_REF else job.poly("g")
    est = residue_integral(job.fan, job.beta, f_seq, g, config)
    return {"value": {"re": est.value.real, "im": est.value.imag}, "std_error": est.std_error,
            "samples": est.samples_used, "seed": config.seed, "chart": config.chart}


HANDLERS = {
    "info": cmd_info, "jacobian": cmd_jacobian, "residue": cmd_residue, "check": cmd_check,
    "nondeg": cmd_nondeg, "volume": cmd_volume, "numeric": cmd_numeric,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torres", description="Exact toric residues and Jacobians.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--job", required=True, help="path to the JSON job document")
    p.add_argument("--samples", type=int, default=None, help="Monte Carlo sample count")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--chart", type=int, default=None, help="index of the maximal cone used as chart")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cofactors", action="store_true", help="include h_i in residue output")
    return p


def _emit(report: dict, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def run(argv: Optional[List[str]] = None, stream=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = load_job(args.job)
        report = HANDLERS[args.command](job, args)
    except JobError as exc:
        _emit({"status": "malformed", "error": str(exc)}, stream)
        print(f"torres: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        _emit({"status": "precondition", "assumption": exc.assumption, "error": str(exc)}, stream)
        print(f"torres: assumption violated: {exc}", file=sys.stderr)
        return 2
    except (IncompleteFanError, UnboundedPolytopeError) as exc:
        _emit({"status": "precondition", "assumption": "complete fan", "error": str(exc)}, stream)
        print(f"torres: assumption violated: {exc}", file=sys.stderr)
        return 2
    except JacobianError as exc:
        _emit({"status": "precondition", "assumption": "homogeneity", "error": str(exc)}, stream)
        print(f"torres: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        _emit({"status": "precondition", "assumption": "numeric", "error": str(exc)}, stream)
        print(f"torres: {exc}", file=sys.stderr)
        return 2
    report = {"command": args.command, "status": "ok", **report}
    _emit(report, stream)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
