"""Command line front end.

Every command prints one JSON object on stdout: ``{"status": ..., "result": ...}``
plus ``step`` and ``reason`` for rejections and ``error`` for failures.
Diagnostics go to stderr. Exit code 0 = ok, 1 = reject, 2 = error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from math import gcd

from .diagram import DiagramError, load_diagram
from .homology import (
    HomologyError,
    build_complex,
    cocycle_bound_ok,
    generating_cocycle,
    homology_h1,
    load_cocycle,
    pairings,
)
from .invariants import alexander, determinant, signature
from .normal import (
    NormalError,
    boundary_curve,
    check_bounds,
    edge_weight,
    euler_char,
    load_normal_vector,
    validate_normal,
    weight,
)
from .repcert import (
    CertificateError,
    Presentation,
    PresentationCertificate,
    UncenteredCertificate,
    emit_variety_system,
    load_json,
    primes_up_to,
    search_uncentered,
    verify_nonabelian,
    verify_uncentered,
)
from .torus import identify_torus
from .triangulation import TriangulationError, load_triangulation

EXIT = {"ok": 0, "reject": 1, "error": 2}
INPUT_ERRORS = (DiagramError, CertificateError, TriangulationError, NormalError, HomologyError,
                ValueError, OSError)


@dataclass
class CommandResult:
    status: str
    payload: object = None
    diagnostics: list[str] = field(default_factory=list)
    step: object = None
    reason: str = ""

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.status == "error":
            out["error"] = self.reason
            return out
        out["result"] = self.payload
        if self.status == "reject":
            out["step"] = self.step
            out["reason"] = self.reason
        return out

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


def ok(payload, *diag) -> CommandResult:
    return CommandResult("ok", payload, list(diag))


def reject(step, reason, payload=None) -> CommandResult:
    return CommandResult("reject", payload, [f"[{step}] {reason}"], step, reason)


# ---------------------------------------------------------------------------
# commands


def cmd_invariants(path: str) -> CommandResult:
    d = load_diagram(path)
    delta = alexander(d)
    sigma = signature(d)
    return ok({
        "crossings": d.n,
        "alexander": delta.to_json(),
        "alexander_text": str(delta),
        "signature": sigma,
        "determinant": determinant(delta),
    }, f"n = {d.n}, Delta = {delta}")


def cmd_identify(path: str) -> CommandResult:
    d = load_diagram(path)
    found = identify_torus(alexander(d), signature(d), d.n) if d.n >= 3 else None
    return ok({"torus": None if found is None else found.as_list()})


def cmd_verify_uncentered(diagram: str, cert_path: str) -> CommandResult:
    d = load_diagram(diagram)
    if d.n < 3:
        raise DiagramError("uncentered certificates need a diagram with at least 3 crossings")
    cert = UncenteredCertificate.from_json(load_json(cert_path))
    v = verify_uncentered(d, cert)
    if v.accepted:
        return ok(v.to_json(), "certificate accepted")
    return reject(v.step, v.reason, v.to_json())


def cmd_verify_nonabelian(pres_path: str, cert_path: str) -> CommandResult:
    pres = Presentation.from_json(load_json(pres_path))
    cert = PresentationCertificate.from_json(load_json(cert_path))
    v = verify_nonabelian(pres, cert)
    if v.accepted:
        return ok(v.to_json(), "certificate accepted")
    return reject(v.step, v.reason, v.to_json())


def _normal_report(tri_path: str, vec_path: str) -> tuple[dict, object]:
    T = load_triangulation(tri_path)
    v = load_normal_vector(vec_path)
    rep = validate_normal(T, v)
    out = rep.to_json()
    out["weight"] = str(weight(v))
    out["bounds"] = check_bounds(T, v)
    if rep.valid:
        out["edge_weight"] = str(edge_weight(T, v))
        out["euler_char"] = euler_char(T, v)
        if T.is_one_vertex_torus_boundary():
            out["boundary_curve"] = [str(x) for x in boundary_curve(T, v)]
    return out, rep


def cmd_verify_normal(tri_path: str, vec_path: str) -> CommandResult:
    out, rep = _normal_report(tri_path, vec_path)
    for step, items in (("negative", rep.negative), ("matching", rep.matching), ("quad", rep.quads)):
        if items:
            return reject(step, f"{len(items)} violation(s)", out)
    if not out["bounds"]:
        return reject("bounds", "coordinate or weight bound exceeded", out)
    return ok(out, "vector valid")


def cmd_normal_check(tri_path: str, vec_path: str) -> CommandResult:
    out, rep = _normal_report(tri_path, vec_path)
    return ok(out, "valid" if rep.valid else "invalid", out["note"])


def cmd_verify_cocycle(tri_path: str, phi_path: str) -> CommandResult:
    T = load_triangulation(tri_path)
    phi = load_cocycle(phi_path)
    cx = build_complex(T)
    if len(phi) != cx.n:
        raise HomologyError(f"cocycle has {len(phi)} entries, complex has {cx.n} edges")
    payload = {"edges": cx.n}
    if any(cx.d1_of(phi)):
        return reject("cocycle", "delta^1 phi != 0", payload)
    pr = pairings(phi, homology_h1(cx))
    payload["pairings"] = [str(x) for x in pr]
    g = 0
    for x in pr:
        g = gcd(g, x)
    if g != 1:
        return reject("primitive", f"pairings have gcd {g}", payload)
    if not cocycle_bound_ok(phi, T.t):
        return reject("bound", "L1 norm exceeds (18t)^(6t) / 3", payload)
    return ok(payload, "cocycle accepted")


def cmd_search(path: str, max_prime: int, jobs: int | None, output: str | None) -> CommandResult:
    d = load_diagram(path)
    if d.n < 3:
        raise DiagramError("search needs a diagram with at least 3 crossings")
    if max_prime < 2:
        raise ValueError("--max-prime must be at least 2")
    cert = search_uncentered(d, max_prime, jobs=jobs)
    if cert is None:
        payload = {"certificate": None, "exhaustive": True, "primes": primes_up_to(max_prime)}
        return ok(payload, f"no certificate for primes up to {max_prime}; the search was exhaustive")
    body = cert.to_json()
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            json.dump(body, fh, sort_keys=True)
            fh.write("\n")
    return ok({"certificate": body}, f"certificate at p = {cert.p}" if cert.p else "none-certificate")


def cmd_emit_system(path: str, exponent: int) -> CommandResult:
    d = load_diagram(path)
    system = emit_variety_system(d, exponent)
    return ok({
        "variables": list(system.names),
        "polynomials": system.to_json(),
        "counts": {"variables": system.nvars, "polynomials": len(system.polys)},
        "max_degree": system.max_degree(),
        "max_coeff": str(system.max_coeff()),
    }, f"{system.nvars} variables, {len(system.polys)} polynomials")


def cmd_cocycle(tri_path: str) -> CommandResult:
    T = load_triangulation(tri_path)
    phi = generating_cocycle(T)
    return ok({"phi": [str(x) for x in phi]}, f"L1 norm {sum(abs(x) for x in phi)}")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="knotcert", description="Knot invariants and certificate checks.")
    ap.add_argument("--quiet", action="store_true", help="suppress diagnostics on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="Alexander polynomial, signature, determinant")
    p.add_argument("diagram")
    p = sub.add_parser("identify", help="torus knot matching the invariants, if any")
    p.add_argument("diagram")

    p = sub.add_parser("verify", help="check a certificate")
    vs = p.add_subparsers(dest="kind", required=True)
    for kind, a, b in (("uncentered", "diagram", "certificate"), ("nonabelian", "presentation", "certificate"),
                       ("normal", "triangulation", "vector"), ("cocycle", "triangulation", "cocycle")):
        q = vs.add_parser(kind)
        q.add_argument(a)
        q.add_argument(b)

    p = sub.add_parser("search", help="search for an uncentered certificate")
    p.add_argument("diagram")
    p.add_argument("--max-prime", type=int, default=100)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--output", default=None, help="also write the certificate to this file")

    p = sub.add_parser("emit-system", help="polynomial system for a peripheral exponent")
    p.add_argument("diagram")
    p.add_argument("--exponent", type=int, required=True)

    p = sub.add_parser("normal-check", help="report on a normal coordinate vector")
    p.add_argument("triangulation")
    p.add_argument("vector")

    p = sub.add_parser("cocycle", help="small generating 1-cocycle")
    p.add_argument("triangulation")
    return ap


def dispatch(args) -> CommandResult:
    c = args.command
    if c == "invariants":
        return cmd_invariants(args.diagram)
    if c == "identify":
        return cmd_identify(args.diagram)
    if c == "verify":
        if args.kind == "uncentered":
            return cmd_verify_uncentered(args.diagram, args.certificate)
        if args.kind == "nonabelian":
            return cmd_verify_nonabelian(args.presentation, args.certificate)
        if args.kind == "normal":
            return cmd_verify_normal(args.triangulation, args.vector)
        return cmd_verify_cocycle(args.triangulation, args.cocycle)
    if c == "search":
        return cmd_search(args.diagram, args.max_prime, args.jobs, args.output)
    if c == "emit-system":
        return cmd_emit_system(args.diagram, args.exponent)
    if c == "normal-check":
        return cmd_normal_check(args.triangulation, args.vector)
    return cmd_cocycle(args.triangulation)


def run(argv=None) -> tuple[CommandResult, bool]:
    args = build_parser().parse_args(argv)
    try:
        res = dispatch(args)
    except INPUT_ERRORS as exc:
        res = CommandResult("error", None, [f"[error] {exc}"], reason=str(exc))
    return res, args.quiet


def main(argv=None) -> int:
    try:
        res, quiet = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return 2 if exc.code else 0
    if not quiet:
        for line in res.diagnostics:
            print(line, file=sys.stderr)
    json.dump(res.to_json(), sys.stdout, sort_keys=True)
    sys.stdout.write("\n")
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
