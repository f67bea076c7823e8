"""Command line front end: parse an input file, run every analysis, emit a report.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .dim3 import decompose, hdet_obstruction, in_sym2, in_sym3
from .ext import ExtAlgebra, apply_matrix, frobenius_pairing, nakayama_E, shriek_action
from .field import GF, QQ
from .graded import GradedAlgebra, check_m_koszul, gorenstein_dimension, resolution_shape
from .parser import ParseError, ParsedInput, parse_automorphisms, parse_file, render_input
from .potential import (
    Potential,
    Presentation,
    derivation_quotient,
    extract_superpotential,
    is_superpotential,
    symmetrize_c,
    twisting_map,
    w_space,
)
from .symmetry import (
    check_centrality,
    hdet,
    is_automorphism,
    is_calabi_yau,
    nakayama_via_phi,
    nakayama_via_Q,
)
from .tensor import LinearMap, TensorSizeError
from .twist import cy_twist_criterion, poly3_cy_twist_classifier, twist_report

ELL_SCAN_LIMIT = 12


@dataclass
class Options:
    mode: str = "auto"  # "potential", "relations" or "auto"
    m: int | None = None
    ell: int | None = None
    order: int | None = None
    koszul_depth: int = 8
    twist: bool = False
    twist_auts: dict | None = None


class Report:
    """Ordered report sections plus a flat list of pass/fail checks."""

    def __init__(self, field):
        self.field = field
        self.sections = {}
        self.checks = []

    def s(self, x) -> str:
        return self.field.render(x)

    def matrix(self, rows) -> list:
        return [[self.s(x) for x in r] for r in rows]

    def check(self, name: str, passed: bool, value=None):
        entry = {"name": name, "passed": bool(passed)}
        if value is not None:
            entry["value"] = value
        self.checks.append(entry)
        return passed

    def failure(self, name: str, exc: Exception):
        self.checks.append({"name": name, "passed": False, "error": f"{type(exc).__name__}: {exc}"})

    def run(self, name: str, fn):
        """Run one analysis step; module errors become failed checks."""
        try:
            return fn()
        except (ValueError, ArithmeticError, RuntimeError) as exc:
            self.failure(name, exc)
            return None

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def as_dict(self) -> dict:
        out = dict(self.sections)
        out["checks"] = self.checks
        out["all_passed"] = self.passed
        return out


def _scan_ell(P: Presentation) -> int:
    """Smallest ℓ ≥ m with dim W_ℓ = 1 and W_{ℓ+1} = 0."""
    for ell in range(P.m, ELL_SCAN_LIMIT + 1):
        try:
            if w_space(P, ell).dim == 1 and w_space(P, ell + 1).dim == 0:
                return ell
        except TensorSizeError:
            break
    raise ValueError(f"no ℓ ≤ {ELL_SCAN_LIMIT} with a one-dimensional superpotential space; pass --ell")


def _scan_m(w: Potential) -> int:
    """Smallest m ≥ 2 for which D(w, ℓ−m) gives back w and (m, ℓ) fixes a dimension; 2 if none."""
    for m in range(2, w.ell + 1):
        try:
            gorenstein_dimension(m, w.ell)
            if extract_superpotential(derivation_quotient(w, w.ell - m), w.ell) == w:
                return m
        except (ValueError, TensorSizeError):
            continue
    return 2


def _setup(parsed: ParsedInput, opts: Options, rep: Report):
    """Determine (P, w, m, ℓ, d) from either input mode."""
    names = parsed.names
    mode = opts.mode
    if mode == "auto":
        mode = "potential" if parsed.potential is not None else "relations"
    if mode == "potential":
        if parsed.potential is None:
            raise ValueError("--potential mode needs a 'w = ...;' statement")
        w = Potential(parsed.potential)
        ell = w.ell
        if opts.order is not None:
            order = opts.order
        elif opts.m is not None:
            order = ell - opts.m
        else:
            order = ell - _scan_m(w)
        P = derivation_quotient(w, order)
        m = P.m
        extracted = rep.run("superpotential extraction", lambda: extract_superpotential(P, ell))
        if extracted is not None:
            rep.check("extraction inverts derivation quotient", extracted == w, extracted.format(names))
    else:
        if not parsed.relations:
            raise ValueError("--relations mode needs 'rel = ...;' statements")
        P = Presentation.from_relations(parsed.relations)
        m = P.m
        if opts.m is not None and opts.m != m:
            raise ValueError(f"relations have degree {m}, not {opts.m}")
        ell = opts.ell if opts.ell is not None else _scan_ell(P)
        w = extract_superpotential(P, ell)
    d = gorenstein_dimension(m, ell)
    return P, w, m, ell, d


def _nakayama_section(rep: Report, w, d, names):
    t = w.tensor
    section = {}
    nu = rep.run("Nakayama via phi", lambda: nakayama_via_phi(t, d))
    viaq = rep.run("Nakayama via Q", lambda: nakayama_via_Q(t, d))
    if nu is not None:
        section["nu"] = rep.matrix(nu.images())
    if viaq is not None:
        section["M"] = [[e.format(names) for e in row] for row in viaq.M]
        section["Q"] = rep.matrix(viaq.Q)
        section["nu_via_Q"] = rep.matrix(viaq.nu.images())
    if nu is not None and viaq is not None:
        rep.check("Nakayama methods agree", nu == viaq.nu)
    if nu is not None:
        h = rep.run("hdet of Nakayama", lambda: hdet(nu, t))
        if h is not None:
            rep.check("hdet(nu) = 1", h == 1, rep.s(h))
    cy = is_calabi_yau(t, d)
    section["calabi_yau"] = cy
    if nu is not None:
        rep.check("Calabi-Yau iff nu = id", cy == (nu == LinearMap.identity(t.n, t.field)))
    return section, nu, cy


def _automorphism_section(rep: Report, P, w, nu, auts):
    section = {}
    verified = {}
    for name, sigma in auts.items():
        entry = {"matrix": rep.matrix(sigma.images()), "det": rep.s(sigma.det())}
        ev = rep.run(f"automorphism {name}", lambda: is_automorphism(sigma, P, w))
        if ev is not None:
            entry["preserves_relations"] = ev.preserves_relations
            entry["preserves_potential"] = ev.preserves_potential
            rep.check(f"{name} is an automorphism", bool(ev))
            if ev:
                verified[name] = sigma
                entry["hdet"] = rep.s(hdet(sigma, w))
        section[name] = entry
    if nu is not None and verified:
        rep.check("nu is central", check_centrality(nu, verified.values()))
    return section, verified


def _ext_section(rep: Report, w, d, P, nu, auts):
    E = ExtAlgebra(w, d, P)
    section = {"dims": [E.dim(i) for i in range(d + 1)]}
    data = rep.run("Frobenius pairing", lambda: nakayama_E(E))
    if data is None:
        return section
    rep.check("Gram matrices invertible", True)
    section["mu"] = [rep.matrix(mu) for mu in data.mu]
    unit, top = E.unit(), E.top()
    rep.check("mu fixes unit", apply_matrix(E, data.mu[0], unit) == unit)
    rep.check("mu fixes top class", apply_matrix(E, data.mu[d], top) == top)
    if nu is not None:
        sign = 1 if (d + 1) % 2 == 0 else -1
        twisted = nu * sign
        per_degree = [data.mu[i] == shriek_action(E, twisted, i) for i in range(d + 1)]
        section["nakayama_identity"] = per_degree
        rep.check("mu = (eps^(d+1) nu)^!", all(per_degree))
    for name, sigma in auts.items():
        h = hdet(sigma, w)
        ok = True
        for i in range(d + 1):
            S_i, S_c = shriek_action(E, sigma, i), shriek_action(E, sigma, d - i)
            for f in E.basis(i):
                for g in E.basis(d - i):
                    lhs = frobenius_pairing(apply_matrix(E, S_i, f), apply_matrix(E, S_c, g))
                    ok = ok and lhs == h * frobenius_pairing(f, g)
        rep.check(f"pairing scales by hdet({name})", ok)
    return section


def _dim3_section(rep: Report, P, w, names):
    t = w.tensor
    dec = decompose(t)
    section = {
        "mu": rep.s(dec.mu),
        "c_in_sym3": in_sym3(symmetrize_c(t)),
        "relations_in_sym2": in_sym2(P.relations),
    }
    rep.check("c(w) = s(w) + mu(w) w0", dec.holds)
    verdict = rep.run("hdet obstruction", lambda: hdet_obstruction(P, t))
    if verdict is not None:
        section["obstruction"] = verdict.verdict
        section["reason"] = verdict.reason
        if verdict.witness is not None:
            section["witness"] = rep.matrix(verdict.witness.images())
    return section


def analyze(parsed: ParsedInput, opts: Options | None = None) -> Report:
    opts = opts or Options()
    names = parsed.names
    rep = Report(parsed.field)
    rep.sections["input"] = {
        "field": "QQ" if parsed.field.characteristic == 0 else f"F_{parsed.field.characteristic}",
        "vars": list(names),
        "source": render_input(parsed),
    }
    try:
        P, w, m, ell, d = _setup(parsed, opts, rep)
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        rep.failure("setup", exc)
        return rep
    t = w.tensor
    rep.sections["profile"] = {"n": P.n, "m": m, "ell": ell, "d": d}
    rep.sections["relations"] = P.format(names)
    tw = twisting_map(t)
    rep.sections["superpotential"] = {
        "w": w.format(names),
        "is_superpotential": is_superpotential(t),
        "twisted_by": rep.matrix(tw.sigma.images()) if tw.is_twisted else None,
    }
    nak, nu, cy = _nakayama_section(rep, w, d, names)
    rep.sections["nakayama"] = nak
    auts_section, verified = _automorphism_section(rep, P, t, nu, parsed.automorphisms)
    rep.sections["automorphisms"] = auts_section

    A = GradedAlgebra(P)
    verdict = check_m_koszul(A, opts.koszul_depth)
    shape = resolution_shape(A, ell)
    rep.sections["koszul"] = {
        "certificate": str(verdict),
        "hilbert": A.hilbert_function(opts.koszul_depth),
        "resolution_shape": {k: v for k, v in shape.values.items()},
    }
    rep.check(f"Koszul complex exact to degree {opts.koszul_depth}", verdict.passed, str(verdict))
    rep.check("resolution shape", shape.passed)

    ext = rep.run("Ext algebra", lambda: _ext_section(rep, t, d, P, nu, verified))
    if ext is not None:
        rep.sections["ext"] = ext

    if opts.twist:
        twist_auts = dict(verified)
        for name, sigma in (opts.twist_auts or {}).items():
            ev = rep.run(f"automorphism {name}", lambda: is_automorphism(sigma, P, t))
            if ev is not None and rep.check(f"{name} is an automorphism", bool(ev)):
                twist_auts[name] = sigma
        twists = {}
        for name, sigma in twist_auts.items():
            r = rep.run(f"twist by {name}", lambda: twist_report(t, d, nu, sigma))
            if r is None:
                continue
            entry = {
                "w": r.w_twisted_raw.format(names),
                "relations": r.R_twisted.format(names),
                "hdet": rep.s(r.hdet_source),
                "hdet_after_twist": rep.s(r.hdet_twisted),
                "nakayama": rep.matrix(r.nakayama_twisted.images()),
                "calabi_yau": r.cy_status,
            }
            rep.check(f"twist by {name} identities", r.passed)
            if cy:
                crit = cy_twist_criterion(sigma, t, nu)
                entry["criterion"] = crit
                rep.check(f"twist by {name} criterion agrees", crit == r.cy_status)
            twists[name] = entry
        rep.sections["twists"] = twists

    if P.n == 3 and m == 2 and ell == 3:
        dim3 = rep.run("dimension three", lambda: _dim3_section(rep, P, w, names))
        if dim3 is not None:
            rep.sections["dim3"] = dim3
            if t.is_proportional_to(_poly_w(t.field)) is not None:
                dim3["polynomial_twists"] = {
                    name: _poly_entry(rep, sigma) for name, sigma in verified.items()
                }
    return rep


def _poly_w(field):
    from .dim3 import w0

    return w0(field)


def _poly_entry(rep: Report, sigma):
    v = poly3_cy_twist_classifier(sigma)
    return {
        "calabi_yau": v.calabi_yau,
        "xi": None if v.xi is None else rep.s(v.xi),
        "matches_skew_presentation": v.matches_skew_presentation,
    }


def render_text(rep: Report) -> str:
    lines = []
    for key, value in rep.sections.items():
        lines.append(f"[{key}]")
        if isinstance(value, dict):
            for k, v in value.items():
                lines.append(f"  {k}: {json.dumps(v, ensure_ascii=False) if not isinstance(v, str) else v}")
        else:
            lines.append(f"  {json.dumps(value, ensure_ascii=False)}")
    lines.append("[checks]")
    for c in rep.checks:
        tag = "PASS" if c["passed"] else "FAIL"
        extra = c.get("value") or c.get("error") or ""
        lines.append(f"  {tag} {c['name']}" + (f": {extra}" if extra else ""))
    return "\n".join(lines) + "\n"


def render_json(rep: Report) -> str:
    return json.dumps(rep.as_dict(), ensure_ascii=False, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mkoszul", description="Analyse a superpotential or a presentation.")
    ap.add_argument("file", help="input file ('-' for stdin)")
    mode = ap.add_mutually_exclusive_group()
    mode.add_argument("--potential", dest="mode", action="store_const", const="potential")
    mode.add_argument("--relations", dest="mode", action="store_const", const="relations")
    ap.add_argument("--m", type=int, help="relation degree (default 2 in potential mode)")
    ap.add_argument("--ell", type=int, help="superpotential length in relations mode")
    ap.add_argument("--order", type=int, help="derivative order i for D(w, i) (default ℓ − m)")
    ap.add_argument("--koszul-depth", type=int, default=8, metavar="N")
    ap.add_argument("--field", type=int, metavar="q", help="work over F_q (0 for the rationals)")
    ap.add_argument(
        "--twist", nargs="?", const="", metavar="SIGMAFILE",
        help="twist by every automorphism, plus those in SIGMAFILE if given",
    )
    fmt = ap.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--text", dest="format", action="store_const", const="text")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.set_defaults(mode="auto", format="json")
    return ap


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        field = None
        if args.field is not None:
            field = QQ if args.field == 0 else GF(args.field)
        parsed = parse_file(_read(args.file), field)
        twist_auts = None
        if args.twist:
            twist_auts = parse_automorphisms(_read(args.twist), parsed)
    except (OSError, ParseError, ValueError) as exc:
        print(f"mkoszul: {exc}", file=sys.stderr)
        return 2
    opts = Options(
        mode=args.mode,
        m=args.m,
        ell=args.ell,
        order=args.order,
        koszul_depth=args.koszul_depth,
        twist=args.twist is not None,
        twist_auts=twist_auts,
    )
    rep = analyze(parsed, opts)
    sys.stdout.write(render_json(rep) if args.format == "json" else render_text(rep))
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
