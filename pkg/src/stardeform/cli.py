"""`stardeform` command line: verification suites, tables, and evaluators.

Exit codes: 0 success, 1 identity failure, 2 usage/configuration error.
Output is CSV (header row; complex values as re,im column pairs) or JSON
(schema 1, snake_case keys, residuals as decimal strings).  Reports are
byte-identical for identical configurations including the seed.
STARDEFORM_PRECISION selects extended-precision digits where supported.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

import numpy as np

from .core import Poly, star_product
from .errors import DomainError, StarDeformError
from .exact import QC
from .numeric import env_precision_digits, mp_scalar
from .verify import RunConfig, run_suite

SCHEMA = 1


def parse_scalar(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"scalar must be 're' or 're,im', got {text!r}")


def parse_grid(text: str):
    lo, hi, n = text.split(",")
    return (float(lo), float(hi), int(n))


_TERM_RE = re.compile(
    r"^(?P<coeff>\((?P<re>[-+]?[\d.]+)(?P<im>[-+][\d.]+)i\)|[-+]?[\d.]+)?"
    r"\*?(?P<var>w(\^(?P<pow>\d+))?)?$")


def parse_poly(text: str) -> Poly:
    """Minimal polynomial grammar: terms 'c', 'c*w^k', 'w^k', 'w' joined by +/-;
    complex coefficients parenthesized as '(a+bi)'."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    # split at top-level +/- (not inside parentheses, not leading)
    terms = []
    depth = 0
    cur = ""
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and i > 0 and s[i - 1] not in "+-(*^eE":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    coeffs: dict = {}
    for t in terms:
        sign = 1.0
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:]
        m = _TERM_RE.match(t)
        if not m or (m.group("coeff") is None and m.group("var") is None):
            raise ValueError(f"cannot parse polynomial term {t!r}")
        c = 1.0 + 0.0j
        raw = m.group("coeff")
        if raw is not None:
            if raw.startswith("("):
                c = complex(float(m.group("re")), float(m.group("im")))
            else:
                c = complex(float(raw), 0.0)
        power = 0
        if m.group("var"):
            power = int(m.group("pow") or 1)
        coeffs[power] = coeffs.get(power, 0.0) + sign * c
    deg = max(coeffs)
    return Poly([coeffs.get(i, 0.0) for i in range(deg + 1)])


def poly_to_str(p: Poly) -> str:
    if p.is_zero():
        return "0"
    bits = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        cc = complex(c)
        if abs(cc.imag) < 1e-15:
            num = cc.real
            if abs(num - round(num)) < 1e-12:
                num_s = str(int(round(num)))
            else:
                num_s = repr(num)
        else:
            num_s = f"({cc.real:g}{cc.imag:+g}i)"
        if k == 0:
            bits.append(num_s)
        else:
            var = "w" if k == 1 else f"w^{k}"
            bits.append(var if num_s == "1" else
                        (f"-{var}" if num_s == "-1" else f"{num_s}{var}"))
    out = " + ".join(bits)
    return out.replace("+ -", "- ")


def _fmt_resid(x: float) -> str:
    return f"{x:.17e}"


def emit_json(payload: dict, stream=None):
    payload = {"schema": SCHEMA, **payload}
    print(json.dumps(payload, sort_keys=True, ensure_ascii=False), file=stream or sys.stdout)


def emit_csv(header, rows, stream=None):
    out = stream or sys.stdout
    print(",".join(header), file=out)
    for row in rows:
        print(",".join(str(x) for x in row), file=out)


def cmd_verify(args) -> int:
    try:
        cfg = RunConfig(tau=parse_scalar(args.tau), nu=parse_scalar(args.nu),
                        tol=args.tol, trunc=args.trunc, grid=parse_grid(args.grid),
                        fmt=args.format, seed=args.seed)
        records = run_suite(args.suite, cfg)
    except (ValueError, DomainError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    ok = all(r["passed"] for r in records)
    if args.format == "csv":
        emit_csv(["anchor", "description", "residual", "tol", "passed"],
                 [(r["anchor"], r["description"].replace(",", ";"),
                   _fmt_resid(r["residual"]), _fmt_resid(r["tol"]), r["passed"])
                  for r in records])
    else:
        emit_json({
            "suite": args.suite,
            "config": {"tau": [cfg.tau.real, cfg.tau.imag], "nu": [cfg.nu.real, cfg.nu.imag],
                       "tol": _fmt_resid(cfg.tol), "trunc": cfg.trunc,
                       "grid": list(cfg.grid), "seed": cfg.seed},
            "results": [{"anchor": r["anchor"], "description": r["description"],
                         "residual": _fmt_resid(r["residual"]),
                         "tol": _fmt_resid(r["tol"]), "passed": r["passed"]}
                        for r in records],
            "passed": ok,
        })
    return 0 if ok else 1


def cmd_table(args) -> int:
    from . import halfseries, specialfn

    fam = args.family
    N = args.count
    if N < 0:
        print("N must be >= 0", file=sys.stderr)
        return 2
    if fam == "euler":
        # count is the top index: E_0, E_2, ..., E_{2 floor(count/2)}
        vals = halfseries.euler_numbers(N // 2)
        print(", ".join(str(v) for v in vals))
        return 0
    if fam == "bernoulli":
        vals = halfseries.bernoulli_numbers(N // 2)
        print(", ".join(str(v) for v in vals))
        return 0
    tau_c = parse_scalar(args.tau)
    tau = QC(Fraction(tau_c.real).limit_denominator(10 ** 6),
             Fraction(tau_c.imag).limit_denominator(10 ** 6))
    if fam == "hermite":
        fam_t = specialfn.hermite_table(N, tau)
        emit_csv(["n", "reduced_polynomial(leading (sqrt2)^n factored out)"],
                 [(n, f"\"{_exact_poly_str(p)}\"") for n, p in enumerate(fam_t.reduced)])
        return 0
    if fam == "laguerre":
        tab = specialfn.laguerre_star(N, tau)
        emit_csv(["n", "polynomial_in_x"],
                 [(n, f"\"{_exact_poly_str(p)}\"") for n, p in enumerate(tab)])
        return 0
    if fam == "legendre":
        tab = specialfn.legendre_star_exact(N, Fraction(tau_c.real).limit_denominator(10 ** 6))
        emit_csv(["n", "polynomial_in_(w+a)"],
                 [(n, f"\"{_exact_poly_str(p)}\"") for n, p in enumerate(tab)])
        return 0
    if fam == "bessel":
        grid = [g for g in np.linspace(*parse_grid(args.grid))]
        tab = specialfn.bessel_table(parse_scalar(args.a), tau_c, N, grid)
        header = ["w"] + [f"J{n}_re,J{n}_im" for n in range(-N, N + 1)]
        rows = []
        for i, w in enumerate(grid):
            row = [f"{w:.12g}"]
            for n in range(-N, N + 1):
                v = tab.values[n][i]
                row.append(f"{v.real:.12e},{v.imag:.12e}")
            rows.append(row)
        emit_csv(header, rows)
        return 0
    print(f"unknown family {fam!r}", file=sys.stderr)
    return 2


def _exact_poly_str(p: Poly) -> str:
    bits = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        if isinstance(c, QC) and c.im == 0:
            cs = str(c.re)
        else:
            cs = str(c)
        var = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if var and cs == "1":
            bits.append(var)
        elif var and cs == "-1":
            bits.append(f"-{var}")
        else:
            bits.append(f"{cs}{var}" if var else cs)
    return " + ".join(bits) if bits else "0"


def cmd_eval(args) -> int:
    digits = env_precision_digits()
    tau_c = parse_scalar(args.tau)
    try:
        f = parse_poly(args.f)
        g = parse_poly(args.g)
    except ValueError as exc:
        print(f"polynomial parse error: {exc}", file=sys.stderr)
        return 2
    if args.rational:
        to_exact = lambda c: QC(Fraction(complex(c).real).limit_denominator(10 ** 9),  # noqa: E731
                                Fraction(complex(c).imag).limit_denominator(10 ** 9))
        f = f.map_coeffs(to_exact)
        g = g.map_coeffs(to_exact)
        tau = to_exact(tau_c)
        result = star_product(f, g, tau)
        print(_exact_poly_str(result).replace("x", "w"))
        return 0
    if digits:
        tau = mp_scalar(tau_c.real, tau_c.imag, digits)
        f = f.map_coeffs(lambda c: mp_scalar(complex(c).real, complex(c).imag))
        g = g.map_coeffs(lambda c: mp_scalar(complex(c).real, complex(c).imag))
        result = star_product(f, g, tau)
        print(" + ".join(f"({c})w^{k}" for k, c in enumerate(result.coeffs) if c != 0))
        return 0
    result = star_product(f, g, tau_c)
    print(poly_to_str(result))
    return 0


def cmd_theta(args) -> int:
    from .theta import quasi_periodicity_residual, theta_eval

    tau = parse_scalar(args.tau)
    try:
        grid = np.linspace(*parse_grid(args.w_grid))
        digits = env_precision_digits()
        rows = []
        for w in grid:
            if digits:
                val = theta_eval(args.kind, mp_scalar(w, 0.0, digits),
                                 mp_scalar(tau.real, tau.imag), tol=10.0 ** (-digits + 4))
                val = complex(val)
            else:
                val = theta_eval(args.kind, float(w), tau)
            resid = quasi_periodicity_residual(args.kind, float(w), tau)
            rows.append((f"{w:.12g}", f"{val.real:.15e}", f"{val.imag:.15e}",
                         _fmt_resid(resid)))
        emit_csv(["w", "re_theta", "im_theta", "quasi_periodicity_residual"], rows)
        return 0
    except DomainError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


def cmd_residue(args) -> int:
    from .residue import laurent_coeff_closed, residue_contour

    tau = parse_scalar(args.tau)
    nu = parse_scalar(args.nu)
    try:
        closed = laurent_coeff_closed(args.k, nu, tau, parse_scalar(args.w))
        contour = residue_contour(args.k, nu, tau, parse_scalar(args.w),
                                  radius=args.radius, n_nodes=args.nodes)
    except StarDeformError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    err = abs(closed - contour)
    emit_json({
        "closed": [f"{closed.real:.17e}", f"{closed.imag:.17e}"],
        "contour": [f"{contour.real:.17e}", f"{contour.imag:.17e}"],
        "abs_err": _fmt_resid(err),
    })
    return 0 if err <= args.tol else 1


def cmd_dist(args) -> int:
    from .distributions import principal_value_inverse, sided_inverse

    tau = parse_scalar(args.tau)
    try:
        grid = np.linspace(*parse_grid(args.w_grid))
        if args.m > 1 or args.side == "pv":
            vals = principal_value_inverse(max(args.m, 1), tau, grid)
            label = f"pf_m{max(args.m, 1)}"
        else:
            vals = sided_inverse(parse_scalar(args.a), args.side, tau, grid)
            label = f"inverse_{args.side}"
        emit_csv(["w", f"{label}_re", f"{label}_im"],
                 [(f"{w:.12g}", f"{v.real:.15e}", f"{v.imag:.15e}")
                  for w, v in zip(grid, vals)])
        return 0
    except DomainError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


def cmd_vertex(args) -> int:
    from . import vertex as vx

    K = args.K
    if args.check == "witt":
        ok = all(vx.witt_identity_check(n, l, m, K=K)
                 for n in range(-4, 5) for l in range(-4, 5) for m in range(-4, 5))
        emit_json({"check": "witt", "k": K, "passed": ok})
        return 0 if ok else 1
    if args.check == "central":
        rep = vx.central_constraint_check(K=K, index_max=3)
        payload = {k: v for k, v in rep.items() if k not in ("C",)}
        payload["offdiagonal_nonzero_pairs"] = [list(p) for p in
                                                payload["offdiagonal_nonzero_pairs"]]
        ok = rep["antisymmetry"] and rep["odd_parity_vanishing"] \
            and rep["diagonal_proportionality"] and rep["delta_support"]
        emit_json({"check": "central", "k": K, **payload, "passed": ok})
        return 0 if ok else 1
    if args.check == "kcentral":
        ok = all(vx.k_centrality_check(m, n, K=K) for m in range(-3, 4) for n in range(-3, 4))
        emit_json({"check": "kcentral", "k": K, "passed": ok})
        return 0 if ok else 1
    print(f"unknown check {args.check!r}", file=sys.stderr)
    return 2


def cmd_numbers(args) -> int:
    from .halfseries import bernoulli_numbers, euler_numbers

    if args.euler is not None:
        print(", ".join(str(v) for v in euler_numbers(args.euler)))
        return 0
    if args.bernoulli is not None:
        print(", ".join(str(v) for v in bernoulli_numbers(args.bernoulli)))
        return 0
    print("specify --euler N or --bernoulli N", file=sys.stderr)
    return 2


def cmd_conjecture(args) -> int:
    from .halfseries import conjecture_coefficients

    try:
        coef = conjecture_coefficients(parse_scalar(args.tau), parse_scalar(args.tau_prime),
                                       args.count)
    except DomainError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    emit_csv(["n", "a2n_re", "a2n_im"],
             [(2 * n, f"{c.real:.15e}", f"{c.imag:.15e}") for n, c in enumerate(coef)])
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stardeform",
                                 description="deformed-product function algebra toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    common = dict(tau="1,0", nu="1,0")

    v = sub.add_parser("verify", help="run an identity suite")
    v.add_argument("suite", choices=["core", "starexp", "special", "theta", "dist",
                                     "residue", "halfseries", "vertex", "all"])
    v.add_argument("--tau", default=common["tau"])
    v.add_argument("--nu", default=common["nu"])
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument("--trunc", type=int, default=24)
    v.add_argument("--grid", default="-2,2,17")
    v.add_argument("--seed", type=int, default=7)
    v.add_argument("--format", choices=["json", "csv"], default="json")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="emit coefficient tables")
    t.add_argument("family", choices=["hermite", "laguerre", "legendre", "bessel",
                                      "euler", "bernoulli"])
    t.add_argument("count", type=int)
    t.add_argument("--tau", default="-1,0")
    t.add_argument("--a", default="1,0")
    t.add_argument("--grid", default="-1,1,11")
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("eval", help="evaluate expressions")
    esub = e.add_subparsers(dest="what", required=True)
    est = esub.add_parser("star", help="deformed product of two polynomials")
    est.add_argument("--f", required=True)
    est.add_argument("--g", required=True)
    est.add_argument("--tau", default="1,0")
    est.add_argument("--rational", action="store_true")
    est.set_defaults(func=cmd_eval)

    th = sub.add_parser("theta", help="theta values and residuals (CSV)")
    th.add_argument("--tau", default="1,0")
    th.add_argument("--kind", type=int, default=3, choices=[1, 2, 3, 4])
    th.add_argument("--w-grid", default="-1,1,21")
    th.set_defaults(func=cmd_theta)

    r = sub.add_parser("residue", help="Laurent coefficient, dual routes (JSON)")
    r.add_argument("--k", type=int, default=0)
    r.add_argument("--nu", default="0,0")
    r.add_argument("--tau", default="1,1")
    r.add_argument("--w", default="0,0")
    r.add_argument("--radius", type=float, default=1.0)
    r.add_argument("--nodes", type=int, default=256)
    r.add_argument("--tol", type=float, default=1e-10)
    r.set_defaults(func=cmd_residue)

    d = sub.add_parser("dist", help="sided inverses and v.p./Pf transforms (CSV)")
    d.add_argument("--a", default="0,0")
    d.add_argument("--tau", default="1,0")
    d.add_argument("--side", default="+", choices=["+", "-", "pv"])
    d.add_argument("--m", type=int, default=1)
    d.add_argument("--w-grid", default="-3,3,41")
    d.set_defaults(func=cmd_dist)

    vx = sub.add_parser("vertex", help="formal bracket checks (JSON)")
    vx.add_argument("--check", required=True, choices=["witt", "central", "kcentral"])
    vx.add_argument("--K", type=int, default=6)
    vx.set_defaults(func=cmd_vertex)

    n = sub.add_parser("numbers", help="exact Euler/Bernoulli numbers")
    n.add_argument("--euler", type=int, default=None, metavar="N")
    n.add_argument("--bernoulli", type=int, default=None, metavar="N")
    n.set_defaults(func=cmd_numbers)

    c = sub.add_parser("conjecture", help="exploratory two-parameter coefficients")
    c.add_argument("--tau", default="3,0")
    c.add_argument("--tau-prime", default="1,0")
    c.add_argument("count", type=int)
    c.set_defaults(func=cmd_conjecture)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except StarDeformError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
