"""Command-line front end.

Every subcommand reads its inputs, calls exactly one library operation and
emits a report ``{operation, inputs, result[, witness]}`` as text, JSON or a
LaTeX fragment.  Exit status: 0 on success, 1 on a domain error, 2 on usage
or input errors.  Output depends on nothing but the inputs.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import canonical, oscillations, pencil
from .canonical import ElementaryDivisorList
from .errors import CanonFormsError, InputUnreadable, NotIntegral
from .matrices import Matrix, format_entry, inverse, parse_matrix_text, parse_poly_matrix_text
from .numeric import Polynomial, RootInterval, factor_over_rationals, format_poly, isolate_real_roots, parse_poly
from .numeric.factor import DEGREE_BOUND
from .smith import INT, POLY, domain_of, smith_normal_form

PROG = "canonforms"


# --- input ----------------------------------------------------------------------

def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        reason = getattr(exc, "strerror", None) or type(exc).__name__
        raise InputUnreadable(f"{path}: {reason}") from None


def read_matrix(path: str) -> Matrix:
    return parse_matrix_text(read_text(path))


def read_poly(path: str, var: str) -> Polynomial:
    lines = [ln for ln in read_text(path).splitlines() if not ln.strip().startswith("#")]
    return parse_poly(" ".join(lines), var)


# --- rendering ------------------------------------------------------------------

def _rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_plain(v, var: str = "s"):
    """Typed payload -> JSON-compatible data."""
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, Fraction):
        return _rat(v)
    if isinstance(v, Polynomial):
        return format_poly(v, var)
    if isinstance(v, Matrix):
        return [[format_entry(x, var) for x in v.row(i)] for i in range(v.rows)]
    if isinstance(v, ElementaryDivisorList):
        return [{"base": format_poly(p, var), "exponent": e} for p, e in v]
    if isinstance(v, RootInterval):
        return {
            "low": _rat(v.low),
            "high": _rat(v.high),
            "multiplicity": v.multiplicity,
            "exact": None if v.exact_root is None else _rat(v.exact_root),
        }
    if isinstance(v, dict):
        return {k: to_plain(x, var) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_plain(x, var) for x in v]
    raise TypeError(f"cannot render {type(v).__name__}")


def _scalar_text(x) -> str:
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def flatten(data, prefix: str = "") -> list[str]:
    """``path: value`` lines; lists of scalars share one line."""
    out: list[str] = []
    if isinstance(data, dict):
        for k, x in data.items():
            out += flatten(x, f"{prefix}.{k}" if prefix else k)
    elif isinstance(data, list):
        if all(not isinstance(x, (dict, list)) for x in data):
            out.append(f"{prefix}: [" + ", ".join(_scalar_text(x) for x in data) + "]")
        else:
            for i, x in enumerate(data):
                out += flatten(x, f"{prefix}[{i}]")
    else:
        out.append(f"{prefix}: {_scalar_text(data)}")
    return out


def render_text(payload: dict, var: str = "s") -> str:
    return "\n".join(flatten(to_plain(payload, var))) + "\n"


def render_json(payload: dict, var: str = "s") -> str:
    return json.dumps(to_plain(payload, var), indent=2, ensure_ascii=True) + "\n"


_TEX_ESCAPES = {c: "\\" + c for c in "&%$#_{}"}
_TEX_ESCAPES.update({"^": r"\^{}", "~": r"\~{}", "\\": r"\textbackslash{}"})


def _tex_text(s: str) -> str:
    return "".join(_TEX_ESCAPES.get(c, c) for c in s)


def _tex_rat(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return rf"{sign}\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def _tex_poly(p: Polynomial, var: str) -> str:
    if p.is_zero:
        return "0"
    out = ""
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if not c:
            continue
        a = abs(c)
        if out:
            out += " - " if c < 0 else " + "
        elif c < 0:
            out += "-"
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{{{k}}}")
        coeff = "" if (a == 1 and k) else _tex_rat(a)
        out += coeff + (" " if coeff and mono else "") + mono
    return out


def _tex_math(v, var: str) -> str:
    if isinstance(v, bool):
        return r"\text{true}" if v else r"\text{false}"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return _tex_rat(v)
    if isinstance(v, Polynomial):
        return _tex_poly(v, var)
    if isinstance(v, Matrix):
        rows = [" & ".join(_tex_math(x, var) for x in v.row(i)) for i in range(v.rows)]
        return r"\begin{pmatrix}" + r" \\ ".join(rows) + r"\end{pmatrix}"
    if isinstance(v, ElementaryDivisorList):
        if not len(v):
            return "1"
        return " ".join(
            f"({_tex_poly(p, var)})" + (f"^{{{e}}}" if e > 1 else "") for p, e in v
        )
    if isinstance(v, RootInterval):
        if v.is_exact:
            body = _tex_rat(v.exact_root)
        else:
            body = rf"\in \left({_tex_rat(v.low)}, {_tex_rat(v.high)}\right)"
        return body + (rf" \ (\times {v.multiplicity})" if v.multiplicity > 1 else "")
    if isinstance(v, (list, tuple)):
        return r"\left(" + ", ".join(_tex_math(x, var) for x in v) + r"\right)"
    raise TypeError(f"cannot render {type(v).__name__}")


def _tex_item(v, var: str, depth: int) -> list[str]:
    pad = "  " * depth
    if v is None:
        return [pad + r"\text{--}"]
    if isinstance(v, str):
        return [pad + r"\texttt{" + _tex_text(v) + "}"]
    if isinstance(v, dict):
        lines = [pad + r"\begin{description}"]
        for k, x in v.items():
            sub = _tex_item(x, var, depth + 1)
            lines.append(f"{pad}\\item[{_tex_text(k)}]")
            lines += sub
        lines.append(pad + r"\end{description}")
        return lines
    if isinstance(v, (list, tuple)) and any(isinstance(x, (dict, str)) or x is None for x in v):
        return _tex_item({str(i): x for i, x in enumerate(v)}, var, depth)
    return [pad + "$" + _tex_math(v, var) + "$"]


def render_latex(payload: dict, var: str = "s") -> str:
    return "\n".join(_tex_item(payload, var, 0)) + "\n"


RENDERERS = {"text": render_text, "json": render_json, "latex": render_latex}


# --- subcommands ----------------------------------------------------------------

Result = tuple[dict, dict, Optional[dict]]


def cmd_snf(args) -> Result:
    if args.domain == POLY:
        m = parse_poly_matrix_text(read_text(args.matrix), args.var)
    else:
        m = read_matrix(args.matrix)
    domain = args.domain or domain_of(m)
    if domain == INT and not m.is_integral():
        raise NotIntegral("the integer domain needs integral entries")
    d = smith_normal_form(m, domain)
    result = {
        "domain": d.domain,
        "diagonal": list(d.diagonal),
        "rank": d.rank,
        "left": d.left,
        "right": d.right,
    }
    return {"M": m, "domain": domain}, result, None


def cmd_invariants(args) -> Result:
    a = read_matrix(args.matrix)
    return {"A": a}, {"invariant_factors": canonical.similarity_invariants(a)}, None


def cmd_divisors(args) -> Result:
    a = read_matrix(args.matrix)
    return {"A": a}, {"elementary_divisors": canonical.elementary_divisors(a, args.degree_bound)}, None


def cmd_rational_form(args) -> Result:
    a = read_matrix(args.matrix)
    f = canonical.rational_form(a)
    return {"A": a}, {"invariant_factors": list(f.invariant_factors), "matrix": f.matrix}, None


def cmd_jordan(args) -> Result:
    a = read_matrix(args.matrix)
    j = canonical.jordan_form(a, args.degree_bound)
    return {"A": a}, {"blocks": [[ev, k] for ev, k in j.blocks], "matrix": j.matrix}, None


def cmd_similar(args) -> Result:
    a, b = read_matrix(args.a), read_matrix(args.b)
    verdict = canonical.is_similar(a, b)
    if verdict:
        witness = {
            "invariant_factors": canonical.similarity_invariants(a),
            "transform": canonical.similarity_transform(a, b),
        }
    else:
        witness = {
            "invariant_factors_a": canonical.similarity_invariants(a),
            "invariant_factors_b": canonical.similarity_invariants(b),
        }
    return {"A": a, "B": b}, {"similar": verdict}, witness


def cmd_equiv_form(args) -> Result:
    a = read_matrix(args.matrix)
    p, q, r = canonical.equivalence_normal_form(a)
    return {"A": a}, {"rank": r, "P": p, "Q": q}, None


def cmd_pencil(args) -> Result:
    a, b = read_matrix(args.a), read_matrix(args.b)
    pen = pencil.Pencil(a, b)
    inv = pencil.pencil_invariants(pen, args.degree_bound)
    result = {
        "det": pen.det(),
        "regular": inv.regular,
        "finite": inv.finite,
        "infinite_degrees": list(inv.infinite_degrees),
    }
    return {"A": a, "B": b}, result, None


def cmd_pencil_jordan(args) -> Result:
    phi, psi = read_matrix(args.phi), read_matrix(args.psi)
    h, k, j = pencil.pencil_to_jordan(phi, psi, args.degree_bound)
    result = {"blocks": [[ev, n] for ev, n in j.blocks], "J": j.matrix, "H": h, "K": k}
    return {"Phi": phi, "Psi": psi}, result, None


def cmd_quadpair(args) -> Result:
    phi, psi = read_matrix(args.phi), read_matrix(args.psi)
    out = pencil.simultaneous_diagonalize(phi, psi)
    if isinstance(out, pencil.SimultaneousDiagonalization):
        result = {
            "kind": "diagonalization",
            "T": out.T,
            "diag_phi": list(out.diag_phi),
            "diag_psi": list(out.diag_psi),
            "ratios": out.ratios,
            "linear_divisors": pencil.pair_splits(phi, psi),
        }
    else:
        result = {
            "kind": "certificate",
            "characteristic": out.characteristic,
            "roots": list(out.intervals),
            "linear_divisors": out.linear_divisors,
        }
    witness = {"minimal_polynomial": canonical.minimal_polynomial(inverse(psi) @ phi)}
    return {"Phi": phi, "Psi": psi}, result, witness


def cmd_inertia(args) -> Result:
    s = read_matrix(args.matrix)
    by_minors = pencil.inertia_by_minors(s)
    inert = by_minors or pencil.inertia_by_congruence(s)
    result = {
        "positive": inert.positive,
        "negative": inert.negative,
        "zero": inert.zero,
        "method": "minors" if by_minors else "congruence",
        "principal_minors": list(inert.principal_minors),
    }
    return {"S": s}, result, None


def _verdict_parts(v: oscillations.StabilityVerdict) -> tuple[dict, dict]:
    result = {"status": v.status, "bounded": v.bounded, "reason": v.reason}
    witness = {"factor": v.factor, "root": v.root, "intervals": list(v.intervals)}
    return result, witness


def cmd_ode1(args) -> Result:
    a = read_matrix(args.matrix)
    v = oscillations.classify_stability_first_order(oscillations.FirstOrderSystem(a), args.degree_bound)
    result, witness = _verdict_parts(v)
    return {"A": a}, result, witness


def cmd_ode2(args) -> Result:
    m, k = read_matrix(args.m), read_matrix(args.k)
    an = oscillations.analyze_second_order(oscillations.SecondOrderSystem(m, k))
    result, witness = _verdict_parts(an.verdict)
    result = {"characteristic": an.characteristic, "roots": list(an.roots), **result}
    return {"M": m, "K": k}, result, witness


def cmd_factor(args) -> Result:
    p = read_poly(args.poly, args.var)
    f = factor_over_rationals(p, args.degree_bound)
    factors = [{"factor": g, "exponent": e} for g, e in f]
    return {"p": p}, {"unit": f.unit, "factors": factors}, None


def cmd_roots(args) -> Result:
    p = read_poly(args.poly, args.var)
    return {"p": p}, {"roots": isolate_real_roots(p)}, None


COMMANDS: dict[str, tuple[Callable[..., Result], tuple[str, ...], str]] = {
    "snf": (cmd_snf, ("matrix",), "Smith normal form with unimodular transforms"),
    "invariants": (cmd_invariants, ("matrix",), "similarity invariants of sI - A"),
    "divisors": (cmd_divisors, ("matrix",), "elementary divisors of sI - A"),
    "rational-form": (cmd_rational_form, ("matrix",), "rational canonical form"),
    "jordan": (cmd_jordan, ("matrix",), "Jordan form over the rationals"),
    "similar": (cmd_similar, ("a", "b"), "decide similarity of two matrices"),
    "equiv-form": (cmd_equiv_form, ("matrix",), "P A Q = diag(I_r, 0) over the rationals"),
    "pencil": (cmd_pencil, ("a", "b"), "invariants of the pencil A + sB"),
    "pencil-jordan": (cmd_pencil_jordan, ("phi", "psi"), "H (s Phi - Psi) K = sI - J"),
    "quadpair": (cmd_quadpair, ("phi", "psi"), "simultaneous diagonalization, Psi definite"),
    "inertia": (cmd_inertia, ("matrix",), "inertia of a symmetric matrix"),
    "ode1": (cmd_ode1, ("matrix",), "stability of x' = A x"),
    "ode2": (cmd_ode2, ("m", "k"), "roots and stability of M y'' + K y = 0"),
    "factor": (cmd_factor, ("poly",), "factor a polynomial over the rationals"),
    "roots": (cmd_roots, ("poly",), "isolate the real roots of a polynomial"),
}


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=sorted(RENDERERS), default="text")
    common.add_argument("--degree-bound", type=_positive_int, default=DEGREE_BOUND, metavar="N")
    common.add_argument("--var", default="s", help="polynomial variable letter (default s)")

    parser = argparse.ArgumentParser(prog=PROG, description="Exact canonical forms of matrices and pencils.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, params, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        for p in params:
            sp.add_argument(p, metavar=p.upper(), help="file path, or - for standard input")
        if name == "snf":
            sp.add_argument("--domain", choices=[INT, POLY], default=None)
    return parser


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if not args.var.isalpha() or len(args.var) != 1:
        parser.print_usage(stderr)
        stderr.write(f"{PROG}: error: --var must be a single letter\n")
        return 2
    handler = COMMANDS[args.command][0]
    render = RENDERERS[args.format]
    try:
        inputs, result, witness = handler(args)
    except CanonFormsError as exc:
        payload = {
            "operation": args.command,
            "error": {"name": exc.name, "message": str(exc), "details": exc.details()},
        }
        stdout.write(render(payload, args.var))
        stderr.write(f"{PROG}: {exc.name}: {exc}\n")
        return exc.exit_code
    payload = {"operation": args.command, "inputs": inputs, "result": result}
    if witness is not None:
        payload["witness"] = witness
    stdout.write(render(payload, args.var))
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
