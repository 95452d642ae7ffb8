"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 cap exhausted,
4 experimental region under ``--strict``, 5 golden-file mismatch in
``reproduce``.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import random
import sys
from fractions import Fraction
from importlib import resources

from . import __version__
from .algebraic import AlgebraicNumber, FieldElement, classify as classify_number, to_decimal
from .config import FORMATS, RunConfig
from .dynamics import Side, SystemParams, expand, orbit, project
from .errors import CapError, DomainError, ExperimentalRegionHit
from .kneading import (
    admissible,
    classify_shift,
    entropy,
    kneading_pair,
    spectral_radius,
    subshift_graph,
)
from .lorenz import search_sft_alpha
from .measure import parry_density, support_components
from .polynomial import format_poly, multinacci_poly, parse_poly
from .regions import (
    alpha_nk,
    interval_Ink,
    nth_root,
    region_plot_rows,
    renorm_down,
    transitivity,
    verify_conjugacy,
)
from .words import EventuallyPeriodicWord, Truncated

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CAP, EXIT_EXPERIMENTAL, EXIT_GOLDEN = range(6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


# field element syntax ------------------------------------------------------


def _named_power(beta: AlgebraicNumber, m: int) -> FieldElement:
    """The power of beta equal to the multinacci number of order ``m``."""
    target = multinacci_poly(m)
    y = beta.one
    for _ in range(beta.degree):
        y = y * beta.gen
        acc = beta.zero
        for c in reversed(target):
            acc = acc * y + c
        if acc.sign() == 0:
            return y
    raise DomainError(f"beta{m} is not a power of beta in Q(beta)")


def parse_element(text: str, beta: AlgebraicNumber) -> FieldElement:
    """Parse ``3/7``, ``[p0,p1,...]/q``, or arithmetic in ``beta`` and ``beta<m>``."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"cannot parse field element {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return beta.rational(node.value)
        if isinstance(node, ast.List):
            coeffs = []
            for elt in node.elts:
                v = ev(elt)
                if not v.is_rational():
                    raise UsageError("list entries must be rational")
                coeffs.append(v.as_rational())
            return beta.from_poly(coeffs)
        if isinstance(node, ast.Name):
            if node.id == "beta":
                return beta.gen
            if node.id.startswith("beta") and node.id[4:].isdigit():
                return _named_power(beta, int(node.id[4:]))
            raise UsageError(f"unknown name {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise UsageError("exponents must be integer literals")
                return ev(node.left) ** exp.value
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise UsageError(f"unsupported syntax in {text!r}")

    return ev(tree)


def parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc
    return value


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


# output --------------------------------------------------------------------


class Emitter:
    def __init__(self, config: RunConfig):
        self.config = config

    def num(self, x) -> dict:
        """A numeric field: decimal and a certified bound on its error.

        Field elements also carry their exact coordinates.
        """
        dec, width = to_decimal(x, self.config.precision)
        out = {"decimal": dec, "width": width}
        if isinstance(x, FieldElement):
            out["exact"] = x.to_string()
        return out

    def render(self, payload, out) -> None:
        fmt = self.config.format
        if fmt == "json":
            out.write(json.dumps(payload, separators=(",", ":")) + "\n")
        elif fmt == "plain":
            for key, value in payload.items():
                if isinstance(value, (dict, list)):
                    value = json.dumps(value, separators=(",", ":"))
                out.write(f"{key}: {value}\n")
        else:
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(list(payload))
            writer.writerow(
                [
                    json.dumps(v, separators=(",", ":")) if isinstance(v, (dict, list)) else v
                    for v in payload.values()
                ]
            )

    def table(self, header, rows, out) -> None:
        """Tabular output: CSV under ``--format csv``, else JSON records."""
        if self.config.format == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
        else:
            self.render({"rows": [dict(zip(header, r)) for r in rows]}, out)


def _word_str(word) -> str:
    return str(word)


# commands ------------------------------------------------------------------


def _beta(args, config: RunConfig) -> AlgebraicNumber:
    if args.beta is None:
        raise UsageError("--beta is required")
    try:
        coeffs = parse_poly(args.beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return AlgebraicNumber(coeffs, refine_floor=config.refine_floor)


def _params(args, config) -> SystemParams:
    beta = _beta(args, config)
    if args.alpha is None:
        raise UsageError("--alpha is required")
    return SystemParams(beta, parse_element(args.alpha, beta))


def _sides(args):
    side = getattr(args, "side", "plus") or "plus"
    return [Side.PLUS, Side.MINUS] if side == "both" else [Side.of(side)]


def _point(args, params) -> FieldElement:
    if args.x is None:
        raise UsageError("--x is required")
    return parse_element(args.x, params.beta)


def cmd_expand(args, config, em):
    params = _params(args, config)
    x = _point(args, params)
    length = args.len
    out = {"x": em.num(x)}
    for side in _sides(args):
        out[side.value] = "".join(map(str, expand(params, side, x, length)))
    return out


def _orbit_payload(rec, em, show):
    status = rec.status
    if rec.periodic:
        st = {"kind": "EventuallyPeriodic", "k": status.preperiod, "n": status.period}
    else:
        st = {"kind": "CapExceeded", "cap": status.cap}
    out = {"status": st}
    if rec.periodic:
        out["word"] = str(rec.word())
    shown = min(show, len(rec.vectors))
    out["digits"] = "".join(map(str, rec.digits[: max(shown - 1, 0)]))
    out["states"] = [em.num(rec.state(i)) for i in range(shown)]
    return out


def cmd_orbit(args, config, em):
    params = _params(args, config)
    x = _point(args, params)
    cap = args.cap or config.orbit_cap
    out = {"x": em.num(x)}
    for side in _sides(args):
        out[side.value] = _orbit_payload(orbit(params, side, x, cap), em, args.show)
    return out


def _pair_payload(pair):
    cls = classify_shift(pair)
    return {"class": cls.tag.value, "upper": _word_str(pair.upper), "lower": _word_str(pair.lower)}


def cmd_kneading(args, config, em):
    params = _params(args, config)
    pair = kneading_pair(params, args.cap or config.orbit_cap)
    return {"upper": _word_str(pair.upper), "lower": _word_str(pair.lower), "p": em.num(params.p)}


def cmd_classify(args, config, em):
    params = _params(args, config)
    return _pair_payload(kneading_pair(params, args.cap or config.orbit_cap))


def cmd_admissible(args, config, em):
    params = _params(args, config)
    pair = kneading_pair(params, args.cap or config.orbit_cap)
    text = args.word.strip()
    if "(" in text:
        word = EventuallyPeriodicWord.parse(text)
    elif text and set(text) <= {"0", "1"}:
        word = tuple(map(int, text))
    else:
        raise UsageError(f"not a 0/1 word: {text!r}")
    side = _sides(args)[0]
    return {"word": text, "side": side.value, "admissible": admissible(word, pair, side)}


def cmd_graph(args, config, em):
    params = _params(args, config)
    pair = kneading_pair(params, args.cap or config.orbit_cap)
    graph = subshift_graph(pair)
    out = _pair_payload(pair)
    out.update(graph.to_json())
    return out


def _interval(em, lo, hi) -> dict:
    return {"lo": em.num(lo), "hi": em.num(hi)}


def cmd_entropy(args, config, em):
    params = _params(args, config)
    pair = kneading_pair(params, args.cap or config.orbit_cap)
    graph = subshift_graph(pair)
    rho = spectral_radius(graph)
    ent = entropy(graph)
    return {
        "states": len(graph.states),
        "spectral_radius": _interval(em, *rho),
        "entropy": _interval(em, *ent),
        "beta": em.num(params.beta.gen),
    }


def cmd_search_sft(args, config, em):
    beta = _beta(args, config)
    if args.alpha is None or args.eps is None:
        raise UsageError("--alpha and --eps are required")
    alpha = parse_element(args.alpha, beta)
    eps = parse_rational(args.eps)
    cap = args.cap or config.orbit_cap
    found = search_sft_alpha(
        beta, alpha, eps, period_cap=config.period_cap, prefix_len=config.prefix_len, cap=cap
    )
    pair = kneading_pair(SystemParams(beta, found), cap)
    return {
        "alpha_prime": em.num(found),
        "kneading_upper": _word_str(pair.upper),
        "kneading_lower": _word_str(pair.lower),
        "class": classify_shift(pair).tag.value,
        "distance": em.num(abs(found - alpha)),
    }


def _region_payload(verdict, em):
    if verdict.transitive:
        return {"transitive": True, "n": None, "k": None, "interval": None,
                "experimental": verdict.experimental}
    d = verdict.region
    return {
        "transitive": False,
        "n": d.n,
        "k": d.k,
        "interval": [em.num(d.lo), em.num(d.hi)],
        "experimental": d.experimental,
    }


def cmd_region(args, config, em):
    params = _params(args, config)
    verdict = transitivity(params, args.n_max, allow_experimental=not args.strict)
    return _region_payload(verdict, em)


def cmd_region_plot(args, config, em, out):
    rows = []
    for n, k, b, lo, hi in region_plot_rows(args.n_max, args.samples):
        p = config.precision
        rows.append([n, k, to_decimal(b, p)[0], to_decimal(lo, p)[0], to_decimal(hi, p)[0]])
    em.table(["n", "k", "beta", "lo", "hi"], rows, out)


def _nk(args):
    if args.n is None or args.k is None:
        raise UsageError("--n and --k are required")
    return args.n, args.k


def _experimental_guard(args, k):
    if k >= 2 and args.strict:
        raise ExperimentalRegionHit(f"k={k} uses the experimental region formula")


def cmd_alpha_nk(args, config, em):
    params = _params(args, config)
    n, k = _nk(args)
    _experimental_guard(args, k)
    a = alpha_nk(params.beta, params.alpha, n, k)
    root = nth_root(params.beta, n)
    desc = interval_Ink(n, k, root)
    return {
        "root_poly": format_poly(root.coeffs),
        "alpha_nk": em.num(a),
        "interval": [em.num(desc.lo), em.num(desc.hi)],
        "experimental": k >= 2,
    }


def cmd_renorm(args, config, em):
    params = _params(args, config)
    n, k = _nk(args)
    _experimental_guard(args, k)
    a = renorm_down(params, n, k, allow_experimental=True)
    return {"a": em.num(a), "experimental": k >= 2}


def cmd_conjugacy(args, config, em):
    params = _params(args, config)
    n, k = _nk(args)
    _experimental_guard(args, k)
    ok = verify_conjugacy(params.beta, params.alpha, n, k, args.samples, seed=args.seed)
    return {"verified": ok, "samples": args.samples, "experimental": k >= 2}


def cmd_density(args, config, em, out):
    params = _params(args, config)
    dens = parry_density(params, args.order)
    p = config.precision
    if config.format == "csv":
        rows = []
        for j, v in enumerate(dens.values):
            rows.append(
                [
                    to_decimal(dens.breakpoints[j], p)[0],
                    to_decimal(dens.breakpoints[j + 1], p)[0],
                    to_decimal(v, p)[0],
                ]
            )
        em.table(["lo", "hi", "value"], rows, out)
        return
    payload = {
        "order": dens.order,
        "exact": dens.exact,
        "tail_bound": em.num(dens.tail_bound),
        "cells": [
            {"lo": em.num(dens.breakpoints[j]), "hi": em.num(dens.breakpoints[j + 1]), "value": em.num(v)}
            for j, v in enumerate(dens.values)
        ],
        "support": [
            [em.num(lo), em.num(hi)]
            for lo, hi in support_components(params, allow_experimental=not args.strict)
        ],
    }
    em.render(payload, out)


def cmd_classify_number(args, config, em):
    beta = _beta(args, config)
    nc = classify_number(beta)
    return {
        "poly": format_poly(beta.coeffs),
        "beta": em.num(beta.gen),
        "tag": nc.tag.value,
        "conjugate_moduli": [_interval(em, lo, hi) for lo, hi in nc.conjugate_bounds],
        "unit_circle": nc.unit_circle,
        "diagnostic": nc.diagnostic,
    }


# reproduction ----------------------------------------------------------------

GOLDEN_VERSION = "v1"
UNIVOQUE_14 = [1, -1, 0, 1, -1, 0, 1, -1, 0, 0, -1, 1, 0, -2, 1]


def _expansion_of_one(beta: AlgebraicNumber, alpha: FieldElement, side: Side) -> dict:
    params = SystemParams(beta, alpha)
    x = 1 - alpha / (beta.gen - 1)
    rec = orbit(params, side, x, 10**4)
    return {"word": str(rec.word()), "value": project(params, rec.word()).to_string()}


def _repro_golden_case(poly, alpha_text, side, em):
    beta = AlgebraicNumber(poly)
    alpha = parse_element(alpha_text, beta)
    res = _expansion_of_one(beta, alpha, side)
    return {"beta": format_poly(poly), "alpha": alpha_text, "side": side.value,
            "x": "1 - alpha/(beta-1)", **res}


def repro_greedy(em):
    return _repro_golden_case([-1, -1, 1], "0", Side.PLUS, em)


def repro_symmetric(em):
    return _repro_golden_case([-1, -1, 1], "1-beta/2", Side.PLUS, em)


def repro_lazy(em):
    return _repro_golden_case([-1, -1, 1], "2-beta", Side.MINUS, em)


def repro_univoque(em):
    beta = AlgebraicNumber(UNIVOQUE_14)
    top = 2 - beta.gen
    rows = []
    for label, alpha in (("0", beta.zero), ("(2-beta)/4", top / 4), ("(2-beta)/2", top / 2),
                         ("3(2-beta)/4", 3 * top / 4), ("2-beta", top)):
        for side in (Side.PLUS, Side.MINUS):
            rows.append({"alpha": label, "side": side.value,
                         "word": _expansion_of_one(beta, alpha, side)["word"]})
    return {"beta": format_poly(UNIVOQUE_14), "beta_decimal": em.num(beta.gen)["decimal"],
            "expansions": rows}


def repro_sqrt_golden(em):
    beta = AlgebraicNumber([-1, 0, -1, 0, 1])
    params = SystemParams(beta, parse_element("2-beta2", beta))
    return {"beta": "z^4-z^2-1", "alpha": "2-beta2", **_pair_payload(kneading_pair(params))}


def repro_multinacci(em):
    rows = []
    for m in range(2, 7):
        beta = AlgebraicNumber(multinacci_poly(m))
        alpha = (2 - beta.gen) / 2
        params = SystemParams(beta, alpha)
        plus = orbit(params, Side.PLUS, params.p, m + 1)
        minus = orbit(params, Side.MINUS, params.p, m + 1)
        up = "".join(map(str, expand(params, Side.PLUS, params.p, m + 1)))
        low = "".join(map(str, expand(params, Side.MINUS, params.p, m + 1)))
        meet = plus.state(m + 1) == minus.state(m + 1) == alpha * beta.gen**m
        rows.append({"m": m, "alpha": "(2-beta)/2", "upper_prefix": up, "lower_prefix": low,
                     "orbits_meet": meet})
    return {"rows": rows}


def repro_i21(em):
    sq = nth_root(AlgebraicNumber([-1, -1, 1]), 2)
    d = interval_Ink(2, 1, sq)
    r2 = AlgebraicNumber([-2, 0, 1])
    e = interval_Ink(2, 1, r2)
    return {
        "sqrt_golden": {"lo": em.num(d.lo), "hi": em.num(d.hi),
                        "hi_equals_2_minus_beta2": d.hi == 2 - sq.gen**2},
        "sqrt_two": {"singleton": e.singleton, "point": em.num(e.lo),
                     "equals_1_over_2_plus_sqrt2": e.lo == 1 / (2 + r2.gen)},
    }


REPRODUCTIONS = {
    "greedy-golden": repro_greedy,
    "symmetric-golden": repro_symmetric,
    "lazy-golden": repro_lazy,
    "univoque-14": repro_univoque,
    "sqrt-golden-kneading": repro_sqrt_golden,
    "multinacci-prefixes": repro_multinacci,
    "i21-endpoints": repro_i21,
}


def _golden_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def golden_path(example_id: str):
    return resources.files("ibeta") / "golden" / GOLDEN_VERSION / f"{example_id}.json"


def cmd_reproduce(args, config, em, out):
    ids = list(REPRODUCTIONS) if args.example == "all" else [args.example]
    status = EXIT_OK
    fixed = Emitter(RunConfig(precision=12))
    for ex in ids:
        if ex not in REPRODUCTIONS:
            raise UsageError(f"unknown example {ex!r}; choose from {', '.join(REPRODUCTIONS)}")
        text = _golden_text(REPRODUCTIONS[ex](fixed))
        path = golden_path(ex)
        if args.update:
            with open(str(path), "w") as fh:
                fh.write(text)
            out.write(f"{ex}: written\n")
            continue
        try:
            expected = path.read_text()
        except FileNotFoundError:
            expected = None
        ok = expected == text
        out.write(f"{ex}: {'match' if ok else 'MISMATCH'}\n")
        out.write(text)
        if not ok:
            status = EXIT_GOLDEN
    return status


# wiring ----------------------------------------------------------------------

SIMPLE = {
    "expand": cmd_expand,
    "orbit": cmd_orbit,
    "kneading": cmd_kneading,
    "classify": cmd_classify,
    "admissible": cmd_admissible,
    "graph": cmd_graph,
    "entropy": cmd_entropy,
    "search-sft": cmd_search_sft,
    "region": cmd_region,
    "alpha-nk": cmd_alpha_nk,
    "renorm": cmd_renorm,
    "conjugacy-check": cmd_conjugacy,
    "classify-number": cmd_classify_number,
}
STREAMING = {
    "region-plot": cmd_region_plot,
    "density": cmd_density,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--beta", help="defining polynomial, e.g. z^2-z-1 or [-1,-1,1]")
    common.add_argument("--alpha", help="field element, e.g. 1/3, 1-beta/2, [1,-1]/2")
    common.add_argument("--side", choices=["plus", "minus", "both"], default="plus")
    common.add_argument("--cap", type=_positive_int, help="orbit cap (default from config)")
    common.add_argument("--eps")
    common.add_argument("--n", type=_positive_int)
    common.add_argument("--k", type=_positive_int)
    common.add_argument("--order", type=_positive_int, default=50)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--precision", type=_positive_int, default=12)
    common.add_argument("--refine-floor", type=_positive_int, default=4096)
    common.add_argument("--period-cap", type=_positive_int, default=64)
    common.add_argument("--prefix-len", type=_positive_int, default=48)
    common.add_argument("--strict", action="store_true")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="ibeta", description="Exact intermediate beta-transformations.")
    parser.add_argument("--version", action="version", version=f"ibeta {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    p = add("expand", "first digits of an expansion")
    p.add_argument("--x", required=True)
    p.add_argument("--len", type=_positive_int, default=32)
    p = add("orbit", "exact orbit with cycle detection")
    p.add_argument("--x", required=True)
    p.add_argument("--show", type=_positive_int, default=20, help="states to print")
    add("kneading", "kneading invariants")
    add("classify", "finite type / sofic classification")
    p = add("admissible", "check a word against the kneading pair")
    p.add_argument("--word", required=True)
    add("graph", "follower-set graph of the shift")
    add("entropy", "spectral radius and entropy of the shift graph")
    add("search-sft", "nearby finite-type parameter (multinacci beta)")
    p = add("region", "transitivity verdict and region")
    p.add_argument("--n-max", type=_positive_int)
    p = add("region-plot", "CSV of region boundary curves")
    p.add_argument("--n-max", type=_positive_int, default=4)
    p.add_argument("--samples", type=_positive_int, default=100)
    add("alpha-nk", "renormalised parameter in Q(beta**(1/n))")
    add("renorm", "parameter of the renormalised map")
    p = add("conjugacy-check", "verify the renormalising conjugacy exactly")
    p.add_argument("--samples", type=_positive_int, default=20)
    add("density", "Parry density table")
    add("classify-number", "Pisot / Salem / Perron classification of beta")
    p = add("reproduce", "re-run a reference example and diff against golden output")
    p.add_argument("example", help="example id or 'all'")
    p.add_argument("--update", action="store_true", help="rewrite the golden file")
    return parser


def run(argv, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        if getattr(args, "n_max", None) is not None and args.n_max < 2:
            raise UsageError("--n-max must be at least 2")
        config = RunConfig(
            orbit_cap=args.cap or 10**6,
            refine_floor=args.refine_floor,
            period_cap=args.period_cap,
            prefix_len=args.prefix_len,
            precision=args.precision,
            format=args.format,
        )
        em = Emitter(config)
        if args.command == "reproduce":
            return cmd_reproduce(args, config, em, out)
        if args.command in STREAMING:
            STREAMING[args.command](args, config, em, out)
            return EXIT_OK
        payload = SIMPLE[args.command](args, config, em)
        em.render(payload, out)
        return EXIT_OK
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except ExperimentalRegionHit as exc:
        err.write(f"experimental: {exc}\n")
        return EXIT_EXPERIMENTAL
    except DomainError as exc:
        err.write(f"domain error ({type(exc).__name__}): {exc}\n")
        return EXIT_DOMAIN
    except CapError as exc:
        err.write(f"cap exhausted ({type(exc).__name__}): {exc}\n")
        return EXIT_CAP
    except ZeroDivisionError as exc:
        err.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
