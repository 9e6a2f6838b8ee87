"""Command-line front end.

Exit codes: 0 for any computed verdict, 2 for usage or parse errors, 3 when a
bracket leaves the window under the reject policy, 4 on an internal
invariant breach.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import re
import sys
from fractions import Fraction
from typing import Callable

from . import homology as H
from . import structure as S
from . import whittaker as W
from .linalg import as_scalar, fmt_scalar
from .pbw import PBWAlgebra, WordSyntaxError
from .presentations import (CATALOG_NAMES, PresentationSyntaxError, TruncationOverflow, catalog, jacobi_check,
                            load_presentation)

EXIT_OK, EXIT_USAGE, EXIT_OVERFLOW, EXIT_INVARIANT = 0, 2, 3, 4

_POSITIONAL = {
    "v_n": ("n", "hi"),
    "v_quotient": ("n", "k"),
    "centerless_virasoro": ("radius",),
    "witt_lower": ("radius",),
    "witt_w": ("n", "cap"),
    "borel_sl": ("n",),
}


class UsageError(ValueError):
    pass


# ------------------------------------------------------------ argument parsing


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise UsageError(f"not an exact rational: {text!r}")
    return as_scalar(text)


def parse_assignment(text: str | None) -> dict[str, Fraction]:
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"expected sym=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_rational(v)
    return out


def parse_window(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    m = re.fullmatch(r"\s*(-?\d+)\s*:\s*(-?\d+)\s*", text)
    if not m:
        raise UsageError(f"window must look like lo:hi, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise UsageError("window lower end exceeds upper end")
    return lo, hi


def load_algebra(source: str, window: tuple[int, int] | None):
    if os.path.exists(source):
        if window is not None:
            raise UsageError("--window applies to catalog algebras only")
        p = load_presentation(source)
    else:
        m = re.fullmatch(r"([A-Za-z_0-9]+)(?:\((.*)\))?", source.strip())
        if not m or m.group(1) not in CATALOG_NAMES:
            raise UsageError(f"unknown algebra {source!r}; catalog: {', '.join(CATALOG_NAMES)}")
        name, args = m.group(1), m.group(2)
        values = [int(a) for a in args.split(",")] if args else []
        names = _POSITIONAL.get(name, ())
        if len(values) > len(names):
            raise UsageError(f"{name} takes at most {len(names)} parameters")
        params = dict(zip(names, values))
        if window is not None:
            if name == "v_n":
                params["window"] = window
                params.setdefault("n", window[0])
            elif name == "centerless_virasoro" and window[0] == -window[1]:
                params["radius"] = window[1]
            elif name == "witt_lower" and window[1] == 1:
                params["radius"] = -window[0]
            else:
                raise UsageError(f"--window {window[0]}:{window[1]} does not fit {name}")
        if name == "v_n" and "hi" in params:
            params["window"] = (params["n"], params.pop("hi"))
        try:
            p = catalog(name, params)
        except KeyError as e:
            raise UsageError(f"{name} needs parameter {e.args[0]}") from None
    rep = jacobi_check(p)
    if not rep.passed:
        raise ArithmeticError(f"presentation fails the Jacobi identity: {rep.failures[:3]}")
    return p


def n_part(args, p) -> list[str]:
    if args.n:
        tags = [t.strip() for t in args.n.split(",") if t.strip()]
        for t in tags:
            if t not in p.index:
                raise UsageError(f"unknown symbol {t!r} in --n")
        return tags
    if "n" in p.parts:
        return list(p.part("n"))
    raise UsageError("--n is required: the presentation declares no part n")


def scalar_or_assignment(text: str | None):
    if text is None:
        return None
    return parse_assignment(text) if "=" in text else parse_rational(text)


# ------------------------------------------------------------ output


def to_tree(obj):
    """JSON-ready form; rationals become ``num/den`` strings."""
    if isinstance(obj, Fraction):
        return fmt_scalar(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, S.Character):
        return {t: fmt_scalar(v) for t, v in obj.values.items()}
    if dataclasses.is_dataclass(obj):
        return {f.name: to_tree(getattr(obj, f.name)) for f in dataclasses.fields(obj) if f.repr}
    if isinstance(obj, dict):
        return {str(k): to_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_tree(v) for v in obj]
    return str(obj)


def dump_tree(tree) -> str:
    return json.dumps(tree, sort_keys=True, indent=2)


def parse_tree(text: str):
    return json.loads(text)


def _dims(xs) -> str:
    return "(" + ",".join(str(x) for x in xs) + ")"


# ------------------------------------------------------------ subcommands


def cmd_check_pair(args):
    p = load_algebra(args.alg, args.window)
    rep = S.whittaker_pair_check(p, n_part(args, p), args.depth)
    word = {S.PAIR: "yes", S.PAIR_WINDOW: "yes (within window)", S.NOT_PAIR: "no"}[rep.verdict]
    text = f"Whittaker pair: {word}\nquasi-nilpotent: {rep.quasi_nilpotent}"
    if rep.reason:
        text += f"\nreason: {rep.reason}"
    return text, rep


def cmd_lcs(args):
    p = load_algebra(args.alg, args.window)
    n = n_part(args, p)
    cs = S.lower_central_series(p, n, args.depth)
    verdict = S.quasi_nilpotent_check(p, n, args.depth)
    lines = []
    for i in range(len(cs.chain)):
        syms = cs.symbols(i)
        body = " ".join(syms) if syms is not None else f"<{cs.dims[i]}-dimensional>"
        flag = " [overflow]" if cs.overflowed[i] else ""
        lines.append(f"n_{i}: dim {cs.dims[i]}: {body}{flag}")
    lines.append(f"quasi-nilpotent: {verdict}")
    tree = {"dims": cs.dims, "levels": [cs.symbols(i) for i in range(len(cs.chain))],
            "overflowed": cs.overflowed, "verdict": verdict}
    return "\n".join(lines), tree


def cmd_pbw_normalize(args):
    if not args.expr:
        raise UsageError("--expr is required")
    p = load_algebra(args.alg, args.window)
    alg = PBWAlgebra(p, (), policy=args.overflow)
    u = alg.parse(args.expr)
    return str(u), {"normal_form": str(u), "overflow": u.overflow}


def cmd_blocks(args):
    p = load_algebra(args.alg, args.window)
    n = n_part(args, p)
    lam = W.character_validate(p, n, parse_assignment(args.lam))
    classes = S.related_characters(p, n, lam, args.depth)
    text = f"lambda = {lam}\nrelated: " + ("; ".join(str(c) for c in classes) or "none")
    return text, {"lambda": lam, "related": classes}


def cmd_whittaker_vectors(args):
    p = load_algebra(args.alg, args.window)
    M = W.standard_module(p, n_part(args, p), parse_assignment(args.lam), policy=args.overflow)
    res = W.whittaker_vectors(M, args.depth)
    return _solve_text(res), res


def cmd_dual_whittaker(args):
    p = load_algebra(args.alg, args.window)
    n = n_part(args, p)
    lam = parse_assignment(args.lam)
    d1 = W.whittaker_vectors_in_dual(p, n, lam, args.depth)
    d2 = W.existence_check(p, n, lam, args.depth) if len(n) < len(p.tags) else d1
    text = f"dual Whittaker dimension: {d1}\ninduced-module route: {d2}\nagree: {'yes' if d1 == d2 else 'no'}"
    if d1 != d2:
        raise ArithmeticError(text)
    return text, {"dimension": d1, "induced_route": d2}


def cmd_verma_dims(args):
    p = load_algebra(args.alg, args.window)
    dims = W.verma_weight_dims(p, args.depth)
    return f"Verma dims: {_dims(dims)}", {"dims": dims}


def _mu(args, p):
    mu = scalar_or_assignment(args.mu)
    if mu is None:
        raise UsageError("--mu is required")
    return W._as_mu(p, mu)


def cmd_simple_dims(args):
    p = load_algebra(args.alg, args.window)
    dims = W.simple_hw_quotient_dims(p, _mu(args, p), args.depth)
    return f"simple quotient dims: {_dims(dims)}", {"dims": dims}


def cmd_star_check(args):
    p = load_algebra(args.alg, args.window)
    rep = W.star_duality_check(p, _mu(args, p), args.depth)
    text = f"highest weight ladder: {_dims(rep.plus)}\nlowest weight ladder: {_dims(rep.minus)}\nequal: {'yes' if rep.equal else 'no'}"
    return text, rep


def _solve_text(res: W.WhittakerSolveResult) -> str:
    lines = [f"depth {res.depth}: solution dimension {res.dimension} ({res.ladder}; {res.note})",
             "per truncation: " + _dims(res.dims_by_truncation)]
    if res.nested is not None:
        lines.append(f"nested: {'yes' if res.nested else 'no'}")
    if res.generic is not None:
        lines.append(f"generic weight up to depth: {'yes' if res.generic else 'no'}")
    for k in sorted(res.components):
        lines.append(f"  [{k}] " + " + ".join(f"{fmt_scalar(c)}*{m}" for m, c in res.components[k]))
    return "\n".join(lines)


def cmd_completion_solve(args):
    p = load_algebra(args.alg, args.window)
    res = W.completion_whittaker_solve(p, _mu(args, p), parse_assignment(args.lam), args.depth, args.ladder)
    return _solve_text(res), res


def cmd_simplicity(args):
    p = load_algebra(args.alg, args.window)
    M = W.standard_module(p, n_part(args, p), parse_assignment(args.lam), policy=args.overflow)
    ev = W.simplicity_certificate(M, args.depth)
    text = (f"simplicity evidence: {'pass' if ev.passed else 'fail'} (depth {ev.depth}; {ev.note})\n"
            f"Whittaker dimension: {ev.whittaker_dim}\ndesignated generator: {ev.designated or '-'}\n"
            f"witness: {ev.witness or '-'}")
    return text, ev


def cmd_ext(args):
    fam = args.family
    if fam == "nonzero":
        lam = scalar_or_assignment(args.lam)
        if not isinstance(lam, Fraction):
            raise UsageError("--lambda must be a bare rational for the nonzero family")
        rep = H.ext_solvable2d_nonzero(lam, args.depth)
        return f"Ext table: {rep.table}", {"table": rep.table, "cokernel_dims": rep.cokernel_dims}
    if fam == "zero":
        mu, nu = scalar_or_assignment(args.mu), scalar_or_assignment(args.nu)
        if not isinstance(mu, Fraction) or not isinstance(nu, Fraction):
            raise UsageError("--mu and --nu must be bare rationals for the zero family")
        t = H.ext_solvable2d_zero(mu, nu)
        return f"Ext table: {t}", {"table": t}
    raise UsageError("--family must be nonzero or zero")


def cmd_ce_ext(args):
    m = re.fullmatch(r"borel_sl\((\d+)\)", args.alg.strip())
    if not m:
        raise UsageError("ce-ext needs --alg borel_sl(n)")
    n = int(m.group(1))
    lam, mu = parse_assignment(args.lam), parse_assignment(args.mu)
    lam2 = parse_assignment(args.lam_target) if args.lam_target is not None else lam
    mu2 = parse_assignment(args.nu) if args.nu is not None else mu
    rep = H.ce_ext1_borel(n, lam, mu, lam2, mu2, args.depth)
    return str(rep), rep


def cmd_kunneth(args):
    if not args.tables:
        raise UsageError("--tables is required, e.g. '0:1,1:1;0:1,1:1'")
    tables = []
    for chunk in args.tables.split(";"):
        t = {}
        for item in filter(None, (s.strip() for s in chunk.split(","))):
            k, _, v = item.partition(":")
            t[int(k)] = int(v)
        tables.append(t)
    if args.k is None:
        tab = H.kunneth_table(tables)
        return f"Kunneth table: {tab}", {"table": tab}
    v = H.kunneth_ext(tables, args.k)
    return f"Ext^{args.k} = {v}", {"degree": args.k, "dimension": v}


def cmd_vk(args):
    if args.k is None:
        raise UsageError("--k is required")
    mu = scalar_or_assignment(args.mu) if args.mu is not None else Fraction(0)
    if not isinstance(mu, Fraction):
        raise UsageError("--mu must be a bare rational")
    rep = H.vk_module(args.k, mu)
    if rep.end_dim != rep.end_dim_joint_kernel or not rep.bracket_ok:
        raise ArithmeticError("V_k endomorphism routes disagree")
    return str(rep), rep


def _rationals(text: str | None) -> list[Fraction]:
    return [parse_rational(x) for x in text.split(",") if x.strip()] if text else []


def cmd_quiver(args):
    verts = _rationals(args.vertices)
    q = H.ext_quiver_assemble(verts, _rationals(args.probes))
    text = str(q)
    tree = to_tree(q)
    if args.k is not None and verts:
        rel = H.quiver_relation_check(args.k, verts)
        text += f"\nrelations on V_{args.k}: {'hold' if rel.holds else 'FAIL'}"
        tree["relations_on_vk"] = to_tree(rel)
    return text, tree


def cmd_annihilator_check(args):
    p = load_algebra(args.alg, args.window)
    if not args.expr:
        raise UsageError("--expr is required (separate several elements with ';')")
    elems = [e.strip() for e in args.expr.split(";") if e.strip()]
    rep = W.annihilator_spot_check(p, _mu(args, p), parse_assignment(args.lam), elems, args.depth)
    lines = [f"{r.element}: verma {'0' if r.kills_verma_window else 'nonzero'}, "
             f"whittaker {'0' if r.kills_whittaker_window else 'nonzero'} -> {r.verdict}" for r in rep.rows]
    lines.append(f"note: {rep.disclaimer}")
    return "\n".join(lines), rep


def cmd_borel_module(args):
    m = re.fullmatch(r"borel_sl\((\d+)\)", args.alg.strip())
    if not m:
        raise UsageError("borel-module needs --alg borel_sl(n)")
    rep = W.borel_simple_module(int(m.group(1)), parse_assignment(args.lam), parse_assignment(args.mu), args.depth)
    text = f"dims: {_dims(rep.dims)}\nproduct of factors: {_dims(rep.product_dims)}\nfactorization: {'ok' if rep.factorization_ok else 'FAIL'}"
    return text, rep


COMMANDS: dict[str, tuple[Callable, str]] = {
    "check-pair": (cmd_check_pair, "decide whether (g, n) is a Whittaker pair"),
    "lcs": (cmd_lcs, "lower central series and quasi-nilpotency"),
    "pbw-normalize": (cmd_pbw_normalize, "PBW normal form of a word expression"),
    "blocks": (cmd_blocks, "characters related to lambda through g/n"),
    "whittaker-vectors": (cmd_whittaker_vectors, "Whittaker vectors in a standard module"),
    "dual-whittaker": (cmd_dual_whittaker, "Whittaker functionals on U(n), two routes"),
    "verma-dims": (cmd_verma_dims, "Verma weight multiplicities"),
    "simple-dims": (cmd_simple_dims, "simple highest weight quotient multiplicities"),
    "star-check": (cmd_star_check, "compare highest and lowest weight ladders"),
    "completion-solve": (cmd_completion_solve, "Whittaker vectors in a truncated completion"),
    "simplicity": (cmd_simplicity, "simplicity certificate for a standard module"),
    "ext": (cmd_ext, "Ext tables for the two-dimensional solvable algebra"),
    "ce-ext": (cmd_ce_ext, "first Ext between simple modules over a Borel"),
    "kunneth": (cmd_kunneth, "combine per-factor Ext tables"),
    "vk": (cmd_vk, "the modules V_k(mu) and their endomorphisms"),
    "quiver": (cmd_quiver, "Ext quiver on a coset window"),
    "annihilator-check": (cmd_annihilator_check, "spot-check annihilator membership"),
    "borel-module": (cmd_borel_module, "simple Borel modules and their factorization"),
}


_STRUCTURAL = {"check-pair", "lcs", "blocks"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="whitpairs", description="Whittaker pairs and their modules")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("catalog", help="list subcommands and catalog algebras")
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--alg", default="solvable2d")
        sp.add_argument("--window")
        sp.add_argument("--depth", type=int)
        sp.add_argument("--n")
        sp.add_argument("--lambda", dest="lam")
        sp.add_argument("--lambda-target", dest="lam_target")
        sp.add_argument("--mu")
        sp.add_argument("--nu")
        sp.add_argument("--expr")
        sp.add_argument("--family", choices=("nonzero", "zero"))
        sp.add_argument("--k", type=int)
        sp.add_argument("--ladder", choices=("verma", "simple"), default="verma")
        sp.add_argument("--tables")
        sp.add_argument("--vertices")
        sp.add_argument("--probes")
        sp.add_argument("--format", choices=("text", "tree"), default="text")
        sp.add_argument("--overflow", choices=("reject", "mark"), default="reject")
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.command == "catalog":
        out.write("subcommands:\n" + "".join(f"  {k}: {h}\n" for k, (_, h) in COMMANDS.items()))
        out.write("algebras:\n" + "".join(f"  {n}\n" for n in CATALOG_NAMES))
        return EXIT_OK
    try:
        args.window = parse_window(args.window)
        if args.depth is None:
            args.depth = S.DEFAULT_DEPTH if args.command in _STRUCTURAL else 6
        elif args.depth < 0:
            raise UsageError("--depth must be nonnegative")
        text, result = COMMANDS[args.command][0](args)
    except TruncationOverflow as e:
        print(f"overflow: {e}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (UsageError, PresentationSyntaxError, WordSyntaxError, W.CharacterError, W.WindowTooSmall,
            KeyError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as e:
        print(f"invariant breach: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    if args.format == "tree":
        tree = result if isinstance(result, dict) and not dataclasses.is_dataclass(result) else to_tree(result)
        tree = {"command": args.command, "result": to_tree(tree)}
        out.write(dump_tree(tree) + "\n")
    else:
        out.write(text + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())
