"""Lie algebras given by structure constants, plus a catalog of examples.

A presentation stores one orientation of each nonzero bracket.  Infinite
algebras are cut to a finite degree window; a bracket whose true value falls
outside the window is recorded as *overflowing* rather than dropped.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import as_scalar, fmt_scalar

Combination = dict  # tag -> Fraction


class TruncationOverflow(ArithmeticError):
    """A bracket left the degree window under the reject policy."""


@dataclass(frozen=True)
class BasisSymbol:
    tag: str
    degree: int | None = None


@dataclass(frozen=True)
class TruncationPolicy:
    mode: str = "reject"
    window: tuple[int, int] | None = None

    def __post_init__(self):
        if self.mode not in ("reject", "mark"):
            raise ValueError(f"unknown overflow mode {self.mode!r}")


def natural_key(tag: str):
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", tag))


class LiePresentation:
    """Lie algebra on a finite (possibly windowed) basis."""

    def __init__(
        self,
        basis: Sequence[BasisSymbol],
        brackets: Mapping[tuple[str, str], Mapping[str, object]],
        parts: Mapping[str, Sequence[str]] | None = None,
        window: tuple[int, int] | None = None,
        overflow: Iterable[tuple[str, str]] = (),
        name: str = "",
    ):
        self.basis = tuple(basis)
        self.name = name
        self.tags = tuple(s.tag for s in self.basis)
        if len(set(self.tags)) != len(self.tags):
            raise ValueError("basis tags must be unique")
        self.index = {t: i for i, t in enumerate(self.tags)}
        self._deg = {s.tag: s.degree for s in self.basis}
        graded = [s.degree is not None for s in self.basis]
        if any(graded) and not all(graded):
            raise ValueError("a graded presentation needs a degree on every symbol")
        self.graded = bool(self.basis) and all(graded)
        self.window = tuple(window) if window is not None else None
        table: dict[tuple[str, str], dict[str, Fraction]] = {}
        for (x, y), comb in brackets.items():
            for t in (x, y, *comb):
                if t not in self.index:
                    raise ValueError(f"undeclared symbol {t!r} in bracket")
            clean = {z: as_scalar(c) for z, c in comb.items() if as_scalar(c)}
            if x == y:
                if clean:
                    raise ValueError(f"[{x},{x}] must vanish")
                continue
            sign = 1
            if self.index[x] > self.index[y]:
                x, y, sign = y, x, -1
            clean = {z: sign * c for z, c in clean.items()}
            if (x, y) in table and table[(x, y)] != clean:
                raise ValueError(f"conflicting brackets for ({x}, {y})")
            if clean:
                if self.graded:
                    want = self._deg[x] + self._deg[y]
                    bad = [z for z in clean if self._deg[z] != want]
                    if bad:
                        raise ValueError(f"[{x},{y}] breaks degree additivity at {bad}")
                table[(x, y)] = clean
        self._table = table
        ov = set()
        for x, y in overflow:
            if x not in self.index or y not in self.index:
                raise ValueError("overflow pair uses undeclared symbols")
            if self.index[x] > self.index[y]:
                x, y = y, x
            if (x, y) in table:
                raise ValueError(f"pair ({x}, {y}) is both stored and overflowing")
            ov.add((x, y))
        self._overflow = frozenset(ov)
        self.parts = {k: tuple(v) for k, v in (parts or {}).items()}
        for k, v in self.parts.items():
            for t in v:
                if t not in self.index:
                    raise ValueError(f"part {k!r} names undeclared symbol {t!r}")

    def __repr__(self) -> str:
        return f"LiePresentation({self.name or 'anonymous'}, dim={len(self.tags)})"

    @property
    def dim(self) -> int:
        return len(self.tags)

    def degree(self, tag: str) -> int | None:
        return self._deg[tag]

    def part(self, name: str) -> tuple[str, ...]:
        try:
            return self.parts[name]
        except KeyError:
            raise KeyError(f"{self.name or 'presentation'} has no part {name!r}") from None

    def overflows(self, x: str, y: str) -> bool:
        if self.index[x] > self.index[y]:
            x, y = y, x
        return (x, y) in self._overflow

    @property
    def overflow_pairs(self) -> frozenset:
        return self._overflow

    def bracket(self, x: str, y: str) -> dict[str, Fraction]:
        """Bracket of two basis symbols; raises on an overflowing pair."""
        if x == y:
            return {}
        if self.index[x] > self.index[y]:
            return {z: -c for z, c in self.bracket(y, x).items()}
        if (x, y) in self._overflow:
            raise TruncationOverflow(f"[{x},{y}] leaves the window {self.window}")
        return dict(self._table.get((x, y), {}))

    def bracket_vec(self, u: Mapping[str, Fraction], v: Mapping[str, Fraction]) -> tuple[dict[str, Fraction], bool]:
        """Bracket of two combinations; the flag reports a dropped overflow."""
        out: dict[str, Fraction] = {}
        over = False
        for x, a in u.items():
            if not a:
                continue
            for y, b in v.items():
                if not b:
                    continue
                if self.overflows(x, y):
                    over = True
                    continue
                for z, c in self.bracket(x, y).items():
                    out[z] = out.get(z, 0) + a * b * c
        return {z: c for z, c in out.items() if c}, over

    def stored_brackets(self) -> dict[tuple[str, str], dict[str, Fraction]]:
        return {k: dict(v) for k, v in self._table.items()}

    def with_parts(self, parts: Mapping[str, Sequence[str]]) -> "LiePresentation":
        merged = dict(self.parts)
        merged.update(parts)
        return LiePresentation(self.basis, self._table, merged, self.window, self._overflow, self.name)


# ---------------------------------------------------------------- checks


@dataclass
class JacobiReport:
    passed: bool
    checked: int
    failures: list = field(default_factory=list)
    overflowed: list = field(default_factory=list)


def jacobi_check(p: LiePresentation) -> JacobiReport:
    failures, overflowed, checked = [], [], 0
    for x, y, z in itertools.combinations(p.tags, 3):
        total: dict[str, Fraction] = {}
        over = False
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            if p.overflows(a, b):
                over = True
                break
            inner = p.bracket(a, b)
            res, ov = p.bracket_vec(inner, {c: Fraction(1)})
            if ov:
                over = True
                break
            for k, v in res.items():
                total[k] = total.get(k, 0) + v
        if over:
            overflowed.append((x, y, z))
            continue
        checked += 1
        if any(total.values()):
            failures.append((x, y, z))
    return JacobiReport(not failures, checked, failures, overflowed)


@dataclass
class DecompositionReport:
    passed: bool
    disjoint: bool
    covers: bool
    closed: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)


def decomposition_check(p: LiePresentation, names: Sequence[str]) -> DecompositionReport:
    groups = [set(p.part(n)) for n in names]
    seen: list[str] = [t for g in groups for t in g]
    disjoint = len(seen) == len(set(seen))
    covers = set(seen) == set(p.tags)
    closed, violations = {}, []
    for n, g in zip(names, groups):
        ok = True
        for x, y in itertools.combinations(sorted(g, key=p.index.get), 2):
            if p.overflows(x, y):
                continue
            stray = [z for z in p.bracket(x, y) if z not in g]
            if stray:
                ok = False
                violations.append((n, x, y, tuple(stray)))
        closed[n] = ok
    return DecompositionReport(disjoint and covers and all(closed.values()), disjoint, covers, closed, violations)


# --------------------------------------------------------------- w_n brackets

Poly = dict  # exponent tuple -> Fraction


def _poly_diff(f: Poly, k: int) -> Poly:
    out: Poly = {}
    for m, c in f.items():
        if m[k]:
            mm = list(m)
            mm[k] -= 1
            out[tuple(mm)] = out.get(tuple(mm), 0) + c * m[k]
    return out


def _poly_mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for a, c in f.items():
        for b, d in g.items():
            m = tuple(x + y for x, y in zip(a, b))
            out[m] = out.get(m, 0) + c * d
    return {m: c for m, c in out.items() if c}


def _apply_field(field_: dict[int, Poly], f: Poly) -> Poly:
    out: Poly = {}
    for j, coeff in field_.items():
        for m, c in _poly_mul(coeff, _poly_diff(f, j)).items():
            out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


def witt_bracket(d1: tuple[int, Sequence[int]], d2: tuple[int, Sequence[int]]) -> dict[tuple[int, tuple[int, ...]], Fraction]:
    """Bracket of monomial derivations ``D_i(m) = x^m d/dx_i``.

    Symbols are ``(i, m)`` with ``i`` 1-based.  The result is computed as the
    commutator of the two derivations acting on coordinate functions.
    """
    (i1, m1), (i2, m2) = d1, d2
    m1, m2 = tuple(m1), tuple(m2)
    n = len(m1)
    if len(m2) != n or not (1 <= i1 <= n and 1 <= i2 <= n):
        raise ValueError("derivations come from different w_n")
    X = {i1 - 1: {m1: Fraction(1)}}
    Y = {i2 - 1: {m2: Fraction(1)}}
    out: dict[tuple[int, tuple[int, ...]], Fraction] = {}
    for k in range(n):
        for m, c in _apply_field(X, Y.get(k, {})).items():
            out[(k + 1, m)] = out.get((k + 1, m), 0) + c
        for m, c in _apply_field(Y, X.get(k, {})).items():
            out[(k + 1, m)] = out.get((k + 1, m), 0) - c
    return {k: v for k, v in out.items() if v}


def witt_weight(i: int, m: Sequence[int]) -> tuple[int, ...]:
    """Weight of ``D_i(m)`` under the diagonal torus: ``m - e_i``."""
    return tuple(mk - (1 if k == i - 1 else 0) for k, mk in enumerate(m))


def witt_tag(i: int, m: Sequence[int]) -> str:
    return f"D{i}_" + ".".join(str(x) for x in m)


def parse_witt_tag(tag: str) -> tuple[int, tuple[int, ...]]:
    head, _, tail = tag.partition("_")
    return int(head[1:]), tuple(int(x) for x in tail.split("."))


# --------------------------------------------------------------- catalog


def _sym(tag, degree=None):
    return BasisSymbol(tag, degree)


def _vtag(i: int) -> str:
    return f"e{i}"


def _witt_segment(lo: int, hi: int, name: str, parts_fn, overflow_window: tuple[int, int] | None) -> LiePresentation:
    idx = range(lo, hi + 1)
    basis = [_sym(_vtag(i), i) for i in idx]
    brackets, overflow = {}, []
    for i, j in itertools.combinations(idx, 2):
        s = i + j
        if lo <= s <= hi:
            brackets[(_vtag(i), _vtag(j))] = {_vtag(s): j - i}
        elif overflow_window is not None:
            overflow.append((_vtag(i), _vtag(j)))
    return LiePresentation(basis, brackets, parts_fn(idx), window=(lo, hi) if overflow_window else None,
                           overflow=overflow, name=name)


def _graded_parts(idx):
    neg = [_vtag(i) for i in idx if i < 0]
    zero = [_vtag(i) for i in idx if i == 0]
    pos = [_vtag(i) for i in idx if i > 0]
    parts = {}
    if neg:
        parts["n_-"] = neg
    if zero:
        parts["h"] = zero
    if pos:
        parts["n_+"] = pos
        parts["n"] = pos
    return parts


def solvable2d() -> LiePresentation:
    return LiePresentation([_sym("a", 0), _sym("b", 1)], {("a", "b"): {"b": 1}},
                           {"h": ["a"], "n": ["b"]}, name="solvable2d")


def heisenberg3d() -> LiePresentation:
    return LiePresentation([_sym("a", 1), _sym("b", 2), _sym("c", 3)], {("a", "b"): {"c": 1}},
                           {"n": ["c"]}, name="heisenberg3d")


def sl2() -> LiePresentation:
    return LiePresentation(
        [_sym("f", -1), _sym("h", 0), _sym("e", 1)],
        {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}},
        {"n_-": ["f"], "h": ["h"], "n_+": ["e"], "n": ["e"]},
        name="sl2",
    )


def v_n(n: int, hi: int) -> LiePresentation:
    """Window ``[n, hi]`` of the span of ``e_i``, ``i >= n``."""
    if n < -1:
        raise ValueError("v_n needs n >= -1 to be a subalgebra")
    if hi < n:
        raise ValueError(f"window [{n}, {hi}] is inconsistent with indices starting at {n}")
    return _witt_segment(n, hi, f"v_{n}", _graded_parts, (n, hi))


def v_quotient(n: int, k: int) -> LiePresentation:
    """The finite quotient ``v_n / v_k``."""
    if not (0 <= n < k):
        raise ValueError("v_quotient needs 0 <= n < k")
    return _witt_segment(n, k - 1, f"v_{n}/v_{k}", _graded_parts, None)


def centerless_virasoro(radius: int) -> LiePresentation:
    if radius < 1:
        raise ValueError("window radius must be positive")
    return _witt_segment(-radius, radius, "centerless_virasoro", _graded_parts, (-radius, radius))


def witt_lower(radius: int) -> LiePresentation:
    """Window ``[-radius, 1]`` of the span of ``e_i``, ``i <= 1``; n is ``<e_1>``."""
    if radius < 0:
        raise ValueError("window radius must be nonnegative")
    def parts(idx):
        return {"n": [_vtag(1)]}
    return _witt_segment(-radius, 1, "witt_lower", parts, (-radius, 1))


def witt_w(n: int, cap: int) -> LiePresentation:
    """``w_n`` with exponent vectors of total degree at most ``cap``.

    The grading is the integer weight functional
    ``K * sum(w) + sum_k (k - 1) w_k`` with ``K = n``, which is negative on
    ``n_+``, zero on ``h`` and positive on ``n_-``; for ``n = 1`` it is ``|m| - 1``.
    """
    if n < 1 or cap < 1:
        raise ValueError("witt_w needs n >= 1 and cap >= 1")
    exps = [m for d in range(cap + 1) for m in _compositions(d, n)]
    syms = [(i, m) for m in exps for i in range(1, n + 1)]

    def deg(i, m):
        w = witt_weight(i, m)
        return n * sum(w) + sum(k * wk for k, wk in enumerate(w))

    basis = [_sym(witt_tag(i, m), deg(i, m)) for i, m in syms]
    brackets, overflow = {}, []
    for s, t in itertools.combinations(syms, 2):
        res = witt_bracket(s, t)
        if not res:
            continue
        if any(sum(m) > cap for _, m in res):
            overflow.append((witt_tag(*s), witt_tag(*t)))
        else:
            brackets[(witt_tag(*s), witt_tag(*t))] = {witt_tag(*k): v for k, v in res.items()}
    unit = lambda k: tuple(1 if r == k else 0 for r in range(n))
    n_plus = [witt_tag(i, (0,) * n) for i in range(1, n + 1)]
    n_plus += [witt_tag(j, unit(i - 1)) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    h = [witt_tag(i, unit(i - 1)) for i in range(1, n + 1)]
    taken = set(n_plus) | set(h)
    n_minus = [b.tag for b in basis if b.tag not in taken]
    degs = [b.degree for b in basis]
    return LiePresentation(basis, brackets, {"n_-": n_minus, "h": h, "n_+": n_plus, "n": n_plus},
                           window=(min(degs), max(degs)), overflow=overflow, name=f"witt_w({n})")


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def borel_sl(n: int) -> LiePresentation:
    """Borel subalgebra of ``sl_n`` with Cartan basis dual to the simple roots.

    ``e{i}{j}`` (``i < j``) is the matrix unit ``E_ij``; ``h{k}`` satisfies
    ``[h{k}, e{i}{j}] = e{i}{j}`` when ``i <= k < j`` and 0 otherwise.
    """
    if not (2 <= n <= 9):
        raise ValueError("borel_sl supports 2 <= n <= 9")
    roots = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    e = lambda i, j: f"e{i}{j}"
    hs = [f"h{k}" for k in range(1, n)]
    basis = [_sym(h, 0) for h in hs] + [_sym(e(i, j), j - i) for i, j in roots]
    brackets = {}
    for k in range(1, n):
        for i, j in roots:
            if i <= k < j:
                brackets[(f"h{k}", e(i, j))] = {e(i, j): 1}
    for (i, j), (k, l) in itertools.combinations(roots, 2):
        if j == k:
            brackets[(e(i, j), e(k, l))] = {e(i, l): 1}
        elif l == i:
            brackets[(e(i, j), e(k, l))] = {e(k, j): -1}
    return LiePresentation(basis, brackets, {"h": hs, "n": [e(i, j) for i, j in roots]}, name=f"borel_sl({n})")


def direct_sum(p: LiePresentation, q: LiePresentation, suffixes=("_1", "_2")) -> LiePresentation:
    """Direct sum with tags renamed by suffix; parts are merged by name."""
    sp, sq = suffixes
    basis = [BasisSymbol(s.tag + sp, s.degree) for s in p.basis] + [BasisSymbol(s.tag + sq, s.degree) for s in q.basis]
    if p.graded != q.graded:
        basis = [BasisSymbol(s.tag, None) for s in basis]
    brackets = {}
    for src, suf in ((p, sp), (q, sq)):
        for (x, y), comb in src.stored_brackets().items():
            brackets[(x + suf, y + suf)] = {z + suf: c for z, c in comb.items()}
    parts: dict[str, list[str]] = {}
    for src, suf in ((p, sp), (q, sq)):
        for k, v in src.parts.items():
            parts.setdefault(k, []).extend(t + suf for t in v)
    overflow = [(x + sp, y + sp) for x, y in p.overflow_pairs] + [(x + sq, y + sq) for x, y in q.overflow_pairs]
    return LiePresentation(basis, brackets, parts, None, overflow, f"{p.name}+{q.name}")


CATALOG_NAMES = (
    "solvable2d", "heisenberg3d", "sl2", "v_n", "v_quotient", "centerless_virasoro",
    "witt_w", "borel_sl", "witt_lower",
)


def catalog(name: str, params: Mapping[str, object] | None = None) -> LiePresentation:
    """Build a catalog algebra.

    Parameters by name: ``v_n`` takes ``n`` and ``window=(n, hi)``;
    ``v_quotient`` takes ``n, k``; ``centerless_virasoro`` and ``witt_lower``
    take ``radius``; ``witt_w`` takes ``n, cap``; ``borel_sl`` takes ``n``.
    """
    params = dict(params or {})
    if name == "solvable2d":
        return solvable2d()
    if name == "heisenberg3d":
        return heisenberg3d()
    if name == "sl2":
        return sl2()
    if name == "v_n":
        n = int(params["n"])
        lo, hi = params.get("window", (n, n + 11))
        if lo != n:
            raise ValueError(f"window [{lo}, {hi}] is inconsistent with indices starting at {n}")
        return v_n(n, int(hi))
    if name == "v_quotient":
        return v_quotient(int(params["n"]), int(params["k"]))
    if name == "centerless_virasoro":
        return centerless_virasoro(int(params.get("radius", 12)))
    if name == "witt_lower":
        return witt_lower(int(params.get("radius", 8)))
    if name == "witt_w":
        return witt_w(int(params["n"]), int(params.get("cap", 6)))
    if name == "borel_sl":
        return borel_sl(int(params["n"]))
    raise ValueError(f"unknown catalog algebra {name!r}")


# --------------------------------------------------------------- file format

_TAG = r"[A-Za-z_][A-Za-z0-9_.\-']*"
_TAG_RE = re.compile(rf"^{_TAG}$")


class PresentationSyntaxError(ValueError):
    pass


def parse_presentation(text: str, name: str = "") -> LiePresentation:
    """Parse the line-oriented presentation format.

    When a window is declared on a graded presentation, a pair of distinct
    symbols whose degrees sum outside the window and which has no explicit
    bracket line is treated as overflowing.
    """
    basis: list[BasisSymbol] = []
    brackets: dict[tuple[str, str], dict[str, Fraction]] = {}
    parts: dict[str, list[str]] = {}
    window = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if key == "basis":
                toks = rest.split()
                if not toks or not _TAG_RE.match(toks[0]) or len(toks) > 2:
                    raise PresentationSyntaxError("expected: basis <tag> [degree=<int>]")
                deg = None
                if len(toks) == 2:
                    if not toks[1].startswith("degree="):
                        raise PresentationSyntaxError(f"unknown basis attribute {toks[1]!r}")
                    deg = int(toks[1][len("degree="):])
                basis.append(BasisSymbol(toks[0], deg))
            elif key == "bracket":
                lhs, eq, rhs = rest.partition("=")
                pair = lhs.split()
                if not eq or len(pair) != 2:
                    raise PresentationSyntaxError("expected: bracket <tag> <tag> = <combination>")
                brackets[(pair[0], pair[1])] = _parse_combination(rhs)
            elif key == "part":
                pname, eq, tags = rest.partition("=")
                if not eq or not pname.strip():
                    raise PresentationSyntaxError("expected: part <name> = <tag>,<tag>,...")
                parts[pname.strip()] = [t.strip() for t in tags.split(",") if t.strip()]
            elif key == "window":
                lo, hi = (int(x) for x in rest.split())
                if lo > hi:
                    raise PresentationSyntaxError("window lower bound exceeds upper bound")
                window = (lo, hi)
            else:
                raise PresentationSyntaxError(f"unknown key {key!r}")
        except PresentationSyntaxError as exc:
            raise PresentationSyntaxError(f"line {lineno}: {exc}") from None
        except ValueError as exc:
            raise PresentationSyntaxError(f"line {lineno}: {exc}") from None
    overflow = []
    if window is not None and basis and all(b.degree is not None for b in basis):
        given = {frozenset(k) for k in brackets}
        for s, t in itertools.combinations(basis, 2):
            d = s.degree + t.degree
            if not (window[0] <= d <= window[1]) and frozenset((s.tag, t.tag)) not in given:
                overflow.append((s.tag, t.tag))
    try:
        return LiePresentation(basis, brackets, parts, window, overflow, name)
    except ValueError as exc:
        raise PresentationSyntaxError(str(exc)) from None


def _parse_combination(text: str) -> dict[str, Fraction]:
    text = text.strip()
    if text == "0":
        return {}
    out: dict[str, Fraction] = {}
    toks = text.replace("+", " + ").split()
    sign = Fraction(1)
    coeff = None
    for tok in toks:
        if tok == "+":
            continue
        if tok == "-":
            sign = -sign
            continue
        if _TAG_RE.match(tok) and not re.match(r"^-?\d", tok):
            c = sign * (coeff if coeff is not None else 1)
            out[tok] = out.get(tok, 0) + c
            sign, coeff = Fraction(1), None
        else:
            try:
                coeff = as_scalar(tok)
            except (ValueError, ZeroDivisionError):
                raise PresentationSyntaxError(f"bad coefficient {tok!r}") from None
    if coeff is not None:
        raise PresentationSyntaxError("dangling coefficient without symbol")
    return out


def format_presentation(p: LiePresentation) -> str:
    lines = []
    for s in p.basis:
        lines.append(f"basis {s.tag}" + (f" degree={s.degree}" if s.degree is not None else ""))
    for (x, y), comb in sorted(p.stored_brackets().items(), key=lambda kv: (p.index[kv[0][0]], p.index[kv[0][1]])):
        rhs = " + ".join(f"{fmt_scalar(c)} {z}" for z, c in sorted(comb.items(), key=lambda kv: p.index[kv[0]]))
        lines.append(f"bracket {x} {y} = {rhs}")
    for k, v in p.parts.items():
        lines.append(f"part {k} = {','.join(v)}")
    if p.window is not None:
        lines.append(f"window {p.window[0]} {p.window[1]}")
    return "\n".join(lines) + "\n"


def load_presentation(path: str) -> LiePresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read(), name=path)
