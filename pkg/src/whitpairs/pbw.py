"""Universal enveloping algebras in PBW normal form.

Monomials are stored as nondecreasing tuples of positions in the monomial
order, so ``a^2 b`` is ``(0, 0, 1)`` when ``a < b``.  The order puts the
complement of the chosen subalgebra ``n`` first and ``n`` last, each group
sorted by (degree, tag).
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import RowReducer, as_scalar, fmt_scalar
from .presentations import LiePresentation, TruncationOverflow, TruncationPolicy, natural_key

Mono = tuple


@dataclass(frozen=True)
class StandardMonomial:
    factors: tuple  # ((tag, exponent), ...) increasing in the order

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(t if e == 1 else f"{t}^{e}" for t, e in self.factors)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.factors)


@dataclass(frozen=True)
class MonomialOrder:
    symbols: tuple  # tags in increasing order
    split: int  # symbols[split:] span n

    @property
    def complement(self) -> tuple:
        return self.symbols[: self.split]

    @property
    def n_symbols(self) -> tuple:
        return self.symbols[self.split:]


def default_order(p: LiePresentation, n_part: Sequence[str] = ()) -> MonomialOrder:
    n_set = set(n_part)
    key = lambda t: (p.degree(t) if p.degree(t) is not None else 0, natural_key(t))
    comp = sorted((t for t in p.tags if t not in n_set), key=key)
    tail = sorted((t for t in p.tags if t in n_set), key=key)
    return MonomialOrder(tuple(comp + tail), len(comp))


class PBWAlgebra:
    """U(g) for a presentation with a fixed monomial order."""

    def __init__(self, presentation: LiePresentation, n_part: Sequence[str] = (),
                 order: MonomialOrder | None = None, policy: TruncationPolicy | str = "reject"):
        self.presentation = p = presentation
        if isinstance(policy, str):
            policy = TruncationPolicy(policy, p.window)
        self.policy = policy
        if order is None:
            order = default_order(p, n_part)
        elif n_part and set(order.n_symbols) != set(n_part):
            raise ValueError("order split does not match n_part")
        if sorted(order.symbols) != sorted(p.tags):
            raise ValueError("monomial order must list every basis symbol once")
        self.order = order
        self.symbols = order.symbols
        self.split = order.split
        self.pos = {t: i for i, t in enumerate(self.symbols)}
        self._br: dict[tuple[int, int], tuple | None] = {}
        for i, x in enumerate(self.symbols):
            for j, y in enumerate(self.symbols):
                if i > j:
                    if p.overflows(x, y):
                        self._br[(i, j)] = None
                    else:
                        comb = p.bracket(x, y)
                        self._br[(i, j)] = tuple(sorted((self.pos[z], c) for z, c in comb.items()))
        self._cache: dict = {}
        self._lock = threading.Lock()

    # -- element constructors
    def one(self) -> "UEAElement":
        return UEAElement(self, {(): Fraction(1)})

    def zero(self) -> "UEAElement":
        return UEAElement(self, {})

    def scalar(self, c) -> "UEAElement":
        return UEAElement(self, {(): as_scalar(c)})

    def gen(self, tag: str) -> "UEAElement":
        if tag not in self.pos:
            raise KeyError(f"unknown symbol {tag!r}")
        return UEAElement(self, {(self.pos[tag],): Fraction(1)})

    def element(self, comb: Mapping[str, object]) -> "UEAElement":
        """Degree-one element from a combination of basis symbols."""
        return UEAElement(self, {(self.pos[t],): as_scalar(c) for t, c in comb.items()})

    def monomial(self, mono: Mono) -> "UEAElement":
        return UEAElement(self, {tuple(mono): Fraction(1)})

    def word(self, tags: Iterable[str], coeff=1) -> "UEAElement":
        out = self.scalar(coeff)
        for t in tags:
            out = out * self.gen(t)
        return out

    def normalize(self, raw: Iterable[tuple[object, Sequence[str]]]) -> "UEAElement":
        """Normal form of a raw expression given as ``[(coeff, [tag, ...]), ...]``."""
        out = self.zero()
        for c, tags in raw:
            out = out + self.word(tags, c)
        return out

    def parse(self, expr: str) -> "UEAElement":
        return self.normalize(parse_word_expression(expr, set(self.pos)))

    # -- monomial helpers
    def factors(self, mono: Mono) -> StandardMonomial:
        out: list[tuple[str, int]] = []
        for i in mono:
            t = self.symbols[i]
            if out and out[-1][0] == t:
                out[-1] = (t, out[-1][1] + 1)
            else:
                out.append((t, 1))
        return StandardMonomial(tuple(out))

    def mono_str(self, mono: Mono) -> str:
        return str(self.factors(mono))

    def split_mono(self, mono: Mono) -> tuple[Mono, Mono]:
        k = 0
        while k < len(mono) and mono[k] < self.split:
            k += 1
        return mono[:k], mono[k:]

    def symbol_weight(self, i: int) -> int | None:
        return self.presentation.degree(self.symbols[i])

    # -- straightening
    def _times_gen(self, mono: Mono, g: int) -> tuple[dict, bool]:
        """Normal form of ``mono * x_g`` with an overflow flag."""
        if not mono or mono[-1] <= g:
            return {mono + (g,): Fraction(1)}, False
        key = (mono, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        y, rest = mono[-1], mono[:-1]
        out: dict = {}
        over = False
        # rest * y * g = (rest * g) * y + rest * [y, g]
        left, ov = self._times_gen(rest, g)
        over |= ov
        for m, c in left.items():
            sub, ov = self._times_gen(m, y)
            over |= ov
            _accumulate(out, sub, c)
        br = self._br[(y, g)]
        if br is None:
            if self.policy.mode == "reject":
                a, b = self.symbols[y], self.symbols[g]
                raise TruncationOverflow(f"straightening [{a},{b}] leaves the window {self.presentation.window}")
            over = True
        else:
            for k, c in br:
                sub, ov = self._times_gen(rest, k)
                over |= ov
                _accumulate(out, sub, c)
        res = ({m: c for m, c in out.items() if c}, over)
        with self._lock:
            self._cache[key] = res
        return res

    def mono_mul(self, m1: Mono, m2: Mono) -> tuple[dict, bool]:
        cur = {m1: Fraction(1)}
        over = False
        for g in m2:
            nxt: dict = {}
            for m, c in cur.items():
                sub, ov = self._times_gen(m, g)
                over |= ov
                _accumulate(nxt, sub, c)
            cur = {m: c for m, c in nxt.items() if c}
        return cur, over

    def multiply(self, x: "UEAElement", y: "UEAElement") -> "UEAElement":
        return x * y

    def adjoint_action(self, tag: str, u: "UEAElement") -> "UEAElement":
        x = self.gen(tag)
        return x * u - u * x

    def split_form(self, u: "UEAElement") -> list[tuple[Fraction, StandardMonomial, StandardMonomial]]:
        """Terms of ``u`` as (coeff, complement monomial, n monomial)."""
        out = []
        for m in sorted(u.terms, key=self.sort_key):
            b, a = self.split_mono(m)
            out.append((u.terms[m], self.factors(b), self.factors(a)))
        return out

    def from_split(self, parts: Iterable[tuple[object, StandardMonomial, StandardMonomial]]) -> "UEAElement":
        out = self.zero()
        for c, b, a in parts:
            tags = [t for t, e in b.factors for _ in range(e)] + [t for t, e in a.factors for _ in range(e)]
            out = out + self.word(tags, c)
        return out

    def sort_key(self, mono: Mono):
        return (-len(mono), mono)


def _accumulate(target: dict, src: Mapping, scale) -> None:
    for m, c in src.items():
        target[m] = target.get(m, 0) + c * scale


class UEAElement:
    """Immutable element of U(g) in normal form."""

    __slots__ = ("algebra", "terms", "overflow")

    def __init__(self, algebra: PBWAlgebra, terms: Mapping[Mono, object], overflow: bool = False):
        self.algebra = algebra
        self.terms = {tuple(m): as_scalar(c) for m, c in terms.items() if c}
        self.overflow = overflow

    def _check(self, other: "UEAElement") -> None:
        if other.algebra is not self.algebra:
            raise ValueError("elements live in different enveloping algebras")

    def _coerce(self, other) -> "UEAElement":
        if isinstance(other, UEAElement):
            self._check(other)
            return other
        return self.algebra.scalar(other)

    def __add__(self, other) -> "UEAElement":
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return UEAElement(self.algebra, t, self.overflow or other.overflow)

    __radd__ = __add__

    def __neg__(self) -> "UEAElement":
        return UEAElement(self.algebra, {m: -c for m, c in self.terms.items()}, self.overflow)

    def __sub__(self, other) -> "UEAElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UEAElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UEAElement":
        if not isinstance(other, UEAElement):
            c = as_scalar(other)
            return UEAElement(self.algebra, {m: c * v for m, v in self.terms.items()}, self.overflow)
        self._check(other)
        out: dict = {}
        over = self.overflow or other.overflow
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod, ov = self.algebra.mono_mul(m1, m2)
                over |= ov
                _accumulate(out, prod, c1 * c2)
        return UEAElement(self.algebra, out, over)

    def __rmul__(self, other) -> "UEAElement":
        return self * other

    def __pow__(self, k: int) -> "UEAElement":
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, UEAElement):
            return self.algebra is other.algebra and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def coefficient(self, mono: Mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m in sorted(self.terms, key=self.algebra.sort_key):
            c = self.terms[m]
            body = self.algebra.mono_str(m) if m else ""
            mag = abs(c)
            if body:
                text = body if mag == 1 else f"{fmt_scalar(mag)} {body}"
            else:
                text = fmt_scalar(mag)
            if not pieces:
                pieces.append(("-" if c < 0 else "") + text)
            else:
                pieces.append(("- " if c < 0 else "+ ") + text)
        out = " ".join(pieces)
        return out + (" [overflow]" if self.overflow else "")

    def __repr__(self) -> str:
        return f"UEAElement({self})"


_COEF = re.compile(r"^[+-]?\d+(/\d+)?$")


class WordSyntaxError(ValueError):
    pass


def parse_word_expression(expr: str, symbols: set[str]) -> list[tuple[Fraction, list[str]]]:
    """Parse ``2/3 b a^2 + a`` into ``[(2/3, [b, a, a]), (1, [a])]``."""
    terms: list[tuple[Fraction, list[str]]] = []
    sign = Fraction(1)
    coeff = Fraction(1)
    word: list[str] = []
    started = False

    def flush():
        nonlocal sign, coeff, word, started
        if started:
            terms.append((sign * coeff, word))
        sign, coeff, word, started = Fraction(1), Fraction(1), [], False

    toks = expr.split()
    if not toks:
        raise WordSyntaxError("empty expression")
    for tok in toks:
        if tok in ("+", "-"):
            if started:
                flush()
            if tok == "-":
                sign = -sign
            continue
        if _COEF.match(tok):
            if word:
                raise WordSyntaxError(f"coefficient {tok!r} must precede the factors")
            coeff *= Fraction(tok)
            started = True
            continue
        base, _, exp = tok.partition("^")
        if base not in symbols:
            raise WordSyntaxError(f"unknown symbol {base!r}")
        k = 1
        if exp:
            if not exp.isdigit():
                raise WordSyntaxError(f"bad exponent in {tok!r}")
            k = int(exp)
        word.extend([base] * k)
        started = True
    if not started:
        raise WordSyntaxError("dangling sign")
    flush()
    return terms


# ------------------------------------------------------------ left quotients


class UnsupportedIdealShape(ValueError):
    pass


def ideal_generator(algebra: PBWAlgebra, tag: str, scalar=0, power: int = 1) -> UEAElement:
    return (algebra.gen(tag) - as_scalar(scalar)) ** power


def recognize_generator(g: UEAElement) -> tuple[str, Fraction, int]:
    """Read ``(x - c)^k`` back from its normal form."""
    alg = g.algebra
    letters = {i for m in g.terms for i in m}
    if len(letters) != 1 or g.is_zero():
        raise UnsupportedIdealShape(f"generator {g} is not a power of (symbol - scalar)")
    (i,) = letters
    k = g.degree
    lead = g.coefficient((i,) * k)
    if lead != 1:
        raise UnsupportedIdealShape(f"generator {g} is not monic")
    c = Fraction(0) if k == 1 and () not in g.terms else None
    if c is None:
        c = -g.coefficient((i,) * (k - 1)) / k
    tag = alg.symbols[i]
    if ideal_generator(alg, tag, c, k) != g:
        raise UnsupportedIdealShape(f"generator {g} is not a power of (symbol - scalar)")
    return tag, c, k


class LeftIdealQuotient:
    """U(g) modulo the left ideal generated by powers of (symbol - scalar).

    With all exponents 1 the quotient is induced from the character of the
    subalgebra generated by the symbols, and residues are exact.  With higher
    powers residues are found by elimination inside the PBW filtration,
    pivoting on the largest monomials so the residue basis consists of
    standard monomials.
    """

    def __init__(self, algebra: PBWAlgebra, gens: Sequence[UEAElement | tuple]):
        self.algebra = algebra
        shapes = []
        for g in gens:
            if isinstance(g, UEAElement):
                shapes.append(recognize_generator(g))
            else:
                tag, c, *rest = g
                shapes.append((tag, as_scalar(c), int(rest[0]) if rest else 1))
        tags = [s[0] for s in shapes]
        if len(set(tags)) != len(tags):
            raise UnsupportedIdealShape("each symbol may carry only one generator")
        self.shapes = tuple(shapes)
        self.linear = all(k == 1 for _, _, k in shapes)
        self._rref: dict[int, tuple[RowReducer, dict, list]] = {}
        if self.linear:
            self._setup_character()

    # character path
    def _setup_character(self) -> None:
        p = self.algebra.presentation
        values = {t: c for t, c, _ in self.shapes}
        closure = list(values)
        changed = True
        while changed:
            changed = False
            for x in list(closure):
                for y in list(closure):
                    if x == y or p.overflows(x, y):
                        continue
                    for z in p.bracket(x, y):
                        if z not in values:
                            values[z] = Fraction(0)
                            closure.append(z)
                            changed = True
        for x in closure:
            for y in closure:
                if x != y and not p.overflows(x, y):
                    v = sum(c * values[z] for z, c in p.bracket(x, y).items())
                    if v:
                        raise UnsupportedIdealShape("the scalars do not define a character; the quotient is zero")
        self.values = values
        self.inner = PBWAlgebra(p, n_part=closure, policy=self.algebra.policy)

    def _to_inner(self, u: UEAElement) -> UEAElement:
        if self.inner.order == self.algebra.order:
            return UEAElement(self.inner, u.terms, u.overflow)
        out = self.inner.zero()
        for m, c in u.terms.items():
            out = out + self.inner.word([self.algebra.symbols[i] for i in m], c)
        return out

    def residue(self, u: UEAElement) -> dict[StandardMonomial, Fraction]:
        if u.algebra is not self.algebra:
            raise ValueError("element from a different algebra")
        if self.linear:
            return self._residue_character(u)
        return self._residue_linear(u)

    def _residue_character(self, u: UEAElement) -> dict:
        inner = self._to_inner(u)
        out: dict = {}
        for m, c in inner.terms.items():
            b, a = inner.algebra.split_mono(m)
            val = c
            for i in a:
                val *= self.values[inner.algebra.symbols[i]]
            if val:
                key = inner.algebra.factors(b)
                out[key] = out.get(key, 0) + val
        return {k: v for k, v in out.items() if v}

    # elimination path
    def _system(self, degree: int):
        hit = self._rref.get(degree)
        if hit is not None:
            return hit
        alg = self.algebra
        monos = _monomials_up_to(len(alg.symbols), degree)
        monos.sort(key=lambda m: (-len(m), tuple(-i for i in reversed(m))))
        col = {m: i for i, m in enumerate(monos)}
        red = RowReducer()
        gens = [ideal_generator(alg, t, c, k) for t, c, k in self.shapes]
        for g in gens:
            for m in monos:
                if len(m) + g.degree > degree:
                    continue
                prod = alg.monomial(m) * g
                red.insert({col[x]: c for x, c in prod.terms.items()})
        res = (red, col, monos)
        self._rref[degree] = res
        return res

    def _residue_linear(self, u: UEAElement, slack: int | None = None) -> dict:
        if slack is None:
            slack = max(k for _, _, k in self.shapes)
        red, col, monos = self._system(max(u.degree, 0) + slack)
        r = red.reduce({col[m]: c for m, c in u.terms.items()})
        return {self.algebra.factors(monos[i]): c for i, c in r.items()}

    def basis(self, max_degree: int) -> list[StandardMonomial]:
        """Residue monomials of degree at most ``max_degree``."""
        if self.linear:
            inner = self.inner
            return [inner.factors(m) for m in _monomials_up_to(inner.split, max_degree)]
        slack = max(k for _, _, k in self.shapes)
        red, col, monos = self._system(max_degree + slack)
        out = [monos[i] for i in range(len(monos)) if i not in red.pivots and len(monos[i]) <= max_degree]
        out.sort(key=lambda m: (len(m), m))
        return [self.algebra.factors(m) for m in out]

    def representative(self, mono: StandardMonomial) -> UEAElement:
        alg = self.algebra
        return alg.word([t for t, e in mono.factors for _ in range(e)])


def _monomials_up_to(nsym: int, degree: int) -> list[Mono]:
    out: list[Mono] = [()]
    frontier: list[Mono] = [()]
    for _ in range(degree):
        nxt = []
        for m in frontier:
            start = m[-1] if m else 0
            for i in range(start, nsym):
                nxt.append(m + (i,))
        out.extend(nxt)
        frontier = nxt
    return out


def reduce_mod_left_ideal(u: UEAElement, gens: Sequence[UEAElement | tuple]) -> dict[StandardMonomial, Fraction]:
    return LeftIdealQuotient(u.algebra, gens).residue(u)


def normalize(presentation: LiePresentation, expr: str, n_part: Sequence[str] = (), policy="reject") -> UEAElement:
    return PBWAlgebra(presentation, n_part, policy=policy).parse(expr)
