"""Whittaker modules, Whittaker vectors and weight ladders.

Induced modules ``U(g) (x)_{U(c)} C_nu`` are realized on standard monomials in
the complement of ``c``; a basis symbol acts by straightening and then
evaluating the character on the trailing ``c`` letters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import RowReducer, SparseMatrix, as_scalar, fmt_scalar, kernel_basis, rank
from .pbw import PBWAlgebra, UEAElement, _monomials_up_to
from .presentations import LiePresentation, borel_sl, solvable2d
from .structure import Character, one_sided, whittaker_pair_check

Vector = dict  # monomial tuple -> Fraction

DISCLAIMER = ("desk evidence only: pointwise annihilation on a finite depth window, "
              "not an equality of annihilator ideals")


class CharacterError(ValueError):
    pass


class WindowTooSmall(ValueError):
    pass


def character_validate(p: LiePresentation, n: Sequence[str], assignment: Mapping[str, object]) -> Character:
    """Check that ``assignment`` kills every in-window bracket of n."""
    n_set = set(n)
    for t in assignment:
        if t not in n_set:
            raise CharacterError(f"{t!r} is not a generator of n")
    lam = Character(assignment)
    for i, x in enumerate(n):
        for y in n[i + 1:]:
            if p.overflows(x, y):
                continue
            v = lam.on(p.bracket(x, y))
            if v:
                raise CharacterError(f"character is nonzero ({fmt_scalar(v)}) on the commutator [{x},{y}]")
    return lam


# ------------------------------------------------------------ induced modules


class InducedModule:
    """Module induced from a character of the subalgebra spanned by ``sub``."""

    def __init__(self, presentation: LiePresentation, sub: Sequence[str], values: Mapping[str, object] | Character,
                 policy: str = "reject"):
        self.presentation = presentation
        self.sub = tuple(sub)
        self.values = values if isinstance(values, Character) else Character(values)
        self.algebra = PBWAlgebra(presentation, self.sub, policy=policy)
        alg = self.algebra
        self._val = [self.values(alg.symbols[i]) if i >= alg.split else None for i in range(len(alg.symbols))]

    @property
    def complement(self) -> tuple[str, ...]:
        return self.algebra.order.complement

    def one(self) -> Vector:
        return {(): Fraction(1)}

    def _evaluate(self, terms: Mapping) -> Vector:
        out: Vector = {}
        split = self.algebra.split_mono
        for mono, c in terms.items():
            b, a = split(mono)
            for i in a:
                c = c * self._val[i]
                if not c:
                    break
            if c:
                out[b] = out.get(b, 0) + c
        return {m: c for m, c in out.items() if c}

    def act_gen(self, tag: str, vec: Vector) -> Vector:
        i = self.algebra.pos[tag]
        out: Vector = {}
        for m, c in vec.items():
            prod, _ = self.algebra.mono_mul((i,), m)
            for b, v in self._evaluate(prod).items():
                out[b] = out.get(b, 0) + c * v
        return {m: c for m, c in out.items() if c}

    def act(self, u: UEAElement | str, vec: Vector) -> Vector:
        if isinstance(u, str):
            return self.act_gen(u, vec) if u in self.algebra.pos else self.act(self.algebra.parse(u), vec)
        if u.algebra is not self.algebra:
            raise ValueError("element belongs to a different enveloping algebra")
        out: Vector = {}
        for m, c in u.terms.items():
            w = dict(vec)
            for i in reversed(m):
                w = self.act_gen(self.algebra.symbols[i], w)
            for b, v in w.items():
                out[b] = out.get(b, 0) + c * v
        return {m: c for m, c in out.items() if c}

    def basis(self, max_degree: int) -> list[tuple]:
        return _monomials_up_to(self.algebra.split, max_degree)

    def format_vector(self, vec: Vector) -> str:
        return str(UEAElement(self.algebra, vec))


class StandardWhittakerModule(InducedModule):
    """``M_lambda = U(g) (x)_{U(n)} L_lambda`` on complement monomials."""

    def __init__(self, presentation: LiePresentation, n: Sequence[str], lam: Character, policy: str = "reject"):
        super().__init__(presentation, n, lam, policy)
        self.n = tuple(n)
        self.lam = lam


def standard_module(g: LiePresentation, n: Sequence[str], lam: Mapping[str, object] | Character,
                    depth: int = 16, policy: str = "reject") -> StandardWhittakerModule:
    report = whittaker_pair_check(g, n, depth)
    if not report.is_pair:
        raise ValueError(f"({g.name}, n) is not a Whittaker pair: {report.verdict}")
    chi = character_validate(g, list(n), lam.values if isinstance(lam, Character) else lam)
    return StandardWhittakerModule(g, n, chi, policy)


@dataclass
class WhittakerSolveResult:
    depth: int
    dimension: int
    dims_by_truncation: list = field(default_factory=list)
    components: dict = field(default_factory=dict)  # depth -> [(monomial, coeff)]
    ladder: str = ""
    generic: bool | None = None
    nested: bool | None = None
    note: str = "uniqueness is per truncation"


def _slice_kernel(module: InducedModule, gens: Sequence[str], lam: Character, d: int) -> tuple[list, list]:
    monos = module.basis(d)
    col = {m: i for i, m in enumerate(monos)}
    rows: list[dict] = []
    for x in gens:
        block: dict[int, dict] = {}
        for m, j in col.items():
            for b, c in module.act_gen(x, {m: Fraction(1)}).items():
                if b not in col:
                    raise ArithmeticError("n does not preserve the degree slice")
                block.setdefault(col[b], {})[j] = block.get(col[b], {}).get(j, 0) + c
            if lam(x):
                block.setdefault(j, {})[j] = block.get(j, {}).get(j, 0) - lam(x)
        rows.extend(block.values())
    K = kernel_basis(SparseMatrix.from_row_dicts(rows, len(monos))) if rows else [
        [Fraction(int(i == j)) for i in range(len(monos))] for j in range(len(monos))]
    return monos, K


def whittaker_vectors(module: InducedModule, d: int, gens: Sequence[str] | None = None,
                      lam: Character | None = None) -> WhittakerSolveResult:
    """Joint kernel of ``x - lam(x)`` on complement monomials of degree <= d.

    n preserves this slice, so the kernel is exact with no boundary effects.
    """
    if gens is None:
        gens = getattr(module, "n", module.sub)
    if lam is None:
        lam = module.values
    monos, K = _slice_kernel(module, gens, lam, d)
    comps: dict = {}
    if len(K) == 1:
        vec = K[0]
        for m, c in zip(monos, vec):
            if c:
                comps.setdefault(len(m), []).append((module.algebra.mono_str(m), c))
    dims = [len(_slice_kernel(module, gens, lam, t)[1]) for t in range(d + 1)]
    return WhittakerSolveResult(d, len(K), dims, comps, ladder="degree slice", note="exact on the slice")


def _dual_weight(p: LiePresentation, n: Sequence[str]):
    if one_sided(p, n):
        return lambda t: abs(p.degree(t))
    return lambda t: 1


def _monomials_by_weight(symbols: Sequence[int], weight, limit: int) -> list[tuple]:
    """Nondecreasing tuples over ``symbols`` with total weight <= limit."""
    out = [()]
    stack = [((), 0, 0)]
    while stack:
        m, w, start = stack.pop()
        for k in range(start, len(symbols)):
            s = symbols[k]
            nw = w + weight(s)
            if nw <= limit:
                nm = m + (s,)
                out.append(nm)
                stack.append((nm, nw, k))
    return sorted(out, key=lambda m: (sum(weight(s) for s in m), m))


def whittaker_vectors_in_dual(p: LiePresentation, n: Sequence[str], lam: Mapping[str, object] | Character,
                              d: int) -> int:
    """Dimension of functionals on the weight-<= d part of U(n) killing ``(x - lam(x))u``.

    The filtration uses |degree| when n is one-sided graded and PBW length
    otherwise, so products never leave the window when it covers degree d.
    """
    lam = lam if isinstance(lam, Character) else character_validate(p, list(n), lam)
    sub = p_sub(p, n)
    alg = PBWAlgebra(sub, ())
    wt = _dual_weight(p, n)
    wpos = lambda i: wt(alg.symbols[i])
    monos = _monomials_by_weight(range(len(alg.symbols)), wpos, d)
    col = {m: i for i, m in enumerate(monos)}
    rows = []
    for i in range(len(alg.symbols)):
        x = alg.symbols[i]
        for u in monos:
            if wpos(i) + sum(wpos(s) for s in u) > d:
                continue
            prod, over = alg.mono_mul((i,), u)
            if over:
                raise ArithmeticError("product left the window")
            row = {col[m]: c for m, c in prod.items()}
            if lam(x):
                row[col[u]] = row.get(col[u], 0) - lam(x)
            rows.append(row)
    if not rows:
        return len(monos)
    return len(monos) - rank(SparseMatrix.from_row_dicts(rows, len(monos)))


def p_sub(p: LiePresentation, n: Sequence[str]) -> LiePresentation:
    """The subalgebra spanned by ``n`` as a presentation of its own."""
    from .presentations import BasisSymbol
    n_set = set(n)
    basis = [b for b in p.basis if b.tag in n_set]
    br = {k: v for k, v in p.stored_brackets().items() if k[0] in n_set and k[1] in n_set}
    ov = [k for k in p.overflow_pairs if k[0] in n_set and k[1] in n_set]
    for v in br.values():
        if any(z not in n_set for z in v):
            raise ValueError("n is not a subalgebra")
    return LiePresentation(basis, br, {}, p.window, ov, f"{p.name}:n")


def existence_check(g: LiePresentation, n: Sequence[str], lam: Mapping[str, object] | Character, d: int,
                    a_character: Mapping[str, object] | None = None) -> int:
    """Whittaker functionals on ``Ind_a^g(L)`` with ``g = a + n``, cut at weight d.

    ``Ind_a^g(L)`` is realized on U(n) through straightening in U(g), giving a
    route independent of :func:`whittaker_vectors_in_dual`.
    """
    lam = lam if isinstance(lam, Character) else character_validate(g, list(n), lam)
    n_set = set(n)
    a = [t for t in g.tags if t not in n_set]
    M = InducedModule(g, a, a_character or {})
    alg = M.algebra
    wt = _dual_weight(g, n)
    wpos = lambda i: wt(alg.symbols[i])
    npos = [alg.pos[t] for t in n]
    # complement of a is n; monomials are tuples of n positions
    monos = _monomials_by_weight(sorted(npos), wpos, d)
    col = {m: i for i, m in enumerate(monos)}
    rows = []
    for i in npos:
        x = alg.symbols[i]
        for u in monos:
            if wpos(i) + sum(wpos(s) for s in u) > d:
                continue
            row = {col[m]: c for m, c in M.act_gen(x, {u: Fraction(1)}).items()}
            if lam(x):
                row[col[u]] = row.get(col[u], 0) - lam(x)
            rows.append(row)
    if not rows:
        return len(monos)
    return len(monos) - rank(SparseMatrix.from_row_dicts(rows, len(monos)))


# ------------------------------------------------------------ weight ladders


class Triangular:
    """Triangular data ``g = n_- + h + n_+`` with depth measured by |degree|."""

    def __init__(self, g: LiePresentation):
        for part in ("n_-", "h", "n_+"):
            if part not in g.parts:
                raise ValueError(f"{g.name} has no part {part!r}")
        if not g.graded:
            raise ValueError("triangular ladders need a graded presentation")
        self.g = g
        self.lower = g.part("n_-")
        self.h = g.part("h")
        self.upper = g.part("n_+")
        sl, su = one_sided(g, self.lower), one_sided(g, self.upper)
        if not (sl and su):
            raise ValueError("n_- and n_+ must each sit strictly on one side of the grading")

    def side(self, orientation: str) -> tuple[tuple, tuple]:
        """(lowering symbols, raising symbols) for a highest (+) or lowest (-) weight ladder."""
        if orientation == "+":
            return self.lower, self.upper
        if orientation == "-":
            return self.upper, self.lower
        raise ValueError("orientation must be '+' or '-'")

    def check_window(self, d: int) -> None:
        g = self.g
        if g.window is None:
            return
        lo, hi = g.window
        sums = [g.degree(x) + g.degree(y) for x, y in g.overflow_pairs]
        cut_low, cut_high = any(s < lo for s in sums), any(s > hi for s in sums)
        for part in (self.lower, self.upper):
            if not part:
                continue
            short = (cut_low and lo > -d) if g.degree(part[0]) < 0 else (cut_high and hi < d)
            if short:
                raise WindowTooSmall(f"window [{lo},{hi}] does not reach depth {d}")

    def module(self, mu: Character, orientation: str = "+") -> InducedModule:
        _, raising = self.side(orientation)
        return InducedModule(self.g, tuple(self.h) + tuple(raising), mu)

    def monomials(self, module: InducedModule, symbols: Sequence[str], k: int) -> list[tuple]:
        alg = module.algebra
        pos = sorted(alg.pos[t] for t in symbols if abs(self.g.degree(t)) <= k)
        w = lambda i: abs(self.g.degree(alg.symbols[i]))
        return [m for m in _monomials_by_weight(pos, w, k) if sum(w(i) for i in m) == k]


def _as_mu(g: LiePresentation, mu) -> Character:
    if isinstance(mu, Character):
        return mu
    if isinstance(mu, Mapping):
        return Character(mu)
    h = g.part("h")
    if len(h) != 1:
        raise ValueError("a bare scalar weight needs a one-dimensional h")
    return Character({h[0]: as_scalar(mu)})


def verma_weight_dims(g: LiePresentation, d: int, orientation: str = "+") -> list[int]:
    T = Triangular(g)
    T.check_window(d)
    lowering, _ = T.side(orientation)
    M = T.module(Character(), orientation)
    return [len(T.monomials(M, lowering, k)) for k in range(d + 1)]


def pairing_matrix(g: LiePresentation, mu, k: int, orientation: str = "+") -> SparseMatrix:
    """Coefficient of the extremal line in (raising_i)(lowering_j) v_mu at depth k."""
    T = Triangular(g)
    M = T.module(_as_mu(g, mu), orientation)
    lowering, raising = T.side(orientation)
    cols = T.monomials(M, lowering, k)
    rows = T.monomials(M, raising, k)
    alg = M.algebra
    entries = {}
    for j, low in enumerate(cols):
        for i, r in enumerate(rows):
            v = {low: Fraction(1)}
            for letter in reversed(r):
                v = M.act_gen(alg.symbols[letter], v)
                if not v:
                    break
            c = v.get((), 0)
            if c:
                entries[(i, j)] = c
    return SparseMatrix(len(rows), len(cols), entries)


def simple_hw_quotient_dims(g: LiePresentation, mu, d: int, orientation: str = "+") -> list[int]:
    T = Triangular(g)
    T.check_window(d)
    return [rank(pairing_matrix(g, mu, k, orientation)) for k in range(d + 1)]


@dataclass
class StarDualityReport:
    equal: bool
    plus: list
    minus: list


def star_duality_check(g: LiePresentation, mu, d: int) -> StarDualityReport:
    mu = _as_mu(g, mu)
    plus = simple_hw_quotient_dims(g, mu, d, "+")
    minus = simple_hw_quotient_dims(g, -mu, d, "-")
    return StarDualityReport(plus == minus, plus, minus)


def _depth(T: Triangular, alg: PBWAlgebra, mono: tuple) -> int:
    return sum(abs(T.g.degree(alg.symbols[i])) for i in mono)


def _completion_system(T: Triangular, M: InducedModule, lam: Character, d: int, ladder: str):
    g = T.g
    alg = M.algebra
    lowering, raising = T.side("+")
    by_depth = [T.monomials(M, lowering, k) for k in range(d + 1)]
    unknowns = [m for layer in by_depth for m in layer]
    col = {m: i for i, m in enumerate(unknowns)}
    P = [pairing_matrix(g, M.values, k) for k in range(d + 1)] if ladder == "simple" else None
    row_idx = [{m: i for i, m in enumerate(layer)} for layer in by_depth]
    rows = []
    gens = [x for x in raising if abs(g.degree(x)) <= d]
    for x in gens:
        s = abs(g.degree(x))
        for j in range(0, d - s + 1):
            # equation at depth j: x v_{j+s} - lam(x) v_j
            eq: dict[int, dict[int, Fraction]] = {}  # depth-j coordinate -> {unknown: coeff}
            for m in by_depth[j + s]:
                for b, c in M.act_gen(x, {m: Fraction(1)}).items():
                    r = row_idx[j][b]
                    eq.setdefault(r, {})[col[m]] = eq.get(r, {}).get(col[m], 0) + c
            if lam(x):
                for m in by_depth[j]:
                    r = row_idx[j][m]
                    eq.setdefault(r, {})[col[m]] = eq.get(r, {}).get(col[m], 0) - lam(x)
            if P is None:
                rows.extend(eq.values())
            else:
                proj: dict[int, dict[int, Fraction]] = {}
                for (i, r), p in P[j].entries.items():
                    for u, c in eq.get(r, {}).items():
                        proj.setdefault(i, {})[u] = proj.get(i, {}).get(u, 0) + p * c
                rows.extend(proj.values())
    radical = 0
    if P is not None:
        radical = sum(P[k].cols - rank(P[k]) for k in range(d + 1))
    return unknowns, by_depth, rows, radical


def completion_whittaker_solve(g: LiePresentation, mu, lam: Mapping[str, object] | Character, d: int,
                               ladder: str = "verma") -> WhittakerSolveResult:
    """Whittaker vectors in the depth-<= d truncation of the completed ladder.

    ``ladder="verma"`` works in Verma coordinates; ``ladder="simple"`` imposes
    the equations modulo the radical of the pairing and counts solutions in
    the simple quotient.
    """
    if ladder not in ("verma", "simple"):
        raise ValueError("ladder must be 'verma' or 'simple'")
    T = Triangular(g)
    T.check_window(d)
    mu = _as_mu(g, mu)
    lam = lam if isinstance(lam, Character) else character_validate(g, list(T.upper), lam)
    M = T.module(mu, "+")
    dims, sols = [], []
    for t in range(d + 1):
        unknowns, by_depth, rows, radical = _completion_system(T, M, lam, t, ladder)
        K = kernel_basis(SparseMatrix.from_row_dicts(rows, len(unknowns))) if rows else [
            [Fraction(int(i == j)) for i in range(len(unknowns))] for j in range(len(unknowns))]
        dims.append(len(K) - radical)
        sols.append((unknowns, K))
    unknowns, K = sols[-1]
    comps: dict = {}
    if ladder == "verma" and len(K) == 1:
        vec = K[0]
        lead = next((c for c in vec if c), Fraction(1))
        for m, c in zip(unknowns, vec):
            if c:
                comps.setdefault(_depth(T, M.algebra, m), []).append((M.algebra.mono_str(m), c / lead))
    nested = None
    if ladder == "verma":
        nested = True
        for t in range(d):
            small_u, small_K = sols[t]
            big_u, big_K = sols[t + 1]
            idx = {m: i for i, m in enumerate(big_u)}
            red = RowReducer()
            for v in small_K:
                red.insert({i: c for i, c in enumerate(v) if c})
            for v in big_K:
                r = {i: v[idx[m]] for i, m in enumerate(small_u) if v[idx[m]]}
                if not red.contains(r):
                    nested = False
    verma = verma_weight_dims(g, d)
    simple = simple_hw_quotient_dims(g, mu, d)
    return WhittakerSolveResult(d, dims[-1], dims, comps, ladder, generic=(verma == simple), nested=nested)


# ------------------------------------------------------------ certificates


@dataclass
class SimplicityEvidence:
    passed: bool
    unique_whittaker: bool
    whittaker_dim: int
    reduces_degree: bool
    designated: str | None
    witness: str | None
    depth: int
    note: str = "certificate is bounded by the truncation depth"


def simplicity_certificate(module: StandardWhittakerModule, depth: int) -> SimplicityEvidence:
    res = whittaker_vectors(module, depth)
    unique = res.dimension == 1
    designated, witness, reduces = None, None, False
    candidates = [x for x in module.n if module.lam(x)]
    for x in candidates:
        inv = 1 / module.lam(x)
        bad = None
        for m in module.basis(depth):
            if not m:
                continue
            w = dict({m: Fraction(1)})
            for b, c in module.act_gen(x, {m: Fraction(1)}).items():
                w[b] = w.get(b, 0) - inv * c
            top = max((len(b) for b, c in w.items() if c), default=-1)
            if top >= len(m):
                bad = module.algebra.mono_str(m)
                break
        if bad is None:
            designated, reduces, witness = x, True, None
            break
        witness = f"{x}: {bad}"
    if not candidates:
        witness = "character vanishes on every generator"
    if not unique and witness is None:
        witness = f"Whittaker space has dimension {res.dimension}"
    return SimplicityEvidence(unique and reduces, unique, res.dimension, reduces, designated, witness, depth)


@dataclass
class BorelModuleReport:
    n: int
    simple_roots_lambda: list  # indices k with lambda(e_k,k+1) != 0
    dims: list
    product_dims: list
    factorization_ok: bool
    module: InducedModule = field(repr=False, default=None)


def borel_simple_module(n: int, lam: Mapping[str, object], mu: Mapping[str, object], depth: int) -> BorelModuleReport:
    """``L_{lambda,mu}`` for the Borel of ``sl_n`` and its per-root factorization."""
    b = borel_sl(n)
    chi = character_validate(b, list(b.part("n")), lam)
    simple = [f"e{k}{k + 1}" for k in range(1, n)]
    for t in chi.values:
        if t not in simple:
            raise CharacterError(f"character must vanish off simple roots, got {t}")
    active = [k for k in range(1, n) if chi(f"e{k}{k + 1}")]
    h_lam = [f"h{k}" for k in range(1, n) if k not in active]
    for t in mu:
        if t not in h_lam:
            raise ValueError(f"mu is defined on {sorted(h_lam)}, got {t}")
    values = dict(chi.values)
    values.update({t: as_scalar(v) for t, v in mu.items()})
    M = InducedModule(b, tuple(b.part("n")) + tuple(h_lam), values)
    alg = M.algebra
    monos = M.basis(depth)
    dims = [sum(1 for m in monos if len(m) == k) for k in range(depth + 1)]
    # per-root factors: C[a] for active roots, one-dimensional otherwise
    product = [0] * (depth + 1)
    product[0] = 1
    for _ in active:
        product = [sum(product[:k + 1]) for k in range(depth + 1)]
    factors = {k: StandardWhittakerModule(solvable2d(), ["b"], Character({"b": chi(f"e{k}{k + 1}")})) for k in active}
    ok = dims == product

    def exps(m):
        return {k: sum(1 for i in m if alg.symbols[i] == f"h{k}") for k in active}

    def from_exps(e):
        return tuple(sorted(i for k in active for i in [alg.pos[f"h{k}"]] * e[k]))

    for m in monos:
        e = exps(m)
        for k in range(1, n):
            got = M.act_gen(f"e{k}{k + 1}", {m: Fraction(1)})
            if k in active:
                F = factors[k]
                want = {}
                for fm, c in F.act_gen("b", {(F.algebra.pos["a"],) * e[k]: Fraction(1)}).items():
                    ee = dict(e)
                    ee[k] = len(fm)
                    want[from_exps(ee)] = c
            else:
                want = {}
            ok &= got == want
            got_h = M.act_gen(f"h{k}", {m: Fraction(1)})
            if k in active:
                if len(m) < depth:
                    ee = dict(e)
                    ee[k] += 1
                    ok &= got_h == {from_exps(ee): Fraction(1)}
            else:
                val = as_scalar(mu.get(f"h{k}", 0))
                ok &= got_h == ({m: val} if val else {})
        for (i, j) in [(i, j) for i in range(1, n + 1) for j in range(i + 2, n + 1)]:
            ok &= not M.act_gen(f"e{i}{j}", {m: Fraction(1)})
    return BorelModuleReport(n, active, dims, product, bool(ok), M)


# ------------------------------------------------------------ annihilators


def casimir_sl2(alg: PBWAlgebra) -> UEAElement:
    e, f, h = alg.gen("e"), alg.gen("f"), alg.gen("h")
    return e * f + f * e + h * h * Fraction(1, 2)


@dataclass
class AnnihilatorVerdict:
    element: str
    kills_verma_window: bool
    kills_whittaker_window: bool
    verdict: str


@dataclass
class AnnihilatorReport:
    mu: str
    lam: str
    depth: int
    rows: list
    disclaimer: str = DISCLAIMER


def annihilator_spot_check(g: LiePresentation, mu, lam: Mapping[str, object] | Character,
                           elements: Sequence[str | UEAElement], d: int) -> AnnihilatorReport:
    T = Triangular(g)
    T.check_window(d)
    mu = _as_mu(g, mu)
    lam = lam if isinstance(lam, Character) else character_validate(g, list(T.upper), lam)
    M = T.module(mu, "+")
    alg = M.algebra
    sol = completion_whittaker_solve(g, mu, lam, d)
    unknowns, by_depth, rows, _ = _completion_system(T, M, lam, d, "verma")
    K = kernel_basis(SparseMatrix.from_row_dicts(rows, len(unknowns))) if rows else []
    w = {m: c for m, c in zip(unknowns, K[0]) if c} if len(K) == 1 else None
    verma_basis = [m for layer in by_depth for m in layer]
    out = []
    for u in elements:
        if isinstance(u, str):
            u = alg.parse(u)
        elif u.algebra is not alg:
            u = alg.normalize([(c, [t for t, e in u.algebra.factors(m).factors for _ in range(e)]) for m, c in u.terms.items()])
        shifts = []
        for m in u.terms:
            shifts.append(sum((abs(g.degree(alg.symbols[i])) if alg.symbols[i] in T.lower else
                               -abs(g.degree(alg.symbols[i])) if alg.symbols[i] in T.upper else 0) for i in m))
        kills_verma = all(not M.act(u, {m: Fraction(1)}) for m in verma_basis)
        kills_w = None
        if w is not None:
            img = M.act(u, w)
            bound = d + min(shifts, default=0)
            kills_w = all(_depth(T, alg, m) > bound for m in img)
        if kills_verma and kills_w:
            verdict = "consistent with membership in Ann M(mu) on the window"
        elif kills_w and not kills_verma:
            verdict = ("NOT in Ann M(mu): it kills the Whittaker vector only; "
                       "annihilating one vector is not annihilating the module")
        elif kills_verma:
            verdict = "kills the Verma window but not the Whittaker vector: disagreement"
        else:
            verdict = "NOT in Ann M(mu)"
        out.append(AnnihilatorVerdict(str(u), kills_verma, bool(kills_w), verdict))
    return AnnihilatorReport(str(mu), str(lam), d, out)
