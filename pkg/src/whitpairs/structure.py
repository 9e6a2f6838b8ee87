"""Structural verdicts for a subalgebra n of a presented Lie algebra g.

Covers the lower central series, quasi-nilpotency, Whittaker-pair checks,
generalized weight decompositions of finite-dimensional n-modules, the
generating step of the block relation, and two local-finiteness desk checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

from .linalg import RowReducer, SparseMatrix, as_scalar, fmt_scalar, kernel_basis, span_basis
from .pbw import PBWAlgebra, UEAElement
from .presentations import LiePresentation, natural_key

DEFAULT_DEPTH = 16

Vec = dict  # tag -> Fraction


class Character:
    """Scalar values on generators of n; unlisted generators map to 0."""

    __slots__ = ("_items",)

    def __init__(self, values: Mapping[str, object] | None = None):
        items = {t: as_scalar(v) for t, v in (values or {}).items()}
        self._items = tuple(sorted((t, v) for t, v in items.items() if v))

    def __call__(self, tag: str) -> Fraction:
        for t, v in self._items:
            if t == tag:
                return v
        return Fraction(0)

    @property
    def values(self) -> dict[str, Fraction]:
        return dict(self._items)

    def on(self, vec: Mapping[str, Fraction]) -> Fraction:
        return sum((c * self(t) for t, c in vec.items()), Fraction(0))

    def __add__(self, other: "Character") -> "Character":
        d = self.values
        for t, v in other.values.items():
            d[t] = d.get(t, 0) + v
        return Character(d)

    def __neg__(self) -> "Character":
        return Character({t: -v for t, v in self._items})

    def is_zero(self) -> bool:
        return not self._items

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __str__(self) -> str:
        if not self._items:
            return "0"
        return ",".join(f"{t}={fmt_scalar(v)}" for t, v in self._items)

    __repr__ = lambda self: f"Character({self})"


# ------------------------------------------------------------ subspaces of g


def _unit(tag: str) -> Vec:
    return {tag: Fraction(1)}


def _reducer(p: LiePresentation, vecs: Iterable[Vec]) -> RowReducer:
    red = RowReducer()
    for v in vecs:
        red.insert({p.index[t]: c for t, c in v.items()})
    return red


def _basis(p: LiePresentation, vecs: Iterable[Vec]) -> list[Vec]:
    return [{p.tags[i]: c for i, c in row.items()} for row in _reducer(p, vecs).basis()]


def check_subalgebra(p: LiePresentation, part: Sequence[str]) -> list[tuple[str, str]]:
    """In-window pairs of ``part`` whose bracket leaves span(part)."""
    s = set(part)
    return [(x, y) for x, y in itertools.combinations(part, 2)
            if not p.overflows(x, y) and any(z not in s for z in p.bracket(x, y))]


@dataclass
class CentralSeries:
    chain: list  # list of bases (tag -> Fraction dicts)
    overflowed: list  # per level: some bracket left the window
    stabilized: bool = False

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.chain]

    def symbols(self, i: int) -> list[str] | None:
        """Tags spanning level i when it is a coordinate subspace, else None."""
        out = []
        for v in self.chain[i]:
            if len(v) != 1:
                return None
            out.extend(v)
        return sorted(out, key=natural_key)


def lower_central_series(p: LiePresentation, part: Sequence[str], depth: int = DEFAULT_DEPTH) -> CentralSeries:
    bad = check_subalgebra(p, part)
    if bad:
        raise ValueError(f"part is not a subalgebra: bracket of {bad[0]} leaves it")
    chain = [_basis(p, (_unit(t) for t in part))]
    overflowed = [False]
    for _ in range(depth):
        prev = chain[-1]
        if not prev:
            break
        vecs, over = [], False
        for v in prev:
            for x in part:
                w, ov = p.bracket_vec(v, _unit(x))
                over |= ov
                if w:
                    vecs.append(w)
        nxt = _basis(p, vecs)
        chain.append(nxt)
        overflowed.append(over)
        if len(nxt) == len(prev) and nxt:
            return CentralSeries(chain, overflowed, stabilized=True)
    return CentralSeries(chain, overflowed)


YES, YES_WINDOW, NO, INCONCLUSIVE = "yes", "yes-within-window", "no", "inconclusive"


def quasi_nilpotent_check(p: LiePresentation, part: Sequence[str], depth: int = DEFAULT_DEPTH) -> str:
    """``yes`` (nilpotent, exact), ``yes-within-window``, ``no`` or ``inconclusive``."""
    s = lower_central_series(p, part, depth)
    if not s.chain[-1]:
        return YES_WINDOW if any(s.overflowed) else YES
    if s.stabilized and not any(s.overflowed):
        return NO
    return INCONCLUSIVE


PAIR, PAIR_WINDOW, NOT_PAIR = "pair", "pair-within-window", "not-pair"


@dataclass
class PairReport:
    verdict: str
    quasi_nilpotent: str
    ad_dims: list
    overflow_counted_as_success: bool = False
    reason: str = ""

    @property
    def is_pair(self) -> bool:
        return self.verdict in (PAIR, PAIR_WINDOW)


def one_sided(p: LiePresentation, part: Sequence[str]) -> bool:
    """All degrees of ``part`` strictly positive, or all strictly negative."""
    if not p.graded or not part:
        return False
    degs = [p.degree(t) for t in part]
    return all(d > 0 for d in degs) or all(d < 0 for d in degs)


def whittaker_pair_check(g: LiePresentation, n: Sequence[str], depth: int = DEFAULT_DEPTH) -> PairReport:
    """Quasi-nilpotency of n plus nilpotency of the n-action on g/n.

    The descending spans ``V_0 = g/n``, ``V_{j+1} = n . V_j`` must reach 0
    within ``depth`` steps.  An overflowing bracket counts as leaving the
    window only when n lies strictly on one side of the grading.
    """
    qn = quasi_nilpotent_check(g, n, depth)
    if qn == NO:
        return PairReport(NOT_PAIR, qn, [], reason="n is not quasi-nilpotent")
    n_set = set(n)
    comp = [t for t in g.tags if t not in n_set]
    sided = one_sided(g, n)
    cur = _basis(g, (_unit(t) for t in comp))
    dims = [len(cur)]
    counted = False
    broken = False
    nilpotent = False
    for _ in range(depth):
        if not cur:
            nilpotent = True
            break
        vecs = []
        for v in cur:
            for x in n:
                w, ov = g.bracket_vec(_unit(x), v)
                if ov:
                    if sided:
                        counted = True
                    else:
                        broken = True
                w = {t: c for t, c in w.items() if t not in n_set}
                if w:
                    vecs.append(w)
        nxt = _basis(g, vecs)
        dims.append(len(nxt))
        if nxt and len(nxt) == len(cur):
            if broken or counted:
                return PairReport(INCONCLUSIVE, qn, dims, counted, "ad-action stabilized after overflow")
            return PairReport(NOT_PAIR, qn, dims, counted, "n acts on g/n with a nonzero stable subspace")
        cur = nxt
    else:
        nilpotent = not cur
    if not nilpotent or broken:
        return PairReport(INCONCLUSIVE, qn, dims, counted, "depth budget exhausted or unsound overflow")
    if qn == INCONCLUSIVE:
        return PairReport(INCONCLUSIVE, qn, dims, counted, "quasi-nilpotency undecided")
    exact = qn == YES and not counted and g.window is None
    return PairReport(PAIR if exact else PAIR_WINDOW, qn, dims, counted)


# ------------------------------------------------------------ finite modules


class FinDimModule:
    """Finite-dimensional module given by action matrices on symbols."""

    def __init__(self, dim: int, actions: Mapping[str, SparseMatrix], presentation: LiePresentation | None = None,
                 check: bool = True):
        self.dim = dim
        self.actions = dict(actions)
        for t, m in self.actions.items():
            if (m.rows, m.cols) != (dim, dim):
                raise ValueError(f"action of {t} has shape {m.rows}x{m.cols}, expected {dim}x{dim}")
        self.presentation = presentation
        if check and presentation is not None:
            bad = self.bracket_violations()
            if bad:
                raise ValueError(f"actions violate the bracket relation for {bad[0]}")

    def bracket_violations(self) -> list[tuple[str, str]]:
        p = self.presentation
        bad = []
        for x, y in itertools.combinations(self.actions, 2):
            if p.overflows(x, y):
                continue
            br = p.bracket(x, y)
            if any(z not in self.actions for z in br):
                continue
            lhs = SparseMatrix.zeros(self.dim, self.dim)
            for z, c in br.items():
                lhs = lhs + self.actions[z].scale(c)
            rx, ry = self.actions[x], self.actions[y]
            if lhs != rx @ ry - ry @ rx:
                bad.append((x, y))
        return bad

    def act(self, tag: str, vec) -> list[Fraction]:
        return self.actions[tag].matvec(vec)

    def tensor(self, other: "FinDimModule") -> "FinDimModule":
        common = [t for t in self.actions if t in other.actions]
        acts = {t: _kron(self.actions[t], SparseMatrix.identity(other.dim)) + _kron(SparseMatrix.identity(self.dim), other.actions[t])
                for t in common}
        return FinDimModule(self.dim * other.dim, acts, self.presentation)

    def restrict(self, basis: Sequence[Sequence[Fraction]]) -> "FinDimModule":
        """Action on an invariant subspace, in the given basis."""
        B = SparseMatrix.from_dense([list(col) for col in zip(*basis)]) if basis else SparseMatrix.zeros(self.dim, 0)
        acts = {}
        for t, m in self.actions.items():
            cols = []
            for v in basis:
                w = m.matvec(v)
                sol = _solve_in_basis(B, w)
                if sol is None:
                    raise ValueError("subspace is not invariant")
                cols.append(sol)
            acts[t] = SparseMatrix.from_dense([list(r) for r in zip(*cols)], len(basis)) if basis else SparseMatrix.zeros(0, 0)
        return FinDimModule(len(basis), acts, self.presentation, check=False)


def _solve_in_basis(B: SparseMatrix, w):
    from .linalg import solve
    return solve(B, w)


def _kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    out = {}
    for (i, j), x in a.entries.items():
        for (k, l), y in b.entries.items():
            out[(i * b.rows + k, j * b.cols + l)] = x * y
    return SparseMatrix(a.rows * b.rows, a.cols * b.cols, out)


def matrix_nilpotency_depth(mats: Sequence[SparseMatrix], budget: int = DEFAULT_DEPTH) -> int | None:
    """Smallest i with the i-th lower central term of the matrix Lie algebra zero."""
    if not mats:
        return 0
    n = mats[0].rows
    flat = lambda m: {i * n + j: v for (i, j), v in m.entries.items()}
    unflat = lambda d: SparseMatrix(n, n, {divmod(k, n): v for k, v in d.items()})
    level = span_basis(flat(m) for m in mats)
    for i in range(budget + 1):
        if not level:
            return i
        nxt = []
        for v in level:
            A = unflat(v)
            for B in mats:
                C = A @ B - B @ A
                if not C.is_zero():
                    nxt.append(flat(C))
        nxt = span_basis(nxt)
        if len(nxt) == len(level):
            return None
        level = nxt
    return None


def rational_eigenvalues(m: SparseMatrix) -> list[Fraction]:
    """Distinct eigenvalues, all of which must be rational."""
    x = sympy.Symbol("x")
    M = sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))
    poly = sympy.Poly(M.charpoly(x).as_expr(), x, domain="QQ")
    vals = []
    total = 0
    for fac, mult in poly.factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            vals.append(Fraction(int(r.p), int(r.q)))
            total += mult
    if total != m.rows:
        raise ValueError("generalized weights are not rational")
    return sorted(set(vals))


def _power(m: SparseMatrix, k: int) -> SparseMatrix:
    out = SparseMatrix.identity(m.rows)
    for _ in range(k):
        out = out @ m
    return out


def _intersect(U: list[list[Fraction]], W: list[list[Fraction]], dim: int) -> list[list[Fraction]]:
    if not U or not W:
        return []
    cols = U + [[-x for x in w] for w in W]
    M = SparseMatrix.from_dense([list(r) for r in zip(*cols)], len(cols))
    out = []
    for k in kernel_basis(M):
        v = [sum((k[i] * U[i][r] for i in range(len(U))), Fraction(0)) for r in range(dim)]
        out.append(v)
    return [list(_dense(b, dim)) for b in span_basis({i: c for i, c in enumerate(v) if c} for v in out)]


def _dense(d: Mapping[int, Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, c in d.items():
        out[i] = c
    return out


def generalized_weight_decomposition(m: FinDimModule, budget: int = DEFAULT_DEPTH) -> dict[Character, list[list[Fraction]]]:
    """Split ``m`` into joint generalized eigenspaces ``M_lambda``."""
    tags = sorted(m.actions)
    if m.dim == 0:
        return {}
    if matrix_nilpotency_depth([m.actions[t] for t in tags], budget) is None:
        raise ValueError("the acting algebra is not nilpotent on this module within the budget")
    pieces: list[tuple[dict, list[list[Fraction]]]] = [({}, [_dense({i: Fraction(1)}, m.dim) for i in range(m.dim)])]
    for t in tags:
        A = m.actions[t]
        gen_spaces = {}
        for c in rational_eigenvalues(A):
            shifted = A - SparseMatrix.identity(m.dim).scale(c)
            gen_spaces[c] = kernel_basis(_power(shifted, m.dim))
        nxt = []
        for chi, space in pieces:
            for c, ge in gen_spaces.items():
                inter = _intersect(space, ge, m.dim)
                if inter:
                    nxt.append(({**chi, t: c}, inter))
        pieces = nxt
    return {Character(chi): space for chi, space in pieces}


def socle_vectors(m: FinDimModule, budget: int = DEFAULT_DEPTH) -> list[tuple[Character, list[Fraction]]]:
    out = []
    for chi in generalized_weight_decomposition(m, budget):
        rows = []
        for t in sorted(m.actions):
            shifted = m.actions[t] - SparseMatrix.identity(m.dim).scale(chi(t))
            rows.extend(shifted.row_dicts())
        K = kernel_basis(SparseMatrix.from_row_dicts(rows, m.dim)) if rows else [
            _dense({i: Fraction(1)}, m.dim) for i in range(m.dim)]
        out.extend((chi, v) for v in K)
    return out


# ------------------------------------------------------------ block relation


def quotient_module(g: LiePresentation, n: Sequence[str]) -> tuple[FinDimModule, list[str]]:
    """The adjoint n-module g/n on in-window coset representatives."""
    n_set = set(n)
    comp = [t for t in g.tags if t not in n_set]
    pos = {t: i for i, t in enumerate(comp)}
    acts = {}
    for x in n:
        entries = {}
        for j, w in enumerate(comp):
            if g.overflows(x, w):
                continue
            for z, c in g.bracket(x, w).items():
                if z in pos:
                    entries[(pos[z], j)] = c
        acts[x] = SparseMatrix(len(comp), len(comp), entries)
    return FinDimModule(len(comp), acts, None), comp


@dataclass
class SimReport:
    related: bool
    classes: list
    reason: str = ""


def related_characters(g: LiePresentation, n: Sequence[str], lam: Character, depth: int = DEFAULT_DEPTH) -> list[Character]:
    """Weight classes of ``g/n (x) L_lam``; together with lam they are its ~-neighbours."""
    Q, comp = quotient_module(g, n)
    if Q.dim == 0:
        return []
    shifted = {x: Q.actions[x] + SparseMatrix.identity(Q.dim).scale(lam(x)) for x in n}
    T = FinDimModule(Q.dim, shifted, None)
    return sorted(generalized_weight_decomposition(T, depth), key=str)


def sim_relation_check(g: LiePresentation, n: Sequence[str], L: Character, S: Character, depth: int = DEFAULT_DEPTH) -> SimReport:
    classes = related_characters(g, n, L, depth)
    if L == S:
        return SimReport(True, classes, "reflexive")
    hit = S in classes
    return SimReport(hit, classes, "S occurs in g/n (x) L" if hit else "S does not occur in g/n (x) L")


# ------------------------------------------------------------ local finiteness


@dataclass
class OrbitReport:
    dims: list
    saturated: bool

    @property
    def dim(self) -> int:
        return self.dims[-1] if self.dims else 0


def _project_off_n(alg: PBWAlgebra, u: UEAElement) -> UEAElement:
    return UEAElement(alg, {m: c for m, c in u.terms.items() if not alg.split_mono(m)[1]}, u.overflow)


def adjoint_local_finiteness_check(g: LiePresentation, n: Sequence[str], u: UEAElement | str,
                                   budget: int = DEFAULT_DEPTH, policy: str = "reject") -> OrbitReport:
    """Orbit of ``u`` under ad(n) in U(g) / U(g)n, measured on the complement basis."""
    alg = PBWAlgebra(g, n, policy=policy)
    if isinstance(u, str):
        u = alg.parse(u)
    elif u.algebra is not alg:
        u = alg.normalize([(c, [t for t, e in u.algebra.factors(m).factors for _ in range(e)]) for m, c in u.terms.items()])
    index: dict = {}
    red = RowReducer()

    def add(v: UEAElement) -> bool:
        row = {}
        for m, c in v.terms.items():
            row[index.setdefault(m, len(index))] = c
        return red.insert(row)

    start = _project_off_n(alg, u)
    frontier = [start] if add(start) else []
    dims = [red.rank]
    for _ in range(budget):
        nxt = []
        for v in frontier:
            for x in n:
                w = _project_off_n(alg, alg.adjoint_action(x, v))
                if add(w):
                    nxt.append(w)
        dims.append(red.rank)
        if not nxt:
            return OrbitReport(dims, True)
        frontier = nxt
    return OrbitReport(dims, False)


@dataclass
class InducedTruncation:
    module: FinDimModule
    labels: list  # (complement monomial string, index in N)
    orbit_dims: list


def _orbit_dim(m: FinDimModule, v: list[Fraction]) -> int:
    red = RowReducer()
    todo = [v]
    red.insert({i: c for i, c in enumerate(v) if c})
    while todo:
        w = todo.pop()
        for A in m.actions.values():
            x = A.matvec(w)
            if red.insert({i: c for i, c in enumerate(x) if c}):
                todo.append(x)
    return red.rank


def induced_module_truncation(g: LiePresentation, n: Sequence[str], N: FinDimModule, depth: int,
                              policy: str = "reject") -> InducedTruncation:
    """``Ind(N)`` cut to complement monomials of degree <= depth, with its n-action."""
    from .pbw import _monomials_up_to
    alg = PBWAlgebra(g, n, policy=policy)
    monos = _monomials_up_to(alg.split, depth)
    labels = [(m, i) for m in monos for i in range(N.dim)]
    pos = {lab: k for k, lab in enumerate(labels)}
    acts = {}
    for x in n:
        xi = alg.pos[x]
        entries: dict = {}
        for (m, i), col in pos.items():
            prod, _ = alg.mono_mul((xi,), m)
            for mono, c in prod.items():
                b, a = alg.split_mono(mono)
                v = _dense({i: Fraction(1)}, N.dim)
                for letter in reversed(a):
                    v = N.actions[alg.symbols[letter]].matvec(v)
                for r, val in enumerate(v):
                    if val:
                        key = (pos[(b, r)], col)
                        entries[key] = entries.get(key, 0) + c * val
        acts[x] = SparseMatrix(len(labels), len(labels), entries)
    M = FinDimModule(len(labels), acts, g)
    orbit = [_orbit_dim(M, _dense({k: Fraction(1)}, len(labels))) for k in range(len(labels))]
    return InducedTruncation(M, [(alg.mono_str(m), i) for m, i in labels], orbit)
