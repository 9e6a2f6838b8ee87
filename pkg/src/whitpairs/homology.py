"""Free resolutions, Ext tables and the quiver of the two-dimensional solvable algebra.

A resolution is a chain of free right-multiplication maps between free
U(g)-modules.  Applying ``Hom(-, T)`` turns each matrix entry into its left
action on the target ``T``; targets are realized as induced modules and
truncated by PBW degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import SparseMatrix, as_scalar, fmt_scalar, intersect_with_coordinates, kernel_basis, rank
from .pbw import LeftIdealQuotient, PBWAlgebra, UEAElement
from .presentations import LiePresentation, borel_sl, solvable2d
from .structure import Character
from .whittaker import CharacterError, InducedModule, character_validate


class ExtTable(dict):
    """Cohomological degree -> dimension; zero entries are dropped."""

    def __init__(self, data: Mapping[int, int] | None = None):
        super().__init__({int(k): int(v) for k, v in (data or {}).items() if v})

    def __getitem__(self, k: int) -> int:
        return self.get(k, 0)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{k}:{v}" for k, v in sorted(self.items())) + "}"

    __repr__ = __str__


# ------------------------------------------------------------ resolutions


@dataclass
class ComplexStep:
    """``P_p = U^ranks[p]`` with ``maps[p-1]`` of shape ``ranks[p] x ranks[p-1]``.

    Row ``i`` of a map lists the images ``u e_i -> sum_j u * entry[i][j] e_j``.
    """

    algebra: PBWAlgebra
    ranks: list
    maps: list

    def composition_violations(self) -> list[tuple[int, int, int]]:
        bad = []
        for p in range(1, len(self.maps)):
            hi, lo = self.maps[p], self.maps[p - 1]
            for i in range(self.ranks[p + 1]):
                for ell in range(self.ranks[p - 1]):
                    acc = self.algebra.zero()
                    for j in range(self.ranks[p]):
                        acc = acc + hi[i][j] * lo[j][ell]
                    if not acc.is_zero():
                        bad.append((p, i, ell))
        return bad

    def check(self) -> None:
        bad = self.composition_violations()
        if bad:
            raise ArithmeticError(f"differentials do not compose to zero at {bad[:3]}")


class TargetModule:
    """An induced module used as coefficients, filtered by monomial length."""

    def __init__(self, module: InducedModule, finite: bool = False):
        self.module = module
        self.finite = finite
        self._moved: dict = {}

    def basis(self, depth: int) -> list[tuple]:
        return self.module.basis(depth)

    def transport(self, u: UEAElement) -> UEAElement:
        key = (id(u.algebra), frozenset(u.terms.items()))
        hit = self._moved.get(key)
        if hit is None:
            alg = self.module.algebra
            hit = alg.zero()
            for m, c in u.terms.items():
                hit = hit + alg.word([u.algebra.symbols[i] for i in m], c)
            self._moved[key] = hit
        return hit

    def act(self, u: UEAElement, vec: dict) -> dict:
        return self.module.act(self.transport(u), vec)


def _cochain_images(step: ComplexStep, p: int, target: TargetModule, depth: int, index: dict) -> list[dict]:
    """Images of the basis of ``C^p_{<=depth}`` under the coboundary into ``C^{p+1}``."""
    D = step.maps[p]  # P_{p+1} -> P_p
    out = []
    for j in range(step.ranks[p]):
        for m in target.basis(depth):
            vec: dict = {}
            for i in range(step.ranks[p + 1]):
                entry = D[i][j]
                if entry.is_zero():
                    continue
                for b, c in target.act(entry, {m: Fraction(1)}).items():
                    k = index.setdefault((i, b), len(index))
                    vec[k] = vec.get(k, 0) + c
            out.append({k: c for k, c in vec.items() if c})
    return out


def truncated_cohomology(step: ComplexStep, target: TargetModule, depth: int, slack: int = 1) -> ExtTable:
    """``H^p = ker(d_p on C^p_{<=D}) / (d_{p-1}(C^{p-1}_{<=D+slack}) cap C^p_{<=D})``."""
    top = len(step.ranks) - 1
    dims = {}
    for p in range(top + 1):
        n = step.ranks[p] * len(target.basis(depth))
        if p < top:
            index: dict = {}
            imgs = _cochain_images(step, p, target, depth, index)
            ker = n - rank(SparseMatrix.from_row_dicts(imgs, len(index)))
        else:
            ker = n
        bnd = 0
        if p > 0:
            index = {(i, b): k for k, (i, b) in enumerate(
                (i, b) for i in range(step.ranks[p]) for b in target.basis(depth))}
            allowed = set(index.values())
            imgs = _cochain_images(step, p - 1, target, depth + slack, index)
            bnd = len(intersect_with_coordinates(imgs, allowed))
        dims[p] = ker - bnd
    return ExtTable(dims)


@dataclass
class ExtReport:
    table: ExtTable
    truncation: int
    stable: bool
    note: str = ""

    def __str__(self) -> str:
        return str(self.table)


def ext_from_resolution(step: ComplexStep, target: TargetModule, truncation: int, slack: int = 1) -> ExtReport:
    step.check()
    if target.finite:
        return ExtReport(truncated_cohomology(step, target, 0, slack), 0, True, "exact: finite-dimensional target")
    a = truncated_cohomology(step, target, truncation, slack)
    b = truncated_cohomology(step, target, truncation + 1, slack)
    return ExtReport(a, truncation, a == b, "truncated by degree; stable over two consecutive truncations" if a == b
                     else "NOT stable over two consecutive truncations")


def _res_algebra() -> PBWAlgebra:
    return PBWAlgebra(solvable2d())


def resolution_standard(alg: PBWAlgebra, lam) -> ComplexStep:
    """``0 -> U --.(b - lam)--> U -> M_lam``."""
    lam = as_scalar(lam)
    return ComplexStep(alg, [1, 1], [[[alg.gen("b") - lam]]])


def resolution_simple(alg: PBWAlgebra, mu) -> ComplexStep:
    """Koszul resolution of the one-dimensional module with ``a = mu``, ``b = 0``.

    Coordinates of ``U^2`` are (a, b).
    """
    mu = as_scalar(mu)
    a, b = alg.gen("a"), alg.gen("b")
    d1 = [[a - mu], [b]]
    d2 = [[-b, a - mu - 1]]
    return ComplexStep(alg, [1, 2, 1], [d1, d2])


def _target(kind: str, value, g: LiePresentation | None = None) -> TargetModule:
    g = g or solvable2d()
    value = as_scalar(value)
    if kind == "M":
        if not value:
            raise ValueError("M_lambda needs lambda != 0")
        return TargetModule(InducedModule(g, ["b"], {"b": value}))
    if kind == "L":
        return TargetModule(InducedModule(g, ["a", "b"], {"a": value}), finite=True)
    raise ValueError(f"unknown module kind {kind!r}")


def ext_solvable2d(source: tuple[str, object], target: tuple[str, object], truncation: int = 8) -> ExtReport:
    """Ext between ``("M", lam)`` / ``("L", mu)`` modules of the solvable algebra."""
    alg = _res_algebra()
    kind, value = source
    if kind == "M":
        if not as_scalar(value):
            raise ValueError("M_lambda needs lambda != 0")
        step = resolution_standard(alg, value)
    elif kind == "L":
        step = resolution_simple(alg, value)
    else:
        raise ValueError(f"unknown module kind {kind!r}")
    return ext_from_resolution(step, _target(*target), truncation)


@dataclass
class StandardExtReport:
    table: ExtTable
    cokernel_dims: list  # cokernel of (b - lam) from degree <= t+1 onto degree <= t
    truncation: int

    def __str__(self) -> str:
        return str(self.table)


def ext_solvable2d_nonzero(lam, truncation: int = 8) -> StandardExtReport:
    lam = as_scalar(lam)
    if not lam:
        raise ValueError("lambda = 0 is the simple finite-dimensional regime; use ext_solvable2d_zero")
    rep = ext_solvable2d(("M", lam), ("M", lam), truncation)
    if not rep.stable:
        raise ArithmeticError("truncated Ext did not stabilize")
    # degreewise surjectivity of f(a) -> lam (f(a-1) - f(a)) on the realization C[a]
    M = _target("M", lam).module
    cok = []
    for t in range(truncation + 1):
        src = M.basis(t + 1)
        cols = []
        for m in src:
            v = M.act_gen("b", {m: Fraction(1)})
            v[m] = v.get(m, 0) - lam
            cols.append({len(k): c for k, c in v.items() if c})
        cok.append((t + 1) - rank(SparseMatrix.from_row_dicts(cols, t + 2)))
    return StandardExtReport(rep.table, cok, truncation)


def ext_solvable2d_zero(mu, nu) -> ExtTable:
    return ext_solvable2d(("L", mu), ("L", nu)).table


# ------------------------------------------------------------ CE oracle


def ce_cohomology(p: LiePresentation, character: Mapping[str, object] | Character | None = None) -> ExtTable:
    """Chevalley-Eilenberg cohomology with one-dimensional coefficients."""
    if p.overflow_pairs:
        raise ValueError("the CE oracle needs a finite-dimensional presentation")
    chi = character if isinstance(character, Character) else Character(character or {})
    tags = p.tags
    n = len(tags)
    for x, y in itertools.combinations(tags, 2):
        if chi.on(p.bracket(x, y)):
            raise CharacterError(f"coefficients are not a g-module: nonzero on [{x},{y}]")
    br = {(i, j): {p.index[z]: c for z, c in p.bracket(tags[i], tags[j]).items()}
          for i in range(n) for j in range(n) if i != j}
    wedge = [list(itertools.combinations(range(n), k)) for k in range(n + 1)]
    idx = [{s: i for i, s in enumerate(w)} for w in wedge]

    def sort_sign(seq):
        seq = list(seq)
        if len(set(seq)) < len(seq):
            return 0, None
        sign = 1
        for i in range(len(seq)):
            for j in range(len(seq) - 1 - i):
                if seq[j] > seq[j + 1]:
                    seq[j], seq[j + 1] = seq[j + 1], seq[j]
                    sign = -sign
        return sign, tuple(seq)

    ranks = []
    for k in range(n):
        rows = []
        # (d phi)(x_0..x_k) for phi a k-cochain: one row per (k+1)-subset
        for S in wedge[k + 1]:
            row: dict = {}
            for i, xi in enumerate(S):
                c = chi(tags[xi])
                if c:
                    rest = S[:i] + S[i + 1:]
                    row[idx[k][rest]] = row.get(idx[k][rest], 0) + (-1) ** i * c
            for i, j in itertools.combinations(range(len(S)), 2):
                rest = S[:i] + S[i + 1:j] + S[j + 1:]
                for z, c in br[(S[i], S[j])].items():
                    s, key = sort_sign((z,) + rest)
                    if s:
                        col = idx[k][key]
                        row[col] = row.get(col, 0) + (-1) ** (i + j) * s * c
            rows.append(row)
        ranks.append(rank(SparseMatrix.from_row_dicts(rows, len(wedge[k]))))
    ranks.append(0)
    dims = {}
    for k in range(n + 1):
        dims[k] = len(wedge[k]) - ranks[k] - (ranks[k - 1] if k else 0)
    return ExtTable(dims)


def kunneth_ext(tables: Sequence[Mapping[int, int]], k: int) -> int:
    """Sum over compositions of k of the products of per-factor dimensions."""
    acc = {0: 1}
    for t in tables:
        nxt: dict = {}
        for i, a in acc.items():
            for j, b in t.items():
                if b and i + j <= k:
                    nxt[i + j] = nxt.get(i + j, 0) + a * b
        acc = nxt
    return acc.get(k, 0)


def kunneth_table(tables: Sequence[Mapping[int, int]]) -> ExtTable:
    top = sum(max(t, default=0) for t in tables)
    return ExtTable({k: kunneth_ext(tables, k) for k in range(top + 1)})


# ------------------------------------------------------------ Borel subalgebras


def borel_b_basis(n: int, lam: Character) -> list[str]:
    """Positive root vectors, then the Cartan elements of roots outside the support of lam."""
    b = borel_sl(n)
    es = list(b.part("n"))
    hs = [f"h{k}" for k in range(1, n) if not lam(f"e{k}{k + 1}")]
    return es + hs


def borel_gamma_entries(alg: PBWAlgebra, basis: Sequence[str], nu: Character, literal: bool = False) -> dict:
    """Entries ``c_{ij,s}`` of the second differential of the Koszul resolution.

    With ``literal=True`` the case where ``[b_i,b_j]`` is a multiple of ``b_j``
    uses the opposite sign on the constant, which breaks ``d o d = 0``.
    """
    p = alg.presentation
    out = {}
    k = len(basis)
    for i, j in itertools.combinations(range(k), 2):
        bi, bj = basis[i], basis[j]
        br = p.bracket(bi, bj)
        for s in range(k):
            e = alg.zero()
            if s == i:
                e = alg.gen(bj) - nu(bj)
            elif s == j:
                e = -(alg.gen(bi) - nu(bi))
            c = br.get(basis[s], 0)
            if literal and s == j and c and set(br) == {bj}:
                c = -c
            e = e + c
            if not e.is_zero():
                out[(i, j, s)] = e
    extra = set(z for i, j in itertools.combinations(range(k), 2) for z in p.bracket(basis[i], basis[j])) - set(basis)
    if extra:
        raise ValueError(f"basis is not closed under brackets: {sorted(extra)}")
    return out


def borel_resolution(n: int, lam: Mapping[str, object], mu: Mapping[str, object], literal: bool = False):
    g = borel_sl(n)
    chi = character_validate(g, list(g.part("n")), lam)
    basis = borel_b_basis(n, chi)
    for t in mu:
        if t not in basis:
            raise ValueError(f"mu must live on the Cartan part of the subalgebra, got {t}")
    nu = Character({**chi.values, **{t: as_scalar(v) for t, v in mu.items()}})
    alg = PBWAlgebra(g)
    k = len(basis)
    d1 = [[alg.gen(t) - nu(t)] for t in basis]
    pairs = list(itertools.combinations(range(k), 2))
    gam = borel_gamma_entries(alg, basis, nu, literal)
    d2 = [[gam.get((i, j, s), alg.zero()) for s in range(k)] for i, j in pairs]
    return ComplexStep(alg, [1, k, len(pairs)], [d1, d2]), basis, nu


def borel_simple_target(n: int, lam: Mapping[str, object], mu: Mapping[str, object]) -> TargetModule:
    g = borel_sl(n)
    chi = character_validate(g, list(g.part("n")), lam)
    hs = [f"h{k}" for k in range(1, n) if not chi(f"e{k}{k + 1}")]
    vals = {**chi.values, **{t: as_scalar(v) for t, v in mu.items()}}
    for t in mu:
        if t not in hs:
            raise ValueError(f"mu must live on {hs}, got {t}")
    return TargetModule(InducedModule(g, list(g.part("n")) + hs, vals))


@dataclass
class BorelExtReport:
    total: int
    y_part: int
    x_part: int
    kunneth: int
    matches_kunneth: bool
    saturated: bool
    depth: int
    x_parts: tuple = ()

    def __str__(self) -> str:
        sat = "saturated" if self.saturated else "NOT saturated"
        return (f"Ext^1 = {self.total} (Y-part {self.y_part}, X-part {self.x_part}, {sat} at depth {self.depth}); "
                f"Kunneth value {self.kunneth}")


def _borel_h1_split(step: ComplexStep, basis: Sequence[str], target: TargetModule, depth: int, X: set):
    mons = target.basis(depth)
    coords = [(i, b) for i in range(step.ranks[1]) for b in mons]
    index = {c: k for k, c in enumerate(coords)}
    imgs = _cochain_images(step, 1, target, depth, {})
    kern = kernel_basis(SparseMatrix.from_row_dicts(_transpose(imgs), len(coords))) if coords else []
    Z = [{k: c for k, c in enumerate(v) if c} for v in kern]
    y_coords = {index[(i, b)] for (i, b) in coords if basis[i] not in X}
    ZY = intersect_with_coordinates(Z, y_coords)
    B = intersect_with_coordinates(_cochain_images(step, 0, target, depth + 1, dict(index)), set(index.values()))
    return len(Z), len(ZY), len(B)


def _transpose(cols: list[dict]) -> list[dict]:
    rows: dict[int, dict] = {}
    for j, v in enumerate(cols):
        for i, c in v.items():
            rows.setdefault(i, {})[j] = c
    return [rows[i] for i in sorted(rows)]


def _factor(kind_lam, mu_val):
    lam_v = as_scalar(kind_lam)
    return ("M", lam_v) if lam_v else ("L", as_scalar(mu_val))


def ce_ext1_borel(n: int, lam: Mapping[str, object], mu: Mapping[str, object],
                  lam2: Mapping[str, object], mu2: Mapping[str, object], depth: int = 6) -> BorelExtReport:
    """First cohomology of ``Hom`` of the Koszul resolution of ``L_{lam,mu}`` into ``L_{lam2,mu2}``."""
    step, basis, nu = borel_resolution(n, lam, mu)
    step.check()
    target = borel_simple_target(n, lam2, mu2)
    g = step.algebra.presentation
    derived = set()
    nn = list(g.part("n"))
    for x, y in itertools.combinations(nn, 2):
        derived.update(g.bracket(x, y))
    X = {t for t in basis if t in derived}
    results = []
    for D in (depth, depth + 1):
        z, zy, b = _borel_h1_split(step, basis, target, D, X)
        results.append((z - b, zy - b, z - zy))
    (total, y_part, x_part), (total2, _, x_part2) = results
    tables = []
    for k in range(1, n):
        e = f"e{k}{k + 1}"
        src = _factor(Character(lam)(e), mu.get(f"h{k}", 0))
        tgt = _factor(Character(lam2)(e), mu2.get(f"h{k}", 0))
        if (src[0] == "M") != (tgt[0] == "M") or (src[0] == "M" and src[1] != tgt[1]):
            tables.append(ExtTable())
        else:
            tables.append(ext_solvable2d(src, tgt).table)
    kv = kunneth_ext(tables, 1)
    return BorelExtReport(total, y_part, x_part, kv, y_part == kv, x_part == x_part2 and total == total2, depth,
                          (x_part, x_part2))


# ------------------------------------------------------------ V_k and the quiver


@dataclass
class VkReport:
    k: int
    mu: Fraction
    dim: int
    end_dim: int
    end_dim_joint_kernel: int
    bracket_ok: bool
    a: SparseMatrix = field(repr=False, default=None)
    b: SparseMatrix = field(repr=False, default=None)
    basis: list = field(repr=False, default_factory=list)

    def __str__(self) -> str:
        return f"dim={self.dim} end={self.end_dim}"


def vk_module(k: int, mu) -> VkReport:
    """``U(g)/((a - mu)^k, b^k)`` with its generator actions and endomorphism algebra."""
    if k < 1:
        raise ValueError("k must be positive")
    mu = as_scalar(mu)
    alg = _res_algebra()
    Q = LeftIdealQuotient(alg, [("a", mu, k), ("b", 0, k)])
    basis = Q.basis(2 * k)
    col = {m: i for i, m in enumerate(basis)}
    N = len(basis)

    def matrix(tag):
        x = alg.gen(tag)
        ent = {}
        for j, m in enumerate(basis):
            for r, c in Q.residue(x * Q.representative(m)).items():
                ent[(col[r], j)] = c
        return SparseMatrix(N, N, ent)

    A, B = matrix("a"), matrix("b")
    bracket_ok = (A @ B - B @ A) == B
    # commutant: X A = A X and X B = B X, unknown X[r][c] at index r*N + c
    rows = []
    Ad, Bd = A.row_dicts(), B.row_dicts()
    At, Bt = A.transpose().row_dicts(), B.transpose().row_dicts()
    for Md, Mt in ((Ad, At), (Bd, Bt)):
        for r in range(N):
            for c in range(N):
                row: dict = {}
                for t, v in Mt[c].items():  # (X M)[r][c] = sum_t X[r][t] M[t][c]
                    row[r * N + t] = row.get(r * N + t, 0) + v
                for t, v in Md[r].items():  # (M X)[r][c] = sum_t M[r][t] X[t][c]
                    row[t * N + c] = row.get(t * N + c, 0) - v
                row = {i: v for i, v in row.items() if v}
                if row:
                    rows.append(row)
    end_dim = N * N - rank(SparseMatrix.from_row_dicts(rows, N * N))
    # Hom(V_k, V_k) = vectors killed by (a - mu)^k and b^k
    shifted = A - SparseMatrix.identity(N).scale(mu)
    P, Qb = SparseMatrix.identity(N), SparseMatrix.identity(N)
    for _ in range(k):
        P, Qb = P @ shifted, Qb @ B
    joint = N - rank(SparseMatrix.from_row_dicts(P.row_dicts() + Qb.row_dicts(), N))
    return VkReport(k, mu, N, end_dim, joint, bracket_ok, A, B, basis)


def _generalized_eigenspace(M: SparseMatrix, value: Fraction) -> list[list[Fraction]]:
    N = M.rows
    S = M - SparseMatrix.identity(N).scale(value)
    P = SparseMatrix.identity(N)
    for _ in range(N):
        P = P @ S
    return kernel_basis(P)


@dataclass
class QuiverRelationReport:
    k: int
    vertices: list
    holds: bool
    layer_dims: list
    checked: int


def quiver_relation_check(k: int, vertices: Sequence[object]) -> QuiverRelationReport:
    """Check ``b_i a_i = a_{i+1} b_i`` on the generalized a-weight layers of ``V_k(mu_0)``."""
    mus = [as_scalar(v) for v in vertices]
    if not mus:
        return QuiverRelationReport(k, [], True, [], 0)
    for x, y in zip(mus, mus[1:]):
        if y - x != 1:
            raise ValueError("vertices must be consecutive weights mu, mu+1, ...")
    V = vk_module(k, mus[0])
    A, B = V.a, V.b
    N = V.dim
    layers = [_generalized_eigenspace(A, m) for m in mus] + [_generalized_eigenspace(A, mus[-1] + 1)]
    holds, checked = True, 0
    for i, m in enumerate(mus[:-1]):
        a_i = A - SparseMatrix.identity(N).scale(m)
        a_next = A - SparseMatrix.identity(N).scale(m + 1)
        for v in layers[i]:
            bv = B.matvec(v)
            if any(bv) and not _in_span(bv, layers[i + 1]):
                holds = False
            lhs = B.matvec(a_i.matvec(v))
            rhs = a_next.matvec(bv)
            holds &= lhs == rhs
            checked += 1
    return QuiverRelationReport(k, [fmt_scalar(m) for m in mus], holds, [len(L) for L in layers[:-1]], checked)


def _in_span(v: list, basis: list[list]) -> bool:
    if not basis:
        return not any(v)
    r0 = rank(SparseMatrix.from_dense(basis))
    return rank(SparseMatrix.from_dense(basis + [v])) == r0


@dataclass
class QuiverPresentation:
    vertices: list
    arrows: list  # (name, source, target)
    relations: list
    cross_coset_zero: bool
    unexpected: list = field(default_factory=list)

    def __str__(self) -> str:
        lines = ["vertices: " + ", ".join(self.vertices)]
        lines += [f"arrow {n}: {s} -> {t}" for n, s, t in self.arrows]
        lines += [f"relation {r}" for r in self.relations]
        lines.append(f"cross-coset Ext vanishes: {'yes' if self.cross_coset_zero else 'no'}")
        return "\n".join(lines)


def ext_quiver_assemble(vertices: Sequence[object], probes: Sequence[object] = ()) -> QuiverPresentation:
    """Arrows ``mu -> nu`` wherever ``Ext^1(L(mu), L(nu))`` is nonzero on a coset window."""
    mus = sorted(as_scalar(v) for v in vertices)
    for m in mus[1:]:
        if (m - mus[0]).denominator != 1:
            raise ValueError("vertices must lie in one coset of the integers")
    arrows, unexpected = [], []
    for i, m in enumerate(mus):
        for n in mus:
            if ext_solvable2d_zero(m, n)[1]:
                if n == m:
                    arrows.append((f"a{i}", fmt_scalar(m), fmt_scalar(n)))
                elif n == m + 1:
                    arrows.append((f"b{i}", fmt_scalar(m), fmt_scalar(n)))
                else:
                    unexpected.append((fmt_scalar(m), fmt_scalar(n)))
    arrows.sort(key=lambda a: (a[0][0], int(a[0][1:])))
    names = {(s, t): name for name, s, t in arrows}
    relations = []
    for i, m in enumerate(mus[:-1]):
        s, t = fmt_scalar(m), fmt_scalar(mus[i + 1])
        if (s, t) in names and (s, s) in names and (t, t) in names:
            relations.append(f"{names[(s, t)]} {names[(s, s)]} = {names[(t, t)]} {names[(s, t)]}")
    cross = True
    for m in mus:
        for p in probes:
            p = as_scalar(p)
            if (p - m).denominator == 1:
                continue
            if ext_solvable2d_zero(m, p) or ext_solvable2d_zero(p, m):
                cross = False
    return QuiverPresentation([fmt_scalar(m) for m in mus], arrows, relations, cross, unexpected)
