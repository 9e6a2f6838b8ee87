import itertools
from fractions import Fraction as F

import pytest
import sympy

from whitpairs.presentations import (PresentationSyntaxError, TruncationOverflow, borel_sl, catalog,
                                     centerless_virasoro, decomposition_check, direct_sum, format_presentation,
                                     heisenberg3d, jacobi_check, parse_presentation, sl2, solvable2d, v_n,
                                     v_quotient, witt_bracket, witt_lower, witt_w)

ALGEBRAS = [
    solvable2d(), heisenberg3d(), sl2(), v_n(1, 12), v_n(0, 8), v_n(-1, 6), v_quotient(0, 2), v_quotient(1, 5),
    centerless_virasoro(6), witt_lower(5), witt_w(1, 6), witt_w(2, 3), borel_sl(2), borel_sl(3), borel_sl(4),
    direct_sum(solvable2d(), solvable2d()),
]


@pytest.mark.parametrize("p", ALGEBRAS, ids=lambda p: p.name)
def test_jacobi_on_catalog(p):
    rep = jacobi_check(p)
    assert rep.passed, rep.failures[:3]
    assert rep.checked > 0 or p.dim < 3


def _sympy_bracket(n, d1, d2):
    xs = sympy.symbols(f"x1:{n + 1}")
    f = sympy.Function("f")(*xs)

    def field(d):
        i, m = d
        return lambda g: sympy.Mul(*[x ** k for x, k in zip(xs, m)]) * sympy.diff(g, xs[i - 1])

    X, Y = field(d1), field(d2)
    comm = sympy.expand(X(Y(f)) - Y(X(f)))
    out = {}
    for k in range(n):
        coeff = sympy.Poly(comm.coeff(sympy.Derivative(f, xs[k])), *xs)
        for mon, c in coeff.terms():
            out[(k + 1, tuple(mon))] = F(int(c.p), int(c.q))
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("n", [1, 2])
def test_witt_bracket_matches_symbolic_commutator(n):
    exps = [m for m in itertools.product(range(3), repeat=n) if sum(m) <= 2]
    syms = [(i, m) for m in exps for i in range(1, n + 1)]
    for d1, d2 in itertools.combinations(syms, 2):
        assert witt_bracket(d1, d2) == _sympy_bracket(n, d1, d2)


def test_witt_index_convention():
    p = v_n(1, 12)
    assert p.bracket("e1", "e2") == {"e3": F(1)}
    assert p.bracket("e1", "e3") == {"e4": F(2)}
    assert centerless_virasoro(3).bracket("e-1", "e1") == {"e0": F(2)}


def test_overflow_is_explicit():
    p = v_n(1, 5)
    assert p.overflows("e2", "e4")
    with pytest.raises(TruncationOverflow):
        p.bracket("e2", "e4")
    vec, over = p.bracket_vec({"e2": F(1)}, {"e4": F(1), "e1": F(1)})
    assert over and vec == {"e3": F(-1)}


def test_sl2_structure():
    p = sl2()
    assert p.bracket("e", "f") == {"h": F(1)}
    assert p.bracket("f", "e") == {"h": F(-1)}
    assert p.bracket("h", "e") == {"e": F(2)}
    rep = decomposition_check(p, ["n_-", "h", "n_+"])
    assert rep.passed


def test_borel_cartan_is_dual_to_simple_roots():
    b = borel_sl(3)
    assert b.bracket("h1", "e12") == {"e12": F(1)}
    assert b.bracket("h1", "e23") == {}
    assert b.bracket("h2", "e13") == {"e13": F(1)}
    assert b.bracket("e12", "e23") == {"e13": F(1)}


def test_witt_w_grading():
    w = witt_w(1, 6)
    assert [w.degree(t) for t in ("D1_0", "D1_1", "D1_2")] == [-1, 0, 1]
    assert w.parts["n_+"] == ("D1_0",) and w.parts["h"] == ("D1_1",)
    assert jacobi_check(witt_w(2, 2)).passed


def test_format_round_trip():
    for p in (sl2(), v_n(1, 6), heisenberg3d()):
        q = parse_presentation(format_presentation(p), p.name)
        assert q.tags == p.tags
        assert q.stored_brackets() == p.stored_brackets()
        assert set(q.overflow_pairs) == set(p.overflow_pairs)
        assert {k: tuple(v) for k, v in q.parts.items()} == {k: tuple(v) for k, v in p.parts.items()}


def test_parse_errors_report_line():
    with pytest.raises(PresentationSyntaxError, match="line 2"):
        parse_presentation("basis a\nfrobnicate a\n")
    with pytest.raises(PresentationSyntaxError, match="line 1"):
        parse_presentation("basis a b\n")
    with pytest.raises(ValueError):
        parse_presentation("basis a\nbasis b\nbracket a c = a\n")


def test_catalog_params():
    assert catalog("v_n", {"n": 1, "window": (1, 10)}).window == (1, 10)
    with pytest.raises(ValueError):
        catalog("v_n", {"n": 1, "window": (2, 10)})
    with pytest.raises(ValueError):
        catalog("nope")


def test_direct_sum_commutes_across():
    d = direct_sum(solvable2d(), solvable2d())
    assert d.bracket("a_1", "b_2") == {}
    assert d.bracket("a_2", "b_2") == {"b_2": F(1)}
