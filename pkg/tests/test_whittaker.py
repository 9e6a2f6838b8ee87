from fractions import Fraction as F

import pytest
from sympy.functions.combinatorial.numbers import partition

from whitpairs.presentations import (borel_sl, centerless_virasoro, heisenberg3d, sl2, solvable2d, v_n, v_quotient,
                                     witt_w)
from whitpairs.whittaker import (CharacterError, WindowTooSmall, annihilator_spot_check, borel_simple_module,
                                 casimir_sl2, character_validate, completion_whittaker_solve, existence_check,
                                 simple_hw_quotient_dims, simplicity_certificate, standard_module,
                                 star_duality_check, verma_weight_dims, whittaker_vectors,
                                 whittaker_vectors_in_dual)


def partitions_with_parts(total, parts):
    """Brute-force count of multisets from ``parts`` summing to ``total``."""
    ways = [1] + [0] * total
    for p in parts:
        for s in range(p, total + 1):
            ways[s] += ways[s - p]
    return ways[total]


def test_virasoro_verma_dims_match_partition_numbers():
    dims = verma_weight_dims(centerless_virasoro(12), 10)
    assert dims == [int(partition(k)) for k in range(11)]
    assert dims == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_witt_w1_verma_dims():
    w = witt_w(1, 8)
    degs = sorted(w.degree(t) for t in w.part("n_-"))
    assert verma_weight_dims(w, 3) == [partitions_with_parts(k, degs) for k in range(4)] == [1, 1, 2, 3]


def sl2_pairing_rank(mu, k):
    # e f^k v = k (mu - k + 1) f^(k-1) v
    prod = F(1)
    for i in range(1, k + 1):
        prod *= i * (mu - i + 1)
    return int(prod != 0)


@pytest.mark.parametrize("mu", [F(1), F(0), F(3), F(1, 2), F(-1), F(-5, 3)])
def test_sl2_simple_dims_closed_form(mu):
    assert simple_hw_quotient_dims(sl2(), mu, 7) == [sl2_pairing_rank(mu, k) for k in range(8)]


def test_sl2_simple_dims_examples():
    assert simple_hw_quotient_dims(sl2(), 1, 5) == [1, 1, 0, 0, 0, 0]
    assert simple_hw_quotient_dims(sl2(), F(1, 2), 5) == [1] * 6


def sl2_whittaker_coefficients(mu, lam, d):
    c = [F(1)]
    for k in range(d):
        c.append(c[-1] * lam / ((k + 1) * (mu - k)))
    return c


def test_sl2_completion_solution_matches_recursion():
    res = completion_whittaker_solve(sl2(), F(1, 2), {"e": 1}, 8)
    assert res.dims_by_truncation == [1] * 9 and res.nested and res.generic
    want = sl2_whittaker_coefficients(F(1, 2), F(1), 8)
    got = [dict(res.components[k])[("f^" + str(k)) if k > 1 else ("f" if k == 1 else "1")] for k in range(9)]
    assert got == want
    assert want[:4] == [1, 2, -2, F(4, 9)]


def test_virasoro_completion_unique():
    res = completion_whittaker_solve(centerless_virasoro(8), {"e0": F(2, 7)}, {"e1": 1, "e2": 0}, 6)
    assert res.dims_by_truncation == [1] * 7 and res.nested


def test_completion_simple_ladder_at_integral_weight():
    assert completion_whittaker_solve(sl2(), 1, {"e": 1}, 6, "simple").dimension == 0
    assert completion_whittaker_solve(sl2(), 1, {"e": 1}, 6).dimension == 1


@pytest.mark.parametrize("mu", [F(1, 2), F(2, 7), F(-3, 5), F(5), F(0)])
def test_star_duality_w1(mu):
    rep = star_duality_check(witt_w(1, 8), {"D1_1": mu}, 4)
    assert rep.equal


def test_dual_whittaker_two_routes():
    for lam in (0, 3, F(-1, 2)):
        for d in range(0, 7):
            assert whittaker_vectors_in_dual(solvable2d(), ["b"], {"b": lam}, d) == 1
            assert existence_check(solvable2d(), ["b"], {"b": lam}, d) == 1
    v = v_n(1, 10)
    assert whittaker_vectors_in_dual(v, list(v.tags), {"e1": 1, "e2": 2}, 6) == 1
    g = v_n(-1, 10)
    n = [f"e{i}" for i in range(1, 11)]
    assert existence_check(g, n, {"e1": 1}, 6) == 1


def test_character_validation():
    assert character_validate(v_n(1, 10), list(v_n(1, 10).tags), {"e1": 1, "e2": 5})("e2") == 5
    with pytest.raises(CharacterError, match=r"\[e1,e2\]"):
        character_validate(v_n(1, 10), list(v_n(1, 10).tags), {"e3": 1})
    with pytest.raises(CharacterError):
        character_validate(sl2(), ["e"], {"h": 1})


def test_whittaker_vectors_in_standard_modules():
    M = standard_module(solvable2d(), ["b"], {"b": 1})
    res = whittaker_vectors(M, 5)
    assert res.dimension == 1 and res.components == {0: [("1", 1)]}
    M0 = standard_module(solvable2d(), ["b"], {"b": 0})
    assert whittaker_vectors(M0, 5).dims_by_truncation == [1, 2, 3, 4, 5, 6]
    with pytest.raises(ValueError):
        standard_module(sl2(), ["h"], {"h": 1})


def test_simplicity_certificates():
    assert simplicity_certificate(standard_module(solvable2d(), ["b"], {"b": 1}), 5).passed
    assert simplicity_certificate(standard_module(v_quotient(0, 2), ["e1"], {"e1": 1}), 5).passed
    ev = simplicity_certificate(standard_module(solvable2d(), ["b"], {"b": 0}), 5)
    assert not ev.passed and ev.witness


def test_borel_simple_module_factorizes():
    rep = borel_simple_module(3, {"e12": 2}, {"h2": 5}, 4)
    assert rep.dims == [1] * 5 and rep.factorization_ok
    rep = borel_simple_module(4, {"e12": 2, "e23": 1, "e34": 3}, {}, 3)
    assert rep.dims == [1, 3, 6, 10] == rep.product_dims and rep.factorization_ok
    with pytest.raises(CharacterError):
        borel_simple_module(3, {"e13": 1}, {}, 2)


def test_annihilator_spot_check():
    rep = annihilator_spot_check(sl2(), F(1, 2), {"e": 1}, ["0", "e - 1", "e f + f e + 1/2 h^2 - 5/8"], 6)
    zero, shifted, casimir = rep.rows
    assert zero.kills_verma_window and zero.kills_whittaker_window
    assert shifted.kills_whittaker_window and not shifted.kills_verma_window and "NOT" in shifted.verdict
    assert casimir.kills_verma_window and casimir.kills_whittaker_window
    assert "not an equality" in rep.disclaimer


def test_casimir_eigenvalue_on_highest_weight_vector():
    from whitpairs.whittaker import Triangular
    from whitpairs.structure import Character
    T = Triangular(sl2())
    M = T.module(Character({"h": F(1, 2)}))
    v = M.act(casimir_sl2(M.algebra), M.one())
    assert v == {(): F(5, 8)}


def test_window_guard():
    with pytest.raises(WindowTooSmall):
        verma_weight_dims(centerless_virasoro(3), 5)


def test_heisenberg_module_is_not_simple():
    M = standard_module(heisenberg3d(), ["c"], {"c": 1})
    assert whittaker_vectors(M, 2).dimension == 6
