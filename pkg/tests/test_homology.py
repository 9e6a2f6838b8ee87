import itertools
from fractions import Fraction as F

import pytest

from whitpairs.homology import (ComplexStep, ExtTable, borel_b_basis, borel_gamma_entries, borel_resolution,
                                ce_cohomology, ce_ext1_borel, ext_quiver_assemble, ext_solvable2d,
                                ext_solvable2d_nonzero, ext_solvable2d_zero, kunneth_ext, kunneth_table,
                                quiver_relation_check, resolution_simple, resolution_standard, vk_module)
from whitpairs.pbw import PBWAlgebra
from whitpairs.presentations import borel_sl, direct_sum, solvable2d
from whitpairs.structure import Character


@pytest.mark.parametrize("lam", [F(1), F(-2), F(2, 3)])
def test_standard_module_has_no_self_extensions(lam):
    rep = ext_solvable2d_nonzero(lam, 8)
    assert rep.table == {0: 1}
    assert rep.cokernel_dims == [0] * 9


def test_nonzero_family_rejects_zero():
    with pytest.raises(ValueError):
        ext_solvable2d_nonzero(0)


@pytest.mark.parametrize("mu", [F(0), F(1), F(-1), F(2, 3)])
@pytest.mark.parametrize("shift", [F(-1), F(0), F(1), F(2), F(1, 2)])
def test_zero_family_matches_ce_oracle(mu, shift):
    nu = mu + shift
    got = ext_solvable2d_zero(mu, nu)
    assert got == ce_cohomology(solvable2d(), {"a": nu - mu})
    assert got[1] == int(shift in (0, 1))
    assert got[2] == int(shift == 1)
    assert all(got[k] == 0 for k in range(3, 6))


def test_zero_family_frozen_values():
    assert str(ext_solvable2d_zero(0, 0)) == "{0:1, 1:1}"
    assert str(ext_solvable2d_zero(0, 1)) == "{1:1, 2:1}"
    assert str(ext_solvable2d_zero(0, F(1, 2))) == "{}"


def test_resolutions_square_to_zero():
    alg = PBWAlgebra(solvable2d())
    for mu in (0, 1, F(3, 7)):
        assert not resolution_simple(alg, mu).composition_violations()
    assert not resolution_standard(alg, 2).composition_violations()
    bad = ComplexStep(alg, [1, 2, 1], [[[alg.gen("a")], [alg.gen("b")]], [[alg.gen("b"), alg.gen("a")]]])
    assert bad.composition_violations()


def test_borel_resolution_squares_to_zero():
    for n, lam, mu in [(2, {}, {"h1": 1}), (3, {"e12": 1}, {"h2": 2}), (3, {}, {"h1": 1, "h2": F(1, 2)}),
                       (4, {"e23": 3}, {"h1": 0, "h3": 1})]:
        step, _, _ = borel_resolution(n, lam, mu)
        assert not step.composition_violations()


def test_literal_case_sign_breaks_composition():
    # with Cartan elements listed first, [b_i, b_j] = c b_j occurs and the flipped constant fails d o d = 0
    g = borel_sl(2)
    alg = PBWAlgebra(g)
    nu = Character({"h1": 1})
    basis = ["h1", "e12"]
    d1 = [[alg.gen(t) - nu(t)] for t in basis]

    def step(literal):
        gam = borel_gamma_entries(alg, basis, nu, literal)
        d2 = [[gam.get((0, 1, s), alg.zero()) for s in range(2)]]
        return ComplexStep(alg, [1, 2, 1], [d1, d2])

    assert not step(False).composition_violations()
    assert step(True).composition_violations()


def test_b_basis_order():
    assert borel_b_basis(3, Character({"e12": 1})) == ["e12", "e13", "e23", "h2"]


@pytest.mark.parametrize("lam", [F(1), F(-2), F(2, 3)])
def test_borel_sl2_agrees_with_nonzero_family(lam):
    rep = ce_ext1_borel(2, {"e12": lam}, {}, {"e12": lam}, {})
    assert rep.total == ext_solvable2d_nonzero(lam).table[1] == 0
    assert rep.saturated and rep.matches_kunneth


@pytest.mark.parametrize("mu", [F(0), F(1), F(-1)])
@pytest.mark.parametrize("shift", [F(-1), F(0), F(1), F(2), F(1, 2)])
def test_borel_sl2_agrees_with_zero_family(mu, shift):
    rep = ce_ext1_borel(2, {}, {"h1": mu}, {}, {"h1": mu + shift}, depth=2)
    assert rep.total == ext_solvable2d_zero(mu, mu + shift)[1]


def test_borel_sl3_x_part_is_finite_and_saturated():
    rep = ce_ext1_borel(3, {"e12": 1, "e23": 2}, {}, {"e12": 1, "e23": 2}, {}, depth=3)
    assert rep.saturated and rep.y_part == rep.kunneth == 0
    assert rep.x_part == 1


def test_mixed_ext_vanishes_across_regimes():
    assert ext_solvable2d(("M", 1), ("L", 0)).table == {}
    rep = ext_solvable2d(("L", 0), ("M", 1), 6)
    assert rep.stable and rep.table == {}


def test_kunneth():
    t = {0: 1, 1: 1}
    assert kunneth_ext([t, t], 1) == 2 and kunneth_ext([t, t], 2) == 1
    assert all(kunneth_ext([{0: 1, 1: 1, 2: 1}], k) == 1 for k in range(3))
    assert kunneth_table([t, t]) == ce_cohomology(direct_sum(solvable2d(), solvable2d()))
    mixed = [ce_cohomology(solvable2d(), {"a": 1}), ce_cohomology(solvable2d())]
    assert kunneth_table(mixed) == ce_cohomology(direct_sum(solvable2d(), solvable2d()), {"a_1": 1})


def test_ext_table_format():
    assert str(ExtTable({2: 1, 1: 1, 0: 0})) == "{1:1, 2:1}"
    assert ExtTable()[5] == 0


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("mu", [F(0), F(1), F(-3)])
def test_vk_dimensions(k, mu):
    rep = vk_module(k, mu)
    assert (rep.dim, rep.end_dim) == (k * k, k)
    assert rep.end_dim_joint_kernel == k and rep.bracket_ok


def test_vk_frozen_string():
    assert str(vk_module(3, 0)) == "dim=9 end=3"


@pytest.mark.parametrize("k,verts", [(2, [0, 1]), (1, [0, 1]), (4, [-1, 0, 1]), (3, [F(1, 2), F(3, 2)])])
def test_quiver_relations(k, verts):
    assert quiver_relation_check(k, verts).holds


def test_quiver_assembly():
    q = ext_quiver_assemble([0, 1, 2, 3], [F(1, 2), F(-1, 3)])
    loops = {(s, t) for name, s, t in q.arrows if name.startswith("a")}
    steps = {(s, t) for name, s, t in q.arrows if name.startswith("b")}
    assert loops == {(str(i), str(i)) for i in range(4)}
    assert steps == {(str(i), str(i + 1)) for i in range(3)}
    assert q.relations == [f"b{i} a{i} = a{i + 1} b{i}" for i in range(3)]
    assert q.cross_coset_zero and not q.unexpected
    assert ext_quiver_assemble([]).arrows == []
    with pytest.raises(ValueError):
        ext_quiver_assemble([0, F(1, 2)])
