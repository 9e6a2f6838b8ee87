from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from whitpairs.linalg import SparseMatrix
from whitpairs.pbw import (LeftIdealQuotient, PBWAlgebra, UnsupportedIdealShape, WordSyntaxError, ideal_generator,
                           normalize, recognize_generator)
from whitpairs.presentations import TruncationOverflow, borel_sl, heisenberg3d, sl2, solvable2d, v_n


def _unit(n, i, j, c=1):
    return SparseMatrix(n, n, {(i, j): c})


# faithful matrix realizations used as an independent oracle for normal forms
SL2_REPS = {
    "e": SparseMatrix.from_dense([[0, 1], [0, 0]]),
    "f": SparseMatrix.from_dense([[0, 0], [1, 0]]),
    "h": SparseMatrix.from_dense([[1, 0], [0, -1]]),
}
BOREL3_REPS = {
    "h1": _unit(3, 0, 0), "h2": _unit(3, 0, 0) + _unit(3, 1, 1),
    "e12": _unit(3, 0, 1), "e23": _unit(3, 1, 2), "e13": _unit(3, 0, 2),
}
HEIS_REPS = {"a": _unit(3, 0, 1), "b": _unit(3, 1, 2), "c": _unit(3, 0, 2)}


def evaluate(u, reps, dim):
    out = SparseMatrix.zeros(dim, dim)
    for m, c in u.terms.items():
        acc = SparseMatrix.identity(dim)
        for i in m:
            acc = acc @ reps[u.algebra.symbols[i]]
        out = out + acc.scale(c)
    return out


def word_matrix(word, reps, dim):
    acc = SparseMatrix.identity(dim)
    for t in word:
        acc = acc @ reps[t]
    return acc


CASES = [(sl2(), SL2_REPS, 2), (borel_sl(3), BOREL3_REPS, 3), (heisenberg3d(), HEIS_REPS, 3)]


@st.composite
def word_case(draw):
    p, reps, dim = draw(st.sampled_from(CASES))
    word = draw(st.lists(st.sampled_from(p.tags), max_size=6))
    return p, reps, dim, word


@settings(max_examples=200)
@given(word_case())
def test_normal_form_agrees_with_matrix_oracle(case):
    p, reps, dim, word = case
    alg = PBWAlgebra(p)
    u = alg.word(word)
    assert evaluate(u, reps, dim) == word_matrix(word, reps, dim)
    for m in u.terms:
        assert list(m) == sorted(m)


@settings(max_examples=200)
@given(word_case())
def test_idempotence_and_reparse(case):
    p, _, _, word = case
    alg = PBWAlgebra(p)
    u = alg.word(word)
    again = alg.normalize([(c, [alg.symbols[i] for i in m]) for m, c in u.terms.items()])
    assert again == u
    assert alg.parse(str(u)) == u


@settings(max_examples=200)
@given(word_case(), st.data())
def test_bracket_compatibility_and_associativity(case, data):
    p, _, _, word = case
    alg = PBWAlgebra(p)
    x, y = data.draw(st.sampled_from(p.tags)), data.draw(st.sampled_from(p.tags))
    u = alg.word(word)
    lhs = u * (alg.gen(x) * alg.gen(y) - alg.gen(y) * alg.gen(x))
    rhs = u * alg.element(p.bracket(x, y)) if x != y else alg.zero()
    assert lhs == rhs
    v, w = alg.word(word[:2]), alg.word(word[2:])
    assert (v * w) * u == v * (w * u)
    assert alg.word(word) == v * w


def test_documented_normal_forms():
    assert str(normalize(solvable2d(), "b a")) == "a b - b"
    p = v_n(1, 10)
    alg = PBWAlgebra(p)
    assert str(alg.parse("e2 e1")) == "e1 e2 - e3"
    assert str(alg.adjoint_action("e1", alg.gen("e2"))) == "e3"
    s2 = PBWAlgebra(solvable2d())
    assert str(s2.adjoint_action("b", s2.gen("a"))) == "-b"


def test_overflow_policies():
    p = v_n(1, 4)
    with pytest.raises(TruncationOverflow):
        PBWAlgebra(p).parse("e4 e3")
    u = PBWAlgebra(p, policy="mark").parse("e4 e3")
    assert u.overflow and str(u).endswith("[overflow]")


def test_parse_errors():
    alg = PBWAlgebra(sl2())
    with pytest.raises(WordSyntaxError):
        alg.parse("e * q")
    assert str(alg.parse("2/3 e - e")) == "-1/3 e"
    assert alg.parse("0").is_zero()


def test_split_order_puts_n_last():
    alg = PBWAlgebra(sl2(), ["e"])
    assert alg.symbols[-1] == "e" and alg.split == 2
    b, a = alg.split_mono((0, 1, 2, 2))
    assert b == (0, 1) and a == (2, 2)


def test_recognize_generator_round_trip():
    alg = PBWAlgebra(solvable2d())
    g = ideal_generator(alg, "a", F(3, 2), 3)
    assert recognize_generator(g) == ("a", F(3, 2), 3)
    with pytest.raises(UnsupportedIdealShape):
        recognize_generator(alg.gen("a") * alg.gen("b"))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_vk_quotient_basis(k):
    Q = LeftIdealQuotient(PBWAlgebra(solvable2d()), [("a", 0, k), ("b", 0, k)])
    basis = Q.basis(2 * k)
    assert len(basis) == k * k
    assert all(max((e for _, e in m.factors), default=0) < k for m in basis)


def test_linear_quotient_is_character_evaluation():
    alg = PBWAlgebra(solvable2d())
    Q = LeftIdealQuotient(alg, [("b", 3)])
    r = Q.residue(alg.parse("a^2 b"))
    assert {str(k): v for k, v in r.items()} == {"a^2": 3}
    # b a^2 = (a-1)^2 b, so modulo (b - 3) it is 3 (a-1)^2
    r = Q.residue(alg.parse("b a^2"))
    assert {str(k): v for k, v in r.items()} == {"a^2": 3, "a": -6, "1": 3}


def test_noncharacter_rejected():
    alg = PBWAlgebra(borel_sl(3))
    with pytest.raises(UnsupportedIdealShape):
        LeftIdealQuotient(alg, [("e12", 2), ("h1", 0)])
