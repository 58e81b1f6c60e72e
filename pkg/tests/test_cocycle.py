import random

import pytest
from hypothesis import given, strategies as st

from kummerian.cocycle import (
    Orientation,
    ThetaNotWellDefined,
    evaluate,
    fox_matrix,
    theta_of_word,
)
from kummerian.padic import PadicScalar, UnitOneScalar, qint
from kummerian.words import Presentation, Word, commutator, parse_word

from oracles import naive_cocycle, naive_fox_row, naive_theta

NAMES = ["x1", "x2", "x3", "x4"]


def test_theta_of_word_examples():
    th = Orientation(3, 3, (4, 7, 10))
    assert theta_of_word(th, parse_word("[x1,x2]", NAMES)).residue == 1
    assert theta_of_word(th, parse_word("x1^3", NAMES)).residue == 10
    assert theta_of_word(th, Word()).residue == 1


def test_evaluate_examples():
    th = Orientation(3, 3, (4, 7))
    assert evaluate(th, (1, 0), parse_word("x1^3", NAMES)).residue == 21
    inv = evaluate(th, (5, 0), parse_word("x1^-1", NAMES))
    assert inv == -(UnitOneScalar(3, 3, 4).inverse() * 5)
    triv = Orientation.trivial(3, 3, 2)
    assert evaluate(triv, (2, 7), parse_word("[x1,x2]", NAMES)).is_zero()
    assert evaluate(th, (2, 7), Word()).is_zero()


def test_fox_matrix_examples():
    P = Presentation.from_strings(3, ["x"], ["x^3"])
    assert fox_matrix(P, Orientation(3, 2, (1,))).entries == ((3,),)
    P = Presentation.from_strings(3, ["x1", "x2"], ["[x1,x2]"])
    assert fox_matrix(P, Orientation(3, 2, (4, 7))).entries == ((3, 3),)
    for p, f, n in [(3, 1, 4), (3, 2, 5), (5, 1, 3), (2, 2, 6)]:
        P = Presentation.from_strings(p, ["x1", "x2"], [f"x1^{p**f} [x1,x2]"])
        t2 = pow(1 - p**f, -1, p**n)
        assert fox_matrix(P, Orientation(p, n, (1, t2))).is_zero()


def test_theta_not_well_defined():
    P = Presentation.from_strings(3, ["x"], ["x^3"])
    with pytest.raises(ThetaNotWellDefined) as e:
        fox_matrix(P, Orientation(3, 3, (4,)))
    assert e.value.relator == 0 and e.value.residue == 10


def test_precision_is_minimum_of_inputs():
    th = Orientation(3, 4, (4, 7))
    w = Word(((0, PadicScalar(3, 2, 5)),))
    assert evaluate(th, (1, 1), w).precision == 2
    assert evaluate(th, (PadicScalar(3, 3, 1), 1), Word.gen(1)).precision == 3
    with pytest.raises(ValueError):
        evaluate(th, (1,), Word.gen(0))


# ----------------------------------------------------------------------------
# random data


@st.composite
def orientation_data(draw, d=3):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(2, 5))
    step = 4 if p == 2 else p
    thetas = tuple(1 + step * draw(st.integers(0, p**n)) for _ in range(d))
    alpha = tuple(draw(st.integers(0, p**n - 1)) for _ in range(d))
    return Orientation(p, n, thetas), alpha


words = st.lists(st.tuples(st.integers(0, 2), st.integers(-6, 6)), max_size=8).map(
    lambda ls: Word(tuple(ls))
)


@given(orientation_data(), words)
def test_matches_naive_oracle(data, w):
    th, alpha = data
    got = evaluate(th, alpha, w).residue
    assert got == naive_cocycle(th.residues, alpha, w, th.p, th.precision)
    assert theta_of_word(th, w).residue == naive_theta(th.residues, w, th.p, th.precision)


@given(orientation_data(), words)
def test_linearity_of_fox_rows(data, w):
    th, alpha = data
    row = naive_fox_row(th.residues, w, th.p, th.precision)
    mod = th.p**th.precision
    assert sum(a * r for a, r in zip(alpha, row)) % mod == evaluate(th, alpha, w).residue


@given(orientation_data(), st.integers(-5, 5))
def test_truncated_exponent_agrees_with_integer(data, n):
    th, alpha = data
    lam = PadicScalar(th.p, th.precision, n)
    g = Word.gen(0)
    assert evaluate(th, alpha, g**n) == evaluate(th, alpha, Word(((0, lam),)))


def test_nested_commutators_at_trivial_theta_vanish():
    th = Orientation.trivial(5, 3, 3)
    rng = random.Random(0)
    for _ in range(50):
        a = Word(tuple((rng.randrange(3), rng.randint(-3, 3)) for _ in range(4)))
        b = Word(tuple((rng.randrange(3), rng.randint(-3, 3)) for _ in range(4)))
        assert evaluate(th, (1, 2, 3), commutator(a, b)).is_zero()


def test_qint_consistency_on_single_letters():
    th = Orientation(3, 4, (4, 1, 1))
    for lam in range(-10, 11):
        w = Word.gen(0, lam)
        assert evaluate(th, (1, 0, 0), w) == qint(th.values[0], lam)
