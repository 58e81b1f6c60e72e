import random

import pytest
from hypothesis import given, strategies as st

from kummerian.magnus import (
    TruncatedExponentError,
    cup_kernel,
    expand,
    expand_integral,
    labute_mildness,
    mildness_inequality,
    omega,
    pairing_table,
    relator_pairing,
)
from kummerian.padic import PadicScalar
from kummerian.words import Presentation, RandomSource, Word, commutator, parse_word, sample_lower_p_central

NAMES = ["x1", "x2", "x3", "x4", "x5"]


def w(text):
    return parse_word(text, NAMES)


def test_expand_examples():
    s = expand(w("[x1,x2]"), 2, 1, 3)
    assert s.coeffs == {(): 1, (0, 1): 1, (1, 0): 2}
    assert expand(w("x1^3"), 1, 2, 3).coeffs == {(): 1, (0,): 3}
    assert expand(w("x1^-1 x1"), 3, 2, 3).is_one()
    with pytest.raises(ValueError):
        expand(w("x1"), 5, 1, 3)
    with pytest.raises(TruncatedExponentError):
        expand(Word(((0, PadicScalar(3, 2, 3)),)), 2, 1, 3)


words = st.lists(st.tuples(st.integers(0, 2), st.integers(-5, 5)), max_size=6).map(
    lambda ls: Word(tuple(ls))
)


@given(words, words)
def test_expansion_is_multiplicative(a, b):
    assert expand_integral(a * b, 4) == expand_integral(a, 4) * expand_integral(b, 4)
    assert expand(a * b, 3, 2, 3) == expand(a, 3, 2, 3) * expand(b, 3, 2, 3)


@given(words)
def test_constant_term_is_one(a):
    assert expand_integral(a, 3)[()] == 1


def test_pairing_examples():
    row = relator_pairing(w("x1^9 [x2,x3] [x4,x5]"), 3, 5)
    assert row.bockstein == (0,) * 5 and row.cup == {(1, 2): 1, (3, 4): 1}
    row = relator_pairing(w("x1^3 [x2,x3]"), 3, 3)
    assert row.bockstein == (1, 0, 0) and row.cup == {(1, 2): 1}
    row = relator_pairing(w("x1^2 [x2,x3]"), 2, 3)
    assert row.bockstein[0] == 1 and row.cup_value(0, 0) == 1
    with pytest.raises(ValueError):
        relator_pairing(w("x1^2"), 3, 1)


def test_calibration():
    for p in (2, 3, 5):
        for i in range(3):
            assert relator_pairing(Word.gen(i, p), p, 3).bockstein == tuple(int(k == i) for k in range(3))
            for k in range(i + 1, 3):
                assert relator_pairing(commutator(Word.gen(i), Word.gen(k)), p, 3).cup == {(i, k): 1}


def test_uncalibrated_flag():
    row = relator_pairing(w("x1^4 [x2,x3]"), 2, 3)
    assert row.calibrated and "flag" not in row.to_json()
    row = relator_pairing(w("x1^2 [x2,x3]"), 2, 3)
    assert not row.calibrated and row.to_json()["flag"] == "uncalibrated"
    assert relator_pairing(w("x1^3 [x2,x3]"), 3, 3).calibrated


@given(words)
def test_p2_diagonal_coefficient_equals_bockstein(a):
    # with other variables set to 0 the expansion is (1 + X)^s, and C(2t, 2) = t mod 2
    sq = a * a
    s = expand(sq, 2, 2, 2)
    for i in range(3):
        assert s[(i, i)] % 2 == (s[(i,)] // 2) % 2


def test_pairing_well_defined():
    rng = RandomSource(3)
    P = Presentation.free(3, 5)
    base = w("x1^9 [x2,x3] [x4,x5]")
    ref = relator_pairing(base, 3, 5)
    for _ in range(30):
        t = sample_lower_p_central(P, 3, rng, mode="commutator")
        assert relator_pairing(base * t, 3, 5).bockstein == ref.bockstein
    for i in range(5):
        for k in range(i + 1, 5):
            c = commutator(Word.gen(i), Word.gen(k))
            assert relator_pairing(base * c**3, 3, 5).cup == ref.cup
            assert relator_pairing(base * commutator(Word.gen(i), Word.gen(k, 3)), 3, 5).cup == ref.cup


def test_cup_kernel_examples():
    P = Presentation.from_strings(3, NAMES, ["x1^9 [x2,x3] [x4,x5]"])
    k = cup_kernel(P)
    assert k.basis == ((1, 0, 0, 0, 0),) and not k.demushkin_like
    k = cup_kernel(Presentation.from_strings(3, ["x1", "x2"], ["[x1,x2]"]))
    assert k.dimension == 0 and k.demushkin_like
    assert cup_kernel(Presentation.free(3, 3)).dimension == 3
    k = cup_kernel(Presentation.from_strings(2, ["x1", "x2", "x3"], ["x1^2 [x2,x3]"]))
    assert k.demushkin_like


def test_omega_examples():
    assert omega(w("x1")) == 1
    assert omega(w("[x2,x3] [x4,x5]")) == 2
    assert omega(w("[[x1,x2],x3]")) == 3
    assert omega(w("[[x1,x2],[x3,x4]]")) == 4
    assert omega(w("[[[x1,x2],x3],[x4,x5]]")) is None
    assert omega(w("[[[x1,x2],x3],[x4,x5]]"), cap=5) == 5
    assert omega(Word()) is None
    # exact coefficients: x1^3 has weight 1 even though 3 = 0 mod 3
    assert omega(w("x1^3")) == 1


def test_omega_of_random_commutators_is_at_least_two():
    rng = random.Random(1)
    for _ in range(100):
        a = Word(tuple((rng.randrange(3), rng.randint(-3, 3)) for _ in range(3)))
        b = Word(tuple((rng.randrange(3), rng.randint(-3, 3)) for _ in range(3)))
        c = commutator(a, b)
        assert c == Word() or omega(c) is None or omega(c) >= 2


def test_mildness():
    assert mildness_inequality(3, 1, 1, 2)[0]
    assert not mildness_inequality(2, 1, 1, 2)[0]
    ok, value = mildness_inequality(2, 2, 1, 2)
    assert ok and value == pytest.approx(1.5)
    for p, f, expected in [(3, 1, "TRUE"), (2, 2, "TRUE"), (2, 1, "FALSE"), (3, 2, "TRUE")]:
        P = Presentation.from_strings(p, NAMES[:3], [f"x1^{p**f} [x2,x3]"])
        assert labute_mildness(P)[0].status == expected
    P = Presentation.from_strings(3, NAMES[:3], ["x1^6 [x2,x3] x1^-3"])
    assert labute_mildness(P)[0].status == "NOT_APPLICABLE"


def test_pairing_table_json():
    P = Presentation.from_strings(3, NAMES, ["x1^9 [x2,x3] [x4,x5]"])
    rows = pairing_table(P).to_json()
    assert rows == [{"relator": 1, "bockstein": [0] * 5, "cup": [[2, 3, 1], [4, 5, 1]]}]
