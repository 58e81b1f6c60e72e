import itertools
import random

import pytest

from kummerian.magnus import cup_kernel
from kummerian.massey import (
    _relator_entries,
    MasseyVerdict,
    brute_force_massey,
    build_assignment,
    chi,
    group_exponent,
    identity,
    matmul,
    matpow,
    parse_characters,
    triple_massey,
    unipotent_eval,
    unipotent_inverse,
)
from kummerian.modlinalg import solve_affine
from kummerian.words import Presentation, Word, parse_word

NAMES = ["x1", "x2", "x3", "x4", "x5"]


def pres(p, rel, d=3):
    return Presentation.from_strings(p, NAMES[:d], [rel])


def random_unipotent(rng, p, n=4):
    return tuple(tuple(1 if i == j else (rng.randrange(p) if j > i else 0) for j in range(n)) for i in range(n))


def test_unipotent_eval_examples():
    I = identity()
    w = parse_word("x1^5 [x1,x2] x2^-7", NAMES)
    assert unipotent_eval([I, I], w, 3) == I
    rng = random.Random(0)
    for _ in range(20):
        M = random_unipotent(rng, 2, 3)
        assert matpow(M, 4, 2) == identity(3)
        A = random_unipotent(rng, 5)
        assert matmul(A, unipotent_inverse(A, 5), 5) == identity()
    E12 = tuple(tuple(1 if (i == j or (i, j) == (0, 1)) else 0 for j in range(4)) for i in range(4))
    assert unipotent_eval([E12], parse_word("x1^3", NAMES), 3) == I
    assert group_exponent(2, 4) == 4 and group_exponent(3, 4) == 9 and group_exponent(5, 4) == 5


def test_eval_matches_letter_by_letter_product():
    rng = random.Random(1)
    for p in (2, 3):
        for _ in range(30):
            mats = [random_unipotent(rng, p) for _ in range(2)]
            w = Word(tuple((rng.randrange(2), rng.randint(-12, 12)) for _ in range(5)))
            M = identity()
            for g, e in w:
                step = mats[g] if e > 0 else unipotent_inverse(mats[g], p)
                for _ in range(abs(e)):
                    M = matmul(M, step, p)
            assert unipotent_eval(mats, w, p) == M


def test_examples():
    v = triple_massey(pres(3, "x1^3 [x2,x3]"), chi(0, 3), chi(0, 3), chi(0, 3))
    assert v.non_empty and not v.contains_zero and v.essential
    v = triple_massey(pres(3, "x1^9 [x2,x3]"), chi(0, 3), chi(0, 3), chi(0, 3))
    assert not v.essential
    zero = (0, 0, 0)
    assert triple_massey(pres(3, "x1^3 [x2,x3]"), zero, zero, zero).contains_zero
    assert brute_force_massey(pres(2, "x1^2 [x2,x3]"), zero, zero, zero).contains_zero


def test_witness_is_a_representation():
    P = pres(3, "x1^9 [x2,x3]")
    v = triple_massey(P, chi(0, 3), chi(1, 3), chi(0, 3))
    if v.contains_zero:
        for r in P.relators:
            assert unipotent_eval(v.witness, r, 3) == identity()


def test_verdict_invariant_and_json():
    with pytest.raises(ValueError):
        MasseyVerdict(False, True)
    j = MasseyVerdict(True, False).to_json()
    assert j["nonEmpty"] and not j["containsZero"] and j["essential"]


def test_character_parsing():
    assert parse_characters("1,0,0;0,1,0; 0,0,1", 3) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    with pytest.raises(ValueError):
        parse_characters("1,0;0,1", 2)
    with pytest.raises(ValueError):
        parse_characters("1,0,0;1,0;0,1,0", 3)
    with pytest.raises(ValueError):
        triple_massey(pres(3, "x1^3 [x2,x3]"), (1, 0), (1, 0), (1, 0))


def test_brute_force_limit():
    with pytest.raises(ValueError):
        brute_force_massey(pres(3, "x1^3 [x2,x3]"), chi(0, 3), chi(0, 3), chi(0, 3), limit=1000)


def test_affinity_on_random_probes():
    # relator entries depend affinely on the free entries: F(u+v) - F(u) - F(v) + F(0) = 0
    rng = random.Random(2)
    for p, rel, d in [(3, "x1^3 [x2,x3]", 3), (2, "x1^4 [x2,x3] [x4,x5]", 5), (3, "x1^9 [x1,x2]", 2)]:
        P = pres(p, rel, d)
        for _ in range(100):
            phis = [tuple(rng.randrange(p) for _ in range(d)) for _ in range(3)]
            n = 3 * d
            split = rng.randrange(n + 1)
            u = [rng.randrange(p) if k < split else 0 for k in range(n)]
            v = [0 if k < split else rng.randrange(p) for k in range(n)]
            uv = [a + b for a, b in zip(u, v)]
            F = [_relator_entries(P, phis, x) for x in (uv, u, v, [0] * n)]
            assert all((a - b - c + z) % p == 0 for a, b, c, z in zip(*F))


def test_matches_brute_force_p3_d2():
    P = pres(3, "x1^3 [x1,x2]", 2)
    chars = list(itertools.product(range(3), repeat=2))
    rng = random.Random(5)
    for _ in range(25):
        phis = [rng.choice(chars) for _ in range(3)]
        v, o = triple_massey(P, *phis), brute_force_massey(P, *phis)
        assert (v.non_empty, v.contains_zero) == (o.non_empty, o.contains_zero)


def test_one_relator_consistency():
    # with a one-dimensional H^2, an essential product has phi1 and phi3 in the cup kernel
    rng = random.Random(3)
    for p, rel, d in [(3, "x1^3 [x2,x3]", 3), (2, "x1^2 [x2,x3]", 3), (3, "x1^3 [x1,x2]", 2)]:
        P = pres(p, rel, d)
        K = cup_kernel(P)
        for _ in range(100):
            phis = [tuple(rng.randrange(p) for _ in range(d)) for _ in range(3)]
            if not triple_massey(P, *phis).essential:
                continue
            for phi in (phis[0], phis[2]):
                A = [[v[i] for v in K.basis] for i in range(d)]
                assert K.basis and not solve_affine(A, list(phi), p, len(K.basis)).empty


def test_symmetric_relabelling():
    # swapping x2 and x3 carries P onto Q, so verdicts must agree after relabelling
    P = pres(3, "x1^3 [x2,x3]")
    Q = pres(3, "x1^3 [x3,x2]")
    rng = random.Random(4)
    for _ in range(50):
        phis = [tuple(rng.randrange(3) for _ in range(3)) for _ in range(3)]
        swapped = [(a, c, b) for a, b, c in phis]
        v, w = triple_massey(P, *phis), triple_massey(Q, *swapped)
        assert (v.non_empty, v.contains_zero) == (w.non_empty, w.contains_zero)


def test_build_assignment_places_entries():
    mats = build_assignment([(1, 2), (0, 1), (2, 2)], list(range(6)), 2, 3)
    M = mats[1]
    assert (M[0][1], M[1][2], M[2][3]) == (2, 1, 2)
    assert (M[0][2], M[1][3], M[0][3]) == (3 % 3, 4 % 3, 5 % 3)
