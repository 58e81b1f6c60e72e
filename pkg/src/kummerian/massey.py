"""Triple Massey products through unipotent 4x4 representations over F_p.

<phi1, phi2, phi3> is non-empty iff some homomorphism G -> U_4(F_p)/center has
superdiagonal (phi1, phi2, phi3); it contains 0 iff such a homomorphism exists
into U_4(F_p) itself.  With the superdiagonal fixed, the free entries (1,3),
(2,4), (1,4) of every generator's matrix enter the strictly upper entries of
gamma(r) affinely, so both conditions are affine systems over F_p.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .modlinalg import solve_affine
from .padic import PadicScalar
from .words import Presentation, RandomSource, Word

SIZE = 4
# (row, col) of the free entries of each generator's matrix, in unknown order
FREE_ENTRIES = ((0, 2), (1, 3), (0, 3))
CENTER_ROWS = ((0, 2), (1, 3))
SUPERDIAG = ((0, 1), (1, 2), (2, 3))

Matrix = tuple  # tuple of row tuples


def identity(n: int = SIZE) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(A: Matrix, B: Matrix, p: int) -> Matrix:
    n = len(A)
    # upper triangular: only k in [i, j] contributes
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(i, j + 1)) % p if j >= i else 0 for j in range(n))
        for i in range(n)
    )


def matpow(A: Matrix, e: int, p: int) -> Matrix:
    result = identity(len(A))
    base = A
    while e:
        if e & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        e >>= 1
    return result


def unipotent_inverse(A: Matrix, p: int) -> Matrix:
    # (I + N)^-1 = sum (-N)^k, N nilpotent of order < n
    n = len(A)
    N = tuple(tuple((A[i][j] - (i == j)) % p for j in range(n)) for i in range(n))
    negN = tuple(tuple(-x % p for x in row) for row in N)
    out = identity(n)
    term = identity(n)
    for _ in range(n - 1):
        term = matmul(term, negN, p)
        out = tuple(tuple((a + b) % p for a, b in zip(r1, r2)) for r1, r2 in zip(out, term))
    return out


def group_exponent(p: int, size: int) -> int:
    """Exponent of U_size(F_p): the least p^k with p^k >= size."""
    e = 1
    while e < size:
        e *= p
    return e


def unipotent_eval(assignment: Sequence[Matrix], w: Word, p: int) -> Matrix:
    size = len(assignment[0]) if assignment else SIZE
    ex = group_exponent(p, size)
    out = identity(size)
    for g, e in w:
        k = (e.residue if isinstance(e, PadicScalar) else e) % ex
        if k:
            out = matmul(out, matpow(assignment[g], k, p), p)
    return out


@dataclass(frozen=True)
class MasseyVerdict:
    non_empty: bool
    contains_zero: bool
    rank_center: int | None = None
    rank_full: int | None = None
    witness: tuple | None = None  # one matrix per generator when contains_zero

    def __post_init__(self):
        if self.contains_zero and not self.non_empty:
            raise ValueError("a Massey product containing 0 is non-empty")

    @property
    def essential(self) -> bool:
        return self.non_empty and not self.contains_zero

    def to_json(self) -> dict:
        return {
            "nonEmpty": self.non_empty,
            "containsZero": self.contains_zero,
            "essential": self.essential,
            "rank_center": self.rank_center,
            "rank_full": self.rank_full,
            "witness": None if self.witness is None else [[list(r) for r in m] for m in self.witness],
        }


def build_assignment(phis: Sequence[Sequence[int]], unknowns: Sequence[int], d: int, p: int) -> list:
    mats = []
    for g in range(d):
        M = [list(r) for r in identity()]
        for (r, c), phi in zip(SUPERDIAG, phis):
            M[r][c] = phi[g] % p
        for k, (r, c) in enumerate(FREE_ENTRIES):
            M[r][c] = unknowns[3 * g + k] % p
        mats.append(tuple(tuple(r) for r in M))
    return mats


def _check_characters(P: Presentation, phis) -> list[tuple]:
    if len(phis) != 3:
        raise ValueError("a triple Massey product needs three characters")
    out = []
    for phi in phis:
        if len(phi) != P.d:
            raise ValueError(f"character {list(phi)} has the wrong length for d = {P.d}")
        out.append(tuple(int(x) % P.p for x in phi))
    return out


def _relator_entries(P: Presentation, phis, u) -> list[int]:
    """Entries (1,3), (2,4), (1,4) of gamma(r_j) - I for every relator, flattened."""
    mats = build_assignment(phis, u, P.d, P.p)
    out = []
    for r in P.relators:
        M = unipotent_eval(mats, r, P.p)
        for (a, b) in SUPERDIAG:
            assert M[a][b] == 0, "superdiagonal of a relator image must vanish"
        out.extend(M[a][b] for a, b in FREE_ENTRIES)
    return out


def triple_massey(P: Presentation, phi1, phi2, phi3, *, spot_checks: int = 4, seed: int = 0) -> MasseyVerdict:
    p, d = P.p, P.d
    phis = _check_characters(P, (phi1, phi2, phi3))
    n = 3 * d
    zero = [0] * n
    f0 = _relator_entries(P, phis, zero)
    cols = []
    for k in range(n):
        e = list(zero)
        e[k] = 1
        fk = _relator_entries(P, phis, e)
        cols.append([(a - b) % p for a, b in zip(fk, f0)])
    m = len(f0)
    A = [[cols[k][i] for k in range(n)] for i in range(m)]
    rhs = [-x % p for x in f0]

    rng = RandomSource(seed)
    for _ in range(spot_checks):
        u = [rng.randrange(p) for _ in range(n)]
        predicted = [(f + sum(a * x for a, x in zip(row, u))) % p for f, row in zip(f0, A)]
        if predicted != _relator_entries(P, phis, u):
            raise AssertionError("relator entries are not affine in the free entries")

    center_idx = [3 * j + t for j in range(len(P.relators)) for t in range(2)]
    center = solve_affine([A[i] for i in center_idx], [rhs[i] for i in center_idx], p, n)
    full = solve_affine(A, rhs, p, n)
    witness = None
    if not full.empty:
        witness = tuple(build_assignment(phis, full.particular, d, p))
    return MasseyVerdict(not center.empty, not full.empty, center.rank, full.rank, witness)


def brute_force_massey(P: Presentation, phi1, phi2, phi3, limit: int = 10**6) -> MasseyVerdict:
    """Exhaustive search over all free-entry assignments, multiplying matrices letter by letter."""
    p, d = P.p, P.d
    phis = _check_characters(P, (phi1, phi2, phi3))
    if p ** (3 * d) > limit:
        raise ValueError(f"{p}^{3 * d} assignments exceed the brute-force limit {limit}")
    non_empty = contains_zero = False
    I = identity()
    for u in itertools.product(range(p), repeat=3 * d):
        mats = build_assignment(phis, u, d, p)
        invs = [unipotent_inverse(M, p) for M in mats]
        ok_center = ok_full = True
        for r in P.relators:
            M = I
            for g, e in r:
                k = e.residue if isinstance(e, PadicScalar) else e
                step = mats[g] if k > 0 else invs[g]
                for _ in range(abs(k)):
                    M = matmul(M, step, p)
            if M != I:
                ok_full = False
                if any(M[a][b] for a in range(SIZE) for b in range(a + 1, SIZE) if (a, b) != (0, SIZE - 1)):
                    ok_center = False
                    break
        non_empty |= ok_center
        contains_zero |= ok_full
        if contains_zero:
            break
    return MasseyVerdict(non_empty, contains_zero)


def parse_characters(text: str, d: int) -> list[tuple]:
    """'1,0,0;1,0,0;0,1,0' -> three residue vectors."""
    parts = [s.strip() for s in text.split(";")]
    if len(parts) != 3:
        raise ValueError("expected three semicolon-separated characters")
    out = []
    for s in parts:
        vec = tuple(int(x) for x in s.split(","))
        if len(vec) != d:
            raise ValueError(f"character {s!r} has {len(vec)} entries, expected {d}")
        out.append(vec)
    return out


def chi(i: int, d: int) -> tuple:
    """The dual basis character chi_i (0-based i)."""
    return tuple(int(k == i) for k in range(d))
