"""Dense Gaussian elimination for affine systems A x = b over F_p."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence


@dataclass(frozen=True)
class AffineSolutionSet:
    p: int
    n: int
    particular: tuple | None  # None when the system is inconsistent
    basis: tuple = ()
    rank: int = 0

    @property
    def empty(self) -> bool:
        return self.particular is None

    @property
    def dimension(self) -> int:
        return -1 if self.empty else len(self.basis)

    def count(self) -> int:
        return 0 if self.empty else self.p ** len(self.basis)

    def points(self) -> Iterator[tuple]:
        """All solutions, in lexicographic order."""
        if self.empty:
            return iter(())
        pts = (
            tuple((x + sum(c * v[k] for c, v in zip(coeffs, self.basis))) % self.p for k, x in enumerate(self.particular))
            for coeffs in itertools.product(range(self.p), repeat=len(self.basis))
        )
        return iter(sorted(pts))

    def __contains__(self, x) -> bool:
        if self.empty:
            return False
        # x - particular must lie in the span of the basis
        diff = [(a - b) % self.p for a, b in zip(x, self.particular)]
        if not self.basis:
            return not any(diff)
        cols = [list(v) for v in self.basis]
        A = [[cols[j][i] for j in range(len(cols))] for i in range(self.n)]
        return not solve_affine(A, diff, self.p).empty


def row_reduce(rows: list[list[int]], p: int, ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p (in place on a copy); returns (rows, pivot columns)."""
    M = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def solve_affine(A: Sequence[Sequence[int]], b: Sequence[int], p: int, n: int | None = None) -> AffineSolutionSet:
    if n is None:
        n = len(A[0]) if A else 0
    if len(A) != len(b):
        raise ValueError(f"{len(A)} rows but {len(b)} right-hand sides")
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    M, pivots = row_reduce(aug, p, n)
    rank = len(pivots)
    if any(all(x == 0 for x in row[:n]) and row[n] for row in M):
        return AffineSolutionSet(p, n, None, (), rank)
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -M[i][f] % p
        basis.append(tuple(v))
    return AffineSolutionSet(p, n, tuple(x), tuple(basis), rank)


def nullspace(A: Sequence[Sequence[int]], p: int, n: int | None = None) -> list[tuple]:
    if n is None:
        n = len(A[0]) if A else 0
    return list(solve_affine(A, [0] * len(A), p, n).basis)


def rank(A: Sequence[Sequence[int]], p: int) -> int:
    if not A:
        return 0
    return len(row_reduce([list(r) for r in A], p, len(A[0]))[1])
