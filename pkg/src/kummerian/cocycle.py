"""Twisted 1-cocycles c(gh) = c(g) + theta(g) c(h) on free groups, and theta-Fox matrices."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .padic import PadicScalar, UnitOneScalar, pow_residue, qint_residue
from .words import Presentation, Word


class ThetaNotWellDefined(ValueError):
    """theta(r_j) is not 1, so theta does not factor through G = S/R."""

    def __init__(self, relator: int, residue: int, p: int, precision: int):
        self.relator = relator
        self.residue = residue
        super().__init__(
            f"theta(r{relator + 1}) = {residue} mod {p}^{precision} is not 1; "
            "theta does not factor through the relators"
        )


@dataclass(frozen=True)
class Orientation:
    p: int
    precision: int
    values: tuple

    def __post_init__(self):
        vals = tuple(
            UnitOneScalar(self.p, self.precision, v.residue if isinstance(v, PadicScalar) else v)
            for v in self.values
        )
        object.__setattr__(self, "values", vals)

    @classmethod
    def trivial(cls, p: int, precision: int, d: int) -> "Orientation":
        return cls(p, precision, (1,) * d)

    @property
    def d(self) -> int:
        return len(self.values)

    @property
    def residues(self) -> tuple:
        return tuple(v.residue for v in self.values)

    def reduce(self, precision: int) -> "Orientation":
        if precision > self.precision:
            raise ValueError(f"orientation known only mod {self.p}^{self.precision}")
        return Orientation(self.p, precision, self.residues)

    def of_word(self, w: Word) -> UnitOneScalar:
        return theta_of_word(self, w)

    def __str__(self):
        return f"({', '.join(str(r) for r in self.residues)}) mod {self.p}^{self.precision}"


def _word_precision(p: int, n: int, w: Word) -> int:
    for _, e in w:
        if isinstance(e, PadicScalar):
            if e.p != p:
                raise ValueError(f"mismatched primes {p} and {e.p}")
            n = min(n, e.precision)
    return n


def theta_residue(residues: Sequence[int], w: Word, p: int, n: int) -> int:
    mod = p**n
    acc = 1
    for g, e in w:
        acc = acc * pow_residue(residues[g], int(e), p, n) % mod
    return acc


def evaluate_residue(residues: Sequence[int], alpha: Sequence[int], w: Word, p: int, n: int) -> int:
    """Cocycle with c(x_i) = alpha_i evaluated at w, folding left to right."""
    mod = p**n
    acc = 0
    twist = 1  # theta of the prefix read so far
    for g, e in w:
        lam = int(e)
        t = residues[g]
        if alpha[g]:
            acc = (acc + twist * qint_residue(t, lam, p, n) * alpha[g]) % mod
        twist = twist * pow_residue(t, lam, p, n) % mod
    return acc


def theta_of_word(theta: Orientation, w: Word) -> UnitOneScalar:
    n = _word_precision(theta.p, theta.precision, w)
    return UnitOneScalar(theta.p, n, theta_residue(theta.residues, w, theta.p, n))


def _alpha_residues(theta: Orientation, alpha) -> tuple[list[int], int]:
    if len(alpha) != theta.d:
        raise ValueError(f"assignment has {len(alpha)} values for {theta.d} generators")
    n = theta.precision
    out = []
    for a in alpha:
        if isinstance(a, PadicScalar):
            if a.p != theta.p:
                raise ValueError(f"mismatched primes {theta.p} and {a.p}")
            n = min(n, a.precision)
            out.append(a.residue)
        else:
            out.append(int(a))
    return out, n


def evaluate(theta: Orientation, alpha, w: Word) -> PadicScalar:
    """c(w) for the unique cocycle on the free group with c(x_i) = alpha[i].

    The result's precision is the least precision among theta, alpha and the
    truncated exponents of w.
    """
    a, n = _alpha_residues(theta, alpha)
    n = _word_precision(theta.p, n, w)
    return PadicScalar(theta.p, n, evaluate_residue(theta.residues, a, w, theta.p, n))


@dataclass(frozen=True)
class FoxMatrix:
    p: int
    precision: int
    entries: tuple  # rows of residues, one per relator

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)

    def apply(self, alpha: Sequence[int]) -> list[int]:
        mod = self.p**self.precision
        return [sum(e * int(a) for e, a in zip(row, alpha)) % mod for row in self.entries]

    def to_json(self) -> dict:
        return {"p": self.p, "precision": self.precision, "rows": [list(r) for r in self.entries]}


def fox_rows(residues: Sequence[int], relators: Sequence[Word], p: int, n: int) -> list[list[int]]:
    d = len(residues)
    rows = []
    for r in relators:
        row = []
        for i in range(d):
            e = [0] * d
            e[i] = 1
            row.append(evaluate_residue(residues, e, r, p, n))
        rows.append(row)
    return rows


def check_well_defined(P: Presentation, theta: Orientation) -> int:
    """Raise ThetaNotWellDefined unless theta(r_j) = 1 for all j; return the working precision."""
    n = theta.precision
    for r in P.relators:
        n = _word_precision(P.p, n, r)
    for j, r in enumerate(P.relators):
        t = theta_residue(theta.residues, r, P.p, n)
        if t != 1 % P.p**n:
            raise ThetaNotWellDefined(j, t, P.p, n)
    return n


def fox_matrix(P: Presentation, theta: Orientation) -> FoxMatrix:
    if theta.p != P.p or theta.d != P.d:
        raise ValueError("orientation does not match the presentation")
    n = check_well_defined(P, theta)
    rows = fox_rows(theta.residues, P.relators, P.p, n)
    return FoxMatrix(P.p, n, tuple(tuple(r) for r in rows))
