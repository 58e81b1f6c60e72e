"""Kummerian test at a fixed orientation, and the level-by-level orientation search.

A finitely generated torsion-free pair (G, theta) is Kummerian iff every
assignment on a minimal generating set extends to a continuous 1-cocycle.  For
G = S/R this means the linear form alpha -> c(r_j) vanishes identically, i.e.
every theta-Fox coefficient of every relator is zero.  At precision N a nonzero
coefficient is a certificate of failure; all-zero coefficients are evidence only.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cocycle import Orientation, check_well_defined, evaluate_residue, fox_matrix, theta_residue
from .modlinalg import solve_affine
from .padic import valuation
from .words import Presentation

KUMMERIAN_AT = "KUMMERIAN_AT"
REFUTED = "REFUTED"
EMPTY = "EMPTY"
SOLUTIONS = "SOLUTIONS"
CAP_EXCEEDED = "CAP_EXCEEDED"

DEFAULT_MAX_SOLUTIONS = 1000
DEFAULT_MAX_BRANCHES = 100_000


@dataclass(frozen=True)
class KummerVerdict:
    status: str
    precision: int
    witness: tuple | None = None  # (relator, generator, residue), 0-based indices

    def __post_init__(self):
        if (self.status == REFUTED) != (self.witness is not None):
            raise ValueError("REFUTED verdicts carry a witness, KUMMERIAN_AT verdicts do not")

    @property
    def kummerian(self) -> bool:
        return self.status == KUMMERIAN_AT

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            j, i, r = self.witness
            w = {"relator": j + 1, "generator": i + 1, "residue": r}
        return {"status": self.status, "precision": self.precision, "witness": w}


def is_kummerian_at(P: Presentation, theta: Orientation, N: int | None = None) -> KummerVerdict:
    if N is not None:
        theta = theta.reduce(N)
    fm = fox_matrix(P, theta)
    best = None
    for j, row in enumerate(fm.entries):
        for i, e in enumerate(row):
            if e == 0:
                continue
            v = valuation(e, P.p)
            if best is None or v < best[0]:
                best = (v, (j, i, e))
    if best is None:
        return KummerVerdict(KUMMERIAN_AT, fm.precision)
    return KummerVerdict(REFUTED, fm.precision, best[1])


def constraint_values(P: Presentation, residues, n: int) -> list[int]:
    """theta(r_j) - 1 and every Fox entry of r_j, mod p^n."""
    p, d = P.p, P.d
    mod = p**n
    out = []
    unit = [0] * d
    for r in P.relators:
        out.append((theta_residue(residues, r, p, n) - 1) % mod)
        for i in range(d):
            unit[i] = 1
            out.append(evaluate_residue(residues, unit, r, p, n))
            unit[i] = 0
    return out


@dataclass
class OrientationSearchResult:
    p: int
    precision: int
    status: str
    level: int | None = None  # first failing level (EMPTY) or level where caps hit
    solutions: list = field(default_factory=list)
    explored_branches: int = 0
    level_counts: dict = field(default_factory=dict)  # level -> surviving classes
    family: str = ""

    def orientations(self) -> list[Orientation]:
        return [Orientation(self.p, self.precision, s) for s in self.solutions]

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "level": self.level,
            "precision": self.precision,
            "solutions": [list(s) for s in self.solutions],
            "explored_branches": self.explored_branches,
            "level_counts": {str(k): v for k, v in sorted(self.level_counts.items())},
            "family": self.family,
        }


def start_level(p: int) -> int:
    return 2 if p == 2 else 1


def family_description(p: int) -> str:
    return "(1+4Z_2)^d" if p == 2 else f"(1+{p}Z_{p})^d"


def _lift_level(P: Presentation, sol: tuple, k: int) -> list[tuple]:
    """All lifts mod p^(k+1) of a solution mod p^k.

    Constraints F satisfy F(t + p^k delta) = F(t) + p^k J delta mod p^(k+1);
    J comes from exact finite differences.
    """
    p, d = P.p, P.d
    pk = p**k
    base = constraint_values(P, sol, k + 1)
    cols = []
    for i in range(d):
        shifted = list(sol)
        shifted[i] += pk
        fi = constraint_values(P, shifted, k + 1)
        cols.append([((a - b) // pk) % p for a, b in zip(fi, base)])
    A = [[cols[i][c] for i in range(d)] for c in range(len(base))]
    rhs = [(-(b // pk)) % p for b in base]
    sols = solve_affine(A, rhs, p, d)
    return [tuple(t + pk * dl for t, dl in zip(sol, delta)) for delta in sols.points()]


def search_orientations(
    P: Presentation,
    N: int,
    max_solutions: int = DEFAULT_MAX_SOLUTIONS,
    max_branches: int = DEFAULT_MAX_BRANCHES,
) -> OrientationSearchResult:
    p, d = P.p, P.d
    s = start_level(p)
    if N < s:
        raise ValueError(f"precision must be at least {s} for p = {p}")
    for r in P.relators:
        for _, e in r:
            if hasattr(e, "precision") and e.precision < N:
                raise ValueError(f"relator exponent {e} is not known mod {p}^{N}")
    res = OrientationSearchResult(p, N, SOLUTIONS, family=family_description(p))

    live = [(1,) * d]
    res.explored_branches = 1
    if any(constraint_values(P, live[0], s)):
        live = []
    res.level_counts[s] = len(live)
    if not live:
        res.status, res.level = EMPTY, s
        return res

    for k in range(s, N):
        nxt = []
        for sol in live:
            lifts = _lift_level(P, sol, k)
            res.explored_branches += len(lifts)
            if res.explored_branches > max_branches:
                res.status, res.level = CAP_EXCEEDED, k + 1
                return res
            nxt.extend(lifts)
        live = nxt
        res.level_counts[k + 1] = len(live)
        if not live:
            res.status, res.level = EMPTY, k + 1
            return res

    if len(live) > max_solutions:
        res.status, res.level = CAP_EXCEEDED, N
        return res
    res.solutions = sorted(tuple(t % p**N for t in sol) for sol in live)
    return res


def refutation_report(P: Presentation, N: int, **caps) -> dict:
    res = search_orientations(P, N, **caps)
    report = {
        "p": P.p,
        "d": P.d,
        "presentation": P.render(),
        **res.to_json(),
    }
    if res.status == EMPTY:
        if P.p == 2:
            report["statement"] = (
                f"no orientation with values in 1+4Z_2 is Kummerian; "
                f"obstruction found mod 2^{res.level}"
            )
        else:
            report["statement"] = (
                f"no Kummerian torsion-free orientation exists; obstruction found mod {P.p}^{res.level}"
            )
    elif res.status == SOLUTIONS:
        report["statement"] = (
            f"{len(res.solutions)} orientation(s) unobstructed mod {P.p}^{N} within {res.family}"
        )
    else:
        report["statement"] = f"search caps exceeded at level {res.level}"
    return report


__all__ = [
    "KummerVerdict",
    "OrientationSearchResult",
    "is_kummerian_at",
    "search_orientations",
    "refutation_report",
    "constraint_values",
    "check_well_defined",
]
