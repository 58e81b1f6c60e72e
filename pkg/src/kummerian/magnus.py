"""Truncated Magnus expansions, degree-2 pairing tables, and Labute's mildness inequality.

The Magnus map sends x_i to 1 + X_i in the ring of noncommutative power series.
For a relator r in the Frattini subgroup:

* the Bockstein value a_i is (coefficient of X_i mod p^2) / p, read mod p;
* the cup value b_ik (i < k) is the coefficient of X_i X_k mod p.

With these normalizations ``x_i^p`` pairs to 1 with Bock(chi_i) and
``[x_i, x_k]`` pairs to 1 with chi_i cup chi_k.  For p = 2 the diagonal
chi_i cup chi_i equals Bock(chi_i), so b_ii is set to a_i.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .modlinalg import nullspace, rank
from .padic import PadicScalar, binom, valuation
from .words import Presentation, Word


class TruncatedExponentError(TypeError):
    pass


@dataclass(frozen=True)
class MagnusSeries:
    degree: int
    modulus: int | None  # None: exact integer coefficients
    coeffs: dict  # monomial (tuple of generator indices) -> coefficient

    def __getitem__(self, monomial) -> int:
        return self.coeffs.get(tuple(monomial), 0)

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        if (self.degree, self.modulus) != (other.degree, other.modulus):
            raise ValueError("series truncated differently")
        out: dict = defaultdict(int)
        for m1, c1 in self.coeffs.items():
            room = self.degree - len(m1)
            for m2, c2 in other.coeffs.items():
                if len(m2) <= room:
                    out[m1 + m2] += c1 * c2
        return MagnusSeries(self.degree, self.modulus, _clean(out, self.modulus))

    def __eq__(self, other):
        return (
            isinstance(other, MagnusSeries)
            and (self.degree, self.modulus) == (other.degree, other.modulus)
            and self.coeffs == other.coeffs
        )

    def is_one(self) -> bool:
        return self.coeffs == {(): 1 % (self.modulus or 2**64)}

    def lowest_degree(self) -> int | None:
        """Lowest positive degree carrying a nonzero coefficient."""
        degs = [len(m) for m, c in self.coeffs.items() if m and c]
        return min(degs) if degs else None

    def homogeneous(self, k: int) -> dict:
        return {m: c for m, c in self.coeffs.items() if len(m) == k}

    def render(self, names: Sequence[str] | None = None) -> str:
        terms = []
        for m in sorted(self.coeffs, key=lambda m: (len(m), m)):
            c = self.coeffs[m]
            mono = "".join(names[g] if names else f"X{g + 1}" for g in m) or "1"
            terms.append(mono if c == 1 and m else f"{c}" if not m else f"{c}*{mono}")
        return " + ".join(terms) or "0"


def _clean(coeffs: dict, modulus: int | None) -> dict:
    if modulus is None:
        return {m: c for m, c in coeffs.items() if c}
    return {m: c % modulus for m, c in coeffs.items() if c % modulus}


def _expand(w: Word, degree: int, modulus: int | None) -> MagnusSeries:
    series: dict = {(): 1}
    for g, e in w:
        if isinstance(e, PadicScalar):
            raise TruncatedExponentError("Magnus expansion needs integer exponents")
        # (1 + X_g)^e = sum_k C(e, k) X_g^k, also for negative e
        powers = [binom(e, k) for k in range(degree + 1)]
        out: dict = defaultdict(int)
        for m, c in series.items():
            for k in range(degree - len(m) + 1):
                if powers[k]:
                    out[m + (g,) * k] += c * powers[k]
        series = _clean(out, modulus)
    return MagnusSeries(degree, modulus, series)


def expand(w: Word, D: int, e: int, p: int) -> MagnusSeries:
    """Magnus expansion of w over Z/p^e truncated above total degree D."""
    if not 0 <= D <= 4 or not 1 <= e <= 2:
        raise ValueError("public expansions are limited to D <= 4 and e <= 2")
    return _expand(w, D, p**e)


def expand_integral(w: Word, D: int) -> MagnusSeries:
    return _expand(w, D, None)


# ----------------------------------------------------------------------------
# Pairing tables


@dataclass(frozen=True)
class RelatorPairing:
    relator: int
    bockstein: tuple
    cup: dict  # (i, k) with i < k -> nonzero value in F_p
    p2_diagonal: tuple | None
    calibrated: bool

    def form(self, d: int, p: int) -> list[list[int]]:
        """Bilinear form (psi, chi) -> pairing of r with psi cup chi, as a d x d matrix."""
        M = [[0] * d for _ in range(d)]
        for (i, k), v in self.cup.items():
            M[i][k] = v % p
            M[k][i] = -v % p
        if self.p2_diagonal is not None:
            for i, v in enumerate(self.p2_diagonal):
                M[i][i] = v % p
        return M

    def cup_value(self, i: int, k: int) -> int:
        if i == k:
            return self.p2_diagonal[i] if self.p2_diagonal is not None else 0
        return self.cup.get((i, k), 0)

    def to_json(self) -> dict:
        out = {
            "relator": self.relator + 1,
            "bockstein": list(self.bockstein),
            "cup": [[i + 1, k + 1, v] for (i, k), v in sorted(self.cup.items())],
        }
        if self.p2_diagonal is not None:
            out["p2_diagonal"] = list(self.p2_diagonal)
        if not self.calibrated:
            out["flag"] = "uncalibrated"
        return out


@dataclass(frozen=True)
class PairingTable:
    p: int
    d: int
    rows: tuple

    def to_json(self) -> list:
        return [r.to_json() for r in self.rows]


def relator_pairing(r: Word, p: int, d: int, index: int = 0) -> RelatorPairing:
    s = _expand(r, 2, p * p)
    bock = []
    for i in range(d):
        c = s[(i,)]
        if c % p:
            raise ValueError(f"relator {index + 1} is not in the Frattini subgroup")
        bock.append((c // p) % p)
    cup = {}
    for i in range(d):
        for k in range(i + 1, d):
            v = s[(i, k)] % p
            if v:
                cup[(i, k)] = v
    diag = tuple(bock) if p == 2 else None
    # the pinned regimes are p odd and p = 2 with every exponent sum divisible by 4
    calibrated = p != 2 or not any(bock)
    return RelatorPairing(index, tuple(bock), cup, diag, calibrated)


def pairing_table(P: Presentation) -> PairingTable:
    rows = tuple(relator_pairing(r, P.p, P.d, j) for j, r in enumerate(P.relators))
    return PairingTable(P.p, P.d, rows)


@dataclass(frozen=True)
class CupKernel:
    p: int
    d: int
    basis: tuple  # basis of {psi : psi cup chi = 0 for all chi}
    nondegenerate: bool
    demushkin_like: bool

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "basis": [list(v) for v in self.basis],
            "nondegenerate": self.nondegenerate,
            "demushkin_like": self.demushkin_like,
        }


def cup_kernel(P: Presentation) -> CupKernel:
    table = pairing_table(P)
    d, p = P.d, P.p
    # psi is in the kernel iff psi^T M_j = 0 for every relator's form M_j
    rows = []
    for row in table.rows:
        M = row.form(d, p)
        rows.extend([M[i][k] for i in range(d)] for k in range(d))
    basis = tuple(nullspace(rows, p, d)) if rows else tuple(
        tuple(int(i == k) for i in range(d)) for k in range(d)
    )
    nondeg = not basis and d > 0
    # an alternating form is degenerate in odd dimension unless p = 2 adds a diagonal
    demushkin = len(P.relators) == 1 and nondeg
    return CupKernel(p, d, basis, nondeg, demushkin)


# ----------------------------------------------------------------------------
# Weights and mildness


def omega(w: Word, cap: int = 4) -> int | None:
    """Lower-central weight of w, read off the exact Magnus expansion.

    Returns None when all coefficients up to degree ``cap`` vanish (weight > cap).
    """
    if not 1 <= cap <= 6:
        raise ValueError("omega cap must be between 1 and 6")
    return expand_integral(w, cap).lowest_degree()


@dataclass(frozen=True)
class MildnessVerdict:
    relator: int
    status: str  # TRUE, FALSE or NOT_APPLICABLE
    f: int | None = None
    omega_u: int | None = None
    omega_v: int | None = None
    value: Fraction | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "relator": self.relator + 1,
            "status": self.status,
            "f": self.f,
            "omega_u": self.omega_u,
            "omega_v": self.omega_v,
            "value": None if self.value is None else str(self.value),
            "reason": self.reason,
        }


def mildness_inequality(p: int, f: int, omega_u: int, omega_v: int) -> tuple[bool, Fraction]:
    value = Fraction(1, f) * (f - 1 + Fraction(omega_v, omega_u))
    return value < p, value


def labute_mildness(P: Presentation, cap: int = 4) -> list[MildnessVerdict]:
    out = []
    for j, r in enumerate(P.relators):
        if len(r) < 2 or isinstance(r.letters[0][1], PadicScalar):
            out.append(MildnessVerdict(j, "NOT_APPLICABLE", reason="relator is not of the form u^(p^f) v"))
            continue
        g, e = r.letters[0]
        f = valuation(abs(e), P.p)
        if abs(e) != P.p**f or f < 1:
            out.append(MildnessVerdict(j, "NOT_APPLICABLE", reason=f"leading exponent {e} is not +-p^f with f >= 1"))
            continue
        v = Word(r.letters[1:])
        try:
            wv = omega(v, cap)
        except TruncatedExponentError:
            wv = None
        if wv is None:
            out.append(MildnessVerdict(j, "NOT_APPLICABLE", f=f, omega_u=1, reason=f"weight of v exceeds {cap}"))
            continue
        ok, value = mildness_inequality(P.p, f, 1, wv)
        out.append(MildnessVerdict(j, "TRUE" if ok else "FALSE", f, 1, wv, value))
    return out


def rank_of_form(row: RelatorPairing, d: int, p: int) -> int:
    return rank(row.form(d, p), p)
