"""Truncated p-adic integers Z/p^N and the power / theta-integer functions."""
from __future__ import annotations

import builtins
from dataclasses import dataclass
from math import comb
from typing import Union


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def valuation(n: int, p: int, cap: int | None = None) -> int:
    """p-adic valuation of an integer; ``cap`` is returned for zero (or inf if None)."""
    if n == 0:
        return cap if cap is not None else float("inf")  # type: ignore[return-value]
    v = 0
    while n % p == 0:
        n //= p
        v += 1
        if cap is not None and v >= cap:
            return cap
    return v


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) for any integer n (generalized for n < 0)."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(k - n - 1, k)


@dataclass(frozen=True)
class PadicScalar:
    p: int
    precision: int
    residue: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")
        object.__setattr__(self, "residue", self.residue % self.p**self.precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def _coerce(self, other) -> "PadicScalar":
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise ValueError(f"mismatched primes {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return PadicScalar(self.p, self.precision, other)
        return NotImplemented

    def _binary(self, other, op) -> "PadicScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.precision, other.precision)
        return PadicScalar(self.p, n, op(self.residue, other.residue))

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicScalar(self.p, self.precision, -self.residue)

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def inverse(self) -> "PadicScalar":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        return PadicScalar(self.p, self.precision, builtins.pow(self.residue, -1, self.modulus))

    def valuation(self) -> int:
        """Valuation, capped at the precision (so zero has valuation N)."""
        return valuation(self.residue, self.p, cap=self.precision)

    def is_zero(self) -> bool:
        return self.residue == 0

    def reduce(self, precision: int) -> "PadicScalar":
        if precision > self.precision:
            raise ValueError(f"cannot raise precision {self.precision} to {precision}")
        return PadicScalar(self.p, precision, self.residue)

    def __int__(self):
        return self.residue

    def __str__(self):
        return f"{self.residue} mod {self.p}^{self.precision}"

    def to_json(self) -> str:
        return str(self)


def unit_one_modulus(p: int, precision: int) -> int:
    """Modulus of the congruence a 1-unit must satisfy (p, or 4 when p = 2)."""
    return min(4, 2**precision) if p == 2 else p


@dataclass(frozen=True)
class UnitOneScalar(PadicScalar):
    """A 1-unit in Z/p^N; for p = 2 restricted to 1 + 4Z (torsion-free image)."""

    def __post_init__(self):
        super().__post_init__()
        m = unit_one_modulus(self.p, self.precision)
        if self.residue % m != 1 % m:
            raise ValueError(f"{self.residue} is not congruent to 1 mod {m}")

    @classmethod
    def of(cls, x: PadicScalar) -> "UnitOneScalar":
        return cls(x.p, x.precision, x.residue)

    def __str__(self):
        return f"{self.residue} mod {self.p}^{self.precision}"


Exponent = Union[int, PadicScalar]


def exponent_precision(p: int, exp: Exponent) -> int | None:
    if isinstance(exp, PadicScalar):
        if exp.p != p:
            raise ValueError(f"mismatched primes {p} and {exp.p}")
        return exp.precision
    return None


def pow_residue(base: int, exp: int, p: int, precision: int) -> int:
    """base**exp mod p**precision for a unit base and any integer exponent."""
    return builtins.pow(base, exp, p**precision)


def qint_residue(theta: int, lam: int, p: int, precision: int) -> int:
    """[lam]_theta mod p**precision, for theta = 1 mod p and integer lam.

    Uses sum_k C(lam, k+1) (theta-1)^k.  Each term is an integer of valuation
    >= k, so the terms with k >= precision vanish.
    """
    mod = p**precision
    t = (theta - 1) % mod
    total = 0
    tk = 1
    for k in range(precision):
        total += binom(lam, k + 1) * tk
        tk = tk * t % mod
        if tk == 0:
            break
    return total % mod


def _pow_output_precision(p: int, n: int, exp: Exponent) -> int:
    m = exponent_precision(p, exp)
    if m is None:
        return n
    # base**(p^m) lies in 1 + p^(m+1) (1 + 2^(m+2) for the p = 2 family)
    return min(n, m + (2 if p == 2 else 1))


def _exp_int(exp: Exponent) -> int:
    return exp.residue if isinstance(exp, PadicScalar) else int(exp)


def pow(base: UnitOneScalar, exp: Exponent) -> UnitOneScalar:  # noqa: A001
    if not isinstance(base, UnitOneScalar):
        base = UnitOneScalar.of(base)
    n = _pow_output_precision(base.p, base.precision, exp)
    r = pow_residue(base.residue, _exp_int(exp), base.p, n)
    return UnitOneScalar(base.p, n, r)


def qint(theta: UnitOneScalar, lam: Exponent) -> PadicScalar:
    """The theta-integer [lam]_theta = (theta^lam - 1)/(theta - 1), or lam when theta = 1."""
    if not isinstance(theta, UnitOneScalar):
        theta = UnitOneScalar.of(theta)
    m = exponent_precision(theta.p, lam)
    n = theta.precision if m is None else min(theta.precision, m)
    return PadicScalar(theta.p, n, qint_residue(theta.residue, _exp_int(lam), theta.p, n))
