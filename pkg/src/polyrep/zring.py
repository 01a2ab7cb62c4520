"""Exact arithmetic in the residue ring Z_{p^n}.

Everything downstream (function tables, generators, the decision
procedure) computes on canonical residues held as plain ints in
``[0, q)`` with ``q = p**n``.  A :class:`RingCtx` carries the ring
parameters and the handful of operations that are not a bare ``% q``:
p-adic valuation, unit inversion and modular exponentiation.
"""

from __future__ import annotations

from dataclasses import dataclass


# Residues stay exact under int64 products (used by the numpy solver paths),
# so q*q must fit in a signed 64-bit word.
MAX_MODULUS = 1 << 31


class NotAUnit(ValueError):
    """Raised when inverting an element divisible by p."""


def is_prime(p: int) -> bool:
    """Trial-division primality check; inputs here are always small."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingCtx:
    """The ring Z_{p^n}: prime ``p``, exponent ``n``, with ``q = p**n``.

    ``phi`` is Euler's totient of ``q``.  ``mu`` is the Kempner degree
    bound (smallest ``m`` with ``q | m!``); it is not needed for ring
    arithmetic and is computed on demand by the oracle module.
    """

    p: int
    n: int
    q: int = 0
    phi: int = 0
    mu: int | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.n < 1:
            raise ValueError(f"n={self.n} must be positive")
        q = self.p**self.n
        if q > MAX_MODULUS:
            raise ValueError(f"q=p^n={q} exceeds the supported word size {MAX_MODULUS}")
        if self.q and self.q != q:
            raise ValueError(f"q={self.q} is not p^n={q}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "phi", q - q // self.p)

    def reduce(self, a: int) -> int:
        return a % self.q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def power(self, a: int, e: int) -> int:
        """a**e mod q by repeated squaring; exponents are plain ints."""
        return pow(a % self.q, e, self.q)

    def val(self, a: int) -> int:
        """p-adic valuation of ``a`` in [0, n]; val(0) = n by convention.

        The convention keeps the codomain finite so that valuation
        comparisons during elimination are total.
        """
        a %= self.q
        if a == 0:
            return self.n
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v

    def is_unit(self, a: int) -> bool:
        return a % self.p != 0

    def inv_unit(self, a: int) -> int:
        """Inverse of a unit modulo q; raises NotAUnit when p | a."""
        a %= self.q
        if a % self.p == 0:
            raise NotAUnit(f"{a} is divisible by {self.p}, not invertible mod {self.q}")
        return pow(a, -1, self.q)

    def __repr__(self) -> str:
        return f"RingCtx(p={self.p}, n={self.n}, q={self.q})"
