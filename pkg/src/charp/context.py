"""Computation context: the odd prime p and the ambient variable count.

Everything in charp is exact arithmetic over the prime field F_p in a
fixed polynomial ring F_p[x_1..x_n] (or its fraction field).  A Context
pins down (p, n) once; every value carries a reference to its context
and operations refuse to mix contexts.

p must be an odd prime: the abelian p-curvature formula assumes
characteristic != 2, so p = 2 is rejected at construction.  There is no
hard upper bound in the library (the CLI applies a soft cap, see
CHARP_MAX_P), but f -> f^p blows up degrees quickly, so small p is the
intended regime.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CharTwo, CharpError, IndexOutOfRange

_LETTERS = ("x", "y", "z", "w")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Context:
    """Immutable (p, nvars) pair with variable naming helpers."""

    p: int
    nvars: int

    def __post_init__(self):
        if self.p == 2:
            raise CharTwo("characteristic 2 is not supported (p must be an odd prime)")
        if not is_prime(self.p):
            raise CharpError(f"p = {self.p} is not prime")
        if self.nvars < 1:
            raise CharpError("at least one variable is required")

    def var_name(self, i: int) -> str:
        """Canonical name of variable i (0-based): x,y,z,w for n <= 4, else x1.."""
        self.check_index(i)
        if self.nvars <= len(_LETTERS):
            return _LETTERS[i]
        return f"x{i + 1}"

    def form_name(self, i: int) -> str:
        return "d" + self.var_name(i)

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.nvars:
            raise IndexOutOfRange(f"variable index {i} outside 0..{self.nvars - 1}")

    def inv(self, a: int) -> int:
        """Inverse of a nonzero residue mod p."""
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 mod p")
        return pow(a, self.p - 2, self.p)
