"""Arithmetic over prime fields.

Symbols are plain ints in ``[0, modulus)``; the field object carries the
modulus and validates operands, so a symbol that belongs to a different
field (or is not reduced) is rejected instead of silently wrapped.
"""

import itertools
from dataclasses import dataclass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field of integers modulo a prime."""

    modulus: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or isinstance(self.modulus, bool):
            raise ValueError(f"field modulus must be an int, got {self.modulus!r}")
        if not _is_prime(self.modulus):
            raise ValueError(f"field modulus must be prime, got {self.modulus}")

    def check(self, symbol: int) -> int:
        """Validate that ``symbol`` is a reduced element of this field."""
        if not isinstance(symbol, int) or isinstance(symbol, bool):
            raise ValueError(f"field symbol must be an int, got {symbol!r}")
        if not 0 <= symbol < self.modulus:
            raise ValueError(
                f"symbol {symbol} does not belong to the field of order {self.modulus}"
            )
        return symbol

    def add(self, a: int, b: int) -> int:
        return (self.check(a) + self.check(b)) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (self.check(a) - self.check(b)) % self.modulus

    def neg(self, a: int) -> int:
        return -self.check(a) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return (self.check(a) * self.check(b)) % self.modulus

    def sum(self, symbols) -> int:
        total = 0
        for s in symbols:
            total += self.check(s)
        return total % self.modulus

    def sample(self, rng) -> int:
        """One symbol drawn uniformly, deterministic given the rng's state."""
        return rng.randrange(self.modulus)

    def sample_vector(self, rng, length: int) -> tuple[int, ...]:
        return tuple(rng.randrange(self.modulus) for _ in range(length))

    def elements(self) -> range:
        """All field elements in ascending order, each exactly once."""
        return range(self.modulus)

    def iter_vectors(self, length: int):
        """Every length-``length`` vector over the field, lexicographically."""
        return itertools.product(self.elements(), repeat=length)

    def __str__(self) -> str:
        return f"F{self.modulus}"
