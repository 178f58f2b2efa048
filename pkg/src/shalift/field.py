"""Exact scalar fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    pass


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


@dataclass(frozen=True)
class Field:
    """A ground field.  ``p == 0`` means the rationals.

    Scalars are plain Python numbers: ``int``/``Fraction`` over Q and ``int``
    in ``range(p)`` over GF(p).  Arithmetic is done with the native operators
    and normalized with :meth:`reduce`, so integer intermediates stay exact.
    """

    p: int = 0

    def __post_init__(self):
        if self.p and not is_prime(self.p):
            raise FieldError(f"modulus {self.p} is not prime")

    @classmethod
    def rationals(cls) -> Field:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls(p)

    @classmethod
    def from_name(cls, name: str) -> Field:
        """Parse ``Q``, ``GF7``, ``GF:7`` or ``GFp:7``."""
        s = name.strip()
        if s.upper() in ("Q", "QQ", "RATIONALS"):
            return cls(0)
        up = s.upper()
        for prefix in ("GFP:", "GF:", "GF"):
            if up.startswith(prefix):
                try:
                    p = int(s[len(prefix):])
                except ValueError:
                    break
                return cls(p)
        raise FieldError(f"unknown field {name!r}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"GF{self.p}"

    def to_spec(self) -> dict:
        if self.p == 0:
            return {"kind": "rationals"}
        return {"kind": "prime-field", "p": self.p}

    @classmethod
    def from_spec(cls, spec: dict) -> Field:
        kind = spec.get("kind")
        if kind == "rationals":
            return cls(0)
        if kind == "prime-field":
            p = spec.get("p")
            if not isinstance(p, int):
                raise FieldError("prime-field spec needs an integer p")
            return cls(p)
        raise FieldError(f"unknown field kind {kind!r}")

    # arithmetic ---------------------------------------------------------

    def reduce(self, x):
        if self.p:
            return x % self.p
        return x

    def inv(self, x):
        if self.p:
            x %= self.p
            if x == 0:
                raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
            return pow(x, self.p - 2, self.p)
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / Fraction(x)

    def neg(self, x):
        return self.reduce(-x)

    def random(self, rng: random.Random, bound: int = 3, nonzero: bool = False):
        """Small random scalar (integers in [-bound, bound] over Q)."""
        while True:
            if self.p:
                v = rng.randrange(self.p)
            else:
                v = rng.randint(-bound, bound)
            if v or not nonzero:
                return v

    # serialization ------------------------------------------------------

    def format(self, x) -> str:
        if self.p:
            return str(x % self.p)
        q = Fraction(x)
        if q.denominator == 1:
            return str(q.numerator)
        return f"{q.numerator}/{q.denominator}"

    def parse(self, s) -> int | Fraction:
        if isinstance(s, bool):
            raise FieldError(f"not a scalar: {s!r}")
        if isinstance(s, int):
            s = str(s)
        if not isinstance(s, str):
            raise FieldError(f"scalars serialize as strings, got {s!r}")
        if self.p:
            try:
                v = int(s)
            except ValueError:
                raise FieldError(f"bad GF({self.p}) element {s!r}") from None
            if not 0 <= v < self.p:
                raise FieldError(f"GF({self.p}) element {s!r} out of range")
            return v
        try:
            q = Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise FieldError(f"bad rational {s!r}") from None
        return q.numerator if q.denominator == 1 else q
