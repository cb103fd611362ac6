"""Exact scalar arithmetic: rationals (arbitrary precision) and prime fields.

All other modules treat scalars as opaque values managed through a FieldSpec.
Rationals are gmpy2.mpq (C-speed exact fractions, falling back to
fractions.Fraction when gmpy2 is unavailable); prime-field scalars are plain
ints in 0..p-1.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as _ratio
except ImportError:  # pragma: no cover
    from fractions import Fraction as _ratio


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class FieldSpec:
    """The ground field: rationals or F_p. Immutable, hashable."""

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int | None = None):
        if kind == "Q":
            if p is not None:
                raise ValueError("rationals take no modulus")
        elif kind == "Fp":
            if p is None or not _is_prime(p):
                raise ValueError(f"PrimeField needs a prime modulus, got {p!r}")
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("Fp", p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse 'q' or 'fp:P' (case-insensitive)."""
        t = text.strip().lower()
        if t in ("q", "rationals"):
            return cls.rationals()
        if t.startswith("fp:"):
            return cls.prime(int(t[3:]))
        raise ValueError(f"cannot parse field spec {text!r} (expected 'q' or 'fp:P')")

    def spec_string(self) -> str:
        return "q" if self.kind == "Q" else f"fp:{self.p}"

    # scalar constructors ------------------------------------------------
    @property
    def zero(self):
        return _ratio(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return _ratio(1) if self.kind == "Q" else 1

    def from_int(self, n: int):
        return _ratio(n) if self.kind == "Q" else n % self.p

    def scalar(self, value):
        """Coerce an int, rational, or 'p/q' string into a field scalar."""
        if self.kind == "Q":
            if isinstance(value, str):
                return _ratio(value)
            return _ratio(value)
        if isinstance(value, str):
            value = int(value)
        if not isinstance(value, int):
            raise TypeError(f"prime-field scalar must be an integer, got {value!r}")
        return value % self.p

    # arithmetic ---------------------------------------------------------
    def add(self, a, b):
        return a + b if self.kind == "Q" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "Q" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "Q" else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == "Q" else (-a) % self.p

    def inv(self, a):
        if self.kind == "Q":
            if a == 0:
                raise ZeroDivisionError("division by zero")
            return 1 / _ratio(a)
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("division by zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0 if self.kind == "Q" else a % self.p == 0

    # serialization ------------------------------------------------------
    def fmt(self, a) -> str | int:
        """Bit-exact serialization: 'p/q' strings over Q, ints 0..p-1 over F_p."""
        if self.kind == "Q":
            return str(a)
        return int(a % self.p)

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.kind == other.kind
            and self.p == other.p
        )

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "FieldSpec.rationals()" if self.kind == "Q" else f"FieldSpec.prime({self.p})"
