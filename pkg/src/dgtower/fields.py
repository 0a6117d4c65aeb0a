"""Exact coefficient fields: the rationals and prime fields GF(p).

Field elements are plain Python values (``Fraction`` for QQ, ``int`` in
``[0, p)`` for GF(p)); all arithmetic goes through the field object, so the
rest of the kernel never needs to know which field it is working over.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["Field", "RationalField", "PrimeField", "QQ", "field_from_spec"]


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the witness set 2,3,5,7 is exact below
    # 3_215_031_751, which covers the supported range p < 2**31.
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Abstract interface; see RationalField and PrimeField."""

    characteristic: int
    name: str

    def of(self, value):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def random(self, rng):
        raise NotImplementedError

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if not self.is_zero(a):
                return a

    def to_str(self, a) -> str:
        return str(a)


class RationalField(Field):
    """The field of rational numbers; elements are ``Fraction`` values."""

    characteristic = 0
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def of(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in QQ")
        return 1 / a

    def is_zero(self, a) -> bool:
        return a == 0

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """GF(p) for a prime p < 2**31; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p >= 2**31 or not _is_prime(p):
            raise ValueError(f"modulus must be a prime below 2**31, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def of(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return value.numerator * pow(den, self.p - 2, self.p) % self.p
        if isinstance(value, str):
            return self.of(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def add(self, a, b):
        c = a + b
        return c - self.p if c >= self.p else c

    def sub(self, a, b):
        c = a - b
        return c + self.p if c < 0 else c

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return self.p - a if a else 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.name}")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def random(self, rng):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


def field_from_spec(spec) -> Field:
    """Build a field from a DSL-style spec: 'QQ', 0, or a prime integer."""
    if isinstance(spec, Field):
        return spec
    if spec in ("QQ", "Q", 0, "0"):
        return QQ
    try:
        p = int(spec)
    except (TypeError, ValueError):
        raise ValueError(f"unknown field spec {spec!r}") from None
    return PrimeField(p)
