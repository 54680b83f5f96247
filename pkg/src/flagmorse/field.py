"""Arithmetic in the prime field GF(q)."""

from __future__ import annotations

from dataclasses import dataclass


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field of order ``q``."""

    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or isinstance(self.q, bool):
            raise TypeError("field order must be an integer")
        if not is_prime(self.q):
            raise ValueError(f"field order must be prime, got {self.q}")

    def __call__(self, value: int) -> FieldElem:
        return FieldElem(value % self.q, self)

    def elements(self) -> list[FieldElem]:
        return [FieldElem(v, self) for v in range(self.q)]

    def inv(self, value: int) -> int:
        """Inverse of a raw residue; the matrix code works on plain ints."""
        value %= self.q
        if value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        return pow(value, self.q - 2, self.q)


@dataclass(frozen=True)
class FieldElem:
    value: int
    spec: FieldSpec

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.spec.q:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.spec.q}")

    def _check(self, other: FieldElem) -> None:
        if not isinstance(other, FieldElem):
            raise TypeError(f"expected FieldElem, got {type(other).__name__}")
        if other.spec != self.spec:
            raise ValueError(f"mixed fields GF({self.spec.q}) and GF({other.spec.q})")

    def __add__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem((self.value + other.value) % self.spec.q, self.spec)

    def __sub__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem((self.value - other.value) % self.spec.q, self.spec)

    def __mul__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.value * other.value % self.spec.q, self.spec)

    def __neg__(self) -> FieldElem:
        return FieldElem(-self.value % self.spec.q, self.spec)

    def __truediv__(self, other: FieldElem) -> FieldElem:
        return self * fp_inv(other)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.spec.q})"


def fp_add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def fp_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def fp_inv(a: FieldElem) -> FieldElem:
    return FieldElem(a.spec.inv(a.value), a.spec)
