"""Table-driven arithmetic in GF(q) for prime powers 2 <= q <= 16.

Element encoding: for a prime field the code of an element is its residue.
For GF(p^e), e > 1, an element is a polynomial c_0 + c_1 x + ... + c_{e-1} x^{e-1}
modulo a fixed irreducible polynomial, and its code is sum(c_i * p**i).

Fixed moduli (Conway polynomials, coefficients listed from x^0 upwards):

    q = 4    x^2 + x + 1          [1, 1, 1]
    q = 8    x^3 + x + 1          [1, 1, 0, 1]
    q = 9    x^2 + 2x + 2         [2, 2, 1]
    q = 16   x^4 + x + 1          [1, 1, 0, 0, 1]
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DivisionByZero, NotAPrimePower, Unsupported

MAX_Q = 16

MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
}


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` and p prime, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    return (p, e) if rest == 1 else None


def _digits(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(a % p)
        a //= p
    return out


def _undigits(c: list[int], p: int) -> int:
    return sum(ci * p**i for i, ci in enumerate(c))


def _poly_mulmod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    e = len(mod) - 1
    prod = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # mod is monic; reduce from the top degree down
    for deg in range(len(prod) - 1, e - 1, -1):
        c = prod[deg]
        if c:
            for i, mi in enumerate(mod):
                prod[deg - e + i] = (prod[deg - e + i] - c * mi) % p
    return prod[:e]


class FieldSpec:
    """GF(q) with precomputed addition, multiplication and inverse tables.

    Instances are immutable and cached per q, so ``field_new(q) is field_new(q)``.
    """

    __slots__ = ("q", "p", "e", "modulus_poly", "add_table", "mul_table",
                 "sub_table", "neg_table", "inv_table")

    def __init__(self, q: int, p: int, e: int, modulus_poly: tuple[int, ...] | None):
        self.q, self.p, self.e = q, p, e
        self.modulus_poly = modulus_poly
        add = np.zeros((q, q), dtype=np.uint8)
        mul = np.zeros((q, q), dtype=np.uint8)
        digits = [_digits(a, p, e) for a in range(q)]
        for a in range(q):
            for b in range(q):
                add[a, b] = _undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
                if e == 1:
                    mul[a, b] = (a * b) % p
                else:
                    mul[a, b] = _undigits(_poly_mulmod(digits[a], digits[b], modulus_poly, p), p)
        neg = np.array([_undigits([(-x) % p for x in digits[a]], p) for a in range(q)],
                       dtype=np.uint8)
        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            hits = np.nonzero(mul[a] == 1)[0]
            if len(hits) != 1:
                raise Unsupported(f"modulus for q={q} is not irreducible")
            inv[a] = hits[0]
        sub = add[:, neg]
        for t in (add, mul, neg, inv, sub):
            t.setflags(write=False)
        self.add_table, self.mul_table = add, mul
        self.sub_table, self.neg_table, self.inv_table = sub, neg, inv

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (field_new, (self.q,))

    @property
    def is_prime(self) -> bool:
        return self.e == 1

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero(f"{a}/0 in GF({self.q})")
        return int(self.mul_table[a, self.inv_table[b]])

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def elements(self) -> range:
        return range(self.q)


@lru_cache(maxsize=None)
def field_new(q: int) -> FieldSpec:
    pe = prime_power(q)
    if pe is None:
        raise NotAPrimePower(f"q={q} is not a prime power")
    if q > MAX_Q:
        raise Unsupported(f"q={q} exceeds the supported maximum {MAX_Q}")
    p, e = pe
    return FieldSpec(q, p, e, MODULI.get(q) if e > 1 else None)


def field_arith(f: FieldSpec, op: str, a: int, b: int | None = None) -> int:
    """Dispatch ``op`` in {add, sub, mul, div, neg, inv, pow} on element codes."""
    if op in ("neg", "inv"):
        return getattr(f, op)(a)
    if b is None:
        raise TypeError(f"operation {op!r} needs a second operand")
    if op not in ("add", "sub", "mul", "div", "pow"):
        raise ValueError(f"unknown field operation {op!r}")
    return getattr(f, op)(a, b)
