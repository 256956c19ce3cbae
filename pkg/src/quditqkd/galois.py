"""Arithmetic in the finite field GF(p^r).

Elements are stored as coefficient vectors of polynomials over GF(p),
reduced modulo a fixed monic irreducible polynomial.  Every element also has
a canonical integer index, the base-p evaluation of its coefficients
(``index = sum(c_j * p**j)``).  All matrices built elsewhere in the package
are ordered by this index.

Irreducible moduli shipped for the non-prime orders::

    GF(4): x^2 + x + 1
    GF(8): x^3 + x + 1
    GF(9): x^2 + 1
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

import numpy as np

# Coefficients listed low degree first, leading 1 included.
_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
}

SHIPPED_ORDERS = (2, 3, 4, 5, 7, 8, 9)


class FieldError(ValueError):
    """Raised for invalid field construction or mixed-field arithmetic."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power(d: int) -> tuple[int, int] | None:
    """Return ``(p, r)`` with ``d == p**r`` or ``None`` if d is not a prime power."""
    if d < 2:
        return None
    p = 2
    while p * p <= d and d % p:
        p += 1
    if d % p:
        p = d
    r, rest = 0, d
    while rest % p == 0:
        rest //= p
        r += 1
    return (p, r) if rest == 1 else None


def is_prime_power(d: int) -> bool:
    return prime_power(d) is not None


# -- polynomial helpers over GF(p), coefficient lists low degree first --------

def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    m = _trim([c % p for c in m])
    inv_lead = pow(m[-1], p - 2, p)
    while len(_trim(a)) >= len(m) and any(a):
        shift = len(a) - len(m)
        f = a[-1] * inv_lead % p
        for i, c in enumerate(m):
            a[i + shift] = (a[i + shift] - f * c) % p
        _trim(a)
    return a


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..r//2."""
    r = len(modulus) - 1
    for deg in range(1, r // 2 + 1):
        for low in product(range(p), repeat=deg):
            rem = _poly_mod(modulus, list(low) + [1], p)
            if not any(rem):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^r) together with its defining modulus.

    ``modulus`` holds the r+1 coefficients of a monic irreducible polynomial,
    lowest degree first.
    """

    p: int
    r: int
    modulus: tuple[int, ...]

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.r < 1:
            raise FieldError("extension degree must be >= 1")
        mod = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.r + 1 or mod[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {self.r}")
        if not _is_irreducible(mod, self.p):
            raise FieldError(f"modulus {mod} is reducible over GF({self.p})")

    @property
    def d(self) -> int:
        return self.p**self.r

    @property
    def is_char2(self) -> bool:
        return self.p == 2

    def __repr__(self) -> str:
        return f"FieldSpec(d={self.d}, p={self.p}, r={self.r})"

    # -- element <-> index ------------------------------------------------

    def coeffs_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.d:
            raise FieldError(f"index {index} outside GF({self.d})")
        return tuple((index // self.p**j) % self.p for j in range(self.r))

    def index_of(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * self.p**j for j, c in enumerate(coeffs))

    def __call__(self, value: int | Sequence[int]) -> "FieldElement":
        """Build an element from its canonical index or its coefficients."""
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, self.coeffs_of(int(value)))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) != self.r:
            raise FieldError(f"expected {self.r} coefficients")
        return FieldElement(self, tuple(coeffs))

    # -- integer-indexed tables used for fast matrix construction -------------

    def _mul_index(self, a: int, b: int) -> int:
        ca, cb = self.coeffs_of(a), self.coeffs_of(b)
        prod = [0] * (2 * self.r - 1)
        for i, x in enumerate(ca):
            for j, y in enumerate(cb):
                prod[i + j] += x * y
        rem = _poly_mod(prod, self.modulus, self.p)
        return self.index_of(rem)

    @cached_property
    def add_table(self) -> np.ndarray:
        d, p = self.d, self.p
        tab = np.empty((d, d), dtype=np.int64)
        for a in range(d):
            ca = self.coeffs_of(a)
            for b in range(d):
                cb = self.coeffs_of(b)
                tab[a, b] = self.index_of([(x + y) % p for x, y in zip(ca, cb)])
        tab.setflags(write=False)
        return tab

    @cached_property
    def mul_table(self) -> np.ndarray:
        d = self.d
        tab = np.array([[self._mul_index(a, b) for b in range(d)] for a in range(d)], dtype=np.int64)
        tab.setflags(write=False)
        return tab

    @cached_property
    def neg_table(self) -> np.ndarray:
        neg = np.argmin(self.add_table, axis=1).astype(np.int64)
        neg.setflags(write=False)
        return neg

    @cached_property
    def inv_table(self) -> np.ndarray:
        """``inv_table[0]`` is -1; zero has no inverse."""
        inv = np.full(self.d, -1, dtype=np.int64)
        for a in range(1, self.d):
            inv[a] = int(np.nonzero(self.mul_table[a] == 1)[0][0])
        inv.setflags(write=False)
        return inv

    @cached_property
    def trace_table(self) -> np.ndarray:
        tr = np.empty(self.d, dtype=np.int64)
        for a in range(self.d):
            acc, frob = 0, a
            for _ in range(self.r):
                acc = int(self.add_table[acc, frob])
                frob = self._pow_index(frob, self.p)
            if acc >= self.p:
                raise FieldError("trace left the prime subfield; modulus table is corrupt")
            tr[a] = acc
        tr.setflags(write=False)
        return tr

    def _pow_index(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = int(self.mul_table[out, a])
        return out


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.spec.index_of(self.coeffs)

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            raise FieldError("operands belong to different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return add(self, neg(other))

    def __neg__(self) -> "FieldElement":
        return neg(self)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, other)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, inv(other))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"GF({self.spec.d})[{self.index}]"


def field(d: int, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Return the field of order ``d``.

    For the shipped orders the modulus comes from the built-in table; any
    other prime power needs an explicit irreducible ``modulus``.
    """
    pr = prime_power(d)
    if pr is None:
        raise FieldError(f"d={d} is not a prime power")
    p, r = pr
    if modulus is None:
        if r == 1:
            modulus = (0, 1)
        elif d in _MODULI:
            modulus = _MODULI[d]
        else:
            raise FieldError(f"no built-in modulus for GF({d}); pass one explicitly")
    return _cached_field(p, r, tuple(modulus))


_FIELDS: dict[tuple[int, int, tuple[int, ...]], FieldSpec] = {}


def _cached_field(p: int, r: int, modulus: tuple[int, ...]) -> FieldSpec:
    key = (p, r, modulus)
    if key not in _FIELDS:
        _FIELDS[key] = FieldSpec(p, r, modulus)
    return _FIELDS[key]


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return a.spec(int(a.spec.add_table[a.index, b.index]))


def neg(a: FieldElement) -> FieldElement:
    return a.spec(int(a.spec.neg_table[a.index]))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return a.spec(int(a.spec.mul_table[a.index, b.index]))


def inv(a: FieldElement) -> FieldElement:
    if not a:
        raise ZeroDivisionError("zero has no multiplicative inverse")
    return a.spec(int(a.spec.inv_table[a.index]))


def trace(a: FieldElement) -> int:
    """Absolute trace ``a + a^p + ... + a^(p^(r-1))`` as an integer in [0, p)."""
    return int(a.spec.trace_table[a.index])


def elements(spec: FieldSpec) -> list[FieldElement]:
    return [spec(i) for i in range(spec.d)]


def iter_pairs(spec: FieldSpec) -> Iterator[tuple[int, int]]:
    """All index pairs ``(m, n)`` in canonical row-major order."""
    return product(range(spec.d), repeat=2)
