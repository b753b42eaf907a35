"""Exact arithmetic in GF(q), q = p^n with p an odd prime.

Elements are plain Python ints ("codes") in ``range(q)``.  The element
``c_0 + c_1 t + ... + c_{n-1} t^{n-1}`` of GF(p)[t]/(m(t)) has code
``c_0 + c_1 p + ... + c_{n-1} p^{n-1}``, so for prime fields the code is the
residue itself and ``0``/``1`` always encode zero and one.

Multiplication in extension fields goes through discrete log tables built
from the primitive element, which keeps memory linear in q.  Square roots are
read from a table filled by exhaustive squaring; that is cheap for the
desk-scale fields this package targets (q up to about 10^4).
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    DegenerateField,
    DivisionByZero,
    EvenCharacteristic,
    NoSquareRoot,
    NotAPrimePower,
)

Felt = int


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise NotAPrimePower(f"{q} is not a prime power")
    p = next(d for d in itertools.count(2) if q % d == 0)
    n, rest = 0, q
    while rest % p == 0:
        rest //= p
        n += 1
    if rest != 1:
        raise NotAPrimePower(f"{q} has at least two distinct prime divisors")
    return p, n


# -- polynomials over GF(p), coefficient lists low degree first --------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = _poly_trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        _poly_trim(a)
    return a


def _monic_polys(p: int, degree: int):
    for low in itertools.product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    n = len(poly) - 1
    for d in range(1, n // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    for poly in _monic_polys(p, n):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """The field GF(q).

    Instances are immutable after construction; build them with
    :func:`field_create` so each q maps to one shared context.
    """

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus
        q = self.q
        self._digits = [self._to_digits(c) for c in range(q)]
        self._powers = [p**i for i in range(n)]
        if n == 1:
            self._log = None
            self._exp = None
        else:
            self._exp, self._log = self._build_log_tables()
        self.alpha = self._find_alpha()
        if n == 1:
            # log tables for prime fields are only needed by callers asking
            # for discrete logs; build them from alpha
            exp = [1] * (q - 1)
            for k in range(1, q - 1):
                exp[k] = exp[k - 1] * self.alpha % p
            self._exp = exp
            self._log = {v: k for k, v in enumerate(exp)}

    def __repr__(self) -> str:
        return f"FieldCtx(q={self.q})"

    def __reduce__(self):
        return (field_create, (self.q,))

    # -- codec ---------------------------------------------------------------

    def _to_digits(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def encode(self, coeffs) -> Felt:
        """Code of the polynomial with the given coefficients (low first)."""
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            coeffs = _poly_mod(coeffs, list(self.modulus), self.p)
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def decode(self, x: Felt) -> tuple[int, ...]:
        return self._digits[x]

    def from_int(self, k: int) -> Felt:
        """Image of the integer ``k`` in the prime subfield."""
        return k % self.p

    def elements(self) -> range:
        return range(self.q)

    # -- raw polynomial multiply, used only while bootstrapping ---------------

    def _poly_mul_code(self, x: Felt, y: Felt) -> Felt:
        a, b = self._digits[x], self._digits[y]
        prod = [0] * (2 * self.n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        return self.encode(prod)

    def _build_log_tables(self):
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._poly_mul_code(x, g)
            if len(exp) == q - 1:
                log = [0] * q
                for k, v in enumerate(exp):
                    log[v] = k
                return exp, log
        raise AssertionError("no primitive element")  # pragma: no cover

    def _order(self, x: Felt) -> int:
        k, y = 1, x
        while y != 1:
            y = self.mul(y, x)
            k += 1
        return k

    def _find_alpha(self) -> Felt:
        for g in range(1, self.q):
            if self._order(g) == self.q - 1:
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    # -- scalar arithmetic ---------------------------------------------------

    def add(self, x: Felt, y: Felt) -> Felt:
        if self.n == 1:
            return (x + y) % self.p
        p = self.p
        dx, dy = self._digits[x], self._digits[y]
        return sum(((a + b) % p) * w for a, b, w in zip(dx, dy, self._powers))

    def neg(self, x: Felt) -> Felt:
        if self.n == 1:
            return -x % self.p
        p = self.p
        return sum((-a % p) * w for a, w in zip(self._digits[x], self._powers))

    def sub(self, x: Felt, y: Felt) -> Felt:
        if self.n == 1:
            return (x - y) % self.p
        return self.add(x, self.neg(y))

    def mul(self, x: Felt, y: Felt) -> Felt:
        if self.n == 1:
            return x * y % self.p
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]

    def inv(self, x: Felt) -> Felt:
        if x == 0:
            raise DivisionByZero("0 has no inverse")
        if self.n == 1:
            return pow(x, -1, self.p)
        return self._exp[-self._log[x] % (self.q - 1)]

    def div(self, x: Felt, y: Felt) -> Felt:
        return self.mul(x, self.inv(y))

    def pow(self, x: Felt, k: int) -> Felt:
        if x == 0:
            if k < 0:
                raise DivisionByZero("0 has no inverse")
            return 1 if k == 0 else 0
        if self.n == 1:
            return pow(x, k % (self.q - 1), self.p)
        return self._exp[self._log[x] * k % (self.q - 1)]

    def alpha_pow(self, k: int) -> Felt:
        return self._exp[k % (self.q - 1)]

    def log(self, x: Felt) -> int:
        """Discrete log of ``x`` to base alpha."""
        if x == 0:
            raise DivisionByZero("log of 0")
        return self._log[x]

    # -- squares -------------------------------------------------------------

    def is_square(self, x: Felt) -> bool:
        # Euler's criterion; 0 counts as a square
        return self.pow(x, (self.q - 1) // 2) in (0, 1)

    @cached_property
    def _sqrt_table(self) -> dict[Felt, Felt]:
        table: dict[Felt, Felt] = {}
        for y in range(self.q):
            table.setdefault(self.mul(y, y), y)
        return table

    def sqrt(self, x: Felt) -> Felt:
        """The square root with the smaller code."""
        try:
            return self._sqrt_table[x]
        except KeyError:
            raise NoSquareRoot(f"{x} is not a square in GF({self.q})") from None

    def nonsquare(self) -> Felt:
        """Smallest-code nonsquare."""
        return next(x for x in range(1, self.q) if not self.is_square(x))

    # -- vectorised arithmetic on numpy arrays of codes ----------------------

    @cached_property
    def _digit_array(self) -> np.ndarray:
        return np.array(self._digits, dtype=np.int64).reshape(self.q, self.n)

    @cached_property
    def _log_array(self) -> np.ndarray:
        log = np.zeros(self.q, dtype=np.int64)
        for v, k in (self._log.items() if isinstance(self._log, dict)
                     else enumerate(self._log)):
            if v:
                log[v] = k
        return log

    @cached_property
    def _exp_array(self) -> np.ndarray:
        return np.array(self._exp, dtype=np.int64)

    def vadd(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x, y = np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)
        if self.n == 1:
            return (x + y) % self.p
        d = (self._digit_array[x] + self._digit_array[y]) % self.p
        return d @ np.array(self._powers, dtype=np.int64)

    def vneg(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if self.n == 1:
            return -x % self.p
        d = -self._digit_array[x] % self.p
        return d @ np.array(self._powers, dtype=np.int64)

    def vsub(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.vadd(x, self.vneg(y))

    def vmul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x, y = np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)
        if self.n == 1:
            return x * y % self.p
        k = (self._log_array[x] + self._log_array[y]) % (self.q - 1)
        return np.where((x == 0) | (y == 0), 0, self._exp_array[k])


@lru_cache(maxsize=None)
def field_create(q: int) -> FieldCtx:
    """Build GF(q) with a deterministic modulus and primitive element.

    The modulus is the lexicographically smallest monic irreducible
    polynomial (coefficients compared low degree first) and ``alpha`` is the
    smallest code of multiplicative order ``q - 1``.
    """
    if q < 3:
        if q == 2:
            raise EvenCharacteristic("characteristic 2 is not supported")
        raise DegenerateField(f"q must be at least 3, got {q}")
    p, n = _factor_prime_power(q)
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    return FieldCtx(p, n, smallest_irreducible(p, n))
