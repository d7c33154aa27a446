"""Small finite fields F_{p^f} with index/Zech-logarithm representation.

Elements are plain ints: 0 encodes the zero element, and 1+k encodes xi^k
for the fixed primitive element xi, 0 <= k < p^f - 1.  Multiplication is
exponent arithmetic; addition goes through a Zech logarithm table built once
at construction from polynomial arithmetic modulo the field modulus.

Determinism: the modulus is the lexicographically smallest monic irreducible
of its degree (coefficient vectors read as base-p integers, constant term
first), and xi is the primitive element with the smallest polynomial code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import BudgetExceeded

MAX_FIELD_SIZE = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomial helpers over F_p; coefficient tuples, constant term first ----


def _poly_trim(c: tuple[int, ...]) -> tuple[int, ...]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _poly_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[int, ...]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        if a[i]:
            q = a[i] * inv_lead % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - q * m[j]) % p
    return _poly_trim(tuple(a))


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(tuple(out))


def _poly_is_irreducible(m: tuple[int, ...], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg(m)//2."""
    deg = len(m) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            div = tuple((code // p**i) % p for i in range(d)) + (1,)
            if not _poly_mod(m, div, p):
                return False
    return True


def _smallest_irreducible(p: int, f: int) -> tuple[int, ...]:
    for code in range(p**f):
        m = tuple((code // p**i) % p for i in range(f)) + (1,)
        if _poly_is_irreducible(m, p):
            return m
    raise RuntimeError("no irreducible polynomial found")  # unreachable


@dataclass
class FieldSpec:
    """F_{p^f} with log/antilog and Zech tables; immutable after construction."""

    p: int
    f: int
    q: int
    modulus: tuple[int, ...]
    xi_code: int
    antilog: list[int] = field(repr=False)  # k -> poly code of xi^k
    log: list[int] = field(repr=False)  # poly code -> k (-1 for zero)
    zech: list[int] = field(repr=False)  # k -> log(1 + xi^k), -1 when the sum is 0

    # -- encoding helpers -----------------------------------------------

    def from_poly_code(self, code: int) -> int:
        """Element from base-p coefficient code (0 <= code < q)."""
        if code == 0:
            return 0
        return 1 + self.log[code]

    def poly_code(self, a: int) -> int:
        return 0 if a == 0 else self.antilog[a - 1]

    def from_int(self, n: int) -> int:
        """Element from an integer via the prime subfield (n mod p)."""
        return self.from_poly_code(n % self.p)

    def elements(self) -> range:
        return range(self.q)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1  # xi^0

    @property
    def xi(self) -> int:
        return 2 if self.q > 2 else 1  # xi^1, except in F_2 where xi = 1

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        k1, k2 = a - 1, b - 1
        z = self.zech[(k2 - k1) % (self.q - 1)]
        if z < 0:
            return 0
        return 1 + (k1 + z) % (self.q - 1)

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        return 1 + (a - 1 + (self.q - 1) // 2) % (self.q - 1)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return 1 + (a - 1 + b - 1) % (self.q - 1)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of the zero field element")
        return 1 + (-(a - 1)) % (self.q - 1)

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inversion of the zero field element")
            return self.one if n == 0 else 0
        return 1 + ((a - 1) * n) % (self.q - 1)

    def frobenius(self, a: int, t: int = 1) -> int:
        """a |-> a^(p^t); frobenius(a, f) is the identity."""
        if a == 0:
            return 0
        return 1 + ((a - 1) * pow(self.p, t, self.q - 1)) % (self.q - 1)

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return (a - 1) % 2 == 0

    def element_str(self, a: int) -> str:
        return str(self.poly_code(a))


@lru_cache(maxsize=None)
def make_field(p: int, f: int) -> FieldSpec:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f < 1:
        raise ValueError("degree must be positive")
    q = p**f
    if q > MAX_FIELD_SIZE:
        raise BudgetExceeded(f"field size {q} exceeds table bound {MAX_FIELD_SIZE}")
    modulus = _smallest_irreducible(p, f)

    def poly_of_code(code: int) -> tuple[int, ...]:
        return _poly_trim(tuple((code // p**i) % p for i in range(f)))

    def code_of_poly(c: tuple[int, ...]) -> int:
        return sum(ci * p**i for i, ci in enumerate(c))

    # smallest primitive element by polynomial code
    factors = prime_factors(q - 1)
    xi_code = None
    for code in range(1, q):
        c = poly_of_code(code)
        ok = True
        for r in factors:
            e = (q - 1) // r
            acc: tuple[int, ...] = (1,)
            base = c
            k = e
            while k:
                if k & 1:
                    acc = _poly_mod(_poly_mul(acc, base, p), modulus, p)
                base = _poly_mod(_poly_mul(base, base, p), modulus, p)
                k >>= 1
            if acc == (1,):
                ok = False
                break
        if ok:
            xi_code = code
            break
    assert xi_code is not None

    antilog = [0] * (q - 1)
    log = [-1] * q
    cur: tuple[int, ...] = (1,)
    xi_poly = poly_of_code(xi_code)
    for k in range(q - 1):
        code = code_of_poly(cur)
        antilog[k] = code
        log[code] = k
        cur = _poly_mod(_poly_mul(cur, xi_poly, p), modulus, p)
    assert code_of_poly(cur) == 1, "xi is not primitive"

    zech = [-1] * (q - 1)
    for k in range(q - 1):
        c = list(poly_of_code(antilog[k])) or [0]
        c[0] = (c[0] + 1) % p
        code = code_of_poly(_poly_trim(tuple(c)))
        zech[k] = log[code] if code else -1

    return FieldSpec(
        p=p, f=f, q=q, modulus=modulus, xi_code=xi_code,
        antilog=antilog, log=log, zech=zech,
    )
