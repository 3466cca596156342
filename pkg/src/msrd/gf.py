"""Finite fields GF(p) ⊂ GF(q) ⊂ GF(q^m) with integer-coded elements.

Every element is identified with its canonical integer code: an element of an
extension of degree ``d`` over a base field of order ``Q`` with coefficient
list ``(c_0, ..., c_{d-1})`` has code ``sum(code(c_i) * Q**i)``.  Unwinding the
recursion, the code is just the little-endian base-``p`` digit string of the
element's coordinates over the prime field, so addition at every level is
digitwise addition mod ``p``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from msrd import linalg
from msrd.errors import FieldMismatch, GuardExceeded

ENUMERATION_GUARD = 2**20
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % f for f in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**e``; raises ``ValueError`` if ``q`` is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1 or not is_prime(p):
                break
            return p, e
    raise ValueError(f"{q} is not a prime power")


class FieldTables(NamedTuple):
    """Dense operation tables consumed by the compiled kernels."""

    q: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray


# -- polynomials over an integer-coded field, little-endian coefficient lists


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a, b, F) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(out)


def poly_divmod(a, b, F) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = F.inv(b[-1])
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        f = F.mul(a[-1], lead_inv)
        quot[shift] = f
        for i, y in enumerate(b):
            a[i + shift] = F.sub(a[i + shift], F.mul(f, y))
        _trim(a)
    return quot, a


def monic_polys(F, degree: int):
    """All monic polynomials of the given degree, in canonical code order."""
    for tail in itertools.product(range(F.order), repeat=degree):
        yield list(reversed(tail)) + [1]


def is_irreducible(poly, F) -> bool:
    poly = _trim(list(poly))
    d = len(poly) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for deg in range(1, d // 2 + 1):
        for cand in monic_polys(F, deg):
            if not poly_divmod(poly, cand, F)[1]:
                return False
    return True


def canonical_modulus(F, degree: int) -> tuple[int, ...]:
    """Monic irreducible of ``degree`` whose low coefficients have the smallest code."""
    for code in range(F.order**degree):
        tail = [(code // F.order**i) % F.order for i in range(degree)]
        poly = tail + [1]
        if is_irreducible(poly, F):
            return tuple(poly)
    raise ValueError(f"no irreducible polynomial of degree {degree}")  # pragma: no cover


class GaloisField:
    """GF(p) when ``base`` is None, otherwise ``base[x] / (modulus)``."""

    zero = 0
    one = 1

    def __init__(self, p: int, base: GaloisField | None = None, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.p = p
        self.base = base
        if base is None:
            self.degree = 1
            self.modulus = None
            self.order = p
        else:
            modulus = tuple(modulus)
            if modulus[-1] != 1:
                raise ValueError("modulus must be monic")
            if not is_irreducible(modulus, base):
                raise ValueError(f"modulus {modulus} is reducible over GF({base.order})")
            self.degree = len(modulus) - 1
            self.modulus = modulus
            self.order = base.order**self.degree
        self.abs_degree = 1 if base is None else base.abs_degree * self.degree
        self._tabs = None
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"GaloisField(order={self.order})"

    # -- coefficient view

    def coeffs(self, a: int) -> list[int]:
        if self.base is None:
            return [a]
        Q = self.base.order
        return [(a // Q**i) % Q for i in range(self.degree)]

    def from_coeffs(self, cs) -> int:
        if self.base is None:
            return cs[0]
        Q = self.base.order
        return sum(c * Q**i for i, c in enumerate(cs))

    def digits(self, a: int) -> list[int]:
        """Base-p digits of the code, one per GF(p)-coordinate."""
        out = []
        for _ in range(self.abs_degree):
            out.append(a % self.p)
            a //= self.p
        return out

    # -- arithmetic

    def add(self, a: int, b: int) -> int:
        if self._tabs is not None:
            return self._tabs[0][a][b]
        return self._add_digits(a, b)

    def _add_digits(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p, out, scale = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p, out, scale = self.p, 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._tabs is not None:
            return self._tabs[1][a][b]
        return self._mul_poly(a, b)

    def _mul_poly(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        prod = poly_mul(self.coeffs(a), self.coeffs(b), self.base)
        rem = poly_divmod(prod, self.modulus, self.base)[1]
        return self.from_coeffs(rem + [0] * (self.degree - len(rem)))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self._tabs is not None:
            return self._tabs[3][a]
        return self.inv_euclid(a)

    def inv_euclid(self, a: int) -> int:
        """Inverse by the extended Euclidean algorithm on polynomials."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self.base is None:
            return pow(a, -1, self.p)
        F = self.base
        r0, r1 = list(self.modulus), self.coeffs(a)
        _trim(r1)
        s0, s1 = [], [1]
        while r1:
            quot, rem = poly_divmod(r0, r1, F)
            qs = poly_mul(quot, s1, F)
            s_next = _poly_sub(s0, qs, F)
            r0, r1 = r1, rem
            s0, s1 = s1, s_next
        # r0 is a nonzero constant
        c = F.inv(r0[0])
        res = [F.mul(c, x) for x in s0]
        res = poly_divmod(res, self.modulus, F)[1]
        return self.from_coeffs(res + [0] * (self.degree - len(res)))

    def inv_search(self, a: int) -> int:
        """Inverse by exhaustive search; reference only."""
        for b in range(1, self.order):
            if self._mul_poly(a, b) == 1:
                return b
        raise ZeroDivisionError("zero has no multiplicative inverse")

    # -- tables

    def _build_tables(self):
        n = self.order
        digs = np.array([self.digits(a) for a in range(n)], dtype=np.int64)
        weights = self.p ** np.arange(digs.shape[1], dtype=np.int64)
        add = np.zeros((n, n), dtype=np.int64)
        for j in range(digs.shape[1]):
            col = digs[:, j]
            add += ((col[:, None] + col[None, :]) % self.p) * weights[j]
        add = add.astype(np.int32)
        neg = (((-digs) % self.p) @ weights).astype(np.int32)
        # multiplication by a fixed element is GF(p)-linear on digit vectors
        basis = [int(w) for w in weights]
        mul = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            lin = np.array([self.digits(self._mul_poly(a, b)) for b in basis], dtype=np.int64)
            mul[a] = ((digs @ lin) % self.p) @ weights
        inv = np.zeros(n, dtype=np.int32)
        nz_rows, nz_cols = np.nonzero(mul == 1)
        inv[nz_rows] = nz_cols
        self._np = FieldTables(n, add, mul, neg, inv)
        self._tabs = (add.tolist(), mul.tolist(), neg.tolist(), inv.tolist())

    def tables(self) -> FieldTables:
        if self._tabs is None:
            raise GuardExceeded(f"GF({self.order}) is too large for dense tables")
        return self._np

    def elements(self, guard: int = ENUMERATION_GUARD) -> range:
        if self.order > guard:
            raise GuardExceeded(f"field of order {self.order} exceeds guard {guard}")
        return range(self.order)


def _poly_sub(a, b, F) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([F.sub(x, y) for x, y in zip(a, b)])


class FieldTower:
    """The chain GF(p) ⊂ GF(q = p^e) ⊂ GF(q^m) plus an ordered basis γ.

    Integer codes of GF(q) elements coincide with the codes of their
    embeddings in GF(q^m) (constant polynomials), so subfield values can be
    passed to either level without conversion.
    """

    def __init__(self, p: int, e: int = 1, m: int = 1, sub_modulus=None, ext_modulus=None, gamma=None):
        if e < 1 or m < 1:
            raise ValueError("degrees e and m must be positive")
        self.p, self.e, self.m = p, e, m
        self.prime = GaloisField(p)
        if sub_modulus is None:
            sub_modulus = canonical_modulus(self.prime, e) if e > 1 else (0, 1)
        self.sub_modulus = tuple(sub_modulus)
        if len(self.sub_modulus) != e + 1:
            raise ValueError("sub_modulus has the wrong degree")
        if self.sub_modulus[-1] != 1:
            raise ValueError("sub_modulus must be monic")
        self.sub = GaloisField(p, self.prime, self.sub_modulus) if e > 1 else self.prime
        self.q = self.sub.order
        if ext_modulus is None:
            ext_modulus = canonical_modulus(self.sub, m) if m > 1 else (0, 1)
        self.ext_modulus = tuple(ext_modulus)
        if len(self.ext_modulus) != m + 1:
            raise ValueError("ext_modulus has the wrong degree")
        if m > 1:
            self.ext = GaloisField(p, self.sub, self.ext_modulus)
        else:
            if self.ext_modulus[-1] != 1:
                raise ValueError("ext_modulus must be monic")
            self.ext = self.sub
        self.order = self.q**m
        if gamma is None:
            gamma = tuple(self.q**i for i in range(m))
        self.gamma = tuple(gamma)
        if len(self.gamma) != m:
            raise ValueError(f"gamma needs exactly {m} entries")
        gmat = [[self.poly_coeffs(g)[i] for g in self.gamma] for i in range(m)]
        if linalg.rank(gmat, self.sub) != m:
            raise ValueError("gamma is not a GF(q)-basis")
        self._gamma_inv = linalg.inverse(gmat, self.sub)
        self._default_gamma = self.gamma == tuple(self.q**i for i in range(m))

    @classmethod
    def from_q(cls, q: int, m: int, gamma=None) -> FieldTower:
        p, e = prime_power(q)
        return cls(p, e, m, gamma=gamma)

    def _key(self):
        return (self.p, self.e, self.m, self.sub_modulus, self.ext_modulus, self.gamma)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FieldTower(p={self.p}, e={self.e}, m={self.m})"

    def with_gamma(self, gamma) -> FieldTower:
        return FieldTower(self.p, self.e, self.m, self.sub_modulus, self.ext_modulus, gamma)

    # -- arithmetic on codes in GF(q^m)

    def add(self, a: int, b: int) -> int:
        return self.ext.add(a, b)

    def subtract(self, a: int, b: int) -> int:
        return self.ext.sub(a, b)

    def neg(self, a: int) -> int:
        return self.ext.neg(a)

    def mul(self, a: int, b: int) -> int:
        return self.ext.mul(a, b)

    def inv(self, a: int) -> int:
        return self.ext.inv(a)

    def pow(self, a: int, e: int) -> int:
        return self.ext.pow(a, e)

    def frobenius(self, a: int, i: int = 1) -> int:
        """``a ** (q ** i)``; the exponent is reduced mod ``m`` first."""
        return self.ext.pow(a, self.q ** (i % self.m))

    def norm(self, a: int) -> int:
        return self.ext.pow(a, (self.order - 1) // (self.q - 1))

    def elements(self, guard: int = ENUMERATION_GUARD) -> range:
        return self.ext.elements(guard)

    # -- coordinates

    def poly_coeffs(self, a: int) -> list[int]:
        """Coefficients of ``a`` in the polynomial basis ``1, x, ..., x^{m-1}``."""
        return [(a // self.q**i) % self.q for i in range(self.m)]

    def coords(self, a: int) -> list[int]:
        """The unique GF(q) scalars ``c`` with ``a = sum(c_i * gamma_i)``."""
        pc = self.poly_coeffs(a)
        if self._default_gamma:
            return pc
        return linalg.mat_vec(self._gamma_inv, pc, self.sub)

    def from_coords(self, cs) -> int:
        acc = 0
        for c, g in zip(cs, self.gamma):
            if c:
                acc = self.add(acc, self.mul(c, g))
        return acc

    def element(self, code: int) -> FieldElement:
        if not 0 <= code < self.order:
            raise ValueError(f"code {code} outside GF({self.order})")
        return FieldElement(self, code)


@dataclass(frozen=True)
class FieldElement:
    """A GF(q^m) element bound to its tower; supports the usual operators."""

    tower: FieldTower
    code: int

    @property
    def coeffs(self) -> list[list[int]]:
        t = self.tower
        return [t.sub.digits(c) if t.e > 1 else [c] for c in t.poly_coeffs(self.code)]

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.tower is not self.tower and other.tower != self.tower:
            raise FieldMismatch("operands belong to different field towers")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.tower, self.tower.add(self.code, other.code))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.tower, self.tower.subtract(self.code, other.code))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg(self.code))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.tower, self.tower.mul(self.code, other.code))

    def __truediv__(self, other):
        return self * inv(other)

    def __pow__(self, e: int):
        return FieldElement(self.tower, self.tower.pow(self.code, e))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"<GF({self.tower.order}) {self.code}>"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.tower, a.tower.inv(a.code))


def frobenius(a: FieldElement, i: int = 1) -> FieldElement:
    return FieldElement(a.tower, a.tower.frobenius(a.code, i))


def norm(a: FieldElement) -> FieldElement:
    return FieldElement(a.tower, a.tower.norm(a.code))


def enumerate_elements(tower: FieldTower, guard: int = ENUMERATION_GUARD) -> list[FieldElement]:
    return [FieldElement(tower, c) for c in tower.elements(guard)]
