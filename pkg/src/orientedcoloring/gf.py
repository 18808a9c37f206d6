"""Arithmetic for GF(q), q = p^k a prime power with q = 3 (mod 4).

Field elements are encoded as the integers 0..q-1: the base-p digits of the
code are the polynomial coefficients, little-endian, so code = sum c_i * p^i.
For k = 1 this degenerates to plain arithmetic mod p.  For k > 1 the field is
GF(p)[x] modulo the lexicographically smallest irreducible monic polynomial
of degree k (found by brute force; any choice gives an isomorphic field).
"""

from __future__ import annotations


class FieldError(ValueError):
    """Unsupported field order or malformed element."""


def is_prime(n: int) -> bool:
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


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if p * p > q:
            break
        if q % p == 0:
            k = 0
            rest = q
            while rest % p == 0:
                rest //= p
                k += 1
            if rest != 1:
                raise FieldError(f"{q} is not a prime power")
            return p, k
    return q, 1


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a mod b over GF(p); coefficient lists little-endian, b monic."""
    a = [x % p for x in a]
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db:
        if a[-1] == 0:
            a.pop()
            continue
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[i + shift] = (a[i + shift] - coef * bc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every lower-degree monic polynomial over GF(p)."""
    deg = len(poly) - 1
    for d in range(1, deg):
        for code in range(p**d):
            divisor = _decode(code, p, d) + [1]
            if not _poly_rem(poly, divisor, p):
                return False
    return True


def _decode(code: int, p: int, k: int) -> list[int]:
    digits = []
    for _ in range(k):
        digits.append(code % p)
        code //= p
    return digits


def _encode(digits: list[int], p: int) -> int:
    code = 0
    for d in reversed(digits):
        code = code * p + d
    return code


class FieldSpec:
    """GF(p^k) with integer-encoded elements and table-backed arithmetic for k > 1."""

    __slots__ = ("p", "k", "q", "modulus", "_mul", "_inv")

    def __init__(self, p: int, k: int):
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            self.modulus = None
            self._mul = None
            self._inv = None
        else:
            self.modulus = self._find_modulus()
            self._build_tables()

    def _find_modulus(self) -> tuple[int, ...]:
        p, k = self.p, self.k
        for code in range(p**k):
            poly = _decode(code, p, k) + [1]
            if _is_irreducible(poly, p):
                return tuple(poly)
        raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")  # unreachable

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        modulus = list(self.modulus)
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = _decode(a, p, k)
            for b in range(a, q):
                db = _decode(b, p, k)
                prod = [0] * (2 * k - 1)
                for i, ca in enumerate(da):
                    if ca:
                        for j, cb in enumerate(db):
                            prod[i + j] = (prod[i + j] + ca * cb) % p
                rem = _poly_rem(prod, modulus, p)
                val = _encode(rem + [0] * (k - len(rem)), p)
                mul[a][b] = val
                mul[b][a] = val
        inv = [0] * q
        for a in range(1, q):
            row = mul[a]
            for b in range(1, q):
                if row[b] == 1:
                    inv[a] = b
                    break
            else:
                raise FieldError(f"element {a} has no inverse; modulus not irreducible?")
        self._mul = mul
        self._inv = inv

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        da, db = _decode(a, p, self.k), _decode(b, p, self.k)
        return _encode([(x + y) % p for x, y in zip(da, db)], p)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        p = self.p
        return _encode([-x % p for x in _decode(a, p, self.k)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("0 has no inverse")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv[a]

    def nonzero_squares(self) -> frozenset[int]:
        return frozenset(self.mul(x, x) for x in range(1, self.q))

    def __repr__(self) -> str:
        return f"FieldSpec(GF({self.p}^{self.k}))" if self.k > 1 else f"FieldSpec(GF({self.p}))"


def _spot_check_axioms(f: FieldSpec) -> None:
    """Associativity/distributivity on a deterministic sample of triples."""
    q = f.q
    samples = {0, 1, q - 1, q // 2, 2 % q, 3 % q, (q - 3) % q}
    for a in samples:
        for b in samples:
            for c in samples:
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a in range(1, q):
        assert f.mul(a, f.inv(a)) == 1


def build_field(q: int) -> FieldSpec:
    """Build GF(q); rejects q that is not a prime power or not 3 (mod 4)."""
    if q % 4 != 3:
        raise FieldError(f"q={q} rejected: q must be 3 (mod 4), got q mod 4 = {q % 4}")
    p, k = factor_prime_power(q)
    if not is_prime(p):
        raise FieldError(f"q={q} is not a prime power")
    f = FieldSpec(p, k)
    _spot_check_axioms(f)
    return f
