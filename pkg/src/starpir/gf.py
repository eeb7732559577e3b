"""Arithmetic in prime fields GF(p) and extension fields GF(p^e).

Field elements are stored as integer encodings: the element with
polynomial-basis coefficients (c_0, ..., c_{e-1}) is encoded as
sum(c_i * p**i).  The ``Field`` object works directly on encodings (that
is what the linear-algebra and code layers use in their inner loops);
``FieldElement`` wraps an encoding with operator sugar for the public
API.  Fields are immutable and safe to share.

Modulus polynomials are chosen deterministically: the lexicographically
smallest monic irreducible of the requested degree, comparing
coefficient vectors low-degree-first.  The generator is the smallest
encoding that is a primitive element.
"""

from __future__ import annotations

import functools
from itertools import zip_longest

from .errors import CapExceededError

FIELD_SIZE_CAP = 1 << 20
_TABLE_MAX = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Write q = p^e with p prime, or raise ValueError."""
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = ps[0]
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    if q != 1:
        raise ValueError("not a prime power")
    return p, e


# Bootstrap polynomial helpers over GF(p), on plain coefficient lists
# (low-degree first, not normalised).  Used before a Field exists.

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = a[:]
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _ptrim(a)
    return a


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _frobenius_power(k: int, f: list[int], p: int) -> list[int]:
    """x^(p^k) mod f over GF(p)."""
    t = [0, 1]
    for _ in range(k):
        # t <- t^p mod f by square and multiply
        acc = [1]
        base = t
        exp = p
        while exp:
            if exp & 1:
                acc = _pmod(_pmul(acc, base, p), f, p)
            base = _pmod(_pmul(base, base, p), f, p)
            exp >>= 1
        t = acc
    return t


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin test for a monic polynomial over GF(p)."""
    e = len(f) - 1
    if e == 1:
        return True
    if f[0] == 0:  # divisible by x
        return False
    # quick root check in GF(p)
    for c in range(p):
        if sum(fi * pow(c, i, p) for i, fi in enumerate(f)) % p == 0:
            return False
    if e <= 3:
        # degree 2 or 3: no roots in GF(p) already implies irreducible
        return True
    x = [0, 1]
    xqe = _frobenius_power(e, f, p)
    if _ptrim([(a - b) % p for a, b in zip_longest(xqe, x, fillvalue=0)]):
        # x^(p^e) != x mod f
        return False
    for r in prime_factors(e):
        xq = _frobenius_power(e // r, f, p)
        diff = _ptrim([(a - b) % p for a, b in zip_longest(xq, x, fillvalue=0)])
        g = _pgcd(f, diff, p)
        if len(g) - 1 != 0:
            return False
    return True


def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e over GF(p),
    comparing coefficient vectors low-degree-first."""
    for idx in range(p ** e):
        digits = []
        t = idx
        for _ in range(e):
            digits.append(t % p)
            t //= p
        # ascending idx enumerates (c_0, ..., c_{e-1}) in lex order when the
        # constant coefficient is taken from the most significant digit
        coeffs = digits[::-1]
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


class Field:
    """The finite field GF(p^e) with deterministic modulus and generator.

    Arithmetic methods (add, sub, mul, inv, pow, ...) operate on integer
    encodings.  Use element() / FieldElement for wrapped values.
    """

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if p ** e > FIELD_SIZE_CAP:
            raise CapExceededError(f"field size {p}^{e} exceeds cap {FIELD_SIZE_CAP}")
        self.p = p
        self.e = e
        self.order = p ** e
        self.modulus: tuple[int, ...] = () if e == 1 else _smallest_irreducible(p, e)
        # reduction rows: coefficients of x^(e+i) mod modulus, i = 0..e-2
        self._red: list[tuple[int, ...]] = []
        if e > 1:
            base = [(-c) % p for c in self.modulus[:e]]  # x^e mod f
            self._red.append(tuple(base))
            for _ in range(e - 2):
                prev = self._red[-1]
                shifted = [0] + list(prev[:-1])
                top = prev[-1]
                self._red.append(tuple((shifted[i] + top * base[i]) % p
                                       for i in range(e)))
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self.generator = self._find_generator()
        if self.order <= _TABLE_MAX and self.order > 2:
            self._build_tables()

    # -- encoding ------------------------------------------------------

    def encode(self, coeffs) -> int:
        enc = 0
        for c in reversed(list(coeffs)):
            enc = enc * self.p + (c % self.p)
        return enc

    def decode(self, enc: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            out.append(enc % self.p)
            enc //= self.p
        return tuple(out)

    # -- arithmetic on encodings --------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.encode(x + y for x, y in zip(self.decode(a), self.decode(b)))

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self.encode(x - y for x, y in zip(self.decode(a), self.decode(b)))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.encode(-x for x in self.decode(a))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def _mul_raw(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        p, e = self.p, self.e
        ca, cb = self.decode(a), self.decode(b)
        conv = [0] * (2 * e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    conv[i + j] += x * y
        out = [c % p for c in conv[:e]]
        for i, c in enumerate(conv[e:]):
            if c % p:
                row = self._red[i]
                for j in range(e):
                    out[j] = (out[j] + c * row[j]) % p
        return self.encode(out)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[self.order - 1 - self._log[a]]
        return self.pow(a, self.order - 2)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if a == 0:
            return 1 if k == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * k) % (self.order - 1)]
        acc, base = 1, a
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    # -- construction helpers -----------------------------------------

    def _find_generator(self) -> int:
        target = self.order - 1
        if target == 1:
            return 1
        checks = [target // r for r in prime_factors(target)]
        for cand in range(2, self.order):
            if all(self.pow(cand, c) != 1 for c in checks):
                return cand
        raise RuntimeError("no primitive element found")  # unreachable

    def _build_tables(self) -> None:
        q = self.order
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            exp[i + q - 1] = x
            log[x] = i
            x = self._mul_raw(x, self.generator) if self.e > 1 else (x * self.generator) % self.p
        self._exp = exp
        self._log = log

    # -- public element API -------------------------------------------

    def element(self, value) -> "FieldElement":
        """Wrap an encoding (int) or coefficient sequence as a FieldElement."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element from a different field")
            return value
        if isinstance(value, int):
            enc = value % self.order if self.e == 1 else value
            if not 0 <= enc < self.order:
                raise ValueError(f"encoding {value} out of range for {self}")
            return FieldElement(self, enc)
        return FieldElement(self, self.encode(value))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        for enc in range(self.order):
            yield FieldElement(self, enc)

    def embed(self, sub: "Field") -> tuple[list[int], dict[int, int]]:
        """Embedding of a subfield into this field.

        Returns (fwd, back): fwd[s] is the encoding here of the subfield
        encoding s; back inverts fwd on its image.
        """
        if sub.p != self.p or self.e % sub.e != 0:
            raise ValueError(f"{sub} is not a subfield of {self}")
        if sub.e == 1:
            fwd = list(range(self.p))
        elif sub.e == self.e:
            fwd = list(range(self.order))
        else:
            root = None
            for cand in range(self.order):
                acc = 0
                for c in reversed(sub.modulus):  # Horner, coefficients in GF(p)
                    acc = self.add(self.mul(acc, cand), c)
                if acc == 0:
                    root = cand
                    break
            if root is None:
                raise RuntimeError("subfield modulus has no root")  # unreachable
            fwd = []
            for s in range(sub.order):
                acc = 0
                for c in reversed(sub.decode(s)):
                    acc = self.add(self.mul(acc, root), c)
                fwd.append(acc)
        return fwd, {big: small for small, big in enumerate(fwd)}

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def __repr__(self):
        return f"GF({self.p})" if self.e == 1 else f"GF({self.p}^{self.e})"


@functools.lru_cache(maxsize=None)
def field_create(p: int, e: int = 1) -> Field:
    """Deterministic construction of GF(p^e); cached, fields are immutable."""
    return Field(p, e)


class FieldElement:
    """A field element: integer encoding plus its field context."""

    __slots__ = ("field", "enc")

    def __init__(self, field: Field, enc: int):
        self.field = field
        self.enc = enc

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.decode(self.enc)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements from different fields")
            return other.enc
        if isinstance(other, int):
            return other % self.field.p if self.field.e == 1 else other
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        enc = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.enc, enc))

    __radd__ = __add__

    def __sub__(self, other):
        enc = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.enc, enc))

    def __rsub__(self, other):
        enc = self._coerce(other)
        return FieldElement(self.field, self.field.sub(enc, self.enc))

    def __mul__(self, other):
        enc = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.enc, enc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        enc = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.enc, self.field.inv(enc)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.enc))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.enc, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.enc))

    def multiplicative_order(self) -> int:
        if self.enc == 0:
            raise ValueError("zero has no multiplicative order")
        k, x = 1, self.enc
        while x != 1:
            x = self.field.mul(x, self.enc)
            k += 1
        return k

    def __bool__(self):
        return self.enc != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.enc == other.enc
        if isinstance(other, int):
            return self.enc == (other % self.field.p if self.field.e == 1 else other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.enc))

    def __repr__(self):
        if self.field.e == 1:
            return f"{self.enc}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                terms.append(f"{head}x" if i == 1 else f"{head}x^{i}")
        return " + ".join(terms) if terms else "0"


class Poly:
    """Univariate polynomial over a Field, coefficients low-degree first.

    Canonical form: no stored leading zeros; the zero polynomial has an
    empty coefficient tuple.  Coefficients are integer encodings.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, field: Field, ints) -> "Poly":
        if field.e == 1:
            return cls(field, [c % field.p for c in ints])
        ints = list(ints)
        if any(not 0 <= c < field.order for c in ints):
            raise ValueError("coefficient encoding out of range")
        return cls(field, ints)

    @classmethod
    def x_power(cls, field: Field, k: int, scale: int = 1) -> "Poly":
        return cls(field, [0] * k + [scale])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def elements(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, c) for c in self.coeffs)

    def _check(self, other: "Poly") -> None:
        if self.field != other.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return Poly(F, [F.add(x, y) for x, y in zip(a, b)])

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return Poly(F, [F.sub(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        if self.is_zero or other.is_zero:
            return Poly(F, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = F.inv(other.coeffs[-1])
        quot = [0] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            c = F.mul(rem[-1], inv_lead)
            shift = len(rem) - 1 - db
            quot[shift] = c
            for i, bi in enumerate(other.coeffs):
                rem[shift + i] = F.sub(rem[shift + i], F.mul(c, bi))
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(F, quot), Poly(F, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def __call__(self, x):
        """Evaluate at x (FieldElement or encoding); returns the same kind."""
        if isinstance(x, FieldElement):
            return FieldElement(x.field, self.eval_enc(x.enc))
        return self.eval_enc(x)

    def eval_enc(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = repr(FieldElement(self.field, c))
            need_paren = "+" in cs or " " in cs
            if i == 0:
                terms.append(f"({cs})" if need_paren else cs)
                continue
            var = "x" if i == 1 else f"x^{i}"
            if c == 1:
                terms.append(var)
            else:
                terms.append(f"({cs})*{var}" if need_paren else f"{cs}*{var}")
        return " + ".join(reversed(terms))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    if a.field != b.field:
        raise ValueError("polynomials over different fields")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def order_of(q: int, n: int) -> int:
    """Smallest m >= 1 with q^m = 1 (mod n); requires gcd(n, q) = 1."""
    from math import gcd

    if n < 1:
        raise ValueError("n must be positive")
    if gcd(n, q) != 1:
        raise ValueError(f"gcd({n}, {q}) != 1")
    if n == 1:
        return 1
    m, x = 1, q % n
    while x != 1:
        x = (x * q) % n
        m += 1
    return m


def nth_root_of_unity(q: int, n: int) -> tuple[Field, FieldElement]:
    """A field GF(q^m) together with a primitive n-th root of unity in it.

    m is the multiplicative order of q mod n, and the root is
    generator^((q^m - 1) / n), so the choice is deterministic.
    """
    p, e = prime_power(q)
    m = order_of(q, n)
    big = field_create(p, e * m)
    beta = big.pow(big.generator, (big.order - 1) // n)
    return big, FieldElement(big, beta)
