"""Arithmetic in the tower F_p <= F_q <= F_{q^m} with q = p**e.

Elements of F_{q^m} are stored as integer indices in [0, q**m): the base-q
digits of the index (little-endian) are the coordinates over F_q, and each
F_q value in [0, q) packs base-p digits over F_p the same way.  With this
encoding the embedded copy of F_q is exactly the set of indices below q,
and for p = 2 field addition of two indices is plain XOR.

The tower is kept in two levels (rather than one extension of degree e*m)
so that the trace to F_q, the maps x -> x^{q^s} - x, and subfield
membership all stay coefficient-level checks.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence

from .budget import check_budget
from .errors import InvalidParameterError, SpecMismatchError

# Size caps for the per-field lookup caches built by _ensure_fast().
_EXPLOG_MAX = 2 ** 13     # discrete exp/log pair for fast multiplication
_ADD_TABLE_MAX = 2 ** 10  # full addition table (only needed when p != 2)
_DIGIT_CACHE_MAX = 2 ** 16
_FROB_TABLE_MAX = 2 ** 13


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


# --------------------------------------------------------------------------
# Small-field arithmetic bundles.  Both classes expose the same interface
# (q, add, sub, mul, neg, inv) on plain ints; polynomial helpers below are
# generic over either.

class _PrimeOps:
    """Arithmetic modulo a prime p on ints in [0, p)."""

    def __init__(self, p: int):
        self.q = p

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def mul(self, a, b):
        return (a * b) % self.q

    def neg(self, a):
        return (-a) % self.q

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.q - 2, self.q)


class _TableOps:
    """Small-field arithmetic backed by full lookup tables."""

    def __init__(self, q, add_t, mul_t, neg_t, inv_t):
        self.q = q
        self._add = add_t
        self._mul = mul_t
        self._neg = neg_t
        self._inv = inv_t

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        v = self._inv[a]
        if v < 0:
            raise ZeroDivisionError("inverse of zero")
        return v


# --------------------------------------------------------------------------
# Dense polynomial helpers over a small field.  Coefficients are tuples of
# field ints, lowest degree first, with no trailing zeros.

def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b, F):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = F.add(out[i], x)
    return _ptrim(out)


def _pmul(a, b, F):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _ptrim(out)


def _pdivmod(a, b, F):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    quot = [0] * max(len(a) - db, 0)
    for top in range(len(rem) - 1, db - 1, -1):
        coef = rem[top]
        if coef == 0:
            continue
        f = F.mul(coef, lead_inv)
        quot[top - db] = f
        for j, y in enumerate(b):
            if y:
                rem[top - db + j] = F.sub(rem[top - db + j], F.mul(f, y))
    return _ptrim(quot), _ptrim(rem)


def _pinv_mod(a, mod, F):
    """Inverse of a modulo mod via the extended Euclidean algorithm."""
    a = _ptrim(a)
    if not a:
        raise ZeroDivisionError("inverse of zero polynomial")
    r0, r1 = _ptrim(mod), a
    t0, t1 = (), (1,)
    while r1:
        q, r = _pdivmod(r0, r1, F)
        r0, r1 = r1, r
        t0, t1 = t1, _padd(t0, _pmul(tuple(F.neg(c) for c in q), t1, F), F)
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible modulo the given polynomial")
    scale = F.inv(r0[0])
    return _ptrim(tuple(F.mul(scale, c) for c in t0))


def _poly_is_irreducible(f, F):
    """Trial division by every monic polynomial of degree <= deg(f)//2."""
    f = _ptrim(f)
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for lower in itertools.product(range(F.q), repeat=d):
            g = lower + (1,)
            _, rem = _pdivmod(f, g, F)
            if not rem:
                return False
    return True


def _smallest_irreducible(degree, F):
    """Lexicographically smallest monic irreducible of the given degree.

    The order compares the non-leading coefficients low-to-high; values in
    [0, q) are compared by their integer encoding.
    """
    for lower in itertools.product(range(F.q), repeat=degree):
        f = lower + (1,)
        if _poly_is_irreducible(f, F):
            return f
    raise InvalidParameterError(f"no irreducible polynomial of degree {degree} found")


def _quotient_table_ops(base, modulus):
    """Build full tables for F_{base.q ** deg(modulus)} = base[x]/(modulus)."""
    deg = len(modulus) - 1
    q = base.q ** deg

    def to_poly(v):
        out = []
        for _ in range(deg):
            v, r = divmod(v, base.q)
            out.append(r)
        return _ptrim(out)

    def to_int(poly):
        v = 0
        for c in reversed(poly):
            v = v * base.q + c
        return v

    add_t = [[0] * q for _ in range(q)]
    mul_t = [[0] * q for _ in range(q)]
    neg_t = [0] * q
    inv_t = [-1] * q
    polys = [to_poly(v) for v in range(q)]
    for a in range(q):
        neg_t[a] = to_int(tuple(base.neg(c) for c in polys[a]))
        for b in range(a, q):
            s = to_int(_padd(polys[a], polys[b], base))
            add_t[a][b] = add_t[b][a] = s
            _, rem = _pdivmod(_pmul(polys[a], polys[b], base), modulus, base)
            p = to_int(rem)
            mul_t[a][b] = mul_t[b][a] = p
    for a in range(1, q):
        inv_t[a] = to_int(_pinv_mod(polys[a], modulus, base))
    return _TableOps(q, add_t, mul_t, neg_t, inv_t)


# --------------------------------------------------------------------------

class FieldSpec:
    """Description of the tower F_p <= F_q <= F_{q^m}, q = p**e.

    Arithmetic methods operate on raw element indices (ints in [0, order));
    the Element class wraps an index together with its owning spec.  A spec
    is immutable after construction and safe to share across workers.
    """

    def __init__(self, p: int, e: int = 1, m: int = 1,
                 base_modulus: Sequence[int] | None = None,
                 ext_modulus: Sequence[Sequence[int]] | Sequence[int] | None = None):
        if not is_prime(p):
            raise InvalidParameterError(f"p must be prime, got {p}")
        if e < 1 or m < 1:
            raise InvalidParameterError("e and m must be positive")
        self.p = p
        self.e = e
        self.m = m
        self.q = p ** e
        self.order = self.q ** m

        fp = _PrimeOps(p)
        if base_modulus is None:
            base_modulus = _smallest_irreducible(e, fp)
        base_modulus = _ptrim(tuple(int(c) % p for c in base_modulus))
        if len(base_modulus) != e + 1 or base_modulus[-1] != 1:
            raise InvalidParameterError(f"base modulus must be monic of degree {e}")
        if not _poly_is_irreducible(base_modulus, fp):
            raise InvalidParameterError("base modulus is reducible over F_p")
        self.base_modulus = base_modulus

        self._fp = fp
        self.base_field = fp if e == 1 else _quotient_table_ops(fp, base_modulus)

        if ext_modulus is None:
            ext_modulus = _smallest_irreducible(m, self.base_field)
        else:
            ext_modulus = tuple(self._coerce_base_value(c) for c in ext_modulus)
        ext_modulus = _ptrim(ext_modulus)
        if len(ext_modulus) != m + 1 or ext_modulus[-1] != 1:
            raise InvalidParameterError(f"extension modulus must be monic of degree {m}")
        if not _poly_is_irreducible(ext_modulus, self.base_field):
            raise InvalidParameterError("extension modulus is reducible over F_q")
        self.ext_modulus = ext_modulus

        # Reduction of alpha^m:  alpha^m = -(c_0 + c_1 alpha + ... ),
        # stored as the digit vector of the negated tail.
        fq = self.base_field
        self._alpha_m = tuple(fq.neg(c) for c in self._pad(ext_modulus[:-1]))

        self._key = (p, e, m, self.base_modulus, self.ext_modulus)
        self._hash = hash(self._key)

        # Lazy fast-path caches; see _ensure_fast().
        self._digit_cache = None
        self._exp = None
        self._log = None
        self._add_flat = None
        self._neg_table = None
        self._inv_cache = {}
        self._frob_ops = {}
        self._frob_tables = {}
        self._fast_ready = False

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e}, m={self.m})"

    @classmethod
    def from_prime_power(cls, q: int, m: int, **kwargs) -> "FieldSpec":
        """Spec for F_{q^m} where q itself may be a prime power."""
        if q < 2:
            raise InvalidParameterError(f"q must be a prime power >= 2, got {q}")
        for p in range(2, q + 1):
            if is_prime(p) and q % p == 0:
                e = 0
                v = q
                while v % p == 0:
                    v //= p
                    e += 1
                if v != 1:
                    raise InvalidParameterError(f"{q} is not a prime power")
                return cls(p, e, m, **kwargs)
        raise InvalidParameterError(f"{q} is not a prime power")

    # -- digit/coefficient views -------------------------------------------

    def _pad(self, coeffs):
        out = list(coeffs) + [0] * (self.m - len(coeffs))
        return tuple(out[: self.m])

    def digits(self, a: int):
        """Coefficients of a over F_q, lowest power of alpha first."""
        cache = self._digit_cache
        if cache is not None:
            return cache[a]
        q = self.q
        out = []
        for _ in range(self.m):
            a, r = divmod(a, q)
            out.append(r)
        return tuple(out)

    def from_digits(self, ds) -> int:
        v = 0
        for c in reversed(tuple(ds)):
            v = v * self.q + c
        return v

    def _coerce_base_value(self, c) -> int:
        """Accept an F_q value as an int or as a base-p coefficient list."""
        if isinstance(c, (list, tuple)):
            if len(c) > self.e:
                raise InvalidParameterError(
                    f"F_q coefficient list longer than e = {self.e}: {c}")
            v = 0
            for digit in reversed(c):
                v = v * self.p + int(digit) % self.p
            return v
        v = int(c)
        if not 0 <= v < self.q:
            raise InvalidParameterError(f"F_q value out of range: {c}")
        return v

    # -- raw arithmetic on indices ------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        t = self._add_flat
        if t is not None:
            return t[a * self.order + b]
        fq = self.base_field
        return self.from_digits(fq.add(x, y) for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        t = self._neg_table
        if t is not None:
            return t[a]
        fq = self.base_field
        return self.from_digits(fq.neg(x) for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def scalar_mul(self, c: int, a: int) -> int:
        """Multiply by an F_q scalar c (an int in [0, q))."""
        if c == 0:
            return 0
        if c == 1:
            return a
        fq = self.base_field
        return self.from_digits(fq.mul(c, x) for x in self.digits(a))

    def _mul_poly(self, a: int, b: int) -> int:
        """Schoolbook product of coefficient vectors, reduced mod ext_modulus."""
        if a == 0 or b == 0:
            return 0
        fq = self.base_field
        m = self.m
        da = self.digits(a)
        db = self.digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y:
                    prod[i + j] = fq.add(prod[i + j], fq.mul(x, y))
        # reduce: alpha^(m+t) = alpha^t * alpha^m, folding from the top down
        alpha_m = self._alpha_m
        for top in range(2 * m - 2, m - 1, -1):
            c = prod[top]
            if c == 0:
                continue
            prod[top] = 0
            base = top - m
            for j, r in enumerate(alpha_m):
                if r:
                    prod[base + j] = fq.add(prod[base + j], fq.mul(c, r))
        return self.from_digits(prod[:m])

    def mul(self, a: int, b: int) -> int:
        exp = self._exp
        if exp is not None:
            if a == 0 or b == 0:
                return 0
            log = self._log
            return exp[(log[a] + log[b]) % (self.order - 1)]
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        cached = self._inv_cache.get(a)
        if cached is not None:
            return cached
        poly = _ptrim(self.digits(a))
        res = self.from_digits(self._pad(_pinv_mod(poly, self.ext_modulus, self.base_field)))
        if len(self._inv_cache) < _DIGIT_CACHE_MAX:
            self._inv_cache[a] = res
        return res

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = 1
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    # -- Frobenius and trace -------------------------------------------------

    def _pow_q(self, a: int) -> int:
        """a**q, as e successive p-th powers."""
        for _ in range(self.e):
            a = self.pow(a, self.p)
        return a

    def _frob_basis(self, s: int):
        """Images (alpha^i)^(q^s) of the power basis; x -> x^(q^s) is F_q-linear."""
        s %= self.m
        basis = self._frob_ops.get(s)
        if basis is None:
            basis = []
            for i in range(self.m):
                img = self.from_digits([0] * i + [1]) if i else 1
                for _ in range(s):
                    img = self._pow_q(img)
                basis.append(img)
            basis = tuple(basis)
            self._frob_ops[s] = basis
        return basis

    def frobenius(self, a: int, s: int) -> int:
        s %= self.m
        if s == 0 or a == 0:
            return a
        table = self._frob_tables.get(s)
        if table is not None:
            return table[a]
        basis = self._frob_basis(s)
        acc = 0
        for c, img in zip(self.digits(a), basis):
            if c:
                acc = self.add(acc, self.scalar_mul(c, img))
        return acc

    def trace(self, a: int) -> int:
        """Sum of a^(q^i) for i = 0..m-1; the result lies in the embedded F_q."""
        acc = a
        t = a
        for _ in range(self.m - 1):
            t = self.frobenius(t, 1)
            acc = self.add(acc, t)
        return acc

    def phi_s(self, a: int, s: int) -> int:
        if not 0 < s < self.m or gcd(s, self.m) != 1:
            raise InvalidParameterError(
                f"s must satisfy 0 < s < m and gcd(s, m) = 1, got s={s}, m={self.m}")
        return self.sub(self.frobenius(a, s), a)

    def is_in_base(self, a: int) -> bool:
        """Membership in the embedded F_q, decided by a^q == a."""
        return self.frobenius(a, 1) == a

    def valid_s_values(self):
        """All s with 0 < s < m and gcd(s, m) = 1, increasing."""
        return [s for s in range(1, self.m) if gcd(s, self.m) == 1]

    # -- element helpers -----------------------------------------------------

    @property
    def zero(self) -> "Element":
        return Element(self, 0)

    @property
    def one(self) -> "Element":
        return Element(self, 1)

    def element(self, index: int) -> "Element":
        if not 0 <= index < self.order:
            raise InvalidParameterError(f"element index out of range: {index}")
        return Element(self, index)

    def element_from_coeffs(self, coeffs) -> "Element":
        """Build an element from nested coefficient lists ([F_p coeffs] per F_q coeff)."""
        ds = [self._coerce_base_value(c) for c in coeffs]
        if len(ds) > self.m:
            raise InvalidParameterError("too many coefficients for this extension")
        return Element(self, self.from_digits(self._pad(ds)))

    # -- fast-path caches ------------------------------------------------------

    def _find_generator(self) -> int:
        n = self.order - 1
        factors = []
        v, f = n, 2
        while f * f <= v:
            if v % f == 0:
                factors.append(f)
                while v % f == 0:
                    v //= f
            f += 1
        if v > 1:
            factors.append(v)
        for cand in range(2, self.order):
            if all(self.pow(cand, n // f) != 1 for f in factors):
                return cand
        raise RuntimeError("no multiplicative generator found")  # pragma: no cover

    def _ensure_fast(self, s_values=()) -> None:
        """Populate lookup caches used by enumeration-heavy callers.

        Idempotent; only builds tables whose size fits the per-cache caps, and
        falls back to the direct routines otherwise.
        """
        order = self.order
        if not self._fast_ready:
            if order <= _DIGIT_CACHE_MAX and self._digit_cache is None:
                q, m = self.q, self.m
                cache = []
                for a in range(order):
                    ds = []
                    v = a
                    for _ in range(m):
                        v, r = divmod(v, q)
                        ds.append(r)
                    cache.append(tuple(ds))
                self._digit_cache = cache
            if order <= _EXPLOG_MAX and self._exp is None and order > 2:
                g = self._find_generator()
                exp = [1] * (order - 1)
                for i in range(1, order - 1):
                    exp[i] = self._mul_poly(exp[i - 1], g)
                log = [0] * order
                for i, v in enumerate(exp):
                    log[v] = i
                self._exp = exp
                self._log = log
            if self.p != 2:
                if self._neg_table is None and order <= _DIGIT_CACHE_MAX:
                    fq = self.base_field
                    self._neg_table = [
                        self.from_digits(fq.neg(x) for x in self.digits(a))
                        for a in range(order)
                    ]
                if self._add_flat is None and order <= _ADD_TABLE_MAX:
                    fq = self.base_field
                    flat = [0] * (order * order)
                    digit_rows = [self.digits(a) for a in range(order)]
                    for a in range(order):
                        da = digit_rows[a]
                        base = a * order
                        for b in range(a, order):
                            v = self.from_digits(
                                fq.add(x, y) for x, y in zip(da, digit_rows[b]))
                            flat[base + b] = v
                            flat[b * order + a] = v
                    self._add_flat = flat
            self._fast_ready = True
        if order <= _FROB_TABLE_MAX:
            for s in s_values:
                s %= self.m
                if s and s not in self._frob_tables:
                    basis = self._frob_basis(s)
                    table = [0] * order
                    for a in range(order):
                        acc = 0
                        for c, img in zip(self.digits(a), basis):
                            if c:
                                acc = self.add(acc, self.scalar_mul(c, img))
                        table[a] = acc
                    self._frob_tables[s] = table

    # -- serialization ---------------------------------------------------------

    def _base_value_to_json(self, c: int):
        out = []
        for _ in range(self.e):
            c, r = divmod(c, self.p)
            out.append(r)
        return out

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "m": self.m,
            "base_modulus": [int(c) for c in self.base_modulus],
            "ext_modulus": [self._base_value_to_json(c) for c in self.ext_modulus],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        return cls(int(data["p"]), int(data["e"]), int(data["m"]),
                   base_modulus=data["base_modulus"],
                   ext_modulus=data["ext_modulus"])


class Element:
    """A value in F_{q^m}: an index in [0, q^m) tied to its FieldSpec."""

    __slots__ = ("spec", "idx")

    def __init__(self, spec: FieldSpec, idx: int):
        self.spec = spec
        self.idx = idx

    def _coerce(self, other) -> int:
        if not isinstance(other, Element):
            raise TypeError(f"cannot combine Element with {type(other).__name__}")
        if self.spec != other.spec:
            raise SpecMismatchError("elements belong to different field towers")
        return other.idx

    def __add__(self, other):
        return Element(self.spec, self.spec.add(self.idx, self._coerce(other)))

    def __sub__(self, other):
        return Element(self.spec, self.spec.sub(self.idx, self._coerce(other)))

    def __neg__(self):
        return Element(self.spec, self.spec.neg(self.idx))

    def __mul__(self, other):
        return Element(self.spec, self.spec.mul(self.idx, self._coerce(other)))

    def __truediv__(self, other):
        return Element(self.spec, self.spec.mul(self.idx, self.spec.inv(self._coerce(other))))

    def __pow__(self, n: int):
        return Element(self.spec, self.spec.pow(self.idx, n))

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.spec == other.spec and self.idx == other.idx

    def __hash__(self):
        return hash((self.spec._hash, self.idx))

    def __bool__(self):
        return self.idx != 0

    def coeffs(self):
        """Nested coefficient view: [F_p coeffs] per F_q coefficient, low to high."""
        return [self.spec._base_value_to_json(c) for c in self.spec.digits(self.idx)]

    def __repr__(self):
        return f"Element({self.coeffs()!r}, q={self.spec.q}, m={self.spec.m})"


# --------------------------------------------------------------------------
# Module-level operations on Elements.

def _same_spec(a: Element, b: Element) -> FieldSpec:
    if a.spec != b.spec:
        raise SpecMismatchError("elements belong to different field towers")
    return a.spec


def inv(a: Element) -> Element:
    return Element(a.spec, a.spec.inv(a.idx))


def frobenius(a: Element, s: int) -> Element:
    """a^(q^s); fixes the embedded F_q pointwise, and s = m acts as identity."""
    if s < 0:
        raise InvalidParameterError(f"s must be nonnegative, got {s}")
    return Element(a.spec, a.spec.frobenius(a.idx, s))


def trace(a: Element) -> Element:
    return Element(a.spec, a.spec.trace(a.idx))


def phi_s(a: Element, s: int) -> Element:
    """a^(q^s) - a for s coprime to m; vanishes exactly on the embedded F_q."""
    return Element(a.spec, a.spec.phi_s(a.idx, s))


def is_in_base(a: Element) -> bool:
    return a.spec.is_in_base(a.idx)


def trace_kernel(spec: FieldSpec) -> set[Element]:
    """All elements of trace zero; has exactly q^(m-1) members."""
    check_budget(spec.order, "trace kernel enumeration")
    return {Element(spec, a) for a in range(spec.order) if spec.trace(a) == 0}


def random_element(spec: FieldSpec, rng) -> Element:
    """Uniform draw over all q^m elements."""
    return Element(spec, rng.randrange(spec.order))


def enumerate_elements(spec: FieldSpec) -> Iterator[Element]:
    """Every element exactly once, in index order."""
    check_budget(spec.order, "field enumeration")
    return (Element(spec, a) for a in range(spec.order))


def linearly_independent_over_base(v: Sequence[Element]) -> bool:
    """True iff no nontrivial F_q-combination of the given elements vanishes.

    More than m elements are always dependent (returns False, not an error).
    """
    if not v:
        raise InvalidParameterError("empty list of elements")
    spec = v[0].spec
    for x in v[1:]:
        _same_spec(v[0], x)
    if len(v) > spec.m:
        return False
    columns = [spec.digits(x.idx) for x in v]
    return _fq_column_rank(columns, spec.base_field) == len(v)


def _fq_column_rank(columns, fq) -> int:
    """Rank over F_q of a set of coefficient vectors (incremental elimination)."""
    basis = {}  # lead index -> vector normalized to 1 at the lead
    for col in columns:
        vec = list(col)
        while True:
            lead = next((i for i, c in enumerate(vec) if c), None)
            if lead is None:
                break
            b = basis.get(lead)
            if b is None:
                s = fq.inv(vec[lead])
                basis[lead] = [fq.mul(s, c) for c in vec]
                break
            c = vec[lead]
            vec = [fq.sub(x, fq.mul(c, y)) for x, y in zip(vec, b)]
    return len(basis)


@lru_cache(maxsize=None)
def default_field(q: int, m: int) -> FieldSpec:
    """Shared FieldSpec with default moduli; cached so workers reuse tables."""
    return FieldSpec.from_prime_power(q, m)


def element_to_json(a: Element):
    return a.coeffs()


def element_from_json(spec: FieldSpec, data) -> Element:
    return spec.element_from_coeffs(data)
