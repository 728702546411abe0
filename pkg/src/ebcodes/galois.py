"""Binary finite fields GF(2^m) and the tower F < K < E.

Elements are integers whose bits are polynomial coordinates over GF(2)
(bit i <-> x^i), reduced modulo an irreducible polynomial of degree m.
All hot-path arithmetic goes through log/antilog tables; the plain
carry-less multiply is kept as a reference implementation.

A :class:`Tower` bundles three fields of orders q, q^2 and (optionally)
q^4, together with embeddings between them, the basis {1, xi} of K over F,
the unit circle S of K and coordinate maps to F-vectors.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

MAX_DEGREE = 16


class FieldError(ValueError):
    pass


class ReducibleModulusError(FieldError):
    """Raised for a modulus that is not irreducible; ``factor`` divides it."""

    def __init__(self, modulus: int, factor: int):
        self.modulus = modulus
        self.factor = factor
        super().__init__(
            f"modulus {poly_str(modulus)} is reducible: divisible by {poly_str(factor)}"
        )


class FieldMismatchError(TypeError):
    pass


class NotInSubfieldError(ArithmeticError):
    """An element expected to lie in a subfield does not (broken embedding)."""


# ----------------------------------------------------------------------
# GF(2)[x] on integer bitmasks
# ----------------------------------------------------------------------

def poly_str(f: int) -> str:
    if f == 0:
        return "0"
    terms = []
    for i in range(f.bit_length() - 1, -1, -1):
        if f >> i & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return " + ".join(terms)


def gf2_mul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def gf2_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a and a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def gf2_mulmod(a: int, b: int, f: int) -> int:
    return gf2_mod(gf2_mul(a, b), f)


def find_factor(f: int) -> int | None:
    """Smallest nontrivial divisor of ``f`` in GF(2)[x], or None if irreducible."""
    d = f.bit_length() - 1
    for g in range(2, 1 << (d // 2 + 1)):
        if g.bit_length() - 1 > d // 2:
            break
        if gf2_mod(f, g) == 0:
            return g
    return None


def is_irreducible(f: int) -> bool:
    return f.bit_length() >= 2 and find_factor(f) is None


def smallest_irreducible(m: int) -> int:
    # odd moduli only: x itself is excluded so GF(2) gets x + 1
    for f in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible(f):
            return f
    raise FieldError(f"no irreducible polynomial of degree {m}")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# ----------------------------------------------------------------------
# Fields
# ----------------------------------------------------------------------

class BinaryField:
    """The field GF(2^m) = GF(2)[x]/(modulus).

    Use :func:`field_create` rather than the constructor; it validates the
    modulus and caches instances so that fields compare by identity.
    """

    def __init__(self, m: int, modulus: int):
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        self._build_tables()

    def __repr__(self):
        return f"GF(2^{self.m}; {poly_str(self.modulus)})"

    def __eq__(self, other):
        return (
            isinstance(other, BinaryField)
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.m, self.modulus))

    def __reduce__(self):
        return (field_create, (self.m, self.modulus))

    # -- tables ---------------------------------------------------------
    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = gf2_mulmod(r, a, self.modulus)
            a = gf2_mulmod(a, a, self.modulus)
            e >>= 1
        return r

    def _find_primitive(self) -> int:
        n = self.order - 1
        if n == 1:
            return 1
        primes = _prime_factors(n)
        for g in range(2, self.order):
            if all(self._slow_pow(g, n // p) != 1 for p in primes):
                return g
        raise FieldError("no primitive element")  # pragma: no cover

    def _build_tables(self):
        n = self.order - 1
        g = self._find_primitive()
        exp = [0] * (2 * n)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = gf2_mulmod(x, g, self.modulus)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self.primitive = g
        self._exp = exp
        self._log = log
        self._exp_np = np.array(exp, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)
        self._mul_table = None

    # -- scalar arithmetic on bitmasks ----------------------------------
    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self!r}")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def sqrt(self, a: int) -> int:
        # a^(2^(m-1)) by m-1 squarings
        for _ in range(self.m - 1):
            a = self.mul(a, a)
        return a

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of 0")
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % (self.order - 1)]

    def mul_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        n = self.order - 1
        return n // math.gcd(n, self.log(a))

    def mul_poly(self, a: int, b: int) -> int:
        """Reference product by polynomial multiplication mod the modulus."""
        return gf2_mulmod(a, b, self.modulus)

    def elements(self) -> range:
        return range(self.order)

    def contains(self, a: int) -> bool:
        return 0 <= a < self.order

    def element(self, bits: int) -> "FieldElement":
        return FieldElement(self, bits)

    # -- vectorized arithmetic ------------------------------------------
    def mul_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp_np[self._log_np[a] + self._log_np[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv_vec(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of 0")
        return self._exp_np[(self.order - 1 - self._log_np[a]) % (self.order - 1)]

    def pow_vec(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        r = self._exp_np[(self._log_np[a] * e) % (self.order - 1)]
        return np.where(a == 0, 0 if e else 1, r)

    def mul_table(self) -> np.ndarray:
        """Full multiplication table; only for fields of order <= 256."""
        if self._mul_table is None:
            if self.order > 256:
                raise FieldError("multiplication table only for order <= 256")
            e = np.arange(self.order)
            self._mul_table = self.mul_vec(e[:, None], e[None, :])
        return self._mul_table

    def to_json(self) -> dict:
        return {"m": self.m, "modulus": self.modulus}


@functools.lru_cache(maxsize=None)
def _cached_field(m: int, modulus: int) -> BinaryField:
    return BinaryField(m, modulus)


def field_create(m: int, modulus: int | None = None) -> BinaryField:
    """GF(2^m) with the given modulus, or the smallest irreducible one."""
    if not isinstance(m, int) or not 1 <= m <= MAX_DEGREE:
        raise FieldError(f"extension degree must be in [1, {MAX_DEGREE}], got {m!r}")
    if modulus is None:
        modulus = smallest_irreducible(m)
    if modulus.bit_length() - 1 != m:
        raise FieldError(
            f"modulus {poly_str(modulus)} has degree {modulus.bit_length() - 1}, expected {m}"
        )
    factor = find_factor(modulus)
    if factor is not None:
        raise ReducibleModulusError(modulus, factor)
    return _cached_field(m, modulus)


def field_from_json(d: dict) -> BinaryField:
    return field_create(int(d["m"]), int(d["modulus"]))


def field_of_order(q: int) -> BinaryField:
    m = q.bit_length() - 1
    if q < 2 or 1 << m != q:
        raise FieldError(f"field order must be a power of 2, got {q}")
    return field_create(m)


@dataclass(frozen=True)
class FieldElement:
    """An element of a :class:`BinaryField` with operator support."""

    field: BinaryField
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < self.field.order:
            raise FieldError(f"{self.bits} is not an element of {self.field!r}")

    def _check(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other.bits
        if isinstance(other, int) and other in (0, 1):
            return other
        return NotImplemented

    def __add__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.bits ^ b)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.bits, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.bits, b))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.bits, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.bits))

    def sqrt(self) -> "FieldElement":
        return FieldElement(self.field, self.field.sqrt(self.bits))

    def __bool__(self):
        return self.bits != 0

    def __int__(self):
        return self.bits

    def __repr__(self):
        return f"<{self.bits:#x} in GF(2^{self.field.m})>"

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "bits": self.bits}

    @classmethod
    def from_json(cls, d: dict) -> "FieldElement":
        return cls(field_from_json(d["field"]), int(d["bits"]))


def field_arith(a: FieldElement, b: FieldElement | None, kind: str, e: int | None = None):
    """Dispatch one of add, mul, inv, pow, sqrt on field elements."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inverse()
    if kind == "pow":
        return a ** e
    if kind == "sqrt":
        return a.sqrt()
    raise ValueError(f"unknown operation {kind!r}")


# ----------------------------------------------------------------------
# Embeddings and coordinates
# ----------------------------------------------------------------------

class Embedding:
    """Injective field homomorphism ``sub -> sup``.

    Realized by sending x to a root r of sub's modulus in sup, so a bitmask
    a of sub maps to sum a_i r^i. ``preimage`` raises NotInSubfieldError for
    elements outside the image.
    """

    def __init__(self, sub: BinaryField, sup: BinaryField, root: int | None = None):
        if sup.m % sub.m:
            raise FieldError(f"GF(2^{sub.m}) is not a subfield of GF(2^{sup.m})")
        self.sub = sub
        self.sup = sup
        if root is None:
            root = self._find_root()
        self.root = root
        basis = [sup.pow(root, i) for i in range(sub.m)]
        table = np.zeros(sub.order, dtype=np.int64)
        for a in range(1, sub.order):
            low = a & -a
            table[a] = table[a ^ low] ^ basis[low.bit_length() - 1]
        self.table = table
        self._table_list = table.tolist()
        inverse = np.full(sup.order, -1, dtype=np.int64)
        inverse[table] = np.arange(sub.order)
        self.inverse_table = inverse
        self.degree = sup.m // sub.m
        if len(set(self._table_list)) != sub.order:
            raise FieldError("embedding is not injective")  # pragma: no cover

    @classmethod
    def identity(cls, f: BinaryField) -> "Embedding":
        return cls(f, f, root=2 if f.m > 1 else 1)

    def _find_root(self) -> int:
        coeffs = [i for i in range(self.sub.m + 1) if self.sub.modulus >> i & 1]
        for r in range(1, self.sup.order):
            v = 0
            for i in coeffs:
                v ^= self.sup.pow(r, i)
            if v == 0:
                return r
        raise FieldError("modulus has no root in the larger field")  # pragma: no cover

    def __call__(self, a: int) -> int:
        return self._table_list[a]

    def vec(self, a) -> np.ndarray:
        return self.table[np.asarray(a, dtype=np.int64)]

    def contains(self, x: int) -> bool:
        return self.inverse_table[x] >= 0

    def preimage(self, x: int) -> int:
        a = int(self.inverse_table[x])
        if a < 0:
            raise NotInSubfieldError(
                f"{x:#x} of {self.sup!r} is not in the image of {self.sub!r}"
            )
        return a

    def preimage_vec(self, x) -> np.ndarray:
        a = self.inverse_table[np.asarray(x, dtype=np.int64)]
        if np.any(a < 0):
            raise NotInSubfieldError("element outside the subfield image")
        return a

    def image(self) -> list[int]:
        return list(self._table_list)

    def compose(self, outer: "Embedding") -> "Embedding":
        """``outer . self``: sub -> outer.sup."""
        if outer.sub != self.sup:
            raise FieldError("embeddings do not compose")
        return Embedding(self.sub, outer.sup, root=outer(self.root))

    def frobenius_power(self) -> int:
        """The exponent |sub| whose power map fixes exactly the image."""
        return self.sub.order


def _gf2_inverse(rows: list[int], n: int) -> list[int]:
    """Inverse of an n x n GF(2) matrix given as row bitmasks (bit j = column j)."""
    aug = [(rows[i], 1 << i) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][0] >> col & 1), None)
        if piv is None:
            raise FieldError("basis is linearly dependent")
        aug[col], aug[piv] = aug[piv], aug[col]
        pa, pb = aug[col]
        for r in range(n):
            if r != col and aug[r][0] >> col & 1:
                aug[r] = (aug[r][0] ^ pa, aug[r][1] ^ pb)
    return [b for _, b in aug]


class Coordinatizer:
    """Coordinates of elements of ``emb.sup`` over ``emb.sub`` in a given basis.

    ``coords(x)`` returns (a_0, ..., a_{d-1}) with a_j in sub (native bitmasks)
    and x = sum emb(a_j) * basis[j].
    """

    def __init__(self, emb: Embedding, basis: Sequence[int]):
        sup, sub = emb.sup, emb.sub
        if len(basis) != emb.degree:
            raise FieldError(f"need {emb.degree} basis elements, got {len(basis)}")
        self.emb = emb
        self.basis = tuple(int(b) for b in basis)
        m = sub.m
        # row j*m + l is basis[j] * emb(x^l) as a GF(2) vector of sup
        rows = [sup.mul(b, emb(1 << l)) for b in self.basis for l in range(m)]
        inv = _gf2_inverse(rows, sup.m)
        # x = c . V  =>  c = bits(x) . V^{-1}; column table per input bit
        self._inv_rows = inv
        d = emb.degree
        bitmat = np.zeros((sup.m, d), dtype=np.int64)
        for i in range(sup.m):
            c = inv[i]
            for j in range(d):
                bitmat[i, j] = (c >> (j * m)) & ((1 << m) - 1)
        self._bitmat = bitmat
        self.degree = d

    def __call__(self, x: int) -> tuple[int, ...]:
        out = [0] * self.degree
        i = 0
        while x:
            if x & 1:
                for j in range(self.degree):
                    out[j] ^= int(self._bitmat[i, j])
            x >>= 1
            i += 1
        return tuple(out)

    def vec(self, xs) -> np.ndarray:
        """Coordinates of an array of elements, shape (len(xs), degree)."""
        xs = np.asarray(xs, dtype=np.int64).reshape(-1)
        out = np.zeros((xs.size, self.degree), dtype=np.int64)
        for i in range(self._bitmat.shape[0]):
            sel = ((xs >> i) & 1).astype(bool)
            out[sel] ^= self._bitmat[i]
        return out

    def recompose(self, coeffs: Sequence[int]) -> int:
        sup = self.emb.sup
        x = 0
        for a, b in zip(coeffs, self.basis):
            x ^= sup.mul(self.emb(int(a)), b)
        return x

    def recompose_vec(self, coeffs) -> np.ndarray:
        c = np.asarray(coeffs, dtype=np.int64)
        sup = self.emb.sup
        x = np.zeros(c.shape[0], dtype=np.int64)
        for j, b in enumerate(self.basis):
            x ^= sup.mul_vec(self.emb.vec(c[:, j]), b)
        return x


# ----------------------------------------------------------------------
# Tower F < K < E
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Tower:
    """Fields F = GF(q), K = GF(q^2) and optionally E = GF(q^4).

    ``xi`` is the primitive element of K, so {1, xi} is the basis used by
    :meth:`coords`. The F-basis of E is {1, t, t^2, t^3} for the primitive
    element t of E.
    """

    base: BinaryField
    mid: BinaryField
    top: BinaryField | None
    embed_F_to_K: Embedding
    embed_K_to_E: Embedding | None
    embed_F_to_E: Embedding | None
    xi: int
    theta_E: int | None
    unit_circle: tuple[int, ...]
    coord_K: Coordinatizer = dc_field(repr=False)
    coord_E: Coordinatizer | None = dc_field(repr=False)

    @property
    def q(self) -> int:
        return self.base.order

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def theta(self) -> int:
        """Primitive element of the ambient field (E if present, else K)."""
        return self.theta_E if self.top is not None else self.xi

    @property
    def theta_K(self) -> int:
        return self.xi

    @property
    def beta(self) -> int:
        """Generator theta_K^(q-1) of the unit circle."""
        return self.mid.pow(self.xi, self.q - 1)

    def coords(self, x: int) -> tuple[int, int]:
        return self.coord_K(x)

    def recompose(self, a: int, b: int) -> int:
        return self.coord_K.recompose((a, b))

    def coords_E(self, x: int) -> tuple[int, ...]:
        self._need_top()
        return self.coord_E(x)

    def _need_top(self):
        if self.top is None:
            raise FieldError("tower has no top field E")

    def __reduce__(self):
        return (build_tower, (self.base.m, self.top is not None))


def build_tower(m: int, with_top: bool = False) -> Tower:
    """Tower over F = GF(2^m) with smallest-irreducible moduli throughout."""
    return _build_tower(int(m), bool(with_top))


@functools.lru_cache(maxsize=None)
def _build_tower(m: int, with_top: bool) -> Tower:
    if 2 * m > MAX_DEGREE or (with_top and 4 * m > MAX_DEGREE):
        raise FieldError(f"tower over GF(2^{m}) exceeds GF(2^{MAX_DEGREE})")
    F = field_create(m)
    K = field_create(2 * m)
    eFK = Embedding(F, K)
    xi = K.primitive
    q = F.order
    beta = K.pow(xi, q - 1)
    S = tuple(K.pow(beta, i) for i in range(q + 1))
    cK = Coordinatizer(eFK, (1, xi))
    E = eKE = eFE = thE = cE = None
    if with_top:
        E = field_create(4 * m)
        eKE = Embedding(K, E)
        eFE = eFK.compose(eKE)
        thE = E.primitive
        cE = Coordinatizer(eFE, tuple(E.pow(thE, i) for i in range(4)))
    return Tower(F, K, E, eFK, eKE, eFE, xi, thE, S, cK, cE)


def _frob(field: BinaryField, x: int, q: int) -> int:
    return field.pow(x, q)


def rel_trace(x: int, tower: Tower, step: str = "K/F") -> int:
    """Relative trace x + x^q (K/F) or x + x^(q^2) (E/K).

    Returns the result in the native representation of the smaller field.
    """
    q = tower.q
    if step == "K/F":
        K = tower.mid
        return tower.embed_F_to_K.preimage(x ^ K.pow(x, q))
    if step == "E/K":
        tower._need_top()
        E = tower.top
        return tower.embed_K_to_E.preimage(x ^ E.pow(x, q * q))
    raise ValueError(f"unknown extension step {step!r}")


def rel_norm(x: int, tower: Tower, step: str = "K/F") -> int:
    """Relative norm x^(q+1) (K/F) or x^(q^2+1) (E/K), in the smaller field."""
    q = tower.q
    if step == "K/F":
        return tower.embed_F_to_K.preimage(tower.mid.pow(x, q + 1))
    if step == "E/K":
        tower._need_top()
        return tower.embed_K_to_E.preimage(tower.top.pow(x, q * q + 1))
    if step == "E/F":
        tower._need_top()
        return tower.embed_F_to_E.preimage(tower.top.pow(x, (q ** 4 - 1) // (q - 1)))
    raise ValueError(f"unknown extension step {step!r}")


def unit_circle(tower: Tower) -> list[int]:
    return list(tower.unit_circle)


def polar_decompose(x: int, tower: Tower) -> tuple[int, int]:
    """Write x in K* as lambda * u with lambda in F*, u on the unit circle.

    Returns (lambda as an element of F, u as an element of K).
    """
    if x == 0:
        raise ValueError("0 has no polar decomposition")
    K = tower.mid
    xbar = K.pow(x, tower.q)
    lam = K.sqrt(K.mul(x, xbar))
    u = K.sqrt(K.div(x, xbar))
    return tower.embed_F_to_K.preimage(lam), u


def coords(x: int, tower: Tower) -> tuple[int, int]:
    return tower.coords(x)


def recompose(a: int, b: int, tower: Tower) -> int:
    return tower.recompose(a, b)


def roots_of_unity(n: int, ambient: BinaryField) -> list[int]:
    """The n-th roots of unity as powers of primitive^((|ambient|-1)/n)."""
    order = ambient.order - 1
    if n <= 0 or order % n:
        raise ValueError(f"{n} does not divide the group order {order}")
    g = ambient.pow(ambient.primitive, order // n)
    return [ambient.pow(g, i) for i in range(n)]


def subfield_elements(f: BinaryField, order: int) -> list[int]:
    """Elements x of f with x^order = x (the subfield of that order)."""
    if order < 2 or f.m % (order.bit_length() - 1) or 1 << (order.bit_length() - 1) != order:
        raise FieldError(f"GF({order}) is not a subfield of {f!r}")
    return [x for x in f.elements() if f.pow(x, order) == x]


def additive_subgroups(elements: Iterable[int]) -> list[frozenset[int]]:
    """All additive subgroups (GF(2)-subspaces) of a set closed under XOR."""
    elements = list(elements)
    seen = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for V in frontier:
            for x in elements:
                if x not in V:
                    W = V | {v ^ x for v in V}
                    if W not in seen:
                        seen.add(W)
                        nxt.append(W)
        frontier = nxt
    return sorted(seen, key=lambda V: (len(V), sorted(V)))
