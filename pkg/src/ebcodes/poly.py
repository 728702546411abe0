"""Dense univariate polynomials over a binary field, minimal polynomials and
generator polynomials of cyclic codes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .galois import BinaryField, Embedding, FieldMismatchError, NotInSubfieldError, field_from_json


class PolynomialError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Polynomial:
    """Coefficients lowest degree first, no trailing zeros; zero is ``()``."""

    field: BinaryField
    coeffs: tuple[int, ...]

    def __init__(self, field: BinaryField, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x_pow_minus_one(cls, field: BinaryField, n: int) -> "Polynomial":
        return cls(field, [1] + [0] * (n - 1) + [1])

    @classmethod
    def from_roots(cls, field: BinaryField, roots: Iterable[int]) -> "Polynomial":
        p = cls(field, [1])
        for r in roots:
            p = p * cls(field, [r, 1])
        return p

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _same(self, other: "Polynomial"):
        if other.field != self.field:
            raise FieldMismatchError("polynomials over different fields")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._same(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] ^= c
        return Polynomial(self.field, out)

    __sub__ = __add__

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._same(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(self.field)
        f = self.field
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] ^= f.mul(a, b)
        return Polynomial(f, out)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.field, [self.field.mul(c, a) for a in self.coeffs])

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead()))

    def __divmod__(self, other: "Polynomial"):
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.field
        r = list(self.coeffs)
        db = other.degree
        inv_lead = f.inv(other.lead())
        quot = [0] * max(0, len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c:
                c = f.mul(c, inv_lead)
                quot[i - db] = c
                for j, b in enumerate(other.coeffs):
                    r[i - db + j] ^= f.mul(c, b)
        return Polynomial(f, quot), Polynomial(f, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.mul(acc, x) ^ c
        return acc

    def map_coeffs(self, fn, field: BinaryField) -> "Polynomial":
        return Polynomial(field, [fn(c) for c in self.coeffs])

    def __repr__(self):
        if self.is_zero():
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mon = "" if i == 0 else "x" if i == 1 else f"x^{i}"
                coef = f"{c:#x}" if (c != 1 or i == 0) else ""
                terms.append(coef + ("*" if coef and mon else "") + mon)
        return "Polynomial(" + " + ".join(terms) + f" over GF(2^{self.field.m}))"

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, d: dict) -> "Polynomial":
        return cls(field_from_json(d["field"]), d["coeffs"])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_arith(a: Polynomial, b: Polynomial, kind: str):
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "divmod":
        return divmod(a, b)
    if kind == "gcd":
        return poly_gcd(a, b)
    raise ValueError(f"unknown operation {kind!r}")


def conjugates(gamma: int, emb: Embedding) -> list[int]:
    """Distinct conjugates gamma, gamma^Q, gamma^(Q^2), ... with Q = |emb.sub|."""
    M = emb.sup
    Q = emb.frobenius_power()
    out = [gamma]
    x = M.pow(gamma, Q)
    while x != gamma:
        out.append(x)
        x = M.pow(x, Q)
    return out


def _descend(p: Polynomial, emb: Embedding) -> Polynomial:
    try:
        return p.map_coeffs(emb.preimage, emb.sub)
    except NotInSubfieldError as exc:
        raise PolynomialError(f"coefficient outside GF(2^{emb.sub.m}): {exc}") from None


def minimal_polynomial(gamma: int, emb: Embedding) -> Polynomial:
    """Minimal polynomial over ``emb.sub`` of gamma in ``emb.sup``."""
    p = Polynomial.from_roots(emb.sup, conjugates(gamma, emb))
    return _descend(p, emb)


def conjugacy_closure(elements: Iterable[int], emb: Embedding) -> list[int]:
    out: list[int] = []
    seen = set()
    for g in elements:
        if g in seen:
            continue
        for c in conjugates(g, emb):
            seen.add(c)
            out.append(c)
    return out


def _is_nth_root(M: BinaryField, z: int, n: int) -> bool:
    return z != 0 and M.pow(z, n) == 1


def cyclic_generator(
    n: int,
    emb: Embedding,
    zeros: Sequence[int] = (),
    nonzeros: Sequence[int] | None = None,
    strict: bool = False,
) -> Polynomial:
    """Monic generator polynomial over ``emb.sub`` of a cyclic code of length n.

    Either ``zeros`` (roots of the generator) or, in complement mode,
    ``nonzeros`` (roots of the check polynomial) are given as n-th roots of
    unity in ``emb.sup``. Both are closed under conjugation first; with
    ``strict=True`` a non-closed input is an error instead.
    """
    M = emb.sup
    if n % 2 == 0:
        raise PolynomialError("cyclic code length must be odd")
    given = list(zeros) if nonzeros is None else list(nonzeros)
    for z in given:
        if not _is_nth_root(M, z, n):
            raise PolynomialError(f"{z:#x} is not an {n}-th root of unity")
    closed = conjugacy_closure(given, emb)
    if strict and set(closed) != set(given):
        raise PolynomialError("root set is not closed under conjugation")
    xn1 = Polynomial.x_pow_minus_one(emb.sub, n)
    prod = Polynomial(emb.sub, [1])
    done = set()
    for z in closed:
        if z in done:
            continue
        done.update(conjugates(z, emb))
        prod = prod * minimal_polynomial(z, emb)
    if nonzeros is None:
        g = prod
        _, r = divmod(xn1, g)
    else:
        g, r = divmod(xn1, prod)
    if not r.is_zero():
        raise PolynomialError(f"x^{n} - 1 is not divisible by the assembled product")
    return g.monic()
