"""Point sets in PG(2,q) and PG(3,q): incidence counts, hyperovals, maximal
arcs, caps and ovoids, Denniston arcs and the trace-norm quadric."""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .galois import (
    BinaryField,
    Coordinatizer,
    Tower,
    field_from_json,
    field_of_order,
    roots_of_unity,
)
from .linalg import Matrix, rank


class GeometryError(ValueError):
    pass


class QuadricError(GeometryError):
    pass


def as_field(field_or_q) -> BinaryField:
    if isinstance(field_or_q, BinaryField):
        return field_or_q
    return field_of_order(int(field_or_q))


# ----------------------------------------------------------------------
# Canonical homogeneous coordinates
# ----------------------------------------------------------------------

def canonicalize(field: BinaryField, vectors) -> np.ndarray:
    """Scale each row so that its leftmost nonzero entry is 1."""
    v = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
    nz = v != 0
    if not nz.any(axis=1).all():
        raise GeometryError("the zero vector is not a projective point")
    lead = v[np.arange(v.shape[0]), nz.argmax(axis=1)]
    return field.mul_vec(field.inv_vec(lead)[:, None], v)


def canonical_point(field: BinaryField, vector: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(a) for a in canonicalize(field, [vector])[0])


@functools.lru_cache(maxsize=None)
def _enumerate_canonical(field: BinaryField, length: int) -> np.ndarray:
    q = field.order
    rows = []
    for lead in range(length):
        tail = length - lead - 1
        for rest in itertools.product(range(q), repeat=tail):
            rows.append((0,) * lead + (1,) + rest)
    rows.sort()
    a = np.array(rows, dtype=np.int64)
    a.setflags(write=False)
    return a


def enumerate_points(field_or_q, dim: int) -> np.ndarray:
    """All points of PG(dim, q) in canonical form, sorted."""
    return _enumerate_canonical(as_field(field_or_q), dim + 1)


def enumerate_hyperplanes(field_or_q, dim: int) -> np.ndarray:
    """Hyperplanes of PG(dim, q) as canonical dual coordinate rows."""
    return _enumerate_canonical(as_field(field_or_q), dim + 1)


def enumerate_lines(field_or_q) -> np.ndarray:
    return enumerate_hyperplanes(field_or_q, 2)


def enumerate_planes(field_or_q) -> np.ndarray:
    return enumerate_hyperplanes(field_or_q, 3)


def dot_products(field: BinaryField, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Matrix of sum_i left[a, i] * right[b, i] over the field."""
    out = np.zeros((left.shape[0], right.shape[0]), dtype=np.int64)
    for i in range(left.shape[1]):
        out ^= field.mul_vec(left[:, i][:, None], right[:, i][None, :])
    return out


# ----------------------------------------------------------------------
# Point multisets
# ----------------------------------------------------------------------

class ProjPointSet:
    """A multiset of points of PG(dim, q) keyed by canonical coordinates."""

    def __init__(self, field: BinaryField, dim: int, counts: dict | Counter):
        self.field = field
        self.dim = dim
        for p in counts:
            if len(p) != dim + 1:
                raise GeometryError(f"point {p} does not live in PG({dim}, q)")
        self.counts = dict(sorted((tuple(int(a) for a in p), int(c)) for p, c in counts.items() if c))

    @classmethod
    def from_vectors(cls, field: BinaryField, vectors, dim: int | None = None) -> "ProjPointSet":
        v = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
        if dim is None:
            dim = v.shape[1] - 1
        if v.shape[0] == 0:
            return cls(field, dim, {})
        can = canonicalize(field, v)
        return cls(field, dim, Counter(map(tuple, can.tolist())))

    @classmethod
    def affine(cls, field: BinaryField, pairs) -> "ProjPointSet":
        """Points (x, y, 1) for affine pairs (x, y)."""
        p = np.atleast_2d(np.asarray(pairs, dtype=np.int64)).reshape(-1, 2)
        return cls.from_vectors(field, np.hstack([p, np.ones((p.shape[0], 1), dtype=np.int64)]), 2)

    @property
    def q(self) -> int:
        return self.field.order

    def __len__(self) -> int:
        return sum(self.counts.values())

    def support_size(self) -> int:
        return len(self.counts)

    def is_set(self) -> bool:
        return all(c == 1 for c in self.counts.values())

    def support(self) -> "ProjPointSet":
        return ProjPointSet(self.field, self.dim, {p: 1 for p in self.counts})

    def max_multiplicity(self) -> int:
        return max(self.counts.values(), default=0)

    def __iter__(self):
        return iter(self.counts)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.counts

    def __eq__(self, other):
        return (
            isinstance(other, ProjPointSet)
            and self.field == other.field
            and self.dim == other.dim
            and self.counts == other.counts
        )

    def __hash__(self):
        return hash((self.field, self.dim, tuple(self.counts.items())))

    def __repr__(self):
        return f"ProjPointSet(PG({self.dim},{self.q}), {len(self)} points, {self.support_size()} distinct)"

    def points_array(self) -> np.ndarray:
        if not self.counts:
            return np.zeros((0, self.dim + 1), dtype=np.int64)
        return np.array(list(self.counts), dtype=np.int64)

    def multiplicities(self) -> np.ndarray:
        return np.array(list(self.counts.values()), dtype=np.int64)

    def remove(self, point) -> "ProjPointSet":
        c = dict(self.counts)
        p = tuple(point)
        if p not in c:
            raise KeyError(p)
        c[p] -= 1
        return ProjPointSet(self.field, self.dim, c)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "q": self.q,
            "field": self.field.to_json(),
            "points": [[list(p), c] for p, c in self.counts.items()],
        }

    @classmethod
    def from_json(cls, d: dict) -> "ProjPointSet":
        if "field" in d:
            f = field_from_json(d["field"])
        else:
            f = field_of_order(int(d["q"]))
        dim = int(d["dim"])
        counts: Counter = Counter()
        for coords, mult in d["points"]:
            counts[canonical_point(f, coords)] += int(mult)
        return cls(f, dim, counts)


@dataclass(frozen=True)
class IncidenceCounts:
    """Intersection sizes of a point multiset with every hyperplane."""

    hyperplanes: np.ndarray
    counts: np.ndarray
    histogram: dict

    def max(self) -> int:
        return int(self.counts.max()) if self.counts.size else 0

    def attaining(self, value: int) -> np.ndarray:
        return self.hyperplanes[self.counts == value]

    def to_json(self) -> dict:
        return {"histogram": {str(k): v for k, v in self.histogram.items()}}


def line_counts(ps: ProjPointSet) -> IncidenceCounts:
    """Multiset intersection counts with all lines (dim 2) or planes (dim 3)."""
    H = enumerate_hyperplanes(ps.field, ps.dim)
    P = ps.points_array()
    if P.shape[0] == 0:
        counts = np.zeros(H.shape[0], dtype=np.int64)
    else:
        inc = dot_products(ps.field, H, P) == 0
        counts = inc.astype(np.int64) @ ps.multiplicities()
    hist = dict(sorted(Counter(counts.tolist()).items()))
    return IncidenceCounts(H, counts, hist)


plane_counts = line_counts


def line_keys(field: BinaryField, P: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Canonical Pluecker coordinates of the line through each pair of rows.

    Returns (i, j, keys) for all i < j; rows must be pairwise independent.
    """
    n, k = P.shape
    ii, jj = np.triu_indices(n, 1)
    A, B = P[ii], P[jj]
    minors = [
        field.mul_vec(A[:, a], B[:, b]) ^ field.mul_vec(A[:, b], B[:, a])
        for a, b in itertools.combinations(range(k), 2)
    ]
    keys = np.stack(minors, axis=1) if minors else np.zeros((len(ii), 0), dtype=np.int64)
    if keys.shape[0]:
        keys = canonicalize(field, keys)
    return ii, jj, keys


def has_three_collinear(field: BinaryField, P: np.ndarray) -> bool:
    """Whether some line contains three of the (distinct) points in P."""
    if P.shape[0] < 3:
        return False
    if P.shape[1] <= 2:
        return True
    _, _, keys = line_keys(field, P)
    return np.unique(keys, axis=0).shape[0] < keys.shape[0]


# ----------------------------------------------------------------------
# Predicates
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _require_set(ps: ProjPointSet):
    if not ps.is_set():
        raise GeometryError("predicate expects a set; got a multiset with repeated points")


def is_arc(ps: ProjPointSet) -> Verdict:
    """No three points collinear (in any dimension)."""
    _require_set(ps)
    if has_three_collinear(ps.field, ps.points_array()):
        return Verdict(False, "three collinear points")
    return Verdict(True)


is_cap = is_arc


def is_hyperoval(ps: ProjPointSet) -> Verdict:
    _require_set(ps)
    if ps.dim != 2:
        return Verdict(False, "not a plane point set")
    if len(ps) != ps.q + 2:
        return Verdict(False, f"size {len(ps)} != q + 2 = {ps.q + 2}")
    lc = line_counts(ps)
    if lc.max() > 2:
        return Verdict(False, f"a line meets the set in {lc.max()} points")
    return Verdict(True)


def is_maximal_arc(ps: ProjPointSet, t: int) -> Verdict:
    """Size (q+1)(t-1)+1 and every line meets the set in 0 or t points."""
    _require_set(ps)
    q = ps.q
    if ps.dim != 2:
        return Verdict(False, "not a plane point set")
    want = (q + 1) * (t - 1) + 1
    if len(ps) != want:
        return Verdict(False, f"size {len(ps)} != (q+1)(t-1)+1 = {want}")
    lc = line_counts(ps)
    bad = set(lc.histogram) - {0, t}
    if bad:
        return Verdict(False, f"line intersection sizes {sorted(bad)} outside {{0, {t}}}")
    return Verdict(True)


def is_ovoid(ps: ProjPointSet) -> Verdict:
    _require_set(ps)
    q = ps.q
    if ps.dim != 3:
        return Verdict(False, "not a point set of PG(3,q)")
    if len(ps) != q * q + 1:
        return Verdict(False, f"size {len(ps)} != q^2 + 1 = {q * q + 1}")
    if not is_cap(ps):
        return Verdict(False, "three collinear points")
    pc = plane_counts(ps)
    bad = set(pc.histogram) - {1, q + 1}
    if bad:
        return Verdict(False, f"plane sections of sizes {sorted(bad)} outside {{1, q+1}}")
    return Verdict(True)


# ----------------------------------------------------------------------
# Constructions in PG(2, q)
# ----------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def plane_coordinatizer(tower: Tower, w: int | None = None) -> Coordinatizer:
    """Coordinates over the basis {1, w} of K (default w = xi)."""
    if w is None or w == tower.xi:
        return tower.coord_K
    return Coordinatizer(tower.embed_F_to_K, (1, w))


def affine_points_of(elements: Iterable[int], tower: Tower, w: int | None = None) -> ProjPointSet:
    """Elements of K as points (a, b, 1) with x = a + b w."""
    c = plane_coordinatizer(tower, w)
    xs = np.fromiter(elements, dtype=np.int64)
    return ProjPointSet.affine(tower.base, c.vec(xs))


def regular_hyperoval(tower: Tower, w: int | None = None) -> ProjPointSet:
    """S together with 0, as q + 2 affine points."""
    return affine_points_of(list(tower.unit_circle) + [0], tower, w)


def is_additive_subgroup(elems: Iterable[int]) -> bool:
    s = set(elems)
    return 0 in s and all(a ^ b in s for a in s for b in s)


@dataclass(frozen=True)
class DennistonSpec:
    """Parameters of a classical Denniston arc over F = ``field``."""

    field: BinaryField
    delta: int
    Delta: frozenset
    Lambda: frozenset | None = None

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def t(self) -> int:
        return len(self.Delta)

    @property
    def N(self) -> int:
        return (self.q + 1) * (self.t - 1)

    def validate(self):
        f = self.field
        d = self.delta
        if any(f.mul(x, x) ^ f.mul(d, x) ^ 1 == 0 for x in f.elements()):
            raise GeometryError(f"X^2 + {d:#x} X + 1 has a root in F")
        if not is_additive_subgroup(self.Delta):
            raise GeometryError("Delta is not an additive subgroup of F")
        if self.q % self.t:
            raise GeometryError("|Delta| does not divide q")
        if self.Lambda is not None:
            if not is_additive_subgroup(self.Lambda):
                raise GeometryError("Lambda is not an additive subgroup of F")
            if {f.mul(a, a) for a in self.Lambda} != set(self.Delta):
                raise GeometryError("Delta is not the set of squares of Lambda")
        return self

    @classmethod
    def from_lambda(cls, field: BinaryField, delta: int, Lambda: Iterable[int]) -> "DennistonSpec":
        L = frozenset(int(a) for a in Lambda)
        return cls(field, delta, frozenset(field.mul(a, a) for a in L), L).validate()


def denniston_classical(spec: DennistonSpec) -> ProjPointSet:
    """Union of the curves X^2 + delta XY + Y^2 = lam over lam in Delta."""
    spec.validate()
    f = spec.field
    e = np.arange(f.order)
    X, Y = np.meshgrid(e, e, indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    val = f.mul_vec(X, X) ^ f.mul_vec(f.mul_vec(spec.delta, X), Y) ^ f.mul_vec(Y, Y)
    keep = np.isin(val, np.fromiter(spec.Delta, dtype=np.int64))
    return ProjPointSet.affine(f, np.stack([X[keep], Y[keep]], axis=1))


def denniston_polar(Lambda: Iterable[int], tower: Tower, w: int | None = None) -> ProjPointSet:
    """Union of the circles lam * S over lam in Lambda, as affine points.

    ``w`` selects the basis {1, w} of K; use the root u of X^2 + delta X + 1
    to compare against :func:`denniston_classical`.
    """
    L = sorted(set(int(a) for a in Lambda))
    if not is_additive_subgroup(L):
        raise GeometryError("Lambda is not an additive subgroup of F")
    K = tower.mid
    emb = tower.embed_F_to_K
    elems = [0] + [K.mul(emb(lam), u) for lam in L if lam for u in tower.unit_circle]
    return affine_points_of(elems, tower, w)


def subfield_of_F(tower: Tower, t: int) -> list[int]:
    """The subfield of order t of F, in native F representation."""
    F = tower.base
    mt = t.bit_length() - 1
    if t < 2 or 1 << mt != t or F.m % mt:
        raise GeometryError(f"q = {F.order} is not a power of t = {t}")
    return [x for x in F.elements() if F.pow(x, t) == x]


def denniston_cyclic(tower: Tower, t: int, w: int | None = None) -> tuple[ProjPointSet, int]:
    """{0} together with <alpha>, alpha = theta^((q-1)/(t-1)), as affine points.

    Returns the point set and alpha; alpha is certified to have order
    N = (q+1)(t-1).
    """
    q = tower.q
    subfield_of_F(tower, t)
    if not 1 < t:
        raise GeometryError("t must exceed 1")
    K = tower.mid
    alpha = K.pow(tower.xi, (q - 1) // (t - 1))
    N = (q + 1) * (t - 1)
    if K.mul_order(alpha) != N:
        raise GeometryError(f"alpha has order {K.mul_order(alpha)}, expected {N}")
    elems = [0] + [K.pow(alpha, i) for i in range(N)]
    return affine_points_of(elems, tower, w), alpha


# ----------------------------------------------------------------------
# Quadrics in PG(3, q)
# ----------------------------------------------------------------------

def trace_norm_form(x: int, tower: Tower) -> int:
    """Tr_{K/F}(N_{E/K}(x)) as an element of F."""
    tower._need_top()
    E, q = tower.top, tower.q
    n = E.pow(x, q * q + 1)
    return tower.embed_F_to_E.preimage(n ^ E.pow(n, q))


def bilinear_form(x: int, y: int, tower: Tower) -> int:
    return trace_norm_form(x ^ y, tower) ^ trace_norm_form(x, tower) ^ trace_norm_form(y, tower)


def trace_norm_values(tower: Tower, xs=None) -> np.ndarray:
    """Vectorized trace-norm form; over all of E when ``xs`` is None."""
    tower._need_top()
    E, q = tower.top, tower.q
    if xs is None:
        xs = np.arange(E.order)
    n = E.pow_vec(xs, q * q + 1)
    return tower.embed_F_to_E.preimage_vec(n ^ E.pow_vec(n, q))


@dataclass(frozen=True)
class QuadraticFormWitness:
    """Values of Q on the F-basis of E and the Gram matrix of its polar form."""

    tower: Tower
    basis: tuple[int, ...]
    values: tuple[int, ...]
    bilinear_matrix: Matrix

    def rank(self) -> int:
        return rank(self.bilinear_matrix)


def quadratic_form_witness(tower: Tower, basis: Sequence[int] | None = None) -> QuadraticFormWitness:
    tower._need_top()
    if basis is None:
        basis = tower.coord_E.basis
    vals = tuple(trace_norm_form(b, tower) for b in basis)
    G = [[bilinear_form(a, b, tower) for b in basis] for a in basis]
    return QuadraticFormWitness(tower, tuple(basis), vals, Matrix(tower.base, G))


def trace_norm_quadric(tower: Tower, coordinatizer: Coordinatizer | None = None) -> Callable:
    """Q as a function of F-coordinate rows (shape (N, 4))."""
    c = coordinatizer or tower.coord_E

    def Q(coords):
        return trace_norm_values(tower, c.recompose_vec(coords))

    return Q


def split_form(field: BinaryField) -> Callable:
    """The hyperbolic form x0 x1 + x2 x3."""

    def Q(x):
        x = np.asarray(x, dtype=np.int64)
        return field.mul_vec(x[:, 0], x[:, 1]) ^ field.mul_vec(x[:, 2], x[:, 3])

    return Q


def elliptic_form(field: BinaryField, a: int) -> Callable:
    """The form x0^2 + a x0 x1 + x1^2 + x2 x3 (elliptic when X^2 + aX + 1 is irreducible)."""

    def Q(x):
        x = np.asarray(x, dtype=np.int64)
        f = field
        return (
            f.mul_vec(x[:, 0], x[:, 0])
            ^ f.mul_vec(f.mul_vec(a, x[:, 0]), x[:, 1])
            ^ f.mul_vec(x[:, 1], x[:, 1])
            ^ f.mul_vec(x[:, 2], x[:, 3])
        )

    return Q


def quadric_points(Q: Callable, field: BinaryField) -> tuple[ProjPointSet, str]:
    """Singular points of a quadratic form on F^4 and their quadric type."""
    q = field.order
    P = enumerate_points(field, 3)
    pts = P[np.asarray(Q(P)) == 0]
    ps = ProjPointSet(field, 3, {tuple(p): 1 for p in pts.tolist()})
    if len(ps) == q * q + 1:
        kind = "elliptic"
    elif len(ps) == (q + 1) ** 2:
        kind = "hyperbolic"
    else:
        raise QuadricError(f"{len(ps)} singular points: neither q^2+1 nor (q+1)^2")
    return ps, kind


def ovoid_unit_sphere(tower: Tower, coordinatizer: Coordinatizer | None = None) -> ProjPointSet:
    """The q^2 + 1 elements u of E with u^(q^2+1) = 1 as points of PG(3,q)."""
    tower._need_top()
    c = coordinatizer or tower.coord_E
    q = tower.q
    O = np.array(roots_of_unity(q * q + 1, tower.top), dtype=np.int64)
    return ProjPointSet.from_vectors(tower.base, c.vec(O), 3)
