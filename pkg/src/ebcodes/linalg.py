"""Dense matrices over GF(2^m): row reduction, null spaces, code duality."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .galois import BinaryField, FieldMismatchError, field_from_json


class RankError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Matrix:
    """Row-major matrix of field bitmasks (an int64 numpy array)."""

    field: BinaryField
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.int64, copy=True)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("matrix entries must be two-dimensional")
        if a.size and (a.min() < 0 or a.max() >= self.field.order):
            raise ValueError("entry outside the field")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def zeros(cls, field: BinaryField, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: BinaryField, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self):
        return self.entries.shape

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.entries.tobytes()))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over GF(2^{self.field.m}))\n{self.entries}"

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.entries.T)

    @property
    def T(self):
        return self.transpose()

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if other.field != self.field:
            raise FieldMismatchError("matrices over different fields")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        out = np.zeros((self.rows, other.cols), dtype=np.int64)
        for j in range(self.cols):
            out ^= f.mul_vec(self.entries[:, j][:, None], other.entries[j][None, :])
        return Matrix(f, out)

    def hstack(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, np.hstack([self.entries, other.entries]))

    def vstack(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, np.vstack([self.entries, other.entries]))

    def delete_column(self, pos: int) -> "Matrix":
        return Matrix(self.field, np.delete(self.entries, pos, axis=1))

    def is_zero(self) -> bool:
        return not self.entries.any()

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.reshape(-1).tolist(),
        }

    @classmethod
    def from_json(cls, d: dict) -> "Matrix":
        f = field_from_json(d["field"])
        rows, cols = int(d["rows"]), int(d["cols"])
        e = np.array(d["entries"], dtype=np.int64)
        if e.size != rows * cols:
            raise ValueError(f"matrix has {e.size} entries, expected {rows}*{cols}")
        return cls(f, e.reshape(rows, cols))


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns.

    Pivots are taken leftmost-first, using the first row with a nonzero
    entry in the pivot column, so the output is deterministic.
    """
    f = m.field
    a = np.array(m.entries, dtype=np.int64)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = f.mul_vec(f.inv(int(a[r, c])), a[r])
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] ^= f.mul_vec(col[hit][:, None], a[r][None, :])
        pivots.append(c)
        r += 1
    return Matrix(f, a), len(pivots), pivots


def rank(m: Matrix) -> int:
    return rref(m)[1]


def row_basis(m: Matrix) -> Matrix:
    """The nonzero rows of rref(m): a canonical basis of the row space."""
    red, rk, _ = rref(m)
    return Matrix(m.field, red.entries[:rk])


def same_row_space(a: Matrix, b: Matrix) -> bool:
    if a.field != b.field or a.cols != b.cols:
        return False
    return row_basis(a) == row_basis(b)


def null_space(m: Matrix) -> Matrix:
    """Basis (as rows) of {v : m v^T = 0}."""
    f = m.field
    red, rk, piv = rref(m)
    cols = m.cols
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, c in enumerate(free):
        basis[i, c] = 1
        # char 2: x_pivot = sum of red[r, c] * x_c
        for r, pc in enumerate(piv):
            basis[i, pc] = red.entries[r, c]
    out = Matrix(f, basis)
    assert out.rows == cols - rk
    return out


def dual_generator(g: Matrix) -> Matrix:
    """Generator of the dual code of the row space of a full-rank g."""
    rk = rank(g)
    if rk != g.rows:
        raise RankError(f"generator has rank {rk} < {g.rows} rows")
    return null_space(g)
