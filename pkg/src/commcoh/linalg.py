"""Exact dense linear algebra over GF(2^k).

Matrices are row-major with entries stored as field bit representations.
Over GF(2) a row is packed into a single Python int (bit j = column j);
over larger fields a row is a list of ints.  The two code paths implement
the same algorithms and are cross-checked in the test suite.

Everything here is deterministic: Gaussian elimination always picks the
leftmost pivot, subspaces are kept in reduced row echelon form, and
quotient bases are the pivot-complement vectors of the numerator.

A module-level entry cap (rows * cols) turns runaway size requests into
errors instead of memory exhaustion; see set_entry_cap / entry_cap_override.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterable, Sequence

from .field import FiniteField

_DEFAULT_ENTRY_CAP = 1_000_000
_entry_cap = _DEFAULT_ENTRY_CAP


class SizeCapError(ValueError):
    """A requested object exceeds the configured entry cap."""


class ContainmentError(ValueError):
    """A subspace inclusion that an operation requires does not hold."""


def get_entry_cap() -> int:
    return _entry_cap


def set_entry_cap(cap: int) -> None:
    global _entry_cap
    if cap < 1:
        raise ValueError(f"entry cap must be positive, got {cap}")
    _entry_cap = cap


@contextmanager
def entry_cap_override(cap: int):
    """Temporarily raise or lower the entry cap (used by tests and the CLI)."""
    global _entry_cap
    old = _entry_cap
    set_entry_cap(cap)
    try:
        yield
    finally:
        _entry_cap = old


def check_entry_count(nrows: int, ncols: int) -> None:
    if nrows * ncols > _entry_cap:
        raise SizeCapError(
            f"{nrows} x {ncols} = {nrows * ncols} entries exceeds the cap {_entry_cap}"
        )


class Matrix:
    """A dense matrix over a FiniteField.  Treat instances as immutable."""

    __slots__ = ("field", "nrows", "ncols", "_packed", "_rows")

    def __init__(self, field: FiniteField, nrows: int, ncols: int, packed, rows):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._packed = packed  # list[int] bitmask rows, GF(2) only
        self._rows = rows      # list[list[int]] otherwise

    # -- constructors --------------------------------------------------------

    @classmethod
    def zeros(cls, field: FiniteField, nrows: int, ncols: int) -> "Matrix":
        check_entry_count(nrows, ncols)
        if field.degree == 1:
            return cls(field, nrows, ncols, [0] * nrows, None)
        return cls(field, nrows, ncols, None, [[0] * ncols for _ in range(nrows)])

    @classmethod
    def from_rows(
        cls, field: FiniteField, rows: Sequence[Sequence[int]], ncols: int | None = None
    ) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        check_entry_count(len(rows), ncols)
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for a in r:
                field.check_bits(a)
        if field.degree == 1:
            packed = [_pack_row(r) for r in rows]
            return cls(field, len(rows), ncols, packed, None)
        return cls(field, len(rows), ncols, None, rows)

    @classmethod
    def from_packed(cls, field: FiniteField, packed: Sequence[int], ncols: int) -> "Matrix":
        if field.degree != 1:
            raise ValueError("packed rows are a GF(2) representation")
        check_entry_count(len(packed), ncols)
        return cls(field, len(packed), ncols, list(packed), None)

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        if m._packed is not None:
            for i in range(n):
                m._packed[i] = 1 << i
        else:
            for i in range(n):
                m._rows[i][i] = 1
        return m

    # -- access ---------------------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        if self._packed is not None:
            return (self._packed[i] >> j) & 1
        return self._rows[i][j]

    def row(self, i: int) -> list[int]:
        if self._packed is not None:
            return _unpack_row(self._packed[i], self.ncols)
        return list(self._rows[i])

    def rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.nrows)]

    def col(self, j: int) -> list[int]:
        return [self.entry(i, j) for i in range(self.nrows)]

    def is_zero(self) -> bool:
        if self._packed is not None:
            return all(r == 0 for r in self._packed)
        return all(all(a == 0 for a in r) for r in self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.field, self.nrows, self.ncols) != (other.field, other.nrows, other.ncols):
            return False
        if self._packed is not None and other._packed is not None:
            return self._packed == other._packed
        return self.rows() == other.rows()

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols} over GF(2^{self.field.degree}))"

    # -- arithmetic -------------------------------------------------------------

    def add(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        if self._packed is not None:
            return Matrix(
                self.field, self.nrows, self.ncols,
                [a ^ b for a, b in zip(self._packed, other._packed)], None,
            )
        f = self.field
        rows = [
            [f.add(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self._rows, other._rows)
        ]
        return Matrix(self.field, self.nrows, self.ncols, None, rows)

    def mul(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValueError("field mismatch in matrix product")
        if self.ncols != other.nrows:
            raise ValueError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        check_entry_count(self.nrows, other.ncols)
        if self._packed is not None:
            out = []
            brows = other._packed
            for a in self._packed:
                acc = 0
                while a:
                    low = a & -a
                    acc ^= brows[low.bit_length() - 1]
                    a ^= low
                out.append(acc)
            return Matrix(self.field, self.nrows, other.ncols, out, None)
        f = self.field
        bt = other.rows()
        out_rows = []
        for i in range(self.nrows):
            arow = self._rows[i]
            acc = [0] * other.ncols
            for k, a in enumerate(arow):
                if a:
                    brow = bt[k]
                    for j in range(other.ncols):
                        b = brow[j]
                        if b:
                            acc[j] = f.add(acc[j], f.mul(a, b))
            out_rows.append(acc)
        return Matrix(self.field, self.nrows, other.ncols, None, out_rows)

    def mul_vec(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match column count")
        f = self.field
        if self._packed is not None:
            v = _pack_row(vec)
            return [_parity(r & v) for r in self._packed]
        out = []
        for r in self._rows:
            acc = 0
            for a, x in zip(r, vec):
                if a and x:
                    acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return out

    def transpose(self) -> "Matrix":
        check_entry_count(self.ncols, self.nrows)
        if self._packed is not None:
            cols = [0] * self.ncols
            for i, r in enumerate(self._packed):
                bit = 1 << i
                while r:
                    low = r & -r
                    cols[low.bit_length() - 1] |= bit
                    r ^= low
            return Matrix(self.field, self.ncols, self.nrows, cols, None)
        rows = [[self._rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return Matrix(self.field, self.ncols, self.nrows, None, rows)

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise ValueError("field mismatch")
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")


def _pack_row(row: Sequence[int]) -> int:
    acc = 0
    for j, a in enumerate(row):
        if a:
            acc |= 1 << j
    return acc


def _unpack_row(mask: int, ncols: int) -> list[int]:
    return [(mask >> j) & 1 for j in range(ncols)]


def _parity(x: int) -> int:
    return x.bit_count() & 1


# -- elimination engines -------------------------------------------------------


def _rref_packed(rows: Iterable[int], ncols: int) -> tuple[list[int], list[int]]:
    rows = [r for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        bit = 1 << c
        pr = None
        for i in range(r, nrows):
            if rows[i] & bit:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r]
        for i in range(nrows):
            if i != r and rows[i] & bit:
                rows[i] ^= piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def _rref_generic(
    rows: Iterable[Sequence[int]], ncols: int, f: FiniteField
) -> tuple[list[list[int]], list[int]]:
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv_inv = f.inv(rows[r][c])
        if piv_inv != 1:
            rows[r] = [f.mul(piv_inv, a) for a in rows[r]]
        piv = rows[r]
        for i in range(nrows):
            coeff = rows[i][c]
            if i != r and coeff:
                rows[i] = [f.add(a, f.mul(coeff, b)) for a, b in zip(rows[i], piv)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def _kernel_from_rref(rref_rows, pivots, ncols, f: FiniteField, packed: bool):
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for j in free_cols:
        v = [0] * ncols
        v[j] = 1
        if packed:
            bit = 1 << j
            for r, p in enumerate(pivots):
                if rref_rows[r] & bit:
                    v[p] = 1
        else:
            for r, p in enumerate(pivots):
                coeff = rref_rows[r][j]
                if coeff:
                    v[p] = f.neg(coeff)
        basis.append(v)
    return basis


class Subspace:
    """A subspace of K^n held as a reduced-row-echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FiniteField, ambient_dim: int, basis, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(v) for v in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(
        cls, field: FiniteField, vectors: Iterable[Sequence[int]], ambient_dim: int
    ) -> "Subspace":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        if field.degree == 1:
            rref, pivots = _rref_packed([_pack_row(v) for v in vecs], ambient_dim)
            rows = [_unpack_row(r, ambient_dim) for r in rref]
        else:
            rows, pivots = _rref_generic(vecs, ambient_dim, field)
        return cls(field, ambient_dim, rows, pivots)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Residual of vec after elimination against the basis (zero iff contained)."""
        if len(vec) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        f = self.field
        v = list(vec)
        for row, p in zip(self.basis, self.pivots):
            coeff = v[p]
            if coeff:
                v = [f.add(a, f.mul(coeff, b)) for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, vec: Sequence[int]) -> bool:
        return all(a == 0 for a in self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, vec: Sequence[int]) -> list[int] | None:
        """Coefficients of vec in the RREF basis, or None if not contained."""
        f = self.field
        v = list(vec)
        coords = []
        for row, p in zip(self.basis, self.pivots):
            coeff = v[p]
            coords.append(coeff)
            if coeff:
                v = [f.add(a, f.mul(coeff, b)) for a, b in zip(v, row)]
        if any(a != 0 for a in v):
            return None
        return coords

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of K^{self.ambient_dim})"


def rank(a: Matrix) -> int:
    if a._packed is not None:
        _, pivots = _rref_packed(a._packed, a.ncols)
    else:
        _, pivots = _rref_generic(a._rows, a.ncols, a.field)
    return len(pivots)


def kernel_basis(a: Matrix) -> Subspace:
    """The right kernel {v : A v = 0} as a Subspace of K^ncols."""
    f = a.field
    if a._packed is not None:
        rref, pivots = _rref_packed(a._packed, a.ncols)
        vecs = _kernel_from_rref(rref, pivots, a.ncols, f, packed=True)
    else:
        rref, pivots = _rref_generic(a._rows, a.ncols, f)
        vecs = _kernel_from_rref(rref, pivots, a.ncols, f, packed=False)
    return Subspace.from_vectors(f, vecs, a.ncols)


def image_basis(a: Matrix) -> Subspace:
    """The column space {A v} as a Subspace of K^nrows."""
    at = a.transpose()
    if at._packed is not None:
        rref, pivots = _rref_packed(at._packed, at.ncols)
        rows = [_unpack_row(r, at.ncols) for r in rref]
    else:
        rows, pivots = _rref_generic(at._rows, at.ncols, a.field)
    return Subspace(a.field, a.nrows, rows, pivots)


def row_space(a: Matrix) -> Subspace:
    if a._packed is not None:
        rref, pivots = _rref_packed(a._packed, a.ncols)
        rows = [_unpack_row(r, a.ncols) for r in rref]
    else:
        rows, pivots = _rref_generic(a._rows, a.ncols, a.field)
    return Subspace(a.field, a.ncols, rows, pivots)


def solve(a: Matrix, b: Sequence[int]) -> list[int] | None:
    """One solution x of A x = b (free variables set to 0), or None."""
    if len(b) != a.nrows:
        raise ValueError("right-hand side length does not match row count")
    f = a.field
    n = a.ncols
    if a._packed is not None:
        aug = [r | (bit << n) for r, bit in zip(a._packed, b)]
        rref, pivots = _rref_packed(aug, n + 1)
        if pivots and pivots[-1] == n:
            return None
        x = [0] * n
        last = 1 << n
        for row, p in zip(rref, pivots):
            if row & last:
                x[p] = 1
        return x
    aug = [row + [bi] for row, bi in zip(a._rows, b)]
    rref, pivots = _rref_generic(aug, n + 1, f)
    if pivots and pivots[-1] == n:
        return None
    x = [0] * n
    for row, p in zip(rref, pivots):
        x[p] = row[n]
    return x


def quotient_basis(z: Subspace, b: Subspace) -> list[tuple[int, ...]]:
    """Representatives of Z/B: the RREF basis rows of Z whose pivot is not a pivot of B.

    Requires B <= Z; raises ContainmentError naming an offending vector otherwise.
    """
    if z.field != b.field or z.ambient_dim != b.ambient_dim:
        raise ValueError("quotient of subspaces of different ambient spaces")
    for v in b.basis:
        if not z.contains(v):
            raise ContainmentError(f"denominator vector {v} is not in the numerator")
    b_pivots = set(b.pivots)
    reps = [v for v, p in zip(z.basis, z.pivots) if p not in b_pivots]
    assert len(reps) == z.dim - b.dim
    return reps
