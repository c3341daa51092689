"""Cochain spaces of commutative algebras in characteristic 2.

Three flavors of n-cochains with values in a module M are supported:

* ``symmetric``  -- symmetric n-linear maps; basis indexed by multisets of
  basis indices (dimension C(d+n-1, n) * m).  This is the complex whose
  cohomology is the commutative cohomology.
* ``alternating`` -- n-linear maps vanishing on repeated arguments; basis
  indexed by strict index sets (dimension C(d, n) * m).  For Lie-algebra
  inputs this is the classical complex, sign-free in characteristic 2.
* ``tensor``      -- arbitrary n-linear maps; basis indexed by ordered index
  tuples (dimension d^n * m).

The differential of all three flavors is the sign-free formula

    (d phi)(x_1, ..., x_{n+1}) = sum_{i<j} phi([x_i, x_j], ... minus x_i, x_j ...)
                               + sum_i x_i . phi(... minus x_i ...),

where the bracket argument replaces position i (tensor flavor keeps the
argument order; the other flavors re-sort, and the alternating flavor
drops any term with a repeated argument).  On a basis multiset, repeated
entries contribute once per position pair, so even multiplicities cancel.

Matrices of the differential are built column by column: the image of a
basis cochain is enumerated directly, which also yields a sparse
application path (`delta_items`) for spaces too large to materialize.
The test suite cross-checks the columns against a direct multilinear
evaluation of the defining formula.
"""

from __future__ import annotations

import itertools
import math
from contextlib import contextmanager
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import AlgebraPresentation, ModulePresentation
from .field import scalar_to_hex
from .linalg import Matrix, SizeCapError, check_entry_count, get_entry_cap

FLAVORS = ("symmetric", "alternating", "tensor")

_DEFAULT_DEGREE_CAP = 8
_degree_cap = _DEFAULT_DEGREE_CAP


class DegreeCapError(ValueError):
    """A requested cochain degree exceeds the configured cap."""


def get_degree_cap() -> int:
    return _degree_cap


def set_degree_cap(cap: int) -> None:
    global _degree_cap
    if cap < 0:
        raise ValueError("degree cap must be nonnegative")
    _degree_cap = cap


@contextmanager
def degree_cap_override(cap: int):
    global _degree_cap
    old = _degree_cap
    set_degree_cap(cap)
    try:
        yield
    finally:
        _degree_cap = old


def _check_degree(n: int) -> None:
    if n < 0:
        raise ValueError(f"cochain degree must be nonnegative, got {n}")
    if n > _degree_cap:
        raise DegreeCapError(f"degree {n} exceeds the cap {_degree_cap}")


def _check_flavor(flavor: str) -> None:
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")


# -- combinatorial indexing ----------------------------------------------------------


def combination_rank(comb: Sequence[int], n_elements: int) -> int:
    """Lexicographic rank of a strictly increasing tuple over range(n_elements)."""
    rank = 0
    k = len(comb)
    prev = -1
    for i, c in enumerate(comb):
        for j in range(prev + 1, c):
            rank += math.comb(n_elements - 1 - j, k - 1 - i)
        prev = c
    return rank


def combination_unrank(rank: int, n_elements: int, k: int) -> tuple[int, ...]:
    """Inverse of combination_rank."""
    out = []
    prev = -1
    for i in range(k):
        c = prev + 1
        while True:
            block = math.comb(n_elements - 1 - c, k - 1 - i)
            if rank < block:
                break
            rank -= block
            c += 1
        out.append(c)
        prev = c
    if rank != 0:
        raise ValueError("rank out of range")
    return tuple(out)


def multiset_rank(tpl: Sequence[int], d: int) -> int:
    """Lexicographic rank of a sorted multiset over range(d) (combinatorial number system)."""
    comb = tuple(t + i for i, t in enumerate(tpl))
    return combination_rank(comb, d + len(tpl) - 1)


def multiset_unrank(rank: int, d: int, n: int) -> tuple[int, ...]:
    comb = combination_unrank(rank, d + n - 1, n)
    return tuple(c - i for i, c in enumerate(comb))


def sym_dim(d: int, n: int, m: int = 1) -> int:
    """Dimension C(d+n-1, n) * m of the symmetric n-cochains, cap-checked."""
    dim = math.comb(d + n - 1, n) * m if d > 0 else (m if n == 0 else 0)
    if dim > get_entry_cap():
        raise SizeCapError(f"symmetric cochain dimension {dim} exceeds the entry cap")
    return dim


def flavor_dim(d: int, n: int, m: int, flavor: str) -> int:
    """Uncapped dimension of the degree-n cochain space."""
    if flavor == "symmetric":
        return (math.comb(d + n - 1, n) if d > 0 else (1 if n == 0 else 0)) * m
    if flavor == "alternating":
        return math.comb(d, n) * m
    return d**n * m


@lru_cache(maxsize=512)
def _tuples_for(d: int, n: int, flavor: str) -> tuple[tuple[int, ...], ...]:
    if flavor == "symmetric":
        return tuple(itertools.combinations_with_replacement(range(d), n))
    if flavor == "alternating":
        return tuple(itertools.combinations(range(d), n))
    return tuple(itertools.product(range(d), repeat=n))


def _insert_sorted(tpl: tuple[int, ...], value: int) -> tuple[int, ...]:
    for i, t in enumerate(tpl):
        if value <= t:
            return tpl[:i] + (value,) + tpl[i:]
    return tpl + (value,)


# -- spaces and cochains ---------------------------------------------------------------


class CochainSpace:
    """The degree-n cochain space of one flavor, with a fixed basis order.

    Basis elements are pairs (argument tuple, module index); the flat index
    is tuple_rank * m + module_index, tuples in lexicographic order.
    """

    __slots__ = ("algebra", "module", "degree", "flavor", "_tuples", "_index")

    def __init__(self, algebra, module, degree, flavor):
        self.algebra = algebra
        self.module = module
        self.degree = degree
        self.flavor = flavor
        self._tuples = None
        self._index = None

    @property
    def dim(self) -> int:
        return flavor_dim(self.algebra.dim, self.degree, self.module.dim, self.flavor)

    @property
    def tuples(self) -> tuple[tuple[int, ...], ...]:
        if self._tuples is None:
            if self.dim > get_entry_cap():
                raise SizeCapError(
                    f"cochain space of dimension {self.dim} exceeds the entry cap"
                )
            self._tuples = _tuples_for(self.algebra.dim, self.degree, self.flavor)
        return self._tuples

    def tuple_index(self, tpl: tuple[int, ...]) -> int:
        if self._index is None:
            self._index = {t: i for i, t in enumerate(self.tuples)}
        return self._index[tpl]

    def index(self, tpl: tuple[int, ...], mu: int = 0) -> int:
        return self.tuple_index(tpl) * self.module.dim + mu

    def unindex(self, flat: int) -> tuple[tuple[int, ...], int]:
        m = self.module.dim
        return self.tuples[flat // m], flat % m

    def label(self, flat: int) -> str:
        tpl, mu = self.unindex(flat)
        names = ",".join(self.algebra.basis_names[t] for t in tpl)
        base = f"({names})"
        return base if self.module.dim == 1 else f"{base}|{mu}"

    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.dim)]

    def zero(self) -> "Cochain":
        return Cochain(self, (0,) * self.dim)

    def basis_cochain(self, flat: int) -> "Cochain":
        coeffs = [0] * self.dim
        coeffs[flat] = 1
        return Cochain(self, tuple(coeffs))

    def cochain(self, coeffs: Iterable[int]) -> "Cochain":
        return Cochain(self, tuple(coeffs))

    def from_items(self, items: dict[tuple[tuple[int, ...], int], int]) -> "Cochain":
        coeffs = [0] * self.dim
        for (tpl, mu), bits in items.items():
            coeffs[self.index(tpl, mu)] = self.algebra.field.check_bits(bits)
        return Cochain(self, tuple(coeffs))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CochainSpace)
            and self.algebra == other.algebra
            and self.module == other.module
            and self.degree == other.degree
            and self.flavor == other.flavor
        )

    def __repr__(self) -> str:
        return f"CochainSpace({self.flavor}, degree {self.degree}, dim {self.dim})"


@lru_cache(maxsize=512)
def _space_cached(algebra, module, degree, flavor) -> CochainSpace:
    return CochainSpace(algebra, module, degree, flavor)


def cochain_space(
    algebra: AlgebraPresentation,
    module: ModulePresentation,
    degree: int,
    flavor: str = "symmetric",
) -> CochainSpace:
    # cap checks stay outside the cache so they apply on every call,
    # not just the first one per argument tuple
    _check_degree(degree)
    _check_flavor(flavor)
    if module.algebra != algebra:
        raise ValueError("module is over a different algebra")
    return _space_cached(algebra, module, degree, flavor)


class Cochain:
    """An element of a CochainSpace, stored as a dense coefficient vector."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: CochainSpace, coeffs: tuple[int, ...]):
        if len(coeffs) != space.dim:
            raise ValueError(f"{len(coeffs)} coefficients for a space of dimension {space.dim}")
        self.space = space
        self.coeffs = coeffs

    def __add__(self, other: "Cochain") -> "Cochain":
        if self.space != other.space:
            raise ValueError("cochains from different spaces")
        f = self.space.algebra.field
        return Cochain(self.space, tuple(f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, bits: int) -> "Cochain":
        f = self.space.algebra.field
        return Cochain(self.space, tuple(f.mul(bits, a) for a in self.coeffs))

    def value(self, tpl: tuple[int, ...], mu: int = 0) -> int:
        return self.coeffs[self.space.index(tpl, mu)]

    def value_vector(self, tpl: tuple[int, ...]) -> list[int]:
        base = self.space.index(tpl, 0)
        return list(self.coeffs[base : base + self.space.module.dim])

    def items(self) -> list[tuple[tuple[tuple[int, ...], int], int]]:
        """Nonzero coefficients as ((tuple, module index), bits) pairs."""
        out = []
        for flat, bits in enumerate(self.coeffs):
            if bits:
                out.append((self.space.unindex(flat), bits))
        return out

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.space == other.space
            and self.coeffs == other.coeffs
        )

    def to_json(self) -> list[dict]:
        names = self.space.algebra.basis_names
        out = []
        for (tpl, mu), bits in self.items():
            out.append(
                {
                    "args": [names[t] for t in tpl],
                    "module": mu,
                    "value": scalar_to_hex(bits),
                }
            )
        return out

    def __repr__(self) -> str:
        nz = sum(1 for a in self.coeffs if a)
        return f"Cochain({self.space.flavor} degree {self.space.degree}, {nz} nonzero)"


# -- the differential --------------------------------------------------------------------


@lru_cache(maxsize=100_000)
def _source_image_cached(algebra, module, flavor, source, nu):
    f = algebra.field
    d = algebra.dim
    out: dict = {}

    if flavor == "symmetric":
        for t in range(d):
            if (source.count(t) + 1) & 1:  # even position multiplicity cancels
                col = module.action_col(t, nu)
                if col:
                    target = _insert_sorted(source, t)
                    for mu, val in col:
                        key = (target, mu)
                        out[key] = f.add(out.get(key, 0), val)
        seen = set()
        for idx, s in enumerate(source):
            if s in seen:
                continue
            seen.add(s)
            rest = source[:idx] + source[idx + 1 :]
            for u, v, coeff in algebra.bracket_into(s):
                if u == v:
                    cnt = rest.count(u) + 2
                    mult = (cnt * (cnt - 1) // 2) & 1
                else:
                    mult = ((rest.count(u) + 1) * (rest.count(v) + 1)) & 1
                if mult:
                    target = _insert_sorted(_insert_sorted(rest, u), v)
                    key = (target, nu)
                    out[key] = f.add(out.get(key, 0), coeff)

    elif flavor == "alternating":
        src_set = set(source)
        for t in range(d):
            if t in src_set:
                continue
            col = module.action_col(t, nu)
            if col:
                target = _insert_sorted(source, t)
                for mu, val in col:
                    key = (target, mu)
                    out[key] = f.add(out.get(key, 0), val)
        for idx, s in enumerate(source):
            rest = source[:idx] + source[idx + 1 :]
            rest_set = src_set - {s}
            for u, v, coeff in algebra.bracket_into(s):
                if u == v or u in rest_set or v in rest_set:
                    continue  # a repeated argument kills an alternating cochain
                target = _insert_sorted(_insert_sorted(rest, u), v)
                key = (target, nu)
                out[key] = f.add(out.get(key, 0), coeff)

    else:  # tensor: substitute at position i, delete position j, keep the order
        n = len(source)
        for p in range(n + 1):
            head, tail = source[:p], source[p:]
            for t in range(d):
                col = module.action_col(t, nu)
                if col:
                    target = head + (t,) + tail
                    for mu, val in col:
                        key = (target, mu)
                        out[key] = f.add(out.get(key, 0), val)
        for p in range(n):
            s = source[p]
            for u, v, coeff in algebra.bracket_into(s):
                pairs = ((u, v),) if u == v else ((u, v), (v, u))
                for a, b in pairs:
                    base = source[:p] + (a,) + source[p + 1 :]
                    for q in range(p + 1, n + 1):
                        target = base[:q] + (b,) + base[q:]
                        key = (target, nu)
                        out[key] = f.add(out.get(key, 0), coeff)

    return {k: v for k, v in out.items() if v}


def source_image(
    algebra: AlgebraPresentation,
    module: ModulePresentation,
    flavor: str,
    source: tuple[int, ...],
    nu: int,
) -> dict[tuple[tuple[int, ...], int], int]:
    """The differential of the basis cochain dual to (source, nu), as a sparse dict."""
    _check_flavor(flavor)
    _check_degree(len(source) + 1)
    return _source_image_cached(algebra, module, flavor, tuple(source), nu)


def delta_items(
    algebra: AlgebraPresentation,
    module: ModulePresentation,
    flavor: str,
    items: dict[tuple[tuple[int, ...], int], int],
) -> dict[tuple[tuple[int, ...], int], int]:
    """Apply the differential to a sparse cochain without materializing the space."""
    f = algebra.field
    out: dict = {}
    for (source, nu), c in items.items():
        if not c:
            continue
        for key, val in source_image(algebra, module, flavor, source, nu).items():
            acc = f.add(out.get(key, 0), f.mul(c, val))
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return out


def differential_matrix(
    algebra: AlgebraPresentation,
    module: ModulePresentation,
    degree: int,
    flavor: str = "symmetric",
) -> Matrix:
    """Matrix of the degree-n differential: rows = degree n+1 basis, cols = degree n."""
    src = cochain_space(algebra, module, degree, flavor)
    dst = cochain_space(algebra, module, degree + 1, flavor)
    check_entry_count(dst.dim, src.dim)
    return _differential_matrix_cached(algebra, module, degree, flavor)


@lru_cache(maxsize=256)
def _differential_matrix_cached(algebra, module, degree, flavor) -> Matrix:
    src = cochain_space(algebra, module, degree, flavor)
    dst = cochain_space(algebra, module, degree + 1, flavor)
    f = algebra.field
    m = module.dim
    if f.degree == 1:
        rows = [0] * dst.dim
        for ti, tpl in enumerate(src.tuples):
            for nu in range(m):
                j = ti * m + nu
                for (target, mu), val in source_image(algebra, module, flavor, tpl, nu).items():
                    rows[dst.index(target, mu)] |= 1 << j
        return Matrix.from_packed(f, rows, src.dim)
    rows = [[0] * src.dim for _ in range(dst.dim)]
    for ti, tpl in enumerate(src.tuples):
        for nu in range(m):
            j = ti * m + nu
            for (target, mu), val in source_image(algebra, module, flavor, tpl, nu).items():
                rows[dst.index(target, mu)][j] = val
    return Matrix.from_rows(f, rows, src.dim)


def delta(phi: Cochain) -> Cochain:
    """The differential of a cochain, one degree up."""
    space = phi.space
    target = cochain_space(space.algebra, space.module, space.degree + 1, space.flavor)
    items = {key: bits for key, bits in phi.items()}
    image = delta_items(space.algebra, space.module, space.flavor, items)
    return target.from_items(image)


def complex_slices(
    algebra: AlgebraPresentation,
    module: ModulePresentation,
    flavor: str,
    up_to: int,
) -> list[Matrix]:
    """The differential matrices delta_0, ..., delta_{up_to}."""
    return [differential_matrix(algebra, module, n, flavor) for n in range(up_to + 1)]


# -- evaluation and Cartan operators ------------------------------------------------------


def evaluate(phi: Cochain, args: Sequence[Sequence[int]]) -> list[int]:
    """Evaluate a cochain on coefficient vectors by full multilinear expansion."""
    space = phi.space
    n = space.degree
    if len(args) != n:
        raise ValueError(f"{len(args)} arguments for a degree-{n} cochain")
    f = space.algebra.field
    m = space.module.dim
    supports = [[(i, c) for i, c in enumerate(vec) if c] for vec in args]
    out = [0] * m
    for combo in itertools.product(*supports):
        idxs = tuple(i for i, _ in combo)
        scale = 1
        for _, c in combo:
            scale = f.mul(scale, c)
        if space.flavor == "tensor":
            key = idxs
        else:
            key = tuple(sorted(idxs))
            if space.flavor == "alternating" and len(set(key)) != n:
                continue
        base = space.index(key, 0)
        for mu in range(m):
            val = phi.coeffs[base + mu]
            if val:
                out[mu] = f.add(out[mu], f.mul(scale, val))
    return out


def contract(x: Sequence[int], phi: Cochain) -> Cochain:
    """The contraction i(x): plug x into the first argument slot (degree n -> n-1)."""
    space = phi.space
    if space.flavor != "symmetric":
        raise ValueError("contraction is defined on symmetric cochains")
    if space.degree < 1:
        raise ValueError("cannot contract a degree-0 cochain")
    f = space.algebra.field
    m = space.module.dim
    target = cochain_space(space.algebra, space.module, space.degree - 1, "symmetric")
    support = [(t, c) for t, c in enumerate(x) if c]
    coeffs = [0] * target.dim
    for si, tpl in enumerate(target.tuples):
        for t, c in support:
            base = space.index(_insert_sorted(tpl, t), 0)
            for mu in range(m):
                val = phi.coeffs[base + mu]
                if val:
                    flat = si * m + mu
                    coeffs[flat] = f.add(coeffs[flat], f.mul(c, val))
    return Cochain(target, tuple(coeffs))


def lie_derivative(x: Sequence[int], phi: Cochain) -> Cochain:
    """The Lie derivative theta(x) = action of x on values plus bracketing into each slot."""
    space = phi.space
    if space.flavor != "symmetric":
        raise ValueError("the Lie derivative is defined on symmetric cochains")
    algebra = space.algebra
    module = space.module
    f = algebra.field
    m = module.dim
    n = space.degree
    support = [(t, c) for t, c in enumerate(x) if c]
    coeffs = [0] * space.dim
    for si, tpl in enumerate(space.tuples):
        acc = module.act(x, phi.value_vector(tpl))
        for p in range(n):
            rest = tpl[:p] + tpl[p + 1 :]
            for t, c in support:
                for w, bits in algebra.bracket_basis(t, tpl[p]).items():
                    key = _insert_sorted(rest, w)
                    scale = f.mul(c, bits)
                    base = space.index(key, 0)
                    for mu in range(m):
                        val = phi.coeffs[base + mu]
                        if val:
                            acc[mu] = f.add(acc[mu], f.mul(scale, val))
        base = si * m
        for mu in range(m):
            coeffs[base + mu] = acc[mu]
    return Cochain(space, tuple(coeffs))


# -- flavor comparison -----------------------------------------------------------------


def inclusion_matrix(
    algebra: AlgebraPresentation,
    module: ModulePresentation,
    degree: int,
    src_flavor: str,
    dst_flavor: str,
) -> Matrix:
    """Matrix of the inclusion of cochain flavors.

    alternating -> symmetric: an alternating map is symmetric in characteristic 2,
    with value 0 on any multiset with repeats.  symmetric -> tensor: a symmetric
    map evaluated on ordered tuples through sorting.
    """
    src = cochain_space(algebra, module, degree, src_flavor)
    dst = cochain_space(algebra, module, degree, dst_flavor)
    check_entry_count(dst.dim, src.dim)
    m = module.dim
    f = algebra.field
    if (src_flavor, dst_flavor) == ("alternating", "symmetric"):
        pairs = [(dst.index(tpl, mu), src.index(tpl, mu))
                 for tpl in src.tuples for mu in range(m)]
    elif (src_flavor, dst_flavor) == ("symmetric", "tensor"):
        pairs = [(dst.index(tpl, mu), src.index(tuple(sorted(tpl)), mu))
                 for tpl in dst.tuples for mu in range(m)]
    else:
        raise ValueError(f"no inclusion from {src_flavor} to {dst_flavor}")
    if f.degree == 1:
        rows = [0] * dst.dim
        for r, c in pairs:
            rows[r] |= 1 << c
        return Matrix.from_packed(f, rows, src.dim)
    rows = [[0] * src.dim for _ in range(dst.dim)]
    for r, c in pairs:
        rows[r][c] = 1
    return Matrix.from_rows(f, rows, src.dim)


def include_cochain(phi: Cochain, dst_flavor: str) -> Cochain:
    """Reinterpret a cochain in a larger flavor (alternating -> symmetric -> tensor)."""
    space = phi.space
    order = {"alternating": 0, "symmetric": 1, "tensor": 2}
    if order[dst_flavor] < order[space.flavor]:
        raise ValueError(f"no inclusion from {space.flavor} to {dst_flavor}")
    if dst_flavor == space.flavor:
        return phi
    if space.flavor == "alternating":
        mid = _include_once(phi, "symmetric")
        return mid if dst_flavor == "symmetric" else _include_once(mid, "tensor")
    return _include_once(phi, "tensor")


def _include_once(phi: Cochain, dst_flavor: str) -> Cochain:
    space = phi.space
    mat = inclusion_matrix(space.algebra, space.module, space.degree, space.flavor, dst_flavor)
    dst = cochain_space(space.algebra, space.module, space.degree, dst_flavor)
    return dst.cochain(mat.mul_vec(list(phi.coeffs)))
