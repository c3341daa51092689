"""Discrete Morse reduction for based complexes of vector spaces.

A based complex is a chain of matrices d_0, ..., d_{T-1} between labeled
coordinate spaces C^0, ..., C^T with d_{n+1} d_n = 0.  A matching pairs a
cell in degree n with a cell in degree n+1 along an invertible incidence
entry, no cell appearing twice.  When the matching is acyclic (reversing
the matched edges of the incidence graph creates no directed cycle), the
unmatched cells carry a reduced complex with the same cohomology in
degrees 0 through T-1, with differential given by summing weights over
zigzag paths.

`heisenberg_matching` builds the explicit matching that collapses the
symmetric complex of a Heisenberg algebra with trivial coefficients to
zero differential, and `heisenberg_unmatched_cells` is its closed-form
critical-cell description, kept separate so the two can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraPresentation, ModulePresentation, heisenberg, trivial_module
from .cochain import cochain_space, differential_matrix
from .field import FiniteField
from .linalg import Matrix, rank as matrix_rank


class MorseError(ValueError):
    """A matching failed validation, with the reason in the message."""


class BasedComplex:
    """Labeled coordinate spaces C^0..C^T and matrices d_n: C^n -> C^{n+1}."""

    __slots__ = ("field", "matrices", "labels")

    def __init__(self, field: FiniteField, matrices: list[Matrix], labels: list[list[str]]):
        if len(labels) != len(matrices) + 1:
            raise ValueError("need one label list per degree, one more than matrices")
        for n, mat in enumerate(matrices):
            if mat.ncols != len(labels[n]) or mat.nrows != len(labels[n + 1]):
                raise ValueError(f"matrix {n} has shape {mat.nrows}x{mat.ncols}, labels disagree")
            if mat.field != field:
                raise ValueError("matrix field mismatch")
        for n, row in enumerate(labels):
            if len(set(row)) != len(row):
                raise ValueError(f"labels in degree {n} are not distinct")
        for n in range(len(matrices) - 1):
            if not matrices[n + 1].mul(matrices[n]).is_zero():
                raise ValueError(f"d_{n + 1} d_{n} != 0; not a complex")
        self.field = field
        self.matrices = list(matrices)
        self.labels = [list(row) for row in labels]

    @property
    def top_degree(self) -> int:
        return len(self.labels) - 1

    def dims(self) -> list[int]:
        return [len(row) for row in self.labels]

    def cohomology_dims(self) -> list[int]:
        """dim H^n for n = 0 .. top_degree - 1 (the top degree needs the next matrix)."""
        out = []
        for n in range(self.top_degree):
            z = len(self.labels[n]) - matrix_rank(self.matrices[n])
            b = 0 if n == 0 else matrix_rank(self.matrices[n - 1])
            out.append(z - b)
        return out


def complex_from_cochains(
    algebra: AlgebraPresentation,
    module: ModulePresentation,
    flavor: str,
    top_degree: int,
) -> BasedComplex:
    """The cochain complex in degrees 0..top_degree as a based complex."""
    matrices = [
        differential_matrix(algebra, module, n, flavor) for n in range(top_degree)
    ]
    labels = [
        cochain_space(algebra, module, n, flavor).labels()
        for n in range(top_degree + 1)
    ]
    return BasedComplex(algebra.field, matrices, labels)


class Matching:
    """Pairs (degree, tail index, head index) along nonzero incidence entries."""

    __slots__ = ("pairs",)

    def __init__(self, pairs):
        self.pairs = sorted(set((int(n), int(i), int(j)) for n, i, j in pairs))

    @classmethod
    def from_labels(cls, cx: BasedComplex, label_pairs) -> "Matching":
        """Resolve (tail label, head label) pairs against a complex's labels."""
        lookup = [{lab: i for i, lab in enumerate(row)} for row in cx.labels]
        pairs = []
        for tail, head in label_pairs:
            hits = [
                n
                for n in range(cx.top_degree)
                if tail in lookup[n] and head in lookup[n + 1]
            ]
            if not hits:
                raise MorseError(f"no adjacent degrees contain both {tail!r} and {head!r}")
            if len(hits) > 1:
                raise MorseError(f"pair ({tail!r}, {head!r}) is ambiguous across degrees")
            n = hits[0]
            pairs.append((n, lookup[n][tail], lookup[n + 1][head]))
        return cls(pairs)

    def label_pairs(self, cx: BasedComplex) -> list[tuple[str, str]]:
        return [(cx.labels[n][i], cx.labels[n + 1][j]) for n, i, j in self.pairs]

    def by_degree(self, n: int) -> list[tuple[int, int]]:
        return [(i, j) for m, i, j in self.pairs if m == n]

    def __len__(self) -> int:
        return len(self.pairs)

    def to_json(self, cx: BasedComplex) -> list:
        return [
            {"degree": n, "tail": cx.labels[n][i], "head": cx.labels[n + 1][j]}
            for n, i, j in self.pairs
        ]


def _pair_cycle_check(cx: BasedComplex, n: int, pairs_n: list[tuple[int, int]]) -> None:
    """Raise MorseError if reversing this degree's matched edges creates a cycle.

    A directed cycle in the modified graph alternates strictly between two
    adjacent degrees, so it is enough to look for a cycle among this degree's
    matched tails, where tail x precedes tail a whenever x hits a's head.
    """
    dmat = cx.matrices[n]
    partner = dict(pairs_n)
    tails = list(partner)
    succs = {x: [] for x in tails}
    indeg = {x: 0 for x in tails}
    for a in tails:
        head_row = partner[a]
        for x in tails:
            if x != a and dmat.entry(head_row, x):
                succs[x].append(a)
                indeg[a] += 1
    queue = [x for x in tails if indeg[x] == 0]
    seen = 0
    while queue:
        x = queue.pop()
        seen += 1
        for a in succs[x]:
            indeg[a] -= 1
            if indeg[a] == 0:
                queue.append(a)
    if seen == len(tails):
        return
    # walk predecessors inside the unpeeled set: every node there still has
    # one, so the walk must revisit a node and that loop is a cycle
    remaining = {x for x in tails if indeg[x] > 0}
    preds = {a: [x for x in tails if a in succs[x]] for a in tails}
    start = min(remaining)
    trail = [start]
    spot = {start: 0}
    x = start
    while True:
        x = next(p for p in preds[x] if p in remaining)
        if x in spot:
            cycle = trail[spot[x]:]
            cycle.reverse()
            names = [cx.labels[n][i] for i in cycle]
            raise MorseError(f"matching is cyclic in degree {n}: {' -> '.join(names)}")
        spot[x] = len(trail)
        trail.append(x)


def validate_matching(cx: BasedComplex, matching: Matching) -> None:
    """Raise MorseError unless the matching is incidence-valid, disjoint, acyclic."""
    used: set[tuple[int, int]] = set()
    for n, i, j in matching.pairs:
        if not 0 <= n < cx.top_degree:
            raise MorseError(f"pair degree {n} outside 0..{cx.top_degree - 1}")
        if not (0 <= i < len(cx.labels[n]) and 0 <= j < len(cx.labels[n + 1])):
            raise MorseError(f"pair ({n}, {i}, {j}) indexes nonexistent cells")
        if not cx.matrices[n].entry(j, i):
            raise MorseError(
                f"cells {cx.labels[n][i]} and {cx.labels[n + 1][j]} have zero incidence"
            )
        for cell in ((n, i), (n + 1, j)):
            if cell in used:
                raise MorseError(
                    f"cell {cx.labels[cell[0]][cell[1]]} appears in two pairs"
                )
            used.add(cell)
    for n in range(cx.top_degree):
        pairs_n = matching.by_degree(n)
        if pairs_n:
            _pair_cycle_check(cx, n, pairs_n)


@dataclass
class MorseReduction:
    original: BasedComplex
    matching: Matching
    reduced: BasedComplex
    unmatched: list[list[int]]

    def to_json(self) -> dict:
        return {
            "original_dims": self.original.dims(),
            "reduced_dims": self.reduced.dims(),
            "matching_size": len(self.matching),
            "matching": self.matching.to_json(self.original),
            "unmatched_labels": self.reduced.labels,
            "cohomology_dims": self.reduced.cohomology_dims(),
        }


def morse_complex(cx: BasedComplex, matching: Matching) -> MorseReduction:
    """The reduced complex on unmatched cells, with path-sum differentials."""
    validate_matching(cx, matching)
    f = cx.field
    tails_by_degree = [dict(matching.by_degree(n)) for n in range(cx.top_degree)]
    heads_by_degree = [
        {j: i for i, j in matching.by_degree(n)} for n in range(cx.top_degree)
    ]
    unmatched: list[list[int]] = []
    for n in range(cx.top_degree + 1):
        taken = set(tails_by_degree[n]) if n < cx.top_degree else set()
        if n > 0:
            taken |= set(heads_by_degree[n - 1])
        unmatched.append([i for i in range(len(cx.labels[n])) if i not in taken])

    reduced_mats = []
    for n in range(cx.top_degree):
        dmat = cx.matrices[n]
        partner_low = tails_by_degree[n]
        partner_high = heads_by_degree[n]
        upper_unmatched_pos = {j: k for k, j in enumerate(unmatched[n + 1])}
        memo: dict[int, dict[int, int]] = {}

        def flow(i: int) -> dict[int, int]:
            """Weights of all zigzag paths from lower cell i to unmatched upper cells."""
            if i in memo:
                return memo[i]
            out: dict[int, int] = {}
            skip = partner_low.get(i)
            for j in range(dmat.nrows):
                w = dmat.entry(j, i)
                if not w or j == skip:
                    continue
                if j in upper_unmatched_pos:
                    out[j] = f.add(out.get(j, 0), w)
                else:
                    a = partner_high.get(j)
                    if a is None:
                        # j is matched upward as a tail; no reversed edge
                        # descends from it, so the path dies here
                        continue
                    back = f.mul(w, f.inv(dmat.entry(j, a)))
                    for tgt, wt in flow(a).items():
                        acc = f.add(out.get(tgt, 0), f.mul(back, wt))
                        if acc:
                            out[tgt] = acc
                        else:
                            out.pop(tgt, None)
            memo[i] = out
            return out

        rows = [[0] * len(unmatched[n]) for _ in range(len(unmatched[n + 1]))]
        for c, i in enumerate(unmatched[n]):
            for j, w in flow(i).items():
                rows[upper_unmatched_pos[j]][c] = w
        reduced_mats.append(Matrix.from_rows(f, rows, len(unmatched[n])))

    reduced_labels = [
        [cx.labels[n][i] for i in unmatched[n]] for n in range(cx.top_degree + 1)
    ]
    reduced = BasedComplex(f, reduced_mats, reduced_labels)
    return MorseReduction(cx, matching, reduced, unmatched)


def greedy_matching(cx: BasedComplex) -> Matching:
    """A maximal-by-inclusion acyclic matching found by greedy scanning."""
    pairs: list[tuple[int, int, int]] = []
    used: set[tuple[int, int]] = set()
    for n in range(cx.top_degree):
        dmat = cx.matrices[n]
        pairs_n: list[tuple[int, int]] = []
        for i in range(dmat.ncols):
            if (n, i) in used:
                continue
            for j in range(dmat.nrows):
                if (n + 1, j) in used or not dmat.entry(j, i):
                    continue
                pairs_n.append((i, j))
                try:
                    _pair_cycle_check(cx, n, pairs_n)
                except MorseError:
                    pairs_n.pop()
                    continue
                used.add((n, i))
                used.add((n + 1, j))
                pairs.append((n, i, j))
                break
    return Matching(pairs)


# -- the Heisenberg collapse ------------------------------------------------------------


def _heisenberg_triples(ell: int, degree: int):
    """All (alpha, beta, gamma) with alpha + sum(beta) + sum(gamma) = degree."""
    for alpha in range(degree + 1):
        rest = degree - alpha
        for beta_total in range(rest + 1):
            for beta in _compositions(beta_total, ell):
                for gamma in _compositions(rest - beta_total, ell):
                    yield alpha, beta, gamma


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for tail in _compositions(total - first, parts - 1):
            yield (first,) + tail


def triple_to_tuple(ell: int, alpha: int, beta, gamma) -> tuple[int, ...]:
    """Sorted index multiset of the cell a^alpha b^beta c^gamma."""
    out = [0] * alpha
    for k in range(ell):
        out.extend([1 + k] * beta[k])
    for k in range(ell):
        out.extend([1 + ell + k] * gamma[k])
    return tuple(sorted(out))


def tuple_to_triple(ell: int, tpl: tuple[int, ...]):
    alpha = sum(1 for t in tpl if t == 0)
    beta = tuple(sum(1 for t in tpl if t == 1 + k) for k in range(ell))
    gamma = tuple(sum(1 for t in tpl if t == 1 + ell + k) for k in range(ell))
    return alpha, beta, gamma


def _max_even_even(beta, gamma) -> int:
    """Largest k with beta_k and gamma_k both even, or -1 when there is none."""
    out = -1
    for k in range(len(beta)):
        if beta[k] % 2 == 0 and gamma[k] % 2 == 0:
            out = k
    return out


def _max_odd_odd(beta, gamma) -> int:
    out = -1
    for k in range(len(beta)):
        if beta[k] % 2 == 1 and gamma[k] % 2 == 1:
            out = k
    return out


def heisenberg_matching(ell: int, top_degree: int) -> tuple[BasedComplex, Matching]:
    """The collapsing matching on the symmetric complex with trivial coefficients.

    A cell a^alpha b^beta c^gamma with alpha > 0 is a tail when the largest
    index at which beta and gamma are both even exceeds the largest index at
    which both are odd; it is matched with the cell obtained by trading one
    copy of a for one b and one c at that index.
    """
    algebra = heisenberg(ell)
    cx = complex_from_cochains(algebra, trivial_module(algebra), "symmetric", top_degree)
    spaces = [
        cochain_space(algebra, trivial_module(algebra), n, "symmetric")
        for n in range(top_degree + 1)
    ]
    pairs = []
    for n in range(top_degree):
        for i, tpl in enumerate(spaces[n].tuples):
            alpha, beta, gamma = tuple_to_triple(ell, tpl)
            if alpha == 0:
                continue
            k = _max_even_even(beta, gamma)
            if k <= _max_odd_odd(beta, gamma):
                continue
            head_beta = beta[:k] + (beta[k] + 1,) + beta[k + 1:]
            head_gamma = gamma[:k] + (gamma[k] + 1,) + gamma[k + 1:]
            head = triple_to_tuple(ell, alpha - 1, head_beta, head_gamma)
            j = spaces[n + 1].tuple_index(head)
            pairs.append((n, i, j))
    return cx, Matching(pairs)


def heisenberg_unmatched_cells(ell: int, degree: int):
    """Closed-form critical cells in one degree, as two disjoint families.

    The first family has alpha = 0 and the largest both-even index above the
    largest both-odd index; the second has no index both even and none both
    odd, with any alpha.  Returned as (family0, family1) lists of triples.
    """
    family0 = []
    family1 = []
    for alpha, beta, gamma in _heisenberg_triples(ell, degree):
        even_k = _max_even_even(beta, gamma)
        odd_k = _max_odd_odd(beta, gamma)
        if even_k == -1 and odd_k == -1:
            family1.append((alpha, beta, gamma))
        elif alpha == 0 and even_k > odd_k:
            family0.append((alpha, beta, gamma))
    return family0, family1
