"""Cup product on symmetric cochains with trivial coefficients.

The product of a degree-p and a degree-q cochain is the degree-(p+q)
cochain whose value on sorted basis arguments sums, over all ways to
pick p of the p+q positions, the product of the two factors on the two
subsequences.  There are no signs in characteristic 2, so this is both
associative and commutative on the nose, satisfies the Leibniz rule
with respect to the differential, and therefore descends to classes.

`ring_table` assembles the products of all class representatives up to
a degree bound into a multiplication table with stable labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import AlgebraPresentation, trivial_module
from .cochain import Cochain, cochain_space
from .cohomology import CohomologyResult, cohomology
from .field import scalar_to_hex


def _check_trivial_scalar(phi: Cochain) -> None:
    space = phi.space
    if space.flavor != "symmetric":
        raise ValueError("cup products are defined on symmetric cochains")
    if space.module.dim != 1 or any(
        bits for mat in space.module.actions for row in mat for bits in row
    ):
        raise ValueError("cup products need trivial one-dimensional coefficients")


def cup(phi: Cochain, psi: Cochain) -> Cochain:
    """The cup product of two symmetric cochains with trivial coefficients."""
    _check_trivial_scalar(phi)
    _check_trivial_scalar(psi)
    sa, sb = phi.space, psi.space
    if sa.algebra != sb.algebra or sa.module != sb.module:
        raise ValueError("cup factors live over different algebras or modules")
    algebra = sa.algebra
    f = algebra.field
    p, q = sa.degree, sb.degree
    target = cochain_space(algebra, sa.module, p + q, "symmetric")
    coeffs = [0] * target.dim
    for idx, tpl in enumerate(target.tuples):
        acc = 0
        for pos in itertools.combinations(range(p + q), p):
            chosen = set(pos)
            left = tuple(tpl[i] for i in pos)
            right = tuple(tpl[i] for i in range(p + q) if i not in chosen)
            acc = f.add(acc, f.mul(phi.value(left), psi.value(right)))
        coeffs[idx] = acc
    return target.cochain(coeffs)


@dataclass
class RingTable:
    """Multiplication table of cohomology classes up to a degree bound.

    Classes in degree n are labeled h{n}_{i} in the order of the
    representative basis.  `products` maps an unordered label pair to
    the coordinates of the product, stored sparsely as label -> bits.
    """

    algebra: AlgebraPresentation
    max_degree: int
    results: list[CohomologyResult]
    labels: list[list[str]]
    products: dict[tuple[str, str], dict[str, int]]
    defects: list[str]

    def dims(self) -> list[int]:
        return [r.dim_H for r in self.results]

    def product(self, left: str, right: str) -> dict[str, int]:
        key = (left, right) if left <= right else (right, left)
        return self.products[key]

    def to_json(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "dims": self.dims(),
            "labels": self.labels,
            "products": [
                {
                    "left": a,
                    "right": b,
                    "value": {
                        lab: scalar_to_hex(bits) for lab, bits in sorted(val.items())
                    },
                }
                for (a, b), val in sorted(self.products.items())
            ],
            "defects": list(self.defects),
        }


def ring_table(algebra: AlgebraPresentation, max_degree: int) -> RingTable:
    """Products of all symmetric class representatives in total degree <= max_degree."""
    triv = trivial_module(algebra)
    results = [cohomology(algebra, triv, n) for n in range(max_degree + 1)]
    labels = [
        [f"h{n}_{i}" for i in range(results[n].dim_H)] for n in range(max_degree + 1)
    ]
    by_label = {}
    for n, row in enumerate(labels):
        for i, lab in enumerate(row):
            by_label[lab] = results[n].representatives[i]
    products: dict[tuple[str, str], dict[str, int]] = {}
    defects: list[str] = []
    for na in range(max_degree + 1):
        for nb in range(na, max_degree + 1 - na):
            for ia, la in enumerate(labels[na]):
                for ib, lb in enumerate(labels[nb]):
                    if na == nb and ib < ia:
                        continue
                    prod = cup(by_label[la], by_label[lb])
                    coords = results[na + nb].class_coordinates(prod)
                    if coords is None:
                        defects.append(f"{la}*{lb} is not a cocycle")
                        coords = [0] * results[na + nb].dim_H
                    products[(la, lb)] = {
                        lab: bits
                        for lab, bits in zip(labels[na + nb], coords)
                        if bits
                    }
    return RingTable(algebra, max_degree, results, labels, products, defects)
