"""Independent oracles used by the test suite.

Everything here is deliberately computed by different routes than the
library: Weyl groups by breadth-first closure of reflection matrices,
characters by explicit Weyl-numerator division, orbit dimensions by the
classical partition/centralizer formulas, dominance folding by taking the
dominant element of a brute-force Weyl orbit.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

Matrix = tuple[tuple[int, ...], ...]


def _identity(rank: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rank = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(rank)) for j in range(rank))
        for i in range(rank)
    )


def _mat_apply(m: Matrix, w) -> tuple[int, ...]:
    return tuple(sum(m[i][j] * w[j] for j in range(len(w))) for i in range(len(w)))


def reflection_matrix(cartan, i: int) -> Matrix:
    rank = len(cartan)
    return tuple(
        tuple(int(k == j) - (cartan[k][i] if j == i else 0) for j in range(rank))
        for k in range(rank)
    )


def weyl_group(rd) -> list[tuple[Matrix, int]]:
    """All Weyl group elements as matrices on weight coordinates, with length."""
    gens = [reflection_matrix(rd.cartan, i) for i in range(rd.rank)]
    seen = {_identity(rd.rank): 0}
    frontier = [_identity(rd.rank)]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = _mat_mul(g, m)
                if prod not in seen:
                    seen[prod] = seen[m] + 1
                    nxt.append(prod)
        frontier = nxt
    return sorted(seen.items(), key=lambda kv: (kv[1], kv[0]))


def weyl_orbit(rd, w) -> set[tuple[int, ...]]:
    return {_mat_apply(m, w) for m, _ in weyl_group(rd)}


def brute_dominant(rd, w) -> tuple[int, ...]:
    """Dominant representative by scanning the whole brute-force orbit."""
    dom = [v for v in weyl_orbit(rd, w) if all(x >= 0 for x in v)]
    assert len(dom) == 1, f"orbit of {w} has {len(dom)} dominant elements"
    return dom[0]


def apply_weyl(m: Matrix, w) -> tuple[int, ...]:
    return _mat_apply(m, w)


# ---------------------------------------------------------------------------
# characters via Weyl numerator division


def _solve_fractions(cartan, w) -> list[Fraction]:
    """Solve cartan * c = w exactly."""
    rank = len(cartan)
    aug = [[Fraction(cartan[i][j]) for j in range(rank)] + [Fraction(w[i])] for i in range(rank)]
    for c in range(rank):
        pivot = next(i for i in range(c, rank) if aug[i][c] != 0)
        aug[c], aug[pivot] = aug[pivot], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(rank):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [aug[i][rank] for i in range(rank)]


def weight_height(rd, w) -> Fraction:
    return sum(_solve_fractions(rd.cartan, w))


def character_by_division(rd, hw) -> dict[tuple[int, ...], int]:
    """Full weight multiplicity table of V(hw) by dividing Weyl numerators."""
    rho = (1,) * rd.rank
    hw_rho = tuple(a + b for a, b in zip(hw, rho))
    numerator: dict[tuple[int, ...], int] = {}
    denominator: dict[tuple[int, ...], int] = {}
    for m, length in weyl_group(rd):
        sign = -1 if length % 2 else 1
        for target, shift in ((numerator, hw_rho), (denominator, rho)):
            w = _mat_apply(m, shift)
            target[w] = target.get(w, 0) + sign
    remainder = dict(numerator)
    quotient: dict[tuple[int, ...], int] = {}
    order_key = lambda w: (weight_height(rd, w), w)
    for _ in range(200000):
        remainder = {w: c for w, c in remainder.items() if c}
        if not remainder:
            break
        lead = max(remainder, key=order_key)
        coef = remainder[lead]
        shift = tuple(a - b for a, b in zip(lead, rho))
        quotient[shift] = quotient.get(shift, 0) + coef
        for w, c in denominator.items():
            key = tuple(a + b for a, b in zip(w, shift))
            remainder[key] = remainder.get(key, 0) - coef * c
    else:
        raise AssertionError("character division did not terminate")
    return {w: c for w, c in quotient.items() if c}


# ---------------------------------------------------------------------------
# partition/centralizer dimension formulas


def dual_partition(part) -> tuple[int, ...]:
    if not part:
        return ()
    return tuple(sum(1 for p in part if p > k) for k in range(part[0]))


def partition_orbit_dimension(family: str, n: int, part) -> int:
    """Orbit dimension from the classical centralizer dimension formulas."""
    dual = dual_partition(part)
    squares = sum(q * q for q in dual)
    odd = sum(1 for p in part if p % 2 == 1)
    if family == "A":
        big_n = n + 1
        return big_n * big_n - squares
    if family in ("B", "D"):
        big_n = sum(part)
        dim_g = big_n * (big_n - 1) // 2
        return dim_g - (squares - odd) // 2
    if family == "C":
        dim_g = n * (2 * n + 1)
        return dim_g - (squares + odd) // 2
    raise ValueError(family)


def parse_partition_label(label: str) -> tuple[tuple[int, ...], str]:
    """Partition and very-even tag from an orbit label like "[3,1,1]" or "[4,4]_I"."""
    tag = ""
    body = label
    if label.endswith("_I"):
        body, tag = label[:-2], "I"
    if label.endswith("_II"):
        body, tag = label[:-3], "II"
    assert body.startswith("[") and body.endswith("]"), label
    return tuple(int(x) for x in body[1:-1].split(",")), tag


# ---------------------------------------------------------------------------
# misc exact linear algebra


def rational_rank(rows) -> int:
    ech: list[list[Fraction]] = []
    pivots: list[int] = []
    for row in rows:
        r = [Fraction(x) for x in row]
        for p, e in zip(pivots, ech):
            if r[p]:
                f = r[p] / e[p]
                r = [x - f * y for x, y in zip(r, e)]
        nz = next((i for i, x in enumerate(r) if x), None)
        if nz is not None:
            pivots.append(nz)
            ech.append(r)
    return len(ech)


def brute_pushforward(rd, gd, phi) -> dict[tuple[int, ...], int]:
    """Alternating subset sum by explicit enumeration of all subset pairs.

    Independent of the library's incremental-product evaluation: folds each
    term with the brute-force orbit scan.
    """
    out: dict[tuple[int, ...], int] = {}
    deg1 = list(gd.degree1_roots)
    levi = list(gd.levi_positive_roots)
    for na in range(len(deg1) + 1):
        for A in itertools.combinations(range(len(deg1)), na):
            for nb in range(len(levi) + 1):
                for B in itertools.combinations(range(len(levi)), nb):
                    term = list(phi)
                    for i in A:
                        term = [a - b for a, b in zip(term, deg1[i])]
                    for j in B:
                        term = [a + b for a, b in zip(term, levi[j])]
                    folded = brute_dominant(rd, tuple(term))
                    sign = -1 if (na + nb) % 2 else 1
                    out[folded] = out.get(folded, 0) + sign
    return {w: c for w, c in out.items() if c}
