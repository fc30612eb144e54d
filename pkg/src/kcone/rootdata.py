"""Root systems, Weyl chamber combinatorics, and the invariant form.

Everything lives in fundamental-weight coordinates of the simply connected
group: a weight is a tuple of integers, the i-th entry being the pairing
with the i-th simple coroot.  The j-th simple root is then the j-th column
of the Cartan matrix.  All arithmetic is exact (ints and Fractions); no
floating point enters anywhere.

The invariant bilinear form is normalized so that short roots have squared
length 2 in every simple factor.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Weight = tuple[int, ...]

#: Largest rank accepted for the classical families A/B/C/D.
MAX_RANK = 8

_LABEL_RE = re.compile(r"^([A-G])([0-9]+)$")


class UnknownTypeError(ValueError):
    """A Cartan type label that cannot be parsed or is unsupported."""


# ---------------------------------------------------------------------------
# weight helpers


def zero_weight(rank: int) -> Weight:
    return (0,) * rank


def weight_add(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def weight_sub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def weight_neg(a: Sequence[int]) -> Weight:
    return tuple(-x for x in a)


def is_dominant(w: Sequence[int]) -> bool:
    return all(x >= 0 for x in w)


# ---------------------------------------------------------------------------
# root datum


@dataclass(frozen=True)
class RootDatum:
    """Cartan type data with positive roots in fundamental coordinates.

    ``cartan[i][j]`` is the pairing of the j-th simple root with the i-th
    simple coroot, so column j is the j-th simple root as a weight.
    ``positive_root_coeffs[k]`` expands ``positive_roots[k]`` over the
    simple roots.  ``gram`` is the matrix of the invariant form on the
    weight lattice (entries are Fractions), normalized so short roots have
    squared length 2.
    """

    type_label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    positive_roots: tuple[Weight, ...]
    positive_root_coeffs: tuple[tuple[int, ...], ...]
    simple_root_indices: tuple[int, ...]
    gram: tuple[tuple[Fraction, ...], ...]

    @property
    def dim_g(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    def simple_root(self, i: int) -> Weight:
        return self.positive_roots[self.simple_root_indices[i]]

    def rho(self) -> Weight:
        """Half the sum of positive roots: (1, ..., 1)."""
        return (1,) * self.rank


def _simple_cartan(family: str, n: int) -> tuple[list[list[int]], list[int]]:
    """Cartan matrix and symmetrizer d_i for one simple factor.

    Bourbaki numbering throughout; for B_n the last simple root is short,
    for C_n the last is long, for D_n the fork sits at node n-3 (0-based),
    for G2 the first root is long, for F4 the first two are long.
    """
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def chain(i: int, j: int) -> None:
        A[i][j] = A[j][i] = -1

    if family == "A":
        for i in range(n - 1):
            chain(i, i + 1)
        d = [1] * n
    elif family == "B":
        for i in range(n - 1):
            chain(i, i + 1)
        A[n - 1][n - 2] = -2  # row of the short root
        d = [2] * (n - 1) + [1]
    elif family == "C":
        for i in range(n - 1):
            chain(i, i + 1)
        A[n - 2][n - 1] = -2
        d = [1] * (n - 1) + [2]
    elif family == "D":
        for i in range(n - 2):
            chain(i, i + 1)
        chain(n - 3, n - 1)
        A[n - 2][n - 1] = A[n - 1][n - 2] = 0
        d = [1] * n
    elif family == "G":
        A = [[2, -1], [-3, 2]]
        d = [3, 1]
    elif family == "F":
        A = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
        d = [2, 2, 1, 1]
    elif family == "E":
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        if n >= 7:
            edges.append((5, 6))
        if n == 8:
            edges.append((6, 7))
        for i, j in edges:
            chain(i, j)
        d = [1] * n
    else:  # pragma: no cover - guarded by the label parser
        raise UnknownTypeError(family)
    return A, d


_POSITIVE_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "G": lambda n: 6,
    "F": lambda n: 24,
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
}


def _close_positive_roots(cartan: Sequence[Sequence[int]]) -> dict[tuple[int, ...], Weight]:
    """All positive roots, keyed by simple-root coefficients.

    Standard string construction: for a root a and simple root a_i, the
    i-string through a has q = p - <a, a_i^vee> steps up, where p counts the
    steps down that stay inside the root system.
    """
    r = len(cartan)
    col = [tuple(cartan[i][j] for i in range(r)) for j in range(r)]
    roots: dict[tuple[int, ...], Weight] = {}
    level = []
    for j in range(r):
        c = tuple(1 if k == j else 0 for k in range(r))
        roots[c] = col[j]
        level.append(c)
    while level:
        nxt = []
        for c in level:
            v = roots[c]
            for i in range(r):
                p = 0
                back = list(c)
                while True:
                    back[i] -= 1
                    if back[i] < 0 or tuple(back) not in roots:
                        break
                    p += 1
                if p - v[i] >= 1:
                    up = list(c)
                    up[i] += 1
                    cc = tuple(up)
                    if cc not in roots:
                        roots[cc] = weight_add(v, col[i])
                        nxt.append(cc)
        level = nxt
    return roots


def _parse_label(type_label: str) -> list[tuple[str, int]]:
    factors = []
    for part in type_label.split("x"):
        m = _LABEL_RE.match(part.strip())
        if not m:
            raise UnknownTypeError(
                f"cannot parse Cartan type {part!r} (expected e.g. 'A2', 'B3', 'G2', or products like 'A1xA1')"
            )
        family, n = m.group(1), int(m.group(2))
        if family in "ABCD" and n > MAX_RANK:
            raise UnknownTypeError(f"{part}: rank {n} exceeds the configured maximum {MAX_RANK}")
        if family == "A" and n < 1:
            raise UnknownTypeError("A0 is trivial; rank must be at least 1")
        if family == "B" and n < 2:
            raise UnknownTypeError(f"{part}: B-type needs rank >= 2 (B1 coincides with A1)")
        if family == "C" and n < 2:
            raise UnknownTypeError(f"{part}: C-type needs rank >= 2 (C1 coincides with A1)")
        if family == "D" and n < 3:
            raise UnknownTypeError(f"{part}: D-type needs rank >= 3 (use A1xA1 for D2)")
        if family == "E" and n not in (6, 7, 8):
            raise UnknownTypeError(f"{part}: E-type exists only for ranks 6, 7, 8")
        if family == "F" and n != 4:
            raise UnknownTypeError(f"{part}: F-type exists only for rank 4")
        if family == "G" and n != 2:
            raise UnknownTypeError(f"{part}: G-type exists only for rank 2")
        factors.append((family, n))
    return factors


def _invert_fraction_matrix(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[pivot] = aug[pivot], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def build_root_datum(type_label: str) -> RootDatum:
    """Construct the root datum for a Cartan type label such as "B2" or "A1xA1".

    Raises UnknownTypeError for labels that do not name a supported type.
    """
    factors = _parse_label(type_label)
    rank = sum(n for _, n in factors)
    cartan = [[0] * rank for _ in range(rank)]
    symmetrizer: list[int] = []
    all_roots: list[tuple[tuple[int, ...], Weight]] = []
    offset = 0
    for family, n in factors:
        block, d = _simple_cartan(family, n)
        for i in range(n):
            for j in range(n):
                cartan[offset + i][offset + j] = block[i][j]
        symmetrizer.extend(d)
        factor_roots = _close_positive_roots(block)
        if len(factor_roots) != _POSITIVE_COUNT[family](n):
            raise RuntimeError(f"root closure for {family}{n} produced {len(factor_roots)} positive roots")
        pad_l, pad_r = offset, rank - offset - n
        for coeffs, coords in factor_roots.items():
            all_roots.append(
                ((0,) * pad_l + coeffs + (0,) * pad_r, (0,) * pad_l + coords + (0,) * pad_r)
            )
        offset += n

    # simple roots first (node order), then by height and coefficient order
    all_roots.sort(key=lambda rc: (sum(rc[0]), tuple(-x for x in rc[0])))
    coeffs = tuple(rc[0] for rc in all_roots)
    coords = tuple(rc[1] for rc in all_roots)

    cinv = _invert_fraction_matrix(cartan)
    gram = tuple(
        tuple(symmetrizer[i] * cinv[i][j] for j in range(rank)) for i in range(rank)
    )
    for i in range(rank):
        for j in range(rank):
            if gram[i][j] != gram[j][i]:
                raise RuntimeError("invariant form is not symmetric; bad Cartan data")

    return RootDatum(
        type_label=type_label,
        rank=rank,
        cartan=tuple(tuple(row) for row in cartan),
        symmetrizer=tuple(symmetrizer),
        positive_roots=coords,
        positive_root_coeffs=coeffs,
        simple_root_indices=tuple(range(rank)),
        gram=gram,
    )


@lru_cache(maxsize=None)
def _cartan_inverse(rd: RootDatum) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(row) for row in _invert_fraction_matrix(rd.cartan))


# ---------------------------------------------------------------------------
# Weyl chamber operations


def simple_reflection(rd: RootDatum, i: int, w: Sequence[int]) -> Weight:
    """Reflection in the i-th simple root: s_i(w) = w - w_i * alpha_i."""
    wi = w[i]
    return tuple(w[k] - wi * rd.cartan[k][i] for k in range(rd.rank))


def dominant_conjugate(rd: RootDatum, w: Sequence[int]) -> Weight:
    """The unique dominant weight on the Weyl orbit of w."""
    cur = tuple(w)
    while True:
        for i, x in enumerate(cur):
            if x < 0:
                cur = tuple(cur[k] - x * rd.cartan[k][i] for k in range(rd.rank))
                break
        else:
            return cur


def weight_form(rd: RootDatum, a: Sequence, b: Sequence) -> Fraction:
    """Invariant bilinear form <a, b>; accepts integer or Fraction entries."""
    total = Fraction(0)
    for i, ai in enumerate(a):
        if ai:
            row = rd.gram[i]
            total += ai * sum(row[j] * b[j] for j in range(rd.rank) if b[j])
    return total


def weight_norm_sq(rd: RootDatum, w: Sequence) -> Fraction:
    """Squared length of a weight (short roots have squared length 2)."""
    return weight_form(rd, w, w)


def subset_root_sum(
    roots: Sequence[Weight], subset: Union[int, Iterable[int]], rank: int | None = None
) -> Weight:
    """Sum of the selected roots; subset is an index iterable or a bitmask."""
    if isinstance(subset, int):
        if subset < 0 or subset >> len(roots):
            raise IndexError(f"bitmask {subset:#x} addresses roots beyond index {len(roots) - 1}")
        indices = [i for i in range(len(roots)) if subset >> i & 1]
    else:
        indices = list(subset)
        for i in indices:
            if not 0 <= i < len(roots):
                raise IndexError(f"root index {i} out of range for {len(roots)} roots")
    if roots:
        rank = len(roots[0])
    elif rank is None:
        raise ValueError("cannot infer rank for an empty root list; pass rank=")
    total = zero_weight(rank)
    for i in indices:
        total = weight_add(total, roots[i])
    return total


# ---------------------------------------------------------------------------
# lattice enumeration inside norm balls


def sqrt_upper(x: Fraction, scale: int = 10**6) -> Fraction:
    """A rational upper bound for sqrt(x), within 1/scale of the true value."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt_upper of a negative value")
    if x == 0:
        return Fraction(0)
    k = math.isqrt(int(x * scale * scale))
    while Fraction(k, scale) ** 2 < x:
        k += 1
    return Fraction(k, scale)


def _coordinate_box(rd: RootDatum, max_norm_sq: Fraction) -> list[int]:
    # max of w_i^2 over the ball <w,w> <= R^2 is R^2 * (gram^{-1})_{ii} = R^2 * 2/d_i
    return [math.isqrt(int(Fraction(max_norm_sq) * 2 / d)) for d in rd.symmetrizer]


def enumerate_levi_dominant(
    rd: RootDatum, levi: Iterable[int], max_norm_sq
) -> list[Weight]:
    """Integer weights with norm^2 <= max_norm_sq, nonnegative on the Levi nodes.

    Sorted by (norm^2, lexicographic coordinates); the canonical enumeration
    order used everywhere for determinism.
    """
    max_norm_sq = Fraction(max_norm_sq)
    if max_norm_sq < 0:
        return []
    nonneg = set(levi)
    box = _coordinate_box(rd, max_norm_sq)
    ranges = [
        range(0, box[i] + 1) if i in nonneg else range(-box[i], box[i] + 1)
        for i in range(rd.rank)
    ]
    out = []
    for w in itertools.product(*ranges):
        ns = weight_norm_sq(rd, w)
        if ns <= max_norm_sq:
            out.append((ns, w))
    out.sort()
    return [w for _, w in out]


def enumerate_dominant(rd: RootDatum, max_norm_sq) -> list[Weight]:
    """Dominant weights with norm^2 <= max_norm_sq, sorted by (norm^2, lex)."""
    return enumerate_levi_dominant(rd, range(rd.rank), max_norm_sq)
