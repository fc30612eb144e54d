"""Finite-dimensional representation calculators.

These serve as independent oracles for the K-theory machinery: the Weyl
dimension formula for Levi subgroups, weight multiplicities by Freudenthal's
recursion, and the truncated restriction of a torus-induced class to the
maximal compact subgroup (which irreducibles appear, with what multiplicity,
below a norm cutoff).

Freudenthal's formula is evaluated over exact rationals, and every
multiplicity is asserted to come out a positive integer, so a wrong
invariant form or folding convention fails loudly rather than silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional

from .rootdata import (
    RootDatum,
    Weight,
    _cartan_inverse,
    dominant_conjugate,
    enumerate_dominant,
    is_dominant,
    weight_add,
    weight_form,
    weight_norm_sq,
    weight_sub,
)


@dataclass
class MultiplicityVector:
    """Multiplicities of irreducibles with highest-weight norm^2 <= level.

    Entries with multiplicity zero are omitted.  Treated as immutable.
    """

    entries: dict[Weight, int] = field(default_factory=dict)
    level: Fraction = Fraction(0)

    def __getitem__(self, hw: Weight) -> int:
        return self.entries.get(tuple(hw), 0)


def _levi_positive_roots(rd: RootDatum, levi: frozenset[int]) -> list[Weight]:
    out = []
    for root, coeffs in zip(rd.positive_roots, rd.positive_root_coeffs):
        if all(i in levi for i, c in enumerate(coeffs) if c):
            out.append(root)
    return out


def weyl_dim(rd: RootDatum, levi: Optional[Iterable[int]], hw) -> int:
    """Dimension of the Levi irreducible with highest weight hw.

    levi is a set of simple-root indices (None means the full group; the
    empty set is the torus, where every character has dimension 1).  hw must
    be dominant for the Levi: nonnegative pairing with each Levi coroot.
    """
    levi_set = frozenset(range(rd.rank)) if levi is None else frozenset(levi)
    for i in levi_set:
        if not 0 <= i < rd.rank:
            raise ValueError(f"Levi index {i} out of range for rank {rd.rank}")
        if hw[i] < 0:
            raise ValueError(f"weight {tuple(hw)} is not dominant for the Levi {sorted(levi_set)}")
    roots = _levi_positive_roots(rd, levi_set)
    if not roots:
        return 1
    rho_l = [Fraction(0)] * rd.rank
    for root in roots:
        for k, x in enumerate(root):
            rho_l[k] += Fraction(x, 2)
    shifted = [rho_l[k] + hw[k] for k in range(rd.rank)]
    num = Fraction(1)
    den = Fraction(1)
    for root in roots:
        num *= weight_form(rd, shifted, root)
        den *= weight_form(rd, rho_l, root)
    dim = num / den
    assert dim.denominator == 1 and dim > 0, f"Weyl dimension {dim} is not a positive integer"
    return int(dim)


def _in_positive_root_lattice(rd: RootDatum, w: Weight) -> bool:
    cinv = _cartan_inverse(rd)
    for i in range(rd.rank):
        c = sum(cinv[i][j] * w[j] for j in range(rd.rank))
        if c.denominator != 1 or c < 0:
            return False
    return True


def _height(rd: RootDatum, w: Weight) -> int:
    cinv = _cartan_inverse(rd)
    h = Fraction(0)
    for i in range(rd.rank):
        h += sum(cinv[i][j] * w[j] for j in range(rd.rank))
    assert h.denominator == 1
    return int(h)


@lru_cache(maxsize=None)
def _dominant_multiplicities(rd: RootDatum, hw: Weight) -> Mapping[Weight, int]:
    """Freudenthal table: multiplicity of every dominant weight of V(hw).

    Dominant nu <= hw (difference in the nonnegative root lattice) are
    processed in order of increasing depth below hw, so each Freudenthal
    right-hand side only consults already-computed entries.
    """
    rho = rd.rho()
    top = weight_form(rd, weight_add(hw, rho), weight_add(hw, rho))
    candidates = [
        nu
        for nu in enumerate_dominant(rd, weight_norm_sq(rd, hw))
        if _in_positive_root_lattice(rd, weight_sub(hw, nu))
    ]
    candidates.sort(key=lambda nu: (_height(rd, weight_sub(hw, nu)), nu))
    root_heights = [sum(c) for c in rd.positive_root_coeffs]
    table: dict[Weight, int] = {}
    for nu in candidates:
        if nu == hw:
            table[nu] = 1
            continue
        depth = _height(rd, weight_sub(hw, nu))
        total = Fraction(0)
        for root, rh in zip(rd.positive_roots, root_heights):
            k = 1
            while k * rh <= depth:
                w = tuple(nu[t] + k * root[t] for t in range(rd.rank))
                m = table.get(dominant_conjugate(rd, w))
                if m:
                    total += m * weight_form(rd, w, root)
                k += 1
        denom = top - weight_form(rd, weight_add(nu, rho), weight_add(nu, rho))
        value = 2 * total / denom
        assert value.denominator == 1 and value >= 1, (
            f"Freudenthal produced non-integral or non-positive multiplicity {value} "
            f"for weight {nu} in V({hw})"
        )
        table[nu] = int(value)
    return table


def weight_multiplicity(rd: RootDatum, hw, mu) -> int:
    """Multiplicity of the weight mu in the irreducible with highest weight hw.

    Returns 0 when mu is not a weight of the representation.
    """
    hw = tuple(hw)
    if not is_dominant(hw):
        raise ValueError(f"highest weight {hw} is not dominant")
    mu_dom = dominant_conjugate(rd, mu)
    if not _in_positive_root_lattice(rd, weight_sub(hw, mu_dom)):
        return 0
    return _dominant_multiplicities(rd, hw).get(mu_dom, 0)


def restrict_gamma_class(rd: RootDatum, gamma, level) -> MultiplicityVector:
    """Truncated restriction of the torus-induced class of gamma.

    For each dominant hw with norm^2 <= level, the multiplicity of the
    irreducible V(hw) in the induced class equals the dimension of its
    gamma weight space.  Weyl-invariant in gamma.
    """
    level = Fraction(level)
    if level < 0:
        raise ValueError("truncation level must be nonnegative")
    gamma_dom = dominant_conjugate(rd, gamma)
    entries: dict[Weight, int] = {}
    for hw in enumerate_dominant(rd, level):
        m = weight_multiplicity(rd, hw, gamma_dom)
        if m:
            entries[hw] = m
    return MultiplicityVector(entries, level)


def restrict_kclass(rd: RootDatum, kclass, level) -> dict[Weight, int]:
    """Truncated restriction of an integer combination of gamma classes.

    Entries may be negative for virtual classes; zeros are omitted.
    """
    level = Fraction(level)
    out: dict[Weight, int] = {}
    for gamma, coef in kclass.coeffs:
        for hw, m in restrict_gamma_class(rd, gamma, level).entries.items():
            new = out.get(hw, 0) + coef * m
            if new:
                out[hw] = new
            else:
                out.pop(hw, None)
    return out
