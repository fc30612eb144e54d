"""Associated varieties and weak associated cycles of virtual modules.

A virtual module arrives as an integer combination of standard-module
parameters (pairs of weights whose sum indexes the K-theory class).  Its
class is expanded over the certified geometric basis vectors by exact
linear algebra; the associated variety is the set of closure-maximal orbits
carrying a nonzero coordinate, and the multiplicity on each such orbit is
the rank-weighted sum of its coordinates.

Only the weak cycle (integer multiplicities) is produced; the finer
isotropy-representation data is not computable from spans of basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .ktheory import KClass, flatten_kclass, kclass_add, kclass_from_terms, kclass_scale, std_to_class
from .nilpotent import ClosurePoset
from .orbitalg import GeometricBasis, GeometricBasisVector
from .rootdata import RootDatum, Weight, enumerate_dominant, weight_norm_sq


class BoundTooSmallError(ValueError):
    """The basis bound does not cover the module's class; rerun larger."""


class InternalConsistencyError(RuntimeError):
    """Exact solve produced a non-integer or non-unique expansion."""


@dataclass(frozen=True)
class VirtualModule:
    """Integer combination of standard modules, or a raw K-theory class."""

    terms: tuple[tuple[int, Weight, Weight], ...] = ()
    kclass: Optional[KClass] = None


@dataclass(frozen=True)
class AssociatedCycle:
    """Maximal orbits of the support with their integer multiplicities."""

    components: tuple[tuple[int, int], ...]  # (orbit id, multiplicity)
    variety: tuple[int, ...]  # maximal orbit ids


def module_to_kclass(rd: RootDatum, vm: VirtualModule) -> KClass:
    """K-theory class of a virtual module."""
    if vm.kclass is not None:
        # re-fold so raw caller-built classes obey the dominance invariant
        return kclass_from_terms(rd, vm.kclass.coeffs, rank=vm.kclass.rank)
    acc = KClass(())
    for coef, lam_l, lam_r in vm.terms:
        acc = kclass_add(acc, kclass_scale(std_to_class(rd, lam_l, lam_r), coef))
    return KClass(acc.coeffs, None)


def express_in_geometric_basis(
    rd: RootDatum, kc: KClass, basis: GeometricBasis
) -> dict[GeometricBasisVector, int]:
    """Unique integer coordinates of kc over the certified basis vectors.

    Raises BoundTooSmallError if some support weight exceeds the basis bound
    or the class is not in the certified span within the truncation window.
    """
    for w, _ in kc.coeffs:
        if weight_norm_sq(rd, w) > basis.bound_sq:
            raise BoundTooSmallError(
                f"support weight {w} has norm^2 {weight_norm_sq(rd, w)} > bound^2 "
                f"{basis.bound_sq}; recompute the basis with a larger bound"
            )
    certified = basis.certified_vectors()
    axis = tuple(enumerate_dominant(rd, basis.support_window_sq))
    axis_index = {w: i for i, w in enumerate(axis)}
    cols = [flatten_kclass(rd, v.kclass, axis_index) for v in certified]
    target = flatten_kclass(rd, kc, axis_index)

    # exact Gaussian elimination on the augmented system (columns = vectors)
    ncols = len(certified)
    aug = [
        [Fraction(cols[j][i]) for j in range(ncols)] + [Fraction(target[i])]
        for i in range(len(axis))
    ]
    pivot_row_of_col: dict[int, int] = {}
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivot_row_of_col[c] = r
        r += 1
    if len(pivot_row_of_col) != ncols:
        raise InternalConsistencyError(
            "certified basis vectors are linearly dependent in the window"
        )
    for i in range(r, len(aug)):
        if aug[i][ncols] != 0:
            raise BoundTooSmallError(
                "class is not in the certified span at this bound; recompute "
                "the basis with a larger bound"
            )
    coords: dict[GeometricBasisVector, int] = {}
    for c, v in enumerate(certified):
        x = aug[pivot_row_of_col[c]][ncols]
        if x.denominator != 1:
            raise InternalConsistencyError(
                f"expansion coordinate {x} on orbit {v.orbit_id} vector {v.index} "
                f"is not an integer"
            )
        if x:
            coords[v] = int(x)
    return coords


def associated_cycle(
    coords: dict[GeometricBasisVector, int], poset: ClosurePoset
) -> AssociatedCycle:
    """Maximal support orbits with rank-weighted multiplicities."""
    support = sorted({v.orbit_id for v in coords})
    maximal = poset.maximal(support)
    components = []
    for z in maximal:
        mult = sum(n * v.rank for v, n in coords.items() if v.orbit_id == z)
        components.append((z, mult))
    return AssociatedCycle(tuple(components), tuple(maximal))
