"""Structural invariants of finite rings.

All results are computed by exhaustive table scans and cached on the ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .ring import ElementSubset, FiniteRing, RingError

_ROW_BLOCK = 1 << 22


class RadicalError(RingError):
    """Raised when the computed radical fails its post-verification."""


@dataclass(frozen=True)
class UnitGroupCache:
    units: ElementSubset
    inverse: np.ndarray  # -1 on non-units
    is_unit: np.ndarray

    def inv(self, u: int) -> int:
        x = int(self.inverse[u])
        if x < 0:
            raise ValueError(f"{u} is not a unit")
        return x


@dataclass(frozen=True)
class Check:
    holds: bool
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.holds


def _row_blocks(n: int, width: int):
    step = max(1, _ROW_BLOCK // max(1, width))
    for start in range(0, n, step):
        yield slice(start, min(n, start + step))


def idempotents(R: FiniteRing) -> ElementSubset:
    def compute():
        ar = np.arange(R.order)
        return ElementSubset.from_mask(R, R.mul[ar, ar] == ar)

    return R.cached("idempotents", compute)


def units(R: FiniteRing) -> UnitGroupCache:
    def compute():
        n = R.order
        inverse = np.full(n, -1, dtype=np.int64)
        for rows in _row_blocks(n, n):
            right = R.mul[rows] == R.one
            both = right & (R.mul[:, rows].T == R.one)
            has = both.any(axis=1)
            idx = np.arange(rows.start, rows.stop)
            inverse[idx[has]] = both[has].argmax(axis=1)
        is_unit = inverse >= 0
        return UnitGroupCache(ElementSubset.from_mask(R, is_unit), inverse, is_unit)

    return R.cached("units", compute)


def nilpotents(R: FiniteRing) -> ElementSubset:
    """Nilpotent elements, found by following powers with Floyd cycle detection."""

    def compute():
        n = R.order
        ar = np.arange(n)
        nil = ar == R.zero
        active = ~nil
        slow = ar.copy()
        fast = R.mul[ar, ar]
        for _ in range(2 * n + 2):
            if not active.any():
                break
            idx = np.flatnonzero(active)
            # fast = a^(2k) runs ahead of slow = a^k, so it reaches zero first
            hit_zero = fast[idx] == R.zero
            nil[idx[hit_zero]] = True
            cycled = ~hit_zero & (slow[idx] == fast[idx])
            active[idx[hit_zero | cycled]] = False
            slow[idx] = R.mul[slow[idx], idx]
            fast[idx] = R.mul[R.mul[fast[idx], idx], idx]
        return ElementSubset.from_mask(R, nil)

    return R.cached("nilpotents", compute)


def _quasi_regular_mask(R: FiniteRing, left: bool) -> np.ndarray:
    """Mask of x with 1 - r*x (left) or 1 - x*r (right) a unit for every r."""
    is_unit = units(R).is_unit
    n = R.order
    ok = np.ones(n, dtype=bool)
    one_minus = R.add[R.one][R.neg]  # 1 - y for every y
    for rows in _row_blocks(n, n):
        prods = R.mul[rows] if left else R.mul[:, rows].T
        # prods[r, x] = r*x (left) or x*r (transposed so that x is the column)
        ok &= is_unit[one_minus[prods]].all(axis=0)
    return ok


def is_ideal(R: FiniteRing, subset: Iterable[int]) -> bool:
    mask = np.zeros(R.order, dtype=bool)
    mask[np.fromiter((int(x) for x in subset), dtype=np.int64)] = True
    return _ideal_mask_ok(R, mask)


def _ideal_mask_ok(R: FiniteRing, mask: np.ndarray) -> bool:
    idx = np.flatnonzero(mask)
    if len(idx) == 0 or not mask[R.zero]:
        return False
    if not mask[R.add[np.ix_(idx, idx)]].all():
        return False
    if not mask[R.neg[idx]].all():
        return False
    return bool(mask[R.mul[:, idx]].all() and mask[R.mul[idx, :]].all())


def jacobson_radical(R: FiniteRing, verify: bool = True) -> ElementSubset:
    """Jacobson radical via the left quasi-regularity scan.

    Post-checks: matches the right-handed scan, is a two-sided ideal,
    ``1 + J`` consists of units and (with ``verify``) ``J(R/J) = 0``.
    """

    def compute():
        left = _quasi_regular_mask(R, left=True)
        right = _quasi_regular_mask(R, left=False)
        if (left != right).any():
            raise RadicalError(f"{R.label}: left and right quasi-regular sets differ")
        if not _ideal_mask_ok(R, left):
            raise RadicalError(f"{R.label}: computed radical is not a two-sided ideal")
        J = np.flatnonzero(left)
        if not units(R).is_unit[R.add[R.one, J]].all():
            raise RadicalError(f"{R.label}: 1 + J contains a non-unit")
        return ElementSubset.from_mask(R, left)

    J = R.cached("radical", compute)
    if verify:
        R.cached("radical-quotient-check", lambda: _check_quotient_radical(R, J))
    return J


def _check_quotient_radical(R: FiniteRing, J: ElementSubset) -> bool:
    from .constructors import quotient_ring

    Q, _ = quotient_ring(R, J, validate=False)
    JQ = jacobson_radical(Q, verify=False)
    if len(JQ) != 1:
        raise RadicalError(f"{R.label}: radical of R/J is not zero")
    return True


def ideal_closure(R: FiniteRing, gens: Iterable[int]) -> ElementSubset:
    """Smallest two-sided ideal containing ``gens``."""
    mask = np.zeros(R.order, dtype=bool)
    mask[R.zero] = True
    for g in gens:
        mask[int(g)] = True
    while True:
        idx = np.flatnonzero(mask)
        new = mask.copy()
        new[R.mul[:, idx].ravel()] = True
        new[R.mul[idx, :].ravel()] = True
        idx = np.flatnonzero(new)
        new[R.neg[idx]] = True
        # additive closure: repeatedly add the current set to itself
        while True:
            idx = np.flatnonzero(new)
            grown = new.copy()
            grown[R.add[np.ix_(idx, idx)].ravel()] = True
            if grown.sum() == new.sum():
                break
            new = grown
        if new.sum() == mask.sum():
            return ElementSubset.from_mask(R, mask)
        mask = new


def center(R: FiniteRing) -> ElementSubset:
    def compute():
        mask = np.ones(R.order, dtype=bool)
        for rows in _row_blocks(R.order, R.order):
            mask[rows] = (R.mul[rows] == R.mul[:, rows].T).all(axis=1)
        return ElementSubset.from_mask(R, mask)

    return R.cached("center", compute)


def is_boolean(R: FiniteRing) -> Check:
    ar = np.arange(R.order)
    bad = np.flatnonzero(R.mul[ar, ar] != ar)
    if len(bad):
        x = int(bad[0])
        return Check(False, {"element": x, "square": int(R.mul[x, x])})
    return Check(True)


def is_reduced(R: FiniteRing) -> Check:
    N = nilpotents(R)
    if len(N) > 1:
        x = next(a for a in N if a != R.zero)
        return Check(False, {"nilpotent": x})
    return Check(True)


def is_abelian(R: FiniteRing) -> Check:
    C = center(R).mask()
    for e in idempotents(R):
        if not C[e]:
            partner = int(np.flatnonzero(R.mul[e] != R.mul[:, e])[0])
            return Check(False, {"idempotent": e, "partner": partner})
    return Check(True)


def is_local(R: FiniteRing) -> Check:
    """Local iff the non-units are closed under addition; cross-checked against J."""
    nonunits = np.flatnonzero(~units(R).is_unit)
    sums = R.add[np.ix_(nonunits, nonunits)]
    closed = not units(R).is_unit[sums].any()
    J = jacobson_radical(R)
    if closed != (len(J) == len(nonunits)):
        raise RadicalError(f"{R.label}: local test disagrees with the radical")
    if not closed:
        i, j = np.argwhere(units(R).is_unit[sums])[0]
        return Check(False, {"nonunits": [int(nonunits[i]), int(nonunits[j])],
                             "sum": int(sums[i, j])})
    return Check(True)


def is_division_ring(R: FiniteRing) -> bool:
    return len(units(R).units) == R.order - 1


def conjugation_table(R: FiniteRing) -> np.ndarray:
    """``T[k, j] = u_k^{-1} e_j u_k`` over units ``u_k`` and idempotents ``e_j``."""

    def compute():
        U = units(R)
        u = U.units.array()
        uinv = U.inverse[u]
        E = idempotents(R).array()
        return R.mul[R.mul[uinv[:, None], E[None, :]], u[:, None]]

    return R.cached("conjugation", compute)


def are_conjugate(R: FiniteRing, e: int, f: int) -> Optional[int]:
    """Least unit ``u`` with ``e = u^{-1} f u``, or None."""
    E = idempotents(R)
    if e not in E or f not in E:
        raise ValueError("are_conjugate needs idempotent arguments")
    j = E.members.index(f)
    hits = np.flatnonzero(conjugation_table(R)[:, j] == e)
    if len(hits) == 0:
        return None
    return int(units(R).units.members[hits[0]])


def idempotent_conjugacy_classes(R: FiniteRing) -> list:
    """Orbits of the idempotents under conjugation, each sorted, listed by least member."""

    def compute():
        E = idempotents(R).members
        T = conjugation_table(R)
        seen = set()
        classes = []
        for j, e in enumerate(E):
            if e in seen:
                continue
            orbit = tuple(sorted(int(x) for x in np.unique(T[:, j])))
            seen.update(orbit)
            classes.append(orbit)
        return classes

    return R.cached("conjugacy", compute)


def conjugacy_labels(R: FiniteRing) -> np.ndarray:
    """Class number per element (-1 for non-idempotents)."""

    def compute():
        lab = np.full(R.order, -1, dtype=np.int64)
        for k, cls in enumerate(idempotent_conjugacy_classes(R)):
            lab[list(cls)] = k
        return lab

    return R.cached("conjugacy-labels", compute)


@dataclass(frozen=True)
class StructureCache:
    idempotents: ElementSubset
    nilpotents: ElementSubset
    radical: ElementSubset
    center: ElementSubset
    conjugacy_classes: list
    units: UnitGroupCache


def structure(R: FiniteRing) -> StructureCache:
    return StructureCache(idempotents(R), nilpotents(R), jacobson_radical(R), center(R),
                          idempotent_conjugacy_classes(R), units(R))
