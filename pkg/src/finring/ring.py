"""Finite unital rings as dense operation tables.

Elements are the integers ``0..order-1``.  Every constructor fixes a canonical
enumeration of its coordinates, so an index means the same element on every run.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

DEFAULT_MAX_ORDER = 65536
EXHAUSTIVE_LIMIT = 512
SAMPLE_TRIPLES = 10_000
SAMPLE_SEED = 0xF1E1D


class RingError(Exception):
    """Base class for errors raised while building or querying rings."""


class CapExceeded(RingError):
    def __init__(self, order: int, cap: int):
        super().__init__(f"order {order} exceeds cap {cap}")
        self.order = order
        self.cap = cap


def max_order() -> int:
    """Current order cap; ``FINRING_MAX_ORDER`` overrides the default."""
    env = os.environ.get("FINRING_MAX_ORDER")
    if env:
        return int(env)
    return DEFAULT_MAX_ORDER


def check_cap(order: int) -> None:
    cap = max_order()
    if order > cap:
        raise CapExceeded(order, cap)


def table_dtype(order: int) -> np.dtype:
    if order <= 1 << 8:
        return np.dtype(np.uint8)
    if order <= 1 << 16:
        return np.dtype(np.uint16)
    return np.dtype(np.uint32)


@dataclass(eq=False)
class FiniteRing:
    order: int
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    neg: np.ndarray
    label: str = "R"
    renderer: Optional[Callable[[int], str]] = field(default=None, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    def __post_init__(self) -> None:
        dt = table_dtype(self.order)
        self.add = np.ascontiguousarray(self.add, dtype=dt)
        self.mul = np.ascontiguousarray(self.mul, dtype=dt)
        self.neg = np.ascontiguousarray(self.neg, dtype=dt)
        self.zero = int(self.zero)
        self.one = int(self.one)
        for t in (self.add, self.mul, self.neg):
            t.setflags(write=False)

    @classmethod
    def from_tables(cls, add, mul, zero: int, one: int, label: str = "R",
                    renderer=None) -> "FiniteRing":
        """Build a ring from raw tables, deriving the additive inverse table."""
        add = np.asarray(add)
        n = add.shape[0]
        rows, cols = np.nonzero(add == zero)
        neg = np.full(n, -1, dtype=np.int64)
        neg[rows] = cols
        if (neg < 0).any():
            raise RingError("additive table has no inverse for some element")
        return cls(n, add, mul, zero, one, neg, label, renderer)

    def __repr__(self) -> str:
        return f"FiniteRing({self.label!r}, order={self.order})"

    @property
    def elements(self) -> range:
        return range(self.order)

    def render(self, i: int) -> str:
        if self.renderer is None:
            return str(int(i))
        return self.renderer(int(i))

    def cached(self, key, compute: Callable):
        """Compute ``key`` once per ring; later reads need no lock."""
        try:
            return self._cache[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    # Element arithmetic

    def _check(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= x < self.order:
                raise IndexError(f"element {x} out of range for order {self.order}")

    def a(self, x: int, y: int) -> int:
        return ring_add(self, x, y)

    def m(self, x: int, y: int) -> int:
        return ring_mul(self, x, y)

    def sub(self, x: int, y: int) -> int:
        self._check(x, y)
        return int(self.add[x, self.neg[y]])

    def n(self, x: int) -> int:
        return ring_neg(self, x)

    def two(self) -> int:
        return int(self.add[self.one, self.one])

    def is_commutative(self) -> bool:
        return self.cached("commutative", lambda: bool((self.mul == self.mul.T).all()))


def ring_add(R: FiniteRing, a: int, b: int) -> int:
    R._check(a, b)
    return int(R.add[a, b])


def ring_mul(R: FiniteRing, a: int, b: int) -> int:
    R._check(a, b)
    return int(R.mul[a, b])


def ring_neg(R: FiniteRing, a: int) -> int:
    R._check(a)
    return int(R.neg[a])


def ring_pow(R: FiniteRing, a: int, k: int) -> int:
    if k < 0:
        raise ValueError("exponent must be non-negative")
    R._check(a)
    result, base = R.one, a
    while k:
        if k & 1:
            result = int(R.mul[result, base])
        base = int(R.mul[base, base])
        k >>= 1
    return result


@dataclass(frozen=True)
class ElementSubset:
    ring: FiniteRing = field(repr=False, compare=False)
    members: tuple

    @classmethod
    def of(cls, ring: FiniteRing, members: Iterable[int]) -> "ElementSubset":
        ms = sorted({int(x) for x in members})
        if ms and (ms[0] < 0 or ms[-1] >= ring.order):
            raise IndexError("subset member out of range")
        return cls(ring, tuple(ms))

    @classmethod
    def from_mask(cls, ring: FiniteRing, mask: np.ndarray) -> "ElementSubset":
        return cls(ring, tuple(int(x) for x in np.flatnonzero(mask)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x) -> bool:
        return bool(self.mask()[int(x)])

    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.order, dtype=bool)
        m[list(self.members)] = True
        return m

    def array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    def to_json(self) -> dict:
        return {"indices": list(self.members),
                "rendered": [self.ring.render(x) for x in self.members]}


# Axiom validation


@dataclass
class Violation:
    axiom: str
    witness: tuple

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness)}


@dataclass
class ValidationReport:
    mode: str  # "exhaustive" or "sampled"
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"ok": self.ok, "mode": self.mode,
                "violations": [v.to_json() for v in self.violations]}


def _first_pair(mask: np.ndarray) -> tuple:
    idx = np.argwhere(mask)[0]
    return tuple(int(x) for x in idx)


def _shape_ok(R: FiniteRing) -> list:
    n = R.order
    out = []
    if R.add.shape != (n, n) or R.mul.shape != (n, n) or R.neg.shape != (n,):
        out.append(Violation("table shape", (n,)))
        return out
    for name, t in (("add", R.add), ("mul", R.mul), ("neg", R.neg)):
        if t.size and int(t.max()) >= n:
            out.append(Violation(f"{name} table index range", (int(t.max()),)))
    if not (0 <= R.zero < n and 0 <= R.one < n):
        out.append(Violation("zero/one index range", (R.zero, R.one)))
    return out


def _triple_checks(R: FiniteRing, A: np.ndarray, B: np.ndarray, C: np.ndarray) -> list:
    """Check associativity and distributivity on triples (A[t], B[t], C[t]) or grids."""
    add, mul = R.add, R.mul
    out = []
    checks = (
        ("associativity of addition", add[add[A, B], C], add[A, add[B, C]]),
        ("associativity of multiplication", mul[mul[A, B], C], mul[A, mul[B, C]]),
        ("left distributivity", mul[A, add[B, C]], add[mul[A, B], mul[A, C]]),
        ("right distributivity", mul[add[A, B], C], add[mul[A, C], mul[B, C]]),
    )
    for name, lhs, rhs in checks:
        bad = lhs != rhs
        if bad.any():
            pos = np.argwhere(bad)[0]
            trip = (int(np.broadcast_to(A, bad.shape)[tuple(pos)]),
                    int(np.broadcast_to(B, bad.shape)[tuple(pos)]),
                    int(np.broadcast_to(C, bad.shape)[tuple(pos)]))
            out.append(Violation(name, trip))
    return out


def validate_ring_axioms(R: FiniteRing) -> ValidationReport:
    """Check every ring axiom on the tables; sampling kicks in above order 512."""
    n = R.order
    mode = "exhaustive" if n <= EXHAUSTIVE_LIMIT else "sampled"
    report = ValidationReport(mode)
    report.violations.extend(_shape_ok(R))
    if report.violations:
        return report
    add, mul, neg = R.add, R.mul, R.neg
    z, o = R.zero, R.one
    ar = np.arange(n)
    v = report.violations
    if z == o:
        v.append(Violation("one ≠ zero", (z, o)))
    if (add != add.T).any():
        v.append(Violation("commutativity of addition", _first_pair(add != add.T)))
    if (add[z] != ar).any():
        v.append(Violation("additive identity", (int(np.flatnonzero(add[z] != ar)[0]),)))
    if (add[ar, neg] != z).any():
        v.append(Violation("additive inverse", (int(np.flatnonzero(add[ar, neg] != z)[0]),)))
    if (mul[o] != ar).any() or (mul[:, o] != ar).any():
        bad = np.flatnonzero((mul[o] != ar) | (mul[:, o] != ar))
        v.append(Violation("multiplicative identity", (int(bad[0]),)))
    if (mul[z] != z).any() or (mul[:, z] != z).any():
        bad = np.flatnonzero((mul[z] != z) | (mul[:, z] != z))
        v.append(Violation("zero annihilates", (int(bad[0]),)))

    if mode == "exhaustive":
        step = max(1, (1 << 21) // max(1, n * n))
        B = ar[:, None]
        C = ar[None, :]
        found = set()
        for start in range(0, n, step):
            A = ar[start:start + step, None, None]
            for viol in _triple_checks(R, A, B[None], C[None]):
                if viol.axiom not in found:
                    found.add(viol.axiom)
                    v.append(viol)
            if len(found) == 4:
                break
    else:
        rng = np.random.default_rng(SAMPLE_SEED)
        A, B, C = (rng.integers(0, n, SAMPLE_TRIPLES) for _ in range(3))
        v.extend(_triple_checks(R, A, B, C))
    return report


# Homomorphisms


@dataclass(eq=False)
class RingHom:
    source: FiniteRing
    target: FiniteRing
    map: np.ndarray

    def __post_init__(self) -> None:
        self.map = np.asarray(self.map, dtype=np.int64)

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def kernel(self) -> ElementSubset:
        return ElementSubset.from_mask(self.source, self.map == self.target.zero)


@dataclass
class HomReport:
    ok: bool
    violation: Optional[str] = None
    witness: tuple = ()
    injective: bool = False
    surjective: bool = False
    kernel_in_radical: Optional[bool] = None

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    def to_json(self) -> dict:
        return {"ok": self.ok, "violation": self.violation, "witness": list(self.witness),
                "injective": self.injective, "surjective": self.surjective,
                "kernel_in_radical": self.kernel_in_radical}


def verify_hom(h: RingHom, radical: bool = True) -> HomReport:
    """Check the four homomorphism laws exhaustively.

    With ``radical`` set, also report whether the kernel lies in the Jacobson
    radical of the source.
    """
    S, T, f = h.source, h.target, h.map
    if f.shape != (S.order,):
        raise RingError(f"map has length {f.shape[0]}, source order is {S.order}")
    if f.size and (f.min() < 0 or f.max() >= T.order):
        raise RingError("map values out of target range")
    rep = HomReport(ok=True)
    if f[S.zero] != T.zero:
        rep.ok, rep.violation, rep.witness = False, "map(zero)=zero", (S.zero,)
    elif f[S.one] != T.one:
        rep.ok, rep.violation, rep.witness = False, "map(one)=one", (S.one,)
    else:
        fa, fb = f[:, None], f[None, :]
        step = max(1, (1 << 22) // max(1, S.order))
        for start in range(0, S.order, step):
            rows = slice(start, start + step)
            bad_add = f[S.add[rows]] != T.add[fa[rows], fb]
            if bad_add.any():
                i, j = _first_pair(bad_add)
                rep.ok, rep.violation, rep.witness = False, "map(a+b)=map(a)+map(b)", (start + i, j)
                break
            bad_mul = f[S.mul[rows]] != T.mul[fa[rows], fb]
            if bad_mul.any():
                i, j = _first_pair(bad_mul)
                rep.ok, rep.violation, rep.witness = False, "map(ab)=map(a)map(b)", (start + i, j)
                break
    rep.injective = len(np.unique(f)) == S.order
    rep.surjective = len(np.unique(f)) == T.order
    if radical and rep.ok:
        from .structure import jacobson_radical

        J = jacobson_radical(S).mask()
        rep.kernel_in_radical = bool(J[f == T.zero].all())
    return rep


def verify_isomorphism(h: RingHom) -> bool:
    if h.source.order != h.target.order:
        return False
    rep = verify_hom(h, radical=False)
    return rep.ok and rep.bijective


def identity_hom(R: FiniteRing) -> RingHom:
    return RingHom(R, R, np.arange(R.order))


def relabel(R: FiniteRing, perm: Sequence[int], label: Optional[str] = None) -> FiniteRing:
    """Return the ring whose element ``perm[i]`` is ``R``'s element ``i``."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    add = perm[R.add[np.ix_(inv, inv)]]
    mul = perm[R.mul[np.ix_(inv, inv)]]
    neg = perm[R.neg[inv]]
    renderer = (lambda i: R.render(int(inv[i])))
    return FiniteRing(R.order, add, mul, int(perm[R.zero]), int(perm[R.one]), neg,
                      label or R.label, renderer)
