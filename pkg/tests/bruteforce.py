"""Reference implementations used as test oracles.

Rings here are built from their textbook definitions (tuples and explicit
product formulas) and every invariant is computed by direct enumeration.
Nothing from ``finring`` is imported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable


@dataclass
class RefRing:
    elements: list
    add: Callable
    mul: Callable
    zero: object
    one: object

    def neg(self, a):
        return next(b for b in self.elements if self.add(a, b) == self.zero)

    def sub(self, a, b):
        return self.add(a, self.neg(b))


def zn(n: int) -> RefRing:
    return RefRing(list(range(n)), lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, 0, 1 % n)


def gf4() -> RefRing:
    # a + b*t with t^2 = t + 1 over F2
    def mul(x, y):
        a, b = x
        c, d = y
        bd = b * d
        return ((a * c + bd) % 2, (a * d + b * c + bd) % 2)

    els = [(a, b) for a in range(2) for b in range(2)]
    return RefRing(els, lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2), mul, (0, 0), (1, 0))


def matrices(n: int, R: RefRing, shape=None) -> RefRing:
    """n x n matrices over R; ``shape(i, j)`` restricts the free positions."""
    free = [(i, j) for i in range(n) for j in range(n) if shape is None or shape(i, j)]

    def build(vals):
        m = [[R.zero] * n for _ in range(n)]
        for (i, j), v in zip(free, vals):
            m[i][j] = v
        return tuple(tuple(r) for r in m)

    els = [build(v) for v in itertools.product(R.elements, repeat=len(free))]

    def add(x, y):
        return tuple(tuple(R.add(a, b) for a, b in zip(r, s)) for r, s in zip(x, y))

    def mul(x, y):
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = R.zero
                for k in range(n):
                    acc = R.add(acc, R.mul(x[i][k], y[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    zero = build([R.zero] * len(free))
    one = tuple(tuple(R.one if i == j else R.zero for j in range(n)) for i in range(n))
    return RefRing(els, add, mul, zero, one)


def direct(R: RefRing, S: RefRing) -> RefRing:
    els = [(a, b) for a in R.elements for b in S.elements]
    return RefRing(els, lambda x, y: (R.add(x[0], y[0]), S.add(x[1], y[1])),
                   lambda x, y: (R.mul(x[0], y[0]), S.mul(x[1], y[1])),
                   (R.zero, S.zero), (R.one, S.one))


def ks(R: RefRing, s) -> RefRing:
    """Pairs of 2x2 arrays (a x; y b) with products twisted by s on the x*y and y*x terms."""
    els = list(itertools.product(R.elements, repeat=4))
    A, M = R.add, R.mul

    def mul(p, q):
        a, x, y, b = p
        a2, x2, y2, b2 = q
        return (A(M(a, a2), M(s, M(x, y2))), A(M(a, x2), M(x, b2)),
                A(M(y, a2), M(b, y2)), A(M(s, M(y, x2)), M(b, b2)))

    return RefRing(els, lambda p, q: tuple(A(u, v) for u, v in zip(p, q)), mul,
                   (R.zero,) * 4, (R.one, R.zero, R.zero, R.one))


def group_ring_cyclic(R: RefRing, k: int) -> RefRing:
    els = list(itertools.product(R.elements, repeat=k))

    def mul(p, q):
        out = [R.zero] * k
        for g in range(k):
            for h in range(k):
                out[(g + h) % k] = R.add(out[(g + h) % k], R.mul(p[g], q[h]))
        return tuple(out)

    one = tuple(R.one if g == 0 else R.zero for g in range(k))
    return RefRing(els, lambda p, q: tuple(R.add(a, b) for a, b in zip(p, q)), mul,
                   (R.zero,) * k, one)


def truncated_poly(R: RefRing, n: int) -> RefRing:
    els = list(itertools.product(R.elements, repeat=n))

    def mul(p, q):
        out = [R.zero] * n
        for i in range(n):
            for j in range(n - i):
                out[i + j] = R.add(out[i + j], R.mul(p[i], q[j]))
        return tuple(out)

    one = (R.one,) + (R.zero,) * (n - 1)
    return RefRing(els, lambda p, q: tuple(R.add(a, b) for a, b in zip(p, q)), mul,
                   (R.zero,) * n, one)


# Invariants


def idempotents(R: RefRing) -> list:
    return [e for e in R.elements if R.mul(e, e) == e]


def inverse_map(R: RefRing) -> dict:
    inv = {}
    for u in R.elements:
        for v in R.elements:
            if R.mul(u, v) == R.one and R.mul(v, u) == R.one:
                inv[u] = v
                break
    return inv


def nilpotents(R: RefRing) -> list:
    out = []
    for a in R.elements:
        x = a
        for _ in range(len(R.elements)):
            if x == R.zero:
                out.append(a)
                break
            x = R.mul(x, a)
    return out


def radical(R: RefRing) -> list:
    inv = inverse_map(R)
    return [x for x in R.elements
            if all(R.sub(R.one, R.mul(r, x)) in inv for r in R.elements)]


def center(R: RefRing) -> list:
    return [z for z in R.elements if all(R.mul(z, r) == R.mul(r, z) for r in R.elements)]


def conjugate(R: RefRing, e, f, inv=None) -> bool:
    inv = inv if inv is not None else inverse_map(R)
    return any(R.mul(R.mul(v, f), u) == e for u, v in inv.items())


def conjugacy_classes(R: RefRing) -> list:
    inv = inverse_map(R)
    classes = []
    for e in idempotents(R):
        for cls in classes:
            if conjugate(R, e, cls[0], inv):
                cls.append(e)
                break
        else:
            classes.append([e])
    return classes


def is_unituc(R: RefRing) -> bool:
    """Every element is clean and any two of its idempotents are conjugate."""
    inv = inverse_map(R)
    E = idempotents(R)
    for a in R.elements:
        es = [e for e in E if R.sub(a, e) in inv]
        if not es:
            return False
        if any(not conjugate(R, f, es[0], inv) for f in es[1:]):
            return False
    return True


def invariants(R: RefRing) -> dict:
    return {"order": len(R.elements), "idempotents": len(idempotents(R)),
            "units": len(inverse_map(R)), "nilpotents": len(nilpotents(R)),
            "radical": len(radical(R)), "center": len(center(R)),
            "classes": len(conjugacy_classes(R)), "unituc": is_unituc(R)}
