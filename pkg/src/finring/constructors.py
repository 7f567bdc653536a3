"""Constructors for the ring families: base rings, matrix-type rings, group rings,
truncated skew polynomial rings, monomial algebras, corners and quotients.

Most families are free modules over a base ring ``R`` with a bilinear product.
Those go through :func:`coordinate_ring`, which takes the product as a list of
structure terms ``c_k += s * a_i * alpha(b_j)`` and fills the tables with numpy.
An element's index is its coordinate tuple read as a base-``|R|`` number, first
coordinate most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Optional, Sequence

import numpy as np

from .ring import (ElementSubset, FiniteRing, RingError, RingHom, check_cap,
                   relabel, validate_ring_axioms, verify_hom)

_CHUNK = 1 << 20


class ConstructionError(RingError):
    pass


def _finish(R: FiniteRing, validate: bool) -> FiniteRing:
    if validate:
        report = validate_ring_axioms(R)
        if not report.ok:
            v = report.violations[0]
            raise ConstructionError(f"{R.label}: {v.axiom} fails at {v.witness}")
    return R


# Groups


@dataclass(eq=False)
class FiniteGroup:
    order: int
    cayley: np.ndarray
    inv: np.ndarray
    label: str = "G"
    identity: int = 0

    def __post_init__(self) -> None:
        self.cayley = np.asarray(self.cayley, dtype=np.int64)
        self.inv = np.asarray(self.inv, dtype=np.int64)

    @property
    def is_two_group(self) -> bool:
        n = self.order
        return n & (n - 1) == 0

    def exponent(self) -> int:
        ar = np.arange(self.order)
        p = ar.copy()
        k = 1
        while (p != self.identity).any():
            p = self.cayley[p, ar]
            k += 1
        return k

    def validate(self) -> bool:
        n, c = self.order, self.cayley
        ar = np.arange(n)
        if (c[0] != ar).any() or (c[:, 0] != ar).any():
            return False
        if (c[ar, self.inv] != 0).any():
            return False
        return bool((c[c[:, :, None], ar[None, None, :]] == c[ar[:, None, None], c[None, :, :]]).all())


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ConstructionError("cyclic group order must be at least 1")
    ar = np.arange(n)
    return FiniteGroup(n, (ar[:, None] + ar[None, :]) % n, (-ar) % n, f"C({n})")


def group_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n = G.order * H.order
    g, h = np.divmod(np.arange(n), H.order)
    cay = G.cayley[g[:, None], g[None, :]] * H.order + H.cayley[h[:, None], h[None, :]]
    inv = G.inv[g] * H.order + H.inv[h]
    return FiniteGroup(n, cay, inv, f"GxG({G.label},{H.label})")


# Element specs


@dataclass(eq=False)
class EndomorphismSpec:
    ring: FiniteRing
    map: np.ndarray
    name: str = "alpha"

    def __post_init__(self) -> None:
        self.map = np.asarray(self.map, dtype=np.int64)
        if self.map.shape != (self.ring.order,):
            raise ConstructionError("endomorphism table has the wrong length")
        rep = verify_hom(RingHom(self.ring, self.ring, self.map), radical=False)
        if not rep.ok:
            raise ConstructionError(f"{self.name} is not a ring endomorphism: {rep.violation}")

    def power(self, i: int) -> np.ndarray:
        out = np.arange(self.ring.order)
        for _ in range(i):
            out = self.map[out]
        return out


def characteristic(R: FiniteRing) -> int:
    k, x = 1, R.one
    while x != R.zero:
        x = int(R.add[x, R.one])
        k += 1
    return k


def frobenius(R: FiniteRing) -> EndomorphismSpec:
    """x -> x^p with p the characteristic of ``R``."""
    p = characteristic(R)
    return pow_endomorphism(R, p, name="frobenius")


def pow_endomorphism(R: FiniteRing, j: int, name: Optional[str] = None) -> EndomorphismSpec:
    ar = np.arange(R.order)
    out = np.full(R.order, R.one, dtype=np.int64)
    for _ in range(j):
        out = R.mul[out, ar].astype(np.int64)
    return EndomorphismSpec(R, out, name or f"pow({j})")


@dataclass(frozen=True)
class CentralElement:
    ring: FiniteRing
    index: int

    def __post_init__(self) -> None:
        R, s = self.ring, self.index
        if not 0 <= s < R.order:
            raise ConstructionError(f"element {s} out of range")
        if (R.mul[s] != R.mul[:, s]).any():
            raise ConstructionError(f"s not central: element {s} of {R.label}")


# Generic coordinate rings


def _digits(n_elems: int, q: int, d: int) -> np.ndarray:
    ar = np.arange(n_elems, dtype=np.int64)
    w = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return (ar[:, None] // w[None, :]) % q


def coordinates(R: FiniteRing) -> np.ndarray:
    """Coordinate tuples of a ring built by :func:`coordinate_ring`."""
    q, d = R._cache["coord-shape"]
    return _digits(R.order, q, d)


Term = tuple  # (i, j, k, scalar or None, endomorphism table or None)


def coordinate_ring(base: FiniteRing, dim: int, terms: Sequence[Term], one: Sequence[int],
                    label: str, fmt: Optional[Callable[[list], str]] = None,
                    validate: bool = True) -> FiniteRing:
    q = base.order
    N = q ** dim
    check_cap(N)
    w = q ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    X = _digits(N, q, dim)
    badd, bmul = base.add, base.mul
    badd_flat = badd.ravel()
    idx_t = np.uint16 if q <= 256 else np.int64
    add = np.empty((N, N), dtype=np.int32)
    mul = np.empty((N, N), dtype=np.int32)
    by_k: dict = {k: [] for k in range(dim)}
    for i, j, k, s, endo in terms:
        right = X[:, j] if endo is None else endo[X[:, j]]
        by_k[k].append((i, right, None if s is None else bmul[s]))
    step = max(1, _CHUNK // N)
    for start in range(0, N, step):
        A = X[start:start + step]
        acc_add = np.zeros((len(A), N), dtype=np.int32)
        acc_mul = np.zeros((len(A), N), dtype=np.int32)
        for k in range(dim):
            acc_add += np.take(badd[A[:, k]], X[:, k], axis=1) * np.int32(w[k])
            c = None
            for i, right, scale in by_k[k]:
                # row-gather then column-gather: p[a, b] = a_i * right(b)
                p = np.take(bmul[A[:, i]], right, axis=1)
                if scale is not None:
                    p = np.take(scale, p)
                c = p if c is None else np.take(badd_flat, c.astype(idx_t) * idx_t(q) + p)
            if c is None:
                c = np.full((len(A), N), base.zero)
            acc_mul += c * np.int32(w[k])
        add[start:start + step] = acc_add
        mul[start:start + step] = acc_mul
    neg = (base.neg[X].astype(np.int64) * w).sum(axis=1)
    zero = int(base.zero * w.sum())
    one_idx = int(sum(int(c) * int(wk) for c, wk in zip(one, w)))

    def render(i: int) -> str:
        parts = [base.render(int(c)) for c in X[i]]
        return fmt(parts) if fmt else "(" + ", ".join(parts) + ")"

    R = FiniteRing(N, add, mul, zero, one_idx, neg, label, render)
    R._cache["coord-shape"] = (q, dim)
    return _finish(R, validate)


def _paren(c: str) -> str:
    return f"({c})" if "+" in c else c


def _matrix_fmt(template: Sequence[Sequence[Optional[int]]], zero: str):
    def fmt(parts: list) -> str:
        rows = [" ".join(parts[c] if c is not None else zero for c in row) for row in template]
        return "[" + "; ".join(rows) + "]"

    return fmt


def template_ring(base: FiniteRing, template: Sequence[Sequence[Optional[int]]], label: str,
                  validate: bool = True) -> FiniteRing:
    """Subring of ``M_n(base)`` whose entries are the coordinates named by ``template``.

    The product of two generic elements is expanded symbolically; every position
    holding coordinate ``q`` must expand to the same sum of coordinate products,
    and positions holding ``None`` must expand to zero.  Otherwise the shape is
    not closed under multiplication and construction fails.
    """
    n = len(template)
    dim = 1 + max(c for row in template for c in row if c is not None)
    expansions: dict = {}
    for r in range(n):
        for c in range(n):
            terms = sorted((template[r][k], template[k][c]) for k in range(n)
                           if template[r][k] is not None and template[k][c] is not None)
            q = template[r][c]
            if q is None:
                if terms:
                    raise ConstructionError(f"{label}: shape not closed, ({r},{c}) must stay zero")
                continue
            if expansions.setdefault(q, terms) != terms:
                raise ConstructionError(f"{label}: shape not closed at ({r},{c})")
    diag = {template[r][r] for r in range(n)}
    off = {template[r][c] for r in range(n) for c in range(n) if r != c}
    if None in diag or diag & off:
        raise ConstructionError(f"{label}: identity matrix is not in the shape")
    one = [base.one if q in diag else base.zero for q in range(dim)]
    terms = [(i, j, q, None, None) for q in range(dim) for i, j in expansions[q]]
    zero_str = base.render(base.zero)
    return coordinate_ring(base, dim, terms, one, label, _matrix_fmt(template, zero_str), validate)


# Base rings


def zmod(n: int, validate: bool = True) -> FiniteRing:
    if n < 2:
        raise ConstructionError("Z(n) needs n >= 2")
    check_cap(n)
    ar = np.arange(n)
    R = FiniteRing(n, (ar[:, None] + ar[None, :]) % n, (ar[:, None] * ar[None, :]) % n,
                   0, 1, (-ar) % n, f"Z({n})")
    return _finish(R, validate)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _poly_mod(a: list, b: list, p: int) -> list:
    """Remainder of ``a`` by monic ``b`` (little-endian coefficient lists) over Z_p."""
    a = [x % p for x in a]
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1]
        shift = len(a) - 1 - db
        for t, bt in enumerate(b):
            a[shift + t] = (a[shift + t] - c * bt) % p
        a.pop()
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Exhaustive scan for monic factors of degree 1..deg/2."""
    poly = list(poly)
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            g = list(low) + [1]
            if not any(_poly_mod(poly, g, p)):
                return False
    return True


BUILTIN_IRREDUCIBLES = {(2, 2): [1, 1, 1], (2, 3): [1, 1, 0, 1]}


def galois_field(p: int, k: int = 1, irr: Optional[Sequence[int]] = None,
                 validate: bool = True) -> FiniteRing:
    """GF(p^k); index = sum c_i p^i over the coefficient tuple (little-endian)."""
    if not is_prime(p):
        raise ConstructionError(f"GF needs a prime characteristic, got {p}")
    if k < 1:
        raise ConstructionError("GF degree must be at least 1")
    label = f"GF({p},{k})" if irr is None else f"GF({p},{k},[{','.join(map(str, irr))}])"
    if k == 1:
        R = zmod(p, validate)
        R.label = label
        return R
    if irr is None:
        if (p, k) not in BUILTIN_IRREDUCIBLES:
            raise ConstructionError(f"GF({p},{k}) needs an explicit irreducible polynomial")
        irr = BUILTIN_IRREDUCIBLES[(p, k)]
    irr = [int(c) % p for c in irr]
    if len(irr) != k + 1 or irr[-1] != 1:
        raise ConstructionError("irreducible must be monic of degree k")
    if not is_irreducible(irr, p):
        raise ConstructionError(f"polynomial {irr} is reducible over Z({p})")
    q = p ** k
    check_cap(q)
    C = _digits(q, p, k)[:, ::-1]  # little-endian coefficients
    # x^t mod irr for t < 2k-1
    red = []
    for t in range(2 * k - 1):
        r = _poly_mod([0] * t + [1], irr, p)
        red.append(r + [0] * (k - len(r)))
    red = np.array(red, dtype=np.int64)
    conv = np.zeros((q, q, 2 * k - 1), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            conv[:, :, i + j] += C[:, None, i] * C[None, :, j]
    prod_coeffs = np.einsum("abt,tc->abc", conv % p, red) % p
    wts = p ** np.arange(k)
    mul = prod_coeffs @ wts
    add = ((C[:, None, :] + C[None, :, :]) % p) @ wts
    neg = ((-C) % p) @ wts

    def render(i: int) -> str:
        cs = C[i]
        terms = [("" if (c == 1 and t) else str(c)) + ("w" if t == 1 else f"w^{t}" if t else "")
                 for t, c in enumerate(cs) if c]
        return "+".join(terms) or "0"

    R = FiniteRing(q, add, mul, 0, 1, neg, label, render)
    return _finish(R, validate)


def direct_product(rings: Sequence[FiniteRing], validate: bool = True) -> FiniteRing:
    if not rings:
        raise ConstructionError("direct product needs at least one factor")
    order = int(np.prod([R.order for R in rings], dtype=object))
    check_cap(order)
    R = rings[0]
    if len(rings) == 1:
        R = FiniteRing(R.order, R.add, R.mul, R.zero, R.one, R.neg, R.label, R.renderer)
    for S in rings[1:]:
        R = _pair_product(R, S)
    R.label = f"Prod({','.join(S.label for S in rings)})"
    return _finish(R, validate)


def _pair_product(R: FiniteRing, S: FiniteRing) -> FiniteRing:
    n = R.order * S.order
    a, b = np.divmod(np.arange(n), S.order)
    add = R.add[a[:, None], a[None, :]].astype(np.int64) * S.order + S.add[b[:, None], b[None, :]]
    mul = R.mul[a[:, None], a[None, :]].astype(np.int64) * S.order + S.mul[b[:, None], b[None, :]]
    neg = R.neg[a].astype(np.int64) * S.order + S.neg[b]

    def render(i: int) -> str:
        left = R.render(int(a[i]))
        if R._cache.get("flat-product"):
            left = left[1:-1]
        return f"({left}, {S.render(int(b[i]))})"

    P = FiniteRing(n, add, mul, R.zero * S.order + S.zero, R.one * S.order + S.one, neg,
                   f"Prod({R.label},{S.label})", render)
    P._cache["flat-product"] = True
    return P


# Matrix-type rings


def matrix_ring(n: int, R: FiniteRing, validate: bool = True) -> FiniteRing:
    if n < 1:
        raise ConstructionError("matrix size must be at least 1")
    check_cap(R.order ** (n * n))
    tmpl = [[r * n + c for c in range(n)] for r in range(n)]
    return template_ring(R, tmpl, f"M({n},{R.label})", validate)


def upper_triangular(n: int, R: FiniteRing, validate: bool = True) -> FiniteRing:
    if n < 1:
        raise ConstructionError("matrix size must be at least 1")
    check_cap(R.order ** (n * (n + 1) // 2))
    tmpl = [[None] * n for _ in range(n)]
    q = 0
    for r in range(n):
        for c in range(r, n):
            tmpl[r][c] = q
            q += 1
    return template_ring(R, tmpl, f"T({n},{R.label})", validate)


def constant_diag_triangular(n: int, R: FiniteRing, validate: bool = True) -> FiniteRing:
    """S_n(R): upper triangular with one shared diagonal value (coordinate 0)."""
    if n < 1:
        raise ConstructionError("matrix size must be at least 1")
    check_cap(R.order ** (1 + n * (n - 1) // 2))
    tmpl = [[None] * n for _ in range(n)]
    q = 1
    for r in range(n):
        tmpl[r][r] = 0
        for c in range(r + 1, n):
            tmpl[r][c] = q
            q += 1
    return template_ring(R, tmpl, f"Sn({n},{R.label})", validate)


def formal_Ks(R: FiniteRing, s: int, validate: bool = True) -> FiniteRing:
    """K_s(R) on coordinates (a, x, y, b) laid out as [[a, x], [y, b]]."""
    CentralElement(R, s)
    check_cap(R.order ** 4)
    terms = [(0, 0, 0, None, None), (1, 2, 0, s, None),
             (0, 1, 1, None, None), (1, 3, 1, None, None),
             (2, 0, 2, None, None), (3, 2, 2, None, None),
             (2, 1, 3, s, None), (3, 3, 3, None, None)]
    return coordinate_ring(R, 4, terms, [R.one, R.zero, R.zero, R.one], f"Ks({R.label},{s})",
                           _matrix_fmt([[0, 1], [2, 3]], "0"), validate)


def mns_exponent(i: int, k: int, j: int) -> int:
    """Power of s weighting a_ik * b_kj in the product of M_n(R; s)."""
    return 1 + (i == j) - (i == k) - (k == j)


def formal_MnS(n: int, R: FiniteRing, s: int, validate: bool = True) -> FiniteRing:
    if n < 2:
        raise ConstructionError("M_n(R;s) needs n >= 2")
    CentralElement(R, s)
    check_cap(R.order ** (n * n))
    from .ring import ring_pow

    powers = {0: None, 1: s, 2: ring_pow(R, s, 2)}
    terms = [(i * n + k, k * n + j, i * n + j, powers[mns_exponent(i, k, j)], None)
             for i in range(n) for j in range(n) for k in range(n)]
    one = [R.one if r == c else R.zero for r in range(n) for c in range(n)]
    tmpl = [[r * n + c for c in range(n)] for r in range(n)]
    return coordinate_ring(R, n * n, terms, one, f"MnS({n},{R.label},{s})",
                           _matrix_fmt(tmpl, "0"), validate)


def trivial_extension(R: FiniteRing, k: int = 1, validate: bool = True) -> FiniteRing:
    """T(R, R^k) on coordinates (r, m_1..m_k)."""
    if k < 1:
        raise ConstructionError("trivial extension rank must be at least 1")
    check_cap(R.order ** (k + 1))
    terms = [(0, 0, 0, None, None)]
    for t in range(1, k + 1):
        terms += [(0, t, t, None, None), (t, 0, t, None, None)]
    one = [R.one] + [R.zero] * k
    label = f"TrivExt({R.label},{k})"
    fmt = lambda parts: f"({parts[0]}, [{', '.join(parts[1:])}])"  # noqa: E731
    return coordinate_ring(R, k + 1, terms, one, label, fmt, validate)


def group_ring(R: FiniteRing, G: FiniteGroup, validate: bool = True):
    """R[G] on coefficient vectors indexed by group elements, with its augmentation map."""
    check_cap(R.order ** G.order)
    terms = [(g, h, int(G.cayley[g, h]), None, None)
             for g in range(G.order) for h in range(G.order)]
    one = [R.one if g == G.identity else R.zero for g in range(G.order)]

    def fmt(parts: list) -> str:
        zs = R.render(R.zero)
        terms_ = [f"{c}*g{g}" for g, c in enumerate(parts) if c != zs]
        return " + ".join(terms_) or zs

    RG = coordinate_ring(R, G.order, terms, one, f"GR({R.label},{G.label})", fmt, validate)
    X = coordinates(RG)
    eps = np.full(RG.order, R.zero, dtype=np.int64)
    for g in range(G.order):
        eps = R.add[eps, X[:, g]].astype(np.int64)
    aug = RingHom(RG, R, eps)
    rep = verify_hom(aug, radical=False)
    if not (rep.ok and rep.surjective):
        raise ConstructionError("augmentation map is not a surjective homomorphism")
    RG._cache["group"] = G
    RG._cache["augmentation"] = aug
    return RG, aug


def group_element(RG: FiniteRing, base: FiniteRing, g: int) -> int:
    """Index of the group element ``g`` (coefficient one at ``g``) inside ``RG``."""
    q, d = RG._cache["coord-shape"]
    coords = [base.zero] * d
    coords[g] = base.one
    return int(sum(c * q ** (d - 1 - t) for t, c in enumerate(coords)))


def skew_poly_quot(R: FiniteRing, n: int, alpha: Optional[EndomorphismSpec] = None,
                   validate: bool = True) -> FiniteRing:
    """R[x, alpha]/(x^n) with x r = alpha(r) x; coordinates (a_0, ..., a_{n-1})."""
    if n < 1:
        raise ConstructionError("truncation degree must be at least 1")
    if alpha is not None and alpha.ring is not R:
        raise ConstructionError("endomorphism belongs to a different ring")
    check_cap(R.order ** n)
    terms = []
    for i in range(n):
        endo = None if (alpha is None or i == 0) else alpha.power(i)
        for j in range(n - i):
            terms.append((i, j, i + j, None, endo))
    one = [R.one] + [R.zero] * (n - 1)

    def fmt(parts: list) -> str:
        zs = R.render(R.zero)
        out = []
        for i, c in enumerate(parts):
            if c == zs:
                continue
            c = c if i == 0 else _paren(c)
            out.append(c if i == 0 else f"{c}*x" if i == 1 else f"{c}*x^{i}")
        return " + ".join(out) or zs

    if alpha is None:
        label = f"PolyQuot({R.label},{n})"
    else:
        label = f"SkewPolyQuot({R.label},{n},{alpha.name})"
    return coordinate_ring(R, n, terms, one, label, fmt, validate)


def poly_quot(R: FiniteRing, n: int, validate: bool = True) -> FiniteRing:
    return skew_poly_quot(R, n, None, validate)


# Families built from Toeplitz-type blocks and monomial algebras


def family_Tnm(n: int, m: int, R: FiniteRing, validate: bool = True) -> FiniteRing:
    """Block-diagonal pair of Toeplitz blocks; coordinates (a, b_1..b_{n-1}, c_1..c_{m-1})."""
    if n < 1 or m < 1:
        raise ConstructionError("T_{n,m} needs n, m >= 1")
    check_cap(R.order ** (n + m - 1))
    N = n + m
    tmpl = [[None] * N for _ in range(N)]
    for r in range(n):
        for c in range(r, n):
            tmpl[r][c] = c - r  # 0 is a, t is b_t
    for r in range(m):
        for c in range(r, m):
            tmpl[n + r][n + c] = 0 if c == r else n - 1 + (c - r)
    return template_ring(R, tmpl, f"Tnm({n},{m},{R.label})", validate)


def _snm_layout(n: int, m: int):
    """Matrix layout of S_{n,m}: a y-block of size m over an x-block of size n.

    Returns (template, monomial) where monomial[q] = (i, j) is the y^i x^j that
    coordinate q carries under the isomorphism with B_{n,m}.
    """
    N = n + m - 1
    mono = [(0, 0)]
    mono += [(i, 0) for i in range(1, m)]
    mono += [(0, j) for j in range(1, n)]
    mono += [(m - 1 - r, c - (m - 1)) for r in range(m - 1) for c in range(m, N)]
    pos = {mn: q for q, mn in enumerate(mono)}
    tmpl = [[None] * N for _ in range(N)]
    for r in range(N):
        for c in range(r, N):
            if c <= m - 1:
                tmpl[r][c] = pos[(c - r, 0)]
            elif r >= m - 1:
                tmpl[r][c] = pos[(0, c - r)]
            else:
                tmpl[r][c] = pos[(m - 1 - r, c - (m - 1))]
    return tmpl, mono


def family_Snm(n: int, m: int, R: FiniteRing, validate: bool = True) -> FiniteRing:
    """Coordinates: a, the y-block diagonals, the x-block diagonals, then the corner block."""
    if n < 1 or m < 1:
        raise ConstructionError("S_{n,m} needs n, m >= 1")
    check_cap(R.order ** (n * m))
    tmpl, _ = _snm_layout(n, m)
    return template_ring(R, tmpl, f"Snm({n},{m},{R.label})", validate)


def family_Un(n: int, R: FiniteRing, validate: bool = True) -> FiniteRing:
    """Rows alternate between the b-sequence and the c-sequence.

    Coordinates (a, b_1..b_{n-1}, c_1..c_{n-2}).
    """
    if n < 2:
        raise ConstructionError("U_n needs n >= 2")
    check_cap(R.order ** (2 * n - 2))
    tmpl = [[None] * n for _ in range(n)]
    for r in range(n):
        for c in range(r, n):
            d = c - r
            if d == 0:
                tmpl[r][c] = 0
            elif r % 2 == 0:
                tmpl[r][c] = d
            else:
                tmpl[r][c] = n - 1 + d
    return template_ring(R, tmpl, f"Un({n},{R.label})", validate)


def example3_shape(R: FiniteRing, validate: bool = True) -> FiniteRing:
    """The 4x4 shape with rows (a1 a2 a3 a4 / a1 a5 a6 / a1 a2 / a1)."""
    N = None
    tmpl = [[0, 1, 2, 3], [N, 0, 4, 5], [N, N, 0, 1], [N, N, N, 0]]
    return template_ring(R, tmpl, f"Shape4({R.label})", validate)


def family_Anm(n: int, m: int, R: FiniteRing, validate: bool = True) -> FiniteRing:
    """R[x, y | x^n = xy = y^m = 0] on the basis 1, x..x^{n-1}, y..y^{m-1}."""
    if n < 2 or m < 2:
        raise ConstructionError("A_{n,m} needs n, m >= 2")
    dim = n + m - 1
    check_cap(R.order ** dim)
    mono = [(0, 0)] + [(i, 0) for i in range(1, n)] + [(0, j) for j in range(1, m)]
    pos = {mn: q for q, mn in enumerate(mono)}
    terms = []
    for p, (a, b) in enumerate(mono):
        for q, (c, d) in enumerate(mono):
            e = (a + c, b + d)
            if e[0] and e[1]:
                continue
            if e in pos:
                terms.append((p, q, pos[e], None, None))
    one = [R.one] + [R.zero] * (dim - 1)
    names = ["1"] + [f"x^{i}" for i in range(1, n)] + [f"y^{j}" for j in range(1, m)]
    return coordinate_ring(R, dim, terms, one, f"Anm({n},{m},{R.label})",
                           _basis_fmt(R, names), validate)


def family_Bnm(n: int, m: int, R: FiniteRing, validate: bool = True) -> FiniteRing:
    """R<x, y | x^n = xy = y^m = 0> on the basis y^i x^j (i < m, j < n)."""
    if n < 2 or m < 2:
        raise ConstructionError("B_{n,m} needs n, m >= 2")
    dim = n * m
    check_cap(R.order ** dim)
    terms = []
    for a in range(m):
        for b in range(n):
            for c in range(m):
                for d in range(n):
                    if b > 0 and c > 0:
                        continue
                    i, j = a + c, b + d
                    if i < m and j < n:
                        terms.append((a * n + b, c * n + d, i * n + j, None, None))
    one = [R.one] + [R.zero] * (dim - 1)
    names = [f"y^{i}x^{j}" for i in range(m) for j in range(n)]
    return coordinate_ring(R, dim, terms, one, f"Bnm({n},{m},{R.label})",
                           _basis_fmt(R, names), validate)


def _basis_fmt(R: FiniteRing, names: list):
    def fmt(parts: list) -> str:
        zs = R.render(R.zero)
        out = [f"{_paren(c)}*{nm}" if nm != "1" else c for c, nm in zip(parts, names) if c != zs]
        return " + ".join(out) or zs

    return fmt


def coordinate_hom(source: FiniteRing, target: FiniteRing, perm: Sequence[int]) -> RingHom:
    """Map sending coordinate ``perm[t]`` of the source to coordinate ``t`` of the target."""
    qs, ds = source._cache["coord-shape"]
    qt, dt = target._cache["coord-shape"]
    if qs != qt or ds != dt or len(perm) != dt:
        raise ConstructionError("coordinate shapes differ")
    X = coordinates(source)[:, list(perm)]
    w = qt ** np.arange(dt - 1, -1, -1, dtype=np.int64)
    return RingHom(source, target, X @ w)


def phi_Anm_Tnm(n: int, m: int, R: FiniteRing):
    """The map a + sum b_i x^i + sum c_j y^j -> blockdiag(Toeplitz(a, b), Toeplitz(a, c))."""
    A = family_Anm(n, m, R)
    T = family_Tnm(n, m, R)
    return coordinate_hom(A, T, list(range(n + m - 1)))


def psi_Bnm_Snm(n: int, m: int, R: FiniteRing):
    """The map sum a_ij y^i x^j -> sum a_ij Y^i X^j with Y, X the block shifts."""
    B = family_Bnm(n, m, R)
    S = family_Snm(n, m, R)
    _, mono = _snm_layout(n, m)
    return coordinate_hom(B, S, [i * n + j for i, j in mono])


# Corners and quotients


def _induced(R: FiniteRing, members: np.ndarray, one: int, label: str,
             render: Callable[[int], str], validate: bool) -> FiniteRing:
    pos = np.full(R.order, -1, dtype=np.int64)
    pos[members] = np.arange(len(members))
    sub = np.ix_(members, members)
    add, mul = pos[R.add[sub]], pos[R.mul[sub]]
    if (add < 0).any() or (mul < 0).any():
        raise ConstructionError(f"{label}: subset is not closed")
    S = FiniteRing(len(members), add, mul, int(pos[R.zero]), int(pos[one]),
                   pos[R.neg[members]], label, render)
    return _finish(S, validate)


def corner_ring(R: FiniteRing, e: int, validate: bool = True) -> FiniteRing:
    """eRe with identity e, elements in ascending order of their index in R."""
    if not 0 <= e < R.order or R.mul[e, e] != e:
        raise ConstructionError(f"element {e} is not idempotent")
    if e == R.zero:
        raise ConstructionError("corner ring at zero is the zero ring")
    if e == R.one:
        return R
    members = np.unique(R.mul[R.mul[e], e])
    S = _induced(R, members, e, f"Corner({R.label},{e})",
                 lambda i: R.render(int(members[i])), validate)
    S._cache["embedding"] = members
    return S


def quotient_ring(R: FiniteRing, I, validate: bool = True):
    """R/I with cosets indexed by ascending minimal representative, plus the projection."""
    from .structure import is_ideal

    members = np.array(sorted(int(x) for x in I), dtype=np.int64)
    if not is_ideal(R, members):
        raise ConstructionError("generating set is not a two-sided ideal")
    if len(members) == 1:
        return R, RingHom(R, R, np.arange(R.order))
    rep_of = R.add[:, members].min(axis=1).astype(np.int64)
    reps = np.unique(rep_of)
    lab = np.searchsorted(reps, rep_of)
    sub = np.ix_(reps, reps)
    Q = FiniteRing(len(reps), lab[R.add[sub]], lab[R.mul[sub]], int(lab[R.zero]),
                   int(lab[R.one]), lab[R.neg[reps]], f"{R.label}/I",
                   lambda i: R.render(int(reps[i])) + "+I")
    Q = _finish(Q, validate)
    Q._cache["representatives"] = reps
    return Q, RingHom(R, Q, lab)

