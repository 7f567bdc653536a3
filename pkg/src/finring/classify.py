"""Clean-family classification of elements and rings.

Every ring-level verdict comes from one exhaustive scan of the decomposition
grid ``a = e + (a - e)`` over all elements ``a`` and idempotents ``e``.  Failing
verdicts carry the least failing element together with enough data to replay
the failure with plain table arithmetic (see :func:`replay_witness`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import structure as st
from .ring import FiniteRing, ring_add, ring_mul, ring_neg

PROPERTIES = (
    "clean", "uniquely-clean", "strongly-clean", "strongly-uniquely-clean", "nil-clean",
    "strongly-nil-clean", "strongly-j-clean", "exchange", "uuc", "cuc", "unituc",
    "boolean", "reduced", "abelian", "local", "dedekind-finite",
)


@dataclass
class DecompositionRecord:
    element: int
    pairs: list
    commuting_flags: list
    conjugacy_partition: list

    def to_json(self, R: Optional[FiniteRing] = None) -> dict:
        doc = {"element": self.element,
               "pairs": [{"e": e, "u": u, "commuting": c}
                         for (e, u), c in zip(self.pairs, self.commuting_flags)],
               "conjugacy_partition": self.conjugacy_partition}
        if R is not None:
            doc["rendered"] = R.render(self.element)
            for p in doc["pairs"]:
                p["e_rendered"], p["u_rendered"] = R.render(p["e"]), R.render(p["u"])
        return doc


@dataclass
class PropertyVerdict:
    property: str
    holds: bool
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        return {"property": self.property, "holds": self.holds, "witness": self.witness}


@dataclass
class _Grid:
    E: np.ndarray          # idempotents
    U: np.ndarray          # U[a, j] = a - E[j]
    D: np.ndarray          # a - E[j] is a unit
    C: np.ndarray          # E[j] commutes with a
    labels: np.ndarray     # conjugacy class of E[j]
    extra: dict = field(default_factory=dict)


def _grid(R: FiniteRing) -> _Grid:
    def compute():
        E = st.idempotents(R).array()
        U = R.add[:, R.neg[E]].astype(np.int64)
        D = st.units(R).is_unit[U]
        C = R.mul[:, E] == R.mul[E, :].T
        labels = st.conjugacy_labels(R)[E]
        return _Grid(E, U, D, C, labels)

    return R.cached("decomposition-grid", compute)


def _pairs_of(R: FiniteRing, a: int, mask_row: np.ndarray) -> list:
    g = _grid(R)
    return [[int(g.E[j]), int(g.U[a, j])] for j in np.flatnonzero(mask_row)]


def clean_decompositions(R: FiniteRing, a: int) -> DecompositionRecord:
    R._check(a)
    g = _grid(R)
    js = np.flatnonzero(g.D[a])
    pairs = [(int(g.E[j]), int(g.U[a, j])) for j in js]
    flags = [bool(g.C[a, j]) for j in js]
    blocks: dict = {}
    for j in js:
        blocks.setdefault(int(g.labels[j]), []).append(int(g.E[j]))
    partition = sorted(blocks.values())
    return DecompositionRecord(a, pairs, flags, partition)


def element_is_uniquely_clean(R: FiniteRing, a: int) -> bool:
    return len(clean_decompositions(R, a).pairs) == 1


def element_is_unituc(R: FiniteRing, a: int) -> bool:
    rec = clean_decompositions(R, a)
    return bool(rec.pairs) and len(rec.conjugacy_partition) == 1


def _first(mask: np.ndarray) -> Optional[int]:
    idx = np.flatnonzero(mask)
    return int(idx[0]) if len(idx) else None


def _count_property(R: FiniteRing, name: str, ok_rows: np.ndarray, kind: str,
                    pair_mask: np.ndarray) -> PropertyVerdict:
    bad = _first(~ok_rows)
    if bad is None:
        return PropertyVerdict(name, True)
    return PropertyVerdict(name, False, {"kind": kind, "element": bad,
                                         "pairs": _pairs_of(R, bad, pair_mask[bad])})


def _nil_grid(R: FiniteRing, which: str) -> np.ndarray:
    g = _grid(R)
    if which == "nil":
        mask = st.nilpotents(R).mask()
    else:
        mask = st.jacobson_radical(R).mask()
    return mask[g.U]


def _unituc(R: FiniteRing) -> PropertyVerdict:
    g = _grid(R)
    clean = g.D.any(axis=1)
    a = _first(~clean)
    if a is not None:
        return PropertyVerdict("unituc", False, {"kind": "not-clean", "element": a})
    big = np.iinfo(np.int64).max
    lo = np.where(g.D, g.labels[None, :], big).min(axis=1)
    hi = np.where(g.D, g.labels[None, :], -1).max(axis=1)
    a = _first(lo != hi)
    if a is None:
        return PropertyVerdict("unituc", True)
    U = st.units(R)
    u = U.units.array()
    rest = R.add[R.one, R.neg[u]]
    paired = np.flatnonzero(U.is_unit[rest])
    if len(paired):
        # u + v = 1 with both units: u = 0 + u = 1 + (-v), and 0 is never conjugate to 1
        x, v = int(u[paired[0]]), int(rest[paired[0]])
        return PropertyVerdict("unituc", False, {
            "kind": "non-conjugate", "element": x, "pair1": [R.zero, x],
            "pair2": [R.one, int(R.neg[v])], "unit_pair": [x, v]})
    js = np.flatnonzero(g.D[a])
    j1 = js[0]
    j2 = next(j for j in js if g.labels[j] != g.labels[j1])
    return PropertyVerdict("unituc", False, {
        "kind": "non-conjugate", "element": a,
        "pair1": [int(g.E[j1]), int(g.U[a, j1])], "pair2": [int(g.E[j2]), int(g.U[a, j2])]})


def _exchange(R: FiniteRing) -> PropertyVerdict:
    E = st.idempotents(R).array()
    one_minus = R.add[R.one][R.neg]
    one_minus_E = one_minus[E]
    n = R.order
    for a in range(n):
        left_a = np.zeros(n, dtype=bool)
        left_a[R.mul[:, a]] = True
        left_b = np.zeros(n, dtype=bool)
        left_b[R.mul[:, one_minus[a]]] = True
        if not (left_a[E] & left_b[one_minus_E]).any():
            return PropertyVerdict("exchange", False, {"kind": "no-exchange-idempotent",
                                                       "element": a})
    return PropertyVerdict("exchange", True)


def _dedekind_finite(R: FiniteRing) -> PropertyVerdict:
    bad = (R.mul == R.one) & (R.mul.T != R.one)
    if bad.any():
        a, b = (int(x) for x in np.argwhere(bad)[0])
        return PropertyVerdict("dedekind-finite", False,
                               {"kind": "one-sided-inverse", "a": a, "b": b})
    return PropertyVerdict("dedekind-finite", True)


def _delegate(name: str, check: st.Check) -> PropertyVerdict:
    w = None if check.holds else {"kind": f"not-{name}", **check.witness}
    return PropertyVerdict(name, check.holds, w)


def has_property(R: FiniteRing, prop: str) -> PropertyVerdict:
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}")
    return R.cached(("verdict", prop), lambda: _evaluate(R, prop))


def _evaluate(R: FiniteRing, prop: str) -> PropertyVerdict:
    if prop == "boolean":
        return _delegate("boolean", st.is_boolean(R))
    if prop == "reduced":
        return _delegate("reduced", st.is_reduced(R))
    if prop == "abelian":
        return _delegate("abelian", st.is_abelian(R))
    if prop == "local":
        return _delegate("local", st.is_local(R))
    if prop == "dedekind-finite":
        return _dedekind_finite(R)
    if prop == "exchange":
        return _exchange(R)
    if prop == "unituc":
        return _unituc(R)
    g = _grid(R)
    D, C = g.D, g.C
    if prop == "clean":
        return _count_property(R, prop, D.any(axis=1), "not-clean", D)
    if prop == "uniquely-clean":
        return _count_property(R, prop, D.sum(axis=1) == 1, "pair-count", D)
    if prop == "strongly-clean":
        return _count_property(R, prop, (D & C).any(axis=1), "no-commuting-pair", D & C)
    if prop == "strongly-uniquely-clean":
        return _count_property(R, prop, (D & C).sum(axis=1) == 1, "commuting-pair-count", D & C)
    if prop in ("nil-clean", "strongly-nil-clean", "strongly-j-clean"):
        M = _nil_grid(R, "rad" if prop == "strongly-j-clean" else "nil")
        if prop != "nil-clean":
            M = M & C
        kind = {"nil-clean": "no-nil-pair", "strongly-nil-clean": "no-commuting-nil-pair",
                "strongly-j-clean": "no-commuting-radical-pair"}[prop]
        return _count_property(R, prop, M.any(axis=1), kind, M)
    if prop == "uuc":
        is_unit = st.units(R).is_unit
        ok = ~is_unit | (D.sum(axis=1) == 1)
        return _count_property(R, prop, ok, "pair-count", D)
    if prop == "cuc":
        counts = D.sum(axis=1)
        return _count_property(R, prop, counts <= 1, "pair-count", D)
    raise AssertionError(prop)


def classify(R: FiniteRing, props=PROPERTIES) -> list:
    cheap = [p for p in props if p in ("boolean", "reduced", "abelian", "local")]
    rest = [p for p in props if p not in cheap]
    st.structure(R)
    verdicts = {p: has_property(R, p) for p in cheap + rest}
    return [verdicts[p] for p in props]


def unituc_oracle(R: FiniteRing) -> bool:
    """Exchange and Boolean modulo the radical."""
    from .constructors import quotient_ring

    if not has_property(R, "exchange").holds:
        return False
    Q, _ = quotient_ring(R, st.jacobson_radical(R), validate=False)
    return st.is_boolean(Q).holds


def two_in_radical(R: FiniteRing) -> bool:
    return R.two() in st.jacobson_radical(R)


def boolean_mod_radical(R: FiniteRing) -> bool:
    from .constructors import quotient_ring

    Q, _ = quotient_ring(R, st.jacobson_radical(R), validate=False)
    return st.is_boolean(Q).holds


IMPLICATIONS = (
    ("uniquely-clean", "strongly-uniquely-clean"),
    ("strongly-uniquely-clean", "unituc"),
    ("unituc", "uuc"),
    ("strongly-nil-clean", "strongly-uniquely-clean"),
    ("cuc", "uuc"),
    ("unituc", "two-in-radical"),
    ("unituc", "dedekind-finite"),
    ("unituc", "boolean-mod-radical"),
)


def implication_audit(R: FiniteRing, overrides: Optional[dict] = None) -> list:
    """Violated arrows of the implication diagram (expected empty).

    ``overrides`` replaces computed truth values, which lets tests inject an
    inconsistent verdict.
    """
    values = {p: has_property(R, p).holds for p in PROPERTIES}
    values["two-in-radical"] = two_in_radical(R)
    values["boolean-mod-radical"] = boolean_mod_radical(R)
    values.update(overrides or {})
    return [{"ring": R.label, "premise": a, "conclusion": b}
            for a, b in IMPLICATIONS if values[a] and not values[b]]


# Witness replay using ring arithmetic only


def _py_unit(R: FiniteRing, u: int) -> bool:
    return any(ring_mul(R, u, v) == R.one and ring_mul(R, v, u) == R.one for v in R.elements)


def _py_idempotent(R: FiniteRing, e: int) -> bool:
    return ring_mul(R, e, e) == e


def _py_sub(R: FiniteRing, a: int, b: int) -> int:
    return ring_add(R, a, ring_neg(R, b))


def _py_pairs(R: FiniteRing, a: int) -> list:
    return [(e, _py_sub(R, a, e)) for e in R.elements
            if _py_idempotent(R, e) and _py_unit(R, _py_sub(R, a, e))]


def _py_conjugate(R: FiniteRing, e: int, f: int) -> bool:
    for u in R.elements:
        for v in R.elements:
            if ring_mul(R, u, v) == R.one and ring_mul(R, v, u) == R.one:
                # v is the inverse of u
                if ring_mul(R, ring_mul(R, v, f), u) == e:
                    return True
                break
    return False


def _py_nilpotent(R: FiniteRing, b: int) -> bool:
    x = b
    for _ in range(R.order):
        if x == R.zero:
            return True
        x = ring_mul(R, x, b)
    return x == R.zero


def replay_witness(R: FiniteRing, verdict: PropertyVerdict) -> bool:
    """Re-derive a failure witness by scanning with element arithmetic alone.

    Returns True when the witness really does show that the property fails.
    """
    w = verdict.witness
    if verdict.holds or w is None:
        return False
    kind = w["kind"]
    if kind == "not-clean":
        return not _py_pairs(R, w["element"])
    if kind == "non-conjugate":
        a = w["element"]
        (e, u), (f, v) = w["pair1"], w["pair2"]
        return (ring_add(R, e, u) == a and ring_add(R, f, v) == a
                and _py_idempotent(R, e) and _py_idempotent(R, f)
                and _py_unit(R, u) and _py_unit(R, v) and not _py_conjugate(R, e, f))
    if kind == "pair-count":
        n = len(_py_pairs(R, w["element"]))
        if verdict.property == "uuc":
            return _py_unit(R, w["element"]) and n != 1
        if verdict.property == "cuc":
            return n > 1
        return n != 1
    if kind in ("no-commuting-pair", "commuting-pair-count"):
        a = w["element"]
        n = sum(1 for e, u in _py_pairs(R, a) if ring_mul(R, e, u) == ring_mul(R, u, e))
        return n == 0 if kind == "no-commuting-pair" else n != 1
    if kind in ("no-nil-pair", "no-commuting-nil-pair"):
        a = w["element"]
        for e in R.elements:
            b = _py_sub(R, a, e)
            if _py_idempotent(R, e) and _py_nilpotent(R, b):
                if kind == "no-nil-pair" or ring_mul(R, e, b) == ring_mul(R, b, e):
                    return False
        return True
    if kind == "no-commuting-radical-pair":
        a = w["element"]
        for e in R.elements:
            j = _py_sub(R, a, e)
            if _py_idempotent(R, e) and ring_mul(R, e, j) == ring_mul(R, j, e):
                quasi = all(_py_unit(R, _py_sub(R, R.one, ring_mul(R, r, j))) for r in R.elements)
                if quasi:
                    return False
        return True
    if kind == "no-exchange-idempotent":
        a = w["element"]
        b = _py_sub(R, R.one, a)
        Ra = {ring_mul(R, r, a) for r in R.elements}
        Rb = {ring_mul(R, r, b) for r in R.elements}
        return not any(_py_idempotent(R, e) and e in Ra and _py_sub(R, R.one, e) in Rb
                       for e in R.elements)
    if kind == "one-sided-inverse":
        return (ring_mul(R, w["a"], w["b"]) == R.one and ring_mul(R, w["b"], w["a"]) != R.one)
    if kind == "not-boolean":
        return ring_mul(R, w["element"], w["element"]) != w["element"]
    if kind == "not-reduced":
        return w["nilpotent"] != R.zero and _py_nilpotent(R, w["nilpotent"])
    if kind == "not-abelian":
        e, x = w["idempotent"], w["partner"]
        return _py_idempotent(R, e) and ring_mul(R, e, x) != ring_mul(R, x, e)
    if kind == "not-local":
        x, y = w["nonunits"]
        return (not _py_unit(R, x) and not _py_unit(R, y) and _py_unit(R, ring_add(R, x, y)))
    raise ValueError(f"no replay for witness kind {kind!r}")
