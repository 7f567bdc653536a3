"""Executable theorem checks over a corpus of small rings.

Each registered theorem turns corpus entries into zero or more cases.  A case
names the ring it runs on (usually the entry itself, sometimes a sibling
construction such as ``T(3,R)`` for an entry ``T(2,R)``) and returns an
:class:`Outcome`.  Cases whose predicted order exceeds the cap are reported as
skipped instead of run.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import constructors as C
from . import structure as st
from .classify import _grid, has_property, replay_witness, unituc_oracle
from .classify import _py_conjugate, _py_idempotent, _py_sub, _py_unit, _py_pairs
from .dsl import Node, ParseError, eval_expr, eval_group, parse_expr, predicted_order, render_expr
from .ring import FiniteRing, max_order, ring_add, ring_mul, verify_hom, verify_isomorphism


@dataclass
class CorpusEntry:
    id: str
    expr: str
    expected: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    ring: Optional[FiniteRing] = field(default=None, repr=False)  # prebuilt tables, e.g. a corrupted fixture

    def build(self) -> FiniteRing:
        return self.ring if self.ring is not None else eval_expr(self.expr)

    @property
    def node(self) -> Optional[Node]:
        if self.ring is not None:
            return None
        try:
            return parse_expr(self.expr)
        except ParseError:
            return None

    def to_json(self) -> dict:
        return {"id": self.id, "expr": self.expr, "expected": self.expected,
                "provenance": self.provenance}


@dataclass
class Outcome:
    passed: bool
    witness: Optional[dict] = None
    evidence: Optional[dict] = None


@dataclass
class TheoremCheckResult:
    theorem_id: str
    ring_id: str
    passed: bool
    witness: Optional[dict]
    elapsed: float  # seconds
    evidence: Optional[dict] = None

    def to_json(self) -> dict:
        doc = {"ring": self.ring_id, "passed": self.passed, "witness": self.witness,
               "ms": round(self.elapsed * 1000, 3)}
        if self.evidence is not None:
            doc["evidence"] = self.evidence
        return doc


@dataclass
class Skipped:
    ring_id: str
    reason: str

    def to_json(self) -> dict:
        return {"ring": self.ring_id, "reason": self.reason}


@dataclass
class TheoremRun:
    theorem_id: str
    results: list
    skipped: list

    def __iter__(self):
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    def __getitem__(self, i):
        return self.results[i]

    @property
    def failures(self) -> int:
        return sum(not r.passed for r in self.results)

    def to_json(self) -> dict:
        return {"theorem": self.theorem_id, "results": [r.to_json() for r in self.results],
                "skipped": [s.to_json() for s in self.skipped]}


@dataclass
class SuiteReport:
    runs: list
    elapsed: float = 0.0

    @property
    def failures(self) -> int:
        return sum(r.failures for r in self.runs)

    @property
    def checks(self) -> int:
        return sum(len(r) for r in self.runs)

    def to_json(self) -> dict:
        return {"suite": [r.to_json() for r in self.runs], "failures": self.failures}

    def fingerprint(self) -> str:
        """The report with timings removed, for determinism comparisons."""
        doc = self.to_json()
        for run in doc["suite"]:
            for res in run["results"]:
                res.pop("ms")
        return json.dumps(doc, sort_keys=True)


# Case plumbing


@dataclass
class Case:
    ring_id: str
    run: Callable[[], Optional[Outcome]]


def _case(ring_id: str, node: Optional[Node], fn: Callable[[], Optional[Outcome]]):
    """A case on ``ring_id``, or a skip when its construction would exceed the cap."""
    if node is not None:
        order = predicted_order(node)
        if order > max_order():
            return Skipped(ring_id, f"order {order} exceeds cap {max_order()}")
    return Case(ring_id, fn)


def _uc(R: FiniteRing) -> bool:
    return has_property(R, "unituc").holds


def _in_radical(R: FiniteRing, x: int) -> bool:
    return x in st.jacobson_radical(R)


def _mismatch(values: dict, **extra) -> dict:
    return {"kind": "mismatch", "values": values, **extra}


def _agree(values: dict, **extra) -> Outcome:
    if len(set(values.values())) == 1:
        return Outcome(True, evidence={"values": values})
    return Outcome(False, _mismatch(values, **extra))


def _implies(premise: bool, conclusion: bool, values: dict) -> Outcome:
    if premise and not conclusion:
        return Outcome(False, _mismatch(values))
    return Outcome(True, evidence={"values": values})


def _class_reps(R: FiniteRing) -> list:
    """Least member of every idempotent conjugacy class."""
    return [cls[0] for cls in st.idempotent_conjugacy_classes(R)]


def _one_minus(R: FiniteRing, x: int) -> int:
    return int(R.add[R.one, R.neg[x]])


def _whole(check: Callable[[FiniteRing], Optional[Outcome]]):
    """Theorem cases: one per corpus entry, run on the entry's own ring."""

    def cases(entry: CorpusEntry, ids: set) -> list:
        return [Case(entry.id, lambda: check(entry.build()))]

    return cases


def _sub(node: Node, i: int) -> Node:
    return node.args[i]


# Individual checks


def _lem_conj(R: FiniteRing) -> Outcome:
    E = st.idempotents(R).array()
    U = st.units(R)
    diff = R.add[E[:, None], R.neg[E][None, :]].astype(np.int64)
    ei, fi = np.nonzero(U.is_unit[diff])
    if len(ei) == 0:
        return Outcome(True, evidence={"pairs": 0})
    e, f, u = E[ei], E[fi], diff[ei, fi]
    uinv = U.inverse[u]
    lhs = R.mul[R.mul[uinv, R.add[R.one, R.neg[e]]], u]
    bad = np.flatnonzero(lhs != f)
    if len(bad):
        k = bad[0]
        return Outcome(False, {"kind": "conjugation", "e": int(e[k]), "f": int(f[k]),
                               "u": int(u[k]), "u_inv": int(uinv[k]), "lhs": int(lhs[k])})
    return Outcome(True, evidence={"pairs": int(len(ei))})


def _element_unituc(R: FiniteRing, a: int) -> bool:
    g = _grid(R)
    labs = g.labels[g.D[a]]
    return len(labs) > 0 and bool((labs == labs[0]).all())


def _ex_elt(R: FiniteRing) -> Outcome:
    nil_central = st.nilpotents(R).mask() & st.center(R).mask()
    targets = [(e, "idempotent") for e in st.idempotents(R)]
    targets += [(int(q), "central-nilpotent") for q in np.flatnonzero(nil_central)]
    for a, role in targets:
        if not _element_unituc(R, a):
            return Outcome(False, {"kind": "element", "element": a, "role": role})
    return Outcome(True, evidence={"elements": len(targets)})


def _lem_ere(R: FiniteRing) -> Optional[Outcome]:
    if not _uc(R):
        return None
    idem = np.zeros(R.order, dtype=bool)
    idem[st.idempotents(R).array()] = True
    lab = st.conjugacy_labels(R)
    for e in st.idempotents(R):
        ce = _one_minus(R, e)
        for side, prods in (("right", R.mul[R.mul[e, :], ce]), ("left", R.mul[R.mul[ce, :], e])):
            f = R.add[e, prods]
            bad = np.flatnonzero(~idem[f] | (lab[f] != lab[e]))
            if len(bad):
                r = int(bad[0])
                return Outcome(False, {"kind": "peirce-conjugate", "e": e, "r": r, "side": side,
                                       "f": int(f[r])})
    return Outcome(True, evidence={"idempotents": len(st.idempotents(R))})


def _cor_abel(R: FiniteRing) -> Outcome:
    left = has_property(R, "abelian").holds and _uc(R)
    return _agree({"abelian-unituc": left,
                   "uniquely-clean": has_property(R, "uniquely-clean").holds})


def _unit_sum_hit(R: FiniteRing, units: np.ndarray, targets: np.ndarray):
    """First (u, v) among ``units`` whose sum lands in the ``targets`` mask."""
    if len(units) == 0:
        return None
    step = max(1, (1 << 22) // len(units))
    for start in range(0, len(units), step):
        block = units[start:start + step]
        sums = R.add[np.ix_(block, units)]
        hit = targets[sums]
        if hit.any():
            i, j = np.argwhere(hit)[0]
            return int(block[i]), int(units[j]), int(sums[i, j])
    return None


def _corner_units(R: FiniteRing, e: int) -> np.ndarray:
    members = np.unique(R.mul[R.mul[e], e])
    sub = R.mul[np.ix_(members, members)]
    hit = (sub == e) & (sub.T == e)
    return members[hit.any(axis=1)]


def _ideals_in_radical(R: FiniteRing) -> list:
    J = st.jacobson_radical(R)
    nonzero = [x for x in J if x != R.zero]
    if len(J) <= 8:
        found = {}
        for k in range(len(nonzero) + 1):
            for gens in itertools.combinations(nonzero, k):
                I = st.ideal_closure(R, gens)
                found.setdefault(I.members, I)
        return [found[k] for k in sorted(found, key=lambda m: (len(m), m))]
    return [st.ElementSubset.of(R, [R.zero]), J]


def _prop_imp(R: FiniteRing) -> Outcome:
    uc = _uc(R)
    evidence = {"unituc": uc, "parts": []}
    if uc:
        U = st.units(R).units.array()
        idem_nz = np.zeros(R.order, dtype=bool)
        idem_nz[st.idempotents(R).array()] = True
        idem_nz[R.zero] = False
        one = np.zeros(R.order, dtype=bool)
        one[R.one] = True
        for part, targets in ((2, one), (1, idem_nz)):
            hit = _unit_sum_hit(R, U, targets)
            if hit:
                u, v, s = hit
                return Outcome(False, {"kind": "unit-sum", "part": part, "corner": R.one,
                                       "u": u, "v": v, "sum": s})
        evidence["parts"] += [1, 2]
        for e in _class_reps(R):
            if e in (R.zero, R.one):
                continue
            Ue = _corner_units(R, e)
            own = np.zeros(R.order, dtype=bool)
            own[e] = True
            for part, targets in ((4, own), (3, idem_nz)):
                hit = _unit_sum_hit(R, Ue, targets)
                if hit:
                    u, v, s = hit
                    return Outcome(False, {"kind": "unit-sum", "part": part, "corner": e,
                                           "u": u, "v": v, "sum": s})
        evidence["parts"] += [3, 4]
    ideals = _ideals_in_radical(R)
    for I in ideals:
        Q, _ = C.quotient_ring(R, I, validate=False)
        if _uc(Q) != uc:
            return Outcome(False, {"kind": "quotient", "part": 5, "ideal": list(I.members),
                                   "unituc": uc, "quotient_unituc": _uc(Q)})
    evidence["parts"].append(5)
    evidence["ideals"] = len(ideals)
    return Outcome(True, evidence=evidence)


def _unit_pair_for_one(R: FiniteRing):
    U = st.units(R)
    u = U.units.array()
    rest = R.add[R.one, R.neg[u]]
    hit = np.flatnonzero(U.is_unit[rest])
    if len(hit) == 0:
        return None
    return int(u[hit[0]]), int(rest[hit[0]])


def _ex_mat_cases(entry: CorpusEntry, ids: set) -> list:
    node = entry.node
    if node is None or node.kind != "M" or node.args[0] < 2:
        return []

    def run() -> Outcome:
        R = entry.build()
        pair = _unit_pair_for_one(R)
        uc = _uc(R)
        if uc or pair is None:
            return Outcome(False, {"kind": "mismatch", "values": {"unituc": uc,
                                                                   "unit-pair": pair is not None}})
        u, v = pair
        return Outcome(True, evidence={"kind": "unit-sum", "part": 2, "u": u, "v": v,
                                       "sum": R.one, "u_rendered": R.render(u),
                                       "v_rendered": R.render(v)})

    return [Case(entry.id, run)]


def _lem_2j(R: FiniteRing) -> Optional[Outcome]:
    if not _uc(R):
        return None
    two = R.two()
    if _in_radical(R, two):
        return Outcome(True, evidence={"two": two})
    U = st.units(R).is_unit
    r = next(r for r in R.elements if not U[_one_minus(R, int(R.mul[r, two]))])
    return Outcome(False, {"kind": "radical", "element": two, "r": r})


def _lem_epi(R: FiniteRing) -> Optional[Outcome]:
    J = st.jacobson_radical(R)
    if len(J) == 1:
        return None
    ideals = [J]
    least = st.ideal_closure(R, [J.members[1]])
    if least.members != J.members:
        ideals.append(least)
    uc, clean = _uc(R), has_property(R, "clean").holds
    checked = []
    for I in ideals:
        Q, proj = C.quotient_ring(R, I, validate=False)
        rep = verify_hom(proj)
        quc = _uc(Q)
        values = {"unituc": uc, "quotient_unituc": quc, "clean": clean,
                  "epimorphism": rep.ok and rep.surjective, "kernel_in_radical": rep.kernel_in_radical}
        if not (rep.ok and rep.surjective and rep.kernel_in_radical):
            return Outcome(False, _mismatch(values, ideal=list(I.members)))
        if (uc and not quc) or (quc and clean and not uc):
            return Outcome(False, _mismatch(values, ideal=list(I.members)))
        checked.append(len(I))
    return Outcome(True, evidence={"ideal_sizes": checked})


def _family_equivalence(kind: str, ks: tuple, base_arg: int):
    """Cases ``kind(k, base)`` for each k, checking unituc agrees with the base ring."""

    def cases(entry: CorpusEntry, ids: set) -> list:
        node = entry.node
        if node is None or node.kind != kind:
            return []
        base = _sub(node, base_arg)
        out = []
        for k in ks or (node.args[0],):
            sib = Node(kind, (k, base))
            out.append(_case(render_expr(sib), sib, lambda sib=sib: _agree(
                {render_expr(base): _uc(eval_expr(base)), render_expr(sib): _uc(eval_expr(sib))})))
        return out

    return cases


def _thm_bool(R: FiniteRing) -> Outcome:
    Q, _ = C.quotient_ring(R, st.jacobson_radical(R), validate=False)
    uc = _uc(R)
    return _implies(uc, st.is_boolean(Q).holds, {"unituc": uc, "boolean-mod-radical":
                                                  st.is_boolean(Q).holds})


def _cor_nil(R: FiniteRing) -> Outcome:
    names = ("unituc", "strongly-nil-clean", "strongly-uniquely-clean", "strongly-j-clean")
    return _agree({p: has_property(R, p).holds for p in names})


def _thm_div(R: FiniteRing) -> Outcome:
    uc = _uc(R)
    J = st.jacobson_radical(R)
    parts = []
    if st.is_division_ring(R):
        parts.append(1)
        if uc != (R.order == 2):
            return Outcome(False, _mismatch({"unituc": uc, "order-two": R.order == 2}, part=1))
    if len(J) == 1:
        parts.append(2)
        if uc != st.is_boolean(R).holds:
            return Outcome(False, _mismatch({"unituc": uc, "boolean": st.is_boolean(R).holds},
                                            part=2))
    if st.is_local(R).holds:
        parts.append(3)
        residue_two = R.order // len(J) == 2
        if uc != residue_two:
            return Outcome(False, _mismatch({"unituc": uc, "residue-field-F2": residue_two},
                                            part=3))
    Q, _ = C.quotient_ring(R, J, validate=False)
    parts.append(4)
    if uc and not st.is_boolean(Q).holds:
        return Outcome(False, _mismatch({"unituc": uc, "boolean-mod-radical": False}, part=4))
    return Outcome(True, evidence={"parts": parts})


def _thm_grp_cases(entry: CorpusEntry, ids: set) -> list:
    node = entry.node
    if node is None or node.kind != "GR":
        return []

    def run() -> Outcome:
        RG = entry.build()
        base = eval_expr(node.args[0])
        G = eval_group(node.args[1])
        aug = RG._cache.get("augmentation") or C.group_ring(base, G, validate=False)[1]
        uc_rg, uc_r, two = _uc(RG), _uc(base), G.is_two_group
        values = {"unituc(RG)": uc_rg, "unituc(R)": uc_r, "2-group": two}
        if uc_rg:
            delta = aug.kernel()
            inside = bool(st.jacobson_radical(RG).mask()[delta.array()].all())
            values["augmentation-in-radical"] = inside
            if not (uc_r and two and inside):
                return Outcome(False, _mismatch(values, direction=1))
        if uc_r and two and not uc_rg:
            return Outcome(False, _mismatch(values, direction=2))
        return Outcome(True, evidence={"values": values})

    return [Case(entry.id, run)]


def _thm_char(R: FiniteRing) -> Outcome:
    return _agree({"unituc": _uc(R), "oracle": unituc_oracle(R)})


def _lem_corner(R: FiniteRing) -> Optional[Outcome]:
    if not _uc(R):
        return None
    reps = [e for e in _class_reps(R) if e != R.zero]
    for e in reps:
        if not _uc(C.corner_ring(R, e, validate=False)):
            return Outcome(False, {"kind": "corner", "e": e})
    return Outcome(True, evidence={"corners": len(reps)})


def _prop_df(R: FiniteRing) -> Optional[Outcome]:
    if not _uc(R):
        return None
    v = has_property(R, "dedekind-finite")
    if v.holds:
        return Outcome(True)
    return Outcome(False, {"kind": "property", "verdict": v.to_json()})


def _thm_peirce(R: FiniteRing) -> Optional[Outcome]:
    reps = [e for e in _class_reps(R) if e not in (R.zero, R.one)]
    if not reps:
        return None
    uc = _uc(R)
    Jm = st.jacobson_radical(R).mask()
    for e in reps:
        f = _one_minus(R, e)
        values = {
            "unituc": uc,
            "corner-e": _uc(C.corner_ring(R, e, validate=False)),
            "corner-1-e": _uc(C.corner_ring(R, f, validate=False)),
            "eR(1-e)-in-J": bool(Jm[R.mul[R.mul[e, :], f]].all()),
            "(1-e)Re-in-J": bool(Jm[R.mul[R.mul[f, :], e]].all()),
        }
        rhs = all(v for k, v in values.items() if k != "unituc")
        if uc != rhs:
            return Outcome(False, _mismatch(values, e=e))
    return Outcome(True, evidence={"idempotents": reps})


def _cor_ks_cases(entry: CorpusEntry, ids: set) -> list:
    node = entry.node
    if node is None or node.kind != "Ks":
        return []

    def run() -> Outcome:
        R = eval_expr(node.args[0])
        s = node.args[1]
        C.CentralElement(R, s)
        return _agree({"unituc(Ks)": _uc(entry.build()),
                       "unituc(R) and s in J": _uc(R) and _in_radical(R, s)})

    return [Case(entry.id, run)]


def _mns_check(node: Node) -> Outcome:
    n, base, s = node.args
    R = eval_expr(base)
    M = eval_expr(node)
    out = _agree({"unituc(MnS)": _uc(M), "unituc(R) and s in J": _uc(R) and _in_radical(R, s)})
    if out.passed and n == 2:
        k_node = Node("Ks", (base, ring_mul(R, s, s)))
        iso = verify_isomorphism(C.coordinate_hom(M, eval_expr(k_node), [0, 1, 2, 3]))
        if not iso:
            return Outcome(False, {"kind": "isomorphism", "target": render_expr(k_node)})
        out.evidence["isomorphic-to"] = render_expr(k_node)
    return out


def _thm_mns_cases(entry: CorpusEntry, ids: set) -> list:
    node = entry.node
    if node is None or node.kind != "MnS":
        return []
    n, base, s = node.args
    out = [_case(entry.id, node, lambda: _mns_check(node))]
    for k in (2, 3):
        if k != n:
            sib = Node("MnS", (k, base, s))
            out.append(_case(render_expr(sib), sib, lambda sib=sib: _mns_check(sib)))
    return out


def _prop_text_cases(entry: CorpusEntry, ids: set) -> list:
    node = entry.node
    if node is None or node.kind not in ("TrivExt", "PolyQuot", "SkewPolyQuot"):
        return []
    base = node.args[0]
    if node.kind != "TrivExt" and node.args[1] not in (2, 3):
        return []

    def run() -> Outcome:
        values = {render_expr(base): _uc(eval_expr(base)),
                  render_expr(node): _uc(entry.build())}
        for sib in (Node("TrivExt", (base, 1)), Node("PolyQuot", (base, 2))):
            if predicted_order(sib) <= max_order():
                values[render_expr(sib)] = _uc(eval_expr(sib))
        return _agree(values)

    return [_case(entry.id, node, run)]


def _prop_abc_cases(entry: CorpusEntry, ids: set) -> list:
    node = entry.node
    if node is None or node.kind not in ("Anm", "Bnm", "Tnm", "Snm", "Un"):
        return []
    base = node.args[-1]
    return [Case(entry.id, lambda: _agree({render_expr(base): _uc(eval_expr(base)),
                                            entry.id: _uc(entry.build())}))]


ISO3_SHAPES = ((2, 2), (2, 3), (3, 2))
ISO3_BASES = ("Z(2)", "Z(4)")


def _lem_iso3_cases(entry: CorpusEntry, ids: set) -> list:
    node = entry.node
    if node is None:
        return []
    if node.kind == "Un" and node.args[0] == 4 and render_expr(node.args[1]) in ISO3_BASES:
        def shape() -> Outcome:
            R = eval_expr(node.args[1])
            h = C.coordinate_hom(entry.build(), C.example3_shape(R, validate=False), range(6))
            iso = verify_isomorphism(h)
            return Outcome(iso, None if iso else {"kind": "isomorphism", "map": "shape"},
                           {"map": "shape", "isomorphism": iso} if iso else None)
        return [Case(entry.id, shape)]
    pairs = {"Anm": ("Anm", "Tnm"), "Tnm": ("Anm", "Tnm"), "Bnm": ("Bnm", "Snm"),
             "Snm": ("Bnm", "Snm")}
    if node.kind not in pairs:
        return []
    n, m, base = node.args
    if (n, m) not in ISO3_SHAPES or render_expr(base) not in ISO3_BASES:
        return []
    src_kind, dst_kind = pairs[node.kind]
    src, dst = Node(src_kind, node.args), Node(dst_kind, node.args)
    name = "phi" if src_kind == "Anm" else "psi"

    def run() -> Outcome:
        A, T = eval_expr(src), eval_expr(dst)
        if name == "phi":
            perm = list(range(n + m - 1))
        else:
            perm = [i * n + j for i, j in C._snm_layout(n, m)[1]]
        iso = verify_isomorphism(C.coordinate_hom(A, T, perm))
        if not iso:
            return Outcome(False, {"kind": "isomorphism", "map": name,
                                   "source": render_expr(src), "target": render_expr(dst)})
        return Outcome(True, evidence={"map": name, "source": render_expr(src),
                                       "target": render_expr(dst)})

    return [_case(f"{name}:{render_expr(src)}", src, run)]


# Fixed sample of factor pairs for the product lemma.
PRODUCT_SAMPLES = (
    ("Z(2)", "Z(3)"), ("Z(2)", "Z(4)"), ("Z(4)", "Z(8)"), ("Z(3)", "GF(2,2)"),
    ("T(2,Z(2))", "Z(2)"), ("M(2,Z(2))", "Z(2)"), ("GR(Z(2),C(2))", "Z(4)"),
    ("Sn(3,Z(2))", "Z(3)"),
)


def _lem_prod_cases(entry: CorpusEntry, ids: set) -> list:
    node = entry.node
    if node is None:
        return []
    out = []
    if node.kind == "Prod":
        factors = node.args
        out.append(_case(entry.id, node, lambda: _prod_check(node, factors)))
    for a, b in PRODUCT_SAMPLES:
        if entry.id == a and b in ids:
            pn = parse_expr(f"Prod({a},{b})")
            out.append(_case(render_expr(pn), pn, lambda pn=pn: _prod_check(pn, pn.args)))
    return out


def _prod_check(node: Node, factors) -> Outcome:
    parts = {render_expr(f): _uc(eval_expr(f)) for f in factors}
    whole = _uc(eval_expr(node))
    if whole != all(parts.values()):
        return Outcome(False, _mismatch({"product": whole, **parts}))
    return Outcome(True, evidence={"values": {"product": whole, **parts}})


@dataclass(frozen=True)
class Theorem:
    id: str
    title: str
    cases: Callable[[CorpusEntry, set], list]


REGISTRY = {t.id: t for t in (
    Theorem("LEM-PROD", "products are UnitUC exactly when every factor is", _lem_prod_cases),
    Theorem("LEM-CONJ", "u^-1 (1-e) u = f for idempotents with u = e - f a unit", _whole(_lem_conj)),
    Theorem("EX-ELT", "idempotents and central nilpotents are UnitUC elements", _whole(_ex_elt)),
    Theorem("LEM-ERE", "e + er(1-e) and e + (1-e)re are idempotents conjugate to e",
            _whole(_lem_ere)),
    Theorem("COR-ABEL", "abelian UnitUC equals uniquely clean", _whole(_cor_abel)),
    Theorem("PROP-IMP", "unit sums avoid nonzero idempotents; quotients by ideals in J",
            _whole(_prop_imp)),
    Theorem("EX-MAT", "full matrix rings fail through a unit pair summing to one",
            _ex_mat_cases),
    Theorem("LEM-2J", "2 lies in the radical of a UnitUC ring", _whole(_lem_2j)),
    Theorem("LEM-EPI", "epimorphisms with kernel in J transfer UnitUC both ways",
            _whole(_lem_epi)),
    Theorem("PROP-TRI", "T_n(R) is UnitUC exactly when R is", _family_equivalence("T", (1, 2, 3), 1)),
    Theorem("THM-BOOL", "UnitUC implies R/J Boolean", _whole(_thm_bool)),
    Theorem("COR-NIL", "UnitUC, strongly nil-clean, strongly uniquely clean, strongly J-clean agree",
            _whole(_cor_nil)),
    Theorem("THM-DIV", "division, semisimple and local cases", _whole(_thm_div)),
    Theorem("THM-GRP", "RG is UnitUC exactly when R is and G is a 2-group", _thm_grp_cases),
    Theorem("THM-CHAR", "UnitUC equals exchange with R/J Boolean", _whole(_thm_char)),
    Theorem("LEM-CORNER", "corners eRe of UnitUC rings are UnitUC", _whole(_lem_corner)),
    Theorem("PROP-DF", "UnitUC rings are Dedekind finite", _whole(_prop_df)),
    Theorem("THM-MOR-PEIRCE", "Peirce corners and off-diagonal parts characterize UnitUC",
            _whole(_thm_peirce)),
    Theorem("COR-KS", "K_s(R) is UnitUC exactly when R is and s is in J", _cor_ks_cases),
    Theorem("THM-MNS", "M_n(R;s) is UnitUC exactly when R is and s is in J", _thm_mns_cases),
    Theorem("PROP-TEXT", "trivial extensions and truncated polynomial rings track the base",
            _prop_text_cases),
    Theorem("PROP-SN", "S_n(R) is UnitUC exactly when R is", _family_equivalence("Sn", (2, 3, 4), 1)),
    Theorem("PROP-ABC", "A_nm, B_nm, T_nm, S_nm and U_n track the base ring", _prop_abc_cases),
    Theorem("LEM-ISO3", "phi: A_nm -> T_nm and psi: B_nm -> S_nm are isomorphisms",
            _lem_iso3_cases),
)}


# Running


def _plan(theorem: Theorem, corpus: list) -> list:
    ids = {e.id for e in corpus}
    seen, plan = set(), []
    for entry in corpus:
        for item in theorem.cases(entry, ids):
            if item.ring_id in seen:
                continue
            seen.add(item.ring_id)
            plan.append(item)
    return plan


def _execute(theorem_id: str, item) -> Optional[object]:
    if isinstance(item, Skipped):
        return item
    t0 = time.perf_counter()
    try:
        out = item.run()
    except Exception as exc:  # failures are data
        out = Outcome(False, {"kind": "error", "message": f"{type(exc).__name__}: {exc}"})
    if out is None:
        return None
    return TheoremCheckResult(theorem_id, item.ring_id, out.passed,
                              None if out.passed else out.witness,
                              time.perf_counter() - t0, out.evidence)


def _run_many(theorem_ids: list, corpus: list, jobs: int) -> list:
    plans = [(tid, item) for tid in theorem_ids for item in _plan(REGISTRY[tid], corpus)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            done = list(pool.map(lambda p: _execute(*p), plans))
    else:
        done = [_execute(*p) for p in plans]
    runs = {tid: TheoremRun(tid, [], []) for tid in theorem_ids}
    for (tid, _), res in zip(plans, done):
        if isinstance(res, Skipped):
            runs[tid].skipped.append(res)
        elif res is not None:
            runs[tid].results.append(res)
    return [runs[tid] for tid in theorem_ids]


def run_theorem(theorem_id: str, corpus: Optional[list] = None, jobs: int = 1) -> TheoremRun:
    if theorem_id not in REGISTRY:
        raise KeyError(f"unknown theorem id {theorem_id!r}")
    if corpus is None:
        corpus = default_corpus()
    return _run_many([theorem_id], corpus, jobs)[0]


def run_all(corpus: Optional[list] = None, jobs: int = 1, theorems=None) -> SuiteReport:
    """Run the registered theorems; theorems with nothing to check are left out."""
    if corpus is None:
        corpus = default_corpus()
    ids = list(theorems or REGISTRY)
    for tid in ids:
        if tid not in REGISTRY:
            raise KeyError(f"unknown theorem id {tid!r}")
    t0 = time.perf_counter()
    runs = [r for r in _run_many(ids, corpus, jobs) if r.results or r.skipped]
    return SuiteReport(runs, time.perf_counter() - t0)


def check_expectations(corpus: list) -> list:
    """Entries whose computed verdicts differ from their recorded expectations."""
    bad = []
    for entry in corpus:
        R = entry.build()
        for prop, want in entry.expected.items():
            got = has_property(R, prop).holds
            if got != want:
                bad.append({"ring": entry.id, "property": prop, "expected": want, "got": got})
    return bad


# Witness replay


def replay_check(R: FiniteRing, witness: dict) -> bool:
    """Re-derive a theorem-check witness using element arithmetic only.

    Returns True when the witness reproduces the violation it reports.
    """
    kind = witness.get("kind")
    if kind == "conjugation":
        e, f, u, ui = witness["e"], witness["f"], witness["u"], witness["u_inv"]
        one_minus_e = _py_sub(R, R.one, e)
        lhs = ring_mul(R, ring_mul(R, ui, one_minus_e), u)
        return (_py_idempotent(R, e) and _py_idempotent(R, f) and _py_sub(R, e, f) == u
                and ring_mul(R, u, ui) == R.one and ring_mul(R, ui, u) == R.one and lhs != f)
    if kind == "element":
        pairs = _py_pairs(R, witness["element"])
        if not pairs:
            return True
        first = pairs[0][0]
        return any(not _py_conjugate(R, e, first) for e, _ in pairs[1:])
    if kind == "peirce-conjugate":
        e, r = witness["e"], witness["r"]
        ce = _py_sub(R, R.one, e)
        prod = (ring_mul(R, ring_mul(R, e, r), ce) if witness["side"] == "right"
                else ring_mul(R, ring_mul(R, ce, r), e))
        f = ring_add(R, e, prod)
        return not _py_idempotent(R, f) or not _py_conjugate(R, f, e)
    if kind == "unit-sum":
        e, u, v = witness["corner"], witness["u"], witness["v"]
        s = ring_add(R, u, v)

        def corner_unit(x: int) -> bool:
            return any(ring_mul(R, x, y) == e and ring_mul(R, y, x) == e
                       and ring_mul(R, ring_mul(R, e, y), e) == y for y in R.elements)

        in_corner = all(ring_mul(R, ring_mul(R, e, x), e) == x for x in (u, v))
        return (s == witness["sum"] and s != R.zero and _py_idempotent(R, s)
                and in_corner and corner_unit(u) and corner_unit(v))
    if kind == "radical":
        x, r = witness["element"], witness["r"]
        return not _py_unit(R, _py_sub(R, R.one, ring_mul(R, r, x)))
    if kind == "property":
        from .classify import PropertyVerdict

        v = witness["verdict"]
        return replay_witness(R, PropertyVerdict(v["property"], v["holds"], v["witness"]))
    return False


# Default corpus


def _entry(expr: str, unituc: bool, source: str) -> CorpusEntry:
    return CorpusEntry(expr, expr, {"unituc": unituc}, {"unituc": source})


def default_corpus() -> list:
    """Registered rings with their expected UnitUC verdicts.

    Provenance names the registry check that predicts the verdict; every verdict
    is also confirmed by the exhaustive classifier (``check_expectations``).
    """
    rows = [
        ("Z(2)", True, "COR-NIL: Boolean ring"),
        ("Z(3)", False, "THM-DIV(1): field of order 3"),
        ("Z(4)", True, "THM-DIV(3): local, residue field F2"),
        ("Z(8)", True, "THM-DIV(3): local, residue field F2"),
        ("Z(9)", False, "THM-DIV(3): local, residue field F3"),
        ("GF(2,2)", False, "THM-DIV(1): field of order 4"),
        ("GF(2,3)", False, "THM-DIV(1): field of order 8"),
        ("Prod(Z(2),Z(2))", True, "LEM-PROD"),
        ("Prod(Z(2),Z(3))", False, "LEM-PROD"),
        ("Prod(Z(4),Z(8))", True, "LEM-PROD"),
        ("M(2,Z(2))", False, "EX-MAT"),
        ("M(2,Z(4))", False, "EX-MAT"),
        ("T(2,Z(2))", True, "PROP-TRI"),
        ("T(3,Z(2))", True, "PROP-TRI"),
        ("T(2,Z(4))", True, "PROP-TRI"),
        ("T(2,Z(3))", False, "PROP-TRI"),
        ("T(3,Z(4))", True, "PROP-TRI"),
        ("Sn(3,Z(2))", True, "PROP-SN"),
        ("Sn(3,Z(3))", False, "PROP-SN"),
        ("Ks(Z(2),0)", True, "COR-KS: s = 0 in J"),
        ("Ks(Z(2),1)", False, "COR-KS: s = 1 not in J"),
        ("Ks(Z(4),0)", True, "COR-KS: s = 0 in J"),
        ("Ks(Z(4),1)", False, "COR-KS: s = 1 not in J"),
        ("Ks(Z(4),2)", True, "COR-KS: s = 2 in J"),
        ("Ks(Z(4),3)", False, "COR-KS: s = 3 not in J"),
        ("MnS(2,Z(2),0)", True, "THM-MNS: s = 0 in J"),
        ("MnS(2,Z(2),1)", False, "THM-MNS: s = 1 not in J"),
        ("MnS(2,Z(4),0)", True, "THM-MNS: s = 0 in J"),
        ("MnS(2,Z(4),1)", False, "THM-MNS: s = 1 not in J"),
        ("MnS(2,Z(4),2)", True, "THM-MNS: s = 2 in J"),
        ("MnS(2,Z(4),3)", False, "THM-MNS: s = 3 not in J"),
        ("MnS(3,Z(2),0)", True, "THM-MNS: s = 0 in J"),
        ("TrivExt(Z(4),1)", True, "PROP-TEXT"),
        ("TrivExt(Z(3),1)", False, "PROP-TEXT"),
        ("TrivExt(Z(2),2)", True, "PROP-TEXT"),
        ("GR(Z(2),C(2))", True, "THM-GRP: 2-group over F2"),
        ("GR(Z(2),C(4))", True, "THM-GRP: 2-group over F2"),
        ("GR(Z(4),C(2))", True, "THM-GRP: 2-group over Z4"),
        ("GR(Z(2),GxG(C(2),C(2)))", True, "THM-GRP: 2-group over F2"),
        ("GR(Z(2),C(3))", False, "THM-GRP: C3 is not a 2-group"),
        ("GR(GF(2,2),C(2))", False, "THM-GRP: GF(4) is not UnitUC"),
        ("PolyQuot(Z(2),2)", True, "PROP-TEXT"),
        ("PolyQuot(Z(2),3)", True, "PROP-TEXT: truncation n = 3"),
        ("PolyQuot(Z(3),2)", False, "PROP-TEXT"),
        ("SkewPolyQuot(GF(2,2),2,frobenius)", False, "PROP-TEXT: base GF(4) not UnitUC"),
        ("SkewPolyQuot(Z(4),3,pow(1))", True, "PROP-TEXT: truncation n = 3"),
        ("Anm(2,2,Z(2))", True, "PROP-ABC"),
        ("Anm(2,3,Z(4))", True, "PROP-ABC"),
        ("Anm(3,2,Z(2))", True, "PROP-ABC"),
        ("Anm(2,2,Z(3))", False, "PROP-ABC"),
        ("Bnm(2,2,Z(2))", True, "PROP-ABC"),
        ("Bnm(2,3,Z(2))", True, "PROP-ABC"),
        ("Bnm(3,2,Z(4))", True, "PROP-ABC"),
        ("Bnm(2,2,Z(3))", False, "PROP-ABC"),
        ("Tnm(2,2,Z(4))", True, "PROP-ABC"),
        ("Tnm(3,2,Z(2))", True, "PROP-ABC"),
        ("Snm(2,3,Z(2))", True, "PROP-ABC"),
        ("Snm(2,2,Z(4))", True, "PROP-ABC"),
        ("Un(3,Z(2))", True, "PROP-ABC"),
        ("Un(4,Z(2))", True, "PROP-ABC"),
        ("Un(4,Z(4))", True, "PROP-ABC"),
        ("Corner(M(2,Z(2)),8)", True, "derived: corner at e11 is F2"),
        ("Quot(Z(8),[4])", True, "derived: quotient is Z4"),
        ("Quot(T(2,Z(2)),[2])", True, "derived: quotient is F2 x F2"),
    ]
    return [_entry(expr, uc, src) for expr, uc, src in rows]


def load_corpus(path) -> list:
    """Read a corpus file: a JSON list of ``{"id", "expr", "expected", "provenance"}``."""
    doc = json.loads(Path(path).read_text())
    return [CorpusEntry(d.get("id", d["expr"]), d["expr"], dict(d.get("expected", {})),
                        dict(d.get("provenance", {}))) for d in doc]


def save_corpus(corpus: list, path) -> None:
    Path(path).write_text(json.dumps([e.to_json() for e in corpus], indent=1))
