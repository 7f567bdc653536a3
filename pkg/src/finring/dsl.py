"""Construction expressions: ``GR(Z(4),C(2))``, ``Ks(Z(4),2)``, ...

Grammar::

    expr  := Z(n) | GF(p,k[,irr]) | Prod(expr,expr[,...]) | M(n,expr) | T(n,expr)
           | Sn(n,expr) | Ks(expr,s) | MnS(n,expr,s) | TrivExt(expr[,k]) | GR(expr,group)
           | PolyQuot(expr,n) | SkewPolyQuot(expr,n,alpha) | Tnm(n,m,expr) | Snm(n,m,expr)
           | Un(n,expr) | Anm(n,m,expr) | Bnm(n,m,expr) | Corner(expr,e) | Quot(expr,[gens])
    group := C(n) | GxG(group,group)
    alpha := frobenius | pow(j) | explicit([...])

Error positions are 1-based character offsets.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Optional

from . import constructors as C
from .ring import FiniteRing, RingError, check_cap
from .structure import ideal_closure


class ParseError(Exception):
    """Syntax, arity or integer-range error in an expression."""

    def __init__(self, kind: str, pos: int, message: str, expected=()):
        self.kind = kind
        self.pos = pos
        self.expected = tuple(sorted(expected))
        super().__init__(f"{kind} error at offset {pos}: {message}")


@dataclass(frozen=True)
class Node:
    kind: str
    args: tuple = ()


# (type, minimum) per parameter; a trailing "?" marks an optional parameter.
RING_SIGS = {
    "Z": [("int", 2)],
    "GF": [("int", 2), ("int", 1), ("list?", 0)],
    "Prod": None,  # two or more rings
    "M": [("int", 1), ("ring", 0)],
    "T": [("int", 1), ("ring", 0)],
    "Sn": [("int", 1), ("ring", 0)],
    "Ks": [("ring", 0), ("int", 0)],
    "MnS": [("int", 2), ("ring", 0), ("int", 0)],
    "TrivExt": [("ring", 0), ("int?", 1)],
    "GR": [("ring", 0), ("group", 0)],
    "PolyQuot": [("ring", 0), ("int", 1)],
    "SkewPolyQuot": [("ring", 0), ("int", 1), ("alpha", 0)],
    "Tnm": [("int", 1), ("int", 1), ("ring", 0)],
    "Snm": [("int", 1), ("int", 1), ("ring", 0)],
    "Un": [("int", 2), ("ring", 0)],
    "Anm": [("int", 2), ("int", 2), ("ring", 0)],
    "Bnm": [("int", 2), ("int", 2), ("ring", 0)],
    "Corner": [("ring", 0), ("int", 0)],
    "Quot": [("ring", 0), ("list", 0)],
}
GROUP_SIGS = {"C": [("int", 1)], "GxG": [("group", 0), ("group", 0)]}
ALPHA_SIGS = {"frobenius": None, "pow": [("int", 0)], "explicit": [("list", 0)]}

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),\[\]]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        i = 0
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                if text[i:].strip() == "":
                    break
                j = i + len(text[i:]) - len(text[i:].lstrip())
                raise ParseError("syntax", j + 1, f"unexpected character {text[j]!r}")
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start + 1))
            i = m.end()
        self.toks.append(("eof", "", len(text) + 1))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str, arity_hint: Optional[str] = None):
        kind, val, pos = self.peek()
        if val == value and kind == "punct":
            return self.next()
        if arity_hint and kind == "punct" and val in (",", ")"):
            raise ParseError("arity", pos, arity_hint, {value})
        raise ParseError("syntax", pos, f"expected {value!r}", {value})

    def integer(self, minimum: int) -> int:
        kind, val, pos = self.next()
        if kind != "int":
            raise ParseError("syntax", pos, "expected an integer", {"integer"})
        n = int(val)
        if n < minimum:
            raise ParseError("range", pos, f"integer {n} below minimum {minimum}")
        return n

    def int_list(self) -> tuple:
        self.expect("[")
        out = []
        if self.peek()[1] == "]":
            self.next()
            return ()
        while True:
            out.append(self.integer(0))
            kind, val, pos = self.next()
            if val == "]":
                return tuple(out)
            if val != ",":
                raise ParseError("syntax", pos, "expected ',' or ']'", {",", "]"})

    def call(self, table: dict, what: str) -> Node:
        kind, name, pos = self.next()
        if kind != "ident" or name not in table:
            raise ParseError("syntax", pos, f"expected a {what} constructor", set(table))
        sig = table[name]
        if sig is None and name == "frobenius":
            return Node("frobenius")
        self.expect("(")
        if sig is None:  # Prod
            args = [self.ring()]
            while self.peek()[1] == ",":
                self.next()
                args.append(self.ring())
            if len(args) < 2:
                raise ParseError("arity", self.peek()[2], "Prod needs at least two factors", {","})
            self.expect(")")
            return Node(name, tuple(args))
        args = []
        for k, (ptype, minimum) in enumerate(sig):
            optional = ptype.endswith("?")
            ptype = ptype.rstrip("?")
            if k:
                if optional and self.peek()[1] == ")":
                    break
                self.expect(",", f"{name} expects {len(sig)} arguments")
            args.append(self.param(ptype, minimum))
        self.expect(")", f"too many arguments for {name}")
        return Node(name, tuple(args))

    def param(self, ptype: str, minimum: int):
        if ptype == "int":
            return self.integer(minimum)
        if ptype == "list":
            return self.int_list()
        if ptype == "ring":
            return self.ring()
        if ptype == "group":
            return self.call(GROUP_SIGS, "group")
        if ptype == "alpha":
            return self.call(ALPHA_SIGS, "endomorphism")
        raise AssertionError(ptype)

    def ring(self) -> Node:
        return self.call(RING_SIGS, "ring")


def parse_expr(text: str) -> Node:
    p = _Parser(text)
    node = p.ring()
    kind, val, pos = p.peek()
    if kind != "eof":
        raise ParseError("syntax", pos, "unexpected trailing input", {"end of input"})
    return node


def render_expr(node) -> str:
    if isinstance(node, int):
        return str(node)
    if isinstance(node, tuple):
        return "[" + ",".join(map(str, node)) + "]"
    if node.kind == "frobenius":
        return "frobenius"
    return f"{node.kind}(" + ",".join(render_expr(a) for a in node.args) + ")"


def predicted_order(node: Node) -> int:
    """Carrier size computed from constructor dimensions, before any allocation."""
    k, a = node.kind, node.args
    if k == "Z":
        return a[0]
    if k == "GF":
        return a[0] ** a[1]
    if k == "Prod":
        out = 1
        for x in a:
            out *= predicted_order(x)
        return out
    if k in ("Corner", "Quot"):
        return predicted_order(a[0])
    if k == "Ks":
        return predicted_order(a[0]) ** 4
    if k == "TrivExt":
        rank = a[1] if len(a) > 1 else 1
        return predicted_order(a[0]) ** (rank + 1)
    if k == "GR":
        return predicted_order(a[0]) ** _group_order(a[1])
    if k in ("PolyQuot", "SkewPolyQuot"):
        return predicted_order(a[0]) ** a[1]
    q = predicted_order(a[-1] if k != "MnS" else a[1])
    n = a[0]
    dims = {"M": n * n, "T": n * (n + 1) // 2, "Sn": 1 + n * (n - 1) // 2, "MnS": n * n,
            "Un": 2 * n - 2}
    if k in dims:
        return q ** dims[k]
    m = a[1]
    return q ** {"Tnm": n + m - 1, "Anm": n + m - 1, "Snm": n * m, "Bnm": n * m}[k]


def _group_order(g: Node) -> int:
    if g.kind == "C":
        return g.args[0]
    return _group_order(g.args[0]) * _group_order(g.args[1])


def eval_group(node: Node) -> C.FiniteGroup:
    if node.kind == "C":
        return C.cyclic_group(node.args[0])
    return C.group_product(eval_group(node.args[0]), eval_group(node.args[1]))


def _alpha(R: FiniteRing, node: Node) -> C.EndomorphismSpec:
    if node.kind == "frobenius":
        return C.frobenius(R)
    if node.kind == "pow":
        return C.pow_endomorphism(R, node.args[0])
    return C.EndomorphismSpec(R, list(node.args[0]), name=render_expr(node))


def _element(R: FiniteRing, x: int) -> int:
    if x >= R.order:
        raise C.ConstructionError(f"element {x} out of range for {R.label} (order {R.order})")
    return x


_memo: dict = {}
_memo_lock = threading.Lock()
_key_locks: dict = {}


def eval_expr(node, memo: bool = True) -> FiniteRing:
    """Build the ring for an expression (text or parsed), reusing earlier builds."""
    if isinstance(node, str):
        node = parse_expr(node)
    check_cap(predicted_order(node))
    if not memo:
        return _build(node, memo)
    key = render_expr(node)
    with _memo_lock:
        if key in _memo:
            return _memo[key]
        lock = _key_locks.setdefault(key, threading.Lock())
    with lock:
        if key not in _memo:
            R = _build(node, memo)
            R.label = key
            with _memo_lock:
                _memo[key] = R
    return _memo[key]


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()
        _key_locks.clear()


def _distinct(S: FiniteRing, R: FiniteRing) -> FiniteRing:
    # memoized rings get relabelled, so never hand back the inner ring itself
    if S is R:
        S = FiniteRing(R.order, R.add, R.mul, R.zero, R.one, R.neg, R.label, R.renderer)
        S._cache.update({k: v for k, v in R._cache.items() if k == "coord-shape"})
    return S


def _build(node: Node, memo: bool) -> FiniteRing:
    k, a = node.kind, node.args
    sub = lambda x: eval_expr(x, memo)  # noqa: E731
    if k == "Z":
        return C.zmod(a[0])
    if k == "GF":
        return C.galois_field(a[0], a[1], list(a[2]) if len(a) > 2 else None)
    if k == "Prod":
        return C.direct_product([sub(x) for x in a])
    if k == "M":
        return C.matrix_ring(a[0], sub(a[1]))
    if k == "T":
        return C.upper_triangular(a[0], sub(a[1]))
    if k == "Sn":
        return C.constant_diag_triangular(a[0], sub(a[1]))
    if k == "Ks":
        R = sub(a[0])
        return C.formal_Ks(R, _element(R, a[1]))
    if k == "MnS":
        R = sub(a[1])
        return C.formal_MnS(a[0], R, _element(R, a[2]))
    if k == "TrivExt":
        return C.trivial_extension(sub(a[0]), a[1] if len(a) > 1 else 1)
    if k == "GR":
        return C.group_ring(sub(a[0]), eval_group(a[1]))[0]
    if k == "PolyQuot":
        return C.poly_quot(sub(a[0]), a[1])
    if k == "SkewPolyQuot":
        R = sub(a[0])
        return C.skew_poly_quot(R, a[1], _alpha(R, a[2]))
    if k == "Tnm":
        return C.family_Tnm(a[0], a[1], sub(a[2]))
    if k == "Snm":
        return C.family_Snm(a[0], a[1], sub(a[2]))
    if k == "Un":
        return C.family_Un(a[0], sub(a[1]))
    if k == "Anm":
        return C.family_Anm(a[0], a[1], sub(a[2]))
    if k == "Bnm":
        return C.family_Bnm(a[0], a[1], sub(a[2]))
    if k == "Corner":
        R = sub(a[0])
        return _distinct(C.corner_ring(R, _element(R, a[1])), R)
    if k == "Quot":
        R = sub(a[0])
        gens = [_element(R, x) for x in a[1]]
        return _distinct(C.quotient_ring(R, ideal_closure(R, gens))[0], R)
    raise RingError(f"unknown constructor {k}")
