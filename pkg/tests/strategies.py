"""Hypothesis strategies for construction expressions."""

from __future__ import annotations

from hypothesis import strategies as hs

from finring.dsl import Node

small = hs.integers(1, 4)
element = hs.integers(0, 20)

groups = hs.recursive(
    hs.builds(lambda n: Node("C", (n,)), small),
    lambda g: hs.builds(lambda a, b: Node("GxG", (a, b)), g, g),
    max_leaves=3,
)

alphas = hs.one_of(
    hs.just(Node("frobenius")),
    hs.builds(lambda j: Node("pow", (j,)), hs.integers(0, 5)),
    hs.builds(lambda xs: Node("explicit", (tuple(xs),)), hs.lists(element, min_size=1, max_size=5)),
)

leaves = hs.one_of(
    hs.builds(lambda n: Node("Z", (n,)), hs.integers(2, 12)),
    hs.builds(lambda p, k: Node("GF", (p, k)), hs.sampled_from([2, 3, 5]), hs.integers(1, 3)),
    hs.builds(lambda p, k, irr: Node("GF", (p, k, tuple(irr))), hs.sampled_from([2, 3]),
              hs.integers(1, 3), hs.lists(hs.integers(0, 2), min_size=2, max_size=4)),
)


def _extend(r):
    pairs = hs.tuples(small, small)
    return hs.one_of(
        hs.builds(lambda xs: Node("Prod", tuple(xs)), hs.lists(r, min_size=2, max_size=3)),
        hs.builds(lambda k, n, x: Node(k, (n, x)), hs.sampled_from(["M", "T", "Sn"]), small, r),
        hs.builds(lambda x, s: Node("Ks", (x, s)), r, element),
        hs.builds(lambda n, x, s: Node("MnS", (n, x, s)), hs.integers(2, 4), r, element),
        hs.builds(lambda x: Node("TrivExt", (x,)), r),
        hs.builds(lambda x, k: Node("TrivExt", (x, k)), r, small),
        hs.builds(lambda x, g: Node("GR", (x, g)), r, groups),
        hs.builds(lambda x, n: Node("PolyQuot", (x, n)), r, small),
        hs.builds(lambda x, n, a: Node("SkewPolyQuot", (x, n, a)), r, small, alphas),
        hs.builds(lambda k, nm, x: Node(k, (nm[0], nm[1], x)), hs.sampled_from(["Tnm", "Snm"]),
                  pairs, r),
        hs.builds(lambda k, nm, x: Node(k, (nm[0] + 1, nm[1] + 1, x)),
                  hs.sampled_from(["Anm", "Bnm"]), pairs, r),
        hs.builds(lambda n, x: Node("Un", (n, x)), hs.integers(2, 5), r),
        hs.builds(lambda x, e: Node("Corner", (x, e)), r, element),
        hs.builds(lambda x, gs: Node("Quot", (x, tuple(gs))), r,
                  hs.lists(element, min_size=0, max_size=3)),
    )


exprs = hs.recursive(leaves, _extend, max_leaves=4)
