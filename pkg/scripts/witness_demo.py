#!/usr/bin/env python3
"""Walk through the main verifiers on small hand-built instances and print
their reports.  A readable tour of the library, not a test."""

import json
from fractions import Fraction

from toricover import (
    Divisor,
    IntersectionQuery,
    LatticeCover,
    LatticeModel,
    ample_from_offsets,
    axes_witness,
    construct_standard,
    intersection_number,
    is_principal,
    jsonio,
    kkm_lebesgue_witness,
    kkm_witness,
    lebesgue_witness,
    perturb,
    presentation,
    shifted_brick_cover,
)
from toricover import harness


def show(title, report):
    print(f"--- {title}")
    print(json.dumps(jsonio.report_to_json(report), indent=2)[:600])
    print()


def main():
    # the cube's divisor ring in action
    q2 = construct_standard("cube", 2)
    pres = presentation(q2)
    print("minimal non-faces of the square:", [sorted(s) for s in pres.minimal_nonfaces])
    c1, c2 = Divisor.on_facet(q2, 0), Divisor.on_facet(q2, 2)
    print("c1.c2 =", intersection_number(IntersectionQuery(q2, (c1, c2))))
    print("c1.c1 =", intersection_number(IntersectionQuery(q2, (c1, c1))))
    print("F+ - F- principal via v =", is_principal(q2, Divisor.on_facet(q2, 1) - c1))
    print()

    # a two-slab cover has a spanning slab; the brick pattern does not qualify
    model = LatticeModel("cube", 2, 8)
    slabs = LatticeCover(
        model,
        {
            "bottom": {p for p in model.points() if p[1] <= 4},
            "top": {p for p in model.points() if p[1] >= 4},
        },
    )
    show("lebesgue on two slabs", lebesgue_witness(slabs))
    show("lebesgue on staggered bricks", lebesgue_witness(shifted_brick_cover(2, 8)))

    # a tiny simplex family leaves a complement meeting every edge
    smodel = LatticeModel("simplex", 2, 6)
    family = LatticeCover(smodel, {"corner": {(6, 0, 0), (5, 1, 0), (5, 0, 1)}})
    show("kkm on a corner family (k=1)", kkm_witness(family, 1))

    # n sets covering the cube: some component spans its own axis
    cover = harness.dilated_partition_cover(model, 2, seed=1)
    show("axes on a dilated partition", axes_witness(cover))

    # the general polytope verifier with inessentiality certificates
    p = perturb(construct_standard("cube", 3), Fraction(1, 100), seed=1)
    pcover, eps = harness.polytope_sample_cover(p, 6, 2, seed=1)
    show("kkm-lebesgue on perturbed cube sample", kkm_lebesgue_witness(p, pcover, eps))

    h = ample_from_offsets(p)
    print("ample divisor on the perturbed cube:", [str(c) for c in h.coeffs])


if __name__ == "__main__":
    main()
