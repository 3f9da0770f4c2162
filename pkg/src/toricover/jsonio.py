"""JSON formats for every CLI surface.

Rationals travel as strings "p/q" (plain integers allowed), never as floats.
Facet ids are the positions in the polytope's facet list; JSON object keys
are their decimal strings.  Stable facet ordering is the input ordering.
"""

from __future__ import annotations

from fractions import Fraction

from .chow import Divisor, RingPresentation
from .covering import LatticeCover, LatticeModel, PointCloudCover, WitnessReport
from .polytope import SimplePolytope, from_halfspaces


def frac_from_str(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ValueError(f"rationals must be strings or integers, got {s!r}")
    return Fraction(s)


def frac_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def polytope_to_json(p: SimplePolytope) -> dict:
    return {
        "dim": p.dim,
        "facets": [
            {"normal": list(u), "offset": frac_to_str(c)}
            for u, c in zip(p.normals, p.offsets)
        ],
    }


def polytope_from_json(data: dict) -> SimplePolytope:
    facets = data["facets"]
    normals = [tuple(int(x) for x in f["normal"]) for f in facets]
    offsets = [frac_from_str(f["offset"]) for f in facets]
    p = from_halfspaces(normals, offsets)
    if p.dim != int(data["dim"]):
        raise ValueError(f"dim field {data['dim']} does not match normals")
    return p


def divisor_to_json(d: Divisor) -> dict:
    return {"coeffs": {str(i): frac_to_str(c) for i, c in enumerate(d.coeffs)}}


def divisor_from_json(p: SimplePolytope, data: dict) -> Divisor:
    return Divisor.from_map(
        p, {int(k): frac_from_str(v) for k, v in data["coeffs"].items()}
    )


def presentation_to_json(pres: RingPresentation) -> dict:
    return {
        "generators": [f"c_{i}" for i in pres.generators],
        "linear_relations": [[int(x) for x in row] for row in pres.linear_relations],
        "minimal_nonfaces": [sorted(s) for s in pres.minimal_nonfaces],
    }


def cover_to_json(cover: LatticeCover, **extra) -> dict:
    model = cover.model
    data = {
        "model": {"kind": model.kind, "n": model.n, "r": model.r},
        "sets": {
            name: sorted(list(p) for p in pts) for name, pts in cover.sets.items()
        },
    }
    data.update(extra)
    return data


def cover_from_json(data: dict) -> LatticeCover:
    m = data["model"]
    model = LatticeModel(m["kind"], int(m["n"]), int(m["r"]))
    sets = {
        name: frozenset(tuple(int(x) for x in p) for p in pts)
        for name, pts in data["sets"].items()
    }
    return LatticeCover(model, sets)


def point_cover_to_json(p: SimplePolytope, cover: PointCloudCover, eps=None) -> dict:
    index = {pt: i for i, pt in enumerate(cover.sample)}
    data = {
        "polytope": polytope_to_json(p),
        "sample": [[frac_to_str(x) for x in pt] for pt in cover.sample],
        "sets": {
            name: sorted(index[pt] for pt in pts)
            for name, pts in cover.sets.items()
        },
    }
    if eps is not None:
        data["eps"] = frac_to_str(eps)
    return data


def point_cover_from_json(data: dict):
    """Returns (polytope, PointCloudCover, eps or None)."""
    p = polytope_from_json(data["polytope"])
    sample = tuple(
        tuple(frac_from_str(x) for x in pt) for pt in data["sample"]
    )
    sets = {}
    for name, idxs in data["sets"].items():
        for i in idxs:
            if not 0 <= int(i) < len(sample):
                raise ValueError(f"set {name!r}: sample index {i} out of range")
        sets[name] = frozenset(sample[int(i)] for i in idxs)
    eps = frac_from_str(data["eps"]) if "eps" in data else None
    return p, PointCloudCover(sample, sets), eps


def to_jsonable(obj):
    """Recursively convert payload values into JSON-ready structures."""
    if isinstance(obj, Fraction):
        return frac_to_str(obj)
    if isinstance(obj, Divisor):
        return divisor_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted(to_jsonable(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def report_to_json(report: WitnessReport) -> dict:
    return {"verdict": report.verdict, "payload": to_jsonable(report.payload)}
