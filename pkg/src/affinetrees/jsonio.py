"""JSON encoding and decoding for every value that crosses the CLI
boundary.  All numbers are exact strings ('p/q') or term lists for
exponential sums -- never floats -- so identical inputs always produce
byte-identical outputs.
"""

from __future__ import annotations

from fractions import Fraction

from .embedding import AffineRep
from .errors import DimensionMismatch
from .ordered import LexFamily, LexVec, Product, Scalars, Space
from .scalars import ExpSum, rat_from_str, rat_to_str
from .trimat import TriMat
from .triangular import TriangularElement


def scalar_to_json(value):
    if isinstance(value, ExpSum):
        return [
            {"coeff": rat_to_str(c), "exp": rat_to_str(q)} for q, c in value.terms()
        ]
    return rat_to_str(value)


def scalar_from_json(obj):
    if isinstance(obj, list):
        return ExpSum(
            [(rat_from_str(t["exp"]), rat_from_str(t["coeff"])) for t in obj]
        )
    return rat_from_str(obj)


def mat_to_json(mat: TriMat) -> dict:
    return {
        "n": mat.n,
        "entries": [[scalar_to_json(v) for v in row] for row in mat.rows],
    }


def mat_from_json(obj) -> TriMat:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ValueError("matrix JSON must be an object with an 'entries' field")
    entries = obj["entries"]
    mat = TriMat([[scalar_from_json(v) for v in row] for row in entries])
    if "n" in obj and obj["n"] != mat.n:
        raise DimensionMismatch(
            f"declared dimension {obj['n']} but entries are {mat.n}x{mat.n}"
        )
    return mat


def affine_rep_to_json(rep: AffineRep) -> dict:
    return {"n": rep.n, "m": rep.m, "matrix": mat_to_json(rep.matrix)}


def affine_rep_from_json(obj) -> AffineRep:
    return AffineRep(obj["n"], obj["m"], mat_from_json(obj["matrix"]))


def triangular_to_json(g: TriangularElement) -> dict:
    return {
        "n": g.n,
        "u": mat_to_json(g.u),
        "diag_exponents": [rat_to_str(q) for q in g.exponents],
    }


def triangular_from_json(obj) -> TriangularElement:
    return TriangularElement(
        obj["n"],
        mat_from_json(obj["u"]),
        tuple(rat_from_str(q) for q in obj["diag_exponents"]),
    )


# -- spaces and lexicographic values -------------------------------------------


def space_to_json(space: Space):
    if isinstance(space, Scalars):
        return space.kind
    if isinstance(space, Product):
        return {"product": [space_to_json(f) for f in space.factors]}
    if isinstance(space, LexFamily):
        return {
            "family": {
                "index": space_to_json(space.index),
                "fiber": space_to_json(space.fiber),
            }
        }
    raise ValueError(f"unknown space: {space!r}")


def space_from_json(obj) -> Space:
    if isinstance(obj, str):
        return Scalars(obj)
    if isinstance(obj, dict) and "product" in obj:
        return Product(*(space_from_json(f) for f in obj["product"]))
    if isinstance(obj, dict) and "family" in obj:
        return LexFamily(
            space_from_json(obj["family"]["index"]),
            space_from_json(obj["family"]["fiber"]),
        )
    raise ValueError(f"unknown space descriptor: {obj!r}")


def _value_to_json(space: Space, value):
    if isinstance(space, Scalars):
        if space.kind == "Z":
            return str(value)
        return scalar_to_json(value)
    if isinstance(space, Product):
        return [_value_to_json(f, v) for f, v in zip(space.factors, value)]
    if isinstance(space, LexFamily):
        return [
            {
                "index": _value_to_json(space.index, idx),
                "value": _value_to_json(space.fiber, v),
            }
            for idx, v in value
        ]
    raise ValueError(f"unknown space: {space!r}")


def _value_from_json(space: Space, obj):
    if isinstance(space, Scalars):
        if space.kind == "Z":
            return int(str(obj))
        return scalar_from_json(obj)
    if isinstance(space, Product):
        return tuple(_value_from_json(f, v) for f, v in zip(space.factors, obj))
    if isinstance(space, LexFamily):
        return tuple(
            (
                _value_from_json(space.index, item["index"]),
                _value_from_json(space.fiber, item["value"]),
            )
            for item in obj
        )
    raise ValueError(f"unknown space: {space!r}")


def lexvec_to_json(vec: LexVec) -> dict:
    return {
        "index_space": space_to_json(vec.space),
        "support": _value_to_json(vec.space, vec.value),
    }


def lexvec_from_json(obj) -> LexVec:
    space = space_from_json(obj["index_space"])
    return LexVec(space, _value_from_json(space, obj["support"]))


# -- wreath elements -------------------------------------------------------------
# The fiber group is abstract, so callers supply the codec for its
# elements; codecs for the shipped bundles live below.


def wreath_elem_to_json(group, elem, h_to_json) -> dict:
    return {
        "shift": _value_to_json(group.index_space, elem.shift),
        "support": [
            {"index": _value_to_json(group.index_space, idx), "h": h_to_json(h)}
            for idx, h in elem.support
        ],
    }


def wreath_elem_from_json(group, obj, h_from_json):
    shift = _value_from_json(group.index_space, obj["shift"])
    pairs = [
        (_value_from_json(group.index_space, item["index"]), h_from_json(item["h"]))
        for item in obj["support"]
    ]
    return group.element(shift, pairs)


def translation_h_codec(bundle):
    """Codec for translation-bundle elements (values of the acting group)."""
    space = bundle.point_space
    return (
        lambda h: _value_to_json(space, h),
        lambda obj: _value_from_json(space, obj),
    )


def matrix_h_codec(bundle):
    """Codec for matrix-bundle elements via their affine matrices."""
    from .actions import from_affine_matrix

    return (
        lambda h: mat_to_json(h.to_affine_matrix()),
        lambda obj: from_affine_matrix(mat_from_json(obj)),
    )
