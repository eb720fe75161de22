"""Lexicographic wreath products and their affine actions.

For a group H acting affinely (and order-preservingly) on a space V, and
an ordered scalar index group (the integers or rationals), the wreath
product consists of pairs (shift, finitely supported map index -> H).
It acts on the product of the index group with the finitely-supported
maps index -> V: the shift translates the first coordinate, and the
fiber placed at index i of the result is h_{i + shift} applied to the
point fiber at i + shift.  The dilation fixes the first coordinate and
applies the component dilations fiberwise (with the same index shift),
so convex subgroups are shifted rather than stabilised.

H is consumed through a small contract -- identity, multiplication,
inversion, action and dilation on fiber values -- so translation groups,
affine matrix groups and other wreath products all plug in, enabling
iterated constructions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import MatrixAffineAut
from .errors import EmptyLevels, StructureMismatch
from .ordered import LexFamily, LexVec, Product, Scalars
from .trimat import TriMat


class TranslationBundle:
    """An ordered abelian group acting on itself by translation.

    Elements of the acting group are simply values of the space; the
    action is free and isometric (dilation is the identity).
    """

    def __init__(self, space):
        self.point_space = space

    def __eq__(self, other):
        return isinstance(other, TranslationBundle) and self.point_space == other.point_space

    def identity(self):
        return self.point_space.zero()

    def is_identity(self, h) -> bool:
        return self.point_space.is_zero(h)

    def mul(self, a, b):
        return self.point_space.add(a, b)

    def inv(self, a):
        return self.point_space.neg(a)

    def act(self, h, value):
        return self.point_space.add(value, h)

    def dilate(self, h, value):
        return value

    def sample_element(self, rng):
        return self.point_space.coerce(self.point_space.sample(rng))


class MatrixBundle:
    """A group of affine matrix automorphisms acting on a fixed space.

    Elements are :class:`~affinetrees.actions.MatrixAffineAut` values
    sharing one point space; an optional sampler supplies random
    elements for the verification suites.
    """

    def __init__(self, space, sampler=None):
        self.point_space = space
        self._sampler = sampler
        self._identity = None

    def __eq__(self, other):
        return isinstance(other, MatrixBundle) and self.point_space == other.point_space

    def identity(self) -> MatrixAffineAut:
        if self._identity is None:
            n = len(self.point_space.factors)
            zero = Scalars(self.point_space.factors[0].kind).zero()
            self._identity = MatrixAffineAut(
                TriMat.identity(n), (zero,) * n, self.point_space
            )
        return self._identity

    def is_identity(self, h) -> bool:
        return h.is_identity()

    def mul(self, a, b):
        return a.compose(b)

    def inv(self, a):
        return a.invert()

    def act(self, h, value):
        return h.act(LexVec(self.point_space, value)).value

    def dilate(self, h, value):
        return h.dilate(LexVec(self.point_space, value)).value

    def sample_element(self, rng):
        if self._sampler is None:
            raise StructureMismatch("this matrix bundle has no element sampler")
        return self._sampler(rng)


@dataclass(frozen=True)
class WreathElem:
    """(shift, finitely supported map index -> H element).

    ``support`` holds only non-identity H values, sorted by index.
    """

    shift: object
    support: tuple

    def mapping(self) -> dict:
        return dict(self.support)

    def __repr__(self):
        return f"WreathElem(shift={self.shift!r}, support={self.support!r})"


class WreathGroup:
    """The lexicographic wreath product of a base action by a scalar index
    group, together with its affine action."""

    def __init__(self, base, index_space: Scalars):
        if not isinstance(index_space, Scalars) or index_space.kind == "R":
            raise StructureMismatch("wreath index must be the Z or Q scalars")
        self.base = base
        self.index_space = index_space
        self.fiber_space = base.point_space
        self.point_space = Product(index_space, LexFamily(index_space, base.point_space))

    def __eq__(self, other):
        return (
            isinstance(other, WreathGroup)
            and self.base == other.base
            and self.index_space == other.index_space
        )

    # -- elements ----------------------------------------------------------

    def element(self, shift, mapping) -> WreathElem:
        shift = self.index_space.coerce(shift)
        items = mapping.items() if isinstance(mapping, dict) else mapping
        out = {}
        for idx, h in items:
            idx = self.index_space.coerce(idx)
            if idx in out:
                raise StructureMismatch(f"duplicate support index {idx!r}")
            if not self.base.is_identity(h):
                out[idx] = h
        return WreathElem(shift, tuple(sorted(out.items(), key=lambda kv: kv[0])))

    def identity(self) -> WreathElem:
        return WreathElem(self.index_space.zero(), ())

    def is_identity(self, e: WreathElem) -> bool:
        return self.index_space.is_zero(e.shift) and not e.support

    def _check(self, e) -> WreathElem:
        if not isinstance(e, WreathElem):
            raise StructureMismatch(f"not a wreath element: {e!r}")
        return e

    def mul(self, a: WreathElem, b: WreathElem) -> WreathElem:
        """(a_shift, (k_i)) * (b_shift, (h_i)) has map i -> k_{i-b_shift} h_i."""
        self._check(a)
        self._check(b)
        ka, hb = a.mapping(), b.mapping()
        indices = {i + b.shift for i in ka} | set(hb)
        out = {}
        for i in indices:
            k = ka.get(i - b.shift, None)
            h = hb.get(i, None)
            if k is None:
                v = h
            elif h is None:
                v = k
            else:
                v = self.base.mul(k, h)
            if v is not None and not self.base.is_identity(v):
                out[i] = v
        return WreathElem(a.shift + b.shift, tuple(sorted(out.items(), key=lambda kv: kv[0])))

    def inv(self, a: WreathElem) -> WreathElem:
        """(shift, (h_i))**-1 = (-shift, (h_{i+shift}**-1)); checked against
        the multiplication rule by the verification suites."""
        self._check(a)
        out = {}
        for idx, h in a.support:
            out[idx - a.shift] = self.base.inv(h)
        return WreathElem(-a.shift, tuple(sorted(out.items(), key=lambda kv: kv[0])))

    # -- the action ----------------------------------------------------------
    # Contract methods work on raw point-space values so that a wreath
    # group can serve as the base of a further wreath level; the *_vec
    # wrappers take and return LexVec.

    def act(self, g: WreathElem, value):
        """(shift, (h_i)) . (c, (v_i)) = (c + shift, (h_{i+shift} v_{i+shift})_i)."""
        self._check(g)
        c, fam = self.point_space.coerce(value)
        hmap = g.mapping()
        vmap = dict(fam)
        indices = {i - g.shift for i in hmap} | {i - g.shift for i in vmap}
        out = {}
        fiber = self.fiber_space
        for i in indices:
            src = i + g.shift
            v = vmap.get(src, fiber.zero())
            h = hmap.get(src, None)
            if h is not None:
                v = self.base.act(h, v)
            if not fiber.is_zero(v):
                out[i] = v
        return self.point_space.coerce((c + g.shift, out))

    def dilate(self, g: WreathElem, value):
        """First coordinate fixed; fiber at i becomes the h_{i+shift}
        dilation of the fiber at i+shift."""
        self._check(g)
        c, fam = self.point_space.coerce(value)
        hmap = g.mapping()
        out = {}
        fiber = self.fiber_space
        for src, v in fam:
            h = hmap.get(src, None)
            if h is not None:
                v = self.base.dilate(h, v)
            if not fiber.is_zero(v):
                out[src - g.shift] = v
        return self.point_space.coerce((c, out))

    def act_vec(self, g: WreathElem, point: LexVec) -> LexVec:
        if point.space != self.point_space:
            raise StructureMismatch("point lives in a different space")
        return LexVec(self.point_space, self.act(g, point.value))

    def dilate_vec(self, g: WreathElem, delta: LexVec) -> LexVec:
        if delta.space != self.point_space:
            raise StructureMismatch("difference lives in a different space")
        return LexVec(self.point_space, self.dilate(g, delta.value))

    # -- sampling -----------------------------------------------------------

    def sample_element(self, rng) -> WreathElem:
        shift = self.index_space.sample(rng)
        size = rng.randint(0, 2)
        mapping = {}
        for _ in range(size):
            mapping[self.index_space.sample(rng)] = self.base.sample_element(rng)
        return self.element(shift, mapping)

    def sample_nontrivial(self, rng) -> WreathElem:
        while True:
            g = self.sample_element(rng)
            if not self.is_identity(g):
                return g

    def sample_point(self, rng) -> LexVec:
        return LexVec(self.point_space, self.point_space.sample(rng))


def iterated_wreath(levels):
    """Iterated wreath bundle over scalar kinds ('Z' or 'Q').

    One level gives the group translating itself; each further level
    wraps the previous bundle in a :class:`WreathGroup`.
    """
    levels = list(levels)
    if not levels:
        raise EmptyLevels("need at least one level")
    bundle = TranslationBundle(Scalars(levels[0]))
    for kind in levels[1:]:
        bundle = WreathGroup(bundle, Scalars(kind))
    return bundle
