"""Affine automorphisms of lexicographically ordered vector groups.

An affine matrix of dimension N (upper triangular, positive diagonal,
corner entry 1) acts on points with N-1 coordinates.  Matrix row order
and significance order run opposite ways: row N-1 is the most
significant point coordinate, while :class:`~affinetrees.ordered.Product`
spaces list the most significant component first.  The bridge therefore
reverses coordinates when moving between matrices and points.

Diagnostics distinguish *certified* verdicts (the exact matrix predicate)
from *sampled* evidence, since sampling cannot prove universally
quantified claims.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embedding import is_essentially_hyperbolic
from .errors import (
    DimensionMismatch,
    IdentityInput,
    IndexSpaceMismatch,
    NotAffineForm,
)
from .ordered import LexVec, Product, Scalars, lex_distance
from .sampling import trial_rng
from .scalars import ExpSum
from .trimat import TriMat


@dataclass(frozen=True)
class MatrixAffineAut:
    """Dilation matrix plus translation, in matrix coordinate order."""

    dilation: TriMat
    translation: tuple
    space: Product

    def __post_init__(self):
        if len(self.translation) != self.dilation.n:
            raise DimensionMismatch("translation length must match the dilation")
        if len(self.space.factors) != self.dilation.n:
            raise DimensionMismatch("point space size must match the dilation")

    @property
    def dim(self) -> int:
        return self.dilation.n

    def is_identity(self) -> bool:
        return self.dilation == TriMat.identity(
            self.dim, self.dilation.ring_one()
        ) and all(not v for v in self.translation)

    def _mat_apply(self, values, translate: bool):
        xs = tuple(reversed(values))
        rows = self.dilation.rows
        out = []
        for i in range(self.dim):
            acc = rows[i][i] - rows[i][i]
            for j in range(self.dim):
                if rows[i][j] and xs[j]:
                    acc = acc + rows[i][j] * xs[j]
            if translate:
                acc = acc + self.translation[i]
            out.append(acc)
        return tuple(reversed(out))

    def act(self, point: LexVec) -> LexVec:
        if point.space != self.space:
            raise IndexSpaceMismatch("point lives in a different space")
        return LexVec(self.space, self._mat_apply(point.value, translate=True))

    def dilate(self, delta: LexVec) -> LexVec:
        if delta.space != self.space:
            raise IndexSpaceMismatch("difference lives in a different space")
        return LexVec(self.space, self._mat_apply(delta.value, translate=False))

    def compose(self, other: "MatrixAffineAut") -> "MatrixAffineAut":
        """self after other: x -> self(other(x))."""
        if not isinstance(other, MatrixAffineAut) or other.space != self.space:
            raise IndexSpaceMismatch("can only compose over one space")
        dil = self.dilation * other.dilation
        # translations are stored in matrix row order, so no reversal here
        moved = []
        for i in range(self.dim):
            acc = self.translation[i]
            for j in range(i, self.dim):
                if self.dilation.rows[i][j] and other.translation[j]:
                    acc = acc + self.dilation.rows[i][j] * other.translation[j]
            moved.append(acc)
        return MatrixAffineAut(dil, tuple(moved), self.space)

    def invert(self) -> "MatrixAffineAut":
        dil = self.dilation.inverse()
        neg = []
        for i in range(self.dim):
            acc = dil.rows[i][i] - dil.rows[i][i]
            for j in range(i, self.dim):
                if dil.rows[i][j] and self.translation[j]:
                    acc = acc + dil.rows[i][j] * self.translation[j]
            neg.append(-acc)
        return MatrixAffineAut(dil, tuple(neg), self.space)

    def to_affine_matrix(self) -> TriMat:
        n = self.dim
        zero = self.dilation.ring_zero()
        one = self.dilation.ring_one()
        rows = [
            list(self.dilation.rows[i]) + [self.translation[i]] for i in range(n)
        ]
        rows.append([zero] * n + [one])
        return TriMat(rows)


def _fiber_kind(mat: TriMat) -> str:
    if any(isinstance(v, ExpSum) for row in mat.rows for v in row):
        return "R"
    return "Q"


def point_space_for(mat: TriMat, kind: str | None = None) -> Product:
    """Point space acted on by an N x N affine matrix: N-1 scalar factors."""
    kind = kind or _fiber_kind(mat)
    return Product(*([Scalars(kind)] * (mat.n - 1)))


def from_affine_matrix(mat: TriMat, kind: str | None = None) -> MatrixAffineAut:
    """Split an affine matrix into dilation block and translation column."""
    N = mat.n
    if N < 2:
        raise NotAffineForm("affine form needs dimension at least 2")
    if not mat.is_upper_triangular():
        raise NotAffineForm("matrix must be upper triangular")
    if mat.rows[N - 1][N - 1] != 1:
        raise NotAffineForm("corner entry must be 1")
    if not mat.has_positive_diagonal():
        raise NotAffineForm("diagonal must be positive for an order-preserving map")
    if any(mat.rows[N - 1][j] for j in range(N - 1)):
        raise NotAffineForm("bottom row must vanish off the corner")
    dilation = TriMat([[mat.rows[i][j] for j in range(N - 1)] for i in range(N - 1)])
    translation = tuple(mat.rows[i][N - 1] for i in range(N - 1))
    return MatrixAffineAut(dilation, translation, point_space_for(mat, kind))


class ProductAut:
    """Componentwise action on a finite lexicographic product of spaces."""

    def __init__(self, components):
        self.components = tuple(components)
        if not self.components:
            raise DimensionMismatch("a product action needs at least one component")
        self.space = Product(*(c.space for c in self.components))

    def is_identity(self) -> bool:
        return all(c.is_identity() for c in self.components)

    def act(self, point: LexVec) -> LexVec:
        if point.space != self.space:
            raise IndexSpaceMismatch("point lives in a different space")
        parts = tuple(
            c.act(LexVec(c.space, v)).value
            for c, v in zip(self.components, point.value)
        )
        return LexVec(self.space, parts)

    def dilate(self, delta: LexVec) -> LexVec:
        if delta.space != self.space:
            raise IndexSpaceMismatch("difference lives in a different space")
        parts = tuple(
            c.dilate(LexVec(c.space, v)).value
            for c, v in zip(self.components, delta.value)
        )
        return LexVec(self.space, parts)

    def compose(self, other: "ProductAut") -> "ProductAut":
        return ProductAut(
            a.compose(b) for a, b in zip(self.components, other.components)
        )

    def invert(self) -> "ProductAut":
        return ProductAut(c.invert() for c in self.components)


def check_affine_law(aut, samples: int, seed: int) -> dict:
    """Sample pairs of points and check d(gx, gy) = dilation(d(x, y)) exactly."""
    failures = 0
    witness = None
    for t in range(samples):
        rng = trial_rng(seed, "affine-law", t)
        p = LexVec(aut.space, aut.space.sample(rng))
        q = LexVec(aut.space, aut.space.sample(rng))
        lhs = lex_distance(aut.act(p), aut.act(q))
        rhs = aut.dilate(lex_distance(p, q))
        if lhs != rhs:
            failures += 1
            if witness is None:
                witness = {"trial": t, "p": repr(p), "q": repr(q)}
    return {
        "law": "metric_dilation",
        "trials": samples,
        "failures": failures,
        "witness": witness,
    }


def check_free_and_rigid(aut, samples: int, seed: int) -> dict:
    """Sampled freeness (no fixed point) and rigidity (constant
    displacement sign); adds the exact matrix certificate when available."""
    if aut.is_identity():
        raise IdentityInput("freeness check undefined for the identity")
    certified = None
    if isinstance(aut, MatrixAffineAut):
        certified = is_essentially_hyperbolic(aut.to_affine_matrix())
    signs = set()
    fixed_witness = None
    moved = 0
    for t in range(samples):
        rng = trial_rng(seed, "free-rigid", t)
        p = LexVec(aut.space, aut.space.sample(rng))
        delta = aut.act(p) - p
        s = delta.sign()
        if s == 0:
            if fixed_witness is None:
                fixed_witness = {"trial": t, "p": repr(p)}
        else:
            moved += 1
            signs.add(s)
    free_on_samples = fixed_witness is None
    sign_constant = len(signs) <= 1 and free_on_samples
    report = {
        "certified": certified,
        "sampled_pass": moved,
        "trials": samples,
        "free_on_samples": free_on_samples,
        "sign_constant": sign_constant,
        "witness": fixed_witness,
    }
    if certified:
        report["consistent"] = free_on_samples and sign_constant
    return report
