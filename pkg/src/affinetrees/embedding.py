"""Embedding of unitriangular groups into larger unitriangular groups.

The strictly upper triangular matrices of size n carry a grading by
superdiagonals: sigma_i * sigma_j lands in sigma_{i+j}.  Weighting the
commutator of graded pieces by j/(i+j) yields a left-symmetric product,
and the matrix of left multiplication by a fixed element -- written in a
flattened coordinate system that lists the superdiagonals from longest
index to shortest -- is strictly block-upper triangular.  Adjoining the
coordinate vector as a final column produces a Lie algebra map into the
affine algebra of dimension m = n(n-1)/2, and conjugating by the matrix
exponential/logarithm turns it into an injective group homomorphism from
the unitriangular group of size n to the one of size m+1.

Images of nontrivial elements are essentially hyperbolic for the natural
affine action: in the displacement of any point, the contribution of the
final column dominates every coordinate the linear part can disturb.
The checker :func:`is_essentially_hyperbolic` evaluates exactly that
row-by-row implication.

Coordinate convention used throughout: for the affine action of an
N x N matrix (bottom-right entry 1) on points with N-1 coordinates,
coordinates with a *larger* row index are *more* significant in the
lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import (
    DimensionMismatch,
    IdentityInput,
    NotAffineForm,
    NotInverseClosed,
    NotStrictUpper,
    NotUnitriangular,
    ZeroInput,
)
from .trimat import TriMat, nilpotent_exp, unipotent_log


def coord_count(n: int) -> int:
    """Number of strictly-upper entries of an n x n matrix."""
    return n * (n - 1) // 2


# -- superdiagonal grading ---------------------------------------------------


@dataclass(frozen=True)
class SuperdiagDecomposition:
    """Superdiagonals of a strictly upper triangular matrix.

    ``diagonals[i-1]`` holds the i-th superdiagonal, i.e. the entries at
    positions (k, k+i), as a tuple of length n-i.
    """

    n: int
    diagonals: tuple

    def to_matrix(self) -> TriMat:
        return recompose(self)


def decompose(mat: TriMat) -> SuperdiagDecomposition:
    if not mat.is_strict_upper():
        raise NotStrictUpper("superdiagonal decomposition needs a strict upper matrix")
    n = mat.n
    diags = tuple(
        tuple(mat.rows[k][k + i] for k in range(n - i)) for i in range(1, n)
    )
    return SuperdiagDecomposition(n, diags)


def recompose(decomp: SuperdiagDecomposition) -> TriMat:
    n = decomp.n
    if len(decomp.diagonals) != n - 1 or any(
        len(diag) != n - i for i, diag in enumerate(decomp.diagonals, start=1)
    ):
        raise DimensionMismatch("superdiagonal lengths do not match the dimension")
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, diag in enumerate(decomp.diagonals, start=1):
        for k, v in enumerate(diag):
            rows[k][k + i] = v
    return TriMat(rows)


def superdiag_part(mat: TriMat, i: int) -> TriMat:
    """Matrix keeping only the i-th superdiagonal of ``mat``."""
    zero = mat.ring_zero()
    rows = [[zero] * mat.n for _ in range(mat.n)]
    for k in range(mat.n - i):
        rows[k][k + i] = mat.rows[k][k + i]
    return TriMat(rows)


def lowest_superdiag(mat: TriMat) -> int:
    """Smallest i with a nonzero i-th superdiagonal; raises on zero input."""
    for i in range(1, mat.n):
        if any(mat.rows[k][k + i] for k in range(mat.n - i)):
            return i
    raise ZeroInput("zero matrix has no nonzero superdiagonal")


# -- left-symmetric product ---------------------------------------------------


def left_symmetric_product(x: TriMat, y: TriMat) -> TriMat:
    """Bilinear extension of  S_i . T_j = j/(i+j) [S_i, T_j]  over the grading."""
    if x.n != y.n:
        raise DimensionMismatch(f"{x.n} vs {y.n}")
    if not x.is_strict_upper() or not y.is_strict_upper():
        raise NotStrictUpper("left-symmetric product needs strict upper operands")
    n = x.n
    out = TriMat.zeros(n, x.ring_zero() + y.ring_zero())
    for i in range(1, n):
        xi = superdiag_part(x, i)
        if all(not v for row in xi.rows for v in row):
            continue
        for j in range(1, n - i):
            yj = superdiag_part(y, j)
            if all(not v for row in yj.rows for v in row):
                continue
            bracket = xi * yj - yj * xi
            out = out + bracket.scale(Fraction(j, i + j))
    return out


# -- flattened coordinates ----------------------------------------------------


def coord_block(nu: int) -> tuple[int, int]:
    """(block, position) of 1-based coordinate ``nu``.

    Coordinates are grouped into blocks of sizes 1, 2, 3, ...; block k
    holds the (n-k)-th superdiagonal and position r inside it corresponds
    to the matrix entry (r, r + n - k), all 1-based.
    """
    if nu < 1:
        raise IndexError(f"coordinate index {nu} out of range")
    k, total = 1, 1
    while nu > total:
        k += 1
        total += k
    r = nu - k * (k - 1) // 2
    return k, r


def coord_vector(mat: TriMat) -> tuple:
    """Strictly-upper entries flattened, longest block-index first.

    The result lists the (n-1)-th superdiagonal, then the (n-2)-th, down
    to the 1st; length is n(n-1)/2.
    """
    if not mat.is_strict_upper():
        raise NotStrictUpper("coordinates defined for strict upper matrices")
    n = mat.n
    out = []
    for k in range(1, n):
        d = n - k
        for r in range(k):
            out.append(mat.rows[r][r + d])
    return tuple(out)


def matrix_from_coords(n: int, vec) -> TriMat:
    vec = tuple(vec)
    if len(vec) != coord_count(n):
        raise DimensionMismatch(
            f"expected {coord_count(n)} coordinates, got {len(vec)}"
        )
    rows = [[Fraction(0)] * n for _ in range(n)]
    pos = 0
    for k in range(1, n):
        d = n - k
        for r in range(k):
            rows[r][r + d] = vec[pos]
            pos += 1
    return TriMat(rows)


# -- the matrix of left multiplication ----------------------------------------


def left_mult_matrix(x: TriMat) -> TriMat:
    """Matrix of y -> x.y in flattened coordinates, built column by column
    from the bilinear product applied to basis elements."""
    if not x.is_strict_upper():
        raise NotStrictUpper("left multiplication needs a strict upper matrix")
    n = x.n
    m = coord_count(n)
    one = x.ring_one()
    zero = x.ring_zero()
    cols = []
    for sigma in range(1, m + 1):
        basis = [zero] * m
        basis[sigma - 1] = one
        col = coord_vector(left_symmetric_product(x, matrix_from_coords(n, basis)))
        cols.append(col)
    return TriMat([[cols[s][r] for s in range(m)] for r in range(m)])


def left_mult_entry(x: TriMat, rho: int, sigma: int):
    """Closed form for the (rho, sigma) entry of the left-multiplication
    matrix (1-based coordinate indices)."""
    n = x.n
    m = coord_count(n)
    if not (1 <= rho <= m) or not (1 <= sigma <= m):
        raise IndexError(f"coordinate index out of range for m={m}")
    k_r, r_r = coord_block(rho)
    k_s, r_s = coord_block(sigma)
    if k_r < k_s and r_r < r_s and r_s - r_r == k_s - k_r:
        return x.rows[r_r - 1][r_r + (k_s - k_r) - 1] * Fraction(n - k_s, n - k_r)
    if k_r < k_s and r_r == r_s:
        return -(
            x.rows[n - k_s + r_r - 1][n - k_r + r_r - 1] * Fraction(n - k_s, n - k_r)
        )
    return x.ring_zero()


def left_mult_matrix_closed(x: TriMat) -> TriMat:
    """Closed-form route to the same matrix as :func:`left_mult_matrix`."""
    if not x.is_strict_upper():
        raise NotStrictUpper("left multiplication needs a strict upper matrix")
    m = coord_count(x.n)
    return TriMat(
        [[left_mult_entry(x, r, s) for s in range(1, m + 1)] for r in range(1, m + 1)]
    )


# -- the affine algebra and group representations ------------------------------


def affine_algebra_rep(x: TriMat) -> TriMat:
    """(m+1) x (m+1) strict upper matrix: left-multiplication block with
    the coordinate vector adjoined as the final column.

    Linear over the entries and bracket-preserving.
    """
    if not x.is_strict_upper():
        raise NotStrictUpper("affine algebra representation needs strict upper input")
    lam = left_mult_matrix_closed(x)
    vec = coord_vector(x)
    m = lam.n
    zero = x.ring_zero()
    rows = [list(lam.rows[i]) + [vec[i]] for i in range(m)]
    rows.append([zero] * (m + 1))
    return TriMat(rows)


def embed_unitriangular(g: TriMat) -> TriMat:
    """Group homomorphism from unitriangular n x n matrices into
    unitriangular (m+1) x (m+1) matrices: exponential of the affine
    algebra representation of the logarithm."""
    if not g.is_unitriangular():
        raise NotUnitriangular("embedding defined on unitriangular matrices")
    return nilpotent_exp(affine_algebra_rep(unipotent_log(g)))


@dataclass(frozen=True)
class AffineRep:
    """Image of a unitriangular matrix under the embedding, with shape data."""

    n: int
    m: int
    matrix: TriMat

    def __post_init__(self):
        if self.m != coord_count(self.n):
            raise DimensionMismatch("m must equal n(n-1)/2")
        if self.matrix.n != self.m + 1:
            raise DimensionMismatch("matrix must have dimension m+1")
        if not self.matrix.is_unitriangular():
            raise NotUnitriangular("affine representation must be unitriangular")

    @classmethod
    def of(cls, g: TriMat) -> "AffineRep":
        return cls(g.n, coord_count(g.n), embed_unitriangular(g))


# -- essential hyperbolicity ---------------------------------------------------


def is_essentially_hyperbolic(mat: TriMat) -> bool:
    """Row-by-row dominance test for an affine matrix (corner entry 1).

    For every row i above the corner: if the diagonal entry differs
    from 1 or some entry strictly between the diagonal and the final
    column is nonzero, then the final column must be nonzero in some row
    strictly below i (and above the corner).  Under the convention that
    larger row index means more significant coordinate, this says the
    translation part dominates everything the linear part can move.
    """
    N = mat.n
    if not mat.is_upper_triangular() or mat.rows[N - 1][N - 1] != 1:
        raise NotAffineForm("expected upper triangular with corner entry 1")
    if mat == TriMat.identity(N, mat.ring_one()):
        raise IdentityInput("essential hyperbolicity is undefined for the identity")
    for i in range(N - 1):
        triggered = mat.rows[i][i] != 1 or any(
            mat.rows[i][j] for j in range(i + 1, N - 1)
        )
        if triggered and not any(mat.rows[k][N - 1] for k in range(i + 1, N - 1)):
            return False
    return True


@dataclass(frozen=True)
class AdmissibleReport:
    """Certificate that a strict upper matrix embeds essentially hyperbolically."""

    i0: int
    blocks_checked: int
    blocks_clean: bool
    hyperbolic: bool

    @property
    def ok(self) -> bool:
        return self.blocks_clean and self.hyperbolic

    def to_json(self):
        return {
            "i0": self.i0,
            "blocks_checked": self.blocks_checked,
            "blocks_clean": self.blocks_clean,
            "hyperbolic": self.hyperbolic,
        }


def certify_admissible(x: TriMat) -> AdmissibleReport:
    """For nonzero strict upper x with lowest nonzero superdiagonal i0,
    verify that every block of the left-multiplication matrix strictly
    below the i0-th block superdiagonal vanishes, and that the embedded
    exponential passes :func:`is_essentially_hyperbolic`."""
    if not x.is_strict_upper():
        raise NotStrictUpper("certification needs a strict upper matrix")
    i0 = lowest_superdiag(x)  # raises ZeroInput on the zero matrix
    n = x.n
    lam = left_mult_matrix(x)
    blocks_checked = 0
    clean = True
    for a in range(1, n):  # block row, sizes 1..n-1
        for b in range(1, n):
            if b - a >= i0:
                continue
            blocks_checked += 1
            row0 = a * (a - 1) // 2
            col0 = b * (b - 1) // 2
            if any(
                lam.rows[row0 + r][col0 + c] for r in range(a) for c in range(b)
            ):
                clean = False
    hyperbolic = is_essentially_hyperbolic(embed_unitriangular(nilpotent_exp(x)))
    return AdmissibleReport(i0, blocks_checked, clean, hyperbolic)


# -- clearing denominators -----------------------------------------------------


def integerize(gens: list[TriMat]) -> tuple[TriMat, list[TriMat]]:
    """Diagonal conjugator clearing all denominators of a finite,
    inverse-closed set of rational unitriangular matrices.

    Row by row, d_i is the lcm of the denominators appearing in row i of
    any generator; the conjugator is the diagonal matrix whose i-th entry
    is the product d_i * d_{i+1} * ... * d_n.  Conjugation scales entry
    (i, j) by a positive integer, so zero patterns, unit diagonals and
    essential hyperbolicity are all preserved.
    """
    if not gens:
        raise ValueError("empty generating set")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise DimensionMismatch("generators must share one dimension")
        if not g.is_unitriangular():
            raise NotUnitriangular("generators must be unitriangular")
        if any(not isinstance(v, Fraction) for row in g.rows for v in row):
            raise TypeError("integerization needs rational generators")
    for g in gens:
        if g.inverse() not in gens:
            raise NotInverseClosed(f"missing inverse of {g!r}")
    row_lcm = [
        lcm(*(g.rows[i][j].denominator for g in gens for j in range(n)), 1)
        for i in range(n)
    ]
    scale = [Fraction(1)] * n
    acc = 1
    for i in range(n - 1, -1, -1):
        acc *= row_lcm[i]
        scale[i] = Fraction(acc)
    conjugator = TriMat.diagonal(scale)
    inv = conjugator.inverse()
    return conjugator, [conjugator * g * inv for g in gens]
