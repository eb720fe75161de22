"""Extension of the unitriangular embedding to upper triangular matrices
with positive diagonal.

Group elements factor uniquely as (unipotent part) * (diagonal part).
To stay inside exact arithmetic the diagonal entries are restricted to
exponentials e**q with rational q, so every scalar that shows up --
conjugated unipotent entries, coordinate multipliers, logarithms of the
diagonal -- lives in the :class:`~affinetrees.scalars.ExpSum` ring.

The embedded image has dimension m + n + 1 (m = n(n-1)/2): the first m
rows carry the unipotent embedding conjugated by the coordinate action
of the diagonal, the next n rows carry an identity block whose final
column is the vector of diagonal exponents, and the corner entry is 1.
Nontrivial elements are essentially hyperbolic for the natural affine
action: a nontrivial diagonal contributes a nonzero exponent column that
dominates, and a trivial diagonal reduces to the unitriangular case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .embedding import (
    coord_block,
    coord_count,
    embed_unitriangular,
    is_essentially_hyperbolic,
)
from .errors import (
    DimensionMismatch,
    IdentityInput,
    IdentityViolation,
    NotUnitriangular,
)
from .sampling import rand_exponents, rand_strict_upper, rand_unitriangular, trial_rng
from .scalars import ExpSum
from .trimat import TriMat, nilpotent_exp, unipotent_log


def conjugate_by_diagonal(exponents, mat: TriMat) -> TriMat:
    """d . mat . d**-1 for the diagonal d with entries e**q_i."""
    exponents = tuple(Fraction(q) for q in exponents)
    if len(exponents) != mat.n:
        raise DimensionMismatch("one exponent per matrix row required")
    m = mat.to_expsum()
    return TriMat(
        [
            [
                m.rows[i][j] * ExpSum.exponential(exponents[i] - exponents[j])
                for j in range(mat.n)
            ]
            for i in range(mat.n)
        ]
    )


def conj_coord_matrix(exponents) -> TriMat:
    """Diagonal m x m matrix describing how conjugation by the diagonal
    acts on flattened strictly-upper coordinates.

    The coordinate housing matrix entry (r, r + n - k) is scaled by
    e**(q_r - q_{r + n - k}).
    """
    exponents = tuple(Fraction(q) for q in exponents)
    n = len(exponents)
    m = coord_count(n)
    diag = []
    for nu in range(1, m + 1):
        k, r = coord_block(nu)
        diag.append(ExpSum.exponential(exponents[r - 1] - exponents[r + n - k - 1]))
    return TriMat.diagonal(diag)


def conj_coord_matrix_affine(exponents) -> TriMat:
    """The coordinate conjugation matrix padded with a corner 1, sized m+1."""
    core = conj_coord_matrix(exponents)
    zero = ExpSum.zero()
    rows = [list(r) + [zero] for r in core.rows]
    rows.append([zero] * core.n + [ExpSum.one()])
    return TriMat(rows)


def log_diagonal(exponents) -> tuple:
    """Column of exponents as ExpSum constants (the diagonal's logarithm)."""
    return tuple(ExpSum.constant(Fraction(q)) for q in exponents)


@dataclass(frozen=True)
class TriangularElement:
    """Element u * d: unitriangular u over ExpSum entries and a positive
    diagonal d with entries e**q_i.  The (u, d) factorization is canonical."""

    n: int
    u: TriMat
    exponents: tuple

    def __post_init__(self):
        u = self.u if isinstance(self.u, TriMat) else TriMat(self.u)
        u = u.to_expsum()
        if u.n != self.n:
            raise DimensionMismatch("unipotent part has wrong dimension")
        if not u.is_unitriangular():
            raise NotUnitriangular("unipotent part must be unitriangular")
        exps = tuple(Fraction(q) for q in self.exponents)
        if len(exps) != self.n:
            raise DimensionMismatch("one diagonal exponent per row required")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def identity(cls, n: int) -> "TriangularElement":
        return cls(n, TriMat.identity(n, ExpSum.one()), (Fraction(0),) * n)

    @classmethod
    def unipotent(cls, u: TriMat) -> "TriangularElement":
        return cls(u.n, u, (Fraction(0),) * u.n)

    @classmethod
    def diagonal(cls, exponents) -> "TriangularElement":
        exps = tuple(Fraction(q) for q in exponents)
        n = len(exps)
        return cls(n, TriMat.identity(n, ExpSum.one()), exps)

    def is_identity(self) -> bool:
        return self.u == TriMat.identity(self.n, ExpSum.one()) and all(
            q == 0 for q in self.exponents
        )

    def matrix(self) -> TriMat:
        """The represented upper triangular matrix u * d."""
        return TriMat(
            [
                [
                    self.u.rows[i][j] * ExpSum.exponential(self.exponents[j])
                    for j in range(self.n)
                ]
                for i in range(self.n)
            ]
        )

    def __mul__(self, other):
        if not isinstance(other, TriangularElement):
            return NotImplemented
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")
        u = self.u * conjugate_by_diagonal(self.exponents, other.u)
        exps = tuple(a + b for a, b in zip(self.exponents, other.exponents))
        return TriangularElement(self.n, u, exps)

    def inverse(self) -> "TriangularElement":
        neg = tuple(-q for q in self.exponents)
        return TriangularElement(
            self.n, conjugate_by_diagonal(neg, self.u.inverse()), neg
        )


def embed_unipotent_part(u: TriMat) -> TriMat:
    """Embedding of a unitriangular matrix into dimension m + n + 1."""
    n = u.n
    m = coord_count(n)
    rep = embed_unitriangular(u.to_expsum())
    zero, one = ExpSum.zero(), ExpSum.one()
    size = m + n + 1
    rows = [[zero] * size for _ in range(size)]
    for i in range(m):
        for j in range(m):
            rows[i][j] = rep.rows[i][j]
        rows[i][size - 1] = rep.rows[i][m]
    for i in range(n):
        rows[m + i][m + i] = one
    rows[size - 1][size - 1] = one
    return TriMat(rows)


def embed_diagonal_part(exponents) -> TriMat:
    """Embedding of a positive diagonal into dimension m + n + 1."""
    exponents = tuple(Fraction(q) for q in exponents)
    n = len(exponents)
    m = coord_count(n)
    core = conj_coord_matrix(exponents)
    logs = log_diagonal(exponents)
    zero, one = ExpSum.zero(), ExpSum.one()
    size = m + n + 1
    rows = [[zero] * size for _ in range(size)]
    for i in range(m):
        rows[i][i] = core.rows[i][i]
    for i in range(n):
        rows[m + i][m + i] = one
        rows[m + i][size - 1] = logs[i]
    rows[size - 1][size - 1] = one
    return TriMat(rows)


def embed_triangular(g: TriangularElement) -> TriMat:
    """The full embedding: image of the unipotent part times the image of
    the diagonal part.  Multiplicative on the whole group."""
    return embed_unipotent_part(g.u) * embed_diagonal_part(g.exponents)


def is_essentially_hyperbolic_embedded(g: TriangularElement) -> bool:
    """Exact essential-hyperbolicity verdict for the embedded image of a
    nontrivial element."""
    if g.is_identity():
        raise IdentityInput("predicate undefined for the identity element")
    return is_essentially_hyperbolic(embed_triangular(g))


# -- sampled verification of the conjugation identities -------------------------

IDENTITY_TAGS = (
    "exp_conj",
    "log_conj",
    "coord_conj",
    "left_mult_conj",
    "algebra_rep_conj",
    "group_rep_conj",
    "linear_part_conj",
    "translation_part_conj",
    "full_embedding_conj",
    "embedding_isomorphism",
)


def _apply_diag_to_vector(diag: TriMat, vec):
    return tuple(diag.rows[i][i] * v for i, v in enumerate(vec))


def verify_conjugation_identities(
    n: int, samples: int, seed: int, raise_on_failure: bool = True
) -> dict:
    """Check the commutation identities tying diagonal conjugation to every
    stage of the embedding, plus isomorphism evidence for the full map.

    Returns {tag: {"trials": int, "failures": int}}.  A failure raises
    :class:`IdentityViolation` unless ``raise_on_failure`` is false; these
    identities hold exactly, so a violation means an implementation bug.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    from .embedding import (
        affine_algebra_rep,
        coord_vector,
        left_mult_matrix_closed,
    )

    m = coord_count(n)
    report = {tag: {"trials": 0, "failures": 0} for tag in IDENTITY_TAGS}

    def record(tag, ok, witness):
        report[tag]["trials"] += 1
        if not ok:
            report[tag]["failures"] += 1
            if raise_on_failure:
                raise IdentityViolation(tag, witness)

    for t in range(samples):
        rng = trial_rng(seed, "conj-identities", n, t)
        exps = rand_exponents(rng, n)
        x = rand_strict_upper(rng, n).to_expsum()
        u = rand_unitriangular(rng, n).to_expsum()
        pad = conj_coord_matrix_affine(exps)
        pad_inv = pad.inverse()
        core = conj_coord_matrix(exps)
        core_inv = core.inverse()

        big = rand_strict_upper(rng, m + 1).to_expsum()
        lhs = pad * nilpotent_exp(big) * pad_inv
        rhs = nilpotent_exp(pad * big * pad_inv)
        record("exp_conj", lhs == rhs, {"trial": t, "exponents": repr(exps)})

        lhs = conjugate_by_diagonal(exps, unipotent_log(u))
        rhs = unipotent_log(conjugate_by_diagonal(exps, u))
        record("log_conj", lhs == rhs, {"trial": t, "u": repr(u)})

        lhs = _apply_diag_to_vector(core, coord_vector(x))
        rhs = coord_vector(conjugate_by_diagonal(exps, x))
        record("coord_conj", lhs == rhs, {"trial": t, "x": repr(x)})

        lhs = core * left_mult_matrix_closed(x) * core_inv
        rhs = left_mult_matrix_closed(conjugate_by_diagonal(exps, x))
        record("left_mult_conj", lhs == rhs, {"trial": t, "x": repr(x)})

        lhs = pad * affine_algebra_rep(x) * pad_inv
        rhs = affine_algebra_rep(conjugate_by_diagonal(exps, x))
        record("algebra_rep_conj", lhs == rhs, {"trial": t, "x": repr(x)})

        lhs = pad * embed_unitriangular(u) * pad_inv
        rhs = embed_unitriangular(conjugate_by_diagonal(exps, u))
        record("group_rep_conj", lhs == rhs, {"trial": t, "u": repr(u)})

        rep = embed_unitriangular(u)
        rep_conj = embed_unitriangular(conjugate_by_diagonal(exps, u))
        lin = TriMat([[rep.rows[i][j] for j in range(m)] for i in range(m)])
        lin_conj = TriMat([[rep_conj.rows[i][j] for j in range(m)] for i in range(m)])
        record(
            "linear_part_conj",
            core * lin * core_inv == lin_conj,
            {"trial": t, "u": repr(u)},
        )

        trans = tuple(rep.rows[i][m] for i in range(m))
        trans_conj = tuple(rep_conj.rows[i][m] for i in range(m))
        record(
            "translation_part_conj",
            _apply_diag_to_vector(core, trans) == trans_conj,
            {"trial": t, "u": repr(u)},
        )

        demb = embed_diagonal_part(exps)
        lhs = demb * embed_unipotent_part(u) * demb.inverse()
        rhs = embed_unipotent_part(conjugate_by_diagonal(exps, u))
        record("full_embedding_conj", lhs == rhs, {"trial": t, "u": repr(u)})

        g1 = TriangularElement(n, u, exps)
        g2 = TriangularElement(
            n,
            rand_unitriangular(rng, n).to_expsum(),
            rand_exponents(rng, n),
        )
        ok = embed_triangular(g1 * g2) == embed_triangular(g1) * embed_triangular(g2)
        size = m + n + 1
        eye = TriMat.identity(size, ExpSum.one())
        if ok and not g1.is_identity():
            ok = embed_triangular(g1) != eye
        if ok:
            # unipotent and diagonal images only share the identity
            du = TriangularElement.unipotent(g1.u)
            dd = TriangularElement.diagonal(g1.exponents)
            if not du.is_identity() and not dd.is_identity():
                ok = embed_triangular(du) != embed_triangular(dd)
        record("embedding_isomorphism", ok, {"trial": t, "g1": repr(g1)})

    return report
