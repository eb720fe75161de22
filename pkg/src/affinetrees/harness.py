"""Orchestrated verification suites with deterministic seeding.

Each suite turns the exact laws of one area into sampled checks: the
left-symmetric product axioms, the two independent routes to the
left-multiplication matrix, hyperbolicity of embedded images,
denominator clearing, the diagonal-conjugation identities of the
positive-diagonal extension, and the wreath-product action laws.  Every
check reports (trials, failures) plus a replayable witness for the first
failure; all randomness derives from (seed, check name, dimension,
trial index), so verdicts are byte-stable across runs and independent of
execution order.

The golden fixtures hard-code, as symbolic templates, the fully worked
size-4 example data: the product of two generic strictly-upper matrices
under the left-symmetric structure, the 6 x 6 left-multiplication
matrix, the logarithm of a generic unitriangular matrix, and the full
7 x 7 embedded image.  Suites evaluate the templates at random rational
bindings and demand exact equality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import scalars
from .actions import (
    MatrixAffineAut,
    ProductAut,
    check_affine_law,
    check_free_and_rigid,
    from_affine_matrix,
)
from .embedding import (
    AffineRep,
    affine_algebra_rep,
    certify_admissible,
    coord_count,
    coord_vector,
    decompose,
    embed_unitriangular,
    integerize,
    is_essentially_hyperbolic,
    left_mult_matrix,
    left_mult_matrix_closed,
    left_symmetric_product,
    lowest_superdiag,
    matrix_from_coords,
    recompose,
    superdiag_part,
)
from .errors import ConfigInvalid, PrecisionExhausted
from .ordered import LexVec, Scalars, lex_distance
from .sampling import (
    rand_exponents,
    rand_fraction,
    rand_nontrivial_unitriangular,
    rand_strict_upper,
    rand_unitriangular,
    rand_unitriangular_int,
    trial_rng,
)
from .scalars import ExpSum
from .triangular import (
    IDENTITY_TAGS,
    TriangularElement,
    conj_coord_matrix,
    conjugate_by_diagonal,
    coord_block,
    embed_triangular,
    embed_unipotent_part,
    is_essentially_hyperbolic_embedded,
    verify_conjugation_identities,
)
from .trimat import TriMat, nilpotent_exp, unipotent_log
from .wreath import MatrixBundle, TranslationBundle, WreathGroup, iterated_wreath

SUITES = ("lsa", "embedding", "hyperbolicity", "integerize", "tstar", "wreath", "all")


@dataclass
class SuiteConfig:
    suite: str = "all"
    n_low: int = 2
    n_high: int = 5
    samples: int = 50
    seed: int = 0
    max_refinements: int | None = None

    def validate(self) -> None:
        if self.suite not in SUITES:
            raise ConfigInvalid(f"unknown suite {self.suite!r}")
        if self.samples < 1:
            raise ConfigInvalid("samples must be at least 1")
        if not (2 <= self.n_low <= self.n_high <= 8):
            raise ConfigInvalid("dimension range must satisfy 2 <= low <= high <= 8")
        if self.max_refinements is not None and self.max_refinements < 1:
            raise ConfigInvalid("max_refinements must be at least 1")

    @property
    def dims(self) -> range:
        return range(self.n_low, self.n_high + 1)


@dataclass
class CheckResult:
    name: str
    law: str
    trials: int
    failures: int
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "law": self.law,
            "trials": self.trials,
            "failures": self.failures,
            "witness": self.witness,
        }


@dataclass
class Verdict:
    suite: str
    config: dict
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def _run(name: str, law: str, trials: int, body) -> CheckResult:
    """Run ``body(t)`` for each trial; body returns None on pass or a
    witness dict on failure."""
    failures = 0
    witness = None
    for t in range(trials):
        w = body(t)
        if w is not None:
            failures += 1
            if witness is None:
                witness = dict(w, trial=t)
    return CheckResult(name, law, trials, failures, witness)


# -- golden size-4 templates ----------------------------------------------------


def example4_matrix(a, b, c, d, e, f) -> TriMat:
    """Generic 4 x 4 unitriangular matrix with the standard slot layout."""
    return TriMat(
        [
            [1, c, e, f],
            [0, 1, b, d],
            [0, 0, 1, a],
            [0, 0, 0, 1],
        ]
    )


def example4_log(a, b, c, d, e, f) -> TriMat:
    """Logarithm of :func:`example4_matrix`, entry by entry."""
    h = Fraction(1, 2)
    return TriMat(
        [
            [0, c, e - h * b * c, f - h * c * d - h * a * e + Fraction(1, 3) * a * b * c],
            [0, 0, b, d - h * a * b],
            [0, 0, 0, a],
            [0, 0, 0, 0],
        ]
    )


def example4_product(x, y) -> TriMat:
    """Left-symmetric product of two generic 4 x 4 strictly-upper matrices."""
    h = Fraction(1, 2)
    x12, x13, x14 = x.rows[0][1], x.rows[0][2], x.rows[0][3]
    x23, x24, x34 = x.rows[1][2], x.rows[1][3], x.rows[2][3]
    y12, y13, y14 = y.rows[0][1], y.rows[0][2], y.rows[0][3]
    y23, y24, y34 = y.rows[1][2], y.rows[1][3], y.rows[2][3]
    return TriMat(
        [
            [
                0,
                0,
                h * (x12 * y23 - y12 * x23),
                Fraction(2, 3) * (x12 * y24 - y13 * x34)
                + Fraction(1, 3) * (x13 * y34 - y12 * x24),
            ],
            [0, 0, 0, h * (x23 * y34 - y23 * x34)],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
        ]
    )


def example4_left_mult(x) -> TriMat:
    """The 6 x 6 left-multiplication matrix of a generic strictly-upper x."""
    x12, x13, x14 = x.rows[0][1], x.rows[0][2], x.rows[0][3]
    x23, x24, x34 = x.rows[1][2], x.rows[1][3], x.rows[2][3]
    t23, t13 = Fraction(2, 3), Fraction(1, 3)
    h = Fraction(1, 2)
    z = Fraction(0)
    return TriMat(
        [
            [z, -t23 * x34, t23 * x12, -t13 * x24, z, t13 * x13],
            [z, z, z, -h * x23, h * x12, z],
            [z, z, z, z, -h * x34, h * x23],
            [z, z, z, z, z, z],
            [z, z, z, z, z, z],
            [z, z, z, z, z, z],
        ]
    )


def example4_image(a, b, c, d, e, f) -> TriMat:
    """The 7 x 7 embedded image of :func:`example4_matrix`."""
    t23, t13 = Fraction(2, 3), Fraction(1, 3)
    h = Fraction(1, 2)
    z = Fraction(0)
    return TriMat(
        [
            [
                1,
                -t23 * a,
                t23 * c,
                -t13 * d + t13 * a * b,
                -t13 * a * c,
                t13 * e,
                f - t13 * c * d - t23 * a * e + t13 * a * b * c,
            ],
            [z, 1, z, -h * b, h * c, z, e - h * b * c],
            [z, z, 1, z, -h * a, h * b, d - h * a * b],
            [z, z, z, 1, z, z, c],
            [z, z, z, z, 1, z, b],
            [z, z, z, z, z, 1, a],
            [z, z, z, z, z, z, 1],
        ]
    )


def _product_entrywise(x: TriMat, y: TriMat) -> TriMat:
    """Independent entrywise route to the left-symmetric product: the r-th
    superdiagonal entry k is a weighted sum over splittings r = i + (r-i)."""
    n = x.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for r in range(2, n):
        for k in range(1, n - r + 1):
            acc = Fraction(0)
            for i in range(1, r):
                acc += Fraction(r - i, r) * (
                    x.rows[k - 1][i + k - 1] * y.rows[i + k - 1][r + k - 1]
                    - y.rows[k - 1][r - i + k - 1] * x.rows[r - i + k - 1][r + k - 1]
                )
            rows[k - 1][r + k - 1] = acc
    return TriMat(rows)


def _prose_hyperbolic(mat: TriMat) -> bool:
    """Independent formulation of essential hyperbolicity: the lowest
    nonzero entry of (matrix - identity) sits in the final column and is
    strictly lower than every other nonzero entry."""
    N = mat.n
    diff = mat - TriMat.identity(N, mat.ring_one())
    positions = [
        (i, j) for i in range(N) for j in range(N) if diff.rows[i][j]
    ]
    lowest = max(i for i, _ in positions)
    row_entries = [(i, j) for i, j in positions if i == lowest]
    return row_entries == [(lowest, N - 1)]


# -- suite bodies --------------------------------------------------------------


def _suite_lsa(cfg: SuiteConfig) -> list:
    checks = []
    for n in cfg.dims:

        def left_symmetry(t, n=n):
            rng = trial_rng(cfg.seed, "lsa.left_symmetry", n, t)
            x, y, z = (rand_strict_upper(rng, n) for _ in range(3))
            p = left_symmetric_product
            lhs = p(p(x, y), z) - p(x, p(y, z))
            rhs = p(p(y, x), z) - p(y, p(x, z))
            if lhs != rhs:
                return {"x": repr(x), "y": repr(y), "z": repr(z)}

        checks.append(
            _run(f"lsa.left_symmetry.n{n}", "left_symmetry", cfg.samples, left_symmetry)
        )

        def commutator(t, n=n):
            rng = trial_rng(cfg.seed, "lsa.commutator", n, t)
            x, y = rand_strict_upper(rng, n), rand_strict_upper(rng, n)
            lhs = left_symmetric_product(x, y) - left_symmetric_product(y, x)
            rhs = x * y - y * x
            if lhs != rhs:
                return {"x": repr(x), "y": repr(y)}

        checks.append(
            _run(
                f"lsa.commutator_compat.n{n}",
                "product_antisymmetrizes_to_commutator",
                cfg.samples,
                commutator,
            )
        )

        def grading(t, n=n):
            rng = trial_rng(cfg.seed, "lsa.grading", n, t)
            x, y = rand_strict_upper(rng, n), rand_strict_upper(rng, n)
            for i in range(1, n):
                for j in range(1, n):
                    prod = left_symmetric_product(
                        superdiag_part(x, i), superdiag_part(y, j)
                    )
                    for d in range(1, n):
                        if d == i + j:
                            continue
                        if any(prod.rows[k][k + d] for k in range(n - d)):
                            return {"i": i, "j": j, "bad_diag": d}

        checks.append(
            _run(f"lsa.grading.n{n}", "graded_product", cfg.samples, grading)
        )

        def roundtrip(t, n=n):
            rng = trial_rng(cfg.seed, "lsa.roundtrip", n, t)
            x = rand_strict_upper(rng, n)
            if recompose(decompose(x)) != x:
                return {"x": repr(x)}

        checks.append(
            _run(
                f"lsa.superdiag_roundtrip.n{n}",
                "decompose_recompose_identity",
                cfg.samples,
                roundtrip,
            )
        )

        def entrywise(t, n=n):
            rng = trial_rng(cfg.seed, "lsa.entrywise", n, t)
            x, y = rand_strict_upper(rng, n), rand_strict_upper(rng, n)
            if left_symmetric_product(x, y) != _product_entrywise(x, y):
                return {"x": repr(x), "y": repr(y)}

        checks.append(
            _run(
                f"lsa.entrywise_formula.n{n}",
                "bilinear_vs_entrywise_product",
                cfg.samples,
                entrywise,
            )
        )

    if 4 in cfg.dims:

        def example_product(t):
            rng = trial_rng(cfg.seed, "lsa.example4", t)
            x, y = rand_strict_upper(rng, 4), rand_strict_upper(rng, 4)
            if left_symmetric_product(x, y) != example4_product(x, y):
                return {"x": repr(x), "y": repr(y)}

        checks.append(
            _run(
                "lsa.example4_product",
                "golden_size4_product_template",
                cfg.samples,
                example_product,
            )
        )
    return checks


def _suite_embedding(cfg: SuiteConfig) -> list:
    checks = []
    for n in cfg.dims:

        def two_routes(t, n=n):
            rng = trial_rng(cfg.seed, "embedding.two_routes", n, t)
            x = rand_strict_upper(rng, n)
            if left_mult_matrix(x) != left_mult_matrix_closed(x):
                return {"x": repr(x)}

        checks.append(
            _run(
                f"embedding.left_mult_two_routes.n{n}",
                "bilinear_vs_closed_form",
                cfg.samples,
                two_routes,
            )
        )

        def coord_roundtrip(t, n=n):
            rng = trial_rng(cfg.seed, "embedding.coords", n, t)
            x = rand_strict_upper(rng, n)
            if matrix_from_coords(n, coord_vector(x)) != x:
                return {"x": repr(x)}

        checks.append(
            _run(
                f"embedding.coord_roundtrip.n{n}",
                "coordinate_isomorphism",
                cfg.samples,
                coord_roundtrip,
            )
        )

        def block_strict(t, n=n):
            rng = trial_rng(cfg.seed, "embedding.blocks", n, t)
            x = rand_strict_upper(rng, n)
            lam = left_mult_matrix_closed(x)
            for a in range(1, n):
                for b in range(1, a + 1):
                    r0, c0 = a * (a - 1) // 2, b * (b - 1) // 2
                    if any(
                        lam.rows[r0 + r][c0 + c] for r in range(a) for c in range(b)
                    ):
                        return {"x": repr(x), "block": (a, b)}

        checks.append(
            _run(
                f"embedding.block_strict.n{n}",
                "strict_block_upper",
                cfg.samples,
                block_strict,
            )
        )

        def bracket(t, n=n):
            rng = trial_rng(cfg.seed, "embedding.bracket", n, t)
            x, y = rand_strict_upper(rng, n), rand_strict_upper(rng, n)
            lhs = affine_algebra_rep(x * y - y * x)
            rx, ry = affine_algebra_rep(x), affine_algebra_rep(y)
            if lhs != rx * ry - ry * rx:
                return {"x": repr(x), "y": repr(y)}

        checks.append(
            _run(
                f"embedding.algebra_bracket.n{n}",
                "bracket_preserved",
                cfg.samples,
                bracket,
            )
        )

        def homomorphism(t, n=n):
            rng = trial_rng(cfg.seed, "embedding.hom", n, t)
            g, h = rand_unitriangular(rng, n), rand_unitriangular(rng, n)
            if embed_unitriangular(g * h) != embed_unitriangular(g) * embed_unitriangular(h):
                return {"g": repr(g), "h": repr(h)}

        checks.append(
            _run(
                f"embedding.homomorphism.n{n}",
                "group_homomorphism",
                cfg.samples,
                homomorphism,
            )
        )

        def injective(t, n=n):
            rng = trial_rng(cfg.seed, "embedding.injective", n, t)
            g = rand_nontrivial_unitriangular(rng, n)
            m = coord_count(n)
            if embed_unitriangular(g) == TriMat.identity(m + 1):
                return {"g": repr(g)}

        checks.append(
            _run(
                f"embedding.injectivity.n{n}",
                "nontrivial_maps_nontrivially",
                cfg.samples,
                injective,
            )
        )

        def exp_log(t, n=n):
            rng = trial_rng(cfg.seed, "embedding.exp_log", n, t)
            g = rand_unitriangular(rng, n)
            x = rand_strict_upper(rng, n)
            if nilpotent_exp(unipotent_log(g)) != g:
                return {"g": repr(g)}
            if unipotent_log(nilpotent_exp(x)) != x:
                return {"x": repr(x)}

        checks.append(
            _run(
                f"embedding.exp_log_roundtrip.n{n}",
                "mutually_inverse",
                cfg.samples,
                exp_log,
            )
        )

    if 4 in cfg.dims:

        def example_left_mult(t):
            rng = trial_rng(cfg.seed, "embedding.example4_lm", t)
            x = rand_strict_upper(rng, 4)
            if left_mult_matrix(x) != example4_left_mult(x):
                return {"x": repr(x)}

        checks.append(
            _run(
                "embedding.example4_left_mult",
                "golden_size4_left_mult_template",
                cfg.samples,
                example_left_mult,
            )
        )

        def example_log(t):
            rng = trial_rng(cfg.seed, "embedding.example4_log", t)
            vals = [rand_fraction(rng) for _ in range(6)]
            a, b, c, d, e, f = vals
            if unipotent_log(example4_matrix(a, b, c, d, e, f)) != example4_log(
                a, b, c, d, e, f
            ):
                return {"binding": repr(vals)}

        checks.append(
            _run(
                "embedding.example4_log",
                "golden_size4_log_template",
                cfg.samples,
                example_log,
            )
        )

        def example_image(t):
            rng = trial_rng(cfg.seed, "embedding.example4_image", t)
            vals = [rand_fraction(rng) for _ in range(6)]
            a, b, c, d, e, f = vals
            img = embed_unitriangular(example4_matrix(a, b, c, d, e, f))
            if img != example4_image(a, b, c, d, e, f):
                return {"binding": repr(vals)}
            rep = AffineRep.of(example4_matrix(a, b, c, d, e, f))
            last = tuple(rep.matrix.rows[i][6] for i in range(6))
            expected_tail = (c, b, a)
            if last[3:] != expected_tail:
                return {"binding": repr(vals), "last_column": repr(last)}

        checks.append(
            _run(
                "embedding.example4_image",
                "golden_size4_image_template",
                cfg.samples,
                example_image,
            )
        )
    return checks


def _suite_hyperbolicity(cfg: SuiteConfig) -> list:
    checks = []
    for n in cfg.dims:

        def image_hyperbolic(t, n=n):
            rng = trial_rng(cfg.seed, "hyperbolicity.image", n, t)
            g = rand_nontrivial_unitriangular(rng, n)
            if not is_essentially_hyperbolic(embed_unitriangular(g)):
                return {"g": repr(g)}

        checks.append(
            _run(
                f"hyperbolicity.image.n{n}",
                "embedded_images_essentially_hyperbolic",
                cfg.samples,
                image_hyperbolic,
            )
        )

        def admissible(t, n=n):
            rng = trial_rng(cfg.seed, "hyperbolicity.admissible", n, t)
            x = rand_strict_upper(rng, n)
            if x.is_strict_upper() and all(
                not v for row in x.rows for v in row
            ):
                return None
            report = certify_admissible(x)
            if not report.ok:
                return {"x": repr(x), "report": report.to_json()}

        checks.append(
            _run(
                f"hyperbolicity.admissible.n{n}",
                "lowest_superdiag_blocks_vanish",
                cfg.samples,
                admissible,
            )
        )

        def power_dominance(t, n=n):
            rng = trial_rng(cfg.seed, "hyperbolicity.powers", n, t)
            x = rand_strict_upper(rng, n)
            if all(not v for row in x.rows for v in row):
                return None
            i0 = lowest_superdiag(x)
            rep = affine_algebra_rep(x)
            lam = TriMat(
                [[rep.rows[i][j] for j in range(rep.n - 1)] for i in range(rep.n - 1)]
            )
            power = lam
            for k in range(1, n):
                for a in range(1, n):
                    for b in range(1, n):
                        if b - a >= k * i0:
                            continue
                        r0, c0 = a * (a - 1) // 2, b * (b - 1) // 2
                        if any(
                            power.rows[r0 + r][c0 + c]
                            for r in range(a)
                            for c in range(b)
                        ):
                            return {"x": repr(x), "k": k, "block": (a, b)}
                power = power * lam

        checks.append(
            _run(
                f"hyperbolicity.power_dominance.n{n}",
                "power_blocks_vanish_below_k_i0",
                cfg.samples,
                power_dominance,
            )
        )

        def prose(t, n=n):
            rng = trial_rng(cfg.seed, "hyperbolicity.prose", n, t)
            if rng.random() < 0.5:
                mat = embed_unitriangular(rand_nontrivial_unitriangular(rng, n))
            else:
                mat = rand_nontrivial_unitriangular(rng, n + 1)
            if is_essentially_hyperbolic(mat) != _prose_hyperbolic(mat):
                return {"mat": repr(mat)}

        checks.append(
            _run(
                f"hyperbolicity.prose_equivalence.n{n}",
                "implication_matches_lowest_entry_form",
                cfg.samples,
                prose,
            )
        )

        def displacement(t, n=n):
            rng = trial_rng(cfg.seed, "hyperbolicity.displacement", n, t)
            g = rand_nontrivial_unitriangular(rng, n)
            aut = from_affine_matrix(embed_unitriangular(g))
            report = check_free_and_rigid(
                aut, 10, trial_rng(cfg.seed, "hyp.disp.pts", n, t).randint(0, 10**9)
            )
            if not report["certified"] or not report.get("consistent", False):
                return {"g": repr(g), "report": {k: v for k, v in report.items() if k != "witness"}}

        checks.append(
            _run(
                f"hyperbolicity.displacement.n{n}",
                "certificate_implies_sampled_freeness",
                cfg.samples,
                displacement,
            )
        )
    return checks


def _suite_integerize(cfg: SuiteConfig) -> list:
    checks = []
    for n in cfg.dims:

        def make_gens(rng, n):
            gens = []
            for _ in range(rng.randint(1, 3)):
                g = rand_unitriangular(rng, n)
                gens.append(g)
                inv = g.inverse()
                if inv not in gens:
                    gens.append(inv)
            return gens

        def integral(t, n=n):
            rng = trial_rng(cfg.seed, "integerize.integral", n, t)
            gens = make_gens(rng, n)
            conj, conjugated = integerize(gens)
            for g in conjugated:
                if not g.is_unitriangular():
                    return {"gens": repr(gens)}
                if any(
                    v.denominator != 1 for row in g.rows for v in row
                ):
                    return {"gens": repr(gens), "bad": repr(g)}

        checks.append(
            _run(
                f"integerize.integral.n{n}",
                "conjugates_are_integral_unitriangular",
                cfg.samples,
                integral,
            )
        )

        def preserved(t, n=n):
            rng = trial_rng(cfg.seed, "integerize.preserved", n, t)
            gens = make_gens(rng, n)
            conj, conjugated = integerize(gens)
            eye = TriMat.identity(n)
            for before, after in zip(gens, conjugated):
                if before == eye:
                    continue
                if is_essentially_hyperbolic(before) != is_essentially_hyperbolic(after):
                    return {"before": repr(before), "after": repr(after)}

        checks.append(
            _run(
                f"integerize.hyperbolicity_preserved.n{n}",
                "zero_pattern_preserved",
                cfg.samples,
                preserved,
            )
        )

        def deterministic(t, n=n):
            rng = trial_rng(cfg.seed, "integerize.det", n, t)
            gens = make_gens(rng, n)
            first, _ = integerize(gens)
            second, _ = integerize(list(gens))
            if first != second:
                return {"gens": repr(gens)}

        checks.append(
            _run(
                f"integerize.deterministic.n{n}",
                "lcm_construction_deterministic",
                cfg.samples,
                deterministic,
            )
        )
    return checks


def _multiplier(exponents, rho, sigma):
    """Expected coordinate-conjugation multiplier for one entry of the
    left-multiplication matrix."""
    n = len(exponents)
    k_r, r_r = coord_block(rho)
    k_s, r_s = coord_block(sigma)
    if k_r < k_s and r_s > r_r and k_s - k_r == r_s - r_r:
        return ExpSum.exponential(
            exponents[r_r - 1] - exponents[r_r + (k_s - k_r) - 1]
        )
    if k_r < k_s and r_s == r_r:
        return ExpSum.exponential(
            exponents[n - k_s + r_r - 1] - exponents[n - k_r + r_r - 1]
        )
    return ExpSum.one()


def _suite_tstar(cfg: SuiteConfig) -> list:
    checks = []
    for n in cfg.dims:
        report = verify_conjugation_identities(
            n, cfg.samples, cfg.seed, raise_on_failure=False
        )
        for tag in IDENTITY_TAGS:
            checks.append(
                CheckResult(
                    f"tstar.{tag}.n{n}",
                    f"diagonal_conjugation_{tag}",
                    report[tag]["trials"],
                    report[tag]["failures"],
                )
            )

        def multiplier_table(t, n=n):
            rng = trial_rng(cfg.seed, "tstar.multiplier", n, t)
            exps = rand_exponents(rng, n)
            x = rand_strict_upper(rng, n).to_expsum()
            lam = left_mult_matrix_closed(x)
            lam_conj = left_mult_matrix_closed(conjugate_by_diagonal(exps, x))
            m = coord_count(n)
            for rho in range(1, m + 1):
                for sigma in range(1, m + 1):
                    expected = lam.rows[rho - 1][sigma - 1] * _multiplier(
                        exps, rho, sigma
                    )
                    if lam_conj.rows[rho - 1][sigma - 1] != expected:
                        return {"exps": repr(exps), "entry": (rho, sigma)}

        checks.append(
            _run(
                f"tstar.multiplier_table.n{n}",
                "entrywise_conjugation_multipliers",
                cfg.samples,
                multiplier_table,
            )
        )

        def group_law(t, n=n):
            rng = trial_rng(cfg.seed, "tstar.group_law", n, t)
            gs = [
                TriangularElement(
                    n, rand_unitriangular(rng, n), rand_exponents(rng, n)
                )
                for _ in range(3)
            ]
            g1, g2, g3 = gs
            if (g1 * g2) * g3 != g1 * (g2 * g3):
                return {"g1": repr(g1), "g2": repr(g2), "g3": repr(g3)}
            if (g1 * g2).matrix() != g1.matrix() * g2.matrix():
                return {"g1": repr(g1), "g2": repr(g2)}
            prod = g1 * g1.inverse()
            if not prod.is_identity():
                return {"g1": repr(g1), "prod": repr(prod)}

        checks.append(
            _run(
                f"tstar.group_law.n{n}",
                "canonical_factorization_group",
                cfg.samples,
                group_law,
            )
        )

        def essentially_free(t, n=n):
            rng = trial_rng(cfg.seed, "tstar.free", n, t)
            style = t % 3
            if style == 0:
                g = TriangularElement.diagonal(rand_exponents(rng, n))
            elif style == 1:
                g = TriangularElement.unipotent(rand_unitriangular(rng, n))
            else:
                g = TriangularElement(
                    n, rand_unitriangular(rng, n), rand_exponents(rng, n)
                )
            if g.is_identity():
                return None
            try:
                if not is_essentially_hyperbolic_embedded(g):
                    return {"g": repr(g)}
            except PrecisionExhausted as exc:
                return {"g": repr(g), "error": str(exc)}

        checks.append(
            _run(
                f"tstar.essentially_free.n{n}",
                "nontrivial_elements_essentially_hyperbolic",
                cfg.samples,
                essentially_free,
            )
        )

        def unipotent_agreement(t, n=n):
            rng = trial_rng(cfg.seed, "tstar.unipotent", n, t)
            u = rand_unitriangular(rng, n).to_expsum()
            m = coord_count(n)
            big = embed_unipotent_part(u)
            rep = embed_unitriangular(u)
            for i in range(m):
                for j in range(m):
                    if big.rows[i][j] != rep.rows[i][j]:
                        return {"u": repr(u), "entry": (i, j)}
                if big.rows[i][m + n] != rep.rows[i][m]:
                    return {"u": repr(u), "row": i}
            return None

        checks.append(
            _run(
                f"tstar.unipotent_agreement.n{n}",
                "extension_restricts_to_embedding",
                cfg.samples,
                unipotent_agreement,
            )
        )
    return checks


def make_unitriangular_image_bundle(n: int = 3, bound: int = 3) -> MatrixBundle:
    """Bundle whose elements are embedded images of random integral
    unitriangular matrices of size n, acting on rational points."""
    m = coord_count(n)
    probe = from_affine_matrix(embed_unitriangular(TriMat.identity(n)))

    def sampler(rng):
        g = rand_unitriangular_int(rng, n, bound)
        return from_affine_matrix(embed_unitriangular(g))

    return MatrixBundle(probe.space, sampler)


def _wreath_law_checks(cfg: SuiteConfig, label: str, group: WreathGroup) -> list:
    checks = []

    def group_axioms(t):
        rng = trial_rng(cfg.seed, label, "group_axioms", t)
        a, b, c = (group.sample_element(rng) for _ in range(3))
        if group.mul(group.mul(a, b), c) != group.mul(a, group.mul(b, c)):
            return {"a": repr(a), "b": repr(b), "c": repr(c)}
        e = group.identity()
        if group.mul(a, e) != a or group.mul(e, a) != a:
            return {"a": repr(a)}
        if not group.is_identity(group.mul(a, group.inv(a))):
            return {"a": repr(a)}
        if not group.is_identity(group.mul(group.inv(a), a)):
            return {"a": repr(a)}

    checks.append(
        _run(f"{label}.group_axioms", "wreath_group_axioms", cfg.samples, group_axioms)
    )

    def action_axiom(t):
        rng = trial_rng(cfg.seed, label, "action_axiom", t)
        g, h = group.sample_element(rng), group.sample_element(rng)
        p = group.sample_point(rng)
        lhs = group.act_vec(g, group.act_vec(h, p))
        rhs = group.act_vec(group.mul(g, h), p)
        if lhs != rhs:
            return {"g": repr(g), "h": repr(h), "p": repr(p)}

    checks.append(
        _run(f"{label}.action_axiom", "compatible_with_multiplication", cfg.samples, action_axiom)
    )

    def affine_law(t):
        rng = trial_rng(cfg.seed, label, "affine_law", t)
        g = group.sample_element(rng)
        p, q = group.sample_point(rng), group.sample_point(rng)
        lhs = lex_distance(group.act_vec(g, p), group.act_vec(g, q))
        rhs = group.dilate_vec(g, lex_distance(p, q))
        if lhs != rhs:
            return {"g": repr(g), "p": repr(p), "q": repr(q)}

    checks.append(
        _run(f"{label}.affine_law", "metric_dilation", cfg.samples, affine_law)
    )

    def alpha_hom(t):
        rng = trial_rng(cfg.seed, label, "alpha_hom", t)
        g, h = group.sample_element(rng), group.sample_element(rng)
        delta = group.sample_point(rng)
        lhs = group.dilate_vec(group.mul(g, h), delta)
        rhs = group.dilate_vec(g, group.dilate_vec(h, delta))
        if lhs != rhs:
            return {"g": repr(g), "h": repr(h), "delta": repr(delta)}

    checks.append(
        _run(f"{label}.dilation_homomorphism", "dilations_compose", cfg.samples, alpha_hom)
    )

    def first_coord(t):
        rng = trial_rng(cfg.seed, label, "first_coord", t)
        g = group.sample_element(rng)
        delta = group.sample_point(rng)
        if group.dilate_vec(g, delta).value[0] != delta.value[0]:
            return {"g": repr(g), "delta": repr(delta)}

    checks.append(
        _run(f"{label}.first_coord_fixed", "dilation_fixes_lead_coordinate", cfg.samples, first_coord)
    )

    def freeness(t):
        rng = trial_rng(cfg.seed, label, "freeness", t)
        g = group.sample_nontrivial(rng)
        signs = set()
        for i in range(20):
            p = group.sample_point(rng)
            delta = group.act_vec(g, p) - p
            s = delta.sign()
            if s == 0:
                return {"g": repr(g), "p": repr(p)}
            signs.add(s)
        if len(signs) > 1:
            return {"g": repr(g), "signs": sorted(signs)}

    checks.append(
        _run(f"{label}.free_and_rigid", "freeness_and_sign_constancy", cfg.samples, freeness)
    )
    return checks


def _suite_wreath(cfg: SuiteConfig) -> list:
    checks = []
    base = make_unitriangular_image_bundle(3)
    group = WreathGroup(base, Scalars("Z"))
    checks.extend(_wreath_law_checks(cfg, "wreath.matrix_base", group))

    for label, levels in (
        ("wreath.iterated2", ["Z", "Z"]),
        ("wreath.iterated3", ["Z", "Z", "Z"]),
    ):
        bundle = iterated_wreath(levels)
        checks.extend(_wreath_law_checks(cfg, label, bundle))

    def product_transfer(t):
        rng = trial_rng(cfg.seed, "wreath.product", t)
        g1 = from_affine_matrix(embed_unitriangular(rand_nontrivial_unitriangular(rng, 3)))
        g2 = from_affine_matrix(embed_unitriangular(rand_nontrivial_unitriangular(rng, 3)))
        aut = ProductAut([g1, g2])
        p = LexVec(aut.space, aut.space.sample(rng))
        q = LexVec(aut.space, aut.space.sample(rng))
        if lex_distance(aut.act(p), aut.act(q)) != aut.dilate(lex_distance(p, q)):
            return {"p": repr(p), "q": repr(q)}
        delta = aut.act(p) - p
        if delta.sign() == 0:
            return {"p": repr(p), "fixed": True}

    checks.append(
        _run(
            "wreath.product_action_transfer",
            "componentwise_action_inherits_laws",
            cfg.samples,
            product_transfer,
        )
    )
    return checks


_SUITE_BODIES = {
    "lsa": _suite_lsa,
    "embedding": _suite_embedding,
    "hyperbolicity": _suite_hyperbolicity,
    "integerize": _suite_integerize,
    "tstar": _suite_tstar,
    "wreath": _suite_wreath,
}


def run_suite(cfg: SuiteConfig) -> Verdict:
    cfg.validate()
    previous = scalars.get_default_max_refinements()
    if cfg.max_refinements is not None:
        scalars.set_default_max_refinements(cfg.max_refinements)
    try:
        names = (
            ["lsa", "embedding", "hyperbolicity", "integerize", "tstar", "wreath"]
            if cfg.suite == "all"
            else [cfg.suite]
        )
        checks = []
        for name in names:
            checks.extend(_SUITE_BODIES[name](cfg))
    finally:
        scalars.set_default_max_refinements(previous)
    config_json = {
        "suite": cfg.suite,
        "n_low": cfg.n_low,
        "n_high": cfg.n_high,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "max_refinements": cfg.max_refinements,
    }
    return Verdict(cfg.suite, config_json, checks)
