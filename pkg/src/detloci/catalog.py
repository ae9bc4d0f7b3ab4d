"""Built-in catalog of determinantal cases with known exact values.

Each entry stores the full degree-indexed value sequences where they are
known (windows start at degree -3, matching the default printing convention)
together with the identity outcomes.  Comparison clips stored windows to the
degree range the entry actually computes, chosen so that every entry stays at
desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .invariants import DegreeData
from .verifier import CaseReport, MatrixSpec, run_case

__all__ = ["CatalogEntry", "CATALOG"]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    data: DegreeData
    matrix: MatrixSpec
    prime: int = 101
    window: tuple[int, int] = (-3, 0)
    expected: dict = field(default_factory=dict)
    # name -> (start_degree, values...) clipped to `window` when comparing
    expected_windows: dict = field(default_factory=dict)
    expected_identities: dict = field(default_factory=dict)
    checks: frozenset | None = None
    heavy: bool = False
    with_kappa: bool = False
    with_dim_estimate: bool = False

    def run(self, prime: int | None = None) -> CaseReport:
        return run_case(
            self.data,
            matrix=self.matrix,
            prime=prime or self.prime,
            window=self.window,
            checks=set(self.checks) if self.checks is not None else None,
            with_kappa=self.with_kappa,
            with_dim_estimate=self.with_dim_estimate,
        )

    def compare(self, report: CaseReport) -> dict:
        """Mismatches between the report and the stored expectations."""
        bad: dict = {}
        for key, want in self.expected.items():
            got = report.computed.get(key)
            if got != want:
                bad[key] = {"want": want, "got": got}
        lo, hi = self.window
        for key, (start, *values) in self.expected_windows.items():
            got_w = report.windows.get(key, {})
            for i, want in enumerate(values):
                d = start + i
                if d < lo or d > hi:
                    continue
                if got_w.get(d) != want:
                    bad[f"{key}@{d}"] = {"want": want, "got": got_w.get(d)}
        for key, want in self.expected_identities.items():
            ident = report.identities.get(key)
            got = ident.status if ident else None
            if got != want:
                bad[f"identity:{key}"] = {"want": want, "got": got}
        return bad


def _entry(**kw) -> CatalogEntry:
    return CatalogEntry(**kw)


CATALOG: list[CatalogEntry] = [
    # -- submaximal minors of square matrices -------------------------------
    _entry(
        name="exgendet-c1-n8",
        description="generic 3x3, 2-minors, P^8: the basic flag with all five "
                    "Hom values and the exactness failure of the three-term "
                    "restriction sequence",
        data=DegreeData(3, 1, 2, 8, (1, 1, 1), (0, 0, 0)),
        matrix=MatrixSpec("generic"),
        window=(-3, 1),
        expected={"tangent": 64, "nB": 42, "fib1": 2, "fib2": 24,
                  "homIB_A": 48, "lambda_c": 64, "flag_dim_formula": 64},
        expected_windows={
            "tangent": (-3, 0, 0, 9, 64, 225),
            "nB": (-3, 0, 0, 6, 42, 168),
            "fib1": (-3, 0, 0, 0, 2, 33),
        },
        expected_identities={"thm61cond": "holds", "thm61cond1": "fails",
                             "propo8_recursion": "holds", "codgen": "holds",
                             "predicted_dim": "holds"},
    ),
    _entry(
        name="exgendet-c2-n11",
        description="generic 3x4, 2-minors, P^11: one more column",
        data=DegreeData(3, 2, 2, 11, (1, 1, 1, 1), (0, 0, 0)),
        matrix=MatrixSpec("generic"),
        window=(-3, 1),
        expected={"tangent": 120, "fib1": 3, "lambda_c": 120,
                  "flag_dim_formula": 120},
        expected_windows={
            "tangent": (-3, 0, 0, 12, 120, 540),
            "fib1": (-3, 0, 0, 0, 3, 81),
        },
        expected_identities={"thm61cond": "holds", "propo8_recursion": "holds",
                             "codgen": "holds", "predicted_dim": "holds"},
    ),
    _entry(
        name="dimW2-n8",
        description="3x3 with quadratic last column, 2-minors, P^8: the "
                    "square-submaximal correction term in action",
        data=DegreeData(3, 1, 2, 8, (1, 1, 2), (0, 0, 0)),
        matrix=MatrixSpec("power"),
        window=(-3, 1),
        expected={"tangent": 152, "nB": 42, "fib1": 0, "fib2": 110,
                  "flag_dim_formula": 152, "kappa_1": 6},
        expected_windows={
            "tangent": (-3, 0, 3, 31, 152, 502),
            "nB": (-3, 0, 0, 6, 42, 168),
            "fib2_hom": (-3, 0, 3, 25, 110, 336),
            "fib1": (-3, 0, 0, 0, 0, 2),
        },
        expected_identities={"thm61cond": "holds", "thm61cond1": "fails",
                             "predicted_dim": "holds",
                             "kappa_prime_paths": "holds"},
    ),
    _entry(
        name="dimW3-n11",
        description="4x3 with quadratic last column, 2-minors, P^11: the "
                    "colength-one flag correction computed two ways",
        data=DegreeData(4, 0, 3, 11, (1, 1, 2), (0, 0, 0, 0)),
        matrix=MatrixSpec("power"),
        window=(-3, 0),
        expected={"tangent": 344, "flag_dim_formula": 344, "dual_piece": 4,
                  "kappa_prime": 20},
        expected_identities={"thm61cond": "holds", "thm61cond1": "fails",
                             "predicted_dim": "holds",
                             "dual_piece_paths": "holds",
                             "kappa_prime_paths": "holds"},
    ),
    # -- the big mixed square case ------------------------------------------
    _entry(
        name="ex1dimW-n15",
        description="4x4 with quadratic last column, 3-minors, P^15: the "
                    "large tangent-space computation",
        data=DegreeData(4, 1, 2, 15, (1, 1, 1, 2), (0, 0, 0, 0)),
        matrix=MatrixSpec("power"),
        prime=3001,
        window=(-3, 0),
        expected={"tangent": 663, "nB": 168, "fib1": 0, "fib2": 495,
                  "flag_dim_formula": 663},
        expected_windows={
            "tangent": (-3, 0, 4, 73, 663),
            "nB": (-3, 0, 0, 12, 168),
            "fib2_hom": (-3, 0, 4, 61, 495),
            "fib1": (-3, 0, 0, 0, 0),
        },
        expected_identities={"thm61cond": "holds", "thm61cond1": "fails",
                             "predicted_dim": "holds"},
        heavy=True,
    ),
    # -- documented failure cases -------------------------------------------
    _entry(
        name="afterdeg-1-n5",
        description="3x3 random linear, 2-minors, P^5 (surface case): the "
                    "fiber count exceeds the binomial sum and the locus has "
                    "dimension lambda_c - 1",
        data=DegreeData(3, 1, 2, 5, (1, 1, 1), (0, 0, 0)),
        matrix=MatrixSpec("random", seed=1),
        expected={"tangent": 36, "fib1": 3, "flag_dim_formula": 36,
                  "lambda_c": 37},
        expected_identities={"codgen": "fails", "thm61cond": "holds",
                             "predicted_dim": "holds"},
    ),
    _entry(
        name="examples712-iii-n6",
        description="3x3 random linear, 2-minors, P^6",
        data=DegreeData(3, 1, 2, 6, (1, 1, 1), (0, 0, 0)),
        matrix=MatrixSpec("random", seed=1),
        expected={"tangent": 46, "fib1": 2, "lambda_c": 46},
        expected_identities={"thm61cond": "holds", "codgen": "holds"},
    ),
    _entry(
        name="examples712-iii-n7",
        description="3x3 random linear, 2-minors, P^7",
        data=DegreeData(3, 1, 2, 7, (1, 1, 1), (0, 0, 0)),
        matrix=MatrixSpec("random", seed=1),
        expected={"tangent": 55, "fib1": 2, "lambda_c": 55},
        expected_identities={"thm61cond": "holds", "codgen": "holds"},
    ),
    _entry(
        name="examples712-i-n9",
        description="3x5 random linear, 2-minors, P^9 (surface case): the "
                    "tangent identity fails, so the closure is not a "
                    "generically smooth component",
        data=DegreeData(3, 3, 2, 9, (1, 1, 1, 1, 1), (0, 0, 0)),
        matrix=MatrixSpec("random", seed=1),
        expected={"tangent": 120, "nB": 96, "fib1": 4, "fib2": 25,
                  "flag_dim_formula": 117, "lambda_c": 117,
                  "dim_estimate": 2, "codim_estimate": 8},
        expected_windows={
            "nB": (-3, 0, 0, 12, 96),
            "fib1": (-3, 0, 0, 0, 4),
            "fib2_hom": (-3, 0, 0, 3, 25),
            "tangent": (-3, 0, 0, 15, 120),
        },
        expected_identities={"thm61cond": "fails", "codgen": "holds",
                             "predicted_dim": "holds"},
        with_dim_estimate=True,
    ),
    _entry(
        name="examples712-v-n6",
        description="4x4 random linear, 3-minors, P^6: tangent identity "
                    "failure 88 != 60 + 24 - 3",
        data=DegreeData(4, 1, 2, 6, (1, 1, 1, 1), (0, 0, 0, 0)),
        matrix=MatrixSpec("random", seed=1),
        expected={"tangent": 88, "nB": 60, "fib1": 3, "fib2": 24,
                  "flag_dim_formula": 81},
        expected_identities={"thm61cond": "fails"},
    ),
    # -- flag-projection additivity -----------------------------------------
    _entry(
        name="exgendetWit-i-n12",
        description="3x6 random linear, 2-minors, P^12: hom additivity across "
                    "the last two flag steps (94 = 91 + 3, 97 = 94 + 3)",
        data=DegreeData(3, 4, 2, 12, (1,) * 6, (0, 0, 0)),
        matrix=MatrixSpec("random", seed=1),
        expected={"homG_top": 91, "homG_prev": 94, "homG_prev2": 97,
                  "fibG_top": 3, "fibG_prev": 3},
        expected_identities={"a3r@6": "holds", "a3r@5": "holds"},
    ),
    _entry(
        name="exgendetcor83-c6-n23",
        description="generic 3x8, 2-minors, P^23: the short binomial "
                    "certificate for the fiber count of a long flag",
        data=DegreeData(3, 6, 2, 23, (1,) * 8, (0, 0, 0)),
        matrix=MatrixSpec("generic"),
        expected={"homG_top": 184, "homG_prev": 187, "fibG_top": 3},
        expected_identities={"a3r@8": "holds", "exgenassump": "holds"},
        checks=frozenset({"a3r", "exgenassump"}),
        heavy=True,
    ),
    # -- self-extension cross-checks ----------------------------------------
    _entry(
        name="exex910-i",
        description="generic 4x4: the self-extension dimension of the "
                    "presentation cokernel equals lambda",
        data=DegreeData(4, 1, 2, 15, (1, 1, 1, 1), (0, 0, 0, 0)),
        matrix=MatrixSpec("generic"),
        expected={"ext1": 225, "lambda_c": 225},
        expected_windows={"ext1": (-3, 0, 0, 16, 225)},
        expected_identities={"ext1_cross_check": "holds"},
        checks=frozenset({"ext1_cross_check"}),
    ),
    _entry(
        name="exex910-ii",
        description="4x4 power matrix with column degrees (1,1,2,2)",
        data=DegreeData(4, 1, 2, 15, (1, 1, 2, 2), (0, 0, 0, 0)),
        matrix=MatrixSpec("power"),
        expected={"ext1": 1129, "lambda_c": 1129},
        expected_windows={"ext1": (-3, 0, 8, 132, 1129)},
        expected_identities={"ext1_cross_check": "holds"},
        checks=frozenset({"ext1_cross_check"}),
    ),
    _entry(
        name="exex910-iii",
        description="4x4 power matrix with column degrees (1,2,2,2)",
        data=DegreeData(4, 1, 2, 15, (1, 2, 2, 2), (0, 0, 0, 0)),
        matrix=MatrixSpec("power"),
        expected={"ext1": 1623, "lambda_c": 1623},
        expected_windows={"ext1": (-3, 0, 12, 193, 1623)},
        expected_identities={"ext1_cross_check": "holds"},
        checks=frozenset({"ext1_cross_check"}),
    ),
    # -- generic 4x4 tangent both for r=2 and r=3 ----------------------------
    _entry(
        name="exgendet-t4-r2-n15",
        description="generic 4x4, 3-minors, P^15",
        data=DegreeData(4, 1, 2, 15, (1, 1, 1, 1), (0, 0, 0, 0)),
        matrix=MatrixSpec("generic"),
        expected={"tangent": 225, "lambda_c": 225},
        expected_windows={"tangent": (-3, 0, 0, 16, 225)},
        expected_identities={"thm61cond": "holds", "thm61cond1": "fails",
                             "predicted_dim": "holds"},
        heavy=True,
    ),
    _entry(
        name="exgendet-t4-r3-n15",
        description="generic 4x4, 2-minors, P^15",
        data=DegreeData(4, 1, 3, 15, (1, 1, 1, 1), (0, 0, 0, 0)),
        matrix=MatrixSpec("generic"),
        expected={"tangent": 225, "lambda_c": 225},
        expected_windows={"tangent": (-3, 0, 0, 16, 225)},
        expected_identities={"thm61cond": "holds", "predicted_dim": "holds"},
        heavy=True,
    ),
]
