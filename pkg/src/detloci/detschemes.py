"""Homogeneous matrices, their minor ideals, and column-deletion flags.

A `HomMatrix` realizes the degree data: entry (i, j) is homogeneous of degree
a_j - b_i (or zero when that degree is negative).  Generic and power matrices
put one private monomial in each cell, which equips the ring with the
row/column multigrading that the linear-algebra kernel exploits; random
matrices use a plain ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .gfpoly import (
    Echelon,
    Multigrading,
    MultiPoly,
    PolyRing,
    PrimeField,
    graded_dim,
    random_homogeneous,
)
from .invariants import DegreeData, mdg, mdr

__all__ = [
    "HomMatrix",
    "MinorsIdeal",
    "Flag",
    "generic_matrix",
    "random_matrix",
    "power_matrix",
    "explicit_matrix",
    "minors",
    "delete_last_column",
    "build_flag",
    "dimension_estimate",
    "has_expected_codim",
    "random_matrix_with_expected_codim",
]

# graded pieces larger than this need the multigraded fast path
_DENSE_PIECE_LIMIT = 200_000


@dataclass
class HomMatrix:
    """A t x (t+c-1) homogeneous matrix over F_p[x_0..x_n]."""

    data: DegreeData
    ring: PolyRing
    entries: list[list[MultiPoly]]
    kind: str = "explicit"
    seed: int | None = None
    pattern: tuple[int, ...] | None = None
    generic: bool = False  # entries in general position (certified or by construction)

    def __post_init__(self) -> None:
        d = self.data
        if len(self.entries) != d.t or any(len(row) != d.ncols for row in self.entries):
            raise ValueError("entry grid does not match t x (t+c-1)")
        for i in range(d.t):
            for j in range(d.ncols):
                e = self.entries[i][j]
                if e.is_zero:
                    continue
                if not e.is_homogeneous or e.degree != d.entry_degree(i, j):
                    raise ValueError(
                        f"entry ({i},{j}) must be homogeneous of degree {d.entry_degree(i, j)}"
                    )

    def entry(self, i: int, j: int) -> MultiPoly:
        return self.entries[i][j]

    def submatrix_det(self, rows: Sequence[int], cols: Sequence[int]) -> MultiPoly:
        """Laplace expansion along the first selected row."""
        if len(rows) != len(cols):
            raise ValueError("square selection required")
        if len(rows) == 1:
            return self.entries[rows[0]][cols[0]]
        i = rows[0]
        rest = rows[1:]
        out = MultiPoly.zero(self.ring.nvars, self.ring.field)
        for pos, j in enumerate(cols):
            e = self.entries[i][j]
            if e.is_zero:
                continue
            sub = self.submatrix_det(rest, cols[:pos] + cols[pos + 1:])
            term = e * sub
            out = out + (term if pos % 2 == 0 else -term)
        return out

    def spec(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.pattern is not None:
            out["pattern"] = list(self.pattern)
        return out


def generic_matrix(data: DegreeData, field: PrimeField | None = None) -> HomMatrix:
    """Matrix of distinct variables x_{(i)(t+c-1)+j}, row-major.  Requires a
    linear degree matrix and at least t(t+c-1) variables."""
    field = field or PrimeField()
    t, q = data.t, data.ncols
    if any(data.entry_degree(i, j) != 1 for i in range(t) for j in range(q)):
        raise ValueError("generic matrix requires a linear degree matrix")
    if data.n + 1 < t * q:
        raise ValueError("too few variables for a generic matrix")
    nvars = data.n + 1
    cells = {(i, j): i * q + j for i in range(t) for j in range(q)}
    ring = PolyRing(nvars, field, Multigrading.from_grid(t, q, nvars, cells))
    entries = [
        [MultiPoly.variable(nvars, field, cells[(i, j)]) for j in range(q)]
        for i in range(t)
    ]
    return HomMatrix(data, ring, entries, kind="generic", generic=True)


def power_matrix(data: DegreeData, field: PrimeField | None = None,
                 pattern: Sequence[int] | None = None) -> HomMatrix:
    """Matrix with entry x_{ij}^(a_j - b_i) on a generic variable grid.
    `pattern` may override the per-column exponents (it must agree with the
    degree matrix, so it is only a readability knob)."""
    field = field or PrimeField()
    t, q = data.t, data.ncols
    if pattern is not None:
        pattern = tuple(int(x) for x in pattern)
        if len(pattern) != q:
            raise ValueError("pattern must give one exponent per column")
        for i in range(t):
            for j in range(q):
                if pattern[j] != data.entry_degree(i, j):
                    raise ValueError("pattern conflicts with the degree matrix")
    if any(data.entry_degree(i, j) < 1 for i in range(t) for j in range(q)):
        raise ValueError("power matrix needs strictly positive entry degrees")
    if data.n + 1 < t * q:
        raise ValueError("too few variables for a power matrix")
    nvars = data.n + 1
    cells = {(i, j): i * q + j for i in range(t) for j in range(q)}
    exps = {(i, j): data.entry_degree(i, j) for i in range(t) for j in range(q)}
    ring = PolyRing(nvars, field, Multigrading.from_grid(t, q, nvars, cells, exps))
    entries = [
        [
            MultiPoly.variable(nvars, field, cells[(i, j)],
                               power=data.entry_degree(i, j))
            for j in range(q)
        ]
        for i in range(t)
    ]
    return HomMatrix(data, ring, entries, kind="power", generic=True,
                     pattern=tuple(data.entry_degree(0, j) for j in range(q)))


def random_matrix(data: DegreeData, field: PrimeField | None = None,
                  seed: int = 0) -> HomMatrix:
    """Seeded dense random entries of the prescribed degrees."""
    field = field or PrimeField()
    nvars = data.n + 1
    ring = PolyRing(nvars, field)
    entries: list[list[MultiPoly]] = []
    counter = 0
    for i in range(data.t):
        row = []
        for j in range(data.ncols):
            e = data.entry_degree(i, j)
            if e < 0:
                row.append(MultiPoly.zero(nvars, field))
            else:
                row.append(random_homogeneous(e, data.n, (seed << 20) + counter, field))
            counter += 1
        entries.append(row)
    return HomMatrix(data, ring, entries, kind="random", seed=seed)


def explicit_matrix(data: DegreeData, ring: PolyRing,
                    entries: Sequence[Sequence[MultiPoly]]) -> HomMatrix:
    return HomMatrix(data, ring, [list(row) for row in entries], kind="explicit")


# ---------------------------------------------------------------------------
# minor ideals and flags
# ---------------------------------------------------------------------------


@dataclass
class MinorsIdeal:
    """The ideal of s x s minors of a HomMatrix, kept as the raw (possibly
    non-minimal) generating set; minimality is recomputed downstream."""

    matrix: HomMatrix
    s: int
    data: DegreeData  # stage degree data (a truncated to the live columns)
    gens: list[MultiPoly]
    gen_degrees: list[int]
    dropped_zero: int
    generic: bool

    # caches populated lazily by the graded-homomorphism engine
    _pieces: object | None = None
    _syzygies: dict | None = None
    _minimal: object | None = None

    @property
    def ring(self) -> PolyRing:
        return self.matrix.ring

    @property
    def expected_codim(self) -> int:
        return self.data.expected_codim

    def mdg(self) -> int:
        return mdg(self.data)

    def mdr(self) -> int:
        return mdr(self.data)

    def __repr__(self) -> str:
        return (f"MinorsIdeal(s={self.s}, cols={self.data.ncols}, "
                f"{len(self.gens)} gens)")


def minors(m: HomMatrix, s: int, ncols: int | None = None) -> MinorsIdeal:
    """All s x s minors by Laplace expansion.  Identically-zero minors are
    dropped from the generating set but counted."""
    d = m.data
    ncols = d.ncols if ncols is None else ncols
    if not 1 <= s <= min(d.t, ncols):
        raise ValueError("minor size out of range")
    gens: list[MultiPoly] = []
    degs: list[int] = []
    dropped = 0
    for rows in combinations(range(d.t), s):
        for cols in combinations(range(ncols), s):
            g = m.submatrix_det(rows, cols)
            if g.is_zero:
                dropped += 1
                continue
            gens.append(g)
            degs.append(g.degree)
    stage = d.with_columns(ncols) if ncols != d.ncols else d
    return MinorsIdeal(m, s, stage, gens, degs, dropped, m.generic)


def delete_last_column(m: HomMatrix) -> HomMatrix:
    """The matrix with its rightmost column removed (same ambient ring)."""
    d2 = m.data.delete_last_column()
    entries = [row[:-1] for row in m.entries]
    out = HomMatrix(d2, m.ring, entries, kind=m.kind, seed=m.seed,
                    generic=m.generic)
    return out


@dataclass
class Flag:
    """The chain of minor ideals obtained by deleting columns from the right,
    from the maximal-minor stage (t-r+1 columns) up to the full matrix."""

    matrix: HomMatrix
    r: int
    stages: list[MinorsIdeal]

    @property
    def data(self) -> DegreeData:
        return self.matrix.data

    def stage(self, j: int) -> MinorsIdeal:
        """Stage indexed as in the flag A_{2-r} ->> ... ->> A_c."""
        i = j - (2 - self.r)
        if not 0 <= i < len(self.stages):
            raise ValueError(f"stage {j} outside [2-r, c]")
        return self.stages[i]

    @property
    def top(self) -> MinorsIdeal:
        return self.stages[-1]

    def __len__(self) -> int:
        return len(self.stages)


def build_flag(m: HomMatrix, r: int | None = None) -> Flag:
    """Flag of (t-r+1)-minor ideals.  Deleted columns must not contain units
    (entries of degree zero); this is guaranteed when a_1 > b_t."""
    d = m.data
    r = d.r if r is None else r
    if not max(1, 2 - d.c) <= r < d.t:
        raise ValueError("invalid r for this degree data")
    s = d.t + 1 - r
    first = d.t - r + 1  # column count of the maximal-minor stage
    for j in range(first, d.ncols):
        for i in range(d.t):
            e = m.entries[i][j]
            if not e.is_zero and e.degree == 0:
                raise ValueError(f"deleted column {j} contains a unit entry")
    stages = [minors(m, s, ncols) for ncols in range(first, d.ncols + 1)]
    return Flag(m, r, stages)


# ---------------------------------------------------------------------------
# dimension heuristics and genericity certificates
# ---------------------------------------------------------------------------


def _hf_quotient_raw(ideal: MinorsIdeal, dlo: int, dhi: int) -> list[int]:
    from .gradedhom import hf_quotient  # local import keeps layering acyclic
    return [hf_quotient(ideal, d) for d in range(dlo, dhi + 1)]


def dimension_estimate(ideal: MinorsIdeal, window: tuple[int, int] | None = None) -> int:
    """Krull dimension of R/I estimated by the degree of the polynomial
    interpolating the Hilbert function over a window of degrees.

    The preferred window starts at mdr(data) - 1 and is long enough to fit a
    polynomial of the expected dimension plus one.  This is a documented
    heuristic: it is reliable once the window sits beyond the regularity, and
    it is never used inside proven-status predictions.  When the implied
    graded pieces are too large to eliminate, the dimension is probed instead
    by cutting with seeded random linear sections (equally heuristic, and
    much cheaper in many variables).
    """
    d = ideal.data
    if window is None:
        guess = max(d.n + 1 - ideal.expected_codim, 0)
        lo = max(ideal.mdr() - 1, 0)
        window = (lo, lo + guess + 2)
        if graded_dim(ideal.ring.nvars, window[1]) > _DENSE_PIECE_LIMIT:
            return _section_dimension(ideal)
    lo, hi = window
    if hi - lo < 2:
        raise ValueError("window too small to fit a Hilbert polynomial")
    if graded_dim(ideal.ring.nvars, hi) > _DENSE_PIECE_LIMIT and ideal.ring.grading is None:
        raise ValueError("window needs graded pieces beyond the dense limit")
    vals = _hf_quotient_raw(ideal, lo, hi)
    if all(v == 0 for v in vals):
        return 0
    # degree of the interpolating polynomial via finite differences
    seq = list(vals)
    degree = 0
    while len(seq) > 1 and any(x != seq[0] for x in seq):
        seq = [seq[i + 1] - seq[i] for i in range(len(seq) - 1)]
        degree += 1
    if len(seq) == 1 and degree > 0:
        raise ValueError("window too small to fit a Hilbert polynomial")
    return degree + 1


def _regularity_cap(ideal: MinorsIdeal) -> int:
    """Degree by which an empty linear section must reach the full piece:
    a Castelnuovo-Mumford regularity bound.  Exact from the Eagon-Northcott
    table for maximal minors; a generous shift-count bound otherwise."""
    d = ideal.data
    if d.r == 1:
        from .invariants import en_betti
        bt = en_betti(d)
        reg = max((max(row) - k) for k, row in enumerate(bt.twists) if row)
        return reg + 1
    return ideal.mdg() + d.t


class _LinearSubstitution:
    """The graded ring map R -> R' sending each variable to a linear form,
    realized degree by degree as coordinate matrices (column j = image of the
    j-th source monomial), built by peeling one variable at a time."""

    def __init__(self, ring_src: PolyRing, ring_tgt: PolyRing,
                 coeffs: np.ndarray):
        self.src = ring_src
        self.tgt = ring_tgt
        self.coeffs = coeffs % ring_tgt.field.p  # (nvars_src, nvars_tgt)
        self._mats: dict[int, np.ndarray] = {0: np.ones((1, 1), dtype=np.int64)}
        self._mul: dict[tuple[int, int], np.ndarray] = {}

    def _mul_by_image(self, v: int, k: int) -> np.ndarray:
        got = self._mul.get((v, k))
        if got is None:
            img = MultiPoly(self.tgt.nvars, self.tgt.field, {
                tuple(int(j == w) for j in range(self.tgt.nvars)): int(self.coeffs[v, w])
                for w in range(self.tgt.nvars)
            })
            from .gfpoly import mul_map
            got = mul_map(img, k, self.tgt).matrix
            self._mul[(v, k)] = got
        return got

    def matrix(self, e: int) -> np.ndarray:
        got = self._mats.get(e)
        if got is not None:
            return got
        prev = self.matrix(e - 1)
        p = self.tgt.field.p
        src = self.src.basis(e)
        prev_basis = self.src.basis(e - 1)
        out = np.zeros((graded_dim(self.tgt.nvars, e), src.dim), dtype=np.int64)
        first_var = np.argmax(src.exps > 0, axis=1)
        for v in range(self.src.nvars):
            cols = np.nonzero(first_var == v)[0]
            if cols.size == 0:
                continue
            parents = src.exps[cols].copy()
            parents[:, v] -= 1
            pidx = prev_basis.index_many(parents)
            block = (self._mul_by_image(v, e - 1).astype(np.float64)
                     @ prev[:, pidx].astype(np.float64)) % p
            out[:, cols] = block.astype(np.int64)
        self._mats[e] = out
        return out

    def apply(self, g: MultiPoly) -> MultiPoly:
        e = g.degree
        coords = (self.matrix(e).astype(np.float64)
                  @ g.coords().astype(np.float64)) % self.tgt.field.p
        return MultiPoly.from_coords(self.tgt.nvars, self.tgt.field, e,
                                     coords.astype(np.int64))


def _section_empty(ideal: MinorsIdeal, m: int, seed: int) -> bool:
    """Whether the scheme misses a seeded random linear P^{m-1}: detected by
    the specialized ideal reaching a full graded piece in low degree."""
    field = ideal.ring.field
    nvars = ideal.ring.nvars
    gen = np.random.Generator(np.random.Philox(key=(seed * 131 + m, 0xC0D1)))
    coeffs = gen.integers(0, field.p, size=(nvars, m), dtype=np.int64)
    ring_m = PolyRing(m, field)
    sub = _LinearSubstitution(ideal.ring, ring_m, coeffs)
    sub_gens = [sub.apply(g) for g in ideal.gens]
    from .gradedhom import IdealPieces
    pieces = IdealPieces(ring_m, [g for g in sub_gens if not g.is_zero])
    top = _regularity_cap(ideal)
    for dd in range(max(1, min(ideal.gen_degrees, default=1)), top + 1):
        if pieces.rank(dd) == graded_dim(m, dd):
            return True
    return False


def _section_dimension(ideal: MinorsIdeal, seed: int = 0) -> int:
    """dim R/I probed by random linear sections: the section to m variables
    is empty exactly when m <= codim (generically), so the codimension is the
    largest empty m."""
    n1 = ideal.ring.nvars
    lo, hi = 0, n1  # empty for m <= codim; codim in [0, n1)
    # monotone predicate: empty(m) for m <= codim
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid == 0 or _section_empty(ideal, mid, seed):
            lo = mid
        else:
            hi = mid - 1
    return n1 - lo


def has_expected_codim(ideal: MinorsIdeal, seed: int = 0) -> bool:
    """Probabilistic certificate that codim I equals r(c+r-1).

    The minors are specialized along a random linear subspace of projective
    dimension codim-1.  Expected codimension makes the intersection empty, so
    the specialized ideal reaches the full graded piece in low degree; the
    Eagon-Northcott bound makes codimension > expected impossible, so a full
    piece certifies equality (up to the random choice of subspace).
    """
    return _section_empty(ideal, ideal.expected_codim, seed)


def random_matrix_with_expected_codim(
    data: DegreeData, field: PrimeField | None = None, seed: int = 0,
    tries: int = 5,
) -> HomMatrix:
    """Draw seeded random matrices, retrying seed+1 on wrong codimension."""
    last = None
    for k in range(tries):
        m = random_matrix(data, field, seed + k)
        ideal = minors(m, data.minor_size)
        if has_expected_codim(ideal, seed + k):
            m.generic = True
            return m
        last = m
    raise RuntimeError(
        f"no draw of expected codimension in {tries} tries from seed {seed}"
    )
