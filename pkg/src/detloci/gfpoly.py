"""Exact arithmetic kernel: multivariate polynomials over a prime field and
dense linear algebra on graded pieces.

Everything here is exact modulo a prime p.  Graded pieces R_d of a polynomial
ring carry a fixed graded-lexicographic monomial basis, so ranks, kernels and
normal-form complements are deterministic across runs.

Two performance devices matter at catalog scale:

* a streaming reduced-row-echelon accumulator (`Echelon`) whose row updates
  are BLAS matmuls (exact in float64 because entries stay below p < 2**16);
* an optional `Multigrading` that splits each R_d into small blocks.  When a
  matrix has one private monomial per cell (generic or power matrices), all
  its minors, syzygies and Hom-constraints are multihomogeneous, and every
  elimination decomposes into per-block problems that are orders of magnitude
  smaller than the full graded piece.  The ungraded case is simply the
  one-block instance of the same code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "PrimeField",
    "MultiPoly",
    "GradedPieceMap",
    "Multigrading",
    "PolyRing",
    "Echelon",
    "monomials",
    "mul_map",
    "rank",
    "kernel_basis",
    "solve",
    "row_space_complement",
    "random_homogeneous",
]

# fits comfortably in exact float64 accumulation for any p < 2**16
_MAX_PRIME = 2**16


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The coefficient field F_p.  Defaults to p = 101."""

    p: int = 101

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        if self.p <= 2:
            raise ValueError("modulus must be an odd prime > 2")
        if self.p >= _MAX_PRIME:
            raise ValueError(f"modulus must be < {_MAX_PRIME}")

    @property
    def inverses(self) -> np.ndarray:
        return _inverse_table(self.p)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.inverses[a])


@lru_cache(maxsize=8)
def _inverse_table(p: int) -> np.ndarray:
    tab = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        tab[a] = pow(a, -1, p)
    tab.setflags(write=False)
    return tab


# ---------------------------------------------------------------------------
# monomial bases
# ---------------------------------------------------------------------------


def _exponent_rows(nvars: int, d: int) -> np.ndarray:
    """All exponent vectors of total degree d, graded-lex descending."""
    if nvars == 1:
        return np.array([[d]], dtype=np.int16)
    rows = []
    for e0 in range(d, -1, -1):
        rest = _exponent_rows(nvars - 1, d - e0)
        block = np.empty((rest.shape[0], nvars), dtype=np.int16)
        block[:, 0] = e0
        block[:, 1:] = rest
        rows.append(block)
    return np.vstack(rows)


class MonomialBasis:
    """The degree-d piece of k[x_0..x_{nvars-1}] with a fixed monomial order."""

    __slots__ = ("nvars", "degree", "exps", "dim", "_index")

    def __init__(self, nvars: int, degree: int):
        self.nvars = nvars
        self.degree = degree
        if degree < 0:
            self.exps = np.zeros((0, nvars), dtype=np.int16)
        else:
            self.exps = _exponent_rows(nvars, degree)
        self.exps.setflags(write=False)
        self.dim = self.exps.shape[0]
        self._index: dict[bytes, int] = {
            row.tobytes(): i for i, row in enumerate(self.exps)
        }

    def index_of(self, exp: np.ndarray) -> int:
        return self._index[np.asarray(exp, dtype=np.int16).tobytes()]

    def index_many(self, rows: np.ndarray) -> np.ndarray:
        idx = self._index
        out = np.empty(rows.shape[0], dtype=np.int64)
        for i, row in enumerate(np.asarray(rows, dtype=np.int16)):
            out[i] = idx[row.tobytes()]
        return out


@lru_cache(maxsize=None)
def _basis(nvars: int, degree: int) -> MonomialBasis:
    return MonomialBasis(nvars, degree)


def monomials(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Ordered monomial basis of R_d for R = k[x_0..x_n], as exponent tuples."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    return tuple(tuple(int(e) for e in row) for row in _basis(n + 1, d).exps)


def graded_dim(nvars: int, d: int) -> int:
    """dim_k R_d for a polynomial ring in `nvars` variables."""
    if d < 0:
        return 0
    return math.comb(nvars - 1 + d, d)


@lru_cache(maxsize=None)
def _var_shift(nvars: int, d: int, v: int) -> np.ndarray:
    """Index map R_d -> R_{d+1}, multiplication by x_v."""
    src = _basis(nvars, d)
    tgt = _basis(nvars, d + 1)
    shifted = src.exps.copy()
    shifted[:, v] += 1
    out = tgt.index_many(shifted)
    out.setflags(write=False)
    return out


# ---------------------------------------------------------------------------
# sparse multivariate polynomials
# ---------------------------------------------------------------------------


class MultiPoly:
    """A sparse multivariate polynomial with coefficients in F_p.

    Terms are stored as an exponent-tuple -> coefficient map with no zero
    coefficients.  The total degree of each stored term is cached via the
    homogeneity check used throughout the package.
    """

    __slots__ = ("nvars", "field", "terms", "_degree")

    def __init__(self, nvars: int, field: PrimeField,
                 terms: Mapping[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        self.field = field
        clean: dict[tuple[int, ...], int] = {}
        for exp, c in (terms or {}).items():
            c %= field.p
            if c:
                if len(exp) != nvars:
                    raise ValueError("exponent length mismatch")
                clean[tuple(int(e) for e in exp)] = c
        self.terms = clean
        degs = {sum(e) for e in clean}
        self._degree = degs.pop() if len(degs) == 1 else (0 if not degs else None)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, field: PrimeField) -> "MultiPoly":
        return cls(nvars, field, {})

    @classmethod
    def constant(cls, nvars: int, field: PrimeField, c: int) -> "MultiPoly":
        return cls(nvars, field, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, field: PrimeField, v: int, power: int = 1) -> "MultiPoly":
        exp = [0] * nvars
        exp[v] = power
        return cls(nvars, field, {tuple(exp): 1})

    @classmethod
    def from_coords(cls, nvars: int, field: PrimeField, degree: int,
                    coords: np.ndarray) -> "MultiPoly":
        basis = _basis(nvars, degree)
        terms = {}
        for i in np.nonzero(coords % field.p)[0]:
            terms[tuple(int(e) for e in basis.exps[i])] = int(coords[i]) % field.p
        return cls(nvars, field, terms)

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_homogeneous(self) -> bool:
        return self._degree is not None

    @property
    def degree(self) -> int:
        if self._degree is None:
            raise ValueError("polynomial is not homogeneous")
        return self._degree

    def coords(self) -> np.ndarray:
        """Coordinate vector in the monomial basis of its degree."""
        basis = _basis(self.nvars, self.degree)
        vec = np.zeros(basis.dim, dtype=np.int64)
        for exp, c in self.terms.items():
            vec[basis.index_of(np.array(exp, dtype=np.int16))] = c
        return vec

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, 0) + c
        return MultiPoly(self.nvars, self.field, terms)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + other.scale(-1)

    def scale(self, c: int) -> "MultiPoly":
        return MultiPoly(self.nvars, self.field,
                         {e: v * c for e, v in self.terms.items()})

    def __neg__(self) -> "MultiPoly":
        return self.scale(-1)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, self.field, terms)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Evaluate at x_v -> images[v] (used for linear-section tests)."""
        tgt_nvars = images[0].nvars
        out = MultiPoly.zero(tgt_nvars, self.field)
        for exp, c in self.terms.items():
            term = MultiPoly.constant(tgt_nvars, self.field, c)
            for v, e in enumerate(exp):
                for _ in range(e):
                    term = term * images[v]
            out = out + term
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        bits = []
        for exp, c in sorted(self.terms.items(), reverse=True):
            mon = "*".join(
                f"x{v}" + (f"^{e}" if e > 1 else "")
                for v, e in enumerate(exp) if e
            )
            bits.append(f"{c}" if not mon else (mon if c == 1 else f"{c}*{mon}"))
        return " + ".join(bits)


def random_homogeneous(degree: int, n: int, seed: int,
                       field: PrimeField | None = None) -> MultiPoly:
    """Dense homogeneous polynomial with seeded, reproducible coefficients.

    Coefficients come from numpy's Philox counter-based generator keyed by
    `seed`, so equal seeds give bit-identical output and distinct seeds are
    independent streams.  Identically-zero draws are regenerated from the
    same stream.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    field = field or PrimeField()
    nvars = n + 1
    dim = graded_dim(nvars, degree)
    gen = np.random.Generator(np.random.Philox(key=seed))
    while True:
        coords = gen.integers(0, field.p, size=dim, dtype=np.int64)
        if coords.any():
            return MultiPoly.from_coords(nvars, field, degree, coords)


# ---------------------------------------------------------------------------
# exact elimination
# ---------------------------------------------------------------------------


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p.  float64 matmul is exact while the accumulated
    dot products stay below 2**53, which holds for inner dimensions up to
    2**53 / p**2 (more than 10**9 rows even at p = 3001)."""
    if a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    bf = b.astype(np.float64)
    out = np.empty((a.shape[0], b.shape[1]), dtype=np.int64)
    step = max(1, int(4e7) // max(1, b.shape[1]))
    for lo in range(0, a.shape[0], step):
        hi = min(lo + step, a.shape[0])
        out[lo:hi] = np.mod(a[lo:hi].astype(np.float64) @ bf, p).astype(np.int64)
    return out


class Echelon:
    """Streaming reduced row echelon form over F_p.

    Rows are fed in blocks; the accumulated pivot rows are kept fully
    reduced (identity on pivot columns), so reinstating incoming blocks is a
    single matmul.  Pivot selection is deterministic: first nonzero column
    of each processed row, rows in arrival order.
    """

    def __init__(self, ncols: int, field: PrimeField):
        self.ncols = ncols
        self.field = field
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []
        self._pivset: set[int] = set()

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, block: np.ndarray) -> np.ndarray:
        """Normal form of the given rows modulo the current row space."""
        p = self.field.p
        block = np.atleast_2d(np.asarray(block, dtype=np.int64)) % p
        if self.rank == 0 or block.shape[0] == 0:
            return block
        coef = block[:, self.pivots]
        return (block - _matmul_mod(coef, self.rows, p)) % p

    def add_rows(self, block: np.ndarray) -> int:
        """Absorb rows, returning the number of new pivots."""
        p = self.field.p
        inv = self.field.inverses
        block = np.atleast_2d(np.asarray(block, dtype=np.int64)) % p
        added = 0
        chunk = 512
        for lo in range(0, block.shape[0], chunk):
            part = self.reduce(block[lo:lo + chunk])
            part = part[part.any(axis=1)]
            if part.shape[0] == 0:
                continue
            new_rows, new_pivots = _rref_dense(part, p, inv)
            if not new_pivots:
                continue
            # keep old rows reduced at the new pivot columns
            if self.rank:
                coef = self.rows[:, new_pivots]
                if coef.any():
                    self.rows = (self.rows - _matmul_mod(coef, new_rows, p)) % p
            self.rows = np.vstack([self.rows, new_rows])
            self.pivots.extend(new_pivots)
            self._pivset.update(new_pivots)
            added += len(new_pivots)
        return added

    def nonpivots(self) -> np.ndarray:
        return np.array(
            [j for j in range(self.ncols) if j not in self._pivset],
            dtype=np.int64,
        )

    def kernel_basis(self) -> np.ndarray:
        """Columns spanning the kernel of the stacked row-matrix, viewing the
        absorbed rows as equations on ncols unknowns."""
        p = self.field.p
        free = self.nonpivots()
        ker = np.zeros((self.ncols, free.size), dtype=np.int64)
        ker[free, np.arange(free.size)] = 1
        if self.rank:
            ker[np.array(self.pivots, dtype=np.int64)[:, None],
                np.arange(free.size)[None, :]] = (-self.rows[:, free]) % p
        return ker


def _rref_dense(mat: np.ndarray, p: int, inv: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Full RREF of a modest block.  Recursion keeps the row updates in
    matmul form; the base case is a classic vectorized sweep."""
    mat = mat % p
    m = mat.shape[0]
    if m == 0:
        return mat, []
    if m <= 48:
        rows: list[np.ndarray] = []
        pivots: list[int] = []
        for i in range(m):
            row = mat[i].copy()
            for r, c in zip(rows, pivots):
                f = row[c]
                if f:
                    row = (row - f * r) % p
            nz = np.nonzero(row)[0]
            if nz.size == 0:
                continue
            c = int(nz[0])
            row = (row * inv[row[c]]) % p
            for k in range(len(rows)):
                f = rows[k][c]
                if f:
                    rows[k] = (rows[k] - f * row) % p
            rows.append(row)
            pivots.append(c)
        if not rows:
            return np.zeros((0, mat.shape[1]), dtype=np.int64), []
        return np.array(rows, dtype=np.int64), pivots
    half = m // 2
    top, tp = _rref_dense(mat[:half], p, inv)
    bot = mat[half:]
    if tp:
        bot = (bot - _matmul_mod(bot[:, tp], top, p)) % p
    bot, bp = _rref_dense(bot, p, inv)
    if bp and tp:
        coef = top[:, bp]
        if coef.any():
            top = (top - _matmul_mod(coef, bot, p)) % p
    return np.vstack([top, bot]), tp + bp


# ---------------------------------------------------------------------------
# graded piece maps
# ---------------------------------------------------------------------------


@dataclass
class GradedPieceMap:
    """An exact linear map between monomial-coordinate spaces of graded
    pieces (or labeled direct sums of such)."""

    field: PrimeField
    matrix: np.ndarray  # (target_dim, source_dim)
    source_degree: int = 0
    target_degree: int = 0

    def __post_init__(self) -> None:
        self.matrix = np.asarray(self.matrix, dtype=np.int64) % self.field.p

    @property
    def source_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def target_dim(self) -> int:
        return self.matrix.shape[0]

    def compose(self, inner: "GradedPieceMap") -> "GradedPieceMap":
        return GradedPieceMap(
            self.field,
            _matmul_mod(self.matrix, inner.matrix, self.field.p),
            inner.source_degree,
            self.target_degree,
        )


def rank(m: GradedPieceMap | np.ndarray, field: PrimeField | None = None) -> int:
    mat, fld = _as_matrix(m, field)
    ech = Echelon(mat.shape[1], fld)
    ech.add_rows(mat)
    return ech.rank


def kernel_basis(m: GradedPieceMap | np.ndarray,
                 field: PrimeField | None = None) -> np.ndarray:
    """Basis (as columns) of {x : m x = 0}."""
    mat, fld = _as_matrix(m, field)
    ech = Echelon(mat.shape[1], fld)
    ech.add_rows(mat)
    return ech.kernel_basis()


def solve(m: GradedPieceMap | np.ndarray, target: np.ndarray,
          field: PrimeField | None = None) -> np.ndarray | None:
    """One solution of m x = target, or None when inconsistent."""
    mat, fld = _as_matrix(m, field)
    target = np.asarray(target, dtype=np.int64).reshape(-1) % fld.p
    if target.shape[0] != mat.shape[0]:
        raise ValueError("target length mismatch")
    aug = np.hstack([mat, target[:, None]])
    ech = Echelon(aug.shape[1], fld)
    ech.add_rows(aug)
    last = aug.shape[1] - 1
    if last in ech._pivset:
        return None
    x = np.zeros(mat.shape[1], dtype=np.int64)
    for r, c in enumerate(ech.pivots):
        x[c] = ech.rows[r, last]
    return x


def row_space_complement(m: GradedPieceMap | np.ndarray,
                         field: PrimeField | None = None) -> np.ndarray:
    """Non-pivot column labels of the RREF of m's rows: the deterministic
    normal-form (coset representative) basis for the quotient by the row
    space."""
    mat, fld = _as_matrix(m, field)
    ech = Echelon(mat.shape[1], fld)
    ech.add_rows(mat)
    return ech.nonpivots()


def _as_matrix(m: GradedPieceMap | np.ndarray,
               field: PrimeField | None) -> tuple[np.ndarray, PrimeField]:
    if isinstance(m, GradedPieceMap):
        return m.matrix, m.field
    if field is None:
        raise ValueError("field required for raw arrays")
    return np.asarray(m, dtype=np.int64) % field.p, field


# ---------------------------------------------------------------------------
# multigraded polynomial rings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Multigrading:
    """Integer multidegrees on variables, used to block-diagonalize graded
    pieces.  `weights` has one row per grading axis and one column per
    variable; the multidegree of a monomial is weights @ exponents.

    For a matrix grid the first t axes are rows and the next q are columns;
    `scale` is the common weight every matrix entry carries on its row axis
    and on its column axis, so presentation maps shift multidegrees uniformly
    no matter which cell they pass through."""

    weights: tuple[tuple[int, ...], ...]
    rows: int = 0
    cols: int = 0
    scale: int = 1

    @property
    def naxes(self) -> int:
        return len(self.weights)

    def matrix(self) -> np.ndarray:
        return np.array(self.weights, dtype=np.int64)

    def monomial_keys(self, exps: np.ndarray) -> np.ndarray:
        return np.asarray(exps, dtype=np.int64) @ self.matrix().T

    def poly_key(self, f: MultiPoly) -> tuple[int, ...] | None:
        """Common multidegree of f's terms, or None if mixed."""
        if f.is_zero:
            return None
        keys = {tuple(int(x) for x in self.matrix() @ np.array(e, dtype=np.int64))
                for e in f.terms}
        if len(keys) != 1:
            return None
        return keys.pop()

    def row_shift(self, i: int) -> tuple[int, ...]:
        """Multidegree contribution of crossing row i of the grid."""
        out = [0] * self.naxes
        out[i] = self.scale
        return tuple(out)

    def col_shift(self, j: int) -> tuple[int, ...]:
        out = [0] * self.naxes
        out[self.rows + j] = self.scale
        return tuple(out)

    @staticmethod
    def from_grid(t: int, q: int, nvars: int,
                  cells: Mapping[tuple[int, int], int],
                  exponents: Mapping[tuple[int, int], int] | None = None,
                  ) -> "Multigrading":
        """Row/column axes for a t x q matrix whose cell (i, j) owns the
        private variable cells[(i, j)], appearing with the given exponent
        (default 1).  Weights are scaled by lcm of the exponents so that every
        entry x_{ij}^e has multidegree scale*(row_i + col_j).  Variables
        outside the grid each get their own axis, keeping blocks small."""
        exponents = exponents or {}
        exps = [max(1, int(exponents.get(cell, 1))) for cell in cells]
        scale = 1
        for e in exps:
            scale = scale * e // math.gcd(scale, e)
        extra = [v for v in range(nvars) if v not in set(cells.values())]
        naxes = t + q + len(extra)
        w = np.zeros((naxes, nvars), dtype=np.int64)
        for (i, j), v in cells.items():
            e = max(1, int(exponents.get((i, j), 1)))
            w[i, v] = scale // e
            w[t + j, v] = scale // e
        for k, v in enumerate(extra):
            w[t + q + k, v] = scale
        return Multigrading(
            tuple(tuple(int(x) for x in row) for row in w),
            rows=t, cols=q, scale=scale,
        )


_TRIVIAL_KEY: tuple[int, ...] = ()


class PolyRing:
    """k[x_0..x_{nvars-1}] over F_p with cached bases, block decompositions
    and multiplication maps."""

    def __init__(self, nvars: int, field: PrimeField,
                 grading: Multigrading | None = None):
        self.nvars = nvars
        self.field = field
        self.grading = grading
        self._blocks: dict[int, dict[tuple[int, ...], np.ndarray]] = {}

    # ring: projective dimension n = nvars - 1
    @property
    def n(self) -> int:
        return self.nvars - 1

    def basis(self, d: int) -> MonomialBasis:
        return _basis(self.nvars, d)

    def dim(self, d: int) -> int:
        return graded_dim(self.nvars, d)

    def blocks(self, d: int) -> dict[tuple[int, ...], np.ndarray]:
        """Partition of the degree-d monomial indices by multidegree.
        Index arrays are sorted ascending.  The trivial grading yields a
        single block keyed by ()."""
        cached = self._blocks.get(d)
        if cached is not None:
            return cached
        if d < 0:
            out: dict[tuple[int, ...], np.ndarray] = {}
        elif self.grading is None:
            out = {_TRIVIAL_KEY: np.arange(self.dim(d), dtype=np.int64)}
        else:
            keys = self.grading.monomial_keys(self.basis(d).exps)
            uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
            out = {}
            for i, key in enumerate(uniq):
                idx = np.nonzero(inverse == i)[0].astype(np.int64)
                out[tuple(int(x) for x in key)] = idx
        for idx in out.values():
            idx.setflags(write=False)
        self._blocks[d] = out
        return out

    def block(self, d: int, key: tuple[int, ...]) -> np.ndarray:
        blk = self.blocks(d).get(key)
        if blk is None:
            return np.zeros(0, dtype=np.int64)
        return blk

    def poly_key(self, f: MultiPoly) -> tuple[int, ...]:
        if self.grading is None:
            return _TRIVIAL_KEY
        key = self.grading.poly_key(f)
        if key is None:
            raise ValueError("polynomial is not multihomogeneous for this ring")
        return key

    def shift_key(self, key: tuple[int, ...], by: tuple[int, ...]) -> tuple[int, ...]:
        if self.grading is None:
            return _TRIVIAL_KEY
        return tuple(a + b for a, b in zip(key, by))

    def diff_key(self, key: tuple[int, ...], by: tuple[int, ...]) -> tuple[int, ...]:
        if self.grading is None:
            return _TRIVIAL_KEY
        return tuple(a - b for a, b in zip(key, by))

    def var_shift(self, d: int, v: int) -> np.ndarray:
        return _var_shift(self.nvars, d, v)

    def var_key(self, v: int) -> tuple[int, ...]:
        if self.grading is None:
            return _TRIVIAL_KEY
        return tuple(int(row[v]) for row in self.grading.weights)

    def mul_block(self, f: MultiPoly, d: int, src_idx: np.ndarray,
                  tgt_idx: np.ndarray) -> np.ndarray:
        """Matrix of multiplication by homogeneous f, restricted to the given
        source monomials of R_d and expressed on the given target monomials
        of R_{d + deg f}.  Raises if a product lands outside `tgt_idx`."""
        e = f.degree
        tgt_basis = self.basis(d + e)
        src_exps = self.basis(d).exps[src_idx]
        out = np.zeros((tgt_idx.size, src_idx.size), dtype=np.int64)
        if src_idx.size == 0 or f.is_zero:
            return out
        cols = np.arange(src_idx.size)
        for exp, c in f.terms.items():
            rows_global = tgt_basis.index_many(src_exps + np.array(exp, dtype=np.int16))
            pos = np.searchsorted(tgt_idx, rows_global)
            if np.any(pos >= tgt_idx.size) or np.any(tgt_idx[pos] != rows_global):
                raise ValueError("product monomial outside target block")
            out[pos, cols] = (out[pos, cols] + c) % self.field.p
        return out


def mul_map(f: MultiPoly, d: int, ring: PolyRing | None = None) -> GradedPieceMap:
    """Multiplication by a homogeneous polynomial as a map R_d -> R_{d+e}."""
    if not f.is_homogeneous:
        raise ValueError("multiplication map requires a homogeneous polynomial")
    ring = ring or PolyRing(f.nvars, f.field)
    if f.is_zero:
        mat = np.zeros((ring.dim(d), ring.dim(d)), dtype=np.int64)
        return GradedPieceMap(ring.field, mat, d, d)
    src = np.arange(ring.dim(d), dtype=np.int64)
    tgt = np.arange(ring.dim(d + f.degree), dtype=np.int64)
    mat = ring.mul_block(f, d, src, tgt)
    return GradedPieceMap(ring.field, mat, d, d + f.degree)
