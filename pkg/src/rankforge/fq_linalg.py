"""Dense exact linear algebra over F_q and F_{q^m}, plus q-analog counting.

Matrices store raw integer entries (F_q values in [0, q) for BaseMatrix,
element indices for ExtMatrix) together with the owning FieldSpec; the
elimination engine is shared between the two levels.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .budget import check_budget
from .errors import InvalidParameterError, ShapeError, SpecMismatchError
from .field_arith import Element, FieldSpec


class _MatrixBase:
    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, spec: FieldSpec, entries: Sequence[Sequence]):
        self.spec = spec
        rows = [list(self._coerce_row(r)) for r in entries]
        if not rows:
            raise ShapeError("matrix needs at least one row")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ShapeError("ragged rows")
        self.rows = len(rows)
        self.cols = cols
        self.entries = rows

    def _coerce_row(self, row):
        raise NotImplementedError

    def __eq__(self, other):
        return (type(self) is type(other) and self.spec == other.spec
                and self.entries == other.entries)

    def __hash__(self):
        return hash((type(self).__name__, self.spec,
                     tuple(tuple(r) for r in self.entries)))

    def copy_entries(self):
        return [list(r) for r in self.entries]

    def __repr__(self):
        return f"{type(self).__name__}({self.rows}x{self.cols} over {self.spec!r})"


class BaseMatrix(_MatrixBase):
    """Matrix over F_q; entries are ints in [0, q)."""

    def _coerce_row(self, row):
        q = self.spec.q
        out = []
        for v in row:
            v = int(v)
            if not 0 <= v < q:
                raise InvalidParameterError(f"F_q entry out of range: {v}")
            out.append(v)
        return out

    @classmethod
    def identity(cls, spec, n):
        return cls(spec, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, spec, rows, cols):
        return cls(spec, [[0] * cols for _ in range(rows)])

    def _ops(self):
        return self.spec.base_field

    def to_json(self):
        enc = self.spec._base_value_to_json
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[enc(v) for v in row] for row in self.entries]}

    @classmethod
    def from_json(cls, spec, data):
        rows = [[spec._coerce_base_value(v) for v in row] for row in data["entries"]]
        mat = cls(spec, rows)
        if mat.rows != data["rows"] or mat.cols != data["cols"]:
            raise InvalidParameterError("matrix dimensions disagree with entries")
        return mat


class ExtMatrix(_MatrixBase):
    """Matrix over F_{q^m}; entries are element indices (or Element values)."""

    def _coerce_row(self, row):
        spec = self.spec
        out = []
        for v in row:
            if isinstance(v, Element):
                if v.spec != spec:
                    raise SpecMismatchError("entry from a different field tower")
                out.append(v.idx)
            else:
                v = int(v)
                if not 0 <= v < spec.order:
                    raise InvalidParameterError(f"element index out of range: {v}")
                out.append(v)
        return out

    @classmethod
    def identity(cls, spec, n):
        return cls(spec, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, spec, rows, cols):
        return cls(spec, [[0] * cols for _ in range(rows)])

    def entry(self, i, j) -> Element:
        return Element(self.spec, self.entries[i][j])

    def _ops(self):
        return self.spec

    def to_json(self):
        spec = self.spec
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[Element(spec, v).coeffs() for v in row]
                            for row in self.entries]}

    @classmethod
    def from_json(cls, spec, data):
        rows = [[spec.element_from_coeffs(v).idx for v in row]
                for row in data["entries"]]
        mat = cls(spec, rows)
        if mat.rows != data["rows"] or mat.cols != data["cols"]:
            raise InvalidParameterError("matrix dimensions disagree with entries")
        return mat


# --------------------------------------------------------------------------
# Shared elimination engine.  `ops` is any bundle with add/sub/mul/neg/inv
# on raw ints (FieldSpec for the extension level, spec.base_field for F_q).

def _rref_in_place(rows, ops, transform=None):
    """Reduce `rows` to RREF in place; returns the list of pivot columns.

    Pivoting takes the first nonzero entry scanning top-to-bottom in each
    column, left to right (exact field, no magnitude concerns).  When
    `transform` is given the same row operations are applied to it.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            if transform is not None:
                transform[r], transform[pivot] = transform[pivot], transform[r]
        p_inv = ops.inv(rows[r][c])
        if rows[r][c] != 1:
            rows[r] = [ops.mul(p_inv, v) for v in rows[r]]
            if transform is not None:
                transform[r] = [ops.mul(p_inv, v) for v in transform[r]]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                rows[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(rows[i], rows[r])]
                if transform is not None:
                    transform[i] = [ops.sub(x, ops.mul(f, y))
                                    for x, y in zip(transform[i], transform[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def _rank_raw(rows, ops, cap=None) -> int:
    """Rank by forward elimination; stops early once `cap` is reached."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    rank_ = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank_, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank_], rows[pivot] = rows[pivot], rows[rank_]
        p_inv = ops.inv(rows[rank_][c])
        prow = rows[rank_]
        for i in range(rank_ + 1, nrows):
            f = rows[i][c]
            if f:
                f = ops.mul(f, p_inv)
                rows[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(rows[i], prow)]
        rank_ += 1
        if rank_ == nrows or (cap is not None and rank_ >= cap):
            break
    return rank_


def rref(M):
    """Reduced row echelon form.

    Returns (R, rank, T) with T * M = R and T invertible; R is the unique
    RREF of M and rank is its number of pivots.
    """
    ops = M._ops()
    rows = M.copy_entries()
    transform = [[1 if i == j else 0 for j in range(M.rows)] for i in range(M.rows)]
    pivots = _rref_in_place(rows, ops, transform)
    kind = type(M)
    return kind(M.spec, rows), len(pivots), kind(M.spec, transform)


def rank(M) -> int:
    return _rank_raw(M.entries, M._ops())


def det(M):
    """Determinant; an F_q int for BaseMatrix, an Element for ExtMatrix."""
    if M.rows != M.cols:
        raise ShapeError(f"determinant needs a square matrix, got {M.rows}x{M.cols}")
    ops = M._ops()
    rows = M.copy_entries()
    n = M.rows
    result = 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c]), None)
        if pivot is None:
            result = 0
            break
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            result = ops.neg(result)
        result = ops.mul(result, rows[c][c])
        p_inv = ops.inv(rows[c][c])
        prow = rows[c]
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = ops.mul(f, p_inv)
                rows[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(rows[i], prow)]
    if isinstance(M, ExtMatrix):
        return Element(M.spec, result)
    return result


def intersection_dim(U, W) -> int:
    """dim(rowspace(U) ∩ rowspace(W)) = rk(U) + rk(W) - rk([U; W])."""
    if type(U) is not type(W) or U.spec != W.spec:
        raise SpecMismatchError("matrices live over different fields")
    if U.cols != W.cols:
        raise ShapeError("column counts differ")
    ops = U._ops()
    ru = _rank_raw(U.entries, ops)
    rw = _rank_raw(W.entries, ops)
    stacked = U.entries + W.entries
    return ru + rw - _rank_raw(stacked, ops)


# --------------------------------------------------------------------------
# q-analog combinatorics (exact big-integer arithmetic throughout).

def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if q < 2:
        raise InvalidParameterError(f"q must be at least 2, got {q}")
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** n - q ** i
        den *= q ** k - q ** i
    assert num % den == 0
    return num // den


def count_intersecting_subspaces(n: int, k: int, r: int, q: int) -> int:
    """Number of k-dim subspaces of F_q^n meeting a fixed k-dim subspace
    in a (k-r)-dimensional subspace."""
    if not 0 <= r <= k <= n:
        raise InvalidParameterError(f"need 0 <= r <= k <= n, got r={r}, k={k}, n={n}")
    return (gaussian_binomial(k, k - r, q)
            * gaussian_binomial(n - k, r, q)
            * q ** (r * r))


class EchelonIterator:
    """All full-rank k x n matrices over F_q in reduced row echelon form.

    Pivot-column subsets are visited in lexicographic order; within one
    pivot set the free entries (right of their row's pivot, outside pivot
    columns) run through an odometer.  O(1) memory, reproducible order,
    single consumer.
    """

    def __init__(self, k: int, n: int, spec: FieldSpec):
        if not 1 <= k <= n:
            raise InvalidParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
        self.k = k
        self.n = n
        self.q = spec.q
        self.spec = spec
        self.total = gaussian_binomial(n, k, spec.q)
        check_budget(self.total, f"echelon-form enumeration T({k},{n})")
        self._iter = self._generate()

    def _generate(self):
        k, n, q, spec = self.k, self.n, self.q, self.spec
        for pivots in itertools.combinations(range(n), k):
            free = [(r, c) for r in range(k) for c in range(n)
                    if c > pivots[r] and c not in pivots]
            for values in itertools.product(range(q), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for r, c in enumerate(pivots):
                    rows[r][c] = 1
                for (r, c), v in zip(free, values):
                    rows[r][c] = v
                yield BaseMatrix(spec, rows)

    def __iter__(self):
        return self

    def __next__(self):
        return next(self._iter)


def enumerate_rref(k: int, n: int, spec: FieldSpec) -> EchelonIterator:
    return EchelonIterator(k, n, spec)


def expand_to_base(v: Sequence[Element], spec: FieldSpec | None = None) -> BaseMatrix:
    """m x n matrix over F_q whose column j holds the coefficients of v[j]."""
    idxs = []
    for x in v:
        if isinstance(x, Element):
            if spec is None:
                spec = x.spec
            elif x.spec != spec:
                raise SpecMismatchError("mixed field towers in vector")
            idxs.append(x.idx)
        else:
            idxs.append(int(x))
    if spec is None:
        raise InvalidParameterError("cannot infer the field of an empty raw vector")
    cols = [spec.digits(a) for a in idxs]
    rows = [[cols[j][i] for j in range(len(idxs))] for i in range(spec.m)]
    return BaseMatrix(spec, rows)


def _expanded_rank(spec: FieldSpec, idx_vector, cap=None) -> int:
    """Rank over F_q of the coefficient expansion of a raw index vector.

    For q = 2 the expansion columns are exactly the m-bit indices, so the
    elimination runs on packed ints; otherwise digit vectors are used.
    Stops as soon as the rank reaches `cap`.
    """
    if spec.q == 2:
        basis = {}  # highest set bit -> basis vector
        rank_ = 0
        for v in idx_vector:
            while v:
                h = v.bit_length() - 1
                b = basis.get(h)
                if b is None:
                    basis[h] = v
                    rank_ += 1
                    break
                v ^= b
            if cap is not None and rank_ >= cap:
                return rank_
        return rank_
    fq = spec.base_field
    basis = {}  # lead digit index -> vector normalized to 1 at the lead
    rank_ = 0
    for a in idx_vector:
        if a == 0:
            continue
        vec = list(spec.digits(a))
        while True:
            lead = next((i for i, c in enumerate(vec) if c), None)
            if lead is None:
                break
            b = basis.get(lead)
            if b is None:
                s = fq.inv(vec[lead])
                basis[lead] = [fq.mul(s, c) for c in vec]
                rank_ += 1
                break
            c = vec[lead]
            vec = [fq.sub(x, fq.mul(c, y)) for x, y in zip(vec, b)]
        if cap is not None and rank_ >= cap:
            return rank_
    return rank_
