"""Linear rank-metric codes in F_{q^m}^n: construction and basic invariants.

A code is held by a generator matrix; the reduced row echelon form is
computed once at construction and serves both as the canonical form for
row-space comparison and as the source of the systematic block.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .budget import check_budget
from .errors import InvalidParameterError, ShapeError, SpecMismatchError
from .field_arith import Element, FieldSpec, linearly_independent_over_base
from .fq_linalg import (BaseMatrix, ExtMatrix, _expanded_rank, _rank_raw,
                        _rref_in_place)

_SCALED_ROW_CACHE_MAX = 2 ** 21  # total ints held by min-distance row tables


class RankCode:
    """A k-dimensional linear code in F_{q^m}^n given by a generator matrix.

    Immutable; the canonical RREF generator and the systematic block (when
    the leading k x k block pivots) are computed at construction.
    """

    def __init__(self, spec: FieldSpec, G: ExtMatrix):
        if G.spec != spec:
            raise SpecMismatchError("generator belongs to a different field tower")
        self.spec = spec
        self.G = G
        self.k = G.rows
        self.n = G.cols
        if not 1 <= self.k <= self.n:
            raise InvalidParameterError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        rows = G.copy_entries()
        pivots = _rref_in_place(rows, spec)
        if len(pivots) != self.k:
            raise InvalidParameterError("generator matrix does not have full row rank")
        self.canonical = ExtMatrix(spec, rows)
        if pivots == list(range(self.k)):
            self.systematic_X = ExtMatrix(
                spec, [row[self.k:] for row in rows]) if self.k < self.n else None
            self._is_systematic = True
        else:
            self.systematic_X = None
            self._is_systematic = False

    def __eq__(self, other):
        """Row-space equality, via the canonical RREF generator."""
        return (isinstance(other, RankCode) and self.spec == other.spec
                and self.canonical == other.canonical)

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        return f"RankCode(n={self.n}, k={self.k}, q={self.spec.q}, m={self.spec.m})"

    @classmethod
    def from_systematic(cls, spec: FieldSpec, X: ExtMatrix) -> "RankCode":
        """Code generated by [I_k | X]."""
        k = X.rows
        rows = [[1 if i == j else 0 for j in range(k)] + list(X.entries[i])
                for i in range(k)]
        return cls(spec, ExtMatrix(spec, rows))

    def to_json(self) -> dict:
        return {"field": self.spec.to_json(), "n": self.n, "k": self.k,
                "generator": self.G.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RankCode":
        spec = FieldSpec.from_json(data["field"])
        G = ExtMatrix.from_json(spec, data["generator"])
        code = cls(spec, G)
        if code.n != data["n"] or code.k != data["k"]:
            raise InvalidParameterError("declared (n, k) disagree with the generator")
        return code


@dataclass(frozen=True)
class Isometry:
    """A semilinear rank isometry (lambda, A, sigma): entrywise x -> sigma(lambda x)
    followed by right multiplication with A in GL_n(q); sigma = x -> x^(q^i)."""

    lam: Element
    A: BaseMatrix
    sigma_power: int


def rank_distance(x: Sequence[Element], y: Sequence[Element]) -> int:
    """Rank over F_q of the coefficient expansion of x - y."""
    if len(x) != len(y):
        raise ShapeError(f"length mismatch: {len(x)} vs {len(y)}")
    if not x:
        raise ShapeError("empty vectors")
    spec = x[0].spec
    diff = []
    for a, b in zip(x, y):
        if a.spec != spec or b.spec != spec:
            raise SpecMismatchError("mixed field towers")
        diff.append(spec.sub(a.idx, b.idx))
    return _expanded_rank(spec, diff)


def systematic_form(code: RankCode) -> ExtMatrix | None:
    """The block X with rowspace([I_k | X]) = C, or None when the leading
    k x k block of the RREF is not the identity (or when k = n, where the
    block would be empty)."""
    return code.systematic_X


def moore_matrix(g: Sequence[Element], s: int, k: int) -> ExtMatrix:
    """k x n matrix whose row i is the entrywise (q^s)^i-power of g."""
    if not g:
        raise ShapeError("empty evaluation vector")
    if k < 1:
        raise InvalidParameterError(f"k must be positive, got {k}")
    spec = g[0].spec
    row = []
    for x in g:
        if x.spec != spec:
            raise SpecMismatchError("mixed field towers")
        row.append(x.idx)
    rows = [list(row)]
    for _ in range(k - 1):
        row = [spec.frobenius(v, s) for v in row]
        rows.append(row)
    return ExtMatrix(spec, rows)


def gabidulin(g: Sequence[Element], s: int, k: int) -> RankCode:
    """Code generated by the s-Moore matrix of F_q-independent elements g."""
    if not g:
        raise ShapeError("empty evaluation vector")
    spec = g[0].spec
    n = len(g)
    if n > spec.m:
        raise InvalidParameterError(
            f"n = {n} exceeds m = {spec.m}; independent tuples of that length do not exist")
    if not 1 <= k <= n:
        raise InvalidParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    if s < 1 or gcd(s, spec.m) != 1:
        raise InvalidParameterError(f"s = {s} is not coprime to m = {spec.m}")
    if not linearly_independent_over_base(list(g)):
        raise InvalidParameterError("evaluation points are F_q-linearly dependent")
    return RankCode(spec, moore_matrix(g, s, k))


def _scaled_row_table(spec: FieldSpec, row):
    """All F_{q^m}-multiples of a raw row, indexed by the scalar, or None
    when the table would be too large."""
    if spec.order * len(row) > _SCALED_ROW_CACHE_MAX:
        return None
    mul = spec.mul
    return [tuple(mul(t, v) for v in row) for t in range(spec.order)]


def _min_rank_distance_raw(spec: FieldSpec, g_rows, k: int, n: int) -> int:
    """Minimum rank over nonzero codewords of the code spanned by g_rows.

    Scans one representative per projective line (first nonzero message
    coordinate normalized to 1, since scaling preserves rank).  A k = n
    code is the full space and contains weight-one words, so the answer
    is 1 without enumeration.
    """
    if k == n:
        return 1
    order = spec.order
    count = (order ** k - 1) // (order - 1)
    check_budget(count, "projective codeword scan")
    spec._ensure_fast()
    best = min(spec.m, n)

    tables = [_scaled_row_table(spec, r) for r in g_rows]

    def scaled(j, t):
        table = tables[j]
        if table is not None:
            return table[t]
        return tuple(spec.mul(t, v) for v in g_rows[j])

    if spec.p == 2:
        def vadd(a, b):
            return tuple(x ^ y for x, y in zip(a, b))
    else:
        flat = spec._add_flat
        if flat is not None:
            def vadd(a, b):
                return tuple(flat[x * order + y] for x, y in zip(a, b))
        else:
            sadd = spec.add
            def vadd(a, b):
                return tuple(sadd(x, y) for x, y in zip(a, b))

    exp, log = spec._exp, spec._log
    q = spec.q
    n1 = order - 1
    q2 = spec.q == 2

    def rank_below(word, cap):
        """True rank when it is < cap, else cap."""
        if cap == 2:
            # rank <= 1 iff all entries lie on one F_q-line
            it = iter(word)
            e = 0
            for e in it:
                if e:
                    break
            if not e:
                return 0
            if q2:
                return 2 if any(f and f != e for f in it) else 1
            if exp is not None:
                le = log[e]
                for f in it:
                    if f and exp[(log[f] - le) % n1] >= q:
                        return 2
                return 1
        return _expanded_rank(spec, word, cap=cap)

    for lead in range(k):
        base = tuple(g_rows[lead])
        tail = list(range(lead + 1, k))
        if not tail:
            r = rank_below(base, best)
            if r < best:
                best = r
                if best == 1:
                    return 1
            continue
        last = tail[-1]
        outer = tail[:-1]
        values = [0] * len(outer)
        # prefix[d] = base plus the first d scaled outer rows
        prefix = [base] * (len(outer) + 1)
        while True:
            head = prefix[-1]
            last_table = tables[last]
            for t in range(order):
                if t:
                    word = vadd(head, scaled(last, t)) if last_table is None \
                        else vadd(head, last_table[t])
                else:
                    word = head
                r = rank_below(word, best)
                if r < best:
                    best = r
                    if best == 1:
                        return 1
            pos = len(outer) - 1
            while pos >= 0 and values[pos] == order - 1:
                values[pos] = 0
                pos -= 1
            if pos < 0:
                break
            values[pos] += 1
            for d in range(pos, len(outer)):
                prefix[d + 1] = vadd(prefix[d], scaled(outer[d], values[d]))
    return best


def min_rank_distance(code: RankCode) -> int:
    """Minimum rank distance by brute force over projective codewords."""
    return _min_rank_distance_raw(code.spec, [tuple(r) for r in code.canonical.entries],
                                  code.k, code.n)


def dual_code(code: RankCode) -> RankCode:
    """The code {u : u c^T = 0 for all c in C}, of dimension n - k."""
    spec = code.spec
    k, n = code.k, code.n
    if k == n:
        raise InvalidParameterError("dual of the full space is zero-dimensional")
    R = code.canonical.entries
    pivots = []
    c = 0
    for i in range(k):
        while R[i][c] == 0:
            c += 1
        pivots.append(c)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    rows = []
    for f in free:
        u = [0] * n
        u[f] = 1
        for i, p in enumerate(pivots):
            u[p] = spec.neg(R[i][f])
        rows.append(u)
    return RankCode(spec, ExtMatrix(spec, rows))


def apply_isometry(code: RankCode, iso: Isometry) -> RankCode:
    """Map every generator row entrywise by x -> sigma(lambda x), then
    multiply by A on the right; preserves the minimum rank distance."""
    spec = code.spec
    if iso.lam.spec != spec or iso.A.spec != spec:
        raise SpecMismatchError("isometry defined over a different field tower")
    if not iso.lam.idx:
        raise InvalidParameterError("lambda must be nonzero")
    n = code.n
    if iso.A.rows != n or iso.A.cols != n:
        raise ShapeError(f"A must be {n}x{n}, got {iso.A.rows}x{iso.A.cols}")
    if _rank_raw(iso.A.entries, spec.base_field) != n:
        raise InvalidParameterError("A is singular over F_q")
    s = iso.sigma_power % spec.m
    lam = iso.lam.idx
    A = iso.A.entries
    new_rows = []
    for row in code.G.entries:
        mapped = [spec.frobenius(spec.mul(lam, v), s) for v in row]
        new_rows.append([
            _fq_combination(spec, mapped, [A[t][j] for t in range(n)])
            for j in range(n)
        ])
    return RankCode(spec, ExtMatrix(spec, new_rows))


def _fq_combination(spec: FieldSpec, vec, coeffs):
    acc = 0
    for v, c in zip(vec, coeffs):
        if c and v:
            acc = spec.add(acc, spec.scalar_mul(c, v))
    return acc


def random_systematic_code(spec: FieldSpec, k: int, n: int, rng) -> RankCode:
    """Code [I_k | X] with X uniform over F_{q^m}^{k x (n-k)}."""
    if not 1 <= k < n:
        raise InvalidParameterError(f"need 1 <= k < n, got k={k}, n={n}")
    X = ExtMatrix(spec, [[rng.randrange(spec.order) for _ in range(n - k)]
                         for _ in range(k)])
    return RankCode.from_systematic(spec, X)


def random_isometry(spec: FieldSpec, n: int, rng) -> Isometry:
    """Uniformly sampled semilinear isometry (rejection sampling for A)."""
    lam = Element(spec, rng.randrange(1, spec.order))
    while True:
        rows = [[rng.randrange(spec.q) for _ in range(n)] for _ in range(n)]
        if _rank_raw(rows, spec.base_field) == n:
            break
    return Isometry(lam=lam, A=BaseMatrix(spec, rows),
                    sigma_power=rng.randrange(spec.m))
