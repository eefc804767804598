"""Classification of rank-metric codes: maximality of the rank distance,
the generalized Gabidulin test, and the structural sets behind the
probability bounds (echelon test set, defect polynomials, rank-one
Frobenius-difference sets and their factored counting route)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .budget import check_budget
from .errors import InvalidParameterError, ShapeError, VerificationError
from .field_arith import Element, FieldSpec
from .fq_linalg import (BaseMatrix, ExtMatrix, _rank_raw, enumerate_rref,
                        intersection_dim)
from .rank_codes import RankCode

_SYMBOLIC_VAR_MAX = 12  # multilinear expansion holds up to 2**12 monomials


def _ext_product_rank(spec: FieldSpec, E_rows, G_rows, k: int, cap=None) -> int:
    """Rank of E G^T over F_{q^m} for a base matrix E and generator G."""
    n = len(G_rows[0])
    M = []
    for i in range(k):
        Ei = E_rows[i]
        row = []
        for j in range(k):
            Gj = G_rows[j]
            acc = 0
            for l in range(n):
                c = Ei[l]
                if c and Gj[l]:
                    acc = spec.add(acc, spec.scalar_mul(c, Gj[l]))
            row.append(acc)
        M.append(row)
    return _rank_raw(M, spec, cap=cap)


def is_mrd(code: RankCode) -> bool:
    """True iff rk(E G^T) = k for every full-rank k x n echelon form E;
    equivalent to the minimum rank distance being n - k + 1."""
    spec, k, n = code.spec, code.k, code.n
    G_rows = code.G.entries
    for E in enumerate_rref(k, n, spec):
        if _ext_product_rank(spec, E.entries, G_rows, k, cap=k) < k:
            return False
    return True


def is_mrd_fullrank_variant(code: RankCode) -> bool:
    """Same verdict as is_mrd, via every full-rank V in F_q^{k x n}.

    Test-oracle flavor: enumerates all q^(kn) matrices and filters by rank,
    so it is far more expensive than the echelon-form route.
    """
    spec, k, n = code.spec, code.k, code.n
    check_budget(spec.q ** (k * n), "full-rank matrix scan")
    fq = spec.base_field
    G_rows = code.G.entries
    for flat in itertools.product(range(spec.q), repeat=k * n):
        V = [list(flat[i * n:(i + 1) * n]) for i in range(k)]
        if _rank_raw(V, fq) != k:
            continue
        if _ext_product_rank(spec, V, G_rows, k, cap=k) < k:
            return False
    return True


def rank1_criterion(X: ExtMatrix, s: int) -> bool:
    """True iff the entrywise map x -> x^(q^s) - x sends X to a rank-one
    matrix over F_{q^m}."""
    spec = X.spec
    if not 0 < s < spec.m or gcd(s, spec.m) != 1:
        raise InvalidParameterError(
            f"s must satisfy 0 < s < m and gcd(s, m) = 1, got s={s}, m={spec.m}")
    if X.cols == 0:
        return False
    phi = [[spec.phi_s(v, s) for v in row] for row in X.entries]
    return _rank_raw(phi, spec, cap=2) == 1


def frobenius_code(code: RankCode, s: int) -> RankCode:
    """The code {c^(q^s) : c in C}, mapped entrywise on the generator."""
    if s < 0:
        raise InvalidParameterError(f"s must be nonnegative, got {s}")
    spec = code.spec
    rows = [[spec.frobenius(v, s) for v in row] for row in code.G.entries]
    return RankCode(spec, ExtMatrix(spec, rows))


def _gabidulin_parameter(code: RankCode) -> int | None:
    """Smallest s coprime to m with dim(C ∩ C^(q^s)) = k - 1, or None.

    Uses the rank-one reformulation on the systematic block when it exists
    (it always does for maximal codes); falls back to the intersection
    dimension otherwise.
    """
    spec = code.spec
    X = code.systematic_X
    if X is not None:
        for s in spec.valid_s_values():
            if rank1_criterion(X, s):
                return s
        return None
    for s in spec.valid_s_values():
        shifted = frobenius_code(code, s)
        if intersection_dim(code.canonical, shifted.canonical) == code.k - 1:
            return s
    return None


def is_gabidulin(code: RankCode) -> int | None:
    """Smallest valid Gabidulin parameter s, or None for a non-Gabidulin code.

    Only defined for codes with maximal rank distance; calling it on any
    other code is a precondition violation.
    """
    if not is_mrd(code):
        raise InvalidParameterError(
            "the Gabidulin criterion applies only to codes of maximal rank distance")
    return _gabidulin_parameter(code)


# --------------------------------------------------------------------------
# Defect polynomials of the echelon test set.

def _is_full_rank_rref(E: BaseMatrix) -> bool:
    pivots = []
    prev = -1
    for i, row in enumerate(E.entries):
        lead = next((c for c, v in enumerate(row) if v), None)
        if lead is None or lead <= prev or row[lead] != 1:
            return False
        if any(E.entries[r][lead] for r in range(E.rows) if r != i):
            return False
        pivots.append(lead)
        prev = lead
    return len(pivots) == E.rows


def _leading_subspace(spec: FieldSpec, k: int, n: int) -> BaseMatrix:
    """The subspace spanned by the first k coordinate vectors, as [I_k | 0]."""
    return BaseMatrix(spec, [[1 if i == j else 0 for j in range(n)]
                             for i in range(k)])


def f_E_degree(E: BaseMatrix) -> int:
    """Total degree of det([I_k | X] E^T) as a polynomial in the entries of X:
    k minus the dimension of rowspace(E) meeting the leading subspace."""
    if not _is_full_rank_rref(E):
        raise InvalidParameterError("E must be a full-rank reduced row echelon form")
    k, n = E.rows, E.cols
    U0 = _leading_subspace(E.spec, k, n)
    return k - intersection_dim(E, U0)


class MultilinearPoly:
    """Square-free polynomial over F_q: variable subsets -> coefficients."""

    def __init__(self, spec: FieldSpec, num_vars: int, coeffs: dict):
        self.spec = spec
        self.num_vars = num_vars
        self.coeffs = {mono: c for mono, c in coeffs.items() if c}

    def total_degree(self) -> int:
        if not self.coeffs:
            return 0
        return max(len(mono) for mono in self.coeffs)

    def degree_in(self, var: int) -> int:
        return 1 if any(var in mono for mono in self.coeffs) else 0

    def evaluate(self, values) -> Element:
        """Value at a point of F_{q^m}^{num_vars}."""
        spec = self.spec
        idxs = [v.idx if isinstance(v, Element) else int(v) for v in values]
        if len(idxs) != self.num_vars:
            raise ShapeError(f"expected {self.num_vars} values, got {len(idxs)}")
        acc = 0
        for mono, c in self.coeffs.items():
            term = 1
            for var in mono:
                term = spec.mul(term, idxs[var])
                if term == 0:
                    break
            acc = spec.add(acc, spec.scalar_mul(c, term))
        return Element(spec, acc)

    def __eq__(self, other):
        return (isinstance(other, MultilinearPoly) and self.spec == other.spec
                and self.coeffs == other.coeffs)


def _poly_add(a: dict, b: dict, fq) -> dict:
    out = dict(a)
    for mono, c in b.items():
        s = fq.add(out.get(mono, 0), c)
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def _poly_mul(a: dict, b: dict, fq) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            if ma & mb:
                raise VerificationError("square-free expansion produced a repeated variable")
            mono = ma | mb
            s = fq.add(out.get(mono, 0), fq.mul(ca, cb))
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
    return out


def symbolic_f_E(E: BaseMatrix) -> MultilinearPoly:
    """det([I_k | X] E^T) expanded exactly in the k(n-k) entries of X.

    Every variable appears in a single row of the product matrix, so each
    monomial is square-free; the expansion is a subset-indexed table of
    F_q coefficients.
    """
    if not _is_full_rank_rref(E):
        raise InvalidParameterError("E must be a full-rank reduced row echelon form")
    spec = E.spec
    k, n = E.rows, E.cols
    nvars = k * (n - k)
    if nvars > _SYMBOLIC_VAR_MAX:
        raise InvalidParameterError(
            f"symbolic expansion limited to {_SYMBOLIC_VAR_MAX} variables, got {nvars}")
    fq = spec.base_field
    # product entry (i, j) = E[j][i] + sum_t x_{i,t} E[j][k+t], affine in row-i vars
    entries = []
    for i in range(k):
        row = []
        for j in range(k):
            poly: dict = {}
            if E.entries[j][i]:
                poly[frozenset()] = E.entries[j][i]
            for t in range(n - k):
                c = E.entries[j][k + t]
                if c:
                    poly[frozenset((i * (n - k) + t,))] = c
            row.append(poly)
        entries.append(row)

    memo: dict = {}

    def minor(r: int, cols: frozenset) -> dict:
        if r == k:
            return {frozenset(): 1}
        key = cols
        cached = memo.get((r, key))
        if cached is not None:
            return cached
        acc: dict = {}
        for pos, c in enumerate(sorted(cols)):
            cell = entries[r][c]
            if not cell:
                continue
            sub = minor(r + 1, cols - {c})
            term = _poly_mul(cell, sub, fq)
            if pos % 2:
                term = {mono: fq.neg(v) for mono, v in term.items()}
            acc = _poly_add(acc, term, fq)
        memo[(r, key)] = acc
        return acc

    coeffs = minor(0, frozenset(range(k)))
    return MultilinearPoly(spec, nvars, coeffs)


def sum_f_E_degrees(k: int, n: int, spec: FieldSpec) -> int:
    """Sum of det-polynomial degrees over the whole echelon test set."""
    return sum(f_E_degree(E) for E in enumerate_rref(k, n, spec))


# --------------------------------------------------------------------------
# The rank-one Frobenius-difference sets and their two counting routes.

@dataclass(frozen=True)
class GSetCount:
    """Cardinality of {X with no base-field entries, rk(X^(q^s) - X) = 1},
    by exhaustive scan and by the factored product-with-kernel route."""

    s: int
    exhaustive: int
    factored: int

    @property
    def consistent(self) -> bool:
        return self.exhaustive == self.factored


def enumerate_R1K(spec: FieldSpec, k: int, n: int):
    """All rank-one k x (n-k) matrices with nonzero trace-zero entries.

    Generated through the parameterization (alpha, beta) -> alpha^T [1, beta]
    with alpha_i in the trace kernel minus zero and beta_j killing every
    functional x -> Tr(alpha_i x); validated entry by entry.
    """
    if not 1 <= k < n:
        raise InvalidParameterError(f"need 1 <= k < n, got k={k}, n={n}")
    check_budget((spec.q ** (spec.m - 1)) ** (n - 1), "rank-one kernel enumeration")
    spec._ensure_fast()
    order = spec.order
    trace0 = [a for a in range(1, order) if spec.trace(a) == 0]
    width = n - k
    out = []
    seen = set()
    for alpha in itertools.product(trace0, repeat=k):
        betas = [b for b in range(1, order)
                 if all(spec.trace(spec.mul(a, b)) == 0 for a in alpha)]
        for beta in itertools.product(betas, repeat=width - 1):
            rows = []
            for a in alpha:
                rows.append([a] + [spec.mul(a, b) for b in beta])
            key = tuple(tuple(r) for r in rows)
            if key in seen:
                raise VerificationError("parameterization produced a duplicate matrix")
            seen.add(key)
            M = ExtMatrix(spec, rows)
            if _rank_raw(rows, spec, cap=2) != 1:
                raise VerificationError("parameterized matrix does not have rank one")
            if any(v == 0 or spec.trace(v) != 0 for row in rows for v in row):
                raise VerificationError("parameterized matrix has an invalid entry")
            out.append(M)
    bound = (spec.q ** (spec.m - 1) - 1) ** (n - 1)
    if len(out) > bound:
        raise VerificationError("rank-one kernel set exceeds its cardinality bound")
    return out


def enumerate_G(spec: FieldSpec, k: int, n: int, s: int) -> GSetCount:
    """Count the set G(s) exhaustively and through the factored route."""
    if not 0 < s < spec.m or gcd(s, spec.m) != 1:
        raise InvalidParameterError(
            f"s must satisfy 0 < s < m and gcd(s, m) = 1, got s={s}, m={spec.m}")
    if not 1 <= k < n:
        raise InvalidParameterError(f"need 1 <= k < n, got k={k}, n={n}")
    cells = k * (n - k)
    total = spec.order ** cells
    check_budget(total, "rank-one difference-set scan")
    spec._ensure_fast((s,))
    order = spec.order
    in_base = [spec.frobenius(a, 1) == a for a in range(order)]
    frob = spec._frob_tables.get(s)
    width = n - k
    count = 0
    for flat in itertools.product(range(order), repeat=cells):
        if any(in_base[v] for v in flat):
            continue
        if frob is not None:
            phi = [[spec.sub(frob[flat[i * width + j]], flat[i * width + j])
                    for j in range(width)] for i in range(k)]
        else:
            phi = [[spec.phi_s(flat[i * width + j], s)
                    for j in range(width)] for i in range(k)]
        if _rank_raw(phi, spec, cap=2) == 1:
            count += 1
    factored = (spec.q ** cells) * len(enumerate_R1K(spec, k, n))
    return GSetCount(s=s, exhaustive=count, factored=factored)
