"""Hermitian spaces in Witt coordinates and lattices over the local ring.

The ambient spaces are the split Hermitian spaces of dimension 3 and 2
with antidiagonal Gram matrices: coordinates are written against the
Witt basis (e_plus, e_zero, e_minus) resp. (e_plus, e_minus), with
<e_plus, e_minus> = 1 and <e_zero, e_zero> = 1.  The pairing is linear
in the first slot and conjugate-linear in the second.

A lattice is the module spanned by the columns of a basis matrix with
bounded-Laurent entries.  Lattice identity is tested through relative
position (elementary divisors over the valuation ring), never through
basis equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InsufficientPrecision, TraceNotZero
from .fq import Fq2
from .series import BoundedLaurent, TruncatedSeries


@dataclass(frozen=True)
class HermitianSpace:
    """Split Hermitian space of dimension 2 or 3 with antidiagonal Gram."""

    field: Fq2
    dim: int

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise ValueError("only dimensions 2 and 3 are supported")

    def gram_indices(self):
        """Pairs (i, j, one) with J[i][j] = 1; all other entries vanish."""
        n = self.dim
        return [(i, n - 1 - i) for i in range(n)]


Matrix = list  # alias: list of rows of BoundedLaurent


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for l in range(1, k):
                acc = acc + a[i][l] * b[l][j]
            row.append(acc)
        out.append(row)
    return out


def mat_conj_transpose(a: Matrix) -> Matrix:
    n, m = len(a), len(a[0])
    return [[a[j][i].conj() for j in range(n)] for i in range(m)]


def mat_apply_gram(space: HermitianSpace, a: Matrix) -> Matrix:
    """J @ a for the antidiagonal Gram J (a row reversal)."""
    return list(reversed(a))


def gram_matrix(space: HermitianSpace, basis: Matrix) -> Matrix:
    """G[k][l] = <b_k, b_l> for the columns b_k of the basis."""
    # <x, y> = x^T J conj(y); with columns B this is B^T J conj(B).
    bt = [[basis[j][i] for j in range(space.dim)] for i in range(space.dim)]
    jconj = mat_apply_gram(space, [[c.conj() for c in row] for row in basis])
    return mat_mul(bt, jconj)


def _mat2_inverse(m: Matrix) -> Matrix:
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    dinv = det.invert()
    return [
        [m[1][1] * dinv, (-m[0][1]) * dinv],
        [(-m[1][0]) * dinv, m[0][0] * dinv],
    ]


def _mat3_inverse(m: Matrix) -> Matrix:
    def det2(a, b, c, d):
        return a * d - b * c

    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = det2(m[rows[0]][cols[0]], m[rows[0]][cols[1]], m[rows[1]][cols[0]], m[rows[1]][cols[1]])
            cof[i][j] = minor if (i + j) % 2 == 0 else -minor
    det = m[0][0] * cof[0][0] + m[0][1] * cof[0][1] + m[0][2] * cof[0][2]
    dinv = det.invert()
    return [[cof[j][i] * dinv for j in range(3)] for i in range(3)]


def mat_inverse(m: Matrix) -> Matrix:
    if len(m) == 2:
        return _mat2_inverse(m)
    if len(m) == 3:
        return _mat3_inverse(m)
    raise ValueError("only 2x2 and 3x3 matrices occur here")


class HermitianLattice:
    """Full-rank lattice spanned by the columns of a basis matrix."""

    def __init__(self, space: HermitianSpace, basis: Matrix):
        if len(basis) != space.dim or any(len(row) != space.dim for row in basis):
            raise ValueError("basis must be a square matrix of the space dimension")
        self.space = space
        self.basis = [list(row) for row in basis]

    @property
    def field(self) -> Fq2:
        return self.space.field

    def windows(self):
        return [[e.window() for e in row] for row in self.basis]


def standard_lattice(space: HermitianSpace, window: tuple[int, int]) -> HermitianLattice:
    F = space.field
    n = space.dim
    basis = [
        [
            BoundedLaurent.monomial(F, F.one, 0, window)
            if i == j
            else BoundedLaurent.zero_on(F, window)
            for j in range(n)
        ]
        for i in range(n)
    ]
    return HermitianLattice(space, basis)


def apartment_lattice(space: HermitianSpace, m: int, window: tuple[int, int]) -> HermitianLattice:
    """<t^m e_+, e_0, t^-m e_-> (dim 3) or <t^m e_+, t^-m e_-> (dim 2)."""
    F = space.field
    n = space.dim
    exps = [m, 0, -m] if n == 3 else [m, -m]
    basis = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(BoundedLaurent.monomial(F, F.one, exps[j], window))
            else:
                row.append(BoundedLaurent.zero_on(F, window))
        basis.append(row)
    return HermitianLattice(space, basis)


def dual_lattice(L: HermitianLattice) -> HermitianLattice:
    """L^dual = {v : <v, L> integral}; basis (conj(B)^T J)^{-1}."""
    space = L.space
    bconj_t = mat_conj_transpose(L.basis)
    # (conj(B)^T J): multiplying by the antidiagonal J on the right
    # reverses column order.
    m = [list(reversed(row)) for row in bconj_t]
    return HermitianLattice(space, mat_inverse(m))


def relative_position(L: HermitianLattice, M: HermitianLattice) -> tuple[int, ...]:
    """Elementary-divisor valuations of M relative to L, sorted descending.

    Computed from the Smith form of B_L^{-1} B_M over the valuation
    ring by valuation-pivoted fraction-free elimination.  Any pivot
    choice yields the same multiset; ties break at the lowest row.
    """
    if L.space != M.space:
        raise ValueError("lattices in different ambient spaces")
    rel = mat_mul(mat_inverse(L.basis), M.basis)
    return smith_valuations(rel)


def smith_valuations(m: Matrix) -> tuple[int, ...]:
    """Valuations of the elementary divisors of a matrix over the DVR."""
    work = [list(row) for row in m]
    n = len(work)
    divisors: list[int] = []
    for _ in range(n):
        pivot = None
        pv = None
        min_unknown_ceil = None
        for i, row in enumerate(work):
            for j, entry in enumerate(row):
                if entry.is_zero_on_window():
                    c = entry.ceil
                    if min_unknown_ceil is None or c < min_unknown_ceil:
                        min_unknown_ceil = c
                    continue
                v = entry.valuation()
                if pv is None or v < pv:
                    pv, pivot = v, (i, j)
        if pivot is None:
            raise InsufficientPrecision("no entry distinguishable from zero; cannot pick a pivot")
        if min_unknown_ceil is not None and min_unknown_ceil <= pv:
            raise InsufficientPrecision(
                "an entry known only to O(t^%d) could undercut the pivot valuation %d"
                % (min_unknown_ceil, pv)
            )
        pi, pj = pivot
        pe = work[pi][pj]
        peinv = pe.invert()
        # Clear the pivot column; window tracking flows through the ops.
        for i in range(len(work)):
            if i == pi:
                continue
            factor = work[i][pj] * peinv
            work[i] = [work[i][j] - factor * work[pi][j] for j in range(len(work[i]))]
        divisors.append(pv)
        work = [
            [work[i][j] for j in range(len(work[i])) if j != pj]
            for i in range(len(work))
            if i != pi
        ]
    return tuple(sorted(divisors, reverse=True))


def position_distance(pos: tuple[int, ...]) -> int:
    """Tree distance between two hyperspecial vertices in relative position pos."""
    return max(pos) if pos else 0


def lattices_equal(L: HermitianLattice, M: HermitianLattice) -> bool:
    return all(v == 0 for v in relative_position(L, M))


def is_self_dual(L: HermitianLattice) -> bool:
    return lattices_equal(L, dual_lattice(L))


def is_unitary(h: Matrix, space: HermitianSpace) -> bool:
    """conj(h)^T J h = J within the shared precision window.

    Entries may be TruncatedSeries or BoundedLaurent.
    """
    F = space.field
    rows = [
        [e if isinstance(e, BoundedLaurent) else BoundedLaurent.from_series(e) for e in row]
        for row in h
    ]
    n = space.dim
    lhs = mat_mul(mat_conj_transpose(rows), rows)
    # J as exact bounded-Laurent entries on each entry's window.
    for i in range(n):
        for j in range(n):
            expected = F.one if i + j == n - 1 else F.zero
            entry = lhs[i][j]
            lo, hi = entry.window()
            if hi <= 0:
                raise InsufficientPrecision("window too small to test the unitary condition")
            for e in range(lo, hi):
                want = expected if e == 0 else F.zero
                if entry.coeff(e) != want:
                    return False
    return True


def scale_lattice(L: HermitianLattice, k: int) -> HermitianLattice:
    """t^k L."""
    return HermitianLattice(L.space, [[e.scale_t(k) for e in row] for row in L.basis])


def apply_matrix(h: Matrix, L: HermitianLattice) -> HermitianLattice:
    rows = [
        [e if isinstance(e, BoundedLaurent) else BoundedLaurent.from_series(e) for e in row]
        for row in h
    ]
    return HermitianLattice(L.space, mat_mul(rows, L.basis))


def witt_pair_lattices(
    field: Fq2,
    a: int,
    b: int,
    s,
    slack: int = 4,
) -> tuple[HermitianLattice, HermitianLattice]:
    """The explicit self-dual pair with invariant (a, b).

    s is a trace-zero scalar (s + conj(s) = 0) selecting the isotropic
    direction s*e_+ + e_- of the plane; the lattice in the plane is
      L_W = < t^-b e_+ , t^b (s e_+ + e_-) >.
    The rank-3 lattice walks a steps along a line that leaves the
    subtree at the base point.  The printed generator s e_+ + e_0 + e_-
    has norm s + conj(s) + 1 = 1, so no integral lattice can contain
    its t^-a multiple once a > 0; the line is realized instead through
    the unipotent change of Witt basis
      f_+ = e_+,  f_0 = beta e_+ + e_0,  f_- = gamma e_+ - conj(beta) e_0 + e_-
    with beta = 1 and gamma = s - 1/2, so that
    beta*conj(beta) + gamma + conj(gamma) = 0 and
      L_V = < t^a f_+ , f_0 , t^-a f_- >.
    Both lattices are self-dual; a + b = 0 gives the standard pair.
    """
    if a < 0 or b < 0:
        raise ValueError("invariants must be nonnegative")
    if field.add(s, field.conj(s)) != field.zero:
        raise TraceNotZero(f"{s} + conj({s}) != 0")

    w = (-(a + b + 2), a + b + 2 + slack)
    F = field
    space3 = HermitianSpace(F, 3)
    space2 = HermitianSpace(F, 2)

    beta = F.one
    gamma = F.sub(s, F.half())  # gamma + conj(gamma) = -1 = -beta*conj(beta)

    def mono(c, e):
        return BoundedLaurent.monomial(F, c, e, w)

    def zero():
        return BoundedLaurent.zero_on(F, w)

    # Columns: t^a f_+, f_0, t^-a f_- in e-coordinates.
    basis_v = [
        [mono(F.one, a), mono(beta, 0), mono(gamma, -a)],
        [zero(), mono(F.one, 0), mono(F.neg(F.conj(beta)), -a)],
        [zero(), zero(), mono(F.one, -a)],
    ]
    lv = HermitianLattice(space3, basis_v)

    # Columns: t^-b e_+, t^b (s e_+ + e_-).
    basis_w = [
        [mono(F.one, -b), mono(s, b)],
        [zero(), mono(F.one, b)],
    ]
    lw = HermitianLattice(space2, basis_w)
    return lv, lw


def embed_plane_matrix(h: Matrix, field: Fq2, window: tuple[int, int]) -> Matrix:
    """h + 1: extend a 2x2 matrix on (e_+, e_-) to fix e_0."""
    rows = [
        [e if isinstance(e, BoundedLaurent) else BoundedLaurent.from_series(e) for e in row]
        for row in h
    ]
    z = BoundedLaurent.zero_on(field, window)
    one = BoundedLaurent.monomial(field, field.one, 0, window)
    return [
        [rows[0][0], z, rows[0][1]],
        [z, one, z],
        [rows[1][0], z, rows[1][1]],
    ]
