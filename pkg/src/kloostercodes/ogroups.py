"""The minus-type orthogonal groups SO-(2,q), O-(2,q), SO-(4,q) over GF(3^r).

Provides exhaustive enumeration (small q) with trace histograms, and the
exact closed-form histograms valid for every q.  Matrices are stored as flat
row-major tuples of element indices.  The defining form uses the block
diag(1, -eps) with eps the fixed nonsquare chosen by the field context, and
the canonical element order is ascending row-major entry tuples, which pins
the coordinate order of the associated codes.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import charsums
from .errors import CapacityError, ConsistencyError, DomainError

# Exhaustive scans are bounded by a 3^16-point search space by default:
# the 4x4 enumeration over GF(3) and ternary-vector scans of length <= 16.
DEFAULT_SCAN_LIMIT = 3 ** 16


class GroupId(enum.Enum):
    SO2 = "so2"
    O2 = "o2"
    SO4 = "so4"

    @property
    def dim(self) -> int:
        return 4 if self is GroupId.SO4 else 2


def so_minus_order(n: int, q: int) -> int:
    """|SO-(2n, q)|."""
    out = q ** (n * n - n) * (q ** n + 1)
    for j in range(1, n):
        out *= q ** (2 * j) - 1
    return out


def o_minus_order(n: int, q: int) -> int:
    """|O-(2n, q)| = 2 |SO-(2n, q)|."""
    return 2 * so_minus_order(n, q)


def group_order(gid: GroupId, q: int) -> int:
    if gid is GroupId.SO2:
        return so_minus_order(1, q)
    if gid is GroupId.O2:
        return o_minus_order(1, q)
    return so_minus_order(2, q)


@dataclass(frozen=True)
class TraceHistogram:
    """beta -> number of group elements of matrix trace beta."""

    counts: tuple

    def __getitem__(self, beta: int) -> int:
        return self.counts[beta]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def as_dict(self) -> dict:
        return {b: c for b, c in enumerate(self.counts) if c}


# -- matrix helpers (flat row-major tuples of element indices) --------------

def mat_mul(ctx, a, b, dim: int):
    out = []
    for i in range(dim):
        for j in range(dim):
            s = 0
            for k in range(dim):
                s = ctx.add(s, ctx.mul(a[i * dim + k], b[k * dim + j]))
            out.append(s)
    return tuple(out)


def mat_transpose(a, dim: int):
    return tuple(a[j * dim + i] for i in range(dim) for j in range(dim))


def mat_trace(ctx, a, dim: int) -> int:
    t = 0
    for i in range(dim):
        t = ctx.add(t, a[i * dim + i])
    return t


def mat_det(ctx, a, dim: int) -> int:
    if dim == 1:
        return a[0]
    rows = [list(a[i * dim:(i + 1) * dim]) for i in range(dim)]

    def det(r):
        n = len(r)
        if n == 1:
            return r[0][0]
        total = 0
        for c in range(n):
            if r[0][c] == 0:
                continue
            minor = [row[:c] + row[c + 1:] for row in r[1:]]
            term = ctx.mul(r[0][c], det(minor))
            total = ctx.add(total, term) if c % 2 == 0 else ctx.sub(total, term)
        return total

    return det(rows)


def delta_eps(ctx):
    """diag(1, -eps), the 2x2 block of the defining form."""
    return (1, 0, 0, ctx.neg(ctx.epsilon))


def j_form(ctx, n: int):
    """The defining 2n x 2n symmetric form, flat row-major."""
    dim = 2 * n
    m = [0] * (dim * dim)
    for i in range(n - 1):
        m[i * dim + (n - 1 + i)] = 1
        m[(n - 1 + i) * dim + i] = 1
    m[(dim - 2) * dim + (dim - 2)] = 1
    m[(dim - 1) * dim + (dim - 1)] = ctx.neg(ctx.epsilon)
    return tuple(m)


def satisfies_relation(ctx, w, n: int) -> bool:
    """Whether transpose(w) . J . w == J."""
    dim = 2 * n
    j = j_form(ctx, n)
    return mat_mul(ctx, mat_mul(ctx, mat_transpose(w, dim), j, dim), w, dim) == j


def _so2_elements(ctx):
    eps = ctx.epsilon
    out = []
    for a in range(ctx.q):
        aa = ctx.mul(a, a)
        for b in range(ctx.q):
            if ctx.sub(aa, ctx.mul(eps, ctx.mul(b, b))) == 1:
                out.append((a, ctx.mul(b, eps), b, a))
    out.sort()
    return out


def _o2_elements(ctx):
    out = []
    for (a, be, b, a2) in _so2_elements(ctx):
        out.append((a, be, b, a2))
        # left coset by diag(1, -1): negates the bottom row
        out.append((a, be, ctx.neg(b), ctx.neg(a2)))
    out.sort()
    return out


def _mul_table(ctx):
    q = ctx.q
    t = np.zeros((q, q), dtype=np.int64)
    logs = ctx._np_log
    nz = np.arange(1, q)
    t[1:, 1:] = ctx._np_exp[(logs[nz][:, None] + logs[nz][None, :]) % (q - 1)]
    return t


def _add_table(ctx):
    d = ctx._digits.astype(np.int64)
    return ((d[:, None, :] + d[None, :, :]) % 3) @ ctx._pow3


def _so4_elements(ctx, scan_limit: int):
    """Complete scan of all q^16 4x4 matrices for the defining relation and
    determinant 1, organised as a hash join over the two row halves.

    transpose(w) J w depends on the rows r0..r3 of w through
    outer(r0,r1) + outer(r1,r0) + outer(r2,r2) - eps*outer(r3,r3), so the
    matrices splitting as (top rows, bottom rows) match exactly when the two
    half contributions pack to equal keys.  Every one of the q^16 candidate
    matrices is covered.
    """
    q = ctx.q
    if q ** 16 > scan_limit:
        raise CapacityError(
            "enumerating SO-(4,%d) scans %d matrices, above the limit %d; "
            "use histogram_closed_form instead" % (q, q ** 16, scan_limit)
        )
    eps = ctx.epsilon
    add_t = _add_table(ctx)
    mul_t = _mul_table(ctx)
    neg_t = np.array([ctx.neg(x) for x in range(q)], dtype=np.int64)

    m = q ** 4
    idx = np.arange(m)
    vecs = np.stack([(idx // q ** 3) % q, (idx // q ** 2) % q, (idx // q) % q, idx % q], axis=1)

    jm = np.array(j_form(ctx, 2), dtype=np.int64).reshape(4, 4)
    # any scan admitted by the limit has q^16 well inside int64
    powers = (q ** np.arange(15, -1, -1)).astype(np.int64)

    # top halves: A = outer(r0, r1) + outer(r1, r0)
    outer = mul_t[vecs[:, None, :, None], vecs[None, :, None, :]]  # (m, m, 4, 4)
    top = add_t[outer, outer.transpose(0, 1, 3, 2)]
    top_keys = top.reshape(m * m, 16) @ powers

    # bottom halves: want A == J - outer(r2, r2) + eps*outer(r3, r3)
    self_outer = mul_t[vecs[:, :, None], vecs[:, None, :]]  # (m, 4, 4)
    eps_outer = mul_t[eps][self_outer]
    j_minus = add_t[jm[None, :, :], neg_t[self_outer]]  # (m, 4, 4)
    want = add_t[j_minus[:, None], eps_outer[None, :]]  # (m, m, 4, 4)
    want_keys = want.reshape(m * m, 16) @ powers

    order = np.argsort(top_keys, kind="stable")
    sorted_keys = top_keys[order]
    lo = np.searchsorted(sorted_keys, want_keys, side="left")
    hi = np.searchsorted(sorted_keys, want_keys, side="right")

    out = []
    hits = np.nonzero(hi > lo)[0]
    for flat_bot in hits:
        bi, bj = divmod(int(flat_bot), m)
        bottom = tuple(vecs[bi]) + tuple(vecs[bj])
        for t in order[lo[flat_bot]:hi[flat_bot]]:
            ti, tj = divmod(int(t), m)
            w = tuple(vecs[ti]) + tuple(vecs[tj]) + bottom
            if mat_det(ctx, w, 4) == 1:
                out.append(w)
    out.sort()
    return out


@dataclass(frozen=True)
class GroupEnumeration:
    group: GroupId
    elements: tuple
    histogram: TraceHistogram


_ENUM_CACHE = {}


def enumerate_group(ctx, gid: GroupId, *, scan_limit: int = DEFAULT_SCAN_LIMIT) -> GroupEnumeration:
    """All elements of the group in canonical (ascending row-major) order,
    with their trace histogram.  SO-(4, q) is scanned exhaustively and is
    feasible only at q = 3 under the default limit."""
    key = (id(ctx), gid, scan_limit)
    hit = _ENUM_CACHE.get(key)
    if hit is not None and hit[0] is ctx:
        return hit[1]
    if gid is GroupId.SO2:
        els = _so2_elements(ctx)
    elif gid is GroupId.O2:
        els = _o2_elements(ctx)
    elif gid is GroupId.SO4:
        els = _so4_elements(ctx, scan_limit)
    else:
        raise DomainError("unknown group %r" % (gid,))
    dim = gid.dim
    counts = [0] * ctx.q
    for w in els:
        counts[mat_trace(ctx, w, dim)] += 1
    expected = group_order(gid, ctx.q)
    if len(els) != expected:
        raise ConsistencyError(
            "enumerated %d elements of %s over GF(%d), expected %d"
            % (len(els), gid.value, ctx.q, expected)
        )
    result = GroupEnumeration(gid, tuple(els), TraceHistogram(tuple(counts)))
    _ENUM_CACHE[key] = (ctx, result)
    return result


def histogram_closed_form(ctx, gid: GroupId, *, ops_limit: int = charsums.DEFAULT_OPS_LIMIT) -> TraceHistogram:
    """Exact trace histogram from the square-class case splits; valid for
    any q, no enumeration involved."""
    q = ctx.q
    counts = [0] * q
    if gid in (GroupId.SO2, GroupId.O2):
        r_even = ctx.r % 2 == 0
        for beta in range(q):
            s = ctx.sub(ctx.mul(beta, beta), 1)
            if s == 0:
                n = 1
            elif ctx.is_square(s):
                n = 0
            else:
                n = 2
            if gid is GroupId.O2 and beta == 0:
                # beta = 0 is the only point with beta^2 - 1 = -1; the whole
                # trace-zero coset of SO-(2,q) lands here
                n = q + 1 if r_even else q + 3
            counts[beta] = n
    else:
        d2 = charsums.delta_count(ctx, 2, ops_limit=ops_limit)
        for beta in range(q):
            if beta == 0:
                counts[beta] = -q * q * d2[0] + q ** 4 + 2 * q ** 3 - 3 * q * q
            else:
                counts[beta] = -q * q * d2[beta] + q ** 5 + q ** 4 + q ** 3 - 3 * q * q
    hist = TraceHistogram(tuple(counts))
    expected = group_order(gid, q)
    if hist.total != expected:
        raise ConsistencyError(
            "closed-form histogram for %s over GF(%d) totals %d, expected %d"
            % (gid.value, q, hist.total, expected)
        )
    return hist
