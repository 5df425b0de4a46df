"""Ternary linear codes attached to the orthogonal groups.

The code of a group is the set of GF(3)-vectors orthogonal to the vector of
matrix traces of the group elements in canonical order; its dual consists of
the q words a -> (tr(a Tr g_1), ..., tr(a Tr g_N)) by Delsarte duality.
Truncated weight distributions are computed exactly from the trace histogram
alone by a generating-polynomial dynamic program, so they remain available
when the group itself is far too large to enumerate.  Brute-force scans act
as oracles.
"""

from dataclasses import dataclass

import numpy as np

from .charsums import kloosterman
from .combinat import trinomial
from .errors import CapacityError, ConsistencyError, DomainError
from .ogroups import DEFAULT_SCAN_LIMIT, GroupId, TraceHistogram, enumerate_group, mat_trace


@dataclass(frozen=True)
class CodeSpec:
    """A concrete code instance: the group, its field, and the trace vector
    fixing the coordinate order."""

    group: GroupId
    ctx: object
    trace_vector: tuple

    @property
    def length(self) -> int:
        return len(self.trace_vector)


def build_code_spec(ctx, gid: GroupId, *, scan_limit: int = DEFAULT_SCAN_LIMIT) -> CodeSpec:
    enum = enumerate_group(ctx, gid, scan_limit=scan_limit)
    dim = gid.dim
    traces = tuple(mat_trace(ctx, w, dim) for w in enum.elements)
    return CodeSpec(gid, ctx, traces)


def dual_codeword(spec: CodeSpec, a: int):
    """The dual word (tr(a t_1), ..., tr(a t_N)); a = 0 gives the zero word."""
    ctx = spec.ctx
    if not 0 <= a < ctx.q:
        raise DomainError("a must be an element index, got %r" % (a,))
    return tuple(ctx.trace(ctx.mul(a, t)) for t in spec.trace_vector)


def codeword_weight_formula(ctx, gid: GroupId, a: int) -> int:
    """Hamming weight of the dual word via Kloosterman sums:
    (2/3)(q + 1 + K(a^2)) in rank 2 and (2/3) q^2 (K(a^2)^2 + q^4 + q^3 - q - 1)
    in rank 4.  Needs no enumeration."""
    if not 0 < a < ctx.q:
        raise DomainError("a must be a nonzero element")
    q = ctx.q
    k = kloosterman(ctx, ctx.mul(a, a))
    if gid in (GroupId.SO2, GroupId.O2):
        num = 2 * (q + 1 + k)
    else:
        num = 2 * q * q * (k * k + q ** 4 + q ** 3 - q - 1)
    if num % 3:
        raise ConsistencyError(
            "weight expression %d for %s, a=%d is not divisible by 3" % (num, gid.value, a)
        )
    return num // 3


def codeword_weight(spec: CodeSpec, a: int, mode: str = "direct") -> int:
    """Weight of the dual word, either counted from the word itself or via
    the closed formula; the two must agree."""
    if not 0 < a < spec.ctx.q:
        raise DomainError("a must be a nonzero element")
    if mode == "direct":
        return sum(1 for c in dual_codeword(spec, a) if c)
    if mode == "formula":
        return codeword_weight_formula(spec.ctx, spec.group, a)
    raise DomainError("mode must be 'direct' or 'formula'")


@dataclass(frozen=True)
class WeightPrefix:
    """Exact codeword counts by weight, for weights 0..j_max."""

    j_max: int
    counts: tuple

    def __getitem__(self, j: int):
        return self.counts[j]


def weight_prefix_dp(hist: TraceHistogram, ctx, j_max: int) -> WeightPrefix:
    """Codeword counts of weight <= j_max from the trace histogram alone.

    A codeword assigns nu(beta) ones and mu(beta) twos to the coordinates of
    each trace class beta, subject to sum(nu) + sum(mu) = j and
    sum(nu(beta) beta) = sum(mu(beta) beta) in the field.  Each class of size
    n contributes the generating polynomial
    sum_{nu+mu<=n} trinomial(n; nu, mu) x^{nu+mu} z^{(nu-mu) beta}, and the
    product is truncated at x-degree j_max with z tracked over the additive
    group; the answer reads off the z = 0 state.
    """
    if j_max < 0:
        raise DomainError("j_max must be nonnegative")
    q = ctx.q
    dp = [[0] * q for _ in range(j_max + 1)]
    dp[0][0] = 1
    for beta in range(q):
        n = hist[beta]
        if n == 0:
            continue
        shift = [
            list(range(q)),
            [ctx.add(s, beta) for s in range(q)],
            [ctx.add(s, ctx.neg(beta)) for s in range(q)],
        ]
        tri = [
            [trinomial(n, nu, mu) for mu in range(j_max - nu + 1)]
            for nu in range(j_max + 1)
        ]
        new = [[0] * q for _ in range(j_max + 1)]
        for d in range(j_max + 1):
            row = dp[d]
            for s in range(q):
                c = row[s]
                if not c:
                    continue
                for nu in range(j_max - d + 1):
                    tri_nu = tri[nu]
                    for mu in range(j_max - d - nu + 1):
                        t = tri_nu[mu]
                        if t:
                            new[d + nu + mu][shift[(nu - mu) % 3][s]] += c * t
        dp = new
    counts = tuple(dp[j][0] for j in range(j_max + 1))
    if counts and counts[0] != 1:
        raise ConsistencyError("weight-0 count must be 1, got %r" % (counts[0],))
    return WeightPrefix(j_max, counts)


def _full_scan(spec: CodeSpec, j_max: int) -> WeightPrefix:
    ctx = spec.ctx
    n = spec.length
    vd = ctx._digits[np.array(spec.trace_vector)].astype(np.int64)  # (n, r)
    totals = np.zeros(n + 1, dtype=np.int64)
    chunk_digits = min(n, 9)
    tail = 3 ** chunk_digits
    pow3 = 3 ** np.arange(n)
    tail_idx = np.arange(tail)
    for head in range(3 ** (n - chunk_digits)):
        idx = head * tail + tail_idx
        u = (idx[:, None] // pow3[None, :]) % 3  # (tail, n), digits of u
        dots = (u @ vd) % 3
        mask = ~dots.any(axis=1)
        weights = np.count_nonzero(u[mask], axis=1)
        totals += np.bincount(weights, minlength=n + 1)
    upto = min(j_max, n)
    return WeightPrefix(j_max, tuple(int(t) for t in totals[: upto + 1]) + (0,) * (j_max - upto))


def _pair_scan(spec: CodeSpec, j_max: int) -> WeightPrefix:
    ctx = spec.ctx
    v = np.array(spec.trace_vector)
    neg = np.array([ctx.neg(int(x)) for x in spec.trace_vector])
    counts = [1]
    if j_max >= 1:
        counts.append(2 * int(np.count_nonzero(v == 0)))
    if j_max >= 2:
        same = np.triu(v[None, :] == v[:, None], 1).sum()
        negated = np.triu(v[None, :] == neg[:, None], 1).sum()
        counts.append(2 * int(same) + 2 * int(negated))
    return WeightPrefix(j_max, tuple(counts))


def weight_prefix_bruteforce(spec: CodeSpec, j_max: int, *, scan_limit: int = DEFAULT_SCAN_LIMIT) -> WeightPrefix:
    """Oracle counts: a full 3^N scan when it fits the limit, else a literal
    scan over coordinate pairs for j_max <= 2."""
    if j_max < 0:
        raise DomainError("j_max must be nonnegative")
    if 3 ** spec.length <= scan_limit:
        return _full_scan(spec, j_max)
    if j_max <= 2:
        return _pair_scan(spec, j_max)
    raise CapacityError(
        "brute-force weights need a 3^%d scan (limit %d) or j_max <= 2"
        % (spec.length, scan_limit)
    )
