"""Numba kernels: prefix sums, O(1) window costs, DP solvers, SMAWK.

Index convention: positions run 0..n over the sorted values x[0..n-1]; the
window (i, j] covers x[i..j-1] and has size j - i.  Cost/argmin arrays are
position-indexed (length n + 1).
"""

import numba as nb
import numpy as np

# cost kind codes
SSE = 0
SAE = 1
MAXDIST = 2
ROUNDUP = 3
ROUNDDOWN = 4

# sum mode codes
MODE_FULL = 0
MODE_PARTIAL = 1
MODE_ALT = 2

# adapted-cost scheme codes used by the SMAWK-based solvers
SCHEME_MIN_MONO = 1      # forbid size < k, rank +row
SCHEME_MINMAX_MONO = 2   # additionally forbid size >= 2k, rank -row


@nb.njit(cache=True, nogil=True)
def build_prefix_sums(x):
    """Running sums of x and x^2, strictly sequential accumulation."""
    n = x.shape[0]
    s1 = np.zeros(n + 1, dtype=np.float64)
    s2 = np.zeros(n + 1, dtype=np.float64)
    a = 0.0
    b = 0.0
    for t in range(n):
        v = x[t]
        a += v
        b += v * v
        s1[t + 1] = a
        s2[t + 1] = b
    return s1, s2


@nb.njit(cache=True, nogil=True)
def build_partial_sums(x, k):
    """Running sums of x and x^2 restarted at every k-th position.

    p[j] aggregates x over (b, j] where b is the largest multiple of k
    below j, so no stored value sums more than k inputs.
    """
    n = x.shape[0]
    p1 = np.zeros(n + 1, dtype=np.float64)
    p2 = np.zeros(n + 1, dtype=np.float64)
    a = 0.0
    b = 0.0
    for t in range(n):
        if t % k == 0:
            a = 0.0
            b = 0.0
        v = x[t]
        a += v
        b += v * v
        p1[t + 1] = a
        p2[t + 1] = b
    return p1, p2


@nb.njit(inline="always")
def _psum(p, k, i, j):
    # window sum over (i, j] from restarted running sums; needs j - i <= 2k-1,
    # so the window straddles at most three blocks (three when i % k >= 1).
    mi = i // k
    head = p[i] if i % k != 0 else 0.0
    mj = (j - 1) // k
    if mj == mi:
        return p[j] - head
    s = p[(mi + 1) * k] - head
    if mj == mi + 2:
        s += p[(mi + 2) * k]
    return s + p[j]


@nb.njit(cache=True, nogil=True)
def window_cost(kind, mode, x, s1, s2, k, i, j):
    """Cost of the window (i, j] for the configured kind/mode.

    In MODE_ALT the value is the reduced-instruction surrogate, which is
    order-equivalent for candidates of the same column but not a true cost.
    """
    if kind == MAXDIST:
        return 0.5 * (x[j - 1] - x[i])
    size = j - i
    if mode == MODE_FULL:
        if kind == SSE:
            w = s1[j] - s1[i]
            return s2[j] - s2[i] - w * w / size
        if kind == SAE:
            half = size // 2
            return (s1[j] - s1[j - half]) - (s1[i + half] - s1[i])
        w = s1[j] - s1[i]
        if kind == ROUNDUP:
            return size * x[j - 1] - w
        return w - size * x[i]
    if mode == MODE_PARTIAL:
        if kind == SSE:
            w = _psum(s1, k, i, j)
            return _psum(s2, k, i, j) - w * w / size
        half = size // 2
        if half == 0:
            return 0.0
        return _psum(s1, k, j - half, j) - _psum(s1, k, i, i + half)
    # MODE_ALT surrogates
    if kind == SSE:
        w = s1[j] - s1[i]
        return -(w * w) / size
    if kind == ROUNDUP:
        return size * x[j - 1]
    return -size * x[i]


@nb.njit(cache=True, nogil=True)
def solve_classic_impl(x, s1, s2, kind, mode, k, argmin, mincost):
    """O(n^2) scan: column j takes the best split in {0} u [k, j-k]."""
    nb.literally(kind)
    nb.literally(mode)
    n = x.shape[0]
    evals = 0
    for j in range(k, n + 1):
        best = window_cost(kind, mode, x, s1, s2, k, 0, j)
        besti = 0
        evals += 1
        for i in range(k, j - k + 1):
            c = mincost[i] + window_cost(kind, mode, x, s1, s2, k, i, j)
            evals += 1
            if c < best:
                best = c
                besti = i
        mincost[j] = best
        argmin[j] = besti
    return evals


@nb.njit(cache=True, nogil=True)
def solve_simple_impl(x, s1, s2, kind, mode, k, argmin, mincost,
                        use_monotone, rebase):
    """O(kn) scan over splits i in [max(k, j-2k+1), j-k] per column j.

    use_monotone additionally clamps the scan start to the previous
    column's argmin (argmins are non-decreasing).  rebase subtracts the
    minimum of the live cost window every 2k-1 columns to keep stored
    totals near zero; argmins are unaffected by the uniform shift.
    """
    nb.literally(kind)
    nb.literally(mode)
    n = x.shape[0]
    evals = 0
    for j in range(k, 2 * k):
        mincost[j] = window_cost(kind, mode, x, s1, s2, k, 0, j)
        argmin[j] = 0
        evals += 1
    cols_since = 0
    for j in range(2 * k, n + 1):
        lo = j - 2 * k + 1
        if lo < k:
            lo = k
        if use_monotone and argmin[j - 1] > lo:
            lo = argmin[j - 1]
        best = mincost[lo] + window_cost(kind, mode, x, s1, s2, k, lo, j)
        besti = lo
        evals += 1
        for i in range(lo + 1, j - k + 1):
            c = mincost[i] + window_cost(kind, mode, x, s1, s2, k, i, j)
            evals += 1
            if c < best:
                best = c
                besti = i
        mincost[j] = best
        argmin[j] = besti
        if rebase:
            cols_since += 1
            if cols_since >= 2 * k - 1:
                cols_since = 0
                w0 = j - 2 * k + 2
                if w0 < k:
                    w0 = k
                shift = mincost[w0]
                for i in range(w0 + 1, j + 1):
                    if mincost[i] < shift:
                        shift = mincost[i]
                for i in range(w0, j + 1):
                    mincost[i] -= shift
    return evals


# ---------------------------------------------------------------------------
# SMAWK over the implicit matrix M[r, c] = MinCost[r] + C_adapt(r, c).
#
# Values are encoded as (flag, key) pairs ordered lexicographically:
# finite costs are (0.0, cost) and forbidden windows are (1.0, rank), so
# every finite cost sorts below every sentinel and sentinels sort by rank.
# ---------------------------------------------------------------------------

@nb.njit(inline="always")
def _adapted(r, c, scheme, kind, mode, x, s1, s2, k, mincost):
    size = c - r
    if size < k:
        return 1.0, np.float64(r)
    if scheme == SCHEME_MINMAX_MONO and size >= 2 * k:
        return 1.0, np.float64(-r)
    return 0.0, mincost[r] + window_cost(kind, mode, x, s1, s2, k, r, c)


@nb.njit(inline="always")
def _lt(f1, v1, f2, v2):
    return f1 < f2 or (f1 == f2 and v1 < v2)


@nb.njit(cache=True, nogil=True)
def smawk_kernel(rowpos, c0, cstep, ncols, scheme, kind, mode, x, s1, s2, k,
                 mincost, out_arg, out_flag, out_val, counter):
    """Column minima of M over rows `rowpos` and columns c0 + cstep*t.

    Writes, per absolute column position c, the leftmost minimising row
    into out_arg[c] and its encoded value into (out_flag, out_val)[c].
    Iterative REDUCE/INTERPOLATE: descending levels prune rows to at most
    ncols survivors and halve the columns (keeping the odd ones); the
    deepest single column is solved directly; ascending levels fill their
    even columns by scanning survivors between neighbouring odd argmins.
    """
    nrows = rowpos.shape[0]
    cap0 = nrows if nrows < ncols else ncols
    buf = np.empty(cap0 + ncols + 2, dtype=np.int64)
    bflag = np.empty(cap0 + ncols + 2, dtype=np.float64)
    bval = np.empty(cap0 + ncols + 2, dtype=np.float64)
    lev_off = np.empty(64, dtype=np.int64)
    lev_size = np.empty(64, dtype=np.int64)
    lev_c0 = np.empty(64, dtype=np.int64)
    lev_step = np.empty(64, dtype=np.int64)
    lev_ncols = np.empty(64, dtype=np.int64)

    lev = 0
    off = 0
    cc0 = c0
    cst = cstep
    nc = ncols
    while True:
        lev_off[lev] = off
        lev_c0[lev] = cc0
        lev_step[lev] = cst
        lev_ncols[lev] = nc
        if lev == 0:
            rn = nrows
            roff = 0
        else:
            rn = lev_size[lev - 1]
            roff = lev_off[lev - 1]
        # REDUCE: keep rows that can still host a column minimum.  bval[s]
        # caches the slot-s row's value at its own column, so each while
        # comparison costs one fresh evaluation.
        top = 0
        for ri in range(rn):
            r = rowpos[ri] if lev == 0 else buf[roff + ri]
            lastc = np.int64(-1)
            lastf = 0.0
            lastv = 0.0
            while top > 0:
                c = cc0 + cst * (top - 1)
                f, v = _adapted(r, c, scheme, kind, mode, x, s1, s2, k,
                                mincost)
                counter[0] += 1
                lastc = c
                lastf = f
                lastv = v
                if _lt(f, v, bflag[off + top - 1], bval[off + top - 1]):
                    top -= 1
                else:
                    break
            if top < nc:
                c = cc0 + cst * top
                if c == lastc:
                    f = lastf
                    v = lastv
                else:
                    f, v = _adapted(r, c, scheme, kind, mode, x, s1, s2, k,
                                    mincost)
                    counter[0] += 1
                buf[off + top] = r
                bflag[off + top] = f
                bval[off + top] = v
                top += 1
        lev_size[lev] = top
        if nc == 1:
            out_arg[cc0] = buf[off]
            out_flag[cc0] = bflag[off]
            out_val[cc0] = bval[off]
            break
        off += top
        lev += 1
        cc0 += cst
        cst *= 2
        nc //= 2
    # INTERPOLATE bottom-up: odd columns of level l are level l+1's output.
    for l in range(lev - 1, -1, -1):
        soff = lev_off[l]
        ssize = lev_size[l]
        cc0 = lev_c0[l]
        cst = lev_step[l]
        nc = lev_ncols[l]
        si = 0
        for t in range(0, nc, 2):
            c = cc0 + cst * t
            if t + 1 < nc:
                nxt = out_arg[c + cst]
                hi = si
                while buf[soff + hi] != nxt:
                    hi += 1
            else:
                hi = ssize - 1
            bf, bv = _adapted(buf[soff + si], c, scheme, kind, mode, x, s1,
                              s2, k, mincost)
            counter[0] += 1
            bi = si
            for u in range(si + 1, hi + 1):
                f, v = _adapted(buf[soff + u], c, scheme, kind, mode, x, s1,
                                s2, k, mincost)
                counter[0] += 1
                if _lt(f, v, bf, bv):
                    bf = f
                    bv = v
                    bi = u
            out_arg[c] = buf[soff + bi]
            out_flag[c] = bf
            out_val[c] = bv
            si = hi


@nb.njit(inline="always")
def _rebase_span(mincost, lo, hi):
    shift = mincost[lo]
    for i in range(lo + 1, hi + 1):
        if mincost[i] < shift:
            shift = mincost[i]
    for i in range(lo, hi + 1):
        mincost[i] -= shift


@nb.njit(cache=True, nogil=True)
def solve_staggered_impl(x, s1, s2, kind, mode, k, argmin, mincost, rebase,
                           plan, counter):
    """O(n) solver: SMAWK on the diagonal blocks of valid cluster windows.

    Columns [k, 2k-1] are seeded with the single-cluster cost, then each
    plan row (col_lo, col_hi, row_lo, row_hi) is handed to SMAWK; rows of
    a block are final before its columns are processed.  Returns 0 on
    success, 1 if a column minimum came out forbidden (broken invariant).
    """
    nb.literally(kind)
    nb.literally(mode)
    n = x.shape[0]
    allpos = np.arange(n + 1)
    oflag = np.empty(n + 1, dtype=np.float64)
    oval = np.empty(n + 1, dtype=np.float64)
    for i in range(k, 2 * k):
        mincost[i] = window_cost(kind, mode, x, s1, s2, k, 0, i)
        argmin[i] = 0
        counter[0] += 1
    for b in range(plan.shape[0]):
        clo = plan[b, 0]
        chi = plan[b, 1]
        rlo = plan[b, 2]
        rhi = plan[b, 3]
        if rebase and b > 0:
            _rebase_span(mincost, rlo, rhi)
        smawk_kernel(allpos[rlo:rhi + 1], clo, 1, chi - clo + 1,
                     SCHEME_MINMAX_MONO, kind, mode, x, s1, s2, k, mincost,
                     argmin, oflag, oval, counter)
        for c in range(clo, chi + 1):
            if oflag[c] != 0.0:
                return 1
            mincost[c] = oval[c]
    return 0


@nb.njit(cache=True, nogil=True)
def solve_wilber_impl(x, s1, s2, kind, mode, k, argmin, mincost, counter):
    """O(n) concave-LWSS solver with min-size k and no size upper bound.

    Works on the compressed node set {0} u [k, n]: node t >= 1 sits at
    position k-1+t, so node t becomes usable as a split row once column t
    is final.  Each stage guesses minima for a block of columns from the
    already-final rows, then checks whether any newly finalized in-block
    row improves a guess; the first improved column restarts the stage
    with the row fence advanced past the old rows.  Returns 0 on success.
    """
    nb.literally(kind)
    nb.literally(mode)
    n = x.shape[0]
    m = n - k + 1
    rowpos = np.empty(m + 1, dtype=np.int64)
    rowpos[0] = 0
    for t in range(1, m + 1):
        rowpos[t] = k - 1 + t
    gflag = np.empty(n + 1, dtype=np.float64)
    gval = np.empty(n + 1, dtype=np.float64)
    garg = np.zeros(n + 1, dtype=np.int64)
    hflag = np.empty(n + 1, dtype=np.float64)
    hval = np.empty(n + 1, dtype=np.float64)
    harg = np.zeros(n + 1, dtype=np.int64)
    lo = 0
    fin = 0
    while fin < m:
        p = 2 * fin - lo + 1
        if p > m:
            p = m
        smawk_kernel(rowpos[lo:fin + 1], k + fin, 1, p - fin,
                     SCHEME_MIN_MONO, kind, mode, x, s1, s2, k, mincost,
                     garg, gflag, gval, counter)
        cpos = k + fin
        if gflag[cpos] != 0.0:
            return 1
        mincost[cpos] = gval[cpos]
        argmin[cpos] = garg[cpos]
        if p == fin + 1:
            fin += 1
            continue
        for t in range(fin + 2, p):
            cpos = k - 1 + t
            if gflag[cpos] != 0.0:
                return 1
            mincost[cpos] = gval[cpos]
        smawk_kernel(rowpos[fin + 1:p], k + fin + 1, 1, p - fin - 1,
                     SCHEME_MIN_MONO, kind, mode, x, s1, s2, k, mincost,
                     harg, hflag, hval, counter)
        cstar = -1
        for t in range(fin + 2, p + 1):
            cpos = k - 1 + t
            if _lt(hflag[cpos], hval[cpos], gflag[cpos], gval[cpos]):
                cstar = t
                break
            if gflag[cpos] != 0.0:
                return 1
            mincost[cpos] = gval[cpos]
            argmin[cpos] = garg[cpos]
        if cstar < 0:
            fin = p
        else:
            cpos = k - 1 + cstar
            if hflag[cpos] != 0.0:
                return 1
            mincost[cpos] = hval[cpos]
            argmin[cpos] = harg[cpos]
            lo = fin + 1
            fin = cstar
    return 0


@nb.njit(cache=True, nogil=True)
def backtrack_kernel(b, out):
    """Implicit split array -> labels ascending along sorted order.

    b[p-1] is the chosen split for position p.  Walks the chain from n,
    assigning descending provisional ids, then flips them so the leftmost
    cluster is 0.  Returns the cluster count, or -1 on a broken chain.
    """
    n = b.shape[0]
    nclusters = 0
    p = n
    steps = 0
    while True:
        steps += 1
        if steps > n:
            return -1
        q = b[p - 1]
        if q < 0 or q >= p:
            return -1
        nclusters += 1
        for i in range(q, p):
            out[i] = nclusters
        p = q
        if p == 0:
            break
    for i in range(n):
        out[i] = nclusters - out[i]
    return nclusters

# ---------------------------------------------------------------------------
# Dispatchers.  The *_impl kernels above require literal kind/mode so every
# (kind, mode) pair compiles to straight-line cost code; resolving literals
# from Python on each call is slow, so these jitted trees bind the literal
# constants once at compile time and keep the Python-facing call cheap.
# ---------------------------------------------------------------------------

@nb.njit(cache=True, nogil=True)
def solve_classic_kernel(x, s1, s2, kind, mode, k, argmin, mincost):
    if mode == MODE_FULL:
        if kind == SSE:
            return solve_classic_impl(x, s1, s2, SSE, MODE_FULL, k, argmin, mincost)
        if kind == SAE:
            return solve_classic_impl(x, s1, s2, SAE, MODE_FULL, k, argmin, mincost)
        if kind == MAXDIST:
            return solve_classic_impl(x, s1, s2, MAXDIST, MODE_FULL, k, argmin, mincost)
        if kind == ROUNDUP:
            return solve_classic_impl(x, s1, s2, ROUNDUP, MODE_FULL, k, argmin, mincost)
        return solve_classic_impl(x, s1, s2, ROUNDDOWN, MODE_FULL, k, argmin, mincost)
    if kind == SSE:
        return solve_classic_impl(x, s1, s2, SSE, MODE_ALT, k, argmin, mincost)
    if kind == ROUNDUP:
        return solve_classic_impl(x, s1, s2, ROUNDUP, MODE_ALT, k, argmin, mincost)
    return solve_classic_impl(x, s1, s2, ROUNDDOWN, MODE_ALT, k, argmin, mincost)


@nb.njit(cache=True, nogil=True)
def solve_simple_kernel(x, s1, s2, kind, mode, k, argmin, mincost,
                        use_monotone, rebase):
    if mode == MODE_FULL:
        if kind == SSE:
            return solve_simple_impl(x, s1, s2, SSE, MODE_FULL, k, argmin, mincost, use_monotone, rebase)
        if kind == SAE:
            return solve_simple_impl(x, s1, s2, SAE, MODE_FULL, k, argmin, mincost, use_monotone, rebase)
        if kind == MAXDIST:
            return solve_simple_impl(x, s1, s2, MAXDIST, MODE_FULL, k, argmin, mincost, use_monotone, rebase)
        if kind == ROUNDUP:
            return solve_simple_impl(x, s1, s2, ROUNDUP, MODE_FULL, k, argmin, mincost, use_monotone, rebase)
        return solve_simple_impl(x, s1, s2, ROUNDDOWN, MODE_FULL, k, argmin, mincost, use_monotone, rebase)
    if mode == MODE_PARTIAL:
        if kind == SSE:
            return solve_simple_impl(x, s1, s2, SSE, MODE_PARTIAL, k, argmin, mincost, use_monotone, rebase)
        return solve_simple_impl(x, s1, s2, SAE, MODE_PARTIAL, k, argmin, mincost, use_monotone, rebase)
    if kind == SSE:
        return solve_simple_impl(x, s1, s2, SSE, MODE_ALT, k, argmin, mincost, use_monotone, rebase)
    if kind == ROUNDUP:
        return solve_simple_impl(x, s1, s2, ROUNDUP, MODE_ALT, k, argmin, mincost, use_monotone, rebase)
    return solve_simple_impl(x, s1, s2, ROUNDDOWN, MODE_ALT, k, argmin, mincost, use_monotone, rebase)


@nb.njit(cache=True, nogil=True)
def solve_staggered_kernel(x, s1, s2, kind, mode, k, argmin, mincost, rebase,
                           plan, counter):
    if mode == MODE_FULL:
        if kind == SSE:
            return solve_staggered_impl(x, s1, s2, SSE, MODE_FULL, k, argmin, mincost, rebase, plan, counter)
        if kind == SAE:
            return solve_staggered_impl(x, s1, s2, SAE, MODE_FULL, k, argmin, mincost, rebase, plan, counter)
        if kind == MAXDIST:
            return solve_staggered_impl(x, s1, s2, MAXDIST, MODE_FULL, k, argmin, mincost, rebase, plan, counter)
        if kind == ROUNDUP:
            return solve_staggered_impl(x, s1, s2, ROUNDUP, MODE_FULL, k, argmin, mincost, rebase, plan, counter)
        return solve_staggered_impl(x, s1, s2, ROUNDDOWN, MODE_FULL, k, argmin, mincost, rebase, plan, counter)
    if mode == MODE_PARTIAL:
        if kind == SSE:
            return solve_staggered_impl(x, s1, s2, SSE, MODE_PARTIAL, k, argmin, mincost, rebase, plan, counter)
        return solve_staggered_impl(x, s1, s2, SAE, MODE_PARTIAL, k, argmin, mincost, rebase, plan, counter)
    if kind == SSE:
        return solve_staggered_impl(x, s1, s2, SSE, MODE_ALT, k, argmin, mincost, rebase, plan, counter)
    if kind == ROUNDUP:
        return solve_staggered_impl(x, s1, s2, ROUNDUP, MODE_ALT, k, argmin, mincost, rebase, plan, counter)
    return solve_staggered_impl(x, s1, s2, ROUNDDOWN, MODE_ALT, k, argmin, mincost, rebase, plan, counter)


@nb.njit(cache=True, nogil=True)
def solve_wilber_kernel(x, s1, s2, kind, mode, k, argmin, mincost, counter):
    if mode == MODE_FULL:
        if kind == SSE:
            return solve_wilber_impl(x, s1, s2, SSE, MODE_FULL, k, argmin, mincost, counter)
        if kind == SAE:
            return solve_wilber_impl(x, s1, s2, SAE, MODE_FULL, k, argmin, mincost, counter)
        if kind == MAXDIST:
            return solve_wilber_impl(x, s1, s2, MAXDIST, MODE_FULL, k, argmin, mincost, counter)
        if kind == ROUNDUP:
            return solve_wilber_impl(x, s1, s2, ROUNDUP, MODE_FULL, k, argmin, mincost, counter)
        return solve_wilber_impl(x, s1, s2, ROUNDDOWN, MODE_FULL, k, argmin, mincost, counter)
    if kind == SSE:
        return solve_wilber_impl(x, s1, s2, SSE, MODE_ALT, k, argmin, mincost, counter)
    if kind == ROUNDUP:
        return solve_wilber_impl(x, s1, s2, ROUNDUP, MODE_ALT, k, argmin, mincost, counter)
    return solve_wilber_impl(x, s1, s2, ROUNDDOWN, MODE_ALT, k, argmin, mincost, counter)
