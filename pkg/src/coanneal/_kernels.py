"""Compiled inner loops: RNG streams, membership tests, chord finding, walks.

Everything here is numba-jitted because the sampling experiments issue
hundreds of millions of membership queries. The Python modules wrap these
kernels with validated, documented interfaces; the algorithms are the same
on both sides (the test suite checks parity where both exist).
"""

import numpy as np
from numba import njit

SQRT2 = np.sqrt(2.0)

# convex body codes for the membership kernel
BODY_BALL = 0
BODY_CUBE = 1
BODY_DNN = 2
BODY_COPOSITIVE_CAP = 3

# direction source codes
DIR_ISOTROPIC = 0
DIR_FACTOR = 1
DIR_EMPIRICAL = 2

_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_ALT = np.uint64(0xD1B54A32D192ED03)


@njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def rng_next(state):
    state[0] = state[0] + _GAMMA
    return _mix64(state[0])


@njit(cache=True)
def rng_uniform(state):
    """Uniform draw in the open interval (0, 1)."""
    return (np.float64(rng_next(state) >> np.uint64(11)) + 0.5) * 2.0 ** -53


@njit(cache=True)
def rng_normal(state):
    """Standard normal draw (Box-Muller, cosine branch)."""
    u1 = rng_uniform(state)
    u2 = rng_uniform(state)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


@njit(cache=True)
def stream_seed(master, a, b):
    """Derive the state word of an independent substream (a, b) of a master seed."""
    z = _mix64(np.uint64(master))
    z = _mix64(z ^ (np.uint64(a) * _GAMMA))
    z = _mix64(z ^ (np.uint64(b) * _ALT))
    return z


@njit(cache=True)
def smat_fill(x, m, out):
    """Unpack a length-m(m+1)/2 coordinate vector into the symmetric matrix out."""
    k = 0
    for i in range(m):
        for j in range(i, m):
            v = x[k]
            k += 1
            if i == j:
                out[i, i] = v
            else:
                w = v / SQRT2
                out[i, j] = w
                out[j, i] = w


@njit(cache=True)
def _solve_inplace(M, rhs, n):
    """Gaussian elimination with partial pivoting on the leading n-by-n block.

    Returns False when a pivot is negligibly small (singular system).
    """
    scale = 0.0
    for i in range(n):
        for j in range(n):
            a = abs(M[i, j])
            if a > scale:
                scale = a
    if scale == 0.0:
        return False
    for col in range(n):
        piv = col
        big = abs(M[col, col])
        for r in range(col + 1, n):
            a = abs(M[r, col])
            if a > big:
                big = a
                piv = r
        if big < 1e-12 * scale:
            return False
        if piv != col:
            for j in range(n):
                tmp = M[col, j]
                M[col, j] = M[piv, j]
                M[piv, j] = tmp
            tmp = rhs[col]
            rhs[col] = rhs[piv]
            rhs[piv] = tmp
        inv = 1.0 / M[col, col]
        for r in range(col + 1, n):
            f = M[r, col] * inv
            if f != 0.0:
                for j in range(col, n):
                    M[r, j] -= f * M[col, j]
                rhs[r] -= f * rhs[col]
    for col in range(n - 1, -1, -1):
        acc = rhs[col]
        for j in range(col + 1, n):
            acc -= M[col, j] * rhs[j]
        rhs[col] = acc / M[col, col]
    return True


@njit(cache=True)
def copositive_min(A, tol):
    """Minimum of a'Aa over the standard simplex, by support enumeration.

    For every support S the stationarity system A_SS a_S = lam*e, e'a_S = 1
    is solved as one bordered linear system; candidates are kept when a_S >= 0
    and the off-support multipliers satisfy (Aa)_i >= lam - tol. Vertex values
    A_ii are always included. Singular supports are skipped.

    Returns (minimum value, minimizing simplex vector).
    """
    m = A.shape[0]
    best = np.inf
    bestw = np.zeros(m)
    idx = np.empty(m, np.int64)
    M = np.empty((m + 1, m + 1))
    rhs = np.empty(m + 1)
    for i in range(m):
        if A[i, i] < best:
            best = A[i, i]
            for j in range(m):
                bestw[j] = 0.0
            bestw[i] = 1.0
    for mask in range(1, 1 << m):
        s = 0
        for i in range(m):
            if (mask >> i) & 1:
                idx[s] = i
                s += 1
        if s == 1:
            continue  # vertex candidates handled above
        n1 = s + 1
        for r in range(s):
            ir = idx[r]
            for c in range(s):
                M[r, c] = A[ir, idx[c]]
            M[r, s] = -1.0
            rhs[r] = 0.0
        for c in range(s):
            M[s, c] = 1.0
        M[s, s] = 0.0
        rhs[s] = 1.0
        if not _solve_inplace(M, rhs, n1):
            continue
        lam = rhs[s]
        feasible = True
        for r in range(s):
            if rhs[r] < -1e-12:
                feasible = False
                break
        if feasible:
            for i in range(m):
                if not (mask >> i) & 1:
                    acc = 0.0
                    for r in range(s):
                        acc += A[i, idx[r]] * rhs[r]
                    if acc < lam - tol:
                        feasible = False
                        break
        if feasible and lam < best:
            best = lam
            for j in range(m):
                bestw[j] = 0.0
            for r in range(s):
                bestw[idx[r]] = rhs[r]
    return best, bestw


@njit(cache=True)
def membership(kind, morder, radius, tol, x):
    """Closed-body membership test for the supported convex bodies."""
    if kind == BODY_BALL:
        s = 0.0
        for i in range(x.shape[0]):
            s += x[i] * x[i]
        return s <= radius * radius
    if kind == BODY_CUBE:
        for i in range(x.shape[0]):
            if x[i] < 0.0 or x[i] > 1.0:
                return False
        return True
    if kind == BODY_DNN:
        total = 0.0
        A = np.empty((morder, morder))
        k = 0
        for i in range(morder):
            for j in range(i, morder):
                v = x[k]
                k += 1
                if v < 0.0:
                    return False
                if i == j:
                    A[i, i] = v
                    total += v
                else:
                    w = v / SQRT2
                    A[i, j] = w
                    A[j, i] = w
                    total += SQRT2 * v
        if total > 1.0:
            return False
        ev = np.linalg.eigvalsh(A)
        return ev[0] >= -tol
    # copositive cap: unit Frobenius ball intersected with the copositive cone
    s = 0.0
    for i in range(x.shape[0]):
        s += x[i] * x[i]
    if s > 1.0:
        return False
    A = np.empty((morder, morder))
    smat_fill(x, morder, A)
    mv, _ = copositive_min(A, tol)
    return mv >= -tol


@njit(cache=True)
def _endpoint(kind, morder, radius, tol, x, d, sign, res, tmax, pt):
    """Feasible chord endpoint along sign*d from x, with its query count."""
    n = x.shape[0]
    calls = 0
    lo = 0.0
    hi = tmax / 16.0
    if hi < res:
        hi = res
    while True:
        for i in range(n):
            pt[i] = x[i] + sign * hi * d[i]
        calls += 1
        if not membership(kind, morder, radius, tol, pt):
            break
        lo = hi
        hi *= 2.0
        if hi > 4.0 * tmax:
            # enclosing-radius bound violated; treat as endpoint
            return hi, calls
    while hi - lo > res:
        mid = 0.5 * (lo + hi)
        for i in range(n):
            pt[i] = x[i] + sign * mid * d[i]
        calls += 1
        if membership(kind, morder, radius, tol, pt):
            lo = mid
        else:
            hi = mid
    return lo, calls


@njit(cache=True)
def chord_endpoints(kind, morder, radius, tol, x, d, chord_tol, pt):
    """Chord of the body through x along d: (t_minus, t_plus, oracle calls)."""
    dn = 0.0
    for i in range(d.shape[0]):
        dn += d[i] * d[i]
    dn = np.sqrt(dn)
    res = chord_tol / dn
    tmax = 2.0 * radius / dn
    tp, c1 = _endpoint(kind, morder, radius, tol, x, d, 1.0, res, tmax, pt)
    tm, c2 = _endpoint(kind, morder, radius, tol, x, d, -1.0, res, tmax, pt)
    return -tm, tp, c1 + c2


@njit(cache=True)
def chord_draw(s, tmin, tmax, u):
    """Inverse-CDF draw from the density ~ exp(s*t) on [tmin, tmax]."""
    span = tmax - tmin
    z = s * span
    if abs(z) < 1e-12:
        return tmin + u * span
    if z > 700.0:
        # saturated: exponential offset below the favored endpoint, in log space
        t = tmax + np.log(u) / s
        if t < tmin:
            t = tmin
        return t
    t = tmin + np.log1p(u * np.expm1(z)) / s
    if t < tmin:
        t = tmin
    elif t > tmax:
        t = tmax
    return t


@njit(cache=True)
def run_walk(kind, morder, radius, tol, x, theta, dir_kind, factor, samples,
             steps, chord_tol, state):
    """Hit-and-run walk on the Boltzmann density ~ exp(<theta, .>).

    Mutates x in place and returns the membership-query count.
    """
    n = x.shape[0]
    d = np.empty(n)
    z = np.empty(n)
    pt = np.empty(n)
    calls = 0
    for _ in range(steps):
        while True:
            if dir_kind == DIR_ISOTROPIC:
                for i in range(n):
                    d[i] = rng_normal(state)
            elif dir_kind == DIR_FACTOR:
                for i in range(n):
                    z[i] = rng_normal(state)
                for i in range(n):
                    acc = 0.0
                    for j in range(i + 1):
                        acc += factor[i, j] * z[j]
                    d[i] = acc
            else:
                j = int(rng_next(state) % np.uint64(samples.shape[0]))
                for i in range(n):
                    d[i] = samples[j, i]
            dn2 = 0.0
            for i in range(n):
                dn2 += d[i] * d[i]
            if dn2 > 0.0:
                break
        tmin, tmax, c = chord_endpoints(kind, morder, radius, tol, x, d,
                                        chord_tol, pt)
        calls += c
        s = 0.0
        for i in range(n):
            s += theta[i] * d[i]
        u = rng_uniform(state)
        t = chord_draw(s, tmin, tmax, u)
        for i in range(n):
            x[i] += t * d[i]
    return calls


@njit(cache=True)
def run_walks(kind, morder, radius, tol, x0, theta, dir_kind, factor, samples,
              nwalks, steps, chord_tol, seeds, chained):
    """End points of nwalks hit-and-run walks plus the total query count.

    chained=True starts walk j from the end of walk j-1 (walk 0 from x0);
    otherwise every walk starts from x0. Walk j uses its own RNG stream.
    """
    n = x0.shape[0]
    out = np.empty((nwalks, n))
    cur = np.empty(n)
    state = np.empty(1, np.uint64)
    calls = 0
    for i in range(n):
        cur[i] = x0[i]
    for j in range(nwalks):
        if not chained:
            for i in range(n):
                cur[i] = x0[i]
        state[0] = seeds[j]
        calls += run_walk(kind, morder, radius, tol, cur, theta, dir_kind,
                          factor, samples, steps, chord_tol, state)
        for i in range(n):
            out[j, i] = cur[i]
    return out, calls
