"""Minimum-distance kernel between convex hulls of finite 3D point sets.

GJK on the Minkowski difference, with the simplex sub-problem solved exactly
by subset enumeration (at most 4 simplex vertices in 3D). Compiled with numba;
the first call pays a one-time JIT cost, cached on disk afterwards.
"""
import numpy as np
from numba import njit

_EPS_REL = 1e-13
_MAX_ITER = 96


@njit(cache=True)
def _support(pts, d):
    best = 0
    bv = pts[0, 0] * d[0] + pts[0, 1] * d[1] + pts[0, 2] * d[2]
    for i in range(1, pts.shape[0]):
        v = pts[i, 0] * d[0] + pts[i, 1] * d[1] + pts[i, 2] * d[2]
        if v > bv:
            bv = v
            best = i
    return best


@njit(cache=True)
def _closest_on_simplex(W, m):
    """Closest point to the origin on conv(W[:m]), m <= 4.

    Enumerates every nonempty vertex subset, projects the origin onto its
    affine hull and keeps the best candidate whose barycentric coordinates
    are nonnegative. Returns (point, weights[4], subset_mask); weights are
    ordered by ascending vertex index within the subset.
    """
    best_d2 = np.inf
    best_point = np.zeros(3)
    best_w = np.zeros(4)
    best_mask = 0
    idx = np.empty(4, dtype=np.int64)
    for mask in range(1, 1 << m):
        cnt = 0
        for i in range(m):
            if mask & (1 << i):
                idx[cnt] = i
                cnt += 1
        s0 = W[idx[0]]
        d = cnt - 1
        lam = np.zeros(3)
        ok = True
        if d > 0:
            # project origin onto affine hull: (D^T D) lam = -D^T s0
            G = np.zeros((3, 3))
            rhs = np.zeros(3)
            for a in range(d):
                for b in range(d):
                    acc = 0.0
                    for c in range(3):
                        acc += (W[idx[a + 1], c] - s0[c]) * (W[idx[b + 1], c] - s0[c])
                    G[a, b] = acc
                rr = 0.0
                for c in range(3):
                    rr += (W[idx[a + 1], c] - s0[c]) * s0[c]
                rhs[a] = -rr
            for p in range(d):
                piv = p
                pv = abs(G[p, p])
                for r2 in range(p + 1, d):
                    if abs(G[r2, p]) > pv:
                        pv = abs(G[r2, p])
                        piv = r2
                if pv <= 1e-300:
                    ok = False
                    break
                if piv != p:
                    for c in range(d):
                        tmp = G[p, c]
                        G[p, c] = G[piv, c]
                        G[piv, c] = tmp
                    tmp = rhs[p]
                    rhs[p] = rhs[piv]
                    rhs[piv] = tmp
                for r2 in range(p + 1, d):
                    f = G[r2, p] / G[p, p]
                    for c in range(p, d):
                        G[r2, c] -= f * G[p, c]
                    rhs[r2] -= f * rhs[p]
            if ok:
                for p in range(d - 1, -1, -1):
                    acc = rhs[p]
                    for c in range(p + 1, d):
                        acc -= G[p, c] * lam[c]
                    lam[p] = acc / G[p, p]
        if not ok:
            continue
        th0 = 1.0
        neg = False
        for j in range(d):
            th0 -= lam[j]
            if lam[j] < -1e-12:
                neg = True
        if th0 < -1e-12 or neg:
            continue
        pt = np.zeros(3)
        for c in range(3):
            acc = s0[c] * th0
            for j in range(d):
                acc += lam[j] * W[idx[j + 1], c]
            pt[c] = acc
        d2 = pt[0] * pt[0] + pt[1] * pt[1] + pt[2] * pt[2]
        if d2 < best_d2:
            best_d2 = d2
            best_point = pt
            best_w[0] = th0
            for j in range(d):
                best_w[j + 1] = lam[j]
            for j in range(d + 1, 4):
                best_w[j] = 0.0
            best_mask = mask
    return best_point, best_w, best_mask


@njit(cache=True)
def hull_distance(A, B):
    """Distance between conv(A) and conv(B) with witness points.

    Returns (dist, pa, pb) where pa in conv(A), pb in conv(B) realize the
    distance. dist == 0.0 means the hulls intersect or touch. Exact for
    polytopes up to floating point; relative termination 1e-13.
    """
    W = np.zeros((4, 3))
    ia = np.zeros(4, dtype=np.int64)
    ib = np.zeros(4, dtype=np.int64)
    m = 0
    v = A[0] - B[0]
    pa = A[0].copy()
    pb = B[0].copy()
    scale2 = max(v[0] * v[0] + v[1] * v[1] + v[2] * v[2], 1.0)
    for _ in range(_MAX_ITER):
        vn2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
        if vn2 <= 1e-26 * scale2:
            return 0.0, pa, pb
        d = -v
        sa = _support(A, d)
        sb = _support(B, -d)
        w0 = A[sa, 0] - B[sb, 0]
        w1 = A[sa, 1] - B[sb, 1]
        w2 = A[sa, 2] - B[sb, 2]
        vw = v[0] * w0 + v[1] * w1 + v[2] * w2
        if vn2 - vw <= _EPS_REL * vn2:
            break
        dup = False
        for i in range(m):
            d0 = W[i, 0] - w0
            d1 = W[i, 1] - w1
            d2_ = W[i, 2] - w2
            if d0 * d0 + d1 * d1 + d2_ * d2_ <= 1e-28 * scale2:
                dup = True
        if dup:
            break
        W[m, 0] = w0
        W[m, 1] = w1
        W[m, 2] = w2
        ia[m] = sa
        ib[m] = sb
        m += 1
        sc = w0 * w0 + w1 * w1 + w2 * w2
        if sc > scale2:
            scale2 = sc
        pt, wts, mask = _closest_on_simplex(W, m)
        # witness points from the supporting subset, then compress the simplex
        paa = np.zeros(3)
        pbb = np.zeros(3)
        j = 0
        nm = 0
        for i in range(m):
            if mask & (1 << i):
                for c in range(3):
                    paa[c] += wts[j] * A[ia[i], c]
                    pbb[c] += wts[j] * B[ib[i], c]
                W[nm, 0] = W[i, 0]
                W[nm, 1] = W[i, 1]
                W[nm, 2] = W[i, 2]
                ia[nm] = ia[i]
                ib[nm] = ib[i]
                j += 1
                nm += 1
        m = nm
        pa = paa
        pb = pbb
        v = pt
        if m == 4:
            vn2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
            if vn2 <= 1e-26 * scale2:
                return 0.0, pa, pb
    vn = np.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
    return vn, pa, pb
