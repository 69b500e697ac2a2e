"""Independent reference implementations used to check the estimators.

Everything here is deliberately written the slow, obvious way: probability
dictionaries and explicit loops, never the library's counting or neighbor
machinery.
"""

from __future__ import annotations

import math
from collections import Counter

import numpy as np

from infodyn.mathutils import digamma


# ---------------------------------------------------------------- discrete
def plugin_entropy(symbols) -> float:
    """H = -sum p log2 p from a Counter over observed configurations."""
    items = [tuple(np.atleast_1d(s)) for s in symbols]
    n = len(items)
    return -sum((c / n) * math.log2(c / n) for c in Counter(items).values())


def oracle_entropy(x) -> float:
    return plugin_entropy(list(np.asarray(x).reshape(len(x), -1)))


def oracle_mi(x, y) -> float:
    x = np.asarray(x).reshape(len(x), -1)
    y = np.asarray(y).reshape(len(y), -1)
    joint = np.hstack([x, y])
    return oracle_entropy(x) + oracle_entropy(y) - oracle_entropy(joint)


def oracle_cmi(x, y, z) -> float:
    x = np.asarray(x).reshape(len(x), -1)
    y = np.asarray(y).reshape(len(y), -1)
    z = np.asarray(z).reshape(len(z), -1)
    xz = np.hstack([x, z])
    yz = np.hstack([y, z])
    xyz = np.hstack([x, y, z])
    return oracle_entropy(xz) + oracle_entropy(yz) - oracle_entropy(z) - oracle_entropy(xyz)


def te_tuples(src, dst, k=1, tau_k=1, l=1, tau_l=1, u=1):
    """(source_state, next, past) tuples by explicit index arithmetic."""
    src = np.asarray(src)
    dst = np.asarray(dst)
    offset = max(k * tau_k, (l - 1) * tau_l + u)
    rows = []
    for m in range(offset, len(dst)):
        past = tuple(dst[m - 1 - j * tau_k] for j in range(k - 1, -1, -1))
        state = tuple(src[m - u - j * tau_l] for j in range(l - 1, -1, -1))
        rows.append((state, (dst[m],), past))
    return rows


def oracle_te(src, dst, k=1, tau_k=1, l=1, tau_l=1, u=1) -> float:
    rows = te_tuples(src, dst, k, tau_k, l, tau_l, u)
    s = [r[0] for r in rows]
    x = [r[1] for r in rows]
    p = [r[2] for r in rows]
    return oracle_cmi(np.array(s), np.array(x), np.array(p))


def oracle_ais(series, k=1, tau=1) -> float:
    series = np.asarray(series)
    pasts, nexts = [], []
    for m in range(k * tau, len(series)):
        pasts.append(tuple(series[m - 1 - j * tau] for j in range(k - 1, -1, -1)))
        nexts.append((series[m],))
    return oracle_mi(np.array(pasts), np.array(nexts))


def oracle_entropy_rate(series, k=1, tau=1) -> float:
    series = np.asarray(series)
    pasts, nexts = [], []
    for m in range(k * tau, len(series)):
        pasts.append(tuple(series[m - 1 - j * tau] for j in range(k - 1, -1, -1)))
        nexts.append((series[m],))
    joint = [n + p for n, p in zip(nexts, pasts)]
    return plugin_entropy(joint) - plugin_entropy(pasts)


def oracle_predictive(series, k=1, tau=1) -> float:
    series = np.asarray(series)
    pasts, futures = [], []
    for m in range(k * tau, len(series) - (k - 1) * tau):
        pasts.append(tuple(series[m - 1 - j * tau] for j in range(k - 1, -1, -1)))
        futures.append(tuple(series[m + j * tau] for j in range(k)))
    return oracle_mi(np.array(pasts), np.array(futures))


def oracle_multi(rows) -> float:
    rows = np.asarray(rows)
    total = -oracle_entropy(rows)
    for j in range(rows.shape[1]):
        total += oracle_entropy(rows[:, j:j + 1])
    return total


# -------------------------------------------------------------------- KSG
def _cheb(a, b) -> float:
    return float(np.max(np.abs(np.atleast_1d(a) - np.atleast_1d(b))))


def oracle_ksg_mi(x, y, k: int, algorithm: int = 1) -> float:
    """Term-by-term KSG MI by exhaustive scanning (uses the library digamma,
    which is validated independently against scipy)."""
    x = np.asarray(x, dtype=float).reshape(len(x), -1)
    y = np.asarray(y, dtype=float).reshape(len(y), -1)
    n = x.shape[0]
    z = np.hstack([x, y])
    total = 0.0
    for i in range(n):
        dists = sorted((_cheb(z[i], z[j]), j) for j in range(n) if j != i)
        if algorithm == 1:
            eps = dists[k - 1][0]
            nx = sum(1 for j in range(n) if j != i and _cheb(x[i], x[j]) < eps)
            ny = sum(1 for j in range(n) if j != i and _cheb(y[i], y[j]) < eps)
            total += digamma(k) - digamma(nx + 1) - digamma(ny + 1) + digamma(n)
        else:
            knn = [j for _, j in dists[:k]]
            rx = max(_cheb(x[i], x[j]) for j in knn)
            ry = max(_cheb(y[i], y[j]) for j in knn)
            nx = sum(1 for j in range(n) if j != i and _cheb(x[i], x[j]) <= rx)
            ny = sum(1 for j in range(n) if j != i and _cheb(y[i], y[j]) <= ry)
            total += digamma(k) - 1.0 / k - digamma(nx) - digamma(ny) + digamma(n)
    return total / n


def oracle_ksg_cmi(x, y, z, k: int, algorithm: int = 1) -> float:
    x = np.asarray(x, dtype=float).reshape(len(x), -1)
    y = np.asarray(y, dtype=float).reshape(len(y), -1)
    z = np.asarray(z, dtype=float).reshape(len(z), -1)
    n = x.shape[0]
    full = np.hstack([x, y, z])
    xz = np.hstack([x, z])
    yz = np.hstack([y, z])
    total = 0.0
    for i in range(n):
        dists = sorted((_cheb(full[i], full[j]), j) for j in range(n) if j != i)
        if algorithm == 1:
            eps = dists[k - 1][0]
            nz = sum(1 for j in range(n) if j != i and _cheb(z[i], z[j]) < eps)
            nxz = sum(1 for j in range(n) if j != i and _cheb(xz[i], xz[j]) < eps)
            nyz = sum(1 for j in range(n) if j != i and _cheb(yz[i], yz[j]) < eps)
            total += digamma(k) + digamma(nz + 1) - digamma(nxz + 1) - digamma(nyz + 1)
        else:
            knn = [j for _, j in dists[:k]]
            rx = max(_cheb(x[i], x[j]) for j in knn)
            ry = max(_cheb(y[i], y[j]) for j in knn)
            rz = max(_cheb(z[i], z[j]) for j in knn)
            nz = sum(1 for j in range(n) if j != i and _cheb(z[i], z[j]) <= rz)
            nxz = sum(1 for j in range(n) if j != i
                      and _cheb(x[i], x[j]) <= rx and _cheb(z[i], z[j]) <= rz)
            nyz = sum(1 for j in range(n) if j != i
                      and _cheb(y[i], y[j]) <= ry and _cheb(z[i], z[j]) <= rz)
            total += (digamma(k) - 2.0 / k + digamma(nz)
                      - digamma(nxz) + 1.0 / nxz - digamma(nyz) + 1.0 / nyz)
    return total / n


def oracle_kl_entropy(x, k: int) -> float:
    x = np.asarray(x, dtype=float).reshape(len(x), -1)
    n, d = x.shape
    total = 0.0
    for i in range(n):
        dists = sorted(_cheb(x[i], x[j]) for j in range(n) if j != i)
        total += -digamma(k) + digamma(n) + d * math.log(2.0 * dists[k - 1])
    return total / n


# ---------------------------------------------------------------- gaussian
def granger_half_log_ratio(src, dst, k=1, l=1, u=1) -> float:
    """Half the Granger log variance ratio from two OLS fits (with intercept)."""
    src = np.asarray(src, dtype=float)
    dst = np.asarray(dst, dtype=float)
    offset = max(k, (l - 1) + u)
    rows = range(offset, len(dst))
    target = np.array([dst[m] for m in rows])
    past = np.array([[dst[m - 1 - j] for j in range(k)] for m in rows])
    state = np.array([[src[m - u - j] for j in range(l)] for m in rows])
    ones = np.ones((len(target), 1))
    restricted = np.hstack([ones, past])
    full = np.hstack([ones, past, state])

    def rss(design):
        coef, *_ = np.linalg.lstsq(design, target, rcond=None)
        resid = target - design @ coef
        return float(resid @ resid)

    return 0.5 * math.log(rss(restricted) / rss(full))
