"""Pure-Python/numpy kernels.

Every function here has a twin with the identical signature in
``_ckernels.pyx``.  Results agree to rounding; within one backend they are
bit-for-bit reproducible.
"""
from __future__ import annotations

import math

import numpy as np

VISITED = 1
CONNECTED = 2
CANONICAL = 4


def perron_power(adj, shift, tol, max_iter):
    """Shifted power iteration from the all-ones direction.

    Returns ``(rho, v, iterations, residual_norm, converged)`` where ``rho``
    is the Rayleigh quotient of the final unit iterate ``v``.
    """
    a = np.asarray(adj, dtype=np.float64)
    n = a.shape[0]
    x = np.full(n, 1.0 / math.sqrt(n))
    rho = 0.0
    res = math.inf
    for it in range(1, max_iter + 1):
        y = a @ x
        rho = float(x @ y) / float(x @ x)
        r = y - rho * x
        res = math.sqrt(float(r @ r))
        if res <= tol:
            return rho, x, it, res, True
        z = y + shift * x
        x = z / math.sqrt(float(z @ z))
    return rho, x, max_iter, res, False


def lambda_min_power(adj, rho, perron_v, start, tol, max_iter):
    """Power iteration on ``rho*I - A`` restricted to the complement of the
    Perron direction.  Returns ``(lambda_min, iterations, residual, converged)``.
    """
    a = np.asarray(adj, dtype=np.float64)
    v = np.asarray(perron_v, dtype=np.float64)
    x = np.array(start, dtype=np.float64)
    x -= float(x @ v) * v
    nrm = math.sqrt(float(x @ x))
    if nrm == 0.0:
        raise ValueError("start vector is parallel to the Perron vector")
    x /= nrm
    mu = 0.0
    res = math.inf
    for it in range(1, max_iter + 1):
        y = rho * x - a @ x
        mu = float(x @ y)
        r = y - mu * x
        res = math.sqrt(float(r @ r))
        if res <= tol:
            return rho - mu, it, res, True
        y -= float(y @ v) * v
        x = y / math.sqrt(float(y @ y))
    return rho - mu, max_iter, res, False


def _color_sort(p, rows):
    order = []
    bounds = []
    color = 0
    q = p
    while q:
        color += 1
        avail = q
        while avail:
            low = avail & -avail
            u = low.bit_length() - 1
            avail &= ~rows[u] & ~low
            q &= ~low
            order.append(u)
            bounds.append(color)
    return order, bounds


def max_clique(rows, n):
    """Exact clique number by branch and bound with greedy-colouring pruning."""
    rows = [int(r) for r in rows]
    best = 0

    def expand(size, p):
        nonlocal best
        order, bounds = _color_sort(p, rows)
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best:
                return
            u = order[idx]
            sub = p & rows[u]
            if sub:
                expand(size + 1, sub)
            elif size + 1 > best:
                best = size + 1
            p &= ~(1 << u)

    if n:
        expand(0, (1 << n) - 1)
    return best


def is_connected_rows(rows, n):
    if n <= 1:
        return True
    full = (1 << n) - 1
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= rows[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def classify_patterns(n, positions, pairs):
    """Flag every upper-triangle bit pattern on ``n`` vertices.

    ``positions[p, k]`` is the bit index that pair ``k`` moves to under the
    ``p``-th vertex permutation; ``pairs[k] = (i, j)``.  Each pattern gets
    VISITED, plus CONNECTED if its graph is connected, plus CANONICAL if it
    is the smallest code in its isomorphism class.
    """
    e = len(pairs)
    size = 1 << e
    buf = bytearray(size)
    flags = np.frombuffer(buf, dtype=np.uint8)
    weights = np.left_shift(np.int64(1), np.asarray(positions, dtype=np.int64))
    x = 0
    while True:
        x = buf.find(0, x)
        if x < 0:
            break
        bits = [k for k in range(e) if x >> k & 1]
        if bits:
            orbit = weights[:, bits].sum(axis=1)
        else:
            orbit = np.zeros(1, dtype=np.int64)
        rows = [0] * n
        for k in bits:
            i, j = pairs[k]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        mark = VISITED | (CONNECTED if is_connected_rows(rows, n) else 0)
        flags[orbit] = mark
        flags[x] = mark | CANONICAL
        x += 1
    return flags
