"""Independent reference implementations used only by the tests."""
from __future__ import annotations

import itertools
import math

import numpy as np


def jacobi_eigh(a, tol=1e-14, max_sweeps=100):
    """Cyclic Jacobi rotations for a symmetric matrix.

    Returns ``(eigenvalues ascending, eigenvectors as columns)``.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.triu(a, 1) ** 2)))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k, p], a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p, k], a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp, vkq = v[k, p], v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    w = np.diag(a).copy()
    order = np.argsort(w)
    return w[order], v[:, order]


def oracle_perron(adj):
    """(rho, positive unit Perron vector) from the Jacobi solver."""
    w, v = jacobi_eigh(adj)
    x = v[:, -1]
    if x.sum() < 0:
        x = -x
    return float(w[-1]), x / np.linalg.norm(x)


def edge_set(adj):
    n = len(adj)
    return frozenset((i, j) for i in range(n) for j in range(i + 1, n) if adj[i][j])


def brute_canonical(n, edges):
    """Lexicographically smallest sorted edge tuple over all relabelings."""
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


def brute_connected(n, edges):
    adj = {i: set() for i in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == n


def brute_connected_classes(n):
    """Number of isomorphism classes of connected graphs on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    classes = set()
    for mask in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        if brute_connected(n, edges):
            classes.add(brute_canonical(n, edges))
    return len(classes)


def brute_clique_number(n, edges):
    adj = {(u, v) for u, v in edges} | {(v, u) for u, v in edges}
    best = 1 if n else 0
    for size in range(2, n + 1):
        found = any(
            all((a, b) in adj for a, b in itertools.combinations(c, 2))
            for c in itertools.combinations(range(n), size)
        )
        if not found:
            break
        best = size
    return best


def graph6_hand_encode(n, edges):
    """graph6 straight from the format definition (n <= 62)."""
    es = {tuple(sorted(e)) for e in edges}
    bits = [1 if (i, j) in es else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = chr(n + 63)
    for k in range(0, len(bits), 6):
        out += chr(int("".join(map(str, bits[k:k + 6])), 2) + 63)
    return out
