# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; signatures mirror ``_pykernels``."""
import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt, INFINITY
from libc.stdint cimport uint64_t, int64_t, uint8_t

cnp.import_array()

cdef enum:
    VISITED = 1
    CONNECTED = 2
    CANONICAL = 4

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef void _to_csr(const uint8_t[:, ::1] a, Py_ssize_t n,
                  Py_ssize_t[::1] indptr, Py_ssize_t[::1] indices):
    cdef Py_ssize_t i, j, k = 0
    for i in range(n):
        indptr[i] = k
        for j in range(n):
            if a[i, j]:
                indices[k] = j
                k += 1
    indptr[n] = k


cdef inline void _matvec(Py_ssize_t n, Py_ssize_t[::1] indptr, Py_ssize_t[::1] indices,
                         double[::1] x, double[::1] y) nogil:
    cdef Py_ssize_t i, k
    cdef double acc
    for i in range(n):
        acc = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            acc += x[indices[k]]
        y[i] = acc


cdef inline double _dot(Py_ssize_t n, const double[::1] a, const double[::1] b) nogil:
    cdef Py_ssize_t i
    cdef double acc = 0.0
    for i in range(n):
        acc += a[i] * b[i]
    return acc


def perron_power(adj, double shift, double tol, Py_ssize_t max_iter):
    cdef const uint8_t[:, ::1] a = np.ascontiguousarray(adj, dtype=np.uint8)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t nnz = int(np.count_nonzero(adj))
    cdef Py_ssize_t[::1] indptr = np.empty(n + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] indices = np.empty(max(nnz, 1), dtype=np.intp)
    _to_csr(a, n, indptr, indices)

    xa = np.full(n, 1.0 / sqrt(<double>n))
    cdef double[::1] x = xa
    cdef double[::1] y = np.empty(n)
    cdef double rho = 0.0, res = INFINITY, xx, acc, nrm
    cdef Py_ssize_t it, i
    cdef bint converged = False
    with nogil:
        for it in range(1, max_iter + 1):
            _matvec(n, indptr, indices, x, y)
            xx = _dot(n, x, x)
            rho = _dot(n, x, y) / xx
            acc = 0.0
            for i in range(n):
                acc += (y[i] - rho * x[i]) * (y[i] - rho * x[i])
            res = sqrt(acc)
            if res <= tol:
                converged = True
                break
            for i in range(n):
                y[i] += shift * x[i]
            nrm = sqrt(_dot(n, y, y))
            for i in range(n):
                x[i] = y[i] / nrm
        if not converged:
            it = max_iter
    return rho, xa, it, res, converged


def lambda_min_power(adj, double rho, perron_v, start, double tol, Py_ssize_t max_iter):
    cdef const uint8_t[:, ::1] a = np.ascontiguousarray(adj, dtype=np.uint8)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t nnz = int(np.count_nonzero(adj))
    cdef Py_ssize_t[::1] indptr = np.empty(n + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] indices = np.empty(max(nnz, 1), dtype=np.intp)
    _to_csr(a, n, indptr, indices)

    cdef const double[::1] v = np.ascontiguousarray(perron_v, dtype=np.float64)
    cdef double[::1] x = np.array(start, dtype=np.float64)
    cdef double[::1] ax = np.empty(n)
    cdef double[::1] y = np.empty(n)
    cdef double mu = 0.0, res = INFINITY, c, nrm, acc
    cdef Py_ssize_t it, i
    cdef bint converged = False

    c = _dot(n, x, v)
    for i in range(n):
        x[i] -= c * v[i]
    nrm = sqrt(_dot(n, x, x))
    if nrm == 0.0:
        raise ValueError("start vector is parallel to the Perron vector")
    for i in range(n):
        x[i] /= nrm

    with nogil:
        for it in range(1, max_iter + 1):
            _matvec(n, indptr, indices, x, ax)
            for i in range(n):
                y[i] = rho * x[i] - ax[i]
            mu = _dot(n, x, y)
            acc = 0.0
            for i in range(n):
                acc += (y[i] - mu * x[i]) * (y[i] - mu * x[i])
            res = sqrt(acc)
            if res <= tol:
                converged = True
                break
            c = _dot(n, y, v)
            for i in range(n):
                y[i] -= c * v[i]
            nrm = sqrt(_dot(n, y, y))
            for i in range(n):
                x[i] = y[i] / nrm
        if not converged:
            it = max_iter
    return rho - mu, it, res, converged


cdef inline int _lowbit(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef int _expand(const uint64_t* rows, int size, uint64_t p, int best,
                 int* order, int* bounds) nogil:
    # order/bounds point at a scratch block of 64 ints reserved for this depth
    cdef int count = 0, color = 0, idx, u
    cdef uint64_t q = p, avail, low, sub
    while q:
        color += 1
        avail = q
        while avail:
            u = _lowbit(avail)
            low = (<uint64_t>1) << u
            avail &= ~rows[u] & ~low
            q &= ~low
            order[count] = u
            bounds[count] = color
            count += 1
    for idx in range(count - 1, -1, -1):
        if size + bounds[idx] <= best:
            return best
        u = order[idx]
        sub = p & rows[u]
        if sub:
            best = _expand(rows, size + 1, sub, best, order + 64, bounds + 64)
        elif size + 1 > best:
            best = size + 1
        p &= ~((<uint64_t>1) << u)
    return best


def max_clique(rows, int n):
    if n > 64:
        raise ValueError("compiled clique search supports n <= 64")
    if n == 0:
        return 0
    cdef uint64_t[::1] r = np.array([int(x) for x in rows], dtype=np.uint64)
    cdef int[::1] order = np.empty(64 * 65, dtype=np.intc)
    cdef int[::1] bounds = np.empty(64 * 65, dtype=np.intc)
    cdef uint64_t full = (~(<uint64_t>0)) if n == 64 else (((<uint64_t>1) << n) - 1)
    cdef int best
    with nogil:
        best = _expand(&r[0], 0, full, 0, &order[0], &bounds[0])
    return best


cdef bint _connected(const uint64_t* rows, int n) nogil:
    cdef uint64_t full, seen = 1, frontier = 1, nxt, f
    if n <= 1:
        return True
    full = ((<uint64_t>1) << n) - 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            nxt |= rows[_lowbit(f)]
            f &= f - 1
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def classify_patterns(int n, positions, pairs):
    w_arr = np.left_shift(np.uint64(1), np.ascontiguousarray(positions, dtype=np.uint64))
    cdef const uint64_t[:, ::1] w = w_arr
    cdef Py_ssize_t nperm = w.shape[0]
    cdef int e = len(pairs)
    cdef const int64_t[:, ::1] pr = np.ascontiguousarray(
        np.asarray(pairs, dtype=np.int64).reshape(e, 2))
    flags_arr = np.zeros(1 << e, dtype=np.uint8)
    cdef uint8_t[::1] flags = flags_arr
    cdef uint64_t size = (<uint64_t>1) << e
    cdef uint64_t x, code
    cdef uint64_t rows[64]
    cdef int bits[64]
    cdef Py_ssize_t p
    cdef int k, i, j, nb
    cdef uint8_t mark
    with nogil:
        for x in range(size):
            if flags[x]:
                continue
            for i in range(n):
                rows[i] = 0
            nb = 0
            for k in range(e):
                if (x >> k) & 1:
                    bits[nb] = k
                    nb += 1
                    i = <int>pr[k, 0]
                    j = <int>pr[k, 1]
                    rows[i] |= (<uint64_t>1) << j
                    rows[j] |= (<uint64_t>1) << i
            mark = VISITED
            if _connected(rows, n):
                mark |= CONNECTED
            for p in range(nperm):
                code = 0
                for k in range(nb):
                    code |= w[p, bits[k]]
                flags[code] = mark
            flags[x] = mark | CANONICAL
    return flags_arr
