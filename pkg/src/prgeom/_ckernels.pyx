# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: cyclic Jacobi eigensolver and simple-cycle enumeration."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()


def jacobi_eigh(a_in, double tol=1e-12, int max_sweeps=100):
    """Cyclic-by-row Jacobi on a dense symmetric matrix.

    Returns ``(eigenvalues ascending, eigenvectors as columns, sweeps used)``.
    Stops when the off-diagonal Frobenius mass drops below ``tol * ||A||_F``.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=2] A = np.array(a_in, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = A.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] V = np.eye(n, dtype=np.float64)
    cdef double[:, ::1] a = A
    cdef double[:, ::1] v = V
    cdef Py_ssize_t p, q, k
    cdef double fro = 0.0, off, apq, theta, t, c, s, akp, akq, skip
    cdef int sweep = 0
    for p in range(n):
        for q in range(n):
            fro += a[p, q] * a[p, q]
    fro = sqrt(fro)
    skip = 1e-300 if fro == 0.0 else fro * 1e-18
    while True:
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += a[p, q] * a[p, q]
        if sqrt(off) <= tol * fro or sweep >= max_sweeps:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if fabs(apq) <= skip:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    akp = a[p, k]
                    akq = a[q, k]
                    a[p, k] = c * akp - s * akq
                    a[q, k] = s * akp + c * akq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    akp = v[k, p]
                    akq = v[k, q]
                    v[k, p] = c * akp - s * akq
                    v[k, q] = s * akp + c * akq
    w = np.diagonal(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order], sweep


def count_simple_cycles(adj_in, int m):
    """Labeled m-tuples of distinct vertices forming a cycle.

    Each cycle is walked from its smallest vertex in both directions; the
    directed count times ``m`` gives the labeled count.
    """
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] A = np.ascontiguousarray(adj_in, dtype=np.uint8)
    cdef Py_ssize_t n = A.shape[0]
    cdef unsigned char[:, ::1] a = A
    if m < 3 or n < m:
        return 0
    deg = A.sum(axis=1).astype(np.int64)
    indptr_np = np.zeros(n + 1, dtype=np.int64)
    indptr_np[1:] = np.cumsum(deg)
    nbrs_np = np.nonzero(A)[1].astype(np.int64)
    cdef long long[::1] indptr = indptr_np
    cdef long long[::1] nbrs = nbrs_np
    cdef cnp.ndarray[cnp.int64_t, ndim=1] path_np = np.zeros(m, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pos_np = np.zeros(m, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] used_np = np.zeros(n, dtype=np.uint8)
    cdef long long[::1] path = path_np
    cdef long long[::1] pos = pos_np
    cdef unsigned char[::1] used = used_np
    cdef long long total = 0
    cdef Py_ssize_t s, depth, u, w
    for s in range(n):
        path[0] = s
        pos[0] = indptr[s]
        used[s] = 1
        depth = 0
        while depth >= 0:
            u = path[depth]
            if pos[depth] >= indptr[u + 1]:
                used[u] = 0
                depth -= 1
                continue
            w = nbrs[pos[depth]]
            pos[depth] += 1
            if w <= s or used[w]:
                continue
            if depth + 1 == m - 1:
                if a[w, s]:
                    total += 1
                continue
            depth += 1
            path[depth] = w
            pos[depth] = indptr[w]
            used[w] = 1
        used[s] = 0
    return int(total) * m
