"""Pure numpy versions of the compiled kernels, used when `_ckernels` is not built."""
from __future__ import annotations

import numpy as np


def _round_robin(n: int):
    """Circle-method schedule: n-1 rounds (n even) of disjoint index pairs."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    size = len(players)
    for _ in range(size - 1):
        pairs = [(players[i], players[size - 1 - i]) for i in range(size // 2)]
        pairs = [(p, q) if p < q else (q, p) for p, q in pairs if p >= 0 and q >= 0]
        yield np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])
        players = [players[0], players[-1]] + players[1:-1]


def jacobi_eigh(a_in, tol: float = 1e-12, max_sweeps: int = 100):
    """Parallel-ordered Jacobi: each round applies n/2 disjoint rotations at once.

    Same stopping rule and return convention as the compiled cyclic solver.
    """
    A = np.array(a_in, dtype=np.float64, copy=True)
    n = A.shape[0]
    V = np.eye(n)
    fro = float(np.sqrt((A * A).sum()))
    skip = 1e-300 if fro == 0.0 else fro * 1e-18
    schedule = list(_round_robin(n)) if n > 1 else []
    sweep = 0
    while True:
        off = np.sqrt(max((A * A).sum() - (np.diagonal(A) ** 2).sum(), 0.0))
        if off <= tol * fro or sweep >= max_sweeps:
            break
        sweep += 1
        for P, Q in schedule:
            apq = A[P, Q]
            active = np.abs(apq) > skip
            if not active.any():
                continue
            P, Q, apq = P[active], Q[active], apq[active]
            theta = (A[Q, Q] - A[P, P]) / (2.0 * apq)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            Ap, Aq = A[:, P].copy(), A[:, Q].copy()
            A[:, P] = Ap * c - Aq * s
            A[:, Q] = Ap * s + Aq * c
            Ap, Aq = A[P, :].copy(), A[Q, :].copy()
            A[P, :] = c[:, None] * Ap - s[:, None] * Aq
            A[Q, :] = s[:, None] * Ap + c[:, None] * Aq
            A[P, Q] = 0.0
            A[Q, P] = 0.0
            Vp, Vq = V[:, P].copy(), V[:, Q].copy()
            V[:, P] = Vp * c - Vq * s
            V[:, Q] = Vp * s + Vq * c
    w = np.diagonal(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order], sweep


def count_simple_cycles(adj_in, m: int) -> int:
    adj = np.asarray(adj_in, dtype=bool)
    n = adj.shape[0]
    if m < 3 or n < m:
        return 0
    rows = [int("".join("1" if b else "0" for b in adj[v][::-1]) or "0", 2) for v in range(n)]
    total = 0

    def extend(start: int, u: int, used: int, length: int) -> None:
        nonlocal total
        cand = rows[u] & ~used & ~((2 << start) - 1)
        if length == m - 1:
            total += bin(cand & rows[start]).count("1")
            return
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            extend(start, w, used | low, length + 1)
            cand ^= low

    for s in range(n):
        extend(s, s, 1 << s, 1)
    return total * m
