"""Chevalley-Eilenberg cochain complex and its cohomology.

Degree-q cochains are alternating maps on q-tuples of basis elements,
coordinatized on increasing index tuples in lexicographic order with
the module index fastest: coordinate rank(tuple)*m + b.  The coboundary
uses the sign convention (1-indexed positions s < t)

    (delta f)(g_1, ..., g_{q+1}) =
        sum_{s<t} (-1)^(s+t-1) f([g_s, g_t], ..., no g_s, no g_t, ...)
      + sum_s    (-1)^s        g_s . f(..., no g_s, ...)

so that in degree 0, (delta v)(g) = -g.v.
"""

from __future__ import annotations

import itertools

import numpy as np

from .linalg import (
    nullspace,
    quotient_dim,
    quotient_representatives,
    rank,
)
from .liealg import RestrictedLieAlgebra
from .gmod import RestrictedModule


def cochain_tuples(n: int, q: int) -> list[tuple]:
    return list(itertools.combinations(range(n), q))


def delta_cl_matrix(L: RestrictedLieAlgebra, M: RestrictedModule, q: int) -> np.ndarray:
    """Matrix of delta: C^q -> C^(q+1) in the coordinate bases."""
    if q < 0:
        raise ValueError("negative cochain degree")
    n, p, m = L.n, L.p, M.m
    src = cochain_tuples(n, q)
    dst = cochain_tuples(n, q + 1)
    src_rank = {S: r for r, S in enumerate(src)}
    D = np.zeros((len(dst) * m, len(src) * m), dtype=np.int64)
    eye = np.eye(m, dtype=np.int64)
    for rT, T in enumerate(dst):
        row0 = rT * m
        for s in range(1, q + 2):
            j = T[s - 1]
            rest = T[: s - 1] + T[s:]
            col0 = src_rank[rest] * m
            sgn = -1 if s % 2 else 1
            D[row0 : row0 + m, col0 : col0 + m] = (
                D[row0 : row0 + m, col0 : col0 + m] + sgn * M.rho[j]
            ) % p
        for s in range(1, q + 2):
            for t in range(s + 1, q + 2):
                rest = tuple(x for k, x in enumerate(T) if k not in (s - 1, t - 1))
                base = -1 if (s + t - 1) % 2 else 1
                for l in range(n):
                    coeff = int(L.c[T[s - 1], T[t - 1], l])
                    if coeff == 0 or l in rest:
                        continue
                    pos = sum(1 for x in rest if x < l)
                    S = tuple(sorted(rest + (l,)))
                    col0 = src_rank[S] * m
                    val = (base * coeff * (-1 if pos % 2 else 1)) % p
                    D[row0 : row0 + m, col0 : col0 + m] = (
                        D[row0 : row0 + m, col0 : col0 + m] + val * eye
                    ) % p
    return D % p


def classical_cohomology(L: RestrictedLieAlgebra, M: RestrictedModule, q: int):
    """Dimension and echelonized representative cocycles of H^q."""
    if q < 0:
        raise ValueError("negative cochain degree")
    p = L.p
    outgoing = delta_cl_matrix(L, M, q)
    incoming = delta_cl_matrix(L, M, q - 1) if q >= 1 else None
    dim = quotient_dim(incoming, outgoing, p)
    cycles = nullspace(outgoing, p)
    boundary_rows = incoming.T if incoming is not None else np.zeros((0, outgoing.shape[1]), dtype=np.int64)
    reps = quotient_representatives(boundary_rows, cycles, p)
    if reps.shape[0] != dim:
        raise AssertionError("representative count disagrees with quotient dimension")
    return dim, reps


def class_coordinates(reps: np.ndarray, boundary_matrix, z: np.ndarray, p: int):
    """Coordinates of the class of cocycle z in the representative basis
    reps (rows), modulo the column space of boundary_matrix.  None when z
    is not in the span (i.e. not a cocycle class of this space)."""
    from .linalg import solve

    d = reps.shape[0]
    if boundary_matrix is None or boundary_matrix.size == 0:
        A = reps.T
    else:
        A = np.hstack([reps.T, boundary_matrix]) if d else boundary_matrix
    if A.size == 0:
        return np.zeros(0, dtype=np.int64) if not z.any() else None
    x = solve(A % p, z % p, p)
    if x is None:
        return None
    return x[:d] % p


def cocycle_dim(L, M, q) -> int:
    """dim Z^q = dim ker of the outgoing coboundary."""
    D = delta_cl_matrix(L, M, q)
    return D.shape[1] - rank(D, L.p)
