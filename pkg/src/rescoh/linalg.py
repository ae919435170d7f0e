"""Dense exact linear algebra over GF(p).

Matrices are numpy int64 arrays with entries reduced mod p; a matrix
maps coordinate column vectors, so composition is the ordinary ``@``
followed by a reduction.  Elimination is deterministic (leftmost pivot
column, first nonzero row) so every basis this module returns is
reproducible across runs and platforms.
"""

from __future__ import annotations

import hashlib

import numpy as np


class NotAComplex(Exception):
    """Composite of consecutive differentials is nonzero.

    Raised by quotient_dim; hitting this means a coboundary matrix is
    wrong upstream, so it is deliberately loud.
    """


def as_fp(a, p: int) -> np.ndarray:
    """Coerce to an int64 array with entries in [0, p)."""
    return np.asarray(a, dtype=np.int64) % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(a, p: int):
    """Reduced row echelon form over GF(p).

    Args:
        a: matrix-like, any shape including zero rows or columns.
        p: prime modulus.

    Returns:
        (R, rank, pivots): the reduced form, its rank and the strictly
        increasing list of pivot columns.
    """
    R = as_fp(a, p).copy()
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        other = np.nonzero(R[:, c])[0]
        other = other[other != r]
        if other.size:
            R[other] = (R[other] - np.outer(R[other, c], R[r])) % p
        pivots.append(c)
        r += 1
    return R, len(pivots), pivots


def rank(a, p: int) -> int:
    """Rank over GF(p) by forward elimination only.

    Skips the back-substitution that rref does; on the large
    resolution differentials that halves the work and the echelon
    form is not needed, only the pivot count.
    """
    R = as_fp(a, p).copy()
    if R.ndim != 2:
        raise ValueError("rank expects a 2-d array")
    rows, cols = R.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r, c:] = (R[r, c:] * inv) % p
        below = np.nonzero(R[r + 1 :, c])[0] + r + 1
        if below.size:
            R[np.ix_(below, range(c, cols))] = (
                R[np.ix_(below, range(c, cols))] - np.outer(R[below, c], R[r, c:])
            ) % p
        r += 1
    return r


def nullspace(a, p: int) -> np.ndarray:
    """Basis of {x : a @ x = 0}, one vector per row, in echelon form.

    The basis vector attached to free column f has a 1 in position f and
    zeros in every other free column, which makes the row set reduced
    echelon after sorting by f.
    """
    a = as_fp(a, p)
    rows, cols = a.shape
    R, rk, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(len(free), cols)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for r, c in enumerate(pivots):
            basis[row, c] = (-int(R[r, f])) % p
    return basis


def row_space(a, p: int) -> np.ndarray:
    """Nonzero rows of the reduced echelon form."""
    R, rk, _ = rref(a, p)
    return R[:rk]


def solve(a, b, p: int):
    """One exact solution of a @ x = b, or None if inconsistent.

    The particular solution has zeros in all free coordinates (the
    deterministic-pivot choice).
    """
    a = as_fp(a, p)
    b = as_fp(b, p).reshape(-1)
    if a.shape[0] != b.shape[0]:
        raise ValueError("incompatible shapes")
    aug = np.hstack([a, b.reshape(-1, 1)])
    R, rk, pivots = rref(aug, p)
    if pivots and pivots[-1] == a.shape[1]:
        return None
    x = np.zeros(a.shape[1], dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, -1]
    return x


def matmul_mod(a, b, p: int) -> np.ndarray:
    """(a @ b) % p, routed through float64 BLAS when exact.

    Entries lie in [0, p), so every dot product is bounded by
    (p-1)^2 * inner; below 2**53 the float64 product is exact and an
    order of magnitude faster than int64 on big matrices.
    """
    a = as_fp(a, p)
    b = as_fp(b, p)
    inner = a.shape[1]
    if inner and (p - 1) * (p - 1) * inner < 2**53:
        prod = np.matmul(a.astype(np.float64), b.astype(np.float64))
        return np.mod(prod, p).astype(np.int64)
    return (a @ b) % p


def mat_pow_mod(m, k: int, p: int) -> np.ndarray:
    """m**k with a reduction mod p after every product (no overflow)."""
    m = as_fp(m, p)
    result = identity(m.shape[0])
    base = m.copy()
    while k:
        if k & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        k >>= 1
    return result


def quotient_dim(incoming, outgoing, p: int) -> int:
    """dim ker(outgoing) - rank(incoming), after checking the complex.

    ``incoming`` maps into the middle space (its image is the boundary
    subspace) and ``outgoing`` maps out of it.  ``None`` stands for a
    zero map on either side.

    Raises:
        NotAComplex: if outgoing @ incoming != 0.
    """
    if outgoing is None and incoming is None:
        raise ValueError("need at least one map to fix the middle dimension")
    if outgoing is not None:
        outgoing = as_fp(outgoing, p)
        mid = outgoing.shape[1]
    else:
        mid = as_fp(incoming, p).shape[0]
    if incoming is not None:
        incoming = as_fp(incoming, p)
        if incoming.shape[0] != mid:
            raise ValueError("incoming/outgoing dimensions disagree")
    if (
        outgoing is not None
        and incoming is not None
        and outgoing.size
        and incoming.size
        and matmul_mod(outgoing, incoming, p).any()
    ):
        raise NotAComplex("outgoing @ incoming is nonzero")
    kdim = mid - rank(outgoing, p) if outgoing is not None else mid
    bdim = rank(incoming, p) if incoming is not None else 0
    return kdim - bdim


class Subspace:
    """Row span of a matrix, stored in reduced echelon form."""

    __slots__ = ("ambient_dim", "basis", "p")

    def __init__(self, vectors, ambient_dim: int, p: int):
        vectors = as_fp(vectors, p)
        if vectors.size == 0:
            vectors = zeros(0, ambient_dim)
        if vectors.ndim == 1:
            vectors = vectors.reshape(1, -1)
        if vectors.shape[1] != ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        self.ambient_dim = ambient_dim
        self.p = p
        self.basis = row_space(vectors, p)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, v) -> bool:
        v = as_fp(v, self.p)
        if self.dim == 0:
            return not v.any()
        stacked = np.vstack([self.basis, v.reshape(1, -1)])
        return rank(stacked, self.p) == self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool((self.basis == other.basis).all())
        )

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"


def quotient_representatives(boundary_rows, cycle_rows, p: int) -> np.ndarray:
    """Cycle vectors spanning cycles/boundaries, canonically reduced.

    Greedily keeps the cycle basis rows that grow the rank over the
    boundary span, reduces each survivor by the boundary pivots, then
    echelonizes the survivors for a reproducible answer.
    """
    boundary_rows = as_fp(boundary_rows, p)
    cycle_rows = as_fp(cycle_rows, p)
    if cycle_rows.size == 0:
        return zeros(0, boundary_rows.shape[1] if boundary_rows.size else 0)
    B = row_space(boundary_rows, p) if boundary_rows.size else zeros(0, cycle_rows.shape[1])
    # Incremental elimination: pivot column -> normalized row of the running span.
    echelon: dict[int, np.ndarray] = {}
    for row in B:
        lead = int(np.nonzero(row)[0][0])
        echelon[lead] = row
    kept = []
    for v in cycle_rows:
        w = v.copy()
        for c in sorted(echelon):
            if w[c]:
                w = (w - w[c] * echelon[c]) % p
        nz = np.nonzero(w)[0]
        if nz.size:
            kept.append(v)
            lead = int(nz[0])
            echelon[lead] = (w * pow(int(w[lead]), -1, p)) % p
    if not kept:
        return zeros(0, cycle_rows.shape[1])
    kept_m = np.array(kept, dtype=np.int64)
    # Reduce by boundary pivots so representatives do not carry boundary components.
    Bred, brk, bpiv = rref(B, p) if B.size else (B, 0, [])
    for r_i, c in enumerate(bpiv):
        kept_m = (kept_m - np.outer(kept_m[:, c], Bred[r_i])) % p
    return row_space(kept_m, p)


def sample_vectors(p: int, dim: int, count: int, tag: str) -> np.ndarray:
    """Deterministic pseudo-random vectors over GF(p).

    Seeded from (p, dim, count, tag) so failures reproduce exactly.
    """
    raw = f"{p}:{dim}:{count}:{tag}".encode()
    seed = int.from_bytes(hashlib.sha256(raw).digest()[:8], "big")
    rng = np.random.default_rng(seed)
    return rng.integers(0, p, size=(count, dim), dtype=np.int64)
