"""Restricted cochain complex in degrees 0..3.

Degree 2 cochains are pairs (phi, omega): phi an alternating 2-form
with values in M, omega determined by its basis values through the
*-property relative to phi.  Degree 3 cochains are pairs (alpha, beta):
alpha an alternating 3-form, beta linear in the first slot and extended
in the second through the **-property relative to alpha.  Coordinates:
phi/alpha slots on increasing tuples first (lex order), then the free
omega slots (basis order) or beta slots (ordered pairs, row-major),
module index fastest throughout.

The *-correction for omega(g+h) sums over all length-p sequences
(g_1 = g, g_2 = h, rest free in {g, h}), weighting each by the inverse
of the number of g's; the **-correction additionally splits the trailing
action positions into an acting part and a part bracketed onto the first
argument.  Both correction formulas are pinned down by the
delta2.delta1 = 0 matrix identity and by the closure tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .field import binom_mod, inv_mod
from .linalg import (
    mat_pow_mod,
    nullspace,
    quotient_dim,
    quotient_representatives,
    rank,
)
from .liealg import RestrictedLieAlgebra, UnsupportedPrime
from .gmod import RestrictedModule, invariants
from .classical import class_coordinates, classical_cohomology, delta_cl_matrix

STAR_P_BOUND = 7


@dataclass
class Cochain2:
    """phi: (n, n, m) antisymmetric basis values; omega_basis: (n, m)."""

    phi: np.ndarray
    omega_basis: np.ndarray


@dataclass
class Cochain3:
    """alpha: (n, n, n, m) alternating basis values; beta_basis: (n, n, m)."""

    alpha: np.ndarray
    beta_basis: np.ndarray


def pair_tuples(n: int) -> list[tuple]:
    return list(itertools.combinations(range(n), 2))


def triple_tuples(n: int) -> list[tuple]:
    return list(itertools.combinations(range(n), 3))


def pair_vec_to_tensor(L, M, v: np.ndarray) -> np.ndarray:
    n, m, p = L.n, M.m, L.p
    phi = np.zeros((n, n, m), dtype=np.int64)
    for r, (i, j) in enumerate(pair_tuples(n)):
        val = v[r * m : (r + 1) * m] % p
        phi[i, j] = val
        phi[j, i] = (-val) % p
    return phi


def tensor_to_pair_vec(L, M, phi: np.ndarray) -> np.ndarray:
    m = M.m
    ps = pair_tuples(L.n)
    out = np.zeros(len(ps) * m, dtype=np.int64)
    for r, (i, j) in enumerate(ps):
        out[r * m : (r + 1) * m] = phi[i, j] % L.p
    return out


def triple_vec_to_tensor(L, M, v: np.ndarray) -> np.ndarray:
    n, m, p = L.n, M.m, L.p
    alpha = np.zeros((n, n, n, m), dtype=np.int64)
    for r, (i, j, k) in enumerate(triple_tuples(n)):
        val = v[r * m : (r + 1) * m] % p
        for perm, sgn in (
            ((i, j, k), 1),
            ((j, k, i), 1),
            ((k, i, j), 1),
            ((j, i, k), -1),
            ((i, k, j), -1),
            ((k, j, i), -1),
        ):
            alpha[perm] = (sgn * val) % p
    return alpha


def c2_from_vec(L, M, v: np.ndarray) -> Cochain2:
    n, m = L.n, M.m
    nphi = len(pair_tuples(n)) * m
    return Cochain2(
        phi=pair_vec_to_tensor(L, M, v[:nphi]),
        omega_basis=(v[nphi:].reshape(n, m) % L.p),
    )


def c2_to_vec(L, M, c2: Cochain2) -> np.ndarray:
    return np.concatenate([tensor_to_pair_vec(L, M, c2.phi), c2.omega_basis.reshape(-1) % L.p])


def c3_from_vec(L, M, v: np.ndarray) -> Cochain3:
    n, m = L.n, M.m
    nalpha = len(triple_tuples(n)) * m
    return Cochain3(
        alpha=triple_vec_to_tensor(L, M, v[:nalpha]),
        beta_basis=(v[nalpha:].reshape(n, n, m) % L.p),
    )


def c3_to_vec(L, M, c3: Cochain3) -> np.ndarray:
    m = M.m
    ts = triple_tuples(L.n)
    out = np.zeros(len(ts) * m, dtype=np.int64)
    for r, (i, j, k) in enumerate(ts):
        out[r * m : (r + 1) * m] = c3.alpha[i, j, k] % L.p
    return np.concatenate([out, c3.beta_basis.reshape(-1) % L.p])


def _phi_eval(phi: np.ndarray, u, v, p: int) -> np.ndarray:
    return np.einsum("i,j,ijb->b", u % p, v % p, phi) % p


def _alpha_eval(alpha: np.ndarray, u, v, w, p: int) -> np.ndarray:
    return np.einsum("i,j,k,ijkb->b", u % p, v % p, w % p, alpha) % p


def _guard_prime(L) -> None:
    if not L.is_abelian and L.p > STAR_P_BOUND:
        raise UnsupportedPrime(
            f"sequence enumeration is 2^(p-2); p={L.p} exceeds bound {STAR_P_BOUND} for nonabelian algebras"
        )


def star_correction(L, M, phi: np.ndarray, a, b) -> np.ndarray:
    """The *-property correction for omega(a + b), with g_1 = a, g_2 = b."""
    p, m = L.p, M.m
    a = L._check_vec(a)
    b = L._check_vec(b)
    if L.is_abelian:
        # every bracket of length >= 2 dies and the actions commute
        base = _phi_eval(phi, a, b, p)
        if not base.any():
            return base
        if p == 2:
            return base
        ra, rb = M.matrix_of(a), M.matrix_of(b)
        sgn = (-1) ** (p - 2)
        total = np.zeros(m, dtype=np.int64)
        for ca in range(p - 1):
            w = (binom_mod(p - 2, ca, p) * inv_mod(1 + ca, p)) % p
            if w == 0:
                continue
            mat = (mat_pow_mod(ra, ca, p) @ mat_pow_mod(rb, p - 2 - ca, p)) % p
            total = (total + w * (mat @ base)) % p
        return (sgn * total) % p
    _guard_prime(L)
    ra, rb = M.matrix_of(a), M.matrix_of(b)
    total = np.zeros(m, dtype=np.int64)
    for tail in itertools.product((0, 1), repeat=p - 2):
        vecs = [a, b] + [a if t == 0 else b for t in tail]
        mats = [ra, rb] + [ra if t == 0 else rb for t in tail]
        weight = inv_mod(1 + tail.count(0), p)
        prefixes = [vecs[0]]
        for idx in range(1, p - 1):
            prefixes.append(L.bracket(prefixes[-1], vecs[idx]))
        acting = np.eye(m, dtype=np.int64)
        term = np.zeros(m, dtype=np.int64)
        for k in range(p - 1):
            val = _phi_eval(phi, prefixes[p - k - 2], vecs[p - k - 1], p)
            val = (acting @ val) % p
            term = (term + (-1) ** k * val) % p
            if k < p - 2:
                acting = (acting @ mats[p - k - 1]) % p
        total = (total + weight * term) % p
    return total % p


def star_star_correction(L, M, alpha: np.ndarray, g, h1, h2) -> np.ndarray:
    """The **-property correction for beta(g, h1 + h2).

    For each sequence (l_1 = h1, l_2 = h2, rest free) and each j, the
    last j positions split into an acting set A and a set B bracketed
    onto g; both the action product and the bracket tail run through
    their positions in descending order.
    """
    p, m = L.p, M.m
    g = L._check_vec(g)
    h1 = L._check_vec(h1)
    h2 = L._check_vec(h2)
    if L.is_abelian:
        base = _alpha_eval(alpha, g, h1, h2, p)
        if not base.any():
            return base
        if p == 2:
            return base
        r1, r2 = M.matrix_of(h1), M.matrix_of(h2)
        sgn = (-1) ** (p - 2)
        total = np.zeros(m, dtype=np.int64)
        for ca in range(p - 1):
            w = (binom_mod(p - 2, ca, p) * inv_mod(1 + ca, p)) % p
            if w == 0:
                continue
            mat = (mat_pow_mod(r1, ca, p) @ mat_pow_mod(r2, p - 2 - ca, p)) % p
            total = (total + w * (mat @ base)) % p
        return (sgn * total) % p
    _guard_prime(L)
    r1, r2 = M.matrix_of(h1), M.matrix_of(h2)
    total = np.zeros(m, dtype=np.int64)
    for tail in itertools.product((0, 1), repeat=p - 2):
        vecs = [h1, h2] + [h1 if t == 0 else h2 for t in tail]
        mats = [r1, r2] + [r1 if t == 0 else r2 for t in tail]
        weight = inv_mod(1 + tail.count(0), p)
        prefixes = [vecs[0]]
        for idx in range(1, p - 1):
            prefixes.append(L.bracket(prefixes[-1], vecs[idx]))
        for j in range(p - 1):
            sgn = (-1) ** j
            positions = list(range(p - j, p))
            mid = prefixes[p - j - 2]
            last = vecs[p - j - 1]
            for split in range(1 << j):
                u = g
                for t in reversed(range(j)):
                    if not (split >> t) & 1:
                        u = L.bracket(u, vecs[positions[t]])
                val = _alpha_eval(alpha, u, mid, last, p)
                for t in range(j):
                    if (split >> t) & 1:
                        val = (mats[positions[t]] @ val) % p
                total = (total + weight * sgn * val) % p
    return total % p


def _peel_index(L, x, order: str) -> int:
    nz = np.nonzero(x)[0]
    return int(nz[0] if order == "asc" else nz[-1])


def eval_omega(L, M, c2: Cochain2, g, order: str = "asc") -> np.ndarray:
    """Value of omega at an arbitrary point, by the *-property extension."""
    p = L.p
    g = L._check_vec(g)
    if not g.any():
        return np.zeros(M.m, dtype=np.int64)
    i = _peel_index(L, g, order)
    lam = int(g[i])
    base = (pow(lam, p, p) * c2.omega_basis[i]) % p
    rest = g.copy()
    rest[i] = 0
    if not rest.any():
        return base
    a = np.zeros(L.n, dtype=np.int64)
    a[i] = lam
    tail = eval_omega(L, M, c2, rest, order)
    corr = star_correction(L, M, c2.phi, a, rest)
    return (base + tail + corr) % p


def eval_beta(L, M, c3: Cochain3, g, h, order: str = "asc") -> np.ndarray:
    """Value of beta at an arbitrary pair: linear in g, **-extension in h."""
    p = L.p
    g = L._check_vec(g)
    h = L._check_vec(h)
    if not h.any() or not g.any():
        return np.zeros(M.m, dtype=np.int64)
    i = _peel_index(L, h, order)
    lam = int(h[i])
    base = (pow(lam, p, p) * np.einsum("t,tb->b", g, c3.beta_basis[:, i, :])) % p
    rest = h.copy()
    rest[i] = 0
    if not rest.any():
        return base
    a = np.zeros(L.n, dtype=np.int64)
    a[i] = lam
    tail = eval_beta(L, M, c3, g, rest, order)
    corr = star_star_correction(L, M, c3.alpha, g, a, rest)
    return (base + tail - corr) % p


def psi_tilde(L, M, psi: np.ndarray, g) -> np.ndarray:
    """Direct formula psi(g^[p]) - g^(p-1).psi(g) for a linear psi given
    by its basis values (n, m)."""
    p = L.p
    g = L._check_vec(g)
    first = (L.p_power(g) @ psi) % p
    act = mat_pow_mod(M.matrix_of(g), p - 1, p)
    return (first - act @ ((g @ psi) % p)) % p


def beta_induced(L, M, c2: Cochain2, g, h) -> np.ndarray:
    """Direct formula for the beta induced by (phi, omega) at (g, h)."""
    p = L.p
    g = L._check_vec(g)
    h = L._check_vec(h)
    out = _phi_eval(c2.phi, g, L.p_power(h), p)
    rh = M.matrix_of(h)
    u = g
    vals = []
    for b in range(p):
        vals.append(_phi_eval(c2.phi, u, h, p))
        u = L.bracket(u, h)
    acting = np.eye(M.m, dtype=np.int64)
    for a in range(p):
        b = p - 1 - a
        out = (out - (-1) ** a * (acting @ vals[b])) % p
        acting = (acting @ rh) % p
    return (out + M.matrix_of(g) @ eval_omega(L, M, c2, h)) % p


def delta0_matrix(L, M) -> np.ndarray:
    """delta0 = classical degree-0 coboundary: (delta v)(g) = -g.v."""
    return delta_cl_matrix(L, M, 0)


def delta1(L, M, psi: np.ndarray) -> Cochain2:
    """Cochain-level delta1: psi -> (delta_cl psi, psi-tilde on basis)."""
    p = L.p
    psi = np.asarray(psi, dtype=np.int64) % p
    phi_flat = (delta_cl_matrix(L, M, 1) @ psi.reshape(-1)) % p
    om = np.zeros((L.n, M.m), dtype=np.int64)
    for i in range(L.n):
        om[i] = (L.pi[i] @ psi - mat_pow_mod(M.rho[i], p - 1, p) @ psi[i]) % p
    return Cochain2(phi=pair_vec_to_tensor(L, M, phi_flat), omega_basis=om)


def delta1_matrix(L, M) -> np.ndarray:
    n, m, p = L.n, M.m, L.p
    top = delta_cl_matrix(L, M, 1)
    bottom = np.zeros((n * m, n * m), dtype=np.int64)
    eye = np.eye(m, dtype=np.int64)
    for i in range(n):
        r0 = i * m
        for l in range(n):
            w = int(L.pi[i, l])
            if w:
                bottom[r0 : r0 + m, l * m : (l + 1) * m] = (
                    bottom[r0 : r0 + m, l * m : (l + 1) * m] + w * eye
                ) % p
        bottom[r0 : r0 + m, i * m : (i + 1) * m] = (
            bottom[r0 : r0 + m, i * m : (i + 1) * m] - mat_pow_mod(M.rho[i], p - 1, p)
        ) % p
    return np.vstack([top, bottom])


def delta2(L, M, c2: Cochain2) -> Cochain3:
    """Cochain-level delta2: (phi, omega) -> (delta_cl phi, induced beta)."""
    p, n, m = L.p, L.n, M.m
    alpha_flat = (delta_cl_matrix(L, M, 2) @ tensor_to_pair_vec(L, M, c2.phi)) % p
    beta = np.zeros((n, n, m), dtype=np.int64)
    for j in range(n):
        ej = L.basis_vector(j)
        rp = [np.eye(m, dtype=np.int64)]
        for _ in range(p - 1):
            rp.append((rp[-1] @ M.rho[j]) % p)
        for i in range(n):
            val = np.einsum("l,lb->b", L.pi[j], c2.phi[i]) % p
            u = L.basis_vector(i)
            vals = []
            for b in range(p):
                vals.append(_phi_eval(c2.phi, u, ej, p))
                u = L.bracket(u, ej)
            for a in range(p):
                b = p - 1 - a
                val = (val - (-1) ** a * (rp[a] @ vals[b])) % p
            val = (val + M.rho[i] @ c2.omega_basis[j]) % p
            beta[i, j] = val
    return Cochain3(alpha=triple_vec_to_tensor(L, M, alpha_flat), beta_basis=beta)


def delta2_matrix(L, M) -> np.ndarray:
    """Matrix of delta2 on (phi pairs | omega basis) coordinates."""
    n, m, p = L.n, M.m, L.p
    ps = pair_tuples(n)
    pr = {t: r for r, t in enumerate(ps)}
    nphi = len(ps) * m
    nom = n * m
    nalpha = len(triple_tuples(n)) * m
    D = np.zeros((nalpha + n * n * m, nphi + nom), dtype=np.int64)
    D[:nalpha, :nphi] = delta_cl_matrix(L, M, 2)

    def phi_col(a: int, b: int):
        """Column block and sign of the phi coordinate at (a, b), a != b."""
        if a < b:
            return pr[(a, b)] * m, 1
        return pr[(b, a)] * m, -1

    eye = np.eye(m, dtype=np.int64)
    for j in range(n):
        ej = L.basis_vector(j)
        rp = [eye]
        for _ in range(p - 1):
            rp.append((rp[-1] @ M.rho[j]) % p)
        for i in range(n):
            r0 = nalpha + (i * n + j) * m
            for l in range(n):
                w = int(L.pi[j, l])
                if w and l != i:
                    c0, sgn = phi_col(i, l)
                    D[r0 : r0 + m, c0 : c0 + m] = (
                        D[r0 : r0 + m, c0 : c0 + m] + sgn * w * eye
                    ) % p
            u = L.basis_vector(i)
            brackets = []
            for b in range(p):
                brackets.append(u)
                u = L.bracket(u, ej)
            for a in range(p):
                b = p - 1 - a
                ub = brackets[b]
                for l in np.nonzero(ub)[0]:
                    if l == j:
                        continue
                    c0, sgn = phi_col(int(l), j)
                    coef = (-((-1) ** a) * int(ub[l]) * sgn) % p
                    D[r0 : r0 + m, c0 : c0 + m] = (
                        D[r0 : r0 + m, c0 : c0 + m] + coef * rp[a]
                    ) % p
            D[r0 : r0 + m, nphi + j * m : nphi + (j + 1) * m] = (
                D[r0 : r0 + m, nphi + j * m : nphi + (j + 1) * m] + M.rho[i]
            ) % p
    return D % p


def restricted_cohomology(L, M, k: int):
    """(dimension, representative rows) of restricted H^k, k in {0, 1, 2}."""
    p = L.p
    if k == 0:
        inv = invariants(M)
        return inv.dim, inv.basis
    if k == 1:
        incoming = delta0_matrix(L, M)
        outgoing = delta1_matrix(L, M)
    elif k == 2:
        incoming = delta1_matrix(L, M)
        outgoing = delta2_matrix(L, M)
    else:
        raise ValueError("restricted cohomology is defined here for k <= 2 only")
    dim = quotient_dim(incoming, outgoing, p)
    reps = quotient_representatives(incoming.T, nullspace(outgoing, p), p)
    if reps.shape[0] != dim:
        raise AssertionError("representative count disagrees with quotient dimension")
    return dim, reps


def compare_classical(L, M, k: int):
    """Matrix of the induced map H^k -> H^k_cl in the computed
    representative bases, together with its kernel dimension."""
    if k not in (1, 2):
        raise ValueError("comparison maps exist for k in {1, 2}")
    p, m = L.p, M.m
    d_res, reps_res = restricted_cohomology(L, M, k)
    d_cl, reps_cl = classical_cohomology(L, M, k)
    boundary = delta_cl_matrix(L, M, k - 1)
    nphi = len(pair_tuples(L.n)) * m
    map_matrix = np.zeros((d_cl, d_res), dtype=np.int64)
    for col in range(d_res):
        z = reps_res[col]
        proj = z if k == 1 else z[:nphi]
        coords = class_coordinates(reps_cl, boundary, proj % p, p)
        if coords is None:
            raise AssertionError("forgetful image of a restricted cocycle is not a classical class")
        map_matrix[:, col] = coords
    kernel_dim = d_res - rank(map_matrix, p)
    return map_matrix, kernel_dim
