"""Restricted modules: representations compatible with the p-operator.

A module is an array rho of shape (n, m, m): rho[i] is the matrix of
basis element e_i acting on coordinate columns.  Compatibility means
commutators realize the bracket table and rho[i]^p realizes pi[i];
both conditions on the basis extend to the whole algebra, so the
verifier only needs basis pairs.
"""

from __future__ import annotations

import numpy as np

from .linalg import Subspace, as_fp, mat_pow_mod, nullspace
from .liealg import RestrictedLieAlgebra, VerificationFailed


class MixedAlgebras(ValueError):
    """Two modules over different algebras were combined."""


def same_algebra(L1: RestrictedLieAlgebra, L2: RestrictedLieAlgebra) -> bool:
    if L1 is L2:
        return True
    return L1.p == L2.p and np.array_equal(L1.c, L2.c) and np.array_equal(L1.pi, L2.pi)


class RestrictedModule:
    __slots__ = ("L", "rho", "m")

    def __init__(self, L: RestrictedLieAlgebra, rho, check: bool = False):
        self.L = L
        rho = as_fp(rho, L.p)
        if rho.ndim != 3 or rho.shape[0] != L.n or rho.shape[1] != rho.shape[2]:
            raise ValueError(f"action array must have shape ({L.n}, m, m)")
        self.rho = rho
        self.m = rho.shape[1]
        if check:
            report = verify_module(self)
            if not report["pass"]:
                failing = [ch for ch in report["checks"] if not ch["pass"]]
                raise VerificationFailed(f"not a restricted module: {failing[0]}")

    def matrix_of(self, x) -> np.ndarray:
        """Action matrix of the algebra element with coordinates x."""
        x = self.L._check_vec(x)
        return np.tensordot(x, self.rho, axes=([0], [0])) % self.L.p

    def act(self, x, v) -> np.ndarray:
        v = as_fp(v, self.L.p)
        return (self.matrix_of(x) @ v) % self.L.p

    def __repr__(self) -> str:
        return f"RestrictedModule(n={self.L.n}, m={self.m}, p={self.L.p})"


def verify_module(M: RestrictedModule) -> dict:
    """Report on the two compatibility axioms, checked on basis pairs."""
    L, rho, p = M.L, M.rho, M.L.p
    checks = []

    cx = None
    for i in range(L.n):
        for j in range(i + 1, L.n):
            comm = (rho[i] @ rho[j] - rho[j] @ rho[i]) % p
            expected = np.tensordot(L.c[i, j], rho, axes=([0], [0])) % p
            if (comm != expected).any():
                cx = {"i": i, "j": j}
                break
        if cx:
            break
    checks.append({"name": "bracket_compat", "pass": cx is None, "counterexample": cx})

    cx = None
    for i in range(L.n):
        powed = mat_pow_mod(rho[i], p, p)
        expected = np.tensordot(L.pi[i], rho, axes=([0], [0])) % p
        if (powed != expected).any():
            cx = {"i": i}
            break
    checks.append({"name": "p_power_compat", "pass": cx is None, "counterexample": cx})

    return {"pass": all(ch["pass"] for ch in checks), "checks": checks}


def trivial_module(L: RestrictedLieAlgebra, m: int = 1) -> RestrictedModule:
    return RestrictedModule(L, np.zeros((L.n, m, m), dtype=np.int64))


def adjoint_module(L: RestrictedLieAlgebra) -> RestrictedModule:
    rho = np.stack(L.ad_basis())
    return RestrictedModule(L, rho, check=True)


def dual_module(M: RestrictedModule) -> RestrictedModule:
    rho = (-M.rho.transpose(0, 2, 1)) % M.L.p
    return RestrictedModule(M.L, rho)


def hom_module(N: RestrictedModule, M: RestrictedModule) -> RestrictedModule:
    """Hom(N, M) with action (g.F)(x) = g.F(x) - F(g.x).

    A map F is coordinatized column-major: coordinate b*m + a is the
    matrix entry F[a, b] (a in the target, b in the source).
    """
    if not same_algebra(N.L, M.L):
        raise MixedAlgebras("hom_module needs modules over the same algebra")
    L = N.L
    nsrc, m = N.m, M.m
    rho = np.zeros((L.n, nsrc * m, nsrc * m), dtype=np.int64)
    for i in range(L.n):
        rho[i] = (
            np.kron(np.eye(nsrc, dtype=np.int64), M.rho[i])
            - np.kron(N.rho[i].T, np.eye(m, dtype=np.int64))
        ) % L.p
    return RestrictedModule(L, rho)


def direct_sum(M1: RestrictedModule, M2: RestrictedModule) -> RestrictedModule:
    if not same_algebra(M1.L, M2.L):
        raise MixedAlgebras("direct_sum needs modules over the same algebra")
    L = M1.L
    m1, m2 = M1.m, M2.m
    rho = np.zeros((L.n, m1 + m2, m1 + m2), dtype=np.int64)
    rho[:, :m1, :m1] = M1.rho
    rho[:, m1:, m1:] = M2.rho
    return RestrictedModule(L, rho)


def invariants(M: RestrictedModule) -> Subspace:
    """Vectors killed by every basis action."""
    stacked = M.rho.reshape(M.L.n * M.m, M.m)
    return Subspace(nullspace(stacked, M.L.p), M.m, M.L.p)
