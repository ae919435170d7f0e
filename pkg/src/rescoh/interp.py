"""Constructive interpretations of low-degree restricted cohomology.

Each function here realizes a cohomology class as an algebraic object
and checks the dictionary both ways: restricted derivations modulo
inner ones against H¹ with adjoint coefficients, module and algebra
extensions against degree-1 and degree-2 classes, and infinitesimal
deformations against the degree-2 cocycle condition.  The round-trips
are exact identities under the canonical splittings, not merely equal
up to coboundary, and the perturbed splittings shift by an explicit
coboundary.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .gmod import RestrictedModule, adjoint_module, hom_module, trivial_module, verify_module
from .liealg import RestrictedLieAlgebra, _r3_gap, verify_restricted
from .linalg import (
    Subspace,
    identity,
    mat_pow_mod,
    matmul_mod,
    nullspace,
    sample_vectors,
    zeros,
)
from .rescochain import Cochain2, c2_from_vec, c2_to_vec, delta1_matrix, delta2_matrix
from .classical import delta_cl_matrix

DERIVATION_EXHAUSTIVE_BOUND = 3 ** 5


class NotACocycle(ValueError):
    """Input cochain fails the degree-appropriate cocycle condition."""


class NotStronglyAbelian(ValueError):
    """Algebra extensions need coefficients with zero bracket and zero p-map."""


@dataclass
class DerivationSpace:
    """Solution space of the restricted-derivation conditions.

    Vectors use the same layout as degree-1 cochains with adjoint
    coefficients: slot i*n+b holds D(e_i)_b.
    """

    basis: Subspace
    exhaustive: bool

    @property
    def dim(self) -> int:
        return self.basis.dim

    def matrices(self) -> list[np.ndarray]:
        n = int(round(self.basis.ambient_dim ** 0.5))
        return [v.reshape(n, n).T for v in self.basis.basis]


def _derivation_rows(L: RestrictedLieAlgebra) -> np.ndarray:
    """Linear conditions for the Leibniz rule on all basis pairs."""
    p, n, c = L.p, L.n, L.c
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = np.zeros(n * n, dtype=np.int64)
                for b in range(n):
                    row[b * n + k] += c[i, j, b]
                    row[j * n + b] -= c[i, b, k]
                    row[i * n + b] -= c[b, j, k]
                rows.append(row % p)
    return np.array(rows, dtype=np.int64) if rows else zeros(0, n * n)


def _p_power_rows(L: RestrictedLieAlgebra, g: np.ndarray) -> np.ndarray:
    """Conditions D(g^{[p]}) = (ad g)^{p-1} D(g); linear in D, not in g."""
    p, n = L.p, L.n
    gp = L.p_power(g)
    A = mat_pow_mod(L.ad(g), p - 1, p)
    left = np.kron(gp.reshape(1, -1), identity(n))
    right = np.kron(g.reshape(1, -1), A)
    return (left - right) % p


def restricted_derivations(L: RestrictedLieAlgebra,
                           exhaustive_bound: int = DERIVATION_EXHAUSTIVE_BOUND,
                           sample_size: int = 500) -> DerivationSpace:
    """All maps satisfying both derivation conditions, as a Subspace.

    The p-power condition is nonlinear in the algebra element, so it is
    imposed for every element of the algebra when p^n is small enough,
    otherwise on the basis plus a deterministic sample (with a warning,
    since that is a relaxation).
    """
    p, n = L.p, L.n
    blocks = [_derivation_rows(L)]
    exhaustive = p ** n <= exhaustive_bound
    if exhaustive:
        elements = L.all_elements()
    else:
        warnings.warn(
            f"p^n = {p ** n} too large; p-power condition sampled at "
            f"{sample_size} points beyond the basis",
            stacklevel=2,
        )
        elements = list(np.eye(n, dtype=np.int64))
        elements.extend(sample_vectors(p, n, sample_size, "restricted-derivations"))
    for g in elements:
        g = np.asarray(g, dtype=np.int64)
        if not g.any():
            continue
        blocks.append(_p_power_rows(L, g))
    system = np.vstack(blocks)
    return DerivationSpace(Subspace(nullspace(system, p), n * n, p), exhaustive)


def inner_derivations(L: RestrictedLieAlgebra) -> Subspace:
    """Span of the adjoint maps, in cochain vector layout."""
    rows = np.stack([L.c[u].reshape(-1) for u in range(L.n)])
    return Subspace(rows, L.n * L.n, L.p)


def _check_report(checks: list[dict]) -> dict:
    return {"pass": all(c["pass"] for c in checks), "checks": checks}


def module_extension_roundtrip(L: RestrictedLieAlgebra, N: RestrictedModule,
                               M: RestrictedModule, psi: np.ndarray) -> dict:
    """Build the extension module for psi and recover psi from it.

    psi is a degree-1 cochain with values in Hom(N, M), flat layout
    i*(dim N * dim M) + column-major hom coordinates.  The action on
    N ⊕ M is g(n, m) = (gn, gm + psi(g)(n)).  The canonical splitting
    n ↦ (n, 0) must return psi exactly; the splitting n ↦ (n, -f(n))
    must shift it by the coboundary of f.
    """
    H = hom_module(N, M)
    p = L.p
    psi = np.asarray(psi, dtype=np.int64).reshape(-1) % p
    if matmul_mod(delta1_matrix(L, H), psi.reshape(-1, 1), p).any():
        raise NotACocycle("psi is not a degree-1 cocycle in Hom(N, M)")
    n, nn, m = L.n, N.m, M.m
    psi_mats = [psi[i * nn * m : (i + 1) * nn * m].reshape(nn, m).T for i in range(n)]
    rho_e = np.zeros((n, nn + m, nn + m), dtype=np.int64)
    for i in range(n):
        rho_e[i, :nn, :nn] = N.rho[i]
        rho_e[i, nn:, nn:] = M.rho[i]
        rho_e[i, nn:, :nn] = psi_mats[i]
    E = RestrictedModule(L, rho_e, check=False)
    mod_report = verify_module(E)
    checks = [{"name": "extension_is_restricted_module", "pass": mod_report["pass"]}]

    # canonical splitting n -> (n, 0): recovered map is g·rho(n) - rho(g·n)
    exact = True
    inj = zeros(nn + m, nn)
    inj[:nn] = identity(nn)
    for i in range(n):
        rec = (rho_e[i] @ inj - inj @ N.rho[i]) % p
        if (rec[:nn] != 0).any() or (rec[nn:] != psi_mats[i]).any():
            exact = False
            break
    checks.append({"name": "canonical_splitting_recovers_psi", "pass": exact})

    f = sample_vectors(p, nn * m, 1, "module-extension-perturbation")[0]
    f_mat = f.reshape(nn, m).T
    rho2 = inj.copy()
    rho2[nn:] = (-f_mat) % p
    shifted = np.zeros_like(psi)
    for i in range(n):
        rec = (rho_e[i] @ rho2 - rho2 @ N.rho[i]) % p
        shifted[i * nn * m : (i + 1) * nn * m] = rec[nn:].T.reshape(-1)
    want = (psi + matmul_mod(delta_cl_matrix(L, H, 0), f.reshape(-1, 1), p).ravel()) % p
    checks.append({"name": "perturbed_splitting_shift_is_coboundary",
                   "pass": bool((shifted == want).all())})
    return _check_report(checks)


def algebra_extension_roundtrip(L: RestrictedLieAlgebra, h_dim: int, c2: Cochain2,
                                h_c: np.ndarray | None = None,
                                h_pi: np.ndarray | None = None) -> dict:
    """Central extension of the algebra by a strongly abelian block.

    The extension lives on h ⊕ g with bracket (phi(g,g'), [gg']) and
    p-operator (omega(g), g^{[p]}).  Recovery uses the genuine p-power
    of the extension, so the omega comparison exercises the full
    additive law, not just the table.
    """
    if h_c is not None and np.asarray(h_c).any():
        raise NotStronglyAbelian("coefficient block must have zero bracket")
    if h_pi is not None and np.asarray(h_pi).any():
        raise NotStronglyAbelian("coefficient block must have zero p-operator")
    p, n = L.p, L.n
    T = trivial_module(L, h_dim)
    vec = c2_to_vec(L, T, c2)
    if matmul_mod(delta2_matrix(L, T), vec.reshape(-1, 1), p).any():
        raise NotACocycle("(phi, omega) is not a degree-2 cocycle")
    phi, omega = c2.phi, c2.omega_basis
    ne = h_dim + n
    c_e = np.zeros((ne, ne, ne), dtype=np.int64)
    pi_e = np.zeros((ne, ne), dtype=np.int64)
    c_e[h_dim:, h_dim:, :h_dim] = phi
    c_e[h_dim:, h_dim:, h_dim:] = L.c
    pi_e[h_dim:, :h_dim] = omega
    pi_e[h_dim:, h_dim:] = L.pi
    E = RestrictedLieAlgebra(p, c_e, pi_e)

    def sigma(g: np.ndarray, shift: np.ndarray | None = None) -> np.ndarray:
        out = np.zeros(ne, dtype=np.int64)
        out[h_dim:] = g % p
        if shift is not None:
            out[:h_dim] = (-shift) % p
        return out

    def extract(split) -> tuple[np.ndarray, np.ndarray]:
        ph = np.zeros((n, n, h_dim), dtype=np.int64)
        om = np.zeros((n, h_dim), dtype=np.int64)
        for i in range(n):
            ei = np.eye(n, dtype=np.int64)[i]
            for j in range(n):
                ej = np.eye(n, dtype=np.int64)[j]
                br = E.bracket(split(ei), split(ej))
                br = (br - split(L.bracket(ei, ej))) % p
                assert not br[h_dim:].any()
                ph[i, j] = br[:h_dim]
            om_i = (E.p_power(split(ei)) - split(L.p_power(ei))) % p
            assert not om_i[h_dim:].any()
            om[i] = om_i[:h_dim]
        return ph, om

    ph0, om0 = extract(lambda g: sigma(g))
    checks = [{"name": "canonical_splitting_recovers_cochain",
               "pass": bool((ph0 == phi).all() and (om0 == omega).all())}]

    psi = sample_vectors(p, n * h_dim, 1, "algebra-extension-perturbation")[0]
    psi_mat = psi.reshape(n, h_dim)
    ph1, om1 = extract(lambda g: sigma(g, shift=(g @ psi_mat) % p))
    d1 = matmul_mod(delta1_matrix(L, T), psi.reshape(-1, 1), p).ravel()
    want = c2_from_vec(L, T, (vec + d1) % p)
    checks.append({"name": "perturbed_splitting_shift_is_delta1",
                   "pass": bool((ph1 == want.phi).all() and (om1 == want.omega_basis).all())})
    return _check_report(checks)


def _deformed_algebra(L: RestrictedLieAlgebra, c2: Cochain2) -> RestrictedLieAlgebra:
    """Double the algebra over a square-zero parameter t.

    Basis: e_0..e_{n-1}, then t·e_0..t·e_{n-1}.  The deformed bracket
    adds phi(g,h)·t and the deformed p-power adds omega(g)·t; axioms
    are deliberately unchecked here so failures land in the verifier.
    """
    p, n = L.p, L.n
    c_d = np.zeros((2 * n, 2 * n, 2 * n), dtype=np.int64)
    pi_d = np.zeros((2 * n, 2 * n), dtype=np.int64)
    c_d[:n, :n, :n] = L.c
    c_d[:n, :n, n:] = c2.phi
    c_d[:n, n:, n:] = L.c
    c_d[n:, :n, n:] = L.c
    pi_d[:n, :n] = L.pi
    pi_d[:n, n:] = c2.omega_basis
    return RestrictedLieAlgebra(p, c_d, pi_d, check=False)


def _fast_restricted_probe(D: RestrictedLieAlgebra) -> dict | None:
    """Jacobi on all triples plus the p-power bracket law at basis points.

    This set detects exactly the failures a bad deformation cochain can
    cause; the full verifier repeats these and more.
    """
    ce = D._axiom_counterexample()
    if ce is not None:
        return {"axiom": "jacobi_or_antisymmetry", "at": ce}
    for h in range(D.n):
        gap = _r3_gap(D, np.eye(D.n, dtype=np.int64)[h])
        if gap.any():
            return {"axiom": "p_power_bracket", "at": {"h": h}}
    return None


def deformation_check(L: RestrictedLieAlgebra, c2: Cochain2, fast: bool = False) -> dict:
    """Deform by (phi, omega) over t with t² = 0 and test restrictedness.

    Returns a report with the verifier outcome, the degree-2 cocycle
    predicate, and whether they agree; fast=True trims the verifier to
    the detection set so exhaustive scans stay cheap.
    """
    p = L.p
    A = adjoint_module(L)
    vec = c2_to_vec(L, A, c2)
    cocycle = not matmul_mod(delta2_matrix(L, A), vec.reshape(-1, 1), p).any()
    D = _deformed_algebra(L, c2)
    if fast:
        failing = _fast_restricted_probe(D)
        restricted = failing is None
        detail = None
    else:
        detail = verify_restricted(D)
        restricted = detail["pass"]
        failing = None
        if not restricted:
            bad = [c for c in detail["checks"] if not c["pass"]]
            failing = {"axiom": bad[0]["name"], "at": bad[0].get("counterexample")}
    return {
        "restricted": restricted,
        "cocycle": cocycle,
        "agrees": restricted == cocycle,
        "failing": failing,
        "report": detail,
    }
