"""Restricted Lie algebras presented by structure constants.

An algebra is the data (p, c, pi): c[i, j] is the coordinate vector of
the bracket of basis elements i and j, pi[i] the coordinate vector of
the p-th power of basis element i.  The p-power of a general element is
computed by peeling off basis components and applying the semilinear
additivity law, whose correction terms run over all 2^(p-2) choices of
arguments in the length-p left-normed brackets.  Multiple brackets are
always left-normed: [g1, g2, ..., gk] = [[...[g1 g2] ...] gk].
"""

from __future__ import annotations

import itertools

import numpy as np

from .field import inv_mod, is_prime
from .linalg import as_fp, mat_pow_mod, sample_vectors


class DimensionMismatch(ValueError):
    pass


class EmptySequence(ValueError):
    pass


class UnsupportedPrime(ValueError):
    """Raised when the 2^(p-2) correction enumeration would be too large."""


class NotRestrictable(ValueError):
    """Some (ad e_j)^p is not an inner derivation."""


class VerificationFailed(ValueError):
    pass


NONABELIAN_P_BOUND = 13
EXHAUSTIVE_BOUND = 3**5


class RestrictedLieAlgebra:
    """Finite-dimensional restricted Lie algebra over GF(p).

    Elements are plain int64 coordinate vectors of length n.  The
    constructor enforces antisymmetry and the Jacobi identity on basis
    triples; the p-operator axioms are checked by verify_restricted,
    which is report-valued so that deliberately broken inputs can be
    examined in tests.
    """

    def __init__(self, p: int, c, pi, check: bool = True):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.c = as_fp(c, p)
        if self.c.ndim != 3 or self.c.shape[0] != self.c.shape[1] or self.c.shape[0] != self.c.shape[2]:
            raise DimensionMismatch("structure constants must have shape (n, n, n)")
        self.n = self.c.shape[0]
        self.pi = as_fp(pi, p)
        if self.pi.shape != (self.n, self.n):
            raise DimensionMismatch("p-operator table must have shape (n, n)")
        if check:
            bad = self._axiom_counterexample()
            if bad is not None:
                raise VerificationFailed(bad)

    def _axiom_counterexample(self):
        c = self.c
        sym = (c + c.transpose(1, 0, 2)) % self.p
        if sym.any():
            i, j, k = np.argwhere(sym)[0]
            return f"antisymmetry fails at basis pair ({i}, {j})"
        diag = np.array([c[i, i] for i in range(self.n)]) % self.p
        if diag.any():
            i = int(np.argwhere(diag.any(axis=1))[0][0])
            return f"[e_{i}, e_{i}] is nonzero"
        t1 = np.einsum("ijl,lkm->ijkm", c, c)
        jac = (t1 + t1.transpose(1, 2, 0, 3) + t1.transpose(2, 0, 1, 3)) % self.p
        if jac.any():
            i, j, k, _ = np.argwhere(jac)[0]
            return f"Jacobi fails at basis triple ({i}, {j}, {k})"
        return None

    @property
    def is_abelian(self) -> bool:
        return not self.c.any()

    def zero(self) -> np.ndarray:
        return np.zeros(self.n, dtype=np.int64)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def _check_vec(self, x) -> np.ndarray:
        x = as_fp(x, self.p)
        if x.shape != (self.n,):
            raise DimensionMismatch(f"expected a vector of length {self.n}")
        return x

    def bracket(self, x, y) -> np.ndarray:
        x = self._check_vec(x)
        y = self._check_vec(y)
        return np.einsum("i,j,ijk->k", x, y, self.c) % self.p

    def multibracket(self, gs) -> np.ndarray:
        gs = list(gs)
        if not gs:
            raise EmptySequence("multibracket of an empty sequence")
        acc = self._check_vec(gs[0])
        for g in gs[1:]:
            acc = self.bracket(acc, g)
        return acc

    def ad(self, x) -> np.ndarray:
        """Matrix of ad x, acting on coordinate columns."""
        x = self._check_vec(x)
        return np.tensordot(x, self.c, axes=([0], [0])).T % self.p

    def ad_basis(self) -> list[np.ndarray]:
        return [self.c[i].T % self.p for i in range(self.n)]

    def _bracket_rows(self, rows: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("si,j,ijk->sk", rows, y, self.c) % self.p

    def _r2_correction(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Sum over all length-p brackets starting [a, b, ...] with tail
        entries drawn from {a, b}, each weighted by 1/#(a)."""
        p = self.p
        states = self.bracket(a, b).reshape(1, -1)
        counts = np.array([1], dtype=np.int64)
        for _ in range(p - 2):
            with_a = self._bracket_rows(states, a)
            with_b = self._bracket_rows(states, b)
            states = np.vstack([with_a, with_b])
            counts = np.concatenate([counts + 1, counts])
        total = self.zero()
        for v, cnt in zip(states, counts):
            total = (total + inv_mod(int(cnt), p) * v) % p
        return total

    def p_power(self, x, order: str = "asc") -> np.ndarray:
        """x^[p], by peeling basis components off x.

        The peel order ("asc" or "desc" index) must not change the
        result; verify_restricted tests that as a property.
        """
        x = self._check_vec(x)
        p = self.p
        if self.is_abelian:
            lam = np.array([pow(int(v), p, p) for v in x], dtype=np.int64)
            return (lam @ self.pi) % p
        if p > NONABELIAN_P_BOUND:
            raise UnsupportedPrime(
                f"nonabelian p-power enumerates 2^(p-2) sequences; p={p} exceeds bound {NONABELIAN_P_BOUND}"
            )
        nz = np.nonzero(x)[0]
        if nz.size == 0:
            return self.zero()
        i = int(nz[0] if order == "asc" else nz[-1])
        lam = int(x[i])
        head = (pow(lam, p, p) * self.pi[i]) % p
        if nz.size == 1:
            return head
        a = self.zero()
        a[i] = lam
        r = x.copy()
        r[i] = 0
        rest = self.p_power(r, order)
        corr = self._r2_correction(a, r)
        return (head + rest + corr) % p

    def all_elements(self) -> np.ndarray:
        """Every coordinate vector, for exhaustive checks (p^n rows)."""
        cols = np.array(list(itertools.product(range(self.p), repeat=self.n)), dtype=np.int64)
        return cols

    def __repr__(self) -> str:
        kind = "abelian" if self.is_abelian else "nonabelian"
        return f"RestrictedLieAlgebra(p={self.p}, n={self.n}, {kind})"


def _r3_gap(L: RestrictedLieAlgebra, h: np.ndarray):
    """[e_g, h^[p]] minus the p-fold bracket [e_g, h, ..., h], all g at once."""
    hp = L.p_power(h)
    lhs = np.tensordot(hp, L.c, axes=([0], [1])) % L.p
    rhs = np.tensordot(h, L.c, axes=([0], [1])) % L.p
    for _ in range(L.p - 1):
        rhs = L._bracket_rows(rhs, h)
    return (lhs - rhs) % L.p


def verify_restricted(
    L: RestrictedLieAlgebra,
    exhaustive_bound: int = EXHAUSTIVE_BOUND,
    sample_size: int = 500,
    peel_samples: int = 100,
    scaling_samples: int = 30,
) -> dict:
    """Check the defining axioms of the p-operator.

    Jacobi and antisymmetry are re-checked on basis triples.  The
    compatibility of bracket and p-power is checked for every basis g
    against every h in the whole algebra when p^n is small enough,
    otherwise against all basis h, all basis pairs, and a deterministic
    sample.  Peel-order independence and p-homogeneity of the p-power
    are checked on deterministic samples.

    Returns {"pass": bool, "checks": [{name, pass, counterexample}]}.
    """
    p, n = L.p, L.n
    checks = []

    bad = L._axiom_counterexample()
    checks.append({"name": "antisymmetry_jacobi", "pass": bad is None, "counterexample": bad})

    if p**n <= exhaustive_bound:
        hs = L.all_elements()
        mode = "exhaustive"
    else:
        basis = np.eye(n, dtype=np.int64)
        pairs = np.array(
            [basis[i] + basis[j] for i in range(n) for j in range(i + 1, n)], dtype=np.int64
        ).reshape(-1, n) % p
        extra = sample_vectors(p, n, sample_size, "r3")
        hs = np.vstack([basis, pairs, extra]) if pairs.size else np.vstack([basis, extra])
        mode = "sampled"
    cx = None
    for h in hs:
        gap = _r3_gap(L, h)
        if gap.any():
            g = int(np.argwhere(gap.any(axis=1))[0][0])
            cx = {"g": g, "h": [int(v) for v in h], "mode": mode}
            break
    checks.append({"name": "bracket_p_power", "pass": cx is None, "counterexample": cx})

    cx = None
    for x in sample_vectors(p, n, peel_samples, "peel"):
        if ((L.p_power(x, "asc") - L.p_power(x, "desc")) % p).any():
            cx = {"x": [int(v) for v in x]}
            break
    checks.append({"name": "peel_independence", "pass": cx is None, "counterexample": cx})

    cx = None
    for x in sample_vectors(p, n, scaling_samples, "scaling"):
        base = L.p_power(x)
        for lam in range(2, p):
            scaled = L.p_power((lam * x) % p)
            if ((scaled - pow(lam, p, p) * base) % p).any():
                cx = {"x": [int(v) for v in x], "lambda": lam}
                break
        if cx:
            break
    checks.append({"name": "p_homogeneity", "pass": cx is None, "counterexample": cx})

    return {"pass": all(ch["pass"] for ch in checks), "checks": checks}


def infer_p_operator(c, p: int) -> np.ndarray:
    """Solve for a p-operator table making (p, c) a restricted Lie algebra.

    For each basis element the p-th power of its adjoint matrix must be
    inner; the returned table uses the deterministic particular solution
    of each linear system (free coordinates zero).  When the center is
    nonzero the solution is only one representative of a coset; the
    verification pass still certifies the axioms for the choice made.

    Raises:
        NotRestrictable: some (ad e_j)^p is not inner.
        VerificationFailed: a solution exists but the axioms fail for it.
    """
    from .linalg import solve

    probe = RestrictedLieAlgebra(p, c, np.zeros((np.asarray(c).shape[0],) * 2), check=True)
    n = probe.n
    ads = probe.ad_basis()
    A = np.stack([m.reshape(-1) for m in ads], axis=1) % p
    pi = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        target = mat_pow_mod(ads[j], p, p).reshape(-1)
        x = solve(A, target, p)
        if x is None:
            raise NotRestrictable(f"(ad e_{j})^{p} is not an inner derivation")
        pi[j] = x
    L = RestrictedLieAlgebra(p, c, pi, check=True)
    report = verify_restricted(L)
    if not report["pass"]:
        failing = [ch for ch in report["checks"] if not ch["pass"]]
        raise VerificationFailed(
            "inferred table fails verification (possibly an ambiguous center choice): "
            + repr(failing[0])
        )
    return pi


def witt_algebra(p: int):
    """The p-dimensional Witt algebra with its faithful representation.

    Basis D_0 ... D_{p-1} acting on the group-algebra basis
    {1, x, ..., x^{p-1}} (x^p = 1) by D_j: x^k -> k x^{k+j}.  Relations
    [D_i, D_j] = (j - i) D_{i+j mod p}, D_0^[p] = D_0, D_j^[p] = 0 for
    j > 0.  The representation matrices are the ground truth: the
    constructor asserts the bracket and the p-power against them and is
    used as the oracle throughout the test-suite.
    """
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    rep = []
    for j in range(p):
        M = np.zeros((p, p), dtype=np.int64)
        for k in range(p):
            M[(k + j) % p, k] = k % p
        rep.append(M)
    c = np.zeros((p, p, p), dtype=np.int64)
    for i in range(p):
        for j in range(p):
            c[i, j, (i + j) % p] = (j - i) % p
    pi = np.zeros((p, p), dtype=np.int64)
    pi[0, 0] = 1
    L = RestrictedLieAlgebra(p, c, pi, check=True)
    for i in range(p):
        for j in range(i + 1, p):
            comm = (rep[i] @ rep[j] - rep[j] @ rep[i]) % p
            expected = ((j - i) % p) * rep[(i + j) % p] % p
            if (comm != expected).any():
                raise VerificationFailed(f"representation commutator fails at ({i}, {j})")
    for j in range(p):
        powed = mat_pow_mod(rep[j], p, p)
        expected = np.tensordot(pi[j], np.stack(rep), axes=([0], [0])) % p
        if (powed != expected).any():
            raise VerificationFailed(f"representation p-th power fails at D_{j}")
    return L, rep


def abelian_algebra(n: int, p: int, pi=None) -> RestrictedLieAlgebra:
    """Abelian algebra of dimension n; pi defaults to zero."""
    c = np.zeros((n, n, n), dtype=np.int64)
    if pi is None:
        pi = np.zeros((n, n), dtype=np.int64)
    return RestrictedLieAlgebra(p, c, pi, check=True)


def heisenberg_algebra(p: int) -> RestrictedLieAlgebra:
    """3-dimensional algebra [x, y] = z with z central, zero p-table.

    The zero table is a valid assignment for every p: all length-p
    brackets of x and y land in the center and then die, except the
    p = 2 case where the peel extension produces (x+y)^[2] = z on its
    own.
    """
    c = np.zeros((3, 3, 3), dtype=np.int64)
    c[0, 1, 2] = 1
    c[1, 0, 2] = (-1) % p
    pi = np.zeros((3, 3), dtype=np.int64)
    return RestrictedLieAlgebra(p, c, pi, check=True)


def solvable2_algebra(p: int) -> RestrictedLieAlgebra:
    """2-dimensional algebra [x, y] = y with x^[p] = x, y^[p] = 0."""
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 1, 1] = 1
    c[1, 0, 1] = (-1) % p
    pi = np.zeros((2, 2), dtype=np.int64)
    pi[0, 0] = 1
    return RestrictedLieAlgebra(p, c, pi, check=True)
