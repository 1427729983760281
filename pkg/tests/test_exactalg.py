import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from doubledkh import bundled
from doubledkh.exactalg import ChainComplex, InvariantFailure, RingTag, SparseMatrix, filtration_grading, homology, \
    spectral_pages
from doubledkh.exactalg.linalg import EchelonBasis, kernel, rank
from doubledkh.exactalg.snf import invariant_factors, smith_normal_form, smith_normal_form_dense
from doubledkh.oracles import (brute_class_grading, brute_filtered_homology, determinantal_invariant_factors,
                               naive_invariant_factors, random_filtered_complex)
from doubledkh.theories import build_complex

matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_snf_small():
    u, d, v = smith_normal_form(SparseMatrix.identity(3))
    assert d.to_dense() == SparseMatrix.identity(3).to_dense()
    assert invariant_factors([[2]]) == [2]
    assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert invariant_factors([[0, 0], [0, 0]]) == []


def test_snf_needs_integers():
    with pytest.raises(ValueError):
        smith_normal_form(SparseMatrix.from_dense([[1]], RingTag.Q))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_decomposition(m):
    u, d, v = smith_normal_form(SparseMatrix.from_dense(m))
    assert (u @ SparseMatrix.from_dense(m) @ v).to_dense() == d.to_dense()
    diag = [d[i, i] for i in range(min(d.rows, d.cols))]
    assert all(d[i, j] == 0 for i in range(d.rows) for j in range(d.cols) if i != j)
    nz = [abs(x) for x in diag if x]
    assert all(x > 0 for x in diag[:len(nz)]) and not any(diag[len(nz):])
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_oracles(m):
    want = naive_invariant_factors(m)
    assert invariant_factors(m) == want
    assert determinantal_invariant_factors(m) == want


def test_snf_random_5x5():
    rng = random.Random(5)
    for _ in range(50):
        m = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(5)]
        _, d, _ = smith_normal_form_dense(m)
        assert [abs(d[i][i]) for i in range(5) if d[i][i]] == naive_invariant_factors(m)


def test_echelon_and_kernel():
    eb = EchelonBasis(RingTag.Q)
    eb.add({0: 1, 1: 2})
    eb.add({0: 2, 1: 4})
    assert len(eb) == 1 and eb.contains({0: Fraction(1, 2), 1: 1})
    assert rank([{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: 1}], RingTag.F2) == 2
    assert rank([{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: -1}], RingTag.Q) == 2
    ker = kernel([{0: 1}, {0: 1}, {1: 1}], RingTag.F2)
    assert ker == [{0: 1, 1: 1}]
    with pytest.raises(ValueError):
        EchelonBasis(RingTag.Z)


def test_homology_trivial():
    c = ChainComplex(RingTag.Z, [0], [1], [{}])
    assert homology(c).cells == {(0, 1): (1, ())}


def test_homology_torsion():
    c = ChainComplex(RingTag.Z, [0, 1], [0, 0], [{1: 2}, {}])
    h = homology(c)
    assert h.rank() == 0
    assert h.torsion(1, 0) == (2,)


def test_homology_rejects_non_complex():
    c = ChainComplex(RingTag.Z, [0, 1, 2], [0, 0, 0], [{1: 1}, {2: 1}, {}])
    with pytest.raises(InvariantFailure):
        homology(c)


def test_homology_ring_mismatch():
    with pytest.raises(ValueError):
        homology(ChainComplex(RingTag.Z, [0], [0], [{}]), RingTag.Q)


def test_unknot_dkh_over_q():
    h = homology(build_complex(bundled.load("unknot"), "dkh", "Q"))
    assert h.cells == {(0, j): (1, ()) for j in (1, 0, -1, -2)}


def test_filtration_grading_zero_differential():
    c = ChainComplex(RingTag.F2, [0, 0], [2, -1], [{}, {}], step=1)
    assert filtration_grading(c, {0: 1, 1: 1}) == -1
    assert filtration_grading(c, {0: 1}) == 2


def test_filtration_grading_uses_best_representative():
    # y at level 0 is homologous to y + d(b) = z at level 3
    c = ChainComplex(RingTag.F2, [0, 0, -1], [0, 3, 0], [{}, {}, {0: 1, 1: 1}], step=1)
    assert filtration_grading(c, {0: 1}) == 3
    assert brute_class_grading(c, {0: 1}) == 3
    with pytest.raises(ValueError):
        filtration_grading(c, {0: 1, 1: 1})


def test_unknot_lee_canonical_grading():
    h = homology(build_complex(bundled.load("unknot"), "lee"))
    assert max(s for (_, s) in h.cells) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 12))
def test_filtered_homology_vs_brute_force(seed, dim):
    c = random_filtered_complex(random.Random(seed), dim)
    got = {k: f for k, (f, _) in homology(c).cells.items() if f}
    assert got == brute_filtered_homology(c)
    for x in range(c.size):
        if c.apply({x: 1}):
            continue
        try:
            want = brute_class_grading(c, {x: 1})
        except ValueError:
            continue
        assert filtration_grading(c, {x: 1}) == want


def test_spectral_unfiltered():
    c = ChainComplex(RingTag.F2, [0, 1], [0, 0], [{1: 1}, {}], step=1)
    ss = spectral_pages(c)
    assert ss.nontrivial_page_count == 1
    assert ss.page(2).total == 0


def test_spectral_one_step():
    c = ChainComplex(RingTag.F2, [0, 1], [0, 1], [{1: 1}, {}], step=1)
    ss = spectral_pages(c)
    assert ss.page(2).total == 2 and ss.page(2).nonzero_differential
    assert ss.page(3).total == 0
    assert ss.nontrivial_page_count == 2


def test_knot_4_1_bn_pages():
    ss = spectral_pages(build_complex(bundled.load("knot_4_1"), "bn"))
    assert ss.nontrivial_page_count == 2
    assert ss.e_infinity.total == 4


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 10))
def test_spectral_converges_to_homology(seed, dim):
    c = random_filtered_complex(random.Random(seed), dim)
    ss = spectral_pages(c)
    h = homology(c)
    for i in set(c.degrees):
        einf = sum(n for (a, _), n in ss.e_infinity.ranks.items() if a == i)
        assert einf == h.rank(i)
