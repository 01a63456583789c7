"""Exact-arithmetic tests for weights and formal characters."""

import random

import pytest

from kbranch.characters import (ConeError, CutoffError, FormalCharacter,
                                HMLattice, LatticeError, Weight, ZCharTable,
                                char_mul, geometric_series, graded_exterior,
                                kostant_partition, weight)

# rank-1 lattice shaped like the compact-Cartan setup: positive root (2),
# height covector = that root, order-2 component group
SL2 = HMLattice(1, "sl2:tM", (2,), ZCharTable(2, ((0,), (1,))))
ALPHA = Weight((2,), "sl2:tM")

# rank-3 lattice shaped like the rank-one unitary group: three positive
# roots, two of them noncompact
U21 = HMLattice(3, "su21:tM", (2, 0, -2))
B1 = Weight((1, 0, -1), "su21:tM")
B2 = Weight((0, 1, -1), "su21:tM")


def ch(hm, coords, z=-1):
    return hm.char(Weight(tuple(coords), hm.lattice), z)


def test_weight_arithmetic_and_denominators():
    a = weight([1, -1], "x")
    b = weight([1, 1], "x", denom=2)
    assert (a + b).denom == 2
    assert (a + b).coords == (3, -1)
    assert weight([2, 4], "x", denom=2) == weight([1, 2], "x")
    assert (-a).coords == (-1, 1)
    assert (3 * a).coords == (3, -3)


def test_weights_from_different_lattices_do_not_mix():
    with pytest.raises(LatticeError):
        weight([1], "x") + weight([1], "y")
    with pytest.raises(LatticeError):
        weight([1], "x") + weight([1, 0], "x")


def test_trivial_times_trivial_is_trivial():
    one = FormalCharacter.one(SL2)
    assert char_mul(one, one) == one


def test_inverse_identity_up_to_height():
    # (1 - e^alpha) * sum_n e^{n alpha} is trivial below the certificate
    prod = char_mul(graded_exterior(SL2, [ALPHA]),
                    geometric_series(SL2, ALPHA, 10))
    assert prod.cutoff is not None and prod.cutoff >= 10
    assert prod == FormalCharacter.one(SL2).truncate(prod.cutoff)


def test_sl2_discrete_shift_series():
    # e^4 times the even series: coefficients 1 at 4, 6, 8, ...
    base = FormalCharacter(SL2, {ch(SL2, [4]): 1})
    prod = char_mul(base, geometric_series(SL2, ALPHA, 10))
    for w, want in [(4, 1), (6, 1), (8, 1), (5, 0), (2, 0), (0, 0)]:
        assert prod.coefficient(ch(SL2, [w])) == want


def test_geometric_series_examples():
    s = geometric_series(SL2, ALPHA, 6)
    assert [c.tweight.coords for c in s.support()] == [(0,), (2,), (4,), (6,)]
    assert geometric_series(SL2, ALPHA, 0) == FormalCharacter.one(SL2).truncate(0)
    # five terms at cutoff 4 * height(root), for either noncompact root
    for b in (B1, B2):
        h2 = U21.height2(b)
        s = geometric_series(U21, b, 4 * h2 // 2)
        assert len(s) == 5 and all(m == 1 for _, m in s.items())


def test_geometric_series_rejects_bad_roots():
    with pytest.raises(ConeError):
        geometric_series(SL2, Weight((0,), SL2.lattice), 5)
    with pytest.raises(ConeError):
        geometric_series(SL2, Weight((-2,), SL2.lattice), 5)


def test_graded_exterior_examples():
    assert graded_exterior(SL2, []) == FormalCharacter.one(SL2)
    ext = graded_exterior(SL2, [ALPHA])
    assert ext.coefficient(ch(SL2, [0])) == 1
    assert ext.coefficient(ch(SL2, [2])) == -1
    a = Weight((1, -1, 0), U21.lattice)
    ext2 = graded_exterior(U21, [a])
    assert ext2.coefficient(ch(U21, [0, 0, 0])) == 1
    assert ext2.coefficient(ch(U21, [1, -1, 0])) == -1


def test_kostant_partition_examples():
    assert kostant_partition(Weight((0,), SL2.lattice), [ALPHA], SL2) == 1
    assert kostant_partition(Weight((6,), SL2.lattice), [ALPHA], SL2) == 1
    assert kostant_partition(Weight((5,), SL2.lattice), [ALPHA], SL2) == 0
    assert kostant_partition(B1 + B2, [B1, B2], U21) == 1
    assert kostant_partition(Weight((0, 0, 0), U21.lattice), [B1, B2], U21) == 1


def test_kostant_partition_brute_force_and_permutation():
    rng = random.Random(7)
    roots = [B1, B2, B1 + B2]  # the third lies in the cone as well
    for _ in range(40):
        n1, n2 = rng.randint(0, 5), rng.randint(0, 5)
        target = n1 * B1 + n2 * B2
        brute = sum(
            1 for c1 in range(0, 11) for c2 in range(0, 11) for c3 in range(0, 11)
            if (c1 * B1 + c2 * B2 + c3 * (B1 + B2)).coords == target.coords)
        got = kostant_partition(target, roots, U21)
        assert got == brute
        shuffled = roots[:]
        rng.shuffle(shuffled)
        assert kostant_partition(target, shuffled, U21) == got


def test_kostant_partition_rejects_unpointed_cone():
    with pytest.raises(ConeError):
        kostant_partition(Weight((2,), SL2.lattice),
                          [ALPHA, Weight((-2,), SL2.lattice)], SL2)


def test_kostant_partition_memo_is_grading_independent():
    # the same root multiset queried under two height functionals (the two
    # functionals reverse the roots' height order) must agree; the shared
    # memo once conflated the two
    lat_a = HMLattice(3, "su21:tM", (2, 0, -2))
    lat_b = HMLattice(3, "su21:tM", (0, 2, -2))
    roots = [Weight((1, 0, -1), "su21:tM"), Weight((0, 1, -1), "su21:tM")]
    for n1 in range(5):
        for n2 in range(5):
            t = n1 * roots[0] + n2 * roots[1]
            a = kostant_partition(t, roots, lat_a)
            b = kostant_partition(t, roots, lat_b)
            assert a == b == 1


def test_kostant_equals_series_coefficient():
    series = char_mul(geometric_series(U21, B1, 12),
                      geometric_series(U21, B2, 12))
    for n1 in range(4):
        for n2 in range(4):
            t = n1 * B1 + n2 * B2
            assert (kostant_partition(t, [B1, B2], U21)
                    == series.coefficient(U21.char(t)))


def test_coefficient_examples_and_cutoff_error():
    assert FormalCharacter.one(SL2).coefficient(ch(SL2, [0])) == 1
    ext = graded_exterior(SL2, [ALPHA])
    assert ext.coefficient(ch(SL2, [2])) == -1
    # discrete n=3 line: zero off the support, exact inside the window
    base = FormalCharacter(SL2, {ch(SL2, [4]): 1})
    d3 = char_mul(base, geometric_series(SL2, ALPHA, 20))
    assert d3.coefficient(ch(SL2, [5])) == 0
    with pytest.raises(CutoffError):
        d3.coefficient(ch(SL2, [2 * (d3.cutoff + 1)]))


def test_zchar_table_group_structure():
    zt = ZCharTable(2, ((0,), (1,)))
    assert zt.identity == 0
    assert zt.mul(1, 1) == 0
    assert zt.inverse(1) == 1
    with pytest.raises(LatticeError):
        ZCharTable(2, ((0,), (0,)))


def test_zchars_multiply_along_characters():
    a = FormalCharacter(SL2, {ch(SL2, [1], 1): 1})
    b = FormalCharacter(SL2, {ch(SL2, [2], 1): 1})
    prod = char_mul(a, b)
    assert prod.coefficient(ch(SL2, [3], 0)) == 1
    assert prod.coefficient(ch(SL2, [3], 1)) == 0


def test_dual():
    a = FormalCharacter(SL2, {ch(SL2, [3], 1): 2, ch(SL2, [-1], 0): -1})
    d = a.dual()
    assert d.coefficient(ch(SL2, [-3], 1)) == 2
    assert d.coefficient(ch(SL2, [1], 0)) == -1
    with pytest.raises(CutoffError):
        geometric_series(SL2, ALPHA, 4).dual()


def _random_char(rng, lat, nterms=5, span=3):
    terms = {}
    for _ in range(rng.randint(0, nterms)):
        w = Weight(tuple(rng.randint(-span, span) for _ in range(lat.rank)),
                   lat.lattice)
        z = rng.randrange(lat.ztable.order)
        terms[lat.char(w, z)] = rng.randint(-4, 4)
    return FormalCharacter(lat, terms)


def test_ring_laws_randomized():
    rng = random.Random(20260811)
    for _ in range(150):
        a, b, c = (_random_char(rng, SL2) for _ in range(3))
        assert char_mul(a, b) == char_mul(b, a)
        assert char_mul(char_mul(a, b), c) == char_mul(a, char_mul(b, c))


def test_cutoff_soundness_randomized():
    # truncating inputs then multiplying matches the exact product wherever
    # the result certificate claims exactness
    rng = random.Random(99)
    for _ in range(120):
        a = _random_char(rng, U21, nterms=6, span=2)
        b = _random_char(rng, U21, nterms=6, span=2)
        exact = char_mul(a, b)
        ha = rng.randint(-2, 6)
        hb = rng.randint(-2, 6)
        ta = FormalCharacter(
            U21, {c: m for c, m in a.items()
                  if U21.height2(c.tweight) <= 2 * ha}, ha)
        tb = FormalCharacter(
            U21, {c: m for c, m in b.items()
                  if U21.height2(c.tweight) <= 2 * hb}, hb)
        prod = char_mul(ta, tb)
        if prod.cutoff is None:
            continue
        for c, m in exact.items():
            if U21.height2(c.tweight) <= 2 * prod.cutoff:
                assert prod.coefficient(c) == m
        for c, m in prod.items():
            assert exact.coefficient(c) == m


def test_lattice_mismatch_in_product():
    with pytest.raises(LatticeError):
        char_mul(FormalCharacter.one(SL2), FormalCharacter.one(U21))
