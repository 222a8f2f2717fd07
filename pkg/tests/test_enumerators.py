import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_code
from z4lat.binary import BinaryCode
from z4lat.codes import dual_code, standard_form
from z4lat.enumerators import (
    HomPoly,
    classify_type,
    gray_we_from_swe,
    is_formally_self_dual,
    jwe,
    macwilliams_jwe,
    macwilliams_swe,
    min_distances,
    swe,
    we,
    we_is_formally_self_dual,
)
from z4lat.errors import ValidationError
from z4lat.serialization import load_code_file

OCTACODE_SWE = {(0, 0, 8): 1, (0, 8, 0): 16, (8, 0, 0): 1, (4, 0, 4): 14, (3, 4, 1): 112, (1, 4, 3): 112}
BDCC4_SWE = {(4, 0, 0): 1, (3, 0, 1): 1, (2, 1, 1): 4, (2, 0, 2): 1, (1, 2, 1): 2, (1, 0, 3): 1, (0, 3, 1): 4, (0, 2, 2): 2}


def random_binary(rng, n, k=None):
    k = k if k is not None else rng.randint(0, n)
    M = [[rng.randrange(2) for _ in range(n)] for _ in range(k)]
    return BinaryCode.from_matrix(np.array(M, dtype=np.int64).reshape(k, n), n=n)


# ---------------------------------------------------------------------------
# weight enumerators
# ---------------------------------------------------------------------------


def test_we_repetition():
    rep = BinaryCode.from_matrix([[1, 1]])
    assert we(rep).terms == {(2, 0): 1, (0, 2): 1}


def test_we_first_order_length8():
    # independent oracle: enumerate the 16 words spanned by the four rows
    rows = [0b11111111, 0b00001111, 0b00110011, 0b01010101]
    counts = {}
    for idx in range(16):
        w = 0
        for i in range(4):
            if (idx >> i) & 1:
                w ^= rows[i]
        counts[bin(w).count("1")] = counts.get(bin(w).count("1"), 0) + 1
    assert counts == {0: 1, 4: 14, 8: 1}  # frozen oracle output
    code = BinaryCode.from_matrix([[(r >> (7 - j)) & 1 for j in range(8)] for r in rows])
    assert we(code).terms == {(8, 0): 1, (4, 4): 14, (0, 8): 1}


def test_we_zero_code():
    assert we(BinaryCode.zero(5)).terms == {(5, 0): 1}


def test_swe_octacode(fixtures):
    _, _, gen = load_code_file(fixtures / "octacode.json")
    assert swe(standard_form(gen)).terms == OCTACODE_SWE


def test_swe_bdcc4(fixtures):
    _, _, gen = load_code_file(fixtures / "bdcc_n4.json")
    assert swe(standard_form(gen)).terms == BDCC4_SWE


def test_swe_zero_code():
    code = standard_form(np.zeros((1, 4), dtype=np.int64))
    assert swe(code).terms == {(4, 0, 0): 1}


# ---------------------------------------------------------------------------
# joint weight enumerators
# ---------------------------------------------------------------------------


def test_jwe_full_length_one():
    full = BinaryCode.full(1)
    assert jwe(full, full).terms == {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1, (0, 0, 1, 0): 1, (0, 0, 0, 1): 1}


def test_jwe_zero_against_any_is_we():
    rng = random.Random(2)
    for _ in range(30):
        n = rng.randint(1, 6)
        a2 = random_binary(rng, n)
        j = jwe(BinaryCode.zero(n), a2)
        projected = {}
        for (d00, d01, d10, d11), c in j.terms.items():
            assert d10 == 0 and d11 == 0
            projected[(d00, d01)] = projected.get((d00, d01), 0) + c
        assert projected == we(a2).terms


def test_jwe_repetition_pair():
    rep = BinaryCode.from_matrix([[1, 1]])
    assert jwe(rep, rep).terms == {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2): 1}


def test_jwe_length_mismatch():
    with pytest.raises(ValidationError):
        jwe(BinaryCode.zero(2), BinaryCode.zero(3))


def test_jwe_product_identity():
    # W_{A1}(x,y) W_{A2}(z,t) == jwe(xz, xt, yz, yt) as 4-variable polynomials
    rng = random.Random(31)
    for _ in range(100):
        n = rng.randint(1, 5)
        a1, a2 = random_binary(rng, n), random_binary(rng, n)
        lhs = {}
        for (x1, y1), c1 in we(a1).terms.items():
            for (z2, t2), c2 in we(a2).terms.items():
                key = (x1, y1, z2, t2)
                lhs[key] = lhs.get(key, 0) + c1 * c2
        rhs = {}
        for (d00, d01, d10, d11), c in jwe(a1, a2).terms.items():
            key = (d00 + d01, d10 + d11, d00 + d10, d01 + d11)
            rhs[key] = rhs.get(key, 0) + c
        assert lhs == rhs


def test_jwe_swap_symmetry():
    rng = random.Random(37)
    for _ in range(100):
        n = rng.randint(1, 5)
        a1, a2 = random_binary(rng, n), random_binary(rng, n)
        j12 = jwe(a1, a2).terms
        j21 = jwe(a2, a1).terms
        assert j12 == {(d00, d10, d01, d11): c for (d00, d01, d10, d11), c in j21.items()}


# ---------------------------------------------------------------------------
# MacWilliams transforms
# ---------------------------------------------------------------------------


def test_macwilliams_swe_fixed_points(fixtures):
    for name in ("octacode.json", "bdcc_n4.json"):
        _, _, gen = load_code_file(fixtures / name)
        p = swe(standard_form(gen))
        assert macwilliams_swe(p) == p.map_coeffs(Fraction)


def test_macwilliams_swe_zero_code():
    p = HomPoly(3, 1, {(1, 0, 0): 1})
    assert macwilliams_swe(p).terms == {(1, 0, 0): Fraction(1), (0, 1, 0): Fraction(2), (0, 0, 1): Fraction(1)}


def test_macwilliams_swe_double_is_identity():
    # homogeneity makes the double transform exact for any input polynomial
    # once the two divisors multiply to 4^n
    rng = random.Random(41)
    for _ in range(100):
        n = rng.randint(1, 6)
        terms = {}
        for _ in range(rng.randint(1, 6)):
            i = rng.randint(0, n)
            j = rng.randint(0, n - i)
            terms[(i, j, n - i - j)] = rng.randint(1, 9)
        p = HomPoly(3, n, terms)
        d1 = 2 ** rng.randint(0, 2 * n)
        d2 = 4**n // d1
        twice = macwilliams_swe(macwilliams_swe(p, dual_size=d1), dual_size=d2)
        assert twice == p.map_coeffs(Fraction)


def test_macwilliams_swe_double_identity_on_genuine_swes():
    rng = random.Random(42)
    for _ in range(100):
        p = swe(random_code(rng, rng.randint(1, 7)))
        twice = macwilliams_swe(macwilliams_swe(p))
        assert twice == p.map_coeffs(Fraction)


def test_macwilliams_swe_matches_dual_enumeration():
    rng = random.Random(43)
    for _ in range(100):
        n = rng.randint(1, 8)
        code = random_code(rng, n)
        dual = dual_code(code)
        lhs = macwilliams_swe(swe(code), dual_size=dual.size)
        assert lhs == swe(dual).map_coeffs(Fraction)


def test_macwilliams_jwe_examples():
    n1 = jwe(BinaryCode.zero(1), BinaryCode.zero(1))
    out = macwilliams_jwe(n1, sizes=(1, 1))
    assert out.terms == {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1, (0, 0, 1, 0): 1, (0, 0, 0, 1): 1}


def test_macwilliams_jwe_double_identity_and_dual_pairing():
    rng = random.Random(47)
    for _ in range(100):
        n = rng.randint(1, 5)
        a1, a2 = random_binary(rng, n), random_binary(rng, n)
        j = jwe(a1, a2)
        transformed = macwilliams_jwe(j, sizes=(a1.size, a2.size))
        assert transformed == jwe(a1.dual(), a2.dual()).map_coeffs(Fraction)
        back = macwilliams_jwe(transformed, sizes=(a1.dual().size, a2.dual().size))
        assert back == j.map_coeffs(Fraction)


# ---------------------------------------------------------------------------
# classification, Gray map, distances
# ---------------------------------------------------------------------------


def test_fsd_octacode_and_zero(fixtures):
    _, _, gen = load_code_file(fixtures / "octacode.json")
    assert is_formally_self_dual(standard_form(gen))
    zero = standard_form(np.zeros((1, 2), dtype=np.int64))
    assert not is_formally_self_dual(zero)  # cardinality test fails


def test_classify_types(fixtures):
    _, _, gen = load_code_file(fixtures / "octacode.json")
    code = standard_form(gen)
    # oracle: reduce every Euclidean weight mod 8 by direct enumeration
    from z4lat.codes import enumerate_codewords
    from z4lat.codes import weights as wt

    mods = {wt(w).euclidean % 8 for w in enumerate_codewords(code)}
    assert mods == {0}
    assert classify_type(code) == "II"

    _, _, gen4 = load_code_file(fixtures / "bdcc_n4.json")
    code4 = standard_form(gen4)
    assert wt([1, 0, 0, 2]).euclidean == 5
    assert classify_type(code4) == "neither"

    assert classify_type(standard_form(np.zeros((1, 2), dtype=np.int64))) == "not-fsd"


def test_classify_type_one():
    # the all-even code 2I_n is formally self-dual with weights 0 mod 4, not all 0 mod 8
    code = standard_form(2 * np.eye(2, dtype=np.int64))
    assert classify_type(code) == "I"


def test_gray_we(fixtures):
    _, _, gen = load_code_file(fixtures / "octacode.json")
    p = swe(standard_form(gen))
    g = gray_we_from_swe(p)
    assert g.degree == 16
    assert g.mass == 256
    # direct image oracle: Gray-map all 256 codewords and census the weights
    gray = {0: (0, 0), 1: (0, 1), 2: (1, 1), 3: (1, 0)}
    from z4lat.codes import enumerate_codewords

    counts = {}
    for w in enumerate_codewords(standard_form(gen)):
        bits = [b for x in w for b in gray[int(x)]]
        h = sum(bits)
        counts[(16 - h, h)] = counts.get((16 - h, h), 0) + 1
    assert counts == g.terms


def test_gray_zero_code():
    p = HomPoly(3, 3, {(3, 0, 0): 1})
    assert gray_we_from_swe(p).terms == {(6, 0): 1}


def test_gray_preserves_mass_random():
    rng = random.Random(53)
    for _ in range(100):
        code = random_code(rng, rng.randint(1, 6))
        p = swe(code)
        assert gray_we_from_swe(p).mass == p.mass


def test_min_distances(fixtures):
    _, _, gen = load_code_file(fixtures / "octacode.json")
    assert min_distances(standard_form(gen)) == (6, 8)
    zero = standard_form(np.zeros((1, 3), dtype=np.int64))
    with pytest.raises(ValidationError):
        min_distances(zero)


def test_swe_invariant_under_column_maps():
    rng = random.Random(59)
    for _ in range(100):
        n = rng.randint(2, 6)
        code = random_code(rng, n)
        p = swe(code)
        G = code.generator.copy()
        sigma = list(range(n))
        rng.shuffle(sigma)
        G = G[:, sigma]
        for j in range(n):  # negate a random subset of columns
            if rng.random() < 0.5:
                G[:, j] = (-G[:, j]) % 4
        assert swe(standard_form(G)) == p


def test_we_fsd_fixed_point():
    rep = BinaryCode.from_matrix([[1, 1]])
    assert we_is_formally_self_dual(we(rep))
    assert not we_is_formally_self_dual(we(BinaryCode.zero(2)))
