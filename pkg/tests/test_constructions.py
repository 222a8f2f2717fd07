import random
from itertools import product

import numpy as np
import pytest

from z4lat.binary import BinaryCode
from z4lat.codes import codeword_set, dual_code, standard_form
from z4lat.constructions import (
    BorderParams,
    CirculantSeed,
    OddExtensionParams,
    bdcc,
    bdcc_self_dual_conditions,
    closure_check,
    fsd_precondition_check,
    nested_sum,
    no_self_dual_pdcc_check,
    odd_extension,
    oext_self_dual_check,
    pdcc,
    reed_muller,
    rm_z4,
)
from z4lat.enumerators import HomPoly, is_formally_self_dual, min_distances, swe
from z4lat.errors import ClosureError, ValidationError
from z4lat.serialization import binary_code_from_file, load_code_file

NESTED12_SWE = {
    (12, 0, 0): 1, (2, 8, 2): 1152, (3, 8, 1): 768, (4, 8, 0): 192, (10, 0, 2): 18,
    (9, 0, 3): 64, (8, 0, 4): 111, (7, 0, 5): 192, (6, 0, 6): 252, (5, 0, 7): 192,
    (4, 0, 8): 111, (3, 0, 9): 64, (2, 0, 10): 18, (1, 8, 3): 768, (0, 8, 4): 192,
    (0, 0, 12): 1,
}


def random_closed_chain(rng, n):
    """A1 inside A2 with the product-closure property, built by saturation."""
    k1 = rng.randint(0, min(3, n))
    a1 = BinaryCode.from_matrix(
        np.array([[rng.randrange(2) for _ in range(n)] for _ in range(k1)], dtype=np.int64).reshape(k1, n), n=n
    )
    rows = [r for r in a1.generator]
    for i in range(a1.k):
        for j in range(i, a1.k):
            rows.append(a1.generator[i] * a1.generator[j] % 2)
    for _ in range(rng.randint(0, 2)):
        rows.append(np.array([rng.randrange(2) for _ in range(n)], dtype=np.int64))
    a2 = BinaryCode.from_matrix(np.array(rows, dtype=np.int64).reshape(len(rows), n), n=n) if rows else BinaryCode.zero(n)
    return a1, a2


def test_closure_examples():
    full = BinaryCode.full(3)
    assert closure_check(full, full)
    assert closure_check(reed_muller(1, 4), reed_muller(2, 4))
    rep = BinaryCode.from_matrix([[1, 1]])
    assert closure_check(rep, rep)
    other = BinaryCode.from_matrix([[1, 0]])
    assert not closure_check(rep, other)


def test_nested_sum_reference_code(fixtures):
    a1 = binary_code_from_file(fixtures / "nested_n12_a1.json")
    a2 = binary_code_from_file(fixtures / "nested_n12_a2.json")
    assert (a1.k, a2.k) == (2, 10)
    assert closure_check(a1, a2)
    assert fsd_precondition_check(a1, a2)
    # the hypothesis is weight-enumerator equality, not equality of the codes
    assert sorted(map(tuple, a2.generator.tolist())) != sorted(map(tuple, a1.dual().generator.tolist()))
    code = nested_sum(a1, a2)
    assert code.size == a1.size * a2.size == 2**12
    assert swe(code).terms == NESTED12_SWE
    assert is_formally_self_dual(code)
    assert min_distances(code)[0] == 4


def test_nested_sum_zero_full():
    n = 3
    code = nested_sum(BinaryCode.zero(n), BinaryCode.full(n))
    assert swe(code).terms == {(i, 0, n - i): c for i, c in zip(range(n + 1), (1, 3, 3, 1))}


def test_nested_sum_closure_error():
    a1 = BinaryCode.from_matrix([[1, 1, 0, 0], [0, 0, 1, 1]])
    a2 = BinaryCode.from_matrix([[1, 1, 0, 0], [0, 0, 1, 1]])
    # product of the two rows is 0, inside; self-products are the rows
    assert closure_check(a1, a2)
    bad_a2 = BinaryCode.from_matrix([[1, 0, 0, 0]])
    with pytest.raises(ClosureError):
        nested_sum(a1, bad_a2)


def test_nested_sum_duality_law():
    # dual(A1 + 2A2) equals A2_dual + 2 A1_dual, by brute force
    rng = random.Random(61)
    checked = 0
    while checked < 100:
        n = rng.randint(2, 6)
        a1, a2 = random_closed_chain(rng, n)
        if a1.size * a2.size > 4**n:
            continue
        code = nested_sum(a1, a2)
        lhs = codeword_set(dual_code(standard_form(code.generator)))
        # undo the standardisation permutation
        perm = standard_form(code.generator).column_permutation
        lhs = {tuple(np.array(w)[np.argsort(perm)]) for w in lhs}
        rhs = codeword_set(nested_sum(a2.dual(), a1.dual()))
        assert lhs == rhs
        checked += 1


def test_fsd_precondition_trivial_cases():
    n = 4
    a1 = BinaryCode.zero(n)
    a2 = BinaryCode.full(n)
    assert fsd_precondition_check(a1, a2)
    rep = BinaryCode.from_matrix([[1, 1, 0, 0], [0, 0, 1, 1]])
    assert fsd_precondition_check(rep, rep.dual())
    with pytest.raises(ValidationError):
        fsd_precondition_check(BinaryCode.zero(3), BinaryCode.full(3))


def test_reed_muller_dimensions():
    assert (reed_muller(0, 3).n, reed_muller(0, 3).k) == (8, 1)
    assert reed_muller(1, 4).k == 5
    assert reed_muller(2, 4).k == 11
    with pytest.raises(ValidationError):
        reed_muller(4, 3)
    for v in range(1, 6):
        for r in range(v):
            assert reed_muller(r, v).k + reed_muller(v - r - 1, v).k == 2**v
            # duality: R(v-r-1, v) is the dual of R(r, v)
            d = reed_muller(r, v).dual()
            rm2 = reed_muller(v - r - 1, v)
            assert d.k == rm2.k
            assert all(rm2.contains(row) for row in d.generator)


def test_rm_z4_chain():
    code = rm_z4(4)
    assert code.n == 16
    assert code.size == 2**16
    assert (code.k1, code.k2) == (5, 6)
    with pytest.raises(ClosureError):
        rm_z4(3)


def test_pdcc_bdcc_generators(fixtures):
    b = bdcc(BorderParams(0, 2, 2, CirculantSeed((1,))))
    _, _, gen = load_code_file(fixtures / "bdcc_n4.json")
    assert np.array_equal(b.generator, gen)
    seed = CirculantSeed((0, 2, 1, 2, 2, 2))
    p = pdcc(seed)
    _, _, gen12 = load_code_file(fixtures / "pdcc_n12.json")
    assert np.array_equal(p.generator, gen12)
    assert (p.k1, p.k2) == (6, 0)


def test_pdcc_degenerate_zero_seed():
    code = pdcc(CirculantSeed((0, 0)))
    p = swe(code)
    # swe of {(u, 0)} is a^2 (a + 2b + c)^2; its dual is the mirrored code
    # with the same swe, so the MacWilliams fixed point holds
    assert p.terms == {(4, 0, 0): 1, (3, 1, 0): 4, (3, 0, 1): 2, (2, 2, 0): 4,
                       (2, 1, 1): 4, (2, 0, 2): 1}
    assert is_formally_self_dual(code)
    assert codeword_set(dual_code(code)) == {(0, 0, x, y) for x in range(4) for y in range(4)}


def test_bdcc_self_dual_conditions(fixtures):
    conds = bdcc_self_dual_conditions(BorderParams(0, 2, 2, CirculantSeed((1,))))
    assert not all(conds)
    assert bdcc_self_dual_conditions(BorderParams(1, 0, 0, CirculantSeed((0,))))[0] is False
    # random search for an all-true witness at eta = 4; cross-check G G^T = O
    rng = random.Random(67)
    found = 0
    for _ in range(40000):
        params = BorderParams(rng.randrange(4), rng.randrange(4), rng.randrange(4),
                              CirculantSeed(tuple(rng.randrange(4) for _ in range(3))))
        if all(bdcc_self_dual_conditions(params)):
            G = bdcc(params).generator
            assert not ((G @ G.T) % 4).any()
            found += 1
            if found >= 3:
                break
    assert found >= 1


def test_bdcc_conditions_match_gram_exhaustively():
    # eta <= 3: all four congruences hold iff G G^T vanishes
    for eta, seeds in ((2, product(range(4), repeat=1)), (3, product(range(4), repeat=2))):
        for seed in seeds:
            for a, b, g in product(range(4), repeat=3):
                params = BorderParams(a, b, g, CirculantSeed(seed))
                G = bdcc(params).generator
                gram_zero = not ((G @ G.T) % 4).any()
                assert gram_zero == all(bdcc_self_dual_conditions(params))


def test_no_self_dual_pdcc():
    for eta in (1, 2, 3):
        assert no_self_dual_pdcc_check(eta)
    with pytest.raises(ValidationError):
        no_self_dual_pdcc_check(9)


def test_odd_extension_reference(fixtures):
    seed = CirculantSeed((0, 2, 1, 2, 2, 2))
    params = OddExtensionParams(B=seed.matrix(), a=(0, 0, 1, 1, 0, 0), c=(0, 0, 0, 0, 1, 1))
    code = odd_extension(params)
    _, _, gen = load_code_file(fixtures / "oext_n13.json")
    assert np.array_equal(code.generator, gen)
    assert code.size == 2**13
    assert is_formally_self_dual(code)
    assert not oext_self_dual_check(params)
    assert min_distances(code)[0] == 4


def test_odd_extension_self_dual_example(fixtures):
    _, _, gen = load_code_file(fixtures / "oext_n9.json")
    params = OddExtensionParams(B=gen[:4, 5:], a=tuple(gen[:4, 4]), c=tuple(gen[4, 5:] // 2))
    assert oext_self_dual_check(params)
    from z4lat.codes import Z4Code, is_self_dual

    assert is_self_dual(Z4Code(n=9, generator=gen, k1=4, k2=1))


def test_oext_self_dual_trivial_false():
    params = OddExtensionParams(B=np.eye(2, dtype=np.int64), a=(0, 0), c=(0, 0))
    assert not oext_self_dual_check(params)


def test_odd_extension_swe_product_law():
    # with a = c = 0 the swe factors exactly as swe(base) * (a + c)
    rng = random.Random(71)
    for eta in (1, 2, 3, 4, 5):
        seed = CirculantSeed(tuple(rng.randrange(4) for _ in range(eta)))
        base = pdcc(seed)
        params = OddExtensionParams(B=seed.matrix(), a=(0,) * eta, c=(0,) * eta)
        ext = odd_extension(params)
        base_swe = swe(base)
        lifted = {}
        for (i, j, k), c in base_swe.terms.items():
            lifted[(i + 1, j, k)] = lifted.get((i + 1, j, k), 0) + c
            lifted[(i, j, k + 1)] = lifted.get((i, j, k + 1), 0) + c
        assert swe(ext) == HomPoly(3, 2 * eta + 1, lifted)
