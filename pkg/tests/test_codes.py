import random

import numpy as np
import pytest

from conftest import random_code
from z4lat.codes import (
    Z4Code,
    codeword_set,
    dual_code,
    enumerate_codewords,
    is_self_dual,
    standard_form,
    weights,
)
from z4lat.errors import BudgetError, ValidationError
from z4lat.serialization import load_code_file


def span_set(matrix):
    """Brute-force row span over Z4 (oracle, independent of Z4Code)."""
    M = np.asarray(matrix, dtype=np.int64) % 4
    k, n = M.shape
    out = set()
    for idx in range(4**k):
        coeffs = [(idx >> (2 * i)) & 3 for i in range(k)]
        out.add(tuple((np.array(coeffs) @ M) % 4))
    return out


def test_weights_examples():
    assert weights([0, 0, 0, 0]) == (0, 0, 0)
    assert weights([1, 2, 3, 0]) == (3, 4, 6)
    for n in (1, 3, 7):
        assert weights([2] * n) == (n, 2 * n, 4 * n)


def test_standard_form_identity_is_fixed_point():
    code = standard_form(np.eye(2, dtype=np.int64))
    assert (code.k1, code.k2) == (2, 0)
    assert code.column_permutation == (0, 1)
    assert np.array_equal(code.generator, np.eye(2, dtype=np.int64))


def test_standard_form_octacode(fixtures):
    _, _, gen = load_code_file(fixtures / "octacode.json")
    code = standard_form(gen)
    assert (code.k1, code.k2) == (4, 0)
    assert np.array_equal(code.generator, gen)


def test_standard_form_all_even_rows():
    code = standard_form([[2, 0], [0, 2]])
    assert (code.k1, code.k2) == (0, 2)
    # span comparison against the raw input, oracle-style
    assert span_set(code.generator) == span_set([[2, 0], [0, 2]])
    assert len(codeword_set(code)) == 4


def test_standard_form_mixed_order_rows():
    # a single row of additive order 4 hiding behind an even leading entry
    code = standard_form([[2, 1]])
    assert (code.k1, code.k2) == (1, 0)
    perm = list(code.column_permutation)
    raw = span_set([[2, 1]])
    permuted = {tuple(np.array(w)[perm]) for w in raw}
    assert span_set(code.generator) == permuted


def test_standard_form_idempotent_and_span_preserving():
    rng = random.Random(7)
    for _ in range(120):
        n = rng.randint(1, 7)
        M = np.array([[rng.randrange(4) for _ in range(n)] for _ in range(rng.randint(1, n + 1))])
        code = standard_form(M)
        again = standard_form(code.generator)
        assert np.array_equal(again.generator, code.generator)
        assert again.column_permutation == tuple(range(n))
        perm = list(code.column_permutation)
        permuted = {tuple(np.array(w)[perm]) for w in span_set(M)}
        assert span_set(code.generator) == permuted


def test_column_permutation_of_input_keeps_type():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(2, 7)
        M = np.array([[rng.randrange(4) for _ in range(n)] for _ in range(rng.randint(1, n))])
        code = standard_form(M)
        sigma = list(range(n))
        rng.shuffle(sigma)
        code2 = standard_form(M[:, sigma])
        assert (code2.k1, code2.k2) == (code.k1, code.k2)


def test_dual_octacode_is_self_dual(fixtures):
    _, _, gen = load_code_file(fixtures / "octacode.json")
    code = standard_form(gen)
    dual = dual_code(code)
    assert codeword_set(dual) == codeword_set(code)
    assert is_self_dual(code)


def test_dual_bdcc_printed_generator(fixtures):
    _, _, gen = load_code_file(fixtures / "bdcc_n4.json")
    dual = dual_code(standard_form(gen))
    assert np.array_equal(dual.generator, np.array([[0, 2, 1, 0], [2, 3, 0, 1]]))


def test_dual_of_full_code_is_zero():
    code = standard_form(np.eye(3, dtype=np.int64))
    dual = dual_code(code)
    assert dual.size == 1
    assert codeword_set(dual) == {(0, 0, 0)}


def test_dual_rejects_non_standard_presentation():
    code = Z4Code(n=2, generator=np.array([[3, 1]]), k1=1, k2=0)
    with pytest.raises(ValidationError):
        dual_code(code)


def test_enumerate_zero_code():
    code = standard_form(np.zeros((2, 3), dtype=np.int64))
    assert list(map(tuple, enumerate_codewords(code))) == [(0, 0, 0)]


def test_enumerate_octacode_distinct(fixtures):
    _, _, gen = load_code_file(fixtures / "octacode.json")
    code = standard_form(gen)
    words = codeword_set(code)
    assert len(words) == 256


def test_enumerate_budget_error():
    code = standard_form(np.eye(8, dtype=np.int64))
    with pytest.raises(BudgetError) as err:
        list(enumerate_codewords(code, budget=100))
    assert err.value.required == 4**8


def test_enumerate_partition_matches_full():
    rng = random.Random(3)
    code = random_code(rng, 5)
    full = [tuple(w) for w in enumerate_codewords(code)]
    split = code.size // 3
    parts = [tuple(w) for w in enumerate_codewords(code, 0, split)]
    parts += [tuple(w) for w in enumerate_codewords(code, split, code.size)]
    assert parts == full


def test_duality_pairing_random_codes():
    rng = random.Random(23)
    for _ in range(120):
        n = rng.randint(1, 8)
        code = random_code(rng, n)
        dual = dual_code(code)
        assert code.size * dual.size == 4**n
        assert not ((code.generator @ dual.generator.T) % 4).any()
        # spot check with actual codewords on the small ones
        if code.size <= 64 and dual.size <= 256:
            for w in enumerate_codewords(code):
                for v in enumerate_codewords(dual):
                    assert int(np.dot(w, v)) % 4 == 0
