"""Field tower construction and arithmetic laws."""

import pytest

from mrdcodes import BudgetExceededError, Field, PreconditionError, field_create
from mrdcodes.gf import is_irreducible, smallest_irreducible


def test_smallest_irreducible_scan_oracle():
    # independent trial-division oracle over all degree-4 binary candidates
    def divides(small, big, p):
        # naive long division of big by small over F_p
        big = list(big)
        while len(big) >= len(small) and any(big):
            while big and big[-1] == 0:
                big.pop()
            if len(big) < len(small):
                break
            shift = len(big) - len(small)
            c = big[-1]
            for i, y in enumerate(small):
                big[i + shift] = (big[i + shift] - c * y) % p
        return not any(big)

    def irred_naive(m, p):
        deg = len(m) - 1
        for d in range(1, deg // 2 + 1):
            for low in range(p**d):
                digits = []
                t = low
                for _ in range(d):
                    digits.append(t % p)
                    t //= p
                if divides(digits + [1], m, p):
                    return False
        return True

    cands = []
    for low in range(16):
        digits = [(low >> i) & 1 for i in range(4)]
        m = digits + [1]
        if irred_naive(m, 2):
            cands.append(m)
    # smallest by integer encoding (constant coefficient least significant)
    def enc(m):
        v = 0
        for c in reversed(m):
            v = 2 * v + c
        return v
    expected = min(cands, key=enc)
    assert smallest_irreducible(2, 4) == expected == [1, 1, 0, 0, 1]


def test_field_construction_vectors(f16, f81):
    assert list(f16.modulus) == [1, 1, 0, 0, 1]  # y^4 + y + 1
    assert f16.generator == 2                    # y itself
    assert f81.order == 81
    # determinism: same inputs, bit-identical field
    again = Field(2, 1, 4)
    assert again.modulus == f16.modulus
    assert again.generator == f16.generator
    assert again._exp == f16._exp


def test_reducible_modulus_rejected():
    # y^4 + y^2 + 1 = (y^2 + y + 1)^2
    assert not is_irreducible([1, 0, 1, 0, 1], 2)
    with pytest.raises(PreconditionError):
        field_create(2, 1, 4, [1, 0, 1, 0, 1])


def test_non_prime_p_rejected():
    with pytest.raises(PreconditionError):
        field_create(4, 1, 2)


def test_over_budget_field():
    with pytest.raises(BudgetExceededError):
        Field(2, 1, 5, dlog_budget=16)
    bare = Field(2, 1, 5, dlog_budget=16, build_tables=False)
    assert not bare.has_dlog_table
    with pytest.raises(BudgetExceededError):
        bare.dlog(3)
    # arithmetic still works through polynomial multiplication
    g = bare.generator
    assert bare.mul(g, bare.inv(g)) == 1


def test_frobenius_identities(f16):
    g = f16.generator
    assert f16.frobenius(g, 0) == g
    assert f16.frobenius(g, 4) == g
    assert f16.frobenius(g, 1) == f16.mul(g, g)
    for e in range(4):
        for a in f16.elements():
            for b in f16.elements():
                assert f16.frobenius(f16.add(a, b), e) == \
                    f16.add(f16.frobenius(a, e), f16.frobenius(b, e))
                assert f16.frobenius(f16.mul(a, b), e) == \
                    f16.mul(f16.frobenius(a, e), f16.frobenius(b, e))


def test_norm_vectors(f4):
    f8 = Field(2, 1, 3)
    assert all(f8.norm_rel(x, 1) == 1 for x in range(1, 8))
    assert f8.norm_rel(0, 1) == 0
    assert f8.norm_rel(1, 1) == 1


def test_norm_multiplicative_exhaustive():
    f9 = Field(3, 1, 2)
    for a in f9.elements():
        for b in f9.elements():
            assert f9.norm_rel(f9.mul(a, b), 1) == \
                f9.mul(f9.norm_rel(a, 1), f9.norm_rel(b, 1))


def test_trace_vectors(f4):
    assert f4.trace_rel(f4.generator, 1) == 1
    assert f4.trace_rel(0, 1) == 0


def test_trace_additive_and_surjective(f16):
    for a in range(16):
        for b in range(16):
            assert f16.trace_rel(f16.add(a, b), 1) == \
                f16.add(f16.trace_rel(a, 1), f16.trace_rel(b, 1))
    assert {f16.trace_rel(x, 1) for x in f16.elements()} == {0, 1}
    f9 = Field(3, 1, 2)
    assert {f9.trace_rel(x, 1) for x in f9.elements()} == {0, 1, 2}


def test_trace_divisor_precondition(f16):
    with pytest.raises(PreconditionError):
        f16.trace_rel(1, 3)
    with pytest.raises(PreconditionError):
        f16.norm_rel(1, 3)


def test_dlog_round_trip(f16):
    g = f16.generator
    assert f16.dlog(1) == 0
    assert f16.dlog(g) == 1
    for x in range(1, 16):
        assert f16.exp_g(f16.dlog(x)) == x
    for k in range(15):
        assert f16.dlog(f16.exp_g(k)) == k
    with pytest.raises(PreconditionError):
        f16.dlog(0)


@pytest.mark.parametrize("d", [1, 3, 5, 15])
def test_chi_is_dth_power_indicator(f16, d):
    powers = {f16.pow_el(x, d) for x in range(1, 16)}
    for x in f16.elements():
        assert f16.chi_is_trivial(x, d) == (x != 0 and x in powers)


def test_chi_conventions(f16):
    assert f16.chi_is_trivial(1, 3)
    assert not f16.chi_is_trivial(0, 3)
    assert not f16.chi_is_trivial(f16.generator, 3)
    with pytest.raises(PreconditionError):
        f16.chi_is_trivial(1, 4)


def test_in_subfield(f16):
    assert f16.in_subfield(0, 1) and f16.in_subfield(1, 1)
    assert f16.in_subfield(f16.generator, 4)
    assert len(f16.subfield_elements(2)) == 4
    assert len(f16.subfield_elements(1)) == 2
    with pytest.raises(PreconditionError):
        f16.in_subfield(1, 3)


def test_tower_coordinates(f729):
    assert f729.q == 9
    x = f729.exp_g(123)
    coords = f729.fq_coordinates(x)
    assert len(coords) == 3
    assert all(f729.in_subfield(c, 2) for c in coords)
    assert f729.from_fq_coordinates(coords) == x


def test_parse_and_format(f16):
    g = f16.generator
    assert f16.parse_element("g^3") == f16.exp_g(3)
    assert f16.parse_element("g") == g
    assert f16.parse_element("0") == 0
    assert f16.parse_element([0, 1, 0, 0]) == g
    assert f16.parse_element(7) == 7
    assert f16.format_element(g, "glog") == "g^1"
    assert f16.format_element(g) == [0, 1, 0, 0]
    with pytest.raises(PreconditionError):
        f16.parse_element("h^2")
    with pytest.raises(PreconditionError):
        f16.parse_element(16)


def test_digit_tables_round_trip(f81):
    dt = f81.digit_table
    assert dt.shape == (81, 4)
    assert (f81.pack_digits(dt) == list(range(81))).all()
