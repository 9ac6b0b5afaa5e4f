import pytest

from solvcover.surface import (
    C,
    F,
    ZERO,
    DivisorClass,
    NegativeGenus,
    ParityViolation,
    adjunction_genus,
    canonical_class,
    euler_characteristic,
    intersect,
    verify_df_numerics,
)


def test_lattice_values():
    assert intersect(C, C) == 1
    assert intersect(C, F) == intersect(F, C) == 1
    assert intersect(F, F) == 0


def test_canonical_class():
    K = canonical_class()
    assert K == DivisorClass(-2, 1)
    assert intersect(K, K) == 0
    assert intersect(K, F) == -2


def test_adjunction_on_generators():
    assert adjunction_genus(F) == 0
    assert adjunction_genus(C) == 1
    assert adjunction_genus(DivisorClass(5, -1)) == 7


def test_adjunction_errors():
    # two disjoint fibres: arithmetic genus -1
    with pytest.raises(NegativeGenus):
        adjunction_genus(2 * F)


def test_parity_always_even():
    # D.D + D.K = D.D - D.K mod 2 for this lattice, and both are even
    for a in range(-4, 5):
        for b in range(-4, 5):
            D = DivisorClass(a, b)
            assert (intersect(D, D) + intersect(D, canonical_class())) % 2 == 0


def test_euler_characteristic():
    H = 3 * C - canonical_class()
    assert H == DivisorClass(5, -1)
    assert euler_characteristic(H) == 9
    assert euler_characteristic(ZERO) == 0
    assert euler_characteristic(canonical_class()) == 0


def test_report_passes():
    rep = verify_df_numerics()
    assert rep.passed and rep.failures == []
    by_name = {c.name: c.actual for c in rep.checks}
    assert by_name["g(Z)"] == 7
    assert by_name["chi(O(H))"] == 9
    assert by_name["family dimension = dim |H| + 1 (moduli of E)"] == 9
    assert any("h1" in a for a in rep.assumptions)


def test_report_detects_failure():
    rep = verify_df_numerics(corollary_bound=9)
    assert not rep.passed
    assert [c.name for c in rep.failures] == ["family dimension exceeds the solvable-cover bound"]


def test_class_formatting():
    assert str(DivisorClass(5, -1)) == "5C - F"
    assert str(DivisorClass(-2, 1)) == "-2C + F"
    assert str(ZERO) == "0"
    assert str(F) == "F"


def test_parity_violation_type():
    assert issubclass(ParityViolation, ValueError)
