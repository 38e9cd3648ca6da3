import pytest

from idealarr.matengine import (
    LayerError,
    check_condition_avoid,
    check_condition_codim,
    check_condition_count,
    count_by_flats,
    run_induction,
)
from idealarr.partition import ideal_exponents
from idealarr.rootposet import Ideal, enumerate_ideals, height_layer, ideal_closure, truncation_ideal
from idealarr.rootsys import build_root_system


def test_condition_codim_examples():
    a2 = build_root_system("A2")
    assert check_condition_codim(a2, [0, 1])
    a3 = build_root_system("A3")
    assert check_condition_codim(a3, [0, 1, 2])
    d4 = build_root_system("D4")
    height2 = [i for i in range(d4.num_positive) if d4.heights[i] == 2]
    assert len(height2) == 3
    assert check_condition_codim(d4, height2)
    with pytest.raises(LayerError):
        check_condition_codim(a2, [0, 2])


def test_condition_avoid_examples():
    a2 = build_root_system("A2")
    assert check_condition_avoid(a2, truncation_ideal(a2, 2), [2])
    assert check_condition_avoid(a2, truncation_ideal(a2, 0), [0, 1])
    b2 = build_root_system("B2")
    assert check_condition_avoid(b2, truncation_ideal(b2, 3), [3])
    # a root in the span of the added layer violates the condition
    assert not check_condition_avoid(a2, truncation_ideal(a2, 1), [0, 1])


def test_condition_count_examples():
    a2 = build_root_system("A2")
    assert check_condition_count(a2, truncation_ideal(a2, 2), 2) == (1, 1, True)
    assert check_condition_count(a2, truncation_ideal(a2, 0), 0) == (0, 0, True)
    b2 = build_root_system("B2")
    assert check_condition_count(b2, truncation_ideal(b2, 3), 3) == (2, 2, True)


def test_induction_examples():
    a2 = build_root_system("A2")
    cert = run_induction(a2, truncation_ideal(a2, 3))
    assert cert.passed
    assert [r.exponents for r in cert.layers] == [[1, 1], [1, 2]]
    for name in ["A3", "B2", "F4"]:
        rs = build_root_system(name)
        cert = run_induction(rs, truncation_ideal(rs, rs.rank))
        assert cert.passed and len(cert.layers) == 1 and cert.exponents == [1] * rs.rank
    g2 = build_root_system("G2")
    cert = run_induction(g2, truncation_ideal(g2, 6))
    assert cert.exponents == [1, 5]
    assert len(cert.layers) == 5
    assert [r.q for r in cert.layers[1:]] == [1, 1, 1, 1]


def test_empty_ideal_certificate():
    rs = build_root_system("B3")
    cert = run_induction(rs, truncation_ideal(rs, 0))
    assert cert.passed and cert.layers == [] and cert.exponents == [0, 0, 0]


def test_partial_boolean_base():
    a2 = build_root_system("A2")
    cert = run_induction(a2, ideal_closure(a2, [0]))
    assert cert.exponents == [0, 1]


def test_non_ideal_input_is_reported_as_failure():
    a2 = build_root_system("A2")
    fake = Ideal((0, 2), (0, 2))  # alpha_1 and alpha_1 + alpha_2 without alpha_2
    cert = run_induction(a2, fake)
    assert not cert.passed
    assert cert.failed_layer == 2
    assert cert.to_json()["pass"] is False


@pytest.mark.parametrize("name", ["A4", "B3", "C3", "D4", "G2", "A2xB2"])
def test_induction_invariants(name):
    rs = build_root_system(name)
    for I in enumerate_ideals(rs):
        cert = run_induction(rs, I)
        assert cert.passed
        assert cert.exponents == list(ideal_exponents(rs, I))
        for k, rec in enumerate(cert.layers[1:], start=1):
            assert rec.q <= rec.p
            assert rec.d == k
            assert max(rec.exponents) == k + 1
            assert rec.exponents == list(ideal_exponents(rs, height_layer(rs, I, k + 1)))


@pytest.mark.parametrize("name", ["A3", "B3", "G2", "D4"])
def test_count_matches_flat_sum(name):
    rs = build_root_system(name)
    for I in enumerate_ideals(rs):
        for beta in I.members:
            k = rs.heights[beta] - 1
            if k:
                lower = height_layer(rs, I, k)
                assert count_by_flats(rs, lower, beta) == check_condition_count(rs, lower, beta)[0]
