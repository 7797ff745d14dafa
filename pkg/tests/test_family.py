import json
from fractions import Fraction

import pytest

from lowlying.family import (FamilyDef, PRESETS, SignRule, get_family,
                             invariants, is_rational_surface, load_family,
                             n_minus, sign)
from lowlying.family import SingularFiberError
from lowlying.polyint import IntPoly, gcd, poly


def test_presets_exist():
    assert set(PRESETS) == {"F1", "F2plus", "F2minus", "washington",
                            "rank1", "rank6"}
    assert get_family("f1").label == "F1"
    with pytest.raises(KeyError):
        get_family("nope")


def test_invariant_identities_all_presets():
    for fam in PRESETS.values():
        inv = fam.inv
        assert inv["c4"] ** 3 - inv["c6"] ** 2 == 1728 * inv["delta"]
        assert 4 * inv["b8"] == inv["b2"] * inv["b6"] - inv["b4"] * inv["b4"]
        assert inv["D1"] * inv["D2"] == inv["D"]
        if not inv["c4"].is_zero():
            from lowlying.polyint import radical
            assert gcd(inv["D2"], radical(inv["c4"])).is_constant()


def test_washington_invariants():
    w = FamilyDef(label="w", a1=poly(), a2=poly(0, 1), a3=poly(),
                  a4=poly(-3, -1), a6=poly(1))
    m = poly(9, 3, 1)
    assert w.inv["c4"] == 16 * m
    assert w.inv["delta"] == 16 * m * m


def test_specialize():
    f1 = get_family("F1")
    assert f1.specialize(1) == (0, 0, 0, 0, -432 * 100)
    w = get_family("washington")  # reparam t -> 12t + 1
    assert w.specialize(0) == (0, 1, 0, -4, 1)


def test_singular_fiber():
    fam = FamilyDef(label="s", a1=poly(), a2=poly(), a3=poly(),
                    a4=poly(), a6=poly(0, 1))  # delta(0) = 0
    with pytest.raises(SingularFiberError):
        fam.specialize(0)


def test_rational_surface():
    ok, case = is_rational_surface(get_family("F1"))
    assert ok
    ok, _ = is_rational_surface(get_family("washington"))
    assert ok


def test_sign_rules():
    f1 = get_family("F1")
    # good t: D = 9t+1 square-free -> always even
    for t in (1, 2, 4, 5, 6):
        assert sign(f1, t) == 1
    f2p = get_family("F2plus")
    # good t: 2t+1 square-free -> always odd (t=4 has 2t+1 = 9, excluded)
    for t in (1, 2, 3, 5, 6):
        assert sign(f2p, t) == -1
    assert sign(f2p, 4) == 1  # 3^2 || D flips the quartic rule
    # cubic rule with D=2, mechanical case check
    fam = FamilyDef(label="c", a1=poly(), a2=poly(), a3=poly(),
                    a4=poly(), a6=poly(4),
                    sign_rule=SignRule("BirchStephensCubic", poly(2)))
    assert sign(fam, 0) == 1


def test_n_minus():
    from sympy import factorint
    good = [t for t in range(1, 30)
            if all(e == 1 for e in factorint(9 * t + 1).values())]
    assert n_minus(get_family("F1"), good) == 0
    assert n_minus(get_family("washington"), [0, 1, 2]) == 1
    assert n_minus(get_family("rank1"), []) == Fraction(1, 2)


def test_abc_flag():
    assert not get_family("F1").abc_flag
    assert not get_family("washington").abc_flag
    # rank6 discriminant has high-degree irreducible factors, no assertion
    assert get_family("rank6").abc_flag


def test_load_family_roundtrip(tmp_path):
    cfg = {
        "label": "custom",
        "a": [[0], [0, 1], [0], [-3, -1], [1]],
        "reparam": [12, 1],
        "sign_rule": {"kind": "AllOdd"},
        "rank": 1,
        "expected_conductor": [8 * 13, 8 * 60, 8 * 144],
        "assert_factor_degrees_le3": True,
    }
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    fam = load_family(path)
    w = get_family("washington")
    assert fam.specialize(3) == w.specialize(3)
    assert fam.expected_conductor == w.expected_conductor


def test_expected_conductor_polys():
    assert PRESETS["F1"].expected_conductor == IntPoly([27]) * poly(1, 9) ** 2
    assert PRESETS["F1"].expected_conductor.eval(0) == 27
    assert PRESETS["washington"].expected_conductor.eval(0) == 8 * 13
    assert PRESETS["rank1"].expected_conductor.eval(0) == 4 * 31
