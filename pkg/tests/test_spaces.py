import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from symba import orlicz
from symba.errors import BracketError, HorizonError, PreconditionError, ValidationError
from symba.finvec import FinVec, ones
from symba.spaces import (
    ExponentSeq,
    SpaceSpec,
    WeightSeq,
    dual_norm,
    fundamental_functions,
    fundamental_table,
    lorentz_dual_norm,
    lorentz_predual_norm,
    luxemburg_norm,
    modular_value,
    norm,
    orlicz_inverse,
)

from conftest import finvecs

H = WeightSeq.harmonic()


# --- examples ---------------------------------------------------------------

def test_lorentz_dual_examples():
    assert lorentz_dual_norm(FinVec({"a": 1}), H) == 1
    assert lorentz_dual_norm(FinVec({"a": 2, "b": 1}), H) == Fraction(5, 2)
    assert lorentz_dual_norm(FinVec({"a": 1, "b": 1, "c": 1}), H) == Fraction(11, 6)


def test_lorentz_predual_examples():
    assert lorentz_predual_norm(FinVec({"a": 1}), H) == 1
    assert lorentz_predual_norm(FinVec({"a": 1, "b": 1, "c": 1}), H) == Fraction(18, 11)
    x = FinVec({"a": 1, "b": Fraction(1, 2), "c": Fraction(1, 3)})
    assert lorentz_predual_norm(x, H) == 1
    assert lorentz_predual_norm(FinVec(), H) == 0


def test_modular_examples():
    nak = SpaceSpec.nakano(ExponentSeq("linear"))
    half = Fraction(1, 2)
    assert modular_value(FinVec({"a": half, "b": half}), nak, 1) == Fraction(3, 4)
    assert modular_value(FinVec({"a": 2}), SpaceSpec.nakano(), 1) == math.inf
    assert modular_value(FinVec(), nak, 1) == 0


def test_luxemburg_examples():
    sq = SpaceSpec.orlicz(orlicz.power(2))
    assert luxemburg_norm(FinVec({"a": 3, "b": 4}), sq) == pytest.approx(5, rel=1e-12)
    lin = SpaceSpec.orlicz(orlicz.power(1))
    assert luxemburg_norm(FinVec({"a": 1, "b": 2, "c": 3}), lin) == pytest.approx(6, rel=1e-12)
    cube = SpaceSpec.orlicz(orlicz.power(3))
    assert luxemburg_norm(FinVec({"a": 2, "b": 2}), cube) == pytest.approx(16 ** (1 / 3), rel=1e-12)
    assert luxemburg_norm(FinVec(), cube) == 0


def test_orlicz_inverse_examples():
    assert orlicz_inverse(orlicz.power(2), 0.25) == pytest.approx(0.5)
    M = orlicz.exp_reciprocal()
    assert orlicz_inverse(M, 1 / 50) == pytest.approx(1 / math.log(50), rel=1e-14)
    L = orlicz.leung()
    assert orlicz_inverse(L, L(2.0 ** -3)) == pytest.approx(2.0 ** -3, rel=1e-12)


def test_fundamental_examples():
    assert fundamental_functions(SpaceSpec.lorentz_predual(), 3) == (Fraction(18, 11), Fraction(11, 6))
    lam, mu = fundamental_functions(SpaceSpec.orlicz(orlicz.power(2)), 4)
    assert lam == pytest.approx(2) and mu == pytest.approx(2)
    assert fundamental_functions(SpaceSpec.counting(), 7) == (1, 7)


# --- Nakano modular: assignment supremum -------------------------------------

def _brute_modular(ratios, p: ExponentSeq):
    """Supremum over injective maps of the ratios into positions 1..m+2."""
    m = len(ratios)
    exps = p.exponents(m + 2)
    best = 0.0
    for pos in itertools.permutations(range(m + 2), m):
        best = max(best, sum(float(r) ** exps[k] for r, k in zip(ratios, pos)))
    return best


def test_sorted_pairing_is_not_optimal():
    # the largest ratio with the smallest exponent gives 1 + 1/4, the swap gives 1 + 1/2
    x = FinVec({"a": 1, "b": Fraction(1, 2)})
    val = modular_value(x, SpaceSpec.nakano(ExponentSeq("linear")), 1)
    assert val == Fraction(3, 2)


@pytest.mark.parametrize("rule", ["linear", "loglog"])
def test_nakano_modular_matches_brute_force(rule):
    rng = random.Random(7)
    p = ExponentSeq(rule)
    spec = SpaceSpec.nakano(p)
    for _ in range(60):
        m = rng.randint(1, 5)
        ratios = [Fraction(rng.randint(1, 20), 20) for _ in range(m)]
        x = FinVec({f"e{i}": r for i, r in enumerate(ratios)})
        got = float(modular_value(x, spec, 1))
        assert got == pytest.approx(_brute_modular(ratios, p), rel=1e-12)


def test_nakano_bounded_exponents_above_one():
    p = ExponentSeq("explicit", prefix=(1, 2, 3), sup_decl=3)
    spec = SpaceSpec.nakano(p)
    x = FinVec({"a": 2, "b": Fraction(1, 2)})
    # the ratio above 1 takes the supremum exponent, the other the smallest
    assert modular_value(x, spec, 1) == pytest.approx(8 + 0.5)


# --- invariants ---------------------------------------------------------------

ALL_SPECS = [
    SpaceSpec.lorentz_predual(),
    SpaceSpec.lorentz_dual(),
    SpaceSpec.counting(),
    SpaceSpec.orlicz(orlicz.power(2)),
    SpaceSpec.orlicz(orlicz.exp_reciprocal()),
    SpaceSpec.nakano(),
]


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.variant + str(s.M.kind if s.M else ""))
def test_lambda_mu_identity_and_monotone(spec):
    lams, mus = fundamental_table(spec, 120)
    for n in range(1, 121):
        if spec.exact:
            assert lams[n] * mus[n] == n
        else:
            assert lams[n] * mus[n] == pytest.approx(n, rel=1e-10)
    assert all(b >= a for a, b in zip(lams[1:], lams[2:]))
    assert all(b >= a for a, b in zip(mus[1:], mus[2:]))


def _permute_and_flip(x: FinVec, seed: int) -> FinVec:
    rng = random.Random(seed)
    labels = list(x)
    rng.shuffle(labels)
    return FinVec({f"z{i}": (x[k] if rng.random() < 0.5 else -x[k]) for i, k in enumerate(labels)})


@given(finvecs(max_size=8), st.integers(0, 10 ** 6))
def test_symmetry_exact(x, seed):
    y = _permute_and_flip(x, seed)
    for spec in ALL_SPECS[:3]:
        assert norm(x, spec) == norm(y, spec)
        assert dual_norm(x, spec) == dual_norm(y, spec)


@given(finvecs(max_size=6, min_size=1), st.integers(0, 10 ** 6))
def test_symmetry_float_spaces(x, seed):
    y = _permute_and_flip(x, seed)
    for spec in ALL_SPECS[3:]:
        assert norm(x, spec) == norm(y, spec)


@given(finvecs(max_size=6, min_size=1), st.lists(st.fractions(0, 3), min_size=6, max_size=6))
def test_lattice_monotone(x, bumps):
    y = FinVec({k: abs(v) + bumps[i] for i, (k, v) in enumerate(x.items())})
    for spec in ALL_SPECS:
        nx, ny = norm(x, spec), norm(y, spec)
        if spec.exact:
            assert nx <= ny
        else:
            assert nx <= ny * (1 + 1e-11)


@given(finvecs(max_size=6, min_size=1))
def test_luxemburg_consistency(x):
    for spec in ALL_SPECS[3:]:
        r = luxemburg_norm(x, spec)
        assert 1 - 1e-9 <= modular_value(x, spec, r) <= 1 + 1e-9


@given(finvecs(max_size=6, min_size=1))
def test_constant_weights_degenerate(x):
    C = WeightSeq.constant()
    assert lorentz_dual_norm(x, C) == x.l1()
    # brute force over all subsets: largest average of |x| over a subset
    vals = x.abs_values()
    brute = max(sum(s) / len(s) for r in range(1, len(vals) + 1)
                for s in itertools.combinations(vals, r))
    assert lorentz_predual_norm(x, C) == brute == x.linf()


@given(finvecs(max_size=8))
def test_lorentz_duality_bound(x):
    # |<f, x>| <= ||f||_dual ||x||_predual with f = sign(x)
    f = FinVec({k: 1 for k in x})
    pairing = sum((abs(v) for v in x.values()), Fraction(0))
    assert pairing <= lorentz_dual_norm(f, H) * lorentz_predual_norm(x, H)


# --- parameters and serialization ---------------------------------------------

def test_explicit_weights_normalized_and_horizon():
    w = WeightSeq.explicit(["4", "2", "1"])
    assert [w.w(n) for n in (1, 2, 3)] == [1, Fraction(1, 2), Fraction(1, 4)]
    with pytest.raises(HorizonError):
        w.w(4)
    with pytest.raises(ValidationError):
        WeightSeq.explicit([1, 2])


def test_exponent_validation():
    with pytest.raises(ValidationError):
        ExponentSeq("explicit", prefix=(Fraction(1, 2),))
    with pytest.raises(ValidationError):
        ExponentSeq("explicit", prefix=(2, 1))
    p = ExponentSeq("loglog")
    assert p.p(1) == 1.0
    assert not p.bounded


def test_space_json_round_trip():
    for spec in ALL_SPECS + [SpaceSpec.lorentz_predual(WeightSeq.power(2)),
                             SpaceSpec.nakano(ExponentSeq("constant", value=3.0))]:
        back = SpaceSpec.from_json(spec.to_json())
        assert back.to_json() == spec.to_json()


def test_spec_json_schema_examples():
    SpaceSpec.from_json({"space": "lorentz_predual", "weights": {"kind": "harmonic"}})
    s = SpaceSpec.from_json({"space": "orlicz", "M": {"kind": "exp_reciprocal", "t_max": 0.5}})
    assert s.metadata()["orlicz_extension"] == "affine"
    SpaceSpec.from_json({"space": "nakano", "p": {"kind": "loglog", "prefix": []}})
    with pytest.raises(ValidationError):
        SpaceSpec.from_json({"space": "banach"})


def test_bracket_failure_on_degenerate_scale():
    steep = orlicz.piecewise_linear([(0, 0), (1, 1e30)])
    with pytest.raises(BracketError):
        luxemburg_norm(FinVec({"a": 1}), SpaceSpec.orlicz(steep))


def test_modular_needs_positive_rho():
    with pytest.raises(PreconditionError):
        modular_value(FinVec({"a": 1}), SpaceSpec.nakano(), 0)


def test_float_mode_lorentz():
    spec = SpaceSpec.lorentz_predual(mode="float")
    v = norm(ones(3), spec)
    assert isinstance(v, float) and v == pytest.approx(18 / 11)
