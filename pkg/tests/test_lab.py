import itertools
from fractions import Fraction

import pytest

from frobx.acceptance import fermat, plane, quadric_cone
from frobx.graded import NEG_INF, h0_summary, length_of_quotient
from frobx.ideals import (
    QuotientPresentation,
    frobenius_power,
    ordinary_power,
    saturate_irrelevant,
    torsion_exponent,
)
from frobx.lab import (
    TrickElementError,
    ann_exponent,
    annihilator,
    brenner_bound,
    ceil_div,
    chudnovsky_check,
    eghk_estimate,
    element_trick_length,
    fekete_violations,
    find_trick_element,
    frobenius_closure_degree_check,
    frobenius_closure_probe,
    frobenius_profile,
    powers_profile,
    symbolic_power,
    tight_closure_witness_search,
)
from frobx.poly import Polynomial
from frobx.ring import Ring


def degree_monomials(ring, d):
    for combo in itertools.combinations_with_replacement(range(ring.nvars), d):
        exps = [0] * ring.nvars
        for i in combo:
            exps[i] += 1
        yield Polynomial.monomial(ring, tuple(exps))


def kills(J, sat, d):
    """Does every degree-d monomial push every H^0 generator into J?"""
    gens = [g for g in sat.basis.elements if not J.contains(g)]
    return all(J.contains(m * g) for m in degree_monomials(J.ring, d) for g in gens)


def assert_exact_ann(J):
    sat, _ = saturate_irrelevant(J)
    a = ann_exponent(J)
    if sat == J:
        assert a == 0
        return
    assert a >= 1
    assert kills(J, sat, a)
    assert not kills(J, sat, a - 1)
    assert a == torsion_exponent(J, sat)


def ex_two_generated(p=3, n=3):
    return plane(p).ideal(["X*Y", f"X^{n}"])


# annihilation exponents ---------------------------------------------------------

@pytest.mark.parametrize("e", [1, 2, 3])
def test_fermat_ann_exponent(e):
    I = fermat(2).ideal(["x", "y"])
    J = frobenius_power(I, e)
    assert ann_exponent(J) == 2 * 2**e + 1


@pytest.mark.parametrize("e", [1, 2])
def test_cone_ann_exponent(e):
    I = quadric_cone(5).ideal(["x", "y"])
    assert ann_exponent(frobenius_power(I, e)) == 2 * 5**e


def test_saturated_ann_exponent_zero():
    P = quadric_cone(5).ideal(["x", "z"])
    assert ann_exponent(P) == 0
    assert annihilator(P).is_unit()


EXACTNESS_CASES = [
    ("fermat", lambda: frobenius_power(fermat(2).ideal(["x", "y"]), 1)),
    ("fermat squares", lambda: frobenius_power(fermat(2).ideal(["x^2", "y^2"]), 1)),
    ("cone F5", lambda: frobenius_power(quadric_cone(5).ideal(["x", "y"]), 1)),
    ("cone p^4", lambda: ordinary_power(quadric_cone(101).ideal(["x", "z"]), 4)),
    ("cone p^5", lambda: ordinary_power(quadric_cone(101).ideal(["x", "z"]), 5)),
    ("XY,X^3", lambda: frobenius_power(ex_two_generated(), 1)),
    ("m in F3[x,y]", lambda: frobenius_power(plane(3, ("x", "y")).ideal(["x", "y"]), 1)),
    (
        "x0^2,x1^2,x0x2+x1x3",
        lambda: frobenius_power(
            QuotientPresentation(Ring(2, ("x0", "x1", "x2", "x3"))).ideal(["x0^2", "x1^2", "x0*x2+x1*x3"]), 1
        ),
    ),
]


@pytest.mark.parametrize("name,make", EXACTNESS_CASES, ids=[c[0] for c in EXACTNESS_CASES])
def test_ann_exponent_exact(name, make):
    assert_exact_ann(make())


# Frobenius profiles -----------------------------------------------------------------

def test_profile_two_generated():
    prof = frobenius_profile(ex_two_generated(), 3)
    for r in prof.rows:
        assert r.h0_length == 2 * r.q**2
        assert r.ceil_ratio == 3
        assert r.ratio_hk == 2
        assert r.v is None and r.ratio_v is None
    assert prof.b_hat == prof.c_hat == 3
    est = eghk_estimate(prof)
    assert est.flag == "exact" and est.value == 2 and set(est.ratios) == {2}


def test_profile_fermat():
    prof = frobenius_profile(fermat(2).ideal(["x", "y"]), 3)
    assert [r.ceil_ratio for r in prof.rows] == [3, 3, 3]
    assert prof.b_hat == prof.c_hat == 3
    assert prof.dim == 2


def test_profile_maximal_ideal_thresholds():
    prof = frobenius_profile(plane(3, ("x", "y")).ideal(["x", "y"]), 3)
    for r in prof.rows:
        assert r.v == 2 * (r.q - 1)
        assert r.ratio_v == Fraction(2 * (r.q - 1), r.q)
    assert prof.rows[-1].ratio_v > Fraction(19, 10)


def test_profile_invariants():
    for I in (fermat(2).ideal(["x", "y"]), ex_two_generated(), quadric_cone(2).ideal(["x", "z"])):
        prof = frobenius_profile(I, 2)
        assert prof.b_hat >= prof.c_hat
        for r in prof.rows:
            assert (r.ann_exp == 0) == (r.h0_length == 0)
            assert (r.h0_end is NEG_INF) == (r.h0_length == 0)


def test_zero_ideal_ratios():
    R = quadric_cone(3)
    prof = frobenius_profile(R.ideal([]), 2)
    assert [r.ratio_hk for r in prof.rows] == [0, 0]
    assert eghk_estimate(prof).value == 0


def test_eghk_needs_two_rows():
    prof = frobenius_profile(ex_two_generated(), 1)
    with pytest.raises(ValueError):
        eghk_estimate(prof)


def test_eghk_four_variable_example():
    R = QuotientPresentation(Ring(2, ("x0", "x1", "x2", "x3")))
    prof = frobenius_profile(R.ideal(["x0^2", "x1^2", "x0*x2+x1*x3"]), 2)
    assert prof.rows[0].ratio_hk == 1
    assert prof.rows[1].h0_length == 2**4 * prof.rows[0].h0_length
    assert eghk_estimate(prof).flag == "exact"


def test_profile_threads_invariance():
    I = fermat(2).ideal(["x", "y"])
    assert frobenius_profile(I, 3, threads=2).rows == frobenius_profile(I, 3).rows


def test_profile_rejects_bad_range():
    with pytest.raises(ValueError):
        frobenius_profile(ex_two_generated(), 1, e_min=2)


# properties ---------------------------------------------------------------------------------

@pytest.mark.parametrize(
    "I",
    [fermat(2).ideal(["x", "y"]), ex_two_generated(), quadric_cone(2).ideal(["x", "z"])],
    ids=["fermat", "XY,X^3", "cone"],
)
def test_transport_identity(I):
    base = frobenius_profile(I, 3)
    J = frobenius_power(I, 1)
    shifted = frobenius_profile(J, 2)
    for r, s in zip(base.rows[1:], shifted.rows):
        assert (r.h0_length, r.h0_end, r.ann_exp) == (s.h0_length, s.h0_end, s.ann_exp)


@pytest.mark.parametrize("I", [fermat(2).ideal(["x", "y"]), plane(3, ("x", "y")).ideal(["x", "y"])])
def test_end_sandwich(I):
    for r in frobenius_profile(I, 3).rows:
        assert r.v >= r.h0_end


@pytest.mark.parametrize("e", [1, 2])
def test_product_transport_on_cone(e):
    R = quadric_cone(2)
    a = h0_summary(frobenius_power(R.ideal(["x", "z"]), e)).length
    b = h0_summary(frobenius_power(R.ideal(["x*y", "y*z"]), e)).length
    assert a == b


def test_polynomial_ring_scaling():
    prof = frobenius_profile(ex_two_generated(), 3)
    L = [r.h0_length for r in prof.rows]
    assert all(L[i + 1] == 3**2 * L[i] for i in range(len(L) - 1))


def test_bracket_squares_shift():
    R = fermat(2)
    I, J = R.ideal(["x", "y"]), R.ideal(["x^2", "y^2"])
    for e in (1, 2):
        assert frobenius_power(J, e) == frobenius_power(I, e + 1)
        assert ann_exponent(frobenius_power(J, e)) == ann_exponent(frobenius_power(I, e + 1))
    assert ann_exponent(frobenius_power(J, 1)) == 9
    assert ann_exponent(frobenius_power(J, 2)) == 17


# element trick ---------------------------------------------------------------------------------

def test_trick_cone_ordinary():
    P = quadric_cone(101).ideal(["x", "z"])
    assert element_trick_length(P, "y", "ordinary", 2) == 1
    assert h0_summary(ordinary_power(P, 2)).length == 1


@pytest.mark.parametrize("e", [1, 2])
def test_trick_two_generated(e):
    I = ex_two_generated()
    q = 3**e
    assert element_trick_length(I, "Y", "frobenius", e) == 2 * q * q


@pytest.mark.parametrize("s", ["x", "y", "z^2", "x*z"])
def test_trick_m_primary(s):
    # H^0 is all of R/I^[q]; the identity needs s^q to kill it
    I = fermat(2).ideal(["x", "y"])
    J = frobenius_power(I, 1)
    assert J.contains(I.presentation.parse(s).frobenius(1))
    assert element_trick_length(I, s, "frobenius", 1) == length_of_quotient(J)


def test_trick_m_primary_needs_killing_power():
    I = fermat(2).ideal(["x", "y"])
    assert element_trick_length(I, "z", "frobenius", 1) == 2 * 8 - 12


def test_trick_rejects_bad_elements():
    I = ex_two_generated()
    with pytest.raises(TrickElementError):
        element_trick_length(I, "X", "frobenius", 1)
    with pytest.raises(TrickElementError):
        element_trick_length(I, "X+1", "frobenius", 1)
    with pytest.raises(ValueError):
        element_trick_length(I, "Y", "sideways", 1)


def test_find_trick_element():
    assert str(find_trick_element(ex_two_generated())) == "Y"
    assert str(find_trick_element(quadric_cone(101).ideal(["x", "z"]))) == "y"
    with pytest.raises(TrickElementError):
        find_trick_element(fermat(2).ideal(["x", "y", "z"]))


@pytest.mark.parametrize(
    "I,es",
    [
        (ex_two_generated(), (1, 2, 3)),
        (quadric_cone(2).ideal(["x", "z"]), (1, 2, 3)),
        (quadric_cone(3).ideal(["x*y", "y*z"]), (1, 2)),
    ],
    ids=["XY,X^3", "cone F2", "cone yp F3"],
)
def test_trick_agrees_with_saturation(I, es):
    s = find_trick_element(I)
    for e in es:
        assert element_trick_length(I, s, "frobenius", e) == h0_summary(frobenius_power(I, e)).length


# powers and symbolic powers ------------------------------------------------------------------------

@pytest.fixture(scope="module")
def cone_powers():
    return powers_profile(quadric_cone(101).ideal(["x", "z"]), 8, symbolic=True)


def test_cone_alpha_pattern(cone_powers):
    assert [r.alpha_sat for r in cone_powers.rows] == [ceil_div(n, 2) for n in range(1, 9)]
    assert cone_powers.waldschmidt_upper == Fraction(1, 2)
    assert cone_powers.d_hat == 1
    assert not cone_powers.warnings
    assert all(r.ann_exp <= r.n for r in cone_powers.rows)


def test_fekete(cone_powers):
    assert fekete_violations(cone_powers) == []


def test_chudnovsky(cone_powers):
    flags = chudnovsky_check(cone_powers, 1, 1)
    assert flags[1] is False
    # a line in the plane: sat(I^n) = I^n, so alpha(I^(n)) = n alpha(I)
    S = QuotientPresentation(Ring(3, ("a", "b", "c")))
    prof = powers_profile(S.ideal(["a", "b"]), 3, symbolic=True)
    assert [r.alpha_sat for r in prof.rows] == [1, 2, 3]
    assert all(chudnovsky_check(prof, 1, 1))
    assert all(chudnovsky_check(prof, 1, 4))


def test_waldschmidt_lower_companion(cone_powers):
    assert cone_powers.waldschmidt_upper >= 1 - cone_powers.d_hat


def test_symbolic_warnings():
    prof = powers_profile(quadric_cone(5).ideal(["x", "y"]), 2, symbolic=True)
    assert any("dimension" in w for w in prof.warnings)


def test_symbolic_power_examples():
    R = quadric_cone(101)
    P = R.ideal(["x", "z"])
    assert symbolic_power(P, 1) == P
    assert symbolic_power(P, 2) == R.ideal(["x"])
    assert symbolic_power(P, 4) == R.ideal(["x^2"])
    # odd powers come out as x^n p
    assert symbolic_power(P, 3) == R.ideal(["x^2", "x*z"])
    with pytest.raises(ValueError):
        symbolic_power(R.ideal(["x", "y"]), 2)


@pytest.mark.xfail(strict=True, reason="xz lies in p^(3) but not in the claimed (x^2, z^3)")
def test_symbolic_power_claimed_odd_form():
    R = quadric_cone(101)
    assert symbolic_power(R.ideal(["x", "z"]), 3) == R.ideal(["x^2", "z^3"])


def test_xz_in_third_symbolic_power():
    R = quadric_cone(101)
    P3 = ordinary_power(R.ideal(["x", "z"]), 3)
    xz = R.parse("x*z")
    assert all(P3.contains(xz * v) for v in (R.parse("x"), R.parse("y"), R.parse("z")))
    assert not P3.contains(xz)


# closure probes ------------------------------------------------------------------------------

def test_probe_trivial_memberships():
    I = fermat(2).ideal(["x", "y"])
    assert frobenius_closure_probe("x*z", I, 3).frobenius_member == 0
    assert frobenius_closure_probe("z^3", I, 3).frobenius_member == 0
    assert tight_closure_witness_search("x", I, 2, 2).tight_witness == Polynomial.one(I.ring)


def test_probe_z_squared_over_f2():
    I = fermat(2).ideal(["x", "y"])
    probe = frobenius_closure_probe("z^2", I, 4)
    assert probe.frobenius_member == 1
    assert probe.frobenius_text == "e=1"


@pytest.mark.xfail(strict=True, reason="over F_2, z^4 = zF + x^2 xz + y^2 yz puts z^2 in the Frobenius closure")
def test_probe_z_squared_claimed_f2():
    I = fermat(2).ideal(["x", "y"])
    assert frobenius_closure_probe("z^2", I, 4).frobenius_member is None


@pytest.mark.parametrize("p", [7, 13])
def test_probe_z_squared_p_one_mod_three(p):
    I = fermat(p).ideal(["x", "y"])
    probe = frobenius_closure_probe("z^2", I, 1 if p == 13 else 2)
    assert probe.frobenius_member is None
    assert probe.frobenius_text.startswith("not up to")
    tight = tight_closure_witness_search("z^2", I, 1, 1)
    assert str(tight.tight_witness) == "x"
    assert not frobenius_closure_degree_check(I, 2, 1)


def test_tight_witness_fermat():
    I = fermat(2).ideal(["x", "y"])
    report = tight_closure_witness_search("z^2", I, 4, 3)
    c = report.tight_witness
    assert c is not None and report.witness_verified_up_to == 3
    for e in (1, 2, 3):
        assert frobenius_power(I, e).contains(c * I.presentation.parse("z^2").frobenius(e))


def test_tight_search_exhausts_gracefully():
    I = fermat(7).ideal(["x", "y"])
    report = tight_closure_witness_search("z", I, 1, 1)
    assert report.tight_witness is None
    assert report.tight_text == "none found"


def test_degree_check():
    I = fermat(2).ideal(["x", "y"])
    assert frobenius_closure_degree_check(I, 3, 3)
    assert frobenius_closure_degree_check(fermat(2).unit_ideal(), 0, 1)
    with pytest.raises(ValueError):
        frobenius_closure_degree_check(quadric_cone(2).ideal(["x"]), 2, 1)


@pytest.mark.xfail(strict=True, reason="over F_2 every degree-2 monomial is already in the Frobenius closure")
def test_degree_check_claimed_c2():
    assert not frobenius_closure_degree_check(fermat(2).ideal(["x", "y"]), 2, 3)


def test_closure_rejects_inhomogeneous():
    I = fermat(2).ideal(["x", "y"])
    with pytest.raises(ValueError):
        frobenius_closure_probe("z+1", I, 1)
    with pytest.raises(ValueError):
        tight_closure_witness_search("z+1", I, 1, 1)


# closed-form bound ------------------------------------------------------------------------------

def test_brenner_bound():
    assert brenner_bound(3, 1, 1, 0) == (2, 1)
    for n in (2, 3, 5):
        assert brenner_bound(1, 2, n, -1) == (n + 1, -1)
    assert brenner_bound(4, 0, 0, Fraction(1, 3)) == (Fraction(1, 3), 2)
    with pytest.raises(ValueError):
        brenner_bound(0, 1, 1, 0)
