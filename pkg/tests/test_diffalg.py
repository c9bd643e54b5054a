from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opident.diffalg import (
    NILP2,
    ORDER1,
    ORDER2,
    ORDER3,
    PRESETS,
    SPLIT,
    WEYL_X,
    AlgebraSignature,
    SignatureMismatch,
    decay_signature,
    order_signature,
)
from opident.exactnum import LambdaPoly

from conftest import func_elems, preset_names


LAM = LambdaPoly.lam()


def test_preset_names_are_exactly_the_documented_six():
    assert set(PRESETS) == {"ORDER1", "ORDER2", "ORDER3", "WEYL_X", "SPLIT", "NILP2"}


def test_preset_derivation_tables():
    u = ORDER1.gen("u")
    assert u.derive() == LAM * u

    u, v = ORDER2.gen("u"), ORDER2.gen("v")
    assert u.derive() == v
    assert v.derive() == LAM ** 2 * u

    u, v, w = ORDER3.gen("u"), ORDER3.gen("v"), ORDER3.gen("w")
    assert u.derive() == v and v.derive() == w
    assert w.derive() == LAM ** 3 * u

    x = WEYL_X.gen("x")
    assert x.derive() == WEYL_X.one()

    v, w = SPLIT.gen("v"), SPLIT.gen("w")
    assert v.derive() == -LAM * v
    assert w.derive() == LAM * w

    u, v = NILP2.gen("u"), NILP2.gen("v")
    assert u.derive() == v
    assert not v.derive()


def test_higher_derivatives_satisfy_the_defining_equations():
    u = ORDER2.gen("u")
    assert u.derive(2) == LAM ** 2 * u
    u3 = ORDER3.gen("u")
    assert u3.derive(3) == LAM ** 3 * u3
    assert not NILP2.gen("u").derive(2)


def test_split_decomposition_solves_order2():
    u = SPLIT.gen("v") + SPLIT.gen("w")
    assert u.derive(2) == LAM ** 2 * u


def test_decay_signature():
    v = decay_signature().gen("v")
    assert v.derive() == -LAM * v


def test_mul_examples():
    u, v = ORDER2.gen("u"), ORDER2.gen("v")
    assert (u + v) * (u + v) == u ** 2 + 2 * u * v + v ** 2
    assert (LAM * u) * (LAM * u) == LAM ** 2 * u ** 2
    assert not u * ORDER2.zero()


def test_derive_examples():
    # Leibniz with Du = v, Dv = L^2 u
    u, v = ORDER2.gen("u"), ORDER2.gen("v")
    assert (u * v).derive() == v ** 2 + LAM ** 2 * u ** 2
    x = WEYL_X.gen("x")
    assert (x ** 3).derive() == 3 * x ** 2
    assert not WEYL_X.scalar(5).derive()


def test_pow_examples():
    u = ORDER1.gen("u")
    assert u ** 0 == ORDER1.one()
    assert u ** 3 == u * u * u
    assert (u ** 2).derive() == 2 * LAM * u ** 2


def test_signature_mismatch_raises():
    with pytest.raises(SignatureMismatch):
        ORDER1.gen("u") * ORDER2.gen("u")
    with pytest.raises(SignatureMismatch):
        ORDER1.gen("u") + ORDER2.gen("u")


def test_unknown_generator():
    with pytest.raises(KeyError):
        ORDER1.gen("x")


def test_signature_validates_images():
    with pytest.raises(ValueError):
        AlgebraSignature(("a",), {"a": {(1, 0): LambdaPoly.one()}})
    with pytest.raises(ValueError):
        AlgebraSignature(("a",), {})


def test_substitute_lambda():
    u, v = ORDER2.gen("u"), ORDER2.gen("v")
    e = LAM ** 2 * u + v - LAM * ORDER2.one()
    assert e.substitute_lambda(0) == v
    assert e.substitute_lambda(1) == u + v - ORDER2.one()


def test_map_to_matching_names():
    e = ORDER2.gen("u") * ORDER2.gen("v")
    mapped = e.map_to(NILP2)
    assert mapped.sig == NILP2
    assert mapped.terms == e.terms
    with pytest.raises(SignatureMismatch):
        e.map_to(SPLIT)


def test_order_signature_generic():
    assert order_signature(1) == ORDER1
    assert order_signature(2) == ORDER2
    assert order_signature(3) == ORDER3
    sig4 = order_signature(4)
    u = sig4.gen("u")
    assert u.derive(4) == LambdaPoly.lam(4) * u
    with pytest.raises(ValueError):
        order_signature(0)


@settings(max_examples=60)
@given(preset_names, st.data())
def test_leibniz_rule(name, data):
    sig = PRESETS[name]
    a = data.draw(func_elems(sig))
    b = data.draw(func_elems(sig))
    assert (a * b).derive() == a.derive() * b + a * b.derive()


@settings(max_examples=60)
@given(preset_names, st.data())
def test_commutative_ring_axioms(name, data):
    sig = PRESETS[name]
    a = data.draw(func_elems(sig))
    b = data.draw(func_elems(sig))
    c = data.draw(func_elems(sig))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == sig.zero()
    assert a * sig.one() == a


def test_rendering_sorted_graded_lex():
    u, v = ORDER2.gen("u"), ORDER2.gen("v")
    e = v - LAM * u
    assert str(e) == "-L*u + v"
    assert str(ORDER2.zero()) == "0"
    assert str(u ** 2 - ORDER2.scalar(Fraction(1, 2))) == "u^2 - 1/2"
