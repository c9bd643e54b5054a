"""Shared hypothesis strategies for algebra elements and operators."""

from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from opident.diffalg import PRESETS, FuncElem
from opident.exactnum import LambdaPoly
from opident.opring import OperatorElem

# exact-arithmetic examples are chunky but bounded; a wall-clock deadline
# only adds flakiness on slow machines
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

small_rationals = st.builds(
    Fraction,
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=1, max_value=4),
)

lambda_polys = st.builds(
    LambdaPoly, st.lists(small_rationals, min_size=0, max_size=3)
)

preset_names = st.sampled_from(sorted(PRESETS))


def func_elems(sig, max_terms=3, max_exp=2):
    monomials = st.tuples(
        *([st.integers(min_value=0, max_value=max_exp)] * len(sig.names))
    )
    return st.builds(
        lambda d: FuncElem(sig, d),
        st.dictionaries(monomials, lambda_polys, max_size=max_terms),
    )


def operator_elems(sig, max_order=2):
    return st.builds(
        lambda cs: OperatorElem(sig, cs),
        st.lists(func_elems(sig), min_size=0, max_size=max_order + 1),
    )
