"""Shared hypothesis strategies."""

from hypothesis import strategies as st

nonzero = st.integers(-9, 9).filter(bool)
cf_terms = st.lists(nonzero, min_size=1, max_size=12)
even_nonzero = st.sampled_from([-8, -6, -4, -2, 2, 4, 6, 8])


@st.composite
def strict_even(draw, max_len=9):
    n = draw(st.sampled_from([k for k in range(1, max_len + 1, 2)]))
    return tuple(draw(even_nonzero) for _ in range(n))
