"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from grossopt.grossone import normalize

# dyadic digits k/4: sums and triple products stay exact in doubles
dyadic = st.integers(-64, 64).map(lambda k: k / 4.0)
positive_dyadic = st.integers(1, 64).map(lambda k: k / 4.0)
powers = st.integers(-8, 8)

gross_numbers = st.lists(st.tuples(powers, dyadic), max_size=3).map(normalize)
positive_monomials = st.tuples(powers, positive_dyadic).map(lambda t: normalize([t]))
