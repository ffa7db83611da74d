from hypothesis import strategies as st

from oracles import greedy_sidon_subset


@st.composite
def sidon_sets(draw, min_size=1, max_size=25, span=600):
    """Random Sidon sets: greedy filter of a random integer list, min 0."""
    xs = draw(st.lists(st.integers(0, span), min_size=min_size, max_size=3 * max_size))
    s = greedy_sidon_subset(xs)[:max_size]
    if len(s) < min_size:
        s = [0, 1, 3, 7, 12, 20][:max(min_size, 1)]
    return tuple(a - s[0] for a in s)
