import itertools

from hypothesis import strategies as st

from setlab import Universe


def all_membership_dicts(n):
    """Every membership assignment over n named elements, generated by
    taking the product of subsets per element (independent of the package's
    counter-based enumerator)."""
    names = [f"e{i}" for i in range(n)]
    subsets = [
        frozenset(combo)
        for k in range(n + 1)
        for combo in itertools.combinations(names, k)
    ]
    for rows in itertools.product(subsets, repeat=n):
        yield {name: set(row) for name, row in zip(names, rows)}


def to_universe(d):
    """Plain dict universe -> package Universe, elements in sorted order."""
    names = sorted(d)
    return Universe.from_extensions({name: sorted(d[name]) for name in names})


@st.composite
def universes(draw, max_n=4):
    n = draw(st.integers(min_value=0, max_value=max_n))
    names = tuple(f"e{i}" for i in range(n))
    masks = tuple(
        draw(st.integers(min_value=0, max_value=(1 << n) - 1)) for _ in range(n)
    )
    return Universe(names, masks)
