from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import universes

from setlab import (
    ASCENDING,
    LENGTH_CAP,
    SUCCESSOR,
    Unique,
    Universe,
    canonical_form,
    check_axiom,
    comprehension_witness,
    is_lower,
    is_strictly_russellian,
    is_upper,
    parse_universe,
    predicate,
    print_universe,
    russell_witness,
    trace_chain,
    verify_lemma_suite,
)


@given(universes())
def test_coextensive_is_an_equivalence(u):
    for x in u.names:
        assert u.coextensive(x, x)
        for y in u.names:
            assert u.coextensive(x, y) == u.coextensive(y, x)
            for z in u.names:
                if u.coextensive(x, y) and u.coextensive(y, z):
                    assert u.coextensive(x, z)


@given(universes())
def test_unique_successor_has_the_right_extension(u):
    for x in u.names:
        result = u.successor_in(x)
        if isinstance(result, Unique):
            assert u.extension(result.id) == u.extension(x) | {x}


@given(universes())
def test_unique_predecessor_never_contains_the_start(u):
    for x in u.names:
        result = u.predecessor_in(x)
        if isinstance(result, Unique):
            assert u.extension(result.id) == u.extension(x) - {x}
            assert not u.is_member(x, result.id)


@given(universes())
def test_degeneracy(u):
    for x in u.names:
        ext = u.extension(x)
        assert (ext | {x} == ext) == u.self_membered(x)
        assert (ext - {x} == ext) == (not u.self_membered(x))


@given(universes())
def test_sym_diff_singleton_matches_the_lookup_targets(u):
    for x in u.names:
        diff = u.sym_diff_singleton(x)
        if u.self_membered(x):
            assert diff == u.extension(x) - {x}
        else:
            assert diff == u.extension(x) | {x}


@given(universes())
def test_degenerate_lookups_stay_coextensive(u):
    for x in u.names:
        if not u.self_membered(x):
            succ = u.successor_in(x)
            if isinstance(succ, Unique) and is_lower(u, x):
                assert u.extension(succ.id) == u.sym_diff_singleton(x)
            pred = u.predecessor_in(x)
            if isinstance(pred, Unique):
                assert u.coextensive(pred.id, x)


@given(universes())
def test_lowers_and_uppers_never_meet(u):
    for x in u.names:
        lower = is_lower(u, x)
        upper = is_upper(u, x)
        assert not (lower and upper)
        if lower:
            assert not u.self_membered(x)
        if upper:
            assert u.self_membered(x)
        assert not is_strictly_russellian(u, x)


@given(universes())
def test_russell_witness_agrees_with_comprehension(u):
    witness = russell_witness(u)
    assert witness is None
    assert comprehension_witness(u, predicate(u, "nonself")) == witness
    assert all(not is_strictly_russellian(u, x) for x in u.names)


@given(universes())
def test_lemma_suite_never_reports_a_violation(u):
    assert verify_lemma_suite(u).ok


@given(universes(), st.randoms())
def test_canonical_form_is_permutation_invariant(u, rng):
    order = list(u.names)
    rng.shuffle(order)
    shuffled = Universe.from_extensions(
        {name: sorted(u.extension(name)) for name in order}
    )
    assert canonical_form(shuffled) == canonical_form(u)


@given(universes())
def test_ascending_chains_from_lowers_strictly_grow(u):
    for x in u.names:
        if not is_lower(u, x):
            continue
        chain = trace_chain(u, x, ASCENDING, 8)
        sizes = [len(u.extension(node)) for node in chain.nodes]
        assert sizes == sorted(set(sizes))


@given(universes())
def test_successor_models_with_a_lower_never_cycle(u):
    if not check_axiom(u, SUCCESSOR).satisfied:
        return
    for x in u.names:
        if is_lower(u, x):
            chain = trace_chain(u, x, ASCENDING, len(u.names) + 1)
            assert len(chain.nodes) == len(set(chain.nodes))
            assert chain.terminated_by == LENGTH_CAP


@settings(max_examples=50)
@given(universes())
def test_print_parse_round_trip(u):
    again = parse_universe(print_universe(u))
    assert canonical_form(again) == canonical_form(u)
    assert {x: u.extension(x) for x in u.names} == {
        x: again.extension(x) for x in again.names
    }
