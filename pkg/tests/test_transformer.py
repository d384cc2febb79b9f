import random
from fractions import Fraction

from hypothesis import given, strategies as st

from occursat.formula import Formula, canonical
from occursat.oracle import brute_force_sat, random_cnf, random_mixed_cnf
from occursat.reconstruction import check_model, extend_model
from occursat.transformer import (
    degree_stats,
    eliminate_degree_two,
    reduce_degree,
    rep,
    split_occurrences,
)

u, a, b, c, d = 1, 2, 3, 4, 5


def test_rep():
    assert [rep(k) for k in range(6)] == [0, 0, 0, 1, 2, 3]


def test_degree_stats():
    st_ = degree_stats(Formula([(1, 2), (1, -2), (-1, 3)]))
    assert st_.max_degree == 3
    assert st_.avg_degree == Fraction(6, 3)
    assert st_.rep_total == 1


def test_single_chain_step():
    # (u or gamma) listed first so the two newest clauses carry alpha and beta
    f = Formula([(u, c), (u, a), (u, b), (-u, d)])
    mapping = {}
    assert split_occurrences(f, mapping) == 1
    (v,) = mapping[u]
    assert canonical(f.clause_list()) == canonical([(v, a), (v, b), (-v, u), (u, c), (-u, d)])


def test_majority_literal_is_split():
    f = Formula([(-u, a), (-u, b), (-u, c), (u, d)])
    mapping = {}
    split_occurrences(f, mapping)
    (v,) = mapping[u]
    assert any(set(cl) == {-v, -u} for cl in f.clause_list())
    assert f.max_degree() <= 3


def test_already_three_occur_is_identity():
    clauses = [(1, 2), (1, -2, 3), (-1, 3)]
    g, mapping = reduce_degree(Formula(clauses))
    assert mapping == {}
    assert g.clause_list() == clauses


def test_degree_two_variables_eliminated_first():
    f = Formula([(a, b), (-a, c), (b, c, d), (-b, d), (b, -d), (c, d)])
    eliminate_degree_two(f)
    assert all(k >= 3 for k in f.deg.values())


def test_max_degree_six_example():
    rng = random.Random(11)
    done = 0
    for seed in range(500):
        f = random_cnf(10, rng.randint(10, 25), 3, seed)
        if f.max_degree() != 6:
            continue
        g, _ = reduce_degree(f)
        assert g.max_degree() <= 3
        assert g.num_vars <= 40
        assert brute_force_sat(g, cap=60).is_sat == brute_force_sat(f).is_sat
        done += 1
    assert done >= 20


@given(st.integers(0, 10**6), st.integers(4, 14), st.integers(1, 4))
def test_bound_equisatisfiability_and_models(seed, n, k):
    f = random_mixed_cnf(n, 3 * n, 1, k + 1, seed)
    stats = degree_stats(f)
    g, mapping = reduce_degree(f)
    assert g.max_degree() <= 3
    if stats.max_degree >= 3:
        assert g.num_vars <= (stats.max_degree - 2) * f.num_vars
    res = brute_force_sat(g, cap=200)
    assert res.is_sat == brute_force_sat(f).is_sat
    if res.is_sat:
        assert check_model(f.clause_list(), extend_model(g.journal, res.model))
    for old, chain in mapping.items():
        assert all(v > old for v in chain)


@given(st.integers(0, 10**6), st.integers(4, 12))
def test_count_equals_rep_total_of_chained_formula(seed, n):
    f = random_mixed_cnf(n, 3 * n, 2, 4, seed)
    if f.max_degree() <= 3:
        return
    g = f.copy()
    reduced = eliminate_degree_two(g)
    split_occurrences(g)
    if not g.has_empty_clause():
        assert g.num_vars == reduced.rep_total
