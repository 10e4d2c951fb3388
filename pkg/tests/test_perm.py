from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SymPerm

from cellstrat.errors import DimensionError, ParseError
from cellstrat.perm import (
    Composition,
    Permutation,
    Tabloid,
    all_permutations,
    coxeter_generators,
    coxeter_word,
    generate_group,
    partitions_of,
    tabloids,
    young_subgroup_elements,
)

from conftest import permutations


def test_cycle_notation_round_trip():
    p = Permutation.parse("(2 8 6 4)(3 9 7 5)", 9)
    assert str(p) == "(2 8 6 4)(3 9 7 5)"
    assert Permutation.parse(str(p), 9) == p
    assert Permutation.parse("(1,2,3)", 3) == Permutation.parse("(1 2 3)", 3)
    assert Permutation.parse("()", 4).is_identity()
    assert str(Permutation.identity(3)) == "()"


@pytest.mark.parametrize("bad", ["(1 2", "1 2", "(1 1)", "(0 1)", "(1 5)"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        Permutation.parse(bad, 4)


def test_product_is_left_to_right():
    a = Permutation.parse("(1 2)", 3)
    b = Permutation.parse("(2 3)", 3)
    # apply a, then b
    assert (a * b)(1) == b(a(1)) == 3
    assert a * b == Permutation.parse("(1 3 2)", 3)


def test_degree_mismatch():
    with pytest.raises(DimensionError):
        Permutation.identity(2) * Permutation.identity(3)


@given(permutations(6), permutations(6), permutations(6))
def test_group_axioms(p, q, s):
    assert (p * q) * s == p * (q * s)
    assert p * p.inverse() == Permutation.identity(6)
    assert p.conjugate(q) == q * p * q.inverse()


@given(permutations(7), permutations(7))
def test_product_matches_sympy(p, q):
    # sympy composes left to right as well: (p*q)(i) = q(p(i))
    sp = SymPerm([i - 1 for i in p.images])
    sq = SymPerm([i - 1 for i in q.images])
    assert [i + 1 for i in (sp * sq).array_form] == list((p * q).images)


@given(permutations(6))
def test_coxeter_word(p):
    gens = coxeter_generators(6)
    acc = Permutation.identity(6)
    for a in coxeter_word(p):
        acc = acc * gens[a - 1]
    assert acc == p


@given(permutations(8))
def test_cycle_type_is_partition(p):
    ct = p.cycle_type()
    assert sum(ct) == 8 and list(ct) == sorted(ct, reverse=True)


def test_generate_group_orders():
    assert len(generate_group(coxeter_generators(4), 4)) == 24
    assert len(generate_group([], 3)) == 1


def test_partitions_order_and_counts():
    assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [len(partitions_of(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_composition_basics():
    lam = Composition.parse("7,2")
    assert lam.size == 9 and lam.young_order() == factorial(7) * 2
    assert lam.coset_count() == comb(9, 2) == 36
    assert [list(b) for b in lam.blocks()] == [list(range(1, 8)), [8, 9]]
    assert Composition((1, 2, 2)).partition() == (2, 2, 1)
    with pytest.raises(ParseError):
        Composition.parse("a,b")


def test_young_subgroup_elements():
    lam = Composition((2, 1, 2))
    elems = list(young_subgroup_elements(lam))
    assert len(set(elems)) == 4
    assert all(Tabloid.of(g, lam) == Tabloid.of(Permutation.identity(5), lam) for g in elems)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_tabloids_count_and_order(parts):
    lam = Composition(tuple(parts))
    ts = tabloids(lam)
    assert len(ts) == lam.coset_count() == len(set(ts))
    assert ts == sorted(ts)
    assert ts[0] == Tabloid(lam.row_of())


def test_tabloid_encodes_left_cosets():
    lam = Composition((2, 2))
    ident = Tabloid(lam.row_of())
    seen = {}
    for g in all_permutations(4):
        seen.setdefault(Tabloid.of(g, lam), set()).add(g)
    assert len(seen) == 6
    for t, coset in seen.items():
        w = t.witness(lam)
        assert w in coset
        assert ident.act(w) == t
        for g in coset:
            for h in young_subgroup_elements(lam):
                assert Tabloid.of(g * h, lam) == t


@given(permutations(5), permutations(5))
def test_tabloid_action_is_left_action(g, h):
    lam = Composition((3, 2))
    t = Tabloid.of(Permutation.identity(5), lam).act(Permutation.parse("(1 4)", 5))
    assert t.act(h).act(g) == t.act(g * h)
    # the coset of x is acted on by left multiplication
    x = t.witness(lam)
    assert Tabloid.of(x, lam).act(g) == Tabloid.of(g * x, lam)
