import random
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SymPerm
from sympy.combinatorics import PermutationGroup

from cellstrat.errors import NotInSubgroupError, NotYoungError, SizeLimitError
from cellstrat.partial import act, enumerate_Vnl, parse_partial
from cellstrat.perm import Composition, Permutation, Tabloid, all_permutations, generate_group, partitions_of, young_subgroup_elements
from cellstrat.symgroup import (
    cosets,
    double_coset_reps,
    image_young,
    intersection_with_conjugate,
    labelled_component,
    rho,
    stabilizer_product,
    young_subgroup_generators,
)

FLAGSHIP = parse_partial("L{1}L{2}L{3}L{4,5}L{6,7}U{8,9}")
LAM = Composition((7, 2))
PINNED_REPS = ["()", "(7 8)", "(6 8)(7 9)", "(5 8 6)(7 9)", "(3 8 7 6 5 4)", "(3 8 6 5 4)(7 9)", "(2 8 6 4)(3 9 7 5)"]


def sympy_order(gens, degree):
    if not gens:
        return 1
    return PermutationGroup([SymPerm([i - 1 for i in g.images]) for g in gens]).order()


def test_young_generators():
    assert young_subgroup_generators(Composition((1, 1, 1))) == []
    assert len(young_subgroup_generators(Composition((4,)))) == 3
    gens = young_subgroup_generators(LAM)
    assert [str(g) for g in gens] == ["(1 2)", "(2 3)", "(3 4)", "(4 5)", "(5 6)", "(6 7)", "(8 9)"]
    assert sympy_order(gens, 9) == 10080 == len(list(young_subgroup_elements(LAM)))


def test_flagship_stabilizer():
    H = stabilizer_product(FLAGSHIP, 9)
    assert H.order == 96 == sympy_order(list(H.generators), 9)
    assert H.labelled_blocks == ((1,), (2,), (3,), (4, 5), (6, 7))
    assert all(act(FLAGSHIP, g) == FLAGSHIP for g in H.generators)


def test_distinct_sizes_have_only_within_part_generators():
    v = parse_partial("L{1}L{2,3}L{4,5,6}")
    H = stabilizer_product(v, 6)
    assert all(len(g.cycles()) == 1 and len(g.cycles()[0]) == 2 for g in H.generators)
    assert H.order == 1 * 2 * 6


@pytest.mark.parametrize("r,l", [(l, l) for l in range(1, 6)] + [(5, 4), (6, 5)])
def test_stabilizer_exhaustive(r, l):
    group = list(all_permutations(l))
    for n in range(l + 1):
        for v in enumerate_Vnl(r, n, l):
            H = stabilizer_product(v, l)
            brute = {g for g in group if act(v, g) == v}
            assert H.order == len(brute)
            assert generate_group(H.generators, l) == brute
            assert all(H.contains(g) == (g in brute) for g in group)


def test_generator_images():
    H = stabilizer_product(FLAGSHIP, 9)
    gens = ["(1,2,3)", "(1,2)", "(4,5)", "(6,7)", "(4,6)(5,7)", "(8,9)"]
    images = [str(rho(Permutation.parse(g, 9), FLAGSHIP)) for g in gens]
    assert images == ["(1 2 3)", "(1 2)", "()", "()", "(4 5)", "()"]
    assert H.rho(Permutation.identity(9)) == Permutation.identity(5)


def test_rho_outside_stabilizer():
    with pytest.raises(NotInSubgroupError):
        rho(Permutation.parse("(3 4)", 9), FLAGSHIP)


@settings(max_examples=50)
@given(st.randoms(use_true_random=False))
def test_rho_homomorphism(rnd):
    H = stabilizer_product(FLAGSHIP, 9)

    def sample():
        g = Permutation.identity(9)
        for _ in range(rnd.randrange(8)):
            g = g * rnd.choice(H.generators)
        return g

    a, b = sample(), sample()
    assert H.rho(a * b) == H.rho(a) * H.rho(b)
    assert H.rho(a) == H.rho_direct(a)


def test_rho_kernel_contains_within_part_generators():
    H = stabilizer_product(FLAGSHIP, 9)
    for g in H.generators:
        moved = {p for c in g.cycles() for p in c}
        within = any(moved <= set(b) for b in H.labelled_blocks + H.unlabelled_blocks)
        if within:
            assert H.rho(g).is_identity()


def test_cosets():
    assert len(cosets(4, Composition((4,)))) == 1
    assert len(cosets(9, LAM)) == 36
    assert len(cosets(4, Composition((1, 1, 1, 1)))) == 24
    with pytest.raises(SizeLimitError):
        cosets(9, LAM, cap=10)


def test_flagship_double_cosets():
    H = stabilizer_product(FLAGSHIP, 9)
    reps = double_coset_reps(H, 9, LAM)
    assert len(reps) == 7
    assert sum(size for _, size in reps) == 36
    assert [str(d.rep) for d in reps] == PINNED_REPS
    ident = Tabloid(LAM.row_of())
    for d in reps:
        assert ident.act(d.rep) == d.least


def test_transitive_case():
    v = parse_partial("L{1,2,3,4}")
    H = stabilizer_product(v, 4)
    assert len(double_coset_reps(H, 4, Composition((2, 2)))) == 1


def brute_double_cosets(H, l, lam):
    K = list(young_subgroup_elements(lam))
    Hs = generate_group(H.generators, l)
    remaining = set(all_permutations(l))
    out = []
    while remaining:
        g = min(remaining)
        dc = {h * g * k for h in Hs for k in K}
        remaining -= dc
        out.append(dc)
    return out


@pytest.mark.parametrize("l", [3, 4, 5])
def test_double_cosets_against_brute_force(l):
    for n in range(l + 1):
        for v in enumerate_Vnl(l, n, l)[::3]:
            H = stabilizer_product(v, l)
            for lam in partitions_of(l):
                lam = Composition(lam)
                reps = double_coset_reps(H, l, lam)
                brute = brute_double_cosets(H, l, lam)
                assert len(reps) == len(brute)
                k = lam.young_order()
                assert sorted(d.orbit_size for d in reps) == sorted(len(dc) // k for dc in brute)
                # reps lie in pairwise distinct double cosets
                where = [next(i for i, dc in enumerate(brute) if d.rep in dc) for d in reps]
                assert len(set(where)) == len(reps)


def test_flagship_rows():
    H = stabilizer_product(FLAGSHIP, 9)
    nus, full, labelled = [], [], []
    for text in PINNED_REPS:
        group = intersection_with_conjugate(H, Permutation.parse(text, 9), LAM)
        full.append(len(group))
        labelled.append(len(labelled_component(group, H)))
        nus.append(image_young(group, H).parts)
    assert nus == [(3, 2), (3, 1, 1), (3, 1, 1), (3, 2), (2, 1, 2), (2, 1, 1, 1), (1, 2, 2)]
    assert labelled == [48, 12, 24, 12, 16, 4, 16]
    assert full == [96, 12, 48, 24, 16, 8, 32]


def test_intersection_closure_and_trivial_case():
    H = stabilizer_product(FLAGSHIP, 9)
    group = set(intersection_with_conjugate(H, Permutation.parse("(6 8)(7 9)", 9), LAM))
    assert all(a * b in group for a in group for b in group)
    assert all(a.inverse() in group for a in group)
    v = parse_partial("L{1}L{2}U{3,4}")
    H = stabilizer_product(v, 4)
    ones = Composition((1, 1, 1, 1))
    for d in double_coset_reps(H, 4, ones):
        assert intersection_with_conjugate(H, d.rep, ones) == [Permutation.identity(4)]
    with pytest.raises(SizeLimitError):
        intersection_with_conjugate(stabilizer_product(FLAGSHIP, 9), Permutation.identity(9), LAM, cap=100)


def test_image_young_trivial_and_failure():
    v = parse_partial("L{1}L{2}L{3}")
    H = stabilizer_product(v, 3)
    assert image_young([Permutation.identity(3)], H).parts == (1, 1, 1)
    cyclic = [Permutation.identity(3), Permutation.parse("(1 2 3)", 3), Permutation.parse("(1 3 2)", 3)]
    with pytest.raises(NotYoungError):
        image_young(cyclic, H)


def test_image_young_representative_invariance():
    rnd = random.Random(7)
    H = stabilizer_product(FLAGSHIP, 9)
    hs = sorted(generate_group(H.generators, 9))
    ks = list(young_subgroup_elements(LAM))
    for d in double_coset_reps(H, 9, LAM):
        base = image_young(intersection_with_conjugate(H, d.rep, LAM), H).partition()
        for _ in range(3):
            alt = rnd.choice(hs) * d.rep * rnd.choice(ks)
            assert image_young(intersection_with_conjugate(H, alt, LAM), H).partition() == base
