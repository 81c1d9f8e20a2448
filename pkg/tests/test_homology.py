import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amplekit.constructions import (band_sphere, counterexample_stage, cross_polytope_sphere,
                                    csaszar, simplex_complex)
from amplekit.core import SimplicialComplex, is_connected
from amplekit.errors import NotACycle, TooLarge
from amplekit.fundamental_group import (cyclic_reduce, free_reduce, fundamental_presentation,
                                        try_trivialize)
from amplekit.homology import (boundary_matrix, check_chain_complex, clique_homology_sweep,
                               composes_to_zero, connectivity_certificate, homology, is_boundary,
                               reduced_homology)
from amplekit.snf import smith_normal_form
from oracles import four_cycle, rational_betti, textbook_snf
from test_core import complexes

C = SimplicialComplex.from_facets
TRIANGLE = C([["a", "b", "c"]])


def random_matrix(rng, rows, cols, density=0.3, bound=6):
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(cols)]
            for _ in range(rows)]


def test_snf_examples():
    snf = smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert snf.factors == (1, 1, 1) and snf.rank == 3
    snf = smith_normal_form([[2, 4], [4, 6]])
    assert snf.factors == (2, 2) and snf.rank == 2
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    assert smith_normal_form([[0, 0], [0, 0]]).factors == ()


def test_snf_torsion_example():
    # Z/2 x Z/6 presentation with a redundant row
    snf = smith_normal_form([[2, 0], [0, 6], [2, 6]])
    assert snf.factors == (2, 6)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(1, 12), st.integers(1, 12))
def test_snf_matches_textbook_oracle(seed, rows, cols):
    M = random_matrix(random.Random(seed), rows, cols, density=0.5)
    snf = smith_normal_form(M)
    assert list(snf.factors) == textbook_snf(M)
    assert all(b % a == 0 for a, b in zip(snf.factors, snf.factors[1:]))
    T = [list(col) for col in zip(*M)]
    assert smith_normal_form(T).factors == snf.factors


def test_reduced_homology_examples():
    assert reduced_homology(cross_polytope_sphere(2)).betti == (0, 0, 1)
    H = reduced_homology(csaszar())
    assert H.betti == (0, 2, 1) and not any(H.torsion)
    assert reduced_homology(counterexample_stage(1, 1)).betti[1] >= 1
    assert reduced_homology(simplex_complex(3)).is_trivial()


def test_projective_plane_torsion():
    rp2 = C([[1, 2, 4], [2, 3, 4], [1, 3, 5], [3, 4, 5], [1, 4, 6], [4, 5, 6], [2, 5, 6],
             [1, 2, 5], [2, 3, 6], [1, 3, 6]])
    H = homology(rp2)
    assert H.betti == (1, 0, 0)
    assert H.torsion[1] == (2,)
    assert fundamental_presentation(rp2).abelianization() == (0, (2,))


def test_boundary_matrices_compose_to_zero():
    K = band_sphere(4, 2)
    assert composes_to_zero(boundary_matrix(K, 1), boundary_matrix(K, 2))
    assert check_chain_complex(csaszar())


def test_is_boundary_examples():
    z = {("b", "c"): 1, ("a", "c"): -1, ("a", "b"): 1}
    assert is_boundary(TRIANGLE, z)
    cyc = {("a", "b"): 1, ("b", "c"): 1, ("c", "d"): 1, ("d", "a"): 1}
    assert not is_boundary(four_cycle(), cyc)
    K1 = counterexample_stage(1, 1)
    k0 = {("+0", "+1"): 1, ("+1", "-0"): 1, ("-0", "-1"): 1, ("-1", "+0"): 1}
    assert not is_boundary(K1, k0)
    with pytest.raises(NotACycle):
        is_boundary(four_cycle(), {("a", "b"): 1})


def test_fundamental_group_examples():
    assert try_trivialize(fundamental_presentation(TRIANGLE)).status == "Trivial"
    assert try_trivialize(fundamental_presentation(cross_polytope_sphere(2))).status == "Trivial"
    P = fundamental_presentation(four_cycle())
    assert len(P.generators) == 1 and P.relators == []
    assert try_trivialize(P).status == "Unknown"


def test_word_reduction():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_reduce((-1, 2, 1)) == (2,)


def test_connectivity_examples():
    octa = cross_polytope_sphere(2)
    assert connectivity_certificate(octa, 1).status == "Certified"
    assert connectivity_certificate(octa, 2).status == "Refuted"
    assert connectivity_certificate(counterexample_stage(1, 1), 1).status == "Refuted"
    assert connectivity_certificate(SimplicialComplex(), 0).status == "Refuted"
    assert connectivity_certificate(C([["a"], ["b"]]), 0).status == "Refuted"


def test_clique_sweep_small():
    rep = clique_homology_sweep(3, 1)
    assert rep.holds and rep.graphs[3] == 8
    with pytest.raises(TooLarge):
        clique_homology_sweep(7, 2)


@settings(max_examples=80, deadline=None)
@given(complexes(max_vertices=6))
def test_euler_poincare_and_rational_betti(K):
    H = homology(K)
    assert sum((-1) ** q * b for q, b in enumerate(H.betti)) == K.euler_characteristic
    assert list(H.betti) == rational_betti(K)
    R = reduced_homology(K)
    assert R.betti[0] == H.betti[0] - 1
    assert check_chain_complex(K)


@settings(max_examples=60, deadline=None)
@given(complexes(max_vertices=6))
def test_abelianization_matches_h1(K):
    if not is_connected(K):
        return
    rank, torsion = fundamental_presentation(K).abelianization()
    H = homology(K, 1)
    assert rank == H.betti[1] and torsion == H.torsion[1]


@settings(max_examples=60, deadline=None)
@given(complexes(max_vertices=6), st.integers(0, 2), st.sampled_from([0, 3, 50, 10_000]))
def test_certificates_never_contradict(K, d, budget):
    results = {connectivity_certificate(K, d, b).status for b in (budget, 10_000)}
    assert not {"Certified", "Refuted"} <= results
