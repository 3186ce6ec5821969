"""Moment vectors, closed-form counts, moment shifts, degree systems."""

import random

import numpy as np
import pytest

from qcones import (
    ConeSpec,
    FamilyError,
    MultiGraph,
    ParameterError,
    UnsupportedGraphError,
    adjacency_matrix,
    brute_counts,
    counts_closed_form,
    cycle_graph,
    delta_moments,
    digon,
    g_family_spec,
    moments_from_counts,
    moments_from_spectrum,
    path_graph,
    q_spectrum,
    realize,
    solve_degree_system,
    sym_eigenvalues,
)

from helpers import (
    naive_c3,
    naive_c4,
    naive_f_bar,
    naive_p3,
    naive_t_bar,
    random_graph,
)

FLAGSHIP = g_family_spec([3], 1, 1)


class TestBruteCounts:
    def test_flagship(self):
        c = brute_counts(realize(FLAGSHIP))
        assert (c.p3, c.c3, c.c4) == (26, 5, 3)
        assert (c.t_term, c.f_term) == (440, 460)
        assert (c.d2, c.d3, c.d4) == (72, 314, 1572)

    def test_against_naive(self):
        rng = random.Random(18)
        for _ in range(10):
            g = random_graph(rng, rng.randrange(3, 9), 0.5)
            c = brute_counts(g)
            assert c.p3 == naive_p3(g)
            assert c.c3 == naive_c3(g)
            assert c.c4 == naive_c4(g)
            assert c.t_term == naive_t_bar(g)
            assert c.f_term == naive_f_bar(g)

    def test_rejects_multigraph(self):
        with pytest.raises(UnsupportedGraphError):
            brute_counts(digon())


class TestMomentsFromCounts:
    def test_flagship(self):
        assert moments_from_counts(realize(FLAGSHIP)) == (20, 92, 560, 3876, 148)

    def test_k2(self):
        assert moments_from_counts(path_graph(2)) == (2, 4, 8, 16, 2)

    def test_edgeless(self):
        g = MultiGraph(np.zeros((3, 3), dtype=np.int64))
        assert moments_from_counts(g) == (0, 0, 0, 0, 0)

    def test_matches_spectral_power_sums(self):
        rng = random.Random(19)
        for _ in range(15):
            g = random_graph(rng, rng.randrange(1, 11), 0.5)
            exact = moments_from_counts(g)
            spectral = moments_from_spectrum(
                q_spectrum(g), sym_eigenvalues(adjacency_matrix(g))
            )
            for a, b in zip(exact, spectral):
                assert abs(a - b) <= 1e-7 * max(1.0, abs(a))


class TestMomentsFromSpectrum:
    def test_power_sums(self):
        mv = moments_from_spectrum([2.0, 0.0])
        assert mv[:4] == (2.0, 4.0, 8.0, 16.0)
        assert mv.s4 is None

    def test_zero_spectrum(self):
        mv = moments_from_spectrum([0.0, 0.0, 0.0])
        assert mv[:4] == (0.0, 0.0, 0.0, 0.0)

    def test_adjacency_side(self):
        mv = moments_from_spectrum([2.0, 0.0], [1.0, -1.0])
        assert mv.s4 == 2.0


class TestCountsClosedForm:
    def test_flagship(self):
        c = counts_closed_form(FLAGSHIP)
        assert c == brute_counts(realize(FLAGSHIP))

    def test_four_cycle_count(self):
        # One C4 block adds one to the apex-edge 4-cycles.
        assert counts_closed_form(g_family_spec([4], 1, 1)).c4 == 5

    def test_t_term_substitution(self):
        assert counts_closed_form(g_family_spec([5], 2, 1)).t_term == 864

    def test_matches_brute_force_grid(self):
        for cycles, q, s in [
            ([3], 1, 1),
            ([4], 1, 2),
            ([5, 3], 2, 1),
            ([6, 4, 3], 2, 3),
            ([8], 4, 2),
            ([3, 3, 3], 1, 1),
        ]:
            spec = g_family_spec(cycles, q, s)
            assert counts_closed_form(spec) == brute_counts(realize(spec))

    def test_rejects_non_family(self):
        with pytest.raises(FamilyError):
            counts_closed_form(ConeSpec(cycles=(3,), paths=(3, 2, 1)))
        with pytest.raises(FamilyError):
            counts_closed_form(ConeSpec(paths=(2,), stars13=1))


class TestDeltaMoments:
    def test_single_cycle_to_paths(self):
        g = g_family_spec([5], 2, 1)
        other = ConeSpec(paths=(7, 2, 1))
        assert delta_moments(g, other) == (0, -4)

    def test_even_split(self):
        g = g_family_spec([6], 2, 1)
        other = ConeSpec(cycles=(4,), paths=(3, 3, 1))
        assert delta_moments(g, other) == (8, 0)

    def test_identity_pair(self):
        g = g_family_spec([5, 4], 2, 2)
        assert delta_moments(g, g) == (0, 0)

    def test_matches_direct_differences(self):
        pairs = [
            (g_family_spec([5], 2, 1), ConeSpec(paths=(7, 2, 1))),
            (g_family_spec([6], 2, 1), ConeSpec(cycles=(4,), paths=(3, 3, 1))),
            (g_family_spec([7], 2, 1), ConeSpec(cycles=(3,), paths=(4, 4, 1))),
            (g_family_spec([4, 3], 2, 2), ConeSpec(paths=(7, 4, 1, 1))),
        ]
        for g_spec, o_spec in pairs:
            ds4, dt4 = delta_moments(g_spec, o_spec)
            mg = moments_from_counts(realize(g_spec))
            mo = moments_from_counts(realize(o_spec))
            k3_shift = sum(1 for k in o_spec.cycles if k == 3) - sum(
                1 for k in g_spec.cycles if k == 3
            )
            assert mo.t1 == mg.t1 and mo.t2 == mg.t2
            assert mo.t3 - mg.t3 == 6 * k3_shift
            assert (mo.s4 - mg.s4, mo.t4 - mg.t4) == (ds4, dt4)

    def test_rejects_non_family_left(self):
        with pytest.raises(FamilyError):
            delta_moments(ConeSpec(paths=(7, 2, 1)), ConeSpec(paths=(7, 2, 1)))

    def test_rejects_star_or_digon_right(self):
        g = g_family_spec([5], 2, 1)
        with pytest.raises(FamilyError):
            delta_moments(g, ConeSpec(paths=(3, 2, 1, 1), stars13=1))
        with pytest.raises(FamilyError):
            delta_moments(g, ConeSpec(cycles=(2,), paths=(5, 2, 1)))

    def test_rejects_order_mismatch(self):
        with pytest.raises(ParameterError):
            delta_moments(g_family_spec([5], 2, 1), ConeSpec(paths=(6, 2, 1)))

    def test_rejects_degree_mismatch(self):
        # Same order, but 8K1-style rewiring changes the degree sequence.
        with pytest.raises(ParameterError):
            delta_moments(g_family_spec([5], 2, 1), ConeSpec(paths=(8, 2)))


class TestSolveDegreeSystem:
    def test_flagship_profile(self):
        t1, t2, t3, _, _ = moments_from_counts(realize(FLAGSHIP))
        assert solve_degree_system(t1, t2, t3, 7, 6, 0) == (1, 2, 3)

    def test_c5_two_k2_profiles(self):
        spec = g_family_spec([5], 2, 1)
        t1, t2, t3, _, _ = moments_from_counts(realize(spec))
        assert solve_degree_system(t1, t2, t3, 11, 10, 0) == (1, 4, 5)
        assert solve_degree_system(t1, t2, t3, 11, 10, 1) == (0, 7, 2)
        assert solve_degree_system(t1, t2, t3, 11, 10, 2) is None

    def test_parity_infeasibility(self):
        assert solve_degree_system(10, 30, 80, 6, 5, 0) is None

    def test_rejects_non_integer(self):
        with pytest.raises(ParameterError):
            solve_degree_system(10.5, 30, 80, 6, 5, 0)

    def test_rejects_bad_counts(self):
        with pytest.raises(ParameterError):
            solve_degree_system(10, 30, 80, 0, 5, 0)
        with pytest.raises(ParameterError):
            solve_degree_system(10, 30, 80, 6, 5, -1)

    def test_recovers_true_profiles(self):
        # The solver inverts the degree census for real family cones.
        for cycles, q, s in [([4], 1, 2), ([5, 3], 2, 1), ([6], 3, 2)]:
            spec = g_family_spec(cycles, q, s)
            g = realize(spec)
            t1, t2, t3, _, _ = moments_from_counts(g)
            n1 = spec.s
            n2 = 2 * spec.q
            n3 = sum(spec.cycles)
            assert solve_degree_system(t1, t2, t3, spec.n, spec.n - 1, 0) == (
                n1,
                n2,
                n3,
            )
