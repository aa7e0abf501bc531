"""Unit tests for block splitting and the refinement engine."""

import random
from fractions import Fraction

import pytest

import wbisim as wb
from wbisim import (
    Partition,
    bisimilar,
    by_name,
    check_is_weak_bisimulation,
    delay_partition,
    partition_for_mode,
    refine_partition,
    strong_partition,
    weak_partition,
)
from wbisim.bisim import split_block, split_block_sorted

import helpers


def grouping(groups):
    return {frozenset(g) for g in groups}


class TestSplitting:
    def test_groups_by_value(self):
        sr = by_name("real")
        weights = [Fraction(1), Fraction(2), Fraction(1), Fraction(0)]
        groups = split_block(sr, [0, 1, 2, 3], weights)
        assert grouping(groups) == {
            frozenset({0, 2}),
            frozenset({1}),
            frozenset({3}),
        }

    def test_sorted_variant_orders_by_weight(self):
        sr = by_name("real")
        weights = [Fraction(3), Fraction(1), Fraction(3), wb.INF, Fraction(1)]
        groups = split_block_sorted(sr, [0, 1, 2, 3, 4], weights)
        assert groups == [[1, 4], [0, 2], [3]]

    def test_both_variants_agree_on_exact_carriers(self):
        rng = random.Random(41)
        pool = [Fraction(n, d) for n in range(4) for d in (1, 2, 3)]
        sr = by_name("real")
        for _ in range(200):
            n = rng.randint(1, 12)
            weights = [rng.choice(pool) for _ in range(n)]
            members = list(range(n))
            rng.shuffle(members)
            a = grouping(split_block(sr, members, weights))
            b = grouping(split_block_sorted(sr, members, weights))
            assert a == b

    def test_float_groups_split_at_tolerance_gaps(self):
        sr = by_name("real-float", epsilon=1e-9)
        weights = [0.0, 4e-10, 1.0, 1.0 + 2e-10, 2.0]
        groups = split_block_sorted(sr, [0, 1, 2, 3, 4], weights)
        assert groups == [[0, 1], [2, 3], [4]]

    def test_singleton_and_empty(self):
        sr = by_name("boolean")
        assert split_block_sorted(sr, [2], [True, True, False]) == [[2]]
        assert split_block_sorted(sr, [], []) == []


class TestChains:
    """One branch does a then silently b, the other does a then b."""

    def test_weak_merges_the_roots(self):
        w = helpers.chains_system()
        p = weak_partition(w)
        assert p.to_names(w) == [["p0", "q0"], ["p1", "p2", "q1"], ["p3", "q2"]]

    def test_delay_agrees_here(self):
        w = helpers.chains_system()
        assert delay_partition(w) == weak_partition(w)

    def test_strong_separates_the_roots(self):
        w = helpers.chains_system()
        p = strong_partition(w)
        assert not p.same_block(w.index("p0"), w.index("q0"))
        # the two terminal states stay together under every mode
        assert p.same_block(w.index("p3"), w.index("q2"))

    def test_bisimilar_helper(self):
        w = helpers.chains_system()
        assert bisimilar(w, w.index("p0"), w.index("q0"), mode="weak")
        assert not bisimilar(w, w.index("p0"), w.index("q0"), mode="strong")


class TestWeakVersusDelay:
    def test_witness_separates_the_modes(self):
        w = helpers.weak_delay_witness()
        weak = weak_partition(w)
        delay = delay_partition(w)
        assert weak.to_names(w) == [["s0", "s2"], ["s1"]]
        assert delay == Partition.discrete(3)

    def test_witness_is_minimal_in_state_count(self):
        # no boolean system on two states separates weak from delay:
        # enumerate every 2-state system over {tau, a}
        sr = by_name("boolean")
        edges = [
            (x, label, y)
            for x in range(2)
            for label in ("tau", "a")
            for y in range(2)
        ]
        for mask in range(1 << len(edges)):
            triples = [
                (x, label, y, True)
                for i, (x, label, y) in enumerate(edges)
                if mask >> i & 1
            ]
            w = wb.WLTS(sr, ["u", "v"], ("a",), "tau", triples)
            assert weak_partition(w) == delay_partition(w)


class TestEngineInvariants:
    def test_tau_free_modes_coincide(self):
        rng = random.Random(51)
        sr = by_name("real")
        for _ in range(40):
            n = rng.randint(2, 7)
            w = helpers.random_wlts(rng, sr, n, 2, 0.35, helpers.positive_fraction)
            w = wb.WLTS(
                sr,
                w.state_names,
                w.actions,
                w.tau,
                [t for t in w.transitions() if t[1] != w.tau],
            )
            strong = strong_partition(w)
            assert weak_partition(w) == strong
            assert delay_partition(w) == strong

    def test_result_is_a_bisimulation_and_coarsest_found(self):
        rng = random.Random(52)
        for _ in range(30):
            w = helpers.random_boolean_lts(rng, rng.randint(2, 7), 2, 0.3)
            for mode in ("strong", "weak", "delay"):
                p = partition_for_mode(w, mode)
                assert check_is_weak_bisimulation(w, p, mode=mode).ok

    def test_discrete_partition_always_passes_the_checker(self):
        w = helpers.weak_delay_witness()
        p = Partition.discrete(w.state_count)
        for mode in ("strong", "weak", "delay"):
            assert check_is_weak_bisimulation(w, p, mode=mode).ok

    def test_checker_reports_violations_with_weights(self):
        w = helpers.weak_delay_witness()
        report = check_is_weak_bisimulation(w, Partition.single_block(3), mode="weak")
        assert not report.ok
        v = report.violations[0]
        assert v.label in w.labels
        assert set(v.weights) <= set(w.state_names)
        report_delay = check_is_weak_bisimulation(w, weak_partition(w), mode="delay")
        assert not report_delay.ok

    def test_restart_from_final_partition_is_stable(self):
        rng = random.Random(53)
        for _ in range(25):
            w = helpers.random_boolean_lts(rng, rng.randint(2, 7), 2, 0.3)
            final = weak_partition(w)
            assert weak_partition(w, initial=final) == final

    def test_strong_with_signature_presplit_matches_default(self):
        # grouping states by their per-label total outgoing weight is
        # coarser than strong bisimilarity, so it is a sound head start
        rng = random.Random(54)
        sr = by_name("real")
        for _ in range(25):
            n = rng.randint(2, 7)
            w = helpers.random_wlts(rng, sr, n, 2, 0.35, helpers.positive_fraction)
            everything = set(range(n))
            sig = {}
            for x in range(n):
                key = tuple(w.class_weight(x, lab, everything) for lab in w.labels)
                sig.setdefault(key, []).append(x)
            presplit = Partition(n, sig.values())
            assert strong_partition(w, initial=presplit) == strong_partition(w)

    def test_initial_partition_size_mismatch(self):
        w = helpers.chains_system()
        with pytest.raises(ValueError):
            weak_partition(w, initial=Partition.single_block(2))

    def test_unknown_mode(self):
        w = helpers.chains_system()
        with pytest.raises(ValueError):
            partition_for_mode(w, "branching")
        with pytest.raises(ValueError):
            check_is_weak_bisimulation(w, Partition.single_block(7), mode="eta")

    def test_transition_order_does_not_matter(self):
        rng = random.Random(55)
        sr = by_name("real")
        for _ in range(20):
            w = helpers.random_wlts(rng, sr, 6, 2, 0.4, helpers.positive_fraction)
            triples = list(w.transitions())
            rng.shuffle(triples)
            shuffled = wb.WLTS(sr, w.state_names, w.actions, w.tau, triples)
            for mode in ("strong", "weak", "delay"):
                assert partition_for_mode(w, mode) == partition_for_mode(
                    shuffled, mode
                )

    def test_deterministic_across_runs(self):
        w = helpers.weak_delay_witness()
        p1, t1 = refine_partition(w, "delay", want_trace=True)
        p2, t2 = refine_partition(w, "delay", want_trace=True)
        assert p1 == p2
        assert [e.__dict__ for e in t1.events] == [e.__dict__ for e in t2.events]


class TestTrace:
    def test_trace_structure(self):
        w = helpers.chains_system()
        p, trace = refine_partition(w, "weak", want_trace=True)
        assert trace.mode == "weak"
        assert trace.candidates_examined >= len(p)
        counts = [e.block_count for e in trace.events]
        assert counts == sorted(counts)
        assert counts[-1] == len(p)
        for e in trace.events:
            assert e.label in w.labels
            assert e.blocks_split >= 1
            assert all(0 <= x < w.state_count for x in e.splitter)

    def test_no_trace_by_default(self):
        w = helpers.chains_system()
        p, trace = refine_partition(w, "weak")
        assert trace is None

    def test_block_count_never_exceeds_states(self):
        rng = random.Random(56)
        for _ in range(20):
            w = helpers.random_boolean_lts(rng, rng.randint(1, 7), 2, 0.4)
            p, trace = refine_partition(w, "weak", want_trace=True)
            assert len(p) <= w.state_count
            assert len(trace.events) <= max(0, w.state_count - 1)
