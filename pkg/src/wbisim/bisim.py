"""Partition refinement for strong, weak and delay weighted bisimilarity.

The engine starts from the one-block partition (or a caller-supplied
coarser start) and repeatedly picks a splitter: a pair of a label and a
target class.  Every block is regrouped by the saturated weight of its
members against the splitter; in strong mode the "saturated" weight is
just the single-step class weight, in weak mode silent steps may surround
one observable step, in delay mode they may only precede it.

Splitter scheduling: each class is examined once after it is created
(the initial blocks to begin with, then every child of a split).  A class
that has been examined never needs re-examination, because its induced
grouping is a fixed function of the state space; refining other blocks
keeps them grouped.  If the class currently being used as a splitter is
itself split, the remaining labels are abandoned for it and its children
take over, so splitters are always classes of the current partition.
Candidate order is deterministic: smallest minimum state id first, labels
in alphabet order with the silent one first.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .solver import Saturator
from .wlts import Partition


def split_block(sr, members, weights):
    """Group members by values_equal on their weights.

    Linear scan against group representatives; with float tolerances this
    equality is not transitive, so the sorted variant (which only compares
    neighbours) is the one the engine uses.  Returns the groups in order
    of first appearance.
    """
    groups = []
    reps = []
    for x in members:
        wx = weights[x]
        for gi, rep in enumerate(reps):
            if sr.values_equal(wx, rep):
                groups[gi].append(x)
                break
        else:
            reps.append(wx)
            groups.append([x])
    return groups


def split_block_sorted(sr, members, weights):
    """Sort members by weight and split where neighbouring values differ.

    In float mode a new group starts where the gap to the previous value
    exceeds the tolerance.
    """
    order = sorted(members, key=lambda x: (sr.sort_key(weights[x]), x))
    groups = []
    prev = None
    for x in order:
        wx = weights[x]
        if groups and sr.values_equal(prev, wx):
            groups[-1].append(x)
        else:
            groups.append([x])
        prev = wx
    return groups


@dataclass
class SplitEvent:
    step: int
    label: str
    splitter: tuple
    blocks_split: int
    block_count: int


@dataclass
class RefinementTrace:
    mode: str
    events: list[SplitEvent] = field(default_factory=list)
    candidates_examined: int = 0


def refine_partition(w, mode="weak", initial=None, want_trace=False):
    """Run the refinement loop; returns (Partition, RefinementTrace | None)."""
    n = w.state_count
    if initial is None:
        initial = Partition.single_block(n)
    elif initial.n != n:
        raise ValueError("initial partition is over a different state count")
    provider = Saturator(w, mode)
    trace = RefinementTrace(mode=mode) if want_trace else None

    members = {}
    block_of = [0] * n
    heap = []
    next_id = 0
    for block in initial.blocks:
        members[next_id] = list(block)
        for x in block:
            block_of[x] = next_id
        heapq.heappush(heap, (block[0], next_id))
        next_id += 1

    step = 0
    while heap:
        _, cid = heapq.heappop(heap)
        if cid not in members:
            continue  # split away before its turn
        C = tuple(members[cid])
        if trace is not None:
            trace.candidates_examined += 1
        table = provider.table(C)
        for label in w.labels:
            weights = table.vector(label)
            split_any = 0
            for bid in list(members):
                blk = members[bid]
                if len(blk) == 1:
                    continue
                groups = split_block_sorted(w.semiring, blk, weights)
                if len(groups) == 1:
                    continue
                split_any += 1
                del members[bid]
                for g in groups:
                    members[next_id] = g
                    for x in g:
                        block_of[x] = next_id
                    heapq.heappush(heap, (min(g), next_id))
                    next_id += 1
            if split_any:
                step += 1
                if trace is not None:
                    trace.events.append(
                        SplitEvent(step, label, C, split_any, len(members))
                    )
            if cid not in members:
                break  # the splitter class itself split; children take over
    return Partition(n, members.values()), trace


def strong_partition(w, initial=None):
    """Coarsest partition with equal single-step class weights for every
    label (the silent one included, treated as ordinary) and class."""
    return refine_partition(w, "strong", initial)[0]


def weak_partition(w, initial=None):
    """Coarsest partition with equal saturated weights, one observable
    action surrounded by silent steps."""
    return refine_partition(w, "weak", initial)[0]


def delay_partition(w, initial=None):
    """Like weak, but silent steps may only precede the observable action."""
    return refine_partition(w, "delay", initial)[0]


_PARTITION_BY_MODE = {
    "strong": strong_partition,
    "weak": weak_partition,
    "delay": delay_partition,
}


def partition_for_mode(w, mode, initial=None):
    try:
        fn = _PARTITION_BY_MODE[mode]
    except KeyError:
        raise ValueError("mode must be strong, weak or delay") from None
    return fn(w, initial)


def bisimilar(w, x, y, mode="weak"):
    """Whether two states (ids) are equated by the chosen equivalence."""
    return partition_for_mode(w, mode).same_block(x, y)


@dataclass
class Violation:
    label: str
    target_class: tuple
    block: tuple
    weights: dict


@dataclass
class BisimulationReport:
    mode: str
    ok: bool
    violations: list[Violation] = field(default_factory=list)


def check_is_weak_bisimulation(w, partition, mode="weak"):
    """Verify the defining condition block by block.

    For every class C of the partition, every label and every block,
    members must carry equal saturated weights into C; each failure is
    reported with the offending weights.
    """
    if mode not in ("strong", "weak", "delay"):
        raise ValueError("mode must be strong, weak or delay")
    if partition.n != w.state_count:
        raise ValueError("partition is over a different state count")
    sr = w.semiring
    provider = Saturator(w, mode)
    violations = []
    for C in partition.blocks:
        table = provider.table(C)
        for label in w.labels:
            weights = table.vector(label)
            for block in partition.blocks:
                if len(block) == 1:
                    continue
                rep = weights[block[0]]
                if all(sr.values_equal(weights[x], rep) for x in block[1:]):
                    continue
                violations.append(
                    Violation(
                        label,
                        C,
                        block,
                        {w.state_names[x]: sr.format(weights[x]) for x in block},
                    )
                )
    return BisimulationReport(mode, not violations, violations)
