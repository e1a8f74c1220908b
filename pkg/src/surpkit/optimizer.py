"""Greedy and annealed maximization of the surprise quality function.

The optimizer edits a partition through five moves: merging two
communities, exchanging a single node between communities, extracting a
node into a new singleton community, and extracting or exchanging a whole
sub-community (found by running the greedy loop recursively on the
subgraph induced by one community).  A move is accepted in greedy mode
only when it strictly increases the surprise; the main loop applies the
moves systematically to exhaustion, so it terminates at a local maximum.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from surpkit.graph import Graph
from surpkit.partition import Partition
from surpkit.surprise import partition_stats, surprise

# strict-improvement threshold; exact ties are handled by shake()
TIE_EPS = 1e-12

MOVE_KINDS = ("merge", "exchange", "extract", "sub_extract", "sub_exchange")


@dataclass(frozen=True)
class MoveOutcome:
    accepted: bool
    deltaS: float
    kind: str


def _pairs(c: int) -> int:
    return c * (c - 1) // 2


class SurpriseState:
    """A graph plus a partition with incrementally maintained surprise.

    Single-owner mutable: do not mutate one instance from several threads.
    """

    def __init__(
        self,
        graph: Graph,
        partition: Partition | None = None,
        rng: np.random.Generator | int | None = None,
    ):
        self.graph = graph
        self.partition = partition.copy() if partition is not None else Partition.singletons(graph.K)
        if self.partition.K != graph.K:
            raise ValueError("partition size does not match graph")
        if isinstance(rng, np.random.Generator):
            self.rng = rng
        else:
            self.rng = np.random.default_rng(rng)
        self.M, self.ell, self.S = partition_stats(graph, self.partition)
        # memo for sub-community decompositions, keyed by community contents:
        # the recursion depends only on the induced subgraph, so entries
        # never go stale and repeat lookups skip the greedy recursion
        self._sub_cache: dict[frozenset, list[set[int]]] = {}

    # ----- bookkeeping helpers -------------------------------------------

    def _S_at(self, M: int, ell: int) -> float:
        return surprise(self.graph.F, M, self.graph.n, ell)

    def _check_comm(self, cid: int) -> None:
        if not (0 <= cid < self.partition.Nc):
            raise ValueError(f"community id {cid} out of range [0, {self.partition.Nc})")

    def _links_to(self, node: int, cid: int) -> int:
        comm = self.partition.comms[cid]
        return sum(1 for nb in self.graph.adj[node] if nb in comm)

    def _cross_links(self, cA: int, cB: int) -> int:
        a, b = self.partition.comms[cA], self.partition.comms[cB]
        if len(b) < len(a):
            a, b = b, a
        return sum(1 for u in a for nb in self.graph.adj[u] if nb in b)

    def _set_links(self, nodes: set[int], target: set[int]) -> int:
        return sum(1 for u in nodes for nb in self.graph.adj[u] if nb in target)

    def _remove_comm(self, cid: int) -> None:
        """Drop an emptied community slot, keeping ids dense (swap with last)."""
        p = self.partition
        last = p.Nc - 1
        if cid != last:
            p.comms[cid] = p.comms[last]
            for node in p.comms[cid]:
                p.assign[node] = cid
        p.comms.pop()

    # ----- raw appliers (no acceptance test) -----------------------------

    def _apply_merge(self, cA: int, cB: int, dM: int, dell: int, S_new: float) -> None:
        p = self.partition
        for node in p.comms[cB]:
            p.assign[node] = cA
        p.comms[cA] |= p.comms[cB]
        p.comms[cB] = set()
        self._remove_comm(cB)
        self.M += dM
        self.ell += dell
        self.S = S_new

    def _apply_move_node(self, node: int, cTo: int, dM: int, dell: int, S_new: float) -> None:
        p = self.partition
        src = p.assign[node]
        p.comms[src].discard(node)
        p.comms[cTo].add(node)
        p.assign[node] = cTo
        self.M += dM
        self.ell += dell
        self.S = S_new

    def _apply_extract(self, node: int, dM: int, dell: int, S_new: float) -> None:
        p = self.partition
        src = p.assign[node]
        p.comms[src].discard(node)
        p.comms.append({node})
        p.assign[node] = p.Nc - 1
        self.M += dM
        self.ell += dell
        self.S = S_new

    def _apply_move_set(self, nodes: set[int], cTo: int | None, dM: int, dell: int, S_new: float) -> None:
        """Relocate a node set into cTo, or into a fresh community if cTo is None."""
        p = self.partition
        src = p.assign[next(iter(nodes))]
        if cTo is None:
            p.comms.append(set())
            cTo = p.Nc - 1
        for node in nodes:
            p.comms[src].discard(node)
            p.comms[cTo].add(node)
            p.assign[node] = cTo
        if not p.comms[src]:
            self._remove_comm(src)
        self.M += dM
        self.ell += dell
        self.S = S_new

    # ----- delta computations --------------------------------------------

    def _merge_delta(self, cA: int, cB: int) -> tuple[int, int]:
        sA = len(self.partition.comms[cA])
        sB = len(self.partition.comms[cB])
        return sA * sB, self._cross_links(cA, cB)

    def _move_node_delta(self, node: int, cTo: int) -> tuple[int, int]:
        src = self.partition.assign[node]
        dM = len(self.partition.comms[cTo]) - (len(self.partition.comms[src]) - 1)
        dell = self._links_to(node, cTo) - self._links_to(node, src)
        return dM, dell

    def _extract_delta(self, node: int) -> tuple[int, int]:
        src = self.partition.assign[node]
        return -(len(self.partition.comms[src]) - 1), -self._links_to(node, src)

    def _move_set_delta(self, nodes: set[int], cTo: int | None) -> tuple[int, int]:
        src = self.partition.assign[next(iter(nodes))]
        c = len(self.partition.comms[src])
        b = len(nodes)
        rest = self.partition.comms[src] - nodes
        dM = _pairs(c - b) - _pairs(c)
        dell = -self._set_links(nodes, rest)
        if cTo is not None:
            t = len(self.partition.comms[cTo])
            dM += _pairs(t + b) - _pairs(t)
            dell += self._set_links(nodes, self.partition.comms[cTo])
        else:
            dM += _pairs(b)
        return dM, dell

    # ----- the five moves -------------------------------------------------

    def merge(self, cA: int, cB: int) -> MoveOutcome:
        """Merge cB into cA when that raises the surprise."""
        self._check_comm(cA)
        self._check_comm(cB)
        if cA == cB:
            raise ValueError("cannot merge a community with itself")
        dM, dell = self._merge_delta(cA, cB)
        S_new = self._S_at(self.M + dM, self.ell + dell)
        dS = S_new - self.S
        if dS > TIE_EPS:
            self._apply_merge(cA, cB, dM, dell, S_new)
            return MoveOutcome(True, dS, "merge")
        return MoveOutcome(False, dS, "merge")

    def exchange(self, node: int, cTo: int) -> MoveOutcome:
        """Move one node into cTo when that raises the surprise."""
        self.graph._check_node(node)
        self._check_comm(cTo)
        src = self.partition.assign[node]
        if len(self.partition.comms[src]) <= 1:
            raise ValueError("cannot exchange out of a singleton community")
        if cTo == src:
            return MoveOutcome(False, 0.0, "exchange")
        dM, dell = self._move_node_delta(node, cTo)
        S_new = self._S_at(self.M + dM, self.ell + dell)
        dS = S_new - self.S
        if dS > TIE_EPS:
            self._apply_move_node(node, cTo, dM, dell, S_new)
            return MoveOutcome(True, dS, "exchange")
        return MoveOutcome(False, dS, "exchange")

    def extract(self, node: int) -> MoveOutcome:
        """Split one node into a new singleton community when that raises the surprise."""
        self.graph._check_node(node)
        src = self.partition.assign[node]
        if len(self.partition.comms[src]) <= 1:
            raise ValueError("cannot extract from a singleton community")
        dM, dell = self._extract_delta(node)
        S_new = self._S_at(self.M + dM, self.ell + dell)
        dS = S_new - self.S
        if dS > TIE_EPS:
            self._apply_extract(node, dM, dell, S_new)
            return MoveOutcome(True, dS, "extract")
        return MoveOutcome(False, dS, "extract")

    def subcommunities(self, cid: int) -> list[set[int]]:
        """Sub-communities of one community, via greedy recursion on its subgraph."""
        self._check_comm(cid)
        members = self.partition.comms[cid]
        if len(members) < 2:
            return [set(members)]
        key = frozenset(members)
        cached = self._sub_cache.get(key)
        if cached is not None:
            return [set(sub) for sub in cached]
        sub, back = self.graph.subgraph(members)
        state = SurpriseState(sub, rng=self.rng)
        state.stepper()
        result = [
            {back[i] for i in comm}
            for comm in state.partition.communities()
        ]
        self._sub_cache[key] = [set(s) for s in result]
        return result

    def sub_extract(self, cid: int) -> MoveOutcome:
        """Split a sub-community off into its own community when that raises the surprise."""
        self._check_comm(cid)
        if len(self.partition.comms[cid]) < 2:
            raise ValueError("community too small for sub-community extraction")
        best_dS = -math.inf
        for sub in sorted(self.subcommunities(cid), key=min):
            if len(sub) == len(self.partition.comms[cid]):
                continue  # the whole community is not a split
            dM, dell = self._move_set_delta(sub, None)
            S_new = self._S_at(self.M + dM, self.ell + dell)
            dS = S_new - self.S
            if dS > TIE_EPS:
                self._apply_move_set(sub, None, dM, dell, S_new)
                return MoveOutcome(True, dS, "sub_extract")
            best_dS = max(best_dS, dS)
        return MoveOutcome(False, best_dS if best_dS > -math.inf else 0.0, "sub_extract")

    def sub_exchange(self, cid: int, cTo: int) -> MoveOutcome:
        """Relocate a sub-community wholesale into cTo when that raises the surprise."""
        self._check_comm(cid)
        self._check_comm(cTo)
        if len(self.partition.comms[cid]) < 2:
            raise ValueError("community too small for sub-community exchange")
        if cTo == cid:
            return MoveOutcome(False, 0.0, "sub_exchange")
        best_dS = -math.inf
        for sub in sorted(self.subcommunities(cid), key=min):
            if len(sub) == len(self.partition.comms[cid]):
                continue  # relocating everything is a merge, handled elsewhere
            dM, dell = self._move_set_delta(sub, cTo)
            S_new = self._S_at(self.M + dM, self.ell + dell)
            dS = S_new - self.S
            if dS > TIE_EPS:
                self._apply_move_set(sub, cTo, dM, dell, S_new)
                return MoveOutcome(True, dS, "sub_exchange")
            best_dS = max(best_dS, dS)
        return MoveOutcome(False, best_dS if best_dS > -math.inf else 0.0, "sub_exchange")

    # ----- driving loops --------------------------------------------------

    def stepper(self) -> dict[str, int]:
        """Greedy loop over all moves until none improves the surprise.

        For every community: for every member, for every neighbor in another
        community, try to merge the two communities and on failure to
        exchange a node between them; then extract nodes to exhaustion, then
        extract sub-communities to exhaustion, then exchange sub-communities
        with every other community to exhaustion.  Repeats while anything
        was accepted.  Returns acceptance counts per move kind.
        """
        counts = {kind: 0 for kind in MOVE_KINDS}
        p = self.partition
        changed = True
        while changed:
            changed = False
            ci = 0
            while ci < p.Nc:
                # merge / exchange driven by the members' neighborhoods
                for node in sorted(p.comms[ci]):
                    if p.assign[node] != ci:
                        continue  # moved away by an earlier accepted move
                    for nb in self.graph.neighbors(node):
                        cj = p.assign[nb]
                        if cj == ci:
                            continue
                        if self.merge(ci, cj).accepted:
                            counts["merge"] += 1
                            changed = True
                            ci = p.assign[node]
                            continue
                        moved = False
                        if len(p.comms[ci]) > 1:
                            if self.exchange(node, cj).accepted:
                                counts["exchange"] += 1
                                changed = True
                                moved = True
                        if not moved and len(p.comms[cj]) > 1:
                            if self.exchange(nb, ci).accepted:
                                counts["exchange"] += 1
                                changed = True
                        if moved:
                            break  # node left ci; go to the next member
                # extract to exhaustion
                success = True
                while success and len(p.comms[ci]) > 1:
                    success = False
                    for node in sorted(p.comms[ci]):
                        if len(p.comms[ci]) <= 1:
                            break
                        if self.extract(node).accepted:
                            counts["extract"] += 1
                            changed = True
                            success = True
                # sub-community extraction to exhaustion
                while len(p.comms[ci]) > 1 and self.sub_extract(ci).accepted:
                    counts["sub_extract"] += 1
                    changed = True
                # sub-community exchanges to exhaustion
                success = True
                while success and len(p.comms[ci]) > 1:
                    success = False
                    for cj in range(p.Nc):
                        if cj == ci or len(p.comms[ci]) < 2:
                            continue
                        if self.sub_exchange(ci, cj).accepted:
                            counts["sub_exchange"] += 1
                            changed = True
                            success = True
                ci += 1
        return counts

    def anneal_step(self, T: float) -> int:
        """One Monte-Carlo sweep (K random move proposals) at temperature T.

        Improving moves are always applied; a move with deltaS <= 0 is
        applied with probability exp(deltaS / T).  Returns the number of
        applied moves.
        """
        if T <= 0:
            raise ValueError("temperature must be positive")
        accepted = 0
        for _ in range(self.graph.K):
            if self._anneal_propose(T):
                accepted += 1
        return accepted

    def _metropolis(self, dS: float, T: float) -> bool:
        if dS > 0.0:
            return True
        return self.rng.random() < math.exp(dS / T)

    def _anneal_propose(self, T: float) -> bool:
        p = self.partition
        kind = MOVE_KINDS[self.rng.integers(len(MOVE_KINDS))]
        if kind == "merge":
            if p.Nc < 2:
                return False
            cA, cB = self.rng.choice(p.Nc, size=2, replace=False)
            dM, dell = self._merge_delta(int(cA), int(cB))
            S_new = self._S_at(self.M + dM, self.ell + dell)
            if self._metropolis(S_new - self.S, T):
                self._apply_merge(int(cA), int(cB), dM, dell, S_new)
                return True
            return False
        if kind == "exchange":
            node = int(self.rng.integers(self.graph.K))
            src = p.assign[node]
            if len(p.comms[src]) <= 1 or p.Nc < 2:
                return False
            cTo = int(self.rng.integers(p.Nc - 1))
            if cTo >= src:
                cTo += 1
            dM, dell = self._move_node_delta(node, cTo)
            S_new = self._S_at(self.M + dM, self.ell + dell)
            if self._metropolis(S_new - self.S, T):
                self._apply_move_node(node, cTo, dM, dell, S_new)
                return True
            return False
        if kind == "extract":
            node = int(self.rng.integers(self.graph.K))
            if len(p.comms[p.assign[node]]) <= 1:
                return False
            dM, dell = self._extract_delta(node)
            S_new = self._S_at(self.M + dM, self.ell + dell)
            if self._metropolis(S_new - self.S, T):
                self._apply_extract(node, dM, dell, S_new)
                return True
            return False
        # sub-community moves
        cid = int(self.rng.integers(p.Nc))
        if len(p.comms[cid]) < 2:
            return False
        subs = [s for s in self.subcommunities(cid) if len(s) < len(p.comms[cid])]
        if not subs:
            return False
        sub = subs[self.rng.integers(len(subs))]
        if kind == "sub_extract":
            cTo = None
        else:
            if p.Nc < 2:
                return False
            cTo = int(self.rng.integers(p.Nc - 1))
            if cTo >= cid:
                cTo += 1
        dM, dell = self._move_set_delta(sub, cTo)
        S_new = self._S_at(self.M + dM, self.ell + dell)
        if self._metropolis(S_new - self.S, T):
            self._apply_move_set(sub, cTo, dM, dell, S_new)
            return True
        return False

    def shake(self) -> tuple[int, int]:
        """Apply surprise-preserving relocations, exploring degenerate states.

        One pass of node exchanges and one pass of sub-community exchanges
        whose deltaS is zero to within 1e-12.  The surprise value is
        unchanged and no communities are merged.  Returns the number of
        exchanges and sub-community exchanges performed.
        """
        p = self.partition
        exchanges = 0
        for node in range(self.graph.K):
            src = p.assign[node]
            if len(p.comms[src]) <= 1:
                continue
            for cTo in range(p.Nc):
                if cTo == src:
                    continue
                dM, dell = self._move_node_delta(node, cTo)
                S_new = self._S_at(self.M + dM, self.ell + dell)
                if abs(S_new - self.S) < TIE_EPS:
                    self._apply_move_node(node, cTo, dM, dell, self.S)
                    exchanges += 1
                    break
        sub_exchanges = 0
        ci = 0
        while ci < p.Nc:
            if len(p.comms[ci]) < 2:
                ci += 1
                continue
            moved = False
            for cTo in range(p.Nc):
                if cTo == ci:
                    continue
                for sub in sorted(self.subcommunities(ci), key=min):
                    # singleton blocks are the node pass's job; relocating
                    # them here would undo exchanges made moments ago
                    if len(sub) < 2 or len(sub) == len(p.comms[ci]):
                        continue
                    dM, dell = self._move_set_delta(sub, cTo)
                    S_new = self._S_at(self.M + dM, self.ell + dell)
                    if abs(S_new - self.S) < TIE_EPS:
                        self._apply_move_set(sub, cTo, dM, dell, self.S)
                        sub_exchanges += 1
                        moved = True
                        break
                if moved:
                    break
            ci += 1
        return exchanges, sub_exchanges

    def check_deltas(self) -> list[tuple[tuple, float]]:
        """deltaS of every currently legal move, without changing the state.

        Entries are ((kind, *args), deltaS).  Sub-community moves are
        described by the frozen node set involved.
        """
        p = self.partition
        out: list[tuple[tuple, float]] = []
        for cA in range(p.Nc):
            for cB in range(cA + 1, p.Nc):
                dM, dell = self._merge_delta(cA, cB)
                out.append((("merge", cA, cB), self._S_at(self.M + dM, self.ell + dell) - self.S))
        for node in range(self.graph.K):
            src = p.assign[node]
            if len(p.comms[src]) <= 1:
                continue
            for cTo in range(p.Nc):
                if cTo == src:
                    continue
                dM, dell = self._move_node_delta(node, cTo)
                out.append((("exchange", node, cTo), self._S_at(self.M + dM, self.ell + dell) - self.S))
            dM, dell = self._extract_delta(node)
            out.append((("extract", node), self._S_at(self.M + dM, self.ell + dell) - self.S))
        for cid in range(p.Nc):
            if len(p.comms[cid]) < 2:
                continue
            for sub in sorted(self.subcommunities(cid), key=min):
                if len(sub) == len(p.comms[cid]):
                    continue
                dM, dell = self._move_set_delta(sub, None)
                out.append(
                    (("sub_extract", cid, frozenset(sub)), self._S_at(self.M + dM, self.ell + dell) - self.S)
                )
                for cTo in range(p.Nc):
                    if cTo == cid:
                        continue
                    dM, dell = self._move_set_delta(sub, cTo)
                    out.append(
                        (("sub_exchange", cid, frozenset(sub), cTo), self._S_at(self.M + dM, self.ell + dell) - self.S)
                    )
        return out

    def verify(self) -> bool:
        """True iff the cached M, ell, S match a from-scratch recomputation."""
        p = self.partition
        if sorted(p.assign) and p.Nc != max(p.assign) + 1:
            return False
        if any(not c for c in p.comms):
            return False
        for node, cid in enumerate(p.assign):
            if node not in p.comms[cid]:
                return False
        if sum(len(c) for c in p.comms) != self.graph.K:
            return False
        M, ell, S = partition_stats(self.graph, p)
        return M == self.M and ell == self.ell and abs(S - self.S) < 1e-9


def sample_partitions(
    graph: Graph,
    count: int,
    rng: np.random.Generator | int | None = None,
    temperatures: Sequence[float] = (2.0, 1.0, 0.5, 0.25),
    max_sweeps: int = 10_000,
) -> list[Partition]:
    """Collect distinct partitions by annealing sweeps plus degenerate shakes.

    Runs Monte-Carlo sweeps cycling through the given temperatures,
    snapshotting the partition after each sweep, until ``count`` distinct
    partitions were seen (or ``max_sweeps`` sweeps were spent).  Also
    records the greedy optimum and its shake neighborhood.
    """
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    seen: dict[tuple[int, ...], Partition] = {}

    def record(p: Partition) -> None:
        key = p.canonical()
        if key not in seen:
            seen[key] = Partition(list(key))

    state = SurpriseState(graph, rng=rng)
    state.stepper()
    record(state.partition)
    state.shake()
    record(state.partition)

    sweeps = 0
    while len(seen) < count and sweeps < max_sweeps:
        T = temperatures[sweeps % len(temperatures)]
        state.anneal_step(T)
        record(state.partition)
        sweeps += 1
    return list(seen.values())
