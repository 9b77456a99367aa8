"""Single-agent knowledge search over a prior-knowledge network.

The agent starts on its problem elements, repeatedly selects one frontier
node under a fixed rule, pays the reciprocal of the strongest edge weight
back into its searched set, and stops when the last solution element has
been searched.  Five rules are supported: breadth-first, depth-first, and
three informed rules evaluating edge familiarity, degree centrality, or
node recency.

All ties bottom out on ascending node key, so runs are exactly
reproducible; an intentionally naive reference simulator in the test
suite pins every selection and cost decision.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from datetime import date
from enum import Enum
from typing import Iterable

from .errors import BudgetExceeded, EmptyFrontier, NoStartNodes
from .network import PriorKnowledgeNetwork


class SearchRule(str, Enum):
    BFS = "bfs"
    DFS = "dfs"
    FAMILIARITY = "familiarity"
    DEGREE = "degree"
    RECENCY = "recency"


ALL_RULES = (
    SearchRule.BFS,
    SearchRule.DFS,
    SearchRule.FAMILIARITY,
    SearchRule.DEGREE,
    SearchRule.RECENCY,
)


class Termination(str, Enum):
    COMPLETED = "completed"
    FRONTIER_EXHAUSTED = "frontier_exhausted"


@dataclass(frozen=True)
class SearchStep:
    index: int
    key: str
    cost: float
    cumulative: float
    skes_found: int


@dataclass(frozen=True)
class SearchResult:
    rule: SearchRule
    tsc: float
    nsn: int
    trace: tuple[SearchStep, ...]
    terminated: Termination


class SearchState:
    """Searched set V, frontier N, and the per-rule order structures."""

    def __init__(self, pkn: PriorKnowledgeNetwork, pke_keys, ske_keys):
        g = pkn.graph
        start = sorted(k for k in pke_keys if k in g)
        if not start:
            raise NoStartNodes(f"no problem element of {pkn.focal_id!r} is in the network")
        self.pkn = pkn
        self.targets = frozenset(ske_keys)
        self.pubdate_focal: date | None = pkn.focal_pubdate
        self.searched: dict[str, None] = dict.fromkeys(start)  # insertion-ordered set
        self.found = len(self.targets & self.searched.keys())
        self.frontier: set[str] = set()
        # Strongest edge into V per frontier node; doubles as the
        # familiarity score and the step-cost denominator.
        self.best_weight: dict[str, float] = {}
        self.queue: deque[str] = deque()
        self.stack: list[str] = []
        self._absorb_neighbors(start)

    def _absorb_neighbors(self, keys) -> None:
        """Discover the unseen neighbors of the given nodes as one batch,
        entering the queue/stack in ascending key order."""
        g = self.pkn.graph
        fresh = []
        for key in keys:
            for nbr, data in g[key].items():
                if nbr in self.searched:
                    continue
                w = data["weight"]
                if nbr in self.frontier:
                    if w > self.best_weight[nbr]:
                        self.best_weight[nbr] = w
                else:
                    self.frontier.add(nbr)
                    self.best_weight[nbr] = w
                    fresh.append(nbr)
        fresh.sort()
        self.queue.extend(fresh)
        self.stack.extend(reversed(fresh))  # ascending keys pop first

    def advance(self, key: str) -> None:
        """Move a selected node from the frontier into the searched set."""
        self.frontier.remove(key)
        del self.best_weight[key]
        self.searched[key] = None
        if key in self.targets:
            self.found += 1
        self._absorb_neighbors((key,))


def init_state(
    pkn: PriorKnowledgeNetwork,
    pke_keys: Iterable[str] | None = None,
    ske_keys: Iterable[str] | None = None,
) -> SearchState:
    """Seed the searched set with the network's problem elements."""
    pkes = frozenset(pke_keys) if pke_keys is not None else pkn.pke_keys
    skes = frozenset(ske_keys) if ske_keys is not None else pkn.ske_keys
    return SearchState(pkn, pkes, skes)


def select_next(state: SearchState, rule: SearchRule) -> str:
    """Pick the frontier node the rule ranks best.

    Residual ties always fall through to ascending node key.
    """
    if not state.frontier:
        raise EmptyFrontier("selection requested with an empty frontier")
    g = state.pkn.graph
    if rule is SearchRule.BFS:
        key = state.queue.popleft()
        assert key in state.frontier
        return key
    if rule is SearchRule.DFS:
        key = state.stack.pop()
        assert key in state.frontier
        return key
    if rule is SearchRule.FAMILIARITY:
        return min(
            state.frontier,
            key=lambda k: (-state.best_weight[k], -g.nodes[k]["degree"], k),
        )
    if rule is SearchRule.DEGREE:
        return min(
            state.frontier,
            key=lambda k: (-g.nodes[k]["degree"], -g.nodes[k]["strength"], k),
        )
    if rule is SearchRule.RECENCY:
        # Most recent birthdate minimizes (focal pubdate - birthdate).
        pub = state.pubdate_focal
        return min(
            state.frontier,
            key=lambda k: (
                pub.toordinal() - g.nodes[k]["birthdate"].toordinal()
                if pub
                else -g.nodes[k]["birthdate"].toordinal(),
                g.nodes[k]["degree"],
                k,
            ),
        )
    raise ValueError(f"unknown rule {rule!r}")


def step_cost(selected: str, state: SearchState) -> float:
    """Reciprocal of the strongest edge from the node into the searched set."""
    g = state.pkn.graph
    best = max(
        data["weight"]
        for nbr, data in g[selected].items()
        if nbr in state.searched
    )
    return 1.0 / best


def run_search(
    pkn: PriorKnowledgeNetwork,
    rule: SearchRule,
    pke_keys: Iterable[str] | None = None,
    ske_keys: Iterable[str] | None = None,
    max_steps: int | None = None,
) -> SearchResult:
    """Run one full search; the trace records every step in order."""
    rule = SearchRule(rule)
    state = init_state(pkn, pke_keys, ske_keys)
    limit = max_steps if max_steps is not None else pkn.graph.number_of_nodes()
    trace: list[SearchStep] = []
    total = 0.0
    n_targets = len(state.targets)
    while state.found < n_targets:
        if not state.frontier:
            return SearchResult(
                rule, total, len(trace), tuple(trace), Termination.FRONTIER_EXHAUSTED
            )
        if len(trace) >= limit:
            raise BudgetExceeded(limit)
        key = select_next(state, rule)
        cost = step_cost(key, state)
        total += cost
        state.advance(key)
        trace.append(SearchStep(len(trace) + 1, key, cost, total, state.found))
    return SearchResult(rule, total, len(trace), tuple(trace), Termination.COMPLETED)
