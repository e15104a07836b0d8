"""Small directed-graph helpers shared by the automaton and solver code.

Graphs are plain adjacency mappings ``node -> iterable of nodes``. Every node
that appears as a successor must also be a key.
"""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Mapping


def reachable(graph: Mapping, sources: Iterable[Hashable]) -> set:
    """Nodes reachable from ``sources`` (sources included)."""
    seen = set(sources)
    queue = deque(seen)
    while queue:
        node = queue.popleft()
        for succ in graph[node]:
            if succ not in seen:
                seen.add(succ)
                queue.append(succ)
    return seen


def reverse(graph: Mapping) -> dict:
    rev: dict = {node: [] for node in graph}
    for node, succs in graph.items():
        for succ in succs:
            rev[succ].append(node)
    return rev


def kosaraju(graph: Mapping) -> list[list]:
    """Strongly connected components, Kosaraju-Sharir style.

    Components come out in topological order of the condensation: if there
    is an edge from component X to component Y then X is listed first.
    Iterative, so deep graphs do not hit the recursion limit.
    """
    order: list = []
    visited: set = set()
    for root in graph:
        if root in visited:
            continue
        visited.add(root)
        stack = [(root, iter(graph[root]))]
        while stack:
            node, it = stack[-1]
            for succ in it:
                if succ not in visited:
                    visited.add(succ)
                    stack.append((succ, iter(graph[succ])))
                    break
            else:
                stack.pop()
                order.append(node)

    rev = reverse(graph)
    assigned: set = set()
    components = []
    for root in reversed(order):
        if root in assigned:
            continue
        comp = [root]
        assigned.add(root)
        stack = [root]
        while stack:
            node = stack.pop()
            for pred in rev[node]:
                if pred not in assigned:
                    assigned.add(pred)
                    comp.append(pred)
                    stack.append(pred)
        components.append(comp)
    return components


def on_cycle(graph: Mapping) -> set:
    """Nodes lying on at least one directed cycle (self-loops count)."""
    result = set()
    for comp in kosaraju(graph):
        if len(comp) > 1:
            result.update(comp)
        elif comp[0] in graph[comp[0]]:
            result.add(comp[0])
    return result
