"""
Integer max-flow with lower bounds.

Breadth-first augmenting paths (Edmonds-Karp) over an edge list, so parallel
arcs keep their own flow. Lower bounds are handled by the usual circulation
reduction: a t->s return edge plus a super source and super sink that must be
saturated before the s->t flow is maximized.
"""

from __future__ import annotations

from collections import deque

from .exceptions import InfeasibleFlowError


class FlowNetwork:
    """Directed network on nodes 0..num_nodes-1.

    A network is single-use: max_flow() mutates the residual graph.
    """

    def __init__(self, num_nodes):
        self.num_nodes = num_nodes
        self.adj = [[] for _ in range(num_nodes)]
        self.head = []
        self.residual = []
        self.upper = []
        self.lower = []
        self._solved = False

    def add_edge(self, tail, head, capacity, lower=0):
        """Add an edge and return its index (its reverse is index ^ 1)."""
        if capacity < lower or lower < 0:
            raise ValueError(f"edge {tail}->{head}: bounds [{lower}, {capacity}] are inconsistent")
        index = len(self.head)
        self.head.extend((head, tail))
        self.residual.extend((capacity - lower, 0))
        self.upper.extend((capacity, 0))
        self.lower.extend((lower, 0))
        self.adj[tail].append(index)
        self.adj[head].append(index + 1)
        return index

    def flow(self, edge):
        """Flow currently carried by a forward edge."""
        return self.lower[edge] + (self.upper[edge] - self.lower[edge]) - self.residual[edge]

    def _bfs(self, source, sink):
        parent = [-1] * self.num_nodes
        seen = [False] * self.num_nodes
        seen[source] = True
        queue = deque([source])
        while queue:
            node = queue.popleft()
            for edge in self.adj[node]:
                nxt = self.head[edge]
                if not seen[nxt] and self.residual[edge] > 0:
                    seen[nxt] = True
                    parent[nxt] = edge
                    if nxt == sink:
                        return parent
                    queue.append(nxt)
        return None

    def _augment(self, source, sink):
        total = 0
        while True:
            parent = self._bfs(source, sink)
            if parent is None:
                return total
            push = None
            node = sink
            while node != source:
                edge = parent[node]
                push = self.residual[edge] if push is None else min(push, self.residual[edge])
                node = self.head[edge ^ 1]
            node = sink
            while node != source:
                edge = parent[node]
                self.residual[edge] -= push
                self.residual[edge ^ 1] += push
                node = self.head[edge ^ 1]
            total += push

    def _close(self, edge):
        self.residual[edge] = 0
        self.residual[edge ^ 1] = 0

    def max_flow(self, source, sink):
        """Maximum source->sink flow honoring all lower bounds.

        Raises:
            InfeasibleFlowError: If no flow satisfies the lower bounds.
        """
        if self._solved:
            raise RuntimeError("FlowNetwork.max_flow() may only be called once")
        self._solved = True

        if not any(self.lower):
            return self._augment(source, sink)

        excess = [0] * self.num_nodes
        for edge in range(0, len(self.head), 2):
            low = self.lower[edge]
            if low:
                excess[self.head[edge]] += low
                excess[self.head[edge ^ 1]] -= low

        big = sum(self.upper) + 1
        back = self.add_edge(sink, source, big)
        super_source, super_sink = self.num_nodes, self.num_nodes + 1
        self.num_nodes += 2
        self.adj.extend(([], []))
        helpers = []
        required = 0
        for node, amount in enumerate(excess):
            if amount > 0:
                helpers.append(self.add_edge(super_source, node, amount))
                required += amount
            elif amount < 0:
                helpers.append(self.add_edge(node, super_sink, -amount))

        if self._augment(super_source, super_sink) < required:
            raise InfeasibleFlowError("lower bounds cannot be satisfied")

        base = self.flow(back)
        self._close(back)
        for edge in helpers:
            self._close(edge)
        return base + self._augment(source, sink)

    def feasible(self, source, sink):
        """True iff some flow satisfies every lower bound."""
        try:
            self.max_flow(source, sink)
        except InfeasibleFlowError:
            return False
        return True
