"""Interactive session state: a seed, optionally locked to a surface
triangulation, with history and undo/redo.

When a surface context is present, mutation at vertex i and the flip at
position i are the same move (the triangulation's arc positions are the
quiver vertices), and the lock-step invariant
quiver_of_triangulation(t) == seed.quiver is asserted after every
operation."""

from __future__ import annotations

from dataclasses import dataclass, field

from .quiver import Quiver, quiver_to_json
from .seeds import (
    ExploreLimits,
    Seed,
    explore,
    graph_to_json,
    initial_seed,
    mutate_seed,
)
from .surface import Triangulation, triangulation_to_json


class SessionError(Exception):
    pass


@dataclass
class SessionState:
    seed: Seed
    triangulation: Triangulation | None = None
    limits: ExploreLimits = field(default_factory=ExploreLimits)
    history: list = field(default_factory=list)
    _undo: list = field(default_factory=list)
    _redo: list = field(default_factory=list)

    @staticmethod
    def from_quiver(q: Quiver, limits: ExploreLimits | None = None) -> "SessionState":
        return SessionState(initial_seed(q), None, limits or ExploreLimits())

    @staticmethod
    def from_triangulation(
        t: Triangulation, limits: ExploreLimits | None = None
    ) -> "SessionState":
        return SessionState(initial_seed(t.quiver()), t, limits or ExploreLimits())

    def _check_lockstep(self) -> None:
        if self.triangulation is not None:
            if self.triangulation.quiver() != self.seed.quiver:
                raise SessionError("flip/mutation lock-step invariant violated")

    def _snapshot(self):
        return (self.seed, self.triangulation)

    def mutate(self, vertex: int) -> None:
        """Mutate at a 1-based vertex; flips the matching arc when a
        surface is attached."""
        if not 1 <= vertex <= self.seed.n:
            raise SessionError(f"vertex {vertex} out of range 1..{self.seed.n}")
        self._undo.append((self._snapshot(), list(self.history)))
        self._redo.clear()
        self.seed = mutate_seed(self.seed, vertex - 1)
        if self.triangulation is not None:
            self.triangulation = self.triangulation.flip(vertex - 1)
        self.history.append(["mutate", vertex])
        self._check_lockstep()

    def flip(self, position: int) -> None:
        """Flip the arc at a 1-based position; same move as mutate."""
        if self.triangulation is None:
            raise SessionError("no surface attached; use mutate")
        self.mutate(position)
        self.history[-1] = ["flip", position]

    def undo(self) -> bool:
        if not self._undo:
            return False
        self._redo.append((self._snapshot(), list(self.history)))
        (self.seed, self.triangulation), self.history = self._undo.pop()
        self._check_lockstep()
        return True

    def redo(self) -> bool:
        if not self._redo:
            return False
        self._undo.append((self._snapshot(), list(self.history)))
        (self.seed, self.triangulation), self.history = self._redo.pop()
        self._check_lockstep()
        return True

    def state_json(self) -> dict:
        data = {
            "rank": self.seed.n,
            "cluster": [str(v) for v in self.seed.cluster],
            "quiver": quiver_to_json(self.seed.quiver),
            "history": [list(h) for h in self.history],
            "limits": {
                "max_seeds": self.limits.max_seeds,
                "max_terms": self.limits.max_terms,
                "max_depth": self.limits.max_depth,
            },
        }
        if self.triangulation is not None:
            data["surface"] = triangulation_to_json(self.triangulation)
        else:
            data["surface"] = None
        return data

    def exchange_ball_json(self, radius: int) -> dict:
        limits = ExploreLimits(
            max_seeds=self.limits.max_seeds,
            max_terms=self.limits.max_terms,
            max_depth=max(1, radius),
        )
        graph = explore(self.seed.quiver, limits, start=self.seed)
        return graph_to_json(graph)
