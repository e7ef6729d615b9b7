"""Named starting configurations for the CLI and the explorer UI."""

from __future__ import annotations

from .quiver import Quiver, quiver_from_json
from .session import SessionState
from .surface import (
    AnnulusSurface,
    DiskSurface,
    Triangulation,
    default_triangulation,
    disk_arc,
)


def _quiver(n, arrows) -> Quiver:
    return quiver_from_json({"n": n, "arrows": arrows})


PRESET_BUILDERS = {
    "a2": lambda: SessionState.from_quiver(_quiver(2, [[1, 2, 1]])),
    "a3": lambda: SessionState.from_quiver(_quiver(3, [[1, 2, 1], [2, 3, 1]])),
    "a4": lambda: SessionState.from_quiver(
        _quiver(4, [[1, 2, 1], [2, 3, 1], [3, 4, 1]])
    ),
    "kronecker": lambda: SessionState.from_quiver(_quiver(2, [[1, 2, 2]])),
    "markov": lambda: SessionState.from_quiver(
        _quiver(3, [[1, 2, 2], [2, 3, 2], [3, 1, 2]])
    ),
    "square": lambda: SessionState.from_triangulation(
        Triangulation(DiskSurface(4), [disk_arc(1, 3)])
    ),
    "pentagon": lambda: SessionState.from_triangulation(
        default_triangulation(DiskSurface(5))
    ),
    "hexagon": lambda: SessionState.from_triangulation(
        default_triangulation(DiskSurface(6))
    ),
    "heptagon": lambda: SessionState.from_triangulation(
        default_triangulation(DiskSurface(7))
    ),
    "annulus11": lambda: SessionState.from_triangulation(
        default_triangulation(AnnulusSurface(1, 1))
    ),
    "annulus21": lambda: SessionState.from_triangulation(
        default_triangulation(AnnulusSurface(2, 1))
    ),
}


def preset_names() -> list[str]:
    return sorted(PRESET_BUILDERS)


def build_preset(name: str) -> SessionState:
    try:
        builder = PRESET_BUILDERS[name]
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}"
        ) from None
    return builder()
