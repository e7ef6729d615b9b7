"""Command-line entry point.

Commands: explore, verify, basis, mutate, render, serve.
Exit codes: 0 success, 1 verification failure, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .laurent import LaurentError
from .presets import build_preset, preset_names
from .quiver import QuiverError, quiver_from_file
from .seeds import (
    ExploreLimits,
    SeedError,
    explore,
    graph_to_dot,
    graph_to_json,
    seed_to_json,
)
from .service import serve as bind_service
from .session import SessionError, SessionState
from .skein import SkeinError, SurfaceAlgebra, enumerate_basis
from .surface import (
    AnnulusSurface,
    GenericSurface,
    SurfaceError,
    generic_quiver,
    triangulation_from_file,
)
from .verify import (
    LimitExceeded,
    VerifyError,
    report_to_json_text,
    verify_quiver,
    verify_triangulation,
)
from .render import render_triangulation

INPUT_ERRORS = (
    QuiverError,
    SurfaceError,
    SeedError,
    LaurentError,
    SessionError,
    SkeinError,
    VerifyError,
    LimitExceeded,
    OSError,
    json.JSONDecodeError,
    KeyError,
    ValueError,
)


def _limits(args) -> ExploreLimits:
    return ExploreLimits(args.max_seeds, args.max_terms, args.max_depth)


def _load_source(args):
    """(quiver, triangulation or None) from --quiver/--surface/--preset."""
    given = [x for x in (args.quiver, args.surface, getattr(args, "preset", None)) if x]
    if len(given) != 1:
        raise ValueError("give exactly one of --quiver, --surface, --preset")
    if args.quiver:
        return quiver_from_file(args.quiver), None
    if args.surface:
        t = triangulation_from_file(args.surface)
        if isinstance(t, GenericSurface):
            return generic_quiver(t)[0], None
        return t.quiver(), t
    state = build_preset(args.preset)
    if state.triangulation is not None:
        return state.seed.quiver, state.triangulation
    return state.seed.quiver, None


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_explore(args) -> int:
    q, _t = _load_source(args)
    graph = explore(q, _limits(args))
    _write(json.dumps(graph_to_json(graph), indent=2, sort_keys=True) + "\n", args.out)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(graph_to_dot(graph))
    return 0


def cmd_verify(args) -> int:
    if args.surface:
        t = triangulation_from_file(args.surface)
        if isinstance(t, GenericSurface):
            report = verify_quiver(generic_quiver(t)[0], _limits(args))
        else:
            report = verify_triangulation(t, _limits(args))
    else:
        q, t = _load_source(args)
        report = verify_triangulation(t, _limits(args)) if t else verify_quiver(
            q, _limits(args)
        )
    text = report_to_json_text(report) if args.json else report.to_text()
    _write(text, args.out)
    return 0 if report.ok() else 1


def cmd_basis(args) -> int:
    if not args.surface and not getattr(args, "preset", None):
        raise ValueError("basis needs --surface or --preset")
    _q, t = _load_source(args)
    if t is None:
        raise ValueError("basis needs a disk or annulus triangulation")
    algebra = SurfaceAlgebra(t)
    winding = args.winding if isinstance(t.surface, AnnulusSurface) else 0
    basis = enumerate_basis(algebra, args.degree, winding)
    payload = {
        "surface": json.loads(json.dumps(t.surface.__dict__)),
        "degree_bound": args.degree,
        "winding_bound": winding,
        "elements": [
            {
                "flavor": b.flavor,
                "label": b.label(),
                "bracelet": b.bracelet_index,
                "value": str(b.value),
            }
            for b in basis
        ],
    }
    _write(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def cmd_mutate(args) -> int:
    q, t = _load_source(args)
    state = (
        SessionState.from_triangulation(t, _limits(args))
        if t is not None
        else SessionState.from_quiver(q, _limits(args))
    )
    for step in args.at.split(","):
        step = step.strip()
        if step:
            state.mutate(int(step))
    payload = seed_to_json(state.seed)
    payload["history"] = state.history
    _write(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def cmd_render(args) -> int:
    _q, t = _load_source(args)
    if t is None:
        raise ValueError("render needs a disk or annulus triangulation")
    _write(render_triangulation(t), args.out)
    return 0


def cmd_serve(args) -> int:
    try:
        server = bind_service(args.port, args.preset or "a2", args.ui)
    except OSError as exc:
        print(f"cannot bind port {args.port}: {exc}", file=sys.stderr)
        return 2
    print(f"serving on http://127.0.0.1:{args.port} (Ctrl-C stops)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusterlab",
        description="Exact cluster-algebra engine for unpunctured surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, preset_default=None):
        p.add_argument("--quiver", help="quiver JSON file")
        p.add_argument("--surface", help="surface/triangulation JSON file")
        p.add_argument(
            "--preset",
            default=preset_default,
            help=f"named preset ({', '.join(preset_names())})",
        )
        p.add_argument("--max-seeds", type=int, default=10000)
        p.add_argument("--max-terms", type=int, default=100000)
        p.add_argument("--max-depth", type=int, default=64)
        p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("explore", help="breadth-first exchange-graph exploration")
    common(p)
    p.add_argument("--dot", help="also write the graph in DOT format")
    p.set_defaults(fn=cmd_explore)

    p = sub.add_parser("verify", help="run the unistructurality check suite")
    common(p)
    p.add_argument("--json", action="store_true", help="JSON report instead of text")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("basis", help="enumerate the bracelet basis")
    common(p)
    p.add_argument("--degree", type=int, default=2, help="total multiplicity bound")
    p.add_argument("--winding", type=int, default=2, help="bracelet index bound")
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("mutate", help="apply a mutation sequence to the initial seed")
    common(p)
    p.add_argument("--at", required=True, help="comma-separated 1-based vertices")
    p.set_defaults(fn=cmd_mutate)

    p = sub.add_parser("render", help="render a triangulation as SVG")
    common(p)
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("serve", help="serve the JSON session endpoint")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--preset", default="a2")
    p.add_argument("--ui", help="static UI bundle directory to serve")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
