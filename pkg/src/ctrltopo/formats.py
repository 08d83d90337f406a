"""JSON document formats for instances, edge overlays, and undirected graphs.

All documents use 0-based indices throughout.  Rendering is canonical: lists
are emitted in sorted order and the same instance always serializes to the
same bytes, so seeded generators are reproducible file-for-file.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

from .errors import FormatError
from .model import CompositeInstance, InterconnectionEdge, SparsityPattern, Subsystem

__all__ = [
    "FORMAT_VERSION",
    "render_instance",
    "parse_instance",
    "dumps_instance",
    "loads_instance",
    "render_edges",
    "parse_edges",
    "parse_graph",
    "render_graph",
]

FORMAT_VERSION = "1"


# ------------------------------------------------------------------ helpers

def _fail(msg: str) -> None:
    raise FormatError(msg)


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise FormatError(msg)


def _int_pair(value: Any, what: str) -> tuple[int, int]:
    _expect(isinstance(value, (list, tuple)) and len(value) == 2,
            f"{what} must be a pair, got {value!r}")
    a, b = value
    _expect(isinstance(a, int) and isinstance(b, int) and not isinstance(a, bool)
            and not isinstance(b, bool), f"{what} entries must be integers")
    return int(a), int(b)


# ----------------------------------------------------------------- instance

def render_instance(inst: CompositeInstance) -> dict:
    """Canonical plain-dict form of an instance (inverse of parse_instance)."""
    doc: dict[str, Any] = {
        "version": FORMAT_VERSION,
        "subsystems": [
            {
                "id": sub.index,
                "state_dim": sub.state_dim,
                "input_dim": sub.input_dim,
                "a_nonzeros": [list(rc) for rc in sorted(sub.a_pattern.nonzeros)],
                "b_nonzeros": [list(rc) for rc in sorted(sub.b_pattern.nonzeros)],
            }
            for sub in inst.subsystems
        ],
        "neighbors": [[i, j] for i, targets in enumerate(inst.neighbors)
                      for j in targets],
    }
    if inst.weights is not None:
        doc["weights"] = [
            {"src": [i, q], "dst": [j, p], "cost": inst.weights[(i, q, j, p)]}
            for (i, q, j, p) in sorted(inst.weights)
        ]
    if inst.modes is not None:
        doc["modes"] = [
            [[i, j] for i, targets in enumerate(mode) for j in targets]
            for mode in inst.modes
        ]
    return doc


def _parse_pairs(value: Any, what: str) -> list[tuple[int, int]]:
    _expect(isinstance(value, list), f"{what} must be a list of pairs")
    return [_int_pair(entry, f"{what} entry") for entry in value]


def parse_instance(doc: Any) -> CompositeInstance:
    """Validate a plain-dict instance document and build the instance."""
    _expect(isinstance(doc, dict), "instance document must be an object")
    version = doc.get("version")
    _expect(version == FORMAT_VERSION,
            f"unsupported format version {version!r} (expected {FORMAT_VERSION!r})")
    unknown = set(doc) - {"version", "subsystems", "neighbors", "weights", "modes"}
    _expect(not unknown, f"unknown top-level fields: {sorted(unknown)}")

    raw_subs = doc.get("subsystems")
    _expect(isinstance(raw_subs, list) and raw_subs,
            "subsystems must be a non-empty list")
    subsystems = []
    for pos, raw in enumerate(raw_subs):
        _expect(isinstance(raw, dict), f"subsystem #{pos} must be an object")
        fields = {"id", "state_dim", "input_dim", "a_nonzeros", "b_nonzeros"}
        missing = fields - set(raw)
        _expect(not missing, f"subsystem #{pos} misses fields {sorted(missing)}")
        extra = set(raw) - fields
        _expect(not extra, f"subsystem #{pos}: unknown fields {sorted(extra)}")
        _expect(raw["id"] == pos,
                f"subsystem #{pos} carries id {raw['id']} (ids must be 0..k-1 in order)")
        n, m = raw["state_dim"], raw["input_dim"]
        _expect(isinstance(n, int) and n >= 1, f"subsystem #{pos}: bad state_dim {n!r}")
        _expect(isinstance(m, int) and m >= 0, f"subsystem #{pos}: bad input_dim {m!r}")
        try:
            a = SparsityPattern(n, n, _parse_pairs(raw["a_nonzeros"],
                                                   f"subsystem #{pos} a_nonzeros"))
            b = SparsityPattern(n, m, _parse_pairs(raw["b_nonzeros"],
                                                   f"subsystem #{pos} b_nonzeros"))
            subsystems.append(Subsystem(index=pos, a_pattern=a, b_pattern=b))
        except ValueError as exc:
            _fail(f"subsystem #{pos}: {exc}")

    neighbors: dict[int, list[int]] = {}
    for i, j in _parse_pairs(doc.get("neighbors", []), "neighbors"):
        neighbors.setdefault(i, []).append(j)

    weights = None
    if "weights" in doc:
        raw_w = doc["weights"]
        _expect(isinstance(raw_w, list), "weights must be a list")
        weights = {}
        for pos, entry in enumerate(raw_w):
            _expect(isinstance(entry, dict) and {"src", "dst", "cost"} <= set(entry),
                    f"weights entry #{pos} must carry src, dst and cost")
            i, q = _int_pair(entry["src"], f"weights entry #{pos} src")
            j, p = _int_pair(entry["dst"], f"weights entry #{pos} dst")
            cost = entry["cost"]
            _expect(isinstance(cost, (int, float)) and not isinstance(cost, bool),
                    f"weights entry #{pos}: cost must be a number")
            key = (i, q, j, p)
            _expect(key not in weights, f"weights entry #{pos}: duplicate edge {key}")
            weights[key] = float(cost)

    modes = None
    if "modes" in doc:
        raw_m = doc["modes"]
        _expect(isinstance(raw_m, list) and raw_m, "modes must be a non-empty list")
        modes = []
        for s, raw_mode in enumerate(raw_m):
            mode: dict[int, list[int]] = {}
            for i, j in _parse_pairs(raw_mode, f"mode #{s}"):
                mode.setdefault(i, []).append(j)
            modes.append(mode)

    try:
        return CompositeInstance(subsystems=tuple(subsystems), neighbors=neighbors,
                                 weights=weights, modes=modes)
    except ValueError as exc:
        _fail(str(exc))


def dumps_instance(inst: CompositeInstance) -> str:
    """Canonical JSON text for an instance (stable byte-for-byte)."""
    return json.dumps(render_instance(inst), indent=2) + "\n"


def loads_instance(text: str) -> CompositeInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"invalid JSON: {exc}")
    return parse_instance(doc)


# -------------------------------------------------------------- edge overlay

def render_edges(edges: Iterable[InterconnectionEdge]) -> list[dict]:
    out = []
    for e in sorted(edges, key=InterconnectionEdge.key):
        entry: dict[str, Any] = {"src": [e.src_subsystem, e.src_state],
                                 "dst": [e.dst_subsystem, e.dst_state]}
        if e.mode is not None:
            entry["mode"] = e.mode
        out.append(entry)
    return out


def parse_edges(data: Any) -> tuple[InterconnectionEdge, ...]:
    """Parse an edge overlay: a JSON list of {src, dst, mode?} objects.

    A wrapping object {"edges": [...]} is accepted too, so a design result
    document can be fed straight back in.
    """
    if isinstance(data, dict) and "edges" in data:
        data = data["edges"]
    _expect(isinstance(data, list), "edge overlay must be a list of edge objects")
    out = []
    for pos, entry in enumerate(data):
        _expect(isinstance(entry, dict) and {"src", "dst"} <= set(entry),
                f"edge #{pos} must carry src and dst")
        unknown = set(entry) - {"src", "dst", "mode"}
        _expect(not unknown, f"edge #{pos}: unknown fields {sorted(unknown)}")
        i, q = _int_pair(entry["src"], f"edge #{pos} src")
        j, p = _int_pair(entry["dst"], f"edge #{pos} dst")
        mode = entry.get("mode")
        if mode is not None:
            _expect(isinstance(mode, int) and not isinstance(mode, bool),
                    f"edge #{pos}: mode must be an integer")
        out.append(InterconnectionEdge(i, q, j, p, mode))
    return tuple(out)


# ---------------------------------------------------------- undirected graph

def parse_graph(data: Any) -> tuple[int, list[tuple[int, int]]]:
    """Parse an undirected graph document {"vertices": r, "edges": [[u, v]]}."""
    _expect(isinstance(data, dict), "graph document must be an object")
    unknown = set(data) - {"vertices", "edges"}
    _expect(not unknown, f"unknown graph fields: {sorted(unknown)}")
    r = data.get("vertices")
    _expect(isinstance(r, int) and not isinstance(r, bool) and r >= 1,
            f"vertices must be a positive integer, got {r!r}")
    edges = _parse_pairs(data.get("edges", []), "graph edges")
    return r, edges


def render_graph(vertices: int, edges: Sequence[tuple[int, int]]) -> dict:
    canon = sorted({(min(u, v), max(u, v)) for u, v in edges})
    return {"vertices": vertices, "edges": [list(e) for e in canon]}
