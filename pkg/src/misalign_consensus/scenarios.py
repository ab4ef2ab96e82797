"""Scenario files (strict JSON schema) and the built-in scenario catalog.

Scenario documents are JSON objects with exactly these fields:

    format_version  integer, currently 1                      (required)
    name            scenario label                            (required)
    n               agent count                               (required)
    edges           list of 1-indexed agent pairs [i, j]      (required)
    theta           list of angle literals, one per agent     (required)
    initial         list of [x, y] positions                  (optional)
    horizon         simulated time span                       (optional)
    step            integrator step size                      (optional)

Angle literals are strings: plain radians ("0.75"), rational multiples of
pi ("pi/6", "-3pi/5", "2pi"), or degrees ("30 deg").  Agents are 1-indexed
in files and in command-line output; the in-memory API is 0-indexed.

When ``initial`` is omitted, agents are placed on a circle of radius 2,
agent i at angle 2*pi*(i-1)/n.
"""

from __future__ import annotations

import json
import math
import re

import numpy as np

from .errors import ScenarioError
from .graph import Graph, new_undirected
from .rotation import AngleProfile
from .simulator import DEFAULT_HORIZON, DEFAULT_STEP, Scenario, validate_step_bound

FORMAT_VERSION = 1

_REQUIRED_FIELDS = ("format_version", "name", "n", "edges", "theta")
_OPTIONAL_FIELDS = ("initial", "horizon", "step")

_PI_LITERAL = re.compile(
    r"^(?P<sign>[+-])?\s*(?P<mult>\d+(?:\.\d+)?)?\s*\*?\s*pi"
    r"(?:\s*/\s*(?P<div>\d+(?:\.\d+)?))?$",
    re.IGNORECASE,
)
_DEG_LITERAL = re.compile(r"^(?P<value>[+-]?\d+(?:\.\d+)?)\s*deg$", re.IGNORECASE)


def parse_angle(literal) -> float:
    """Parse an angle literal to radians."""
    if isinstance(literal, (int, float)) and not isinstance(literal, bool):
        return float(literal)
    if not isinstance(literal, str):
        raise ScenarioError(f"angle literal must be a string or number: {literal!r}")
    text = literal.strip()
    m = _PI_LITERAL.match(text)
    if m:
        value = math.pi
        if m.group("mult"):
            value *= float(m.group("mult"))
        if m.group("div"):
            value /= float(m.group("div"))
        return -value if m.group("sign") == "-" else value
    m = _DEG_LITERAL.match(text)
    if m:
        return math.radians(float(m.group("value")))
    try:
        return float(text)
    except ValueError:
        raise ScenarioError(f"cannot parse angle literal {literal!r}") from None


def _format_angle(value: float) -> str:
    return repr(float(value))


def default_initial(n: int) -> np.ndarray:
    """Documented default placement: radius-2 circle, agent i at 2*pi*i/n."""
    angles = 2.0 * np.pi * np.arange(n) / n
    return np.column_stack([2.0 * np.cos(angles), 2.0 * np.sin(angles)]).ravel()


def _parse_edges(n: int, raw) -> list[tuple[int, int]]:
    if not isinstance(raw, list):
        raise ScenarioError("field 'edges' must be a list of [i, j] pairs")
    edges = []
    for entry in raw:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in entry)
        ):
            raise ScenarioError(
                f"field 'edges': expected a pair of agent numbers, got {entry!r} "
                "(weighted edges are not supported)"
            )
        i, j = entry
        if not (1 <= i <= n and 1 <= j <= n):
            raise ScenarioError(
                f"field 'edges': pair [{i}, {j}] out of range 1..{n}"
            )
        if i == j:
            raise ScenarioError(f"field 'edges': self-loop [{i}, {j}]")
        edges.append((i - 1, j - 1))
    return edges


def from_document(doc: dict) -> Scenario:
    """Validate a parsed JSON document and build the scenario it describes."""
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    unknown = set(doc) - set(_REQUIRED_FIELDS) - set(_OPTIONAL_FIELDS)
    if unknown:
        raise ScenarioError(f"unknown field(s): {', '.join(sorted(unknown))}")
    missing = [f for f in _REQUIRED_FIELDS if f not in doc]
    if missing:
        raise ScenarioError(f"missing required field(s): {', '.join(missing)}")
    if doc["format_version"] != FORMAT_VERSION:
        raise ScenarioError(
            f"field 'format_version': expected {FORMAT_VERSION}, "
            f"got {doc['format_version']!r}"
        )
    name = doc["name"]
    if not isinstance(name, str) or not name:
        raise ScenarioError("field 'name' must be a non-empty string")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ScenarioError(f"field 'n' must be a positive integer, got {n!r}")

    try:
        g = new_undirected(n, _parse_edges(n, doc["edges"]))
    except ValueError as exc:
        raise ScenarioError(f"field 'edges': {exc}") from exc

    theta_raw = doc["theta"]
    if not isinstance(theta_raw, list):
        raise ScenarioError("field 'theta' must be a list of angle literals")
    if len(theta_raw) != n:
        raise ScenarioError(
            f"field 'theta': {len(theta_raw)} entries for {n} agents"
        )
    try:
        angles = [parse_angle(t) for t in theta_raw]
    except ScenarioError as exc:
        raise ScenarioError(f"field 'theta': {exc}") from exc
    literals = tuple(
        t if isinstance(t, str) else _format_angle(t) for t in theta_raw
    )

    if "initial" in doc:
        raw = doc["initial"]
        if (
            not isinstance(raw, list)
            or len(raw) != n
            or not all(
                isinstance(pt, list)
                and len(pt) == 2
                and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pt)
                for pt in raw
            )
        ):
            raise ScenarioError(
                f"field 'initial' must be a list of {n} positions [x, y]"
            )
        initial = np.asarray(raw, dtype=float).ravel()
    else:
        initial = default_initial(n)

    horizon = doc.get("horizon", DEFAULT_HORIZON)
    step = doc.get("step", DEFAULT_STEP)
    for field_name, value in (("horizon", horizon), ("step", step)):
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ScenarioError(f"field '{field_name}' must be a number")

    s = Scenario(
        graph=g,
        profile=AngleProfile(angles),
        initial=initial,
        horizon=float(horizon),
        step=float(step),
        label=name,
        theta_literals=literals,
    )
    validate_step_bound(s)
    return s


def parse(text: str) -> Scenario:
    """Parse scenario JSON text into a validated scenario."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return from_document(doc)


def parse_file(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def to_document(s: Scenario) -> dict:
    """Render a scenario back to its JSON document form (1-indexed agents)."""
    literals = s.theta_literals or tuple(_format_angle(t) for t in s.profile.theta)
    return {
        "format_version": FORMAT_VERSION,
        "name": s.label,
        "n": s.graph.n,
        "edges": [[a + 1, b + 1] for a, b in s.graph.edges],
        "theta": list(literals),
        "initial": [
            [float(x), float(y)] for x, y in s.initial.reshape(s.graph.n, 2)
        ],
        "horizon": s.horizon,
        "step": s.step,
    }


def serialize(s: Scenario) -> str:
    return json.dumps(to_document(s), indent=2)


def _doc(name, n, edges, theta, horizon=None):
    doc = {
        "format_version": FORMAT_VERSION,
        "name": name,
        "n": n,
        "edges": edges,
        "theta": theta,
        "initial": [
            [float(x), float(y)] for x, y in default_initial(n).reshape(n, 2)
        ],
    }
    if horizon is not None:
        doc["horizon"] = horizon
    return doc


_EX1_EDGES = [[1, 2]]
_EX2_EDGES = [[1, 2], [1, 3], [1, 4], [1, 5], [2, 3], [3, 5], [4, 5]]
_EX3_EDGES = [[1, 2], [1, 3], [2, 3]]

_CATALOG: dict[str, dict] = {
    d["name"]: d
    for d in [
        _doc("ex1-case1", 2, _EX1_EDGES, ["0", "0"]),
        _doc("ex1-case2-a", 2, _EX1_EDGES, ["pi/4", "pi/4"]),
        _doc("ex1-case2-b", 2, _EX1_EDGES, ["pi/4", "-pi/4"]),
        _doc("ex1-case2-c", 2, _EX1_EDGES, ["pi/4", "-pi/3"]),
        _doc("ex1-case2-d", 2, _EX1_EDGES, ["pi/2.5", "-pi/2.2"]),
        _doc("ex1-case3-a", 2, _EX1_EDGES, ["pi/2", "-pi/2"]),
        _doc("ex1-case3-b", 2, _EX1_EDGES, ["3pi/4", "-pi/2"]),
        _doc("ex1-case3-c", 2, _EX1_EDGES, ["3pi/4", "pi/2"]),
        _doc("ex1-case3-d", 2, _EX1_EDGES, ["5pi/9", "-pi/18"]),
        _doc("ex1-case4-a", 2, _EX1_EDGES, ["3pi/4", "3pi/4"]),
        _doc("ex1-case4-b", 2, _EX1_EDGES, ["3pi/4", "-3pi/4"]),
        _doc("ex2-case1", 5, _EX2_EDGES, ["0", "0", "0", "0", "0"]),
        _doc(
            "ex2-case2", 5, _EX2_EDGES, ["pi/6", "-pi/8", "pi/9", "-pi/18", "pi/25"]
        ),
        _doc(
            "ex2-case3",
            5,
            _EX2_EDGES,
            ["pi/2.1", "-pi/2.2", "pi/2.1", "-pi/2.05", "-pi/4"],
        ),
        # The slow unstable mode here needs a long run to cross the
        # divergence threshold.
        _doc(
            "ex2-case4",
            5,
            _EX2_EDGES,
            ["pi/6", "-3pi/5", "pi/9", "-pi/18", "3pi/5"],
            horizon=450.0,
        ),
        _doc(
            "ex2-case5", 5, _EX2_EDGES, ["pi/1.8", "pi/18", "0", "-pi/18", "-pi/8"]
        ),
        _doc("ex2-case6", 5, _EX2_EDGES, ["5pi/8", "0", "0", "0", "0"]),
        _doc("ex3-a", 3, _EX3_EDGES, ["pi/1.9", "-pi/3", "-pi/3"]),
        _doc("ex3-b", 3, _EX3_EDGES, ["pi/1.6", "-pi/3", "-pi/3"]),
    ]
}


def builtin_names() -> list[str]:
    return sorted(_CATALOG)


def builtin(name: str) -> Scenario:
    """Load a built-in scenario by catalog key."""
    if name not in _CATALOG:
        raise ScenarioError(
            f"unknown builtin scenario {name!r}; available: "
            + ", ".join(builtin_names())
        )
    return from_document(_CATALOG[name])
