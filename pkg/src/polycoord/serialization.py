"""Text formats: the versioned game document and the edge-list graph format.

Game documents are JSON with every rational rendered as a "num/den" string;
floats are rejected outright so no rounding can ever enter through I/O.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Union

from .errors import GameValidationError, ParameterError
from .game_core import GraphCoordinationSpec, PolymatrixGame, edge_key

FORMAT = "polycoord-game/1"

Game = Union[PolymatrixGame, GraphCoordinationSpec]


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text, where: str = "value") -> Fraction:
    """Parse "num/den" or integer strings; anything else is an error."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not re.fullmatch(
        r"-?\d+(/\d+)?", text.strip()
    ):
        raise GameValidationError(
            f"{where}: expected 'num' or 'num/den', got {text!r}"
        )
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise GameValidationError(f"{where}: zero denominator in {text!r}") from None


def _reject_float(text):
    raise GameValidationError(f"floats are not allowed in game documents: {text}")


def serialize_game(game: Game) -> str:
    """Canonical document text for a game; stable under parse/serialize."""
    if isinstance(game, GraphCoordinationSpec):
        doc = {
            "format": FORMAT,
            "kind": "graph-coordination",
            "strategies": [list(c) for c in game.colors],
            "preferences": [
                {c: format_rational(q) for c, q in sorted(p.items())}
                for p in game.preferences
            ],
            "edges": [
                {"i": i, "j": j, "weight": format_rational(w)}
                for (i, j), w in sorted(game.weights.items())
            ],
        }
    elif isinstance(game, PolymatrixGame):
        doc = {
            "format": FORMAT,
            "kind": "polymatrix",
            "strategies": [list(names) for names in game.strategies],
            "preferences": [
                [format_rational(q) for q in prefs] for prefs in game.preferences
            ],
            "edges": [
                {
                    "i": i,
                    "j": j,
                    "table": [[format_rational(q) for q in row] for row in table],
                }
                for (i, j), table in sorted(game.tables.items())
            ],
        }
    else:
        raise ParameterError(f"cannot serialize {type(game).__name__}")
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def parse_game(text: str) -> Game:
    """Parse a game document; all problems raise GameValidationError with a
    location hint."""
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise GameValidationError(f"document is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise GameValidationError("document root must be an object")
    if doc.get("format") != FORMAT:
        raise GameValidationError(
            f"unsupported format {doc.get('format')!r}, expected {FORMAT!r}"
        )
    kind = doc.get("kind")
    strategies = doc.get("strategies")
    if not isinstance(strategies, list) or not all(
        isinstance(names, list) and all(isinstance(c, str) for c in names)
        for names in strategies
    ):
        raise GameValidationError("strategies: expected a list of string lists")
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise GameValidationError("edges: expected a list")

    if kind == "graph-coordination":
        return _parse_graph_coordination(doc, strategies, edges)
    if kind == "polymatrix":
        return _parse_polymatrix(doc, strategies, edges)
    raise GameValidationError(f"unknown game kind {kind!r}")


def _edge_endpoints(entry, idx, n):
    if not isinstance(entry, dict):
        raise GameValidationError(f"edges[{idx}]: expected an object")
    i, j = entry.get("i"), entry.get("j")
    if not (isinstance(i, int) and isinstance(j, int)):
        raise GameValidationError(f"edges[{idx}]: i and j must be integers")
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise GameValidationError(f"edges[{idx}]: bad endpoints ({i},{j})")
    return i, j


def _parse_graph_coordination(doc, strategies, edges):
    n = len(strategies)
    weights = {}
    for idx, entry in enumerate(edges):
        i, j = _edge_endpoints(entry, idx, n)
        key = edge_key(i, j)
        if key in weights:
            raise GameValidationError(f"edges[{idx}]: duplicate edge {key}")
        weights[key] = parse_rational(
            entry.get("weight"), f"edges[{idx}].weight"
        )
    raw_prefs = doc.get("preferences", [{} for _ in strategies])
    if len(raw_prefs) != n:
        raise GameValidationError("preferences: wrong number of players")
    preferences = []
    for pi, p in enumerate(raw_prefs):
        if not isinstance(p, dict):
            raise GameValidationError(
                f"preferences[{pi}]: expected a color -> rational object"
            )
        for c in p:
            if c not in strategies[pi]:
                raise GameValidationError(
                    f"preferences[{pi}]: unknown color {c!r}"
                )
        preferences.append(
            {c: parse_rational(q, f"preferences[{pi}][{c}]") for c, q in p.items()}
        )
    return GraphCoordinationSpec(
        tuple(tuple(c) for c in strategies), weights, tuple(preferences)
    )


def _parse_polymatrix(doc, strategies, edges):
    n = len(strategies)
    raw_prefs = doc.get("preferences")
    if raw_prefs is None:
        preferences = None
    else:
        if len(raw_prefs) != n:
            raise GameValidationError("preferences: wrong number of players")
        preferences = [
            [parse_rational(q, f"preferences[{pi}][{a}]") for a, q in enumerate(p)]
            for pi, p in enumerate(raw_prefs)
        ]
    triples = []
    for idx, entry in enumerate(edges):
        i, j = _edge_endpoints(entry, idx, n)
        table = entry.get("table")
        if not isinstance(table, list):
            raise GameValidationError(f"edges[{idx}]: missing payoff table")
        triples.append(
            (
                i,
                j,
                [
                    [
                        parse_rational(q, f"edges[{idx}].table[{a}][{b}]")
                        for b, q in enumerate(row)
                    ]
                    for a, row in enumerate(table)
                ],
            )
        )
    return PolymatrixGame.build(strategies, preferences, triples)


def parse_graph(text: str) -> tuple[int, list[tuple[int, int]], dict]:
    """Edge-list graph format: one "u v" per line, optional rational weight;
    blank lines and '#' comments are ignored.  Node count is max id + 1."""
    edges = []
    weights = {}
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GameValidationError(
                f"line {lineno}: expected 'u v [weight]', got {raw!r}"
            )
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GameValidationError(
                f"line {lineno}: node ids must be integers"
            ) from None
        if u < 0 or v < 0 or u == v:
            raise GameValidationError(f"line {lineno}: bad edge ({u},{v})")
        key = edge_key(u, v)
        if key in weights:
            raise GameValidationError(f"line {lineno}: duplicate edge {key}")
        weights[key] = (
            parse_rational(parts[2], f"line {lineno} weight")
            if len(parts) == 3
            else Fraction(1)
        )
        edges.append(key)
        top = max(top, u, v)
    return top + 1, edges, weights
