"""Wire formats: JSON schemas for every engine value, plus DOT export.

Schemas:
  factor system   {"factors": [{"kind": "cyclic", "order": 2},
                               {"kind": "table", "elements": [...],
                                "table": [[...]], "identity": 0},
                               {"kind": "int"}]}
  word            [[factor, payload], ...]          (reduced on ingest)
  star labelling  {"alpha": [word, ...]}
  apex labelling  {"A": {"apex": i, "tuple": [word, ...]}}
  automorphism    {"parts": [{"phi": phi, "g": word}, ...]}
  phi             {"kind": "mult", "value": k} | {"kind": "perm", "map": [...]}
                  | {"kind": "sign", "value": s}
  whitehead       {"Y": [...], "x": [factor, payload]}
  factorization   {"whitehead": [...], "factor": [phi, ...], "inner": word}
  move trace      [{"i":..., "j":..., "a": [factor, payload],
                    "vol_before":..., "vol_after":...}, ...]
Vertex names are "U:<word>" and "C<i>:<word>" with the word in compact JSON.
"""

from __future__ import annotations

import json

from .autos import (
    Factorization,
    PureSymmetricAuto,
    WhiteheadAuto,
    pure_auto,
    whitehead_auto,
)
from .errors import EngineError, SchemaError
from .explorer import SnBall
from .factors import (
    CyclicBackend,
    FactorAutoPart,
    FactorSystem,
    IntBackend,
    TableBackend,
)
from .labellings import ApexLabel, StarLabel, apex_label, star_label
from .tree import Ball, TreeVertex, vertex_canon
from .words import Word, word


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise SchemaError(message)


# -- factor systems ---------------------------------------------------------


def system_to_json(system: FactorSystem) -> dict:
    factors = []
    for backend in system.backends:
        if backend.kind == "cyclic":
            factors.append({"kind": "cyclic", "order": backend.order()})
        elif backend.kind == "int":
            factors.append({"kind": "int"})
        else:
            factors.append(
                {
                    "kind": "table",
                    "elements": list(backend.names),
                    "table": [list(row) for row in backend.table],
                    "identity": backend.identity,
                }
            )
    return {"factors": factors}


def system_from_json(obj) -> FactorSystem:
    _expect(isinstance(obj, dict) and "factors" in obj, "expected {'factors': [...]}")
    entries = obj["factors"]
    _expect(isinstance(entries, list) and len(entries) >= 3, "need at least 3 factors")
    backends = []
    for k, entry in enumerate(entries, start=1):
        _expect(isinstance(entry, dict) and "kind" in entry, f"factor {k}: missing kind")
        kind = entry["kind"]
        if kind == "cyclic":
            _expect(isinstance(entry.get("order"), int), f"factor {k}: integer order required")
            backends.append(CyclicBackend(entry["order"]))
        elif kind == "int":
            backends.append(IntBackend())
        elif kind == "table":
            table = entry.get("table")
            _expect(isinstance(table, list) and table, f"factor {k}: table required")
            backends.append(
                TableBackend(
                    table,
                    identity=entry.get("identity", 0),
                    names=entry.get("elements"),
                    inverse=entry.get("inverse"),
                )
            )
        else:
            raise SchemaError(f"factor {k}: unknown kind {kind!r}")
    try:
        system = FactorSystem(backends)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    reports = system.validate()
    _expect(not reports, "; ".join(reports) or "invalid system")
    return system


# -- words and vertices -------------------------------------------------------


def word_to_json(w: Word) -> list:
    return [[s.factor, s.payload] for s in w.syllables]


def word_from_json(system: FactorSystem, obj) -> Word:
    _expect(isinstance(obj, list), "word must be a list of [factor, payload] pairs")
    pairs = []
    for entry in obj:
        _expect(
            isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], int),
            f"bad word letter {entry!r}",
        )
        factor, payload = entry
        _expect(1 <= factor <= system.n, f"factor index {factor} out of range")
        _expect(isinstance(payload, int), f"payload {payload!r} must be an integer")
        pairs.append((factor, payload))
    try:
        return word(system, pairs)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def vertex_name(v: TreeVertex) -> str:
    body = dumps(word_to_json(v.rep))
    if v.kind == "u":
        return f"U:{body}"
    return f"C{v.factor}:{body}"


def vertex_from_name(system: FactorSystem, name: str) -> TreeVertex:
    _expect(isinstance(name, str) and ":" in name, f"bad vertex name {name!r}")
    head, _, body = name.partition(":")
    try:
        rep = word_from_json(system, json.loads(body))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"bad vertex word in {name!r}") from exc
    if head == "U":
        return vertex_canon("u", None, rep)
    _expect(head.startswith("C") and head[1:].isdigit(), f"bad vertex name {name!r}")
    factor = int(head[1:])
    _expect(1 <= factor <= system.n, f"factor index {factor} out of range")
    return vertex_canon("c", factor, rep)


# -- labellings ---------------------------------------------------------------


def star_to_json(label: StarLabel) -> dict:
    return {"alpha": [word_to_json(w) for w in label.conjugators]}


def star_from_json(system: FactorSystem, obj) -> StarLabel:
    _expect(isinstance(obj, dict) and "alpha" in obj, "expected {'alpha': [...]}")
    slots = obj["alpha"]
    _expect(isinstance(slots, list) and len(slots) == system.n, f"need {system.n} slots")
    return star_label(system, [word_from_json(system, s) for s in slots])


def apex_to_json(label: ApexLabel) -> dict:
    return {
        "A": {
            "apex": label.apex,
            "tuple": [word_to_json(w) for w in label.conjugators],
        }
    }


def apex_from_json(system: FactorSystem, obj) -> ApexLabel:
    _expect(
        isinstance(obj, dict) and isinstance(obj.get("A"), dict),
        "expected {'A': {'apex':..., 'tuple': [...]}}",
    )
    body = obj["A"]
    apex = body.get("apex")
    slots = body.get("tuple")
    _expect(isinstance(apex, int) and 1 <= apex <= system.n, "bad apex index")
    _expect(isinstance(slots, list) and len(slots) == system.n, f"need {system.n} slots")
    return apex_label(system, apex, [word_from_json(system, s) for s in slots])


# -- automorphism parts -------------------------------------------------------


def phi_to_json(system: FactorSystem, part: FactorAutoPart) -> dict:
    kind = system.factor(part.factor).kind
    if kind == "cyclic":
        return {"kind": "mult", "value": part.rep}
    if kind == "int":
        return {"kind": "sign", "value": part.rep}
    return {"kind": "perm", "map": list(part.rep)}


def phi_from_json(system: FactorSystem, factor: int, obj) -> FactorAutoPart:
    _expect(isinstance(obj, dict) and "kind" in obj, f"factor {factor}: bad phi")
    backend = system.factor(factor)
    kind = obj["kind"]
    if kind == "mult":
        _expect(backend.kind == "cyclic", f"factor {factor}: mult needs a cyclic factor")
        part = FactorAutoPart(factor, obj.get("value"))
    elif kind == "sign":
        _expect(backend.kind == "int", f"factor {factor}: sign needs an int factor")
        part = FactorAutoPart(factor, obj.get("value"))
    elif kind == "perm":
        _expect(backend.kind == "table", f"factor {factor}: perm needs a table factor")
        image = obj.get("map")
        _expect(isinstance(image, list), f"factor {factor}: perm map required")
        part = FactorAutoPart(factor, tuple(image))
    else:
        raise SchemaError(f"factor {factor}: unknown phi kind {kind!r}")
    message = system.part_validate(part)
    _expect(message is None, f"factor {factor}: {message}")
    return part


def auto_to_json(psi: PureSymmetricAuto) -> dict:
    return {
        "parts": [
            {"phi": phi_to_json(psi.system, part), "g": word_to_json(conj)}
            for part, conj in psi.parts
        ]
    }


def auto_from_json(system: FactorSystem, obj) -> PureSymmetricAuto:
    _expect(isinstance(obj, dict) and "parts" in obj, "expected {'parts': [...]}")
    entries = obj["parts"]
    _expect(
        isinstance(entries, list) and len(entries) == system.n,
        f"need {system.n} parts",
    )
    parts = []
    for k, entry in enumerate(entries, start=1):
        _expect(isinstance(entry, dict), f"part {k}: expected an object")
        part = phi_from_json(system, k, entry.get("phi"))
        conj = word_from_json(system, entry.get("g", []))
        parts.append((part, conj))
    return pure_auto(system, parts)


def whitehead_to_json(w: WhiteheadAuto) -> dict:
    return {"Y": list(w.moved), "x": [w.element.factor, w.element.payload]}


def whitehead_from_json(system: FactorSystem, obj) -> WhiteheadAuto:
    _expect(
        isinstance(obj, dict) and "Y" in obj and "x" in obj,
        "expected {'Y': [...], 'x': [factor, payload]}",
    )
    x = obj["x"]
    _expect(isinstance(x, list) and len(x) == 2, "bad whitehead element")
    try:
        element = system.element(x[0], x[1])
        return whitehead_auto(system, obj["Y"], element)
    except (ValueError, EngineError) as exc:
        raise SchemaError(f"bad whitehead automorphism: {exc}") from exc


def factorization_to_json(system: FactorSystem, f: Factorization) -> dict:
    return {
        "whitehead": [whitehead_to_json(w) for w in f.whitehead],
        "factor": [phi_to_json(system, part) for part in f.factor],
        "inner": word_to_json(f.inner),
    }


def factorization_from_json(system: FactorSystem, obj) -> Factorization:
    _expect(
        isinstance(obj, dict)
        and "whitehead" in obj
        and "factor" in obj
        and "inner" in obj,
        "expected {'whitehead':..., 'factor':..., 'inner':...}",
    )
    whiteheads = tuple(whitehead_from_json(system, w) for w in obj["whitehead"])
    parts = obj["factor"]
    _expect(
        isinstance(parts, list) and len(parts) == system.n,
        f"need {system.n} factor parts",
    )
    factor = tuple(phi_from_json(system, k, p) for k, p in enumerate(parts, start=1))
    inner = word_from_json(system, obj["inner"])
    return Factorization(whiteheads, factor, inner)


# -- move traces and balls ----------------------------------------------------


def moves_to_json(moves) -> list:
    return [
        {
            "i": m.i,
            "j": m.j,
            "a": [m.element.factor, m.element.payload],
            "vol_before": m.volume_before,
            "vol_after": m.volume_after,
        }
        for m in moves
    ]


def tree_ball_to_json(ball: Ball) -> dict:
    return {
        "center": vertex_name(ball.center),
        "radius": ball.radius,
        "adjacency": {
            vertex_name(v): [vertex_name(w) for w in ball.adjacency[v]]
            for v in ball.vertices
        },
    }


def tree_ball_to_dot(ball: Ball) -> str:
    lines = ["graph ball {", "  node [fontsize=10];"]
    for v in ball.vertices:
        shape = "circle" if v.kind == "u" else "box"
        lines.append(f'  "{vertex_name(v)}" [shape={shape}];')
    seen = set()
    for v in ball.vertices:
        for w in ball.adjacency[v]:
            key = tuple(sorted((vertex_name(v), vertex_name(w))))
            if key in seen:
                continue
            seen.add(key)
            lines.append(f'  "{key[0]}" -- "{key[1]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def sn_ball_to_json(ball: SnBall) -> dict:
    return {
        "bound": ball.bound,
        "alpha_classes": [star_to_json(label)["alpha"] for label in ball.alpha_classes],
        "a_classes": [
            {"apex": label.apex, "tuple": [word_to_json(w) for w in label.conjugators]}
            for label in ball.a_classes
        ],
        "edges": [list(edge) for edge in ball.edges],
    }


def sn_ball_to_dot(ball: SnBall) -> str:
    lines = ["graph complex {", "  node [fontsize=10];"]
    for index, label in enumerate(ball.alpha_classes):
        name = dumps(star_to_json(label)["alpha"])
        lines.append(f'  a{index} [shape=ellipse, label="{name}"];')
    for index, label in enumerate(ball.a_classes):
        name = f"apex {label.apex}: " + dumps(
            [word_to_json(w) for w in label.conjugators]
        )
        lines.append(f'  b{index} [shape=box, label="{name}"];')
    for alpha_index, a_index in ball.edges:
        lines.append(f"  a{alpha_index} -- b{a_index};")
    lines.append("}")
    return "\n".join(lines) + "\n"
