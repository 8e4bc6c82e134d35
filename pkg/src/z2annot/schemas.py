"""JSON schemas for ``--json`` CLI output (draft 2020-12)."""

_simplex = {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1}
_bits = {"type": "array", "items": {"enum": [0, 1]}}
_chain = {"type": "array", "items": _simplex}
_weight = {"type": "number", "minimum": 0}

BETTI = {
    "type": "object",
    "required": ["dim", "betti"],
    "properties": {
        "dim": {"type": "integer", "minimum": 0},
        "betti": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

ANNOTATE = {
    "type": "object",
    "required": ["dim", "g", "annotations", "homology_basis"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "g": {"type": "integer", "minimum": 0},
        "annotations": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["simplex", "annotation"],
                "properties": {"simplex": _simplex, "annotation": _bits},
                "additionalProperties": False,
            },
        },
        "homology_basis": {"type": "array", "items": _chain},
    },
    "additionalProperties": False,
}

QUERY = {
    "type": "object",
    "required": ["query", "result"],
    "properties": {
        "query": {"enum": ["null", "homologous", "independent"]},
        "result": {
            "oneOf": [
                {"type": "boolean"},
                {"type": "array", "items": {"type": "integer", "minimum": 0}},
            ]
        },
        "annotations": {"type": "array", "items": _bits},
    },
    "additionalProperties": False,
}

BASIS = {
    "type": "object",
    "required": ["g", "total_weight", "cycles"],
    "properties": {
        "g": {"type": "integer", "minimum": 0},
        "total_weight": _weight,
        "cycles": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["weight", "annotation", "source", "edge", "edges"],
                "properties": {
                    "weight": _weight,
                    "annotation": _bits,
                    "source": {"type": "integer"},
                    "edge": _simplex,
                    "edges": _chain,
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

_class_entry = {
    "type": "object",
    "required": ["class", "weight", "edges", "components"],
    "properties": {
        "class": _bits,
        "weight": _weight,
        "edges": _chain,
        "components": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

SHORTEST_CYCLE = {
    "type": "object",
    "required": ["g", "results"],
    "properties": {
        "g": {"type": "integer", "minimum": 0},
        "results": {"type": "array", "items": _class_entry},
    },
    "additionalProperties": False,
}

BY_COMMAND = {
    "betti": BETTI,
    "annotate": ANNOTATE,
    "query": QUERY,
    "basis": BASIS,
    "shortest-cycle": SHORTEST_CYCLE,
}
