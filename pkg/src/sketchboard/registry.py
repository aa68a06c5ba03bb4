"""Registry mapping sketch type ids to their constructors.

Sketch classes register themselves on import; the glyph library loader
validates template sketch_type fields against `known_types()`.
"""

from __future__ import annotations

from .errors import UnknownSketchType

# Types the shipped engine guarantees; constructors arrive when the sketch
# modules are imported.
BUILTIN_TYPES = frozenset({"numeric", "pendulum", "graph", "bst", "stack"})

_CONSTRUCTORS: dict[str, type] = {}


def register(cls: type) -> type:
    """Class decorator: register a Sketch subclass under its type_name."""
    _CONSTRUCTORS[cls.type_name] = cls
    return cls


def known_types() -> frozenset[str]:
    return BUILTIN_TYPES | frozenset(_CONSTRUCTORS)


def constructor(type_name: str) -> type:
    _load_builtin_sketches()
    try:
        return _CONSTRUCTORS[type_name]
    except KeyError:
        raise UnknownSketchType(f"no sketch registered for type {type_name!r}") from None


def _load_builtin_sketches() -> None:
    # deferred to avoid import cycles at package load
    from . import core_sketches, ds_sketches  # noqa: F401
