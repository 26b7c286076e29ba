"""Minimal Pisot, Salem and complex Pisot unit generators of number fields."""

import json
from pathlib import Path

from . import _core
from ._core import PisotError, delta, intprog

__all__ = ["PisotError", "delta", "intprog", "find", "quadratic_field", "verify", "error_code", "no_generator_reason"]


def _field_text(field):
    if isinstance(field, dict):
        return json.dumps(field)
    if isinstance(field, Path) or not str(field).lstrip().startswith("{"):
        return Path(field).read_text()
    return str(field)


def find(field, algorithm="cutedge", embedding="largest-real", precision=128, ceiling=8192, epsilon="1/1000"):
    """Run findmin, cutedge or findcpisot. Returns the report dict, or None if no generator exists.

    `field` is a path, a JSON string or a dict in the field-file schema.
    """
    out = _core.run(_field_text(field), algorithm, str(embedding), precision, ceiling, str(epsilon))
    return None if out is None else json.loads(out)


def no_generator_reason(field, embedding="first-complex"):
    return _core.no_generator_reason(_field_text(field), str(embedding))


def verify(field, report):
    return _core.verify(_field_text(field), json.dumps(report))


def quadratic_field(d):
    """Field description of Q(sqrt d) with its fundamental unit."""
    return json.loads(_core.quadratic_field(d))


def error_code(exc):
    """Name of the error code carried by a PisotError."""
    return str(exc).split(":", 1)[0]
