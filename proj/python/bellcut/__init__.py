"""Bell inequalities, cut polytopes and elliptope relaxations.

The numeric entry points return plain dicts with numpy arrays; the
subcommand wrappers exchange the same JSON documents as the ``bellcut``
command-line tool.
"""

from __future__ import annotations

import json
from typing import Any, Iterable

from . import _core
from ._core import ConvergenceError, GuardError, catalog_names, cut_condition, elliptope_max, elliptope_membership

__version__ = _core.__version__

__all__ = [
    "BellcutError",
    "ConvergenceError",
    "GuardError",
    "catalog",
    "catalog_names",
    "check_facet",
    "cut_condition",
    "elliptope_max",
    "elliptope_membership",
    "enumerate_facets",
    "map_point",
    "run",
    "sdp_max",
    "trielim",
]


class BellcutError(RuntimeError):
    """A subcommand exited with a nonzero status."""

    def __init__(self, code: int, message: str):
        super().__init__(message.strip())
        self.code = code


def _as_text(doc: Any) -> str:
    if doc is None:
        return ""
    if isinstance(doc, str):
        return doc
    if isinstance(doc, (list, tuple)):
        return "\n".join(json.dumps(d) for d in doc)
    return json.dumps(doc)


def run(*args: str, input: Any = None, timestamp: bool = False) -> str:
    """Run a subcommand and return its standard output.

    ``input`` may be a JSON string, a document, or a list of documents.
    """
    argv = list(args) if timestamp else ["--no-timestamp", *args]
    code, out, err = _core.run(argv, _as_text(input))
    if code != 0:
        raise BellcutError(code, err)
    return out


def _json(*args: str, input: Any = None) -> dict:
    return json.loads(run(*args, input=input))


def _lines(*args: str, input: Any = None) -> list[dict]:
    docs = [json.loads(line) for line in run(*args, input=input).splitlines() if line.strip()]
    return [d for d in docs if set(d) != {"provenance"}]


def catalog(name: str) -> dict:
    return json.loads(_core.catalog(name))


def check_facet(inequality: dict, graph: str | None = None) -> dict:
    args = ["check-facet"] + (["--graph", graph] if graph else [])
    return _json(*args, input=inequality)


def trielim(inequality: dict) -> dict:
    return _json("trielim", input=inequality)


def map_point(point: dict, to: str, backend: str = "exact", center: bool = False) -> dict:
    args = ["map", "--to", to, "--backend", backend] + (["--center"] if center else [])
    return _json(*args, input=point)


def sdp_max(inequality: dict, constraints: str = "rmet") -> dict:
    return _json("sdp-max", "--constraints", constraints, input=inequality)


def enumerate_facets(graph: str, force: bool = False) -> list[dict]:
    args: Iterable[str] = (["--force"] if force else []) + ["enumerate-facets", "--graph", graph]
    return _lines(*args)
