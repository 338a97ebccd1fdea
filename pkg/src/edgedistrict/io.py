"""JSON documents for instances and solutions.

Instance documents list their fields in a fixed order::

    {
      "vertices": 4,
      "edges": [
        [0, 1, 1],
        [1, 2, 1]
      ],
      "p": 2,
      "variant": "BCI",
      "balance": {"mode": "explicit", "phi_l": 1, "phi_u": 1},
      "centers": [0, 2],
      "alpha": 0
    }

``balance`` appears only under B and ``centers`` only without N.  Exact
numbers that are not integers are written as ``"a/b"`` strings; float mode
writes plain floats.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Union

from .exceptions import MalformedInstance
from .graph import Graph, as_number
from .model import Assignment, BalanceSpec, Instance, objective

PathLike = Union[str, Path]


def _num_out(value):
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return f"{value.numerator}/{value.denominator}"
    return value


def _num_in(value, exact: bool):
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise MalformedInstance(f"expected a number, got {value!r}")
    try:
        return as_number(value, exact)
    except (ValueError, ZeroDivisionError):
        raise MalformedInstance(f"cannot read number {value!r}") from None


def instance_to_dict(instance: Instance) -> dict:
    g = instance.graph
    doc = {
        "vertices": g.vertex_count,
        "edges": [[u, v, _num_out(b)] for u, v, b in g.edges],
        "p": instance.p,
        "variant": str(instance.variant),
    }
    bal = instance.balance
    if bal is not None:
        if bal.mode == "explicit":
            doc["balance"] = {"mode": "explicit", "phi_l": _num_out(bal.phi_l),
                              "phi_u": _num_out(bal.phi_u)}
        else:
            doc["balance"] = {"mode": bal.mode, "tau": _num_out(bal.tau)}
    if instance.centers is not None:
        doc["centers"] = list(instance.centers)
    doc["alpha"] = _num_out(instance.alpha)
    return doc


def _balance_from_dict(bal) -> BalanceSpec:
    if not isinstance(bal, dict):
        raise MalformedInstance("balance must be a JSON object")
    mode = bal.get("mode")
    try:
        if mode == "explicit":
            return BalanceSpec.explicit(_num_in(bal["phi_l"], True), _num_in(bal["phi_u"], True))
        if mode in ("additive", "multiplicative"):
            return BalanceSpec(mode, tau=_num_in(bal["tau"], True))
    except KeyError as exc:
        raise MalformedInstance(f"balance mode {mode!r} needs field {exc.args[0]!r}") from None
    raise MalformedInstance(f"unknown balance mode {mode!r}")


def instance_from_dict(doc: dict, exact: bool = True) -> Instance:
    """Build an :class:`Instance`; structural problems raise :class:`MalformedInstance`."""
    if not isinstance(doc, dict):
        raise MalformedInstance("instance document must be a JSON object")
    missing = [k for k in ("vertices", "edges", "p", "variant") if k not in doc]
    if missing:
        raise MalformedInstance(f"missing fields: {', '.join(missing)}")
    unknown = set(doc) - {"vertices", "edges", "p", "variant", "balance", "centers", "alpha"}
    if unknown:
        raise MalformedInstance(f"unknown fields: {', '.join(sorted(unknown))}")
    if not isinstance(doc["edges"], list):
        raise MalformedInstance("edges must be a list")
    edges = []
    for item in doc["edges"]:
        if not isinstance(item, list) or len(item) not in (2, 3):
            raise MalformedInstance(f"edge must be [u, v] or [u, v, b]: {item!r}")
        b = _num_in(item[2], exact) if len(item) == 3 else 1
        edges.append((item[0], item[1], b))
    graph = Graph(doc["vertices"], tuple(edges), exact=exact)
    balance = None
    if doc.get("balance") is not None:
        balance = _balance_from_dict(doc["balance"])
    centers = doc.get("centers")
    return Instance(graph, doc["p"], doc["variant"], balance=balance,
                    centers=tuple(centers) if centers is not None else None,
                    alpha=_num_in(doc.get("alpha", 0), exact))


def _format(doc: dict) -> str:
    lines = ["{"]
    items = list(doc.items())
    for k, (key, value) in enumerate(items):
        comma = "," if k < len(items) - 1 else ""
        if key in ("edges", "x") and value:
            lines.append(f'  "{key}": [')
            for j, row in enumerate(value):
                tail = "," if j < len(value) - 1 else ""
                lines.append(f"    {json.dumps(row)}{tail}")
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps_instance(instance: Instance) -> str:
    return _format(instance_to_dict(instance))


def loads_instance(text: str, exact: bool = True) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInstance(f"invalid JSON: {exc}") from None
    return instance_from_dict(doc, exact=exact)


def read_instance(path: PathLike, exact: bool = True) -> Instance:
    return loads_instance(Path(path).read_text(), exact=exact)


def write_instance(instance: Instance, path: PathLike) -> None:
    Path(path).write_text(dumps_instance(instance))


def solution_to_dict(instance: Instance, a: Assignment) -> dict:
    obj = objective(instance, a) if "O" in instance.variant else None
    return {
        "p": a.p,
        "x": [[_num_out(v) for v in row] for row in a.x],
        "centers": list(a.centers),
        "objective": None if obj is None else _num_out(obj),
    }


def solution_from_dict(doc: dict, instance: Instance) -> Assignment:
    """Read a solution and check its dimensions against ``instance``."""
    for key in ("p", "x", "centers"):
        if key not in doc:
            raise MalformedInstance(f"solution is missing {key!r}")
    exact = instance.exact
    x = [[_num_in(v, exact) for v in row] for row in doc["x"]]
    if doc["p"] != instance.p or len(x) != instance.p or len(doc["centers"]) != instance.p:
        raise MalformedInstance(f"solution has {len(x)} districts, instance has p={instance.p}")
    if any(len(row) != instance.edge_count for row in x):
        raise MalformedInstance(f"solution rows must have {instance.edge_count} entries")
    return Assignment(tuple(tuple(r) for r in x), tuple(doc["centers"]))


def dumps_solution(instance: Instance, a: Assignment) -> str:
    return _format(solution_to_dict(instance, a))


def read_solution(path: PathLike, instance: Instance) -> Assignment:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedInstance(f"invalid JSON: {exc}") from None
    return solution_from_dict(doc, instance)


def write_solution(instance: Instance, a: Assignment, path: PathLike) -> None:
    Path(path).write_text(dumps_solution(instance, a))
