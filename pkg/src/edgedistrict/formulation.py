"""Text export of the linearized model and an independent LP evaluator.

The export introduces ``y_v_i_e`` (edge ``e`` served from vertex ``v`` as
district ``i``) and ``w_i_v`` (vertex ``v`` is the center of district ``i``)
so that the bilinear objective becomes linear.  Only variants without I and
N are exported: their relaxed domains are what make the model an LP.

Layout::

    OBJECTIVE
    min: + 1 y_0_0_1 + ...
    CONSTRAINTS
    assign_e0: + 1 y_0_0_0 + 1 y_1_0_0 = 1
    ...
    BOUNDS
    0 <= y_0_0_0 <= 1
    ...
    COMMENTS
    # free text
"""
from __future__ import annotations

import re
from fractions import Fraction

from .exceptions import MeaninglessVariant, UnsupportedVariant
from .model import Instance, VariantSpec

SECTIONS = ("OBJECTIVE", "CONSTRAINTS", "BOUNDS", "COMMENTS")


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return repr(float(value))


def _terms(pairs) -> str:
    out = []
    for coef, name in pairs:
        sign = "-" if coef < 0 else "+"
        out.append(f"{sign} {_fmt(abs(coef))} {name}")
    return " ".join(out) if out else "+ 0"


def export_linear_program(instance: Instance, variant=None) -> str:
    """Emit the linearized relaxation of ``instance`` as a text model.

    ``variant`` defaults to the instance's own and must be a meaningful
    subset of ``{B, O, W}``.  Centers are fixed through the bounds of the
    ``w`` variables.
    """
    variant = instance.variant if variant is None else variant
    if isinstance(variant, str):
        variant = VariantSpec.parse(variant)
    variant.require_meaningful()
    if not variant.issubset("BCOW") or "C" in variant:
        raise UnsupportedVariant(f"{variant}: only subsets of BOW have a linear model")
    if "B" in variant and instance.balance is None:
        raise MeaninglessVariant("B requested but the instance carries no BalanceSpec")

    g = instance.graph
    V, p, E = g.vertex_count, instance.p, g.edge_count
    dm = instance.edge_distances

    def y(v, i, e):
        return f"y_{v}_{i}_{e}"

    def w(i, v):
        return f"w_{i}_{v}"

    lines = ["OBJECTIVE"]
    obj = [(dm[v][e], y(v, i, e)) for v in range(V) for i in range(p) for e in range(E)]
    lines.append("min: " + _terms(obj))

    lines.append("CONSTRAINTS")
    for e in range(E):
        row = [(1, y(v, i, e)) for v in range(V) for i in range(p)]
        lines.append(f"assign_e{e}: {_terms(row)} = 1")
    for i in range(p):
        row = [(1, w(i, v)) for v in range(V)]
        lines.append(f"center_d{i}: {_terms(row)} = 1")
    for e in range(E):
        for i in range(p):
            for v in range(V):
                lines.append(f"link_v{v}_d{i}_e{e}: {_terms([(1, y(v, i, e)), (-1, w(i, v))])} <= 0")
    if "B" in variant:
        lo, hi = instance.bounds(integral=False)
        for i in range(p):
            row = [(g.weight(e), y(v, i, e)) for e in range(E) for v in range(V)]
            lines.append(f"balance_upper_d{i}: {_terms(row)} <= {_fmt(hi)}")
            lines.append(f"balance_lower_d{i}: {_terms(row)} >= {_fmt(lo)}")

    lines.append("BOUNDS")
    for v in range(V):
        for i in range(p):
            for e in range(E):
                lines.append(f"0 <= {y(v, i, e)} <= 1")
    for i in range(p):
        for v in range(V):
            if instance.centers is not None:
                fixed = 1 if instance.centers[i] == v else 0
                lines.append(f"{fixed} <= {w(i, v)} <= {fixed}")
            else:
                lines.append(f"0 <= {w(i, v)} <= 1")

    lines.append("COMMENTS")
    lines.append(f"# variant {variant}; |V|={V} |E|={E} p={p} alpha={_fmt(instance.alpha)}")
    lines.append("# integrality of x and w relaxed; centers fixed via w bounds" if instance.centers
                 is not None else "# integrality of x and w relaxed")
    if "B" not in variant:
        lines.append("# no balance rows")
    lines.append("# contiguity cut family not emitted (it requires integral allocations)")
    return "\n".join(lines) + "\n"


_TERM = re.compile(r"([+-])\s+(\S+)\s+(\S+)")


def _parse_terms(text: str) -> dict:
    coeffs: dict = {}
    for sign, coef, name in _TERM.findall(text):
        val = Fraction(coef) * (-1 if sign == "-" else 1)
        if name == "0" and val == 0:
            continue
        coeffs[name] = coeffs.get(name, 0) + val
    return coeffs


def parse_linear_program(text: str) -> dict:
    """Read a model produced by :func:`export_linear_program`.

    Returns a dict with ``objective`` (name -> coef), ``constraints``
    (list of ``(name, coeffs, op, rhs)``) and ``bounds`` (name -> (lo, hi)).
    """
    section = None
    model = {"objective": {}, "constraints": [], "bounds": {}, "comments": []}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line in SECTIONS:
            section = line
            continue
        if section == "OBJECTIVE":
            body = line.split(":", 1)[1]
            model["objective"] = _parse_terms(body)
        elif section == "CONSTRAINTS":
            name, body = line.split(":", 1)
            m = re.match(r"(.*)\s(<=|>=|=)\s+(\S+)$", body.strip())
            if not m:
                raise ValueError(f"cannot parse constraint: {line}")
            lhs, op, rhs = m.groups()
            model["constraints"].append((name.strip(), _parse_terms(" " + lhs), op, Fraction(rhs)))
        elif section == "BOUNDS":
            lo, _, name, _, hi = line.split()
            model["bounds"][name] = (Fraction(lo), Fraction(hi))
        elif section == "COMMENTS":
            model["comments"].append(line)
        else:
            raise ValueError(f"content outside a section: {line}")
    return model


def evaluate_linear_program(text: str) -> float:
    """Optimal objective of an exported model, solved with scipy's HiGHS backend."""
    import numpy as np
    from scipy.optimize import linprog

    model = parse_linear_program(text)
    names = sorted(model["bounds"])
    index = {n: k for k, n in enumerate(names)}
    c = np.zeros(len(names))
    for n, coef in model["objective"].items():
        c[index[n]] = float(coef)
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for _, coeffs, op, rhs in model["constraints"]:
        row = np.zeros(len(names))
        for n, coef in coeffs.items():
            row[index[n]] = float(coef)
        if op == "=":
            A_eq.append(row)
            b_eq.append(float(rhs))
        elif op == "<=":
            A_ub.append(row)
            b_ub.append(float(rhs))
        else:
            A_ub.append(-row)
            b_ub.append(-float(rhs))
    bounds = [(float(model["bounds"][n][0]), float(model["bounds"][n][1])) for n in names]
    res = linprog(c, A_ub=np.array(A_ub) if A_ub else None, b_ub=b_ub or None,
                  A_eq=np.array(A_eq) if A_eq else None, b_eq=b_eq or None,
                  bounds=bounds, method="highs")
    if res.status != 0:
        raise ValueError(f"LP solve failed: {res.message}")
    return float(res.fun)
