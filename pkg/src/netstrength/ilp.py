"""Integer-program formulation of the removal problem, as LP-format text.

The model partitions all n nodes (including removed ones) into n component
slots and books each slot's size into per-size counters:

* ``y_i``    node i is removed (binary)
* ``x_i_j``  node i sits in slot j (binary); an edge forces its endpoints
             into the same slot unless one of them is removed
* ``C_j``    size of slot j (integer 0..n)
* ``m_j_t``  slot j has size exactly t (binary, t = 0..n)
* ``S_t``    number of slots of size t (integer 0..n)

The objective minimizes ``sum(t * S_t * w_t) - w_1 * sum(y_i)``: the
weighted strength of the booked partition minus a size-1 credit per removed
node, which cancels exactly when each removed node occupies its own
singleton slot. Nothing in the constraints forces that placement, so for
non-monotone weight vectors an optimal solution may park removed nodes
inside surviving slots and undercut the induced-subgraph optimum; the
exhaustive search in :mod:`netstrength.dismantle` is the reference
semantics, and this emitter exists to make the model available to external
solvers unchanged.

All indices in variable names are 1-based except the size subscript ``t``,
which ranges from 0 (empty slot) to n.
"""

from __future__ import annotations

import logging
import math
from typing import Mapping

from .graph import Graph
from .metrics import WeightVector

logger = logging.getLogger(__name__)

CONSTRAINT_FAMILIES = (
    "edge-consistency",
    "vertex-assignment",
    "component-size",
    "budget",
    "size-indicator",
    "size-link",
    "size-count",
    "binary-domain",
    "integer-domain",
)


class ConstraintViolationError(ValueError):
    """An assignment violates the model; names the constraint family."""

    def __init__(self, family: str, message: str):
        super().__init__(f"[{family}] {message}")
        self.family = family


def x_name(i: int, j: int) -> str:
    return f"x_{i}_{j}"


def y_name(i: int) -> str:
    return f"y_{i}"


def m_name(j: int, t: int) -> str:
    return f"m_{j}_{t}"


def c_name(j: int) -> str:
    return f"C_{j}"


def s_name(t: int) -> str:
    return f"S_{t}"


def model_variables(n: int) -> list[str]:
    """All variable names, grouped x, y, m, C, S."""
    names = [x_name(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    names += [y_name(i) for i in range(1, n + 1)]
    names += [m_name(j, t) for j in range(1, n + 1) for t in range(n + 1)]
    names += [c_name(j) for j in range(1, n + 1)]
    names += [s_name(t) for t in range(n + 1)]
    return names


_WRAP_WIDTH = 78


def _format_terms(terms: list[tuple[float, str]]) -> list[str]:
    parts: list[str] = []
    for coefficient, name in terms:
        magnitude = abs(coefficient)
        body = name if magnitude == 1 else f"{magnitude!r} {name}"
        if not parts:
            parts.append(body if coefficient >= 0 else f"- {body}")
        else:
            parts.append(f"+ {body}" if coefficient >= 0 else f"- {body}")
    return parts


def _emit_row(
    lines: list[str],
    label: str,
    terms: list[tuple[float, str]],
    tail: str = "",
) -> None:
    """Append one labeled expression, wrapped well below the line-length
    limits of classic LP readers; continuation lines are indented."""
    pieces = _format_terms(terms)
    if tail:
        pieces.append(tail)
    current = f" {label}:"
    for piece in pieces:
        if len(current) + 1 + len(piece) > _WRAP_WIDTH and current.strip():
            lines.append(current)
            current = "  "
        current += f" {piece}"
    lines.append(current)


def emit_ilp(g: Graph, k: int, w: WeightVector) -> str:
    """Render the model for ``g`` with removal budget ``k`` as LP text.

    Requires weights for every size 1..n (clamp policy permitted). The
    emitted file has one budget row, 2n edge rows per edge, and binary /
    general sections for the variable groups.
    """
    n = g.n
    if not (1 <= k < n):
        raise ValueError(f"budget k must satisfy 1 <= k < n, got k={k}, n={n}")
    size_weight = {t: w.value(t) for t in range(1, n + 1)}

    lines = [
        f"\\ component-size strength removal model: n={n}, "
        f"edges={g.edge_count}, k={k}",
        "Minimize",
    ]
    objective = [(t * size_weight[t], s_name(t)) for t in range(1, n + 1)]
    objective += [(-size_weight[1], y_name(i)) for i in range(1, n + 1)]
    _emit_row(lines, "obj", objective)

    lines.append("Subject To")
    slots = range(1, n + 1)
    for u, v in sorted(g.edges):
        a, b = u + 1, v + 1
        for j in slots:
            relax = [(-1.0, y_name(a)), (-1.0, y_name(b))]
            up = [(1.0, x_name(a, j)), (-1.0, x_name(b, j))] + relax
            _emit_row(lines, f"edge_{a}_{b}_up_{j}", up, "<= 0")
            lo = [(1.0, x_name(a, j)), (-1.0, x_name(b, j))] + [
                (1.0, y_name(a)), (1.0, y_name(b))
            ]
            _emit_row(lines, f"edge_{a}_{b}_lo_{j}", lo, ">= 0")
    for i in slots:
        _emit_row(lines, f"assign_{i}",
                  [(1.0, x_name(i, j)) for j in slots], "= 1")
    for j in slots:
        terms = [(1.0, c_name(j))] + [(-1.0, x_name(i, j)) for i in slots]
        _emit_row(lines, f"compsize_{j}", terms, "= 0")
    _emit_row(lines, "budget", [(1.0, y_name(i)) for i in slots], f"<= {k}")
    for j in slots:
        _emit_row(lines, f"indicator_{j}",
                  [(1.0, m_name(j, t)) for t in range(n + 1)], "= 1")
    for j in slots:
        terms = [(1.0, c_name(j))]
        terms += [(-float(t), m_name(j, t)) for t in range(1, n + 1)]
        _emit_row(lines, f"sizelink_{j}", terms, "= 0")
    for t in range(n + 1):
        terms = [(1.0, s_name(t))] + [(-1.0, m_name(j, t)) for j in slots]
        _emit_row(lines, f"sizecount_{t}", terms, "= 0")

    lines.append("Bounds")
    for j in slots:
        lines.append(f" 0 <= {c_name(j)} <= {n}")
    for t in range(n + 1):
        lines.append(f" 0 <= {s_name(t)} <= {n}")

    binaries = [x_name(i, j) for i in slots for j in slots]
    binaries += [y_name(i) for i in slots]
    binaries += [m_name(j, t) for j in slots for t in range(n + 1)]
    lines.append("Binaries")
    for start in range(0, len(binaries), 8):
        lines.append(" " + " ".join(binaries[start:start + 8]))
    generals = [c_name(j) for j in slots] + [s_name(t) for t in range(n + 1)]
    lines.append("Generals")
    for start in range(0, len(generals), 8):
        lines.append(" " + " ".join(generals[start:start + 8]))
    lines.append("End")
    return "\n".join(lines) + "\n"


def _near_integer(value: float, tol: float) -> bool:
    return abs(value - round(value)) <= tol


def verify_ilp_solution(
    g: Graph,
    k: int,
    w: WeightVector,
    assignment: Mapping[str, float],
    *,
    tol: float = 1e-6,
    compare_enumeration: bool = False,
) -> float:
    """Check an assignment against every constraint family; return the
    model objective.

    Raises :class:`ConstraintViolationError` naming the violated family.
    With ``compare_enumeration`` the objective is also compared against the
    exhaustive-search optimum for the same budget and a warning is logged
    on mismatch (expected for weight vectors where parking removed nodes in
    surviving slots pays off; see the module docstring).
    """
    n = g.n
    if not (1 <= k < n):
        raise ValueError(f"budget k must satisfy 1 <= k < n, got k={k}, n={n}")
    names = model_variables(n)
    missing = [name for name in names if name not in assignment]
    if missing:
        raise ValueError(
            f"assignment is missing {len(missing)} variable(s), "
            f"e.g. {missing[:5]}"
        )

    def val(name: str) -> float:
        return float(assignment[name])

    slots = range(1, n + 1)
    for i in slots:
        for name in [y_name(i)] + [x_name(i, j) for j in slots]:
            v = val(name)
            if not (_near_integer(v, tol) and round(v) in (0, 1)):
                raise ConstraintViolationError(
                    "binary-domain", f"{name} = {v} is not binary"
                )
    for j in slots:
        for t in range(n + 1):
            v = val(m_name(j, t))
            if not (_near_integer(v, tol) and round(v) in (0, 1)):
                raise ConstraintViolationError(
                    "binary-domain", f"{m_name(j, t)} = {v} is not binary"
                )
    for name in [c_name(j) for j in slots] + [s_name(t) for t in range(n + 1)]:
        v = val(name)
        if not _near_integer(v, tol) or round(v) < 0 or round(v) > n:
            raise ConstraintViolationError(
                "integer-domain", f"{name} = {v} is not an integer in 0..{n}"
            )

    for u, v_node in sorted(g.edges):
        a, b = u + 1, v_node + 1
        relax = val(y_name(a)) + val(y_name(b))
        for j in slots:
            diff = val(x_name(a, j)) - val(x_name(b, j))
            if diff > relax + tol or diff < -relax - tol:
                raise ConstraintViolationError(
                    "edge-consistency",
                    f"edge ({a}, {b}) splits across slot {j} with no removal "
                    f"credit (x difference {diff}, credit {relax})",
                )
    for i in slots:
        total = sum(val(x_name(i, j)) for j in slots)
        if abs(total - 1) > tol:
            raise ConstraintViolationError(
                "vertex-assignment",
                f"node {i} is assigned to {total} slots, expected exactly 1",
            )
    for j in slots:
        booked = sum(val(x_name(i, j)) for i in slots)
        if abs(val(c_name(j)) - booked) > tol:
            raise ConstraintViolationError(
                "component-size",
                f"{c_name(j)} = {val(c_name(j))} but slot {j} holds {booked}",
            )
    removed_total = sum(val(y_name(i)) for i in slots)
    if removed_total > k + tol:
        raise ConstraintViolationError(
            "budget", f"{removed_total} nodes removed, budget is {k}"
        )
    for j in slots:
        chosen = sum(val(m_name(j, t)) for t in range(n + 1))
        if abs(chosen - 1) > tol:
            raise ConstraintViolationError(
                "size-indicator",
                f"slot {j} selects {chosen} sizes, expected exactly 1",
            )
    for j in slots:
        linked = sum(t * val(m_name(j, t)) for t in range(1, n + 1))
        if abs(val(c_name(j)) - linked) > tol:
            raise ConstraintViolationError(
                "size-link",
                f"{c_name(j)} = {val(c_name(j))} but size indicators give "
                f"{linked}",
            )
    for t in range(n + 1):
        counted = sum(val(m_name(j, t)) for j in slots)
        if abs(val(s_name(t)) - counted) > tol:
            raise ConstraintViolationError(
                "size-count",
                f"{s_name(t)} = {val(s_name(t))} but {counted} slots have "
                f"size {t}",
            )

    objective = sum(
        t * val(s_name(t)) * w.value(t) for t in range(1, n + 1)
    ) - removed_total * w.value(1)

    if compare_enumeration:
        from .dismantle import DismantleQuery, best_removal

        optimum = best_removal(
            DismantleQuery(graph=g, k=k, objective="proposed", weights=w)
        ).residual_value
        if not math.isclose(objective, optimum, rel_tol=1e-9, abs_tol=1e-9):
            logger.warning(
                "model objective %s differs from exhaustive-search optimum %s",
                objective, optimum,
            )
    return objective
