import csv
import json
from pathlib import Path

import numpy as np

from ..solver import split_residuals

SOLUTION_COLUMNS = ["x", "u", "psi", "contact", "residual_pde", "residual_obstacle"]
TRACE_COLUMNS = ["iter", "contact_size", "max_update", "worst_complementarity"]
CONVERGENCE_COLUMNS = ["elements", "size", "h", "error", "iterations", "converged"]
TABLE_COLUMNS = ["s", "target", "elements", "size", "iterations", "reference", "converged"]


def fmt(value):
    """17 significant digits; integers and flags stay integral."""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_rows(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    return path


def write_solution_csv(path, result):
    inst = result.instance
    pde, obstacle = split_residuals(result.operator, inst, result.u)
    flags = np.zeros(inst.size, dtype=int)
    flags[result.contact] = 1
    rows = zip(inst.x, result.u, inst.psi, flags, pde, obstacle)
    return _write_rows(path, SOLUTION_COLUMNS, rows)


def write_trace_csv(path, result):
    rows = (
        (r.iteration, r.contact_size, r.max_update, r.residual)
        for r in result.trace
    )
    return _write_rows(path, TRACE_COLUMNS, rows)


def write_convergence_csv(path, report):
    rows = (
        (r.elements, r.size, r.h, r.error, r.iterations, r.converged)
        for r in report.rows
    )
    return _write_rows(path, CONVERGENCE_COLUMNS, rows)


def write_table_csv(path, table):
    rows = (
        (r.s, r.target, r.elements, r.size, r.iterations, r.reference, r.converged)
        for r in table.rows
    )
    return _write_rows(path, TABLE_COLUMNS, rows)


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def write_report_json(path, config_echo, payload):
    """Report = config echo + command payload; floats use shortest round-trip repr."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = {"config": _plain(config_echo)}
    data.update(_plain(payload))
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
        f.write("\n")
    return path


def write_matrix_txt(path, matrix):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, np.asarray(matrix, dtype=float), fmt="%.17g", delimiter=" ", newline="\n")
    return path


def read_nodal_values(path):
    """Whitespace- or newline-separated floats, one per interior node."""
    return np.loadtxt(Path(path), dtype=float, ndmin=1)
