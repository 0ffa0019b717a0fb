from .commands import (
    COMMANDS,
    EXIT_INVALID,
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    EXIT_VERIFY_FAILED,
    RunContext,
    run,
)
from .main import build_parser, main
from .writers import (
    read_nodal_values,
    write_convergence_csv,
    write_matrix_txt,
    write_report_json,
    write_solution_csv,
    write_table_csv,
    write_trace_csv,
)

__all__ = [
    "COMMANDS",
    "EXIT_INVALID",
    "EXIT_NOT_CONVERGED",
    "EXIT_OK",
    "EXIT_VERIFY_FAILED",
    "RunContext",
    "run",
    "build_parser",
    "main",
    "read_nodal_values",
    "write_convergence_csv",
    "write_matrix_txt",
    "write_report_json",
    "write_solution_csv",
    "write_table_csv",
    "write_trace_csv",
]
