"""CSV forms of the refinement report and the micro-macro error table."""

from __future__ import annotations

import csv

from ..errors import ConfigError
from ..experiments.errors import ErrorReport
from ..experiments.micro_macro import MicroMacroRow

ERROR_REPORT_HEADER = ("level", "dx", "err_rho", "err_cos", "order_rho", "order_cos")
MICRO_MACRO_HEADER = ("eps", "realizations", "err_rho", "err_theta")


def write_error_report(report: ErrorReport, path: str) -> None:
    orders_rho = report.order_rho
    orders_cos = report.order_cos
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(ERROR_REPORT_HEADER)
        for k, dx in enumerate(report.dx):
            o_r = repr(orders_rho[k]) if k < len(orders_rho) else ""
            o_c = repr(orders_cos[k]) if k < len(orders_cos) else ""
            writer.writerow([k, repr(dx), repr(report.err_rho[k]),
                             repr(report.err_cos[k]), o_r, o_c])


def read_error_report(path: str) -> ErrorReport:
    report = ErrorReport()
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != ERROR_REPORT_HEADER:
            raise ConfigError(f"bad error-report header in {path}: {header}")
        for row in reader:
            report.dx.append(float(row[1]))
            report.err_rho.append(float(row[2]))
            report.err_cos.append(float(row[3]))
    return report


def write_micro_macro_table(rows: list[MicroMacroRow], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(MICRO_MACRO_HEADER)
        for row in rows:
            writer.writerow([repr(row.eps), row.realizations,
                             repr(row.err_rho), repr(row.err_theta)])
