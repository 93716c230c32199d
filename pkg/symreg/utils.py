import csv
from collections.abc import Iterable, Sequence
import logging
import pathlib

import psutil

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def available_threads() -> int:
    """Logical CPU count, or 1 when psutil cannot tell."""
    count = psutil.cpu_count(logical=True)
    return count if count and count > 0 else 1


def configure_logging(verbosity: int = 0) -> None:
    """WARNING by default, INFO with one -v, DEBUG with two or more."""
    match verbosity:
        case 0:
            level = logging.WARNING
        case 1:
            level = logging.INFO
        case _:
            level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT)


def write_lines(path: pathlib.Path | str, lines: Iterable[str]) -> int:
    """Write newline-terminated UTF-8 lines; returns how many were written."""
    target = pathlib.Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with target.open("w", encoding="utf-8", newline="\n") as handle:
        for line in lines:
            handle.write(line)
            handle.write("\n")
            count += 1
    return count


def write_csv(
    path: pathlib.Path | str, header: Sequence[str], rows: Iterable[Sequence[object]]
) -> None:
    target = pathlib.Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def csv_path_for(report_path: pathlib.Path | str) -> pathlib.Path:
    """Default CSV summary location next to a JSON-lines report."""
    return pathlib.Path(report_path).with_suffix(".csv")
