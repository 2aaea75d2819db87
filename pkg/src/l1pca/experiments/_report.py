"""CSV emission shared by the experiment reports.

Files are UTF-8 with a header row and '.' decimal separator; floats are
written with 17 significant digits so round-trips are lossless and
byte-identical for identical inputs.
"""

import csv


def format_cell(value):
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])


def rows_to_text(header, rows):
    lines = [",".join(header)]
    lines += [",".join(format_cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"
