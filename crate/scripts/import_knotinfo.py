#!/usr/bin/env python3
"""Regenerate corpus/knots/*.json and corpus/knotinfo_khovanov.tsv from the
database_knotinfo package (pip download database_knotinfo)."""
import csv
import json
import os
import sys

import database_knotinfo  # noqa: F401

csv.field_size_limit(10**9)
root = os.path.join(os.path.dirname(__file__), "..", "corpus")
src = os.path.join(os.path.dirname(database_knotinfo.__file__), "csv_data",
                   "knotinfo_data_complete.csv")
rows = csv.DictReader(open(src), delimiter="|")
out = open(os.path.join(root, "knotinfo_khovanov.tsv"), "w")
out.write("name\talternating\tkhovanov_unreduced_integral\n")
for row in rows:
    try:
        c = int(row["crossing_number"])
    except ValueError:
        continue
    if c < 3 or c > 9:
        continue
    name = row["name"]
    pd = json.loads(row["pd_notation"])
    with open(os.path.join(root, "knots", f"{name}.json"), "w") as f:
        f.write(json.dumps({"name": name, "pd": pd}) + "\n")
    out.write(f"{name}\t{row['alternating']}\t{row['khovanov_unreduced_integral_polynomial'].replace(' ', '')}\n")
