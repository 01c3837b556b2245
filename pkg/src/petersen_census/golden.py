"""Loaders for the checked-in reference data.

Files live in ``petersen_census/data``; set CENSUS_DATA_DIR to point at a
different copy.  Formats:

    reference_counts.csv        n,h3,P,h4,Q (blank where a column has no entry)
    polys/<name>.txt      ascending integer coefficients, comma-separated
    scc_polys_k3.json, scc_polys_k4.json   factor lists per SCC class
    products.json         factor multiplicities of the assembled polynomials
    parity.json           parity-split lists and the two inhomogeneous recurrences
    example_scc.json      a 13-node SCC of sigma_3 as "node <- predecessors"
    example_condensation.json  condensation of a predecessor set in sigma_3
"""
from __future__ import annotations

import csv
import json
import os
from pathlib import Path

from .algebra import Poly


def data_dir() -> Path:
    env = os.environ.get("CENSUS_DATA_DIR")
    return Path(env) if env else Path(__file__).with_name("data")


def _read_json(name: str):
    with open(data_dir() / name) as fh:
        return json.load(fh)


def reference_rows() -> list[dict[str, str]]:
    with open(data_dir() / "reference_counts.csv", newline="") as fh:
        return list(csv.DictReader(fh))


def reference_column(name: str) -> dict[int, int]:
    """One column of the reference table as {n: value}, blanks skipped."""
    return {int(r["n"]): int(r[name]) for r in reference_rows() if r[name].strip()}


def h_values(k: int) -> dict[int, int]:
    return reference_column(f"h{k}")


def load_poly(name: str) -> Poly:
    return Poly.parse((data_dir() / "polys" / f"{name}.txt").read_text())


def factor(prefix: str, i: int) -> Poly:
    return load_poly(f"{prefix}{i}")


def product_poly(name: str) -> Poly:
    """Assemble a product from products.json (k=3 factors P*, k=4 factors Q*)."""
    spec = _read_json("products.json")[name]
    prefix = "P" if name == "P" else "Q"
    out = Poly.const(1)
    for i, mult in spec["factors"].items():
        out = out * factor(prefix, int(i)) ** mult
    return out


def scc_table(k: int) -> list[tuple[str, Poly]]:
    """(size label, expected stripped minimal polynomial) per table row."""
    t = _read_json(f"scc_polys_k{k}.json")
    out = []
    for row in t["rows"]:
        p = Poly.const(1)
        for i in row["factors"]:
            p = p * factor(t["factorPrefix"], i)
        out.append((row["size"], p))
    return out


def parity_data() -> dict:
    return _read_json("parity.json")


def example_scc_arcs() -> tuple[int, list[tuple[int, int]]]:
    """Node count and (src, dst) arcs, 0-based, of the 13-node example SCC."""
    d = _read_json("example_scc.json")
    arcs = [(int(s) - 1, int(dst) - 1) for dst, preds in d["relations"].items() for s in preds]
    return d["nodes"], sorted(arcs)


def example_condensation() -> dict:
    d = _read_json("example_condensation.json")
    return {
        "sizes": {int(a) - 1: s for a, s in d["sizes"].items()},
        "arcs": [(a - 1, b - 1) for a, b in d["arcs"]],
        "zero_initial": [a - 1 for a in d["zero_initial"]],
        "vertex_pairing": d["vertex_pairing"],
    }
