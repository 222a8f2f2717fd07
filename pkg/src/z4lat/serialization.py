"""JSON schemas shared by the CLI and the fixtures.

Code files:        {"ring": 2|4, "n": int, "generator": [[int, ...], ...]}
Polynomial files:  {"degree": n, "vars": [...], "terms":
                    [{"exp": [...], "coef": "<decimal string>"}]}
h-polynomial files: {"n": int, "terms": [{"exp": int, "coef": "<decimal>"}]}

Coefficients travel as decimal strings to keep arbitrary precision intact.
"""

from __future__ import annotations

import json

import numpy as np

from .binary import BinaryCode
from .enumerators import HomPoly
from .errors import ValidationError

VARS_BY_KIND = {"swe": ["a", "b", "c"], "jwe": ["a", "b", "c", "d"], "we": ["x", "y"]}


def code_to_dict(ring: int, generator) -> dict:
    G = np.asarray(generator, dtype=np.int64) % ring
    return {"ring": ring, "n": int(G.shape[1]), "generator": [[int(x) for x in row] for row in G]}


def load_code_dict(data: dict):
    """Returns (ring, n, generator array); validates entries."""
    try:
        ring = int(data["ring"])
        n = int(data["n"])
        gen = np.asarray(data["generator"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed code file: {exc}") from exc
    if ring not in (2, 4):
        raise ValidationError("ring must be 2 or 4")
    if gen.ndim != 2 or gen.shape[1] != n:
        raise ValidationError("generator shape disagrees with n")
    if ((gen % ring) != gen).any():
        raise ValidationError(f"entries must be reduced mod {ring}")
    return ring, n, gen


def load_code_file(path):
    with open(path, encoding="utf-8") as fh:
        return load_code_dict(json.load(fh))


def binary_code_from_file(path) -> BinaryCode:
    ring, n, gen = load_code_file(path)
    if ring != 2:
        raise ValidationError("expected a binary code file (ring 2)")
    return BinaryCode.from_matrix(gen, n=n)


def poly_to_dict(p: HomPoly, kind: str) -> dict:
    return {
        "degree": p.degree,
        "vars": VARS_BY_KIND[kind],
        "terms": [{"exp": list(e), "coef": str(c)} for e, c in p.sorted_terms()],
    }


def poly_from_dict(data: dict) -> HomPoly:
    try:
        degree = int(data["degree"])
        nvars = len(data["vars"])
        terms = {tuple(int(x) for x in t["exp"]): int(t["coef"]) for t in data["terms"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed polynomial file: {exc}") from exc
    return HomPoly(nvars, degree, terms)


def poly_from_file(path) -> HomPoly:
    with open(path, encoding="utf-8") as fh:
        return poly_from_dict(json.load(fh))


def h_poly_from_file(path):
    """Raw h(t) ingestion: returns (coefficient list, n)."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        n = int(data["n"])
        pairs = [(int(t["exp"]), int(t["coef"])) for t in data["terms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed h-polynomial file: {exc}") from exc
    coeffs = [0] * (max(e for e, _ in pairs) + 1)
    for e, c in pairs:
        coeffs[e] += c
    return coeffs, n
