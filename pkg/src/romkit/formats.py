"""On-disk formats: CSV matrix files and JSON model files.

Matrix files start with a header line ``# rows=N cols=L kind=<kind>``
followed by N comma-separated lines of L numbers written with 17
significant digits. Complex entries use the token form ``a+bi``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .eim import EIMOperator
from .errors import DimensionError, InvalidDataError
from .integration import Quadrature, Rule
from .reduced_basis import ReducedBasis
from .splines import Spline
from .surrogate import Surrogate

KINDS = ("training", "basis", "grid", "params")
FORMAT_VERSION = 1

_HEADER = re.compile(r"^#\s*rows=(\d+)\s+cols=(\d+)\s+kind=(\w+)\s*$")


def format_float(x):
    return format(float(x), ".17g")


def _format_complex(z):
    sign = "" if np.signbit(z.imag) or np.isnan(z.imag) else "+"
    return f"{format_float(z.real)}{sign}{format_float(z.imag)}i"


def _parse_token(token):
    token = token.strip()
    if token.endswith("i"):
        try:
            return complex(token[:-1] + "j")
        except ValueError:
            raise InvalidDataError(f"malformed complex token {token!r}") from None
    try:
        return float(token)
    except ValueError:
        raise InvalidDataError(f"malformed number {token!r}") from None


def write_matrix(path, matrix, kind):
    """Write a 2-D array (1-D arrays are written as one row)."""
    if kind not in KINDS:
        raise InvalidDataError(f"unknown matrix kind {kind!r}")
    matrix = np.atleast_2d(np.asarray(matrix))
    rows, cols = matrix.shape
    fmt = _format_complex if np.iscomplexobj(matrix) else format_float
    lines = [f"# rows={rows} cols={cols} kind={kind}"]
    lines.extend(",".join(fmt(x) for x in row) for row in matrix)
    text = "\n".join(lines) + "\n"
    if path is None:
        return text
    Path(path).write_text(text, encoding="utf-8")
    return text


def parse_matrix(text):
    """Parse matrix-file text into ``(array, kind)``."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise InvalidDataError("empty matrix file")
    header = _HEADER.match(lines[0].strip())
    if header is None:
        raise InvalidDataError(f"bad matrix header {lines[0]!r}")
    rows, cols, kind = int(header.group(1)), int(header.group(2)), header.group(3)
    if kind not in KINDS:
        raise InvalidDataError(f"unknown matrix kind {kind!r}")
    body = lines[1:]
    if len(body) != rows:
        raise DimensionError(f"header declares {rows} rows, file has {len(body)}")
    if rows == 0:
        raise InvalidDataError("matrix file has no rows")
    values = [[_parse_token(tok) for tok in line.split(",")] for line in body]
    if any(len(row) != cols for row in values):
        raise DimensionError(f"every row must have {cols} columns")
    is_complex = any(isinstance(x, complex) for row in values for x in row)
    return np.array(values, dtype=complex if is_complex else float), kind


def read_matrix(path, kind=None):
    """Read a matrix file; optionally check its declared kind."""
    matrix, found = parse_matrix(Path(path).read_text(encoding="utf-8"))
    if kind is not None and found != kind:
        raise InvalidDataError(f"{path}: expected kind={kind}, found kind={found}")
    return matrix


def _array(a):
    a = np.asarray(a)
    if np.iscomplexobj(a):
        return {"real": a.real.tolist(), "imag": a.imag.tolist()}
    return a.tolist()


def _unarray(obj, dtype=float):
    if isinstance(obj, dict):
        return np.array(obj["real"], dtype=float) + 1j * np.array(obj["imag"], dtype=float)
    return np.array(obj, dtype=dtype)


def model_to_dict(model: Surrogate) -> dict:
    q = model.quadrature
    spline = model.fits
    coefficients = np.asarray(spline.coefficients)
    return {
        "format_version": FORMAT_VERSION,
        "quadrature": {
            "points": _array(q.points),
            "weights": _array(q.weights),
            "rule": q.rule.value,
        },
        "basis": _array(model.rb.elements),
        "greedy_indices": model.rb.greedy_indices.tolist(),
        "greedy_errors": model.rb.greedy_errors.tolist(),
        "final_error": model.rb.final_error,
        "normalized_build": model.rb.normalized_build,
        "greedy_tol": model.rb.greedy_tol,
        "eim": {
            "nodes": model.eim.nodes.tolist(),
            "v_matrix": _array(model.eim.v_matrix),
            "b_matrix": _array(model.eim.b_matrix),
            "condition_number": model.eim.condition_number,
        },
        "splines": [
            {
                "knots": _array(spline.knots),
                "knot_vector": _array(spline.knot_vector),
                "coefficients": _array(coefficients[:, i]),
                "degree": spline.degree,
            }
            for i in range(coefficients.shape[1])
        ],
        "parameter_domain": list(model.parameter_domain),
        "build_report": model.build_report,
    }


def model_from_dict(data: dict) -> Surrogate:
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise InvalidDataError(f"unsupported model format_version {version!r}")
    try:
        qd = data["quadrature"]
        quadrature = Quadrature(
            points=_unarray(qd["points"]),
            weights=_unarray(qd["weights"]),
            rule=Rule(qd["rule"]),
        )
        rb = ReducedBasis(
            elements=_unarray(data["basis"]),
            greedy_indices=np.array(data["greedy_indices"], dtype=int),
            greedy_errors=np.array(data["greedy_errors"], dtype=float),
            quadrature=quadrature,
            normalized_build=bool(data["normalized_build"]),
            final_error=float(data["final_error"]),
            greedy_tol=float(data["greedy_tol"]),
        )
        ed = data["eim"]
        eim = EIMOperator(
            nodes=np.array(ed["nodes"], dtype=int),
            v_matrix=_unarray(ed["v_matrix"]),
            b_matrix=_unarray(ed["b_matrix"]),
            condition_number=float(ed["condition_number"]),
        )
        splines = data["splines"]
        first = splines[0]
        fits = Spline(
            knots=_unarray(first["knots"]),
            knot_vector=_unarray(first["knot_vector"]),
            coefficients=np.stack([_unarray(s["coefficients"]) for s in splines], axis=1),
            degree=int(first["degree"]),
        )
        domain = tuple(float(x) for x in data["parameter_domain"])
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise InvalidDataError(f"malformed model file: {exc!r}") from exc
    if len(splines) != eim.basis_size:
        raise InvalidDataError("model has a different number of fits and empirical nodes")
    return Surrogate(
        eim=eim,
        rb=rb,
        fits=fits,
        parameter_domain=domain,
        physical_points=quadrature.points,
        build_report=dict(data.get("build_report", {})),
    )


def save_model(model: Surrogate, path):
    Path(path).write_text(json.dumps(model_to_dict(model)), encoding="utf-8")


def load_model(path) -> Surrogate:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidDataError(f"{path} is not valid JSON: {exc}") from exc
    return model_from_dict(data)
