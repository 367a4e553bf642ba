"""Deterministic artifact emission: CSV bodies and JSON report trees.

All writes are whole-file atomic (write to a temp file in the target
directory, then rename).  Floats are rendered with 17 significant digits so
CSV bodies round-trip losslessly and re-runs with identical inputs are
byte-identical; no timestamps appear anywhere.
"""

import dataclasses
import json
import math
import os
import tempfile

import numpy as np


def fmt(x):
    """17-significant-digit decimal text for a float (lossless round-trip)."""
    return "%.17g" % float(x)


def atomic_write_text(path, text):
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_body(header, rows):
    """Join a header tuple and iterable of pre-formatted row tuples."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def trajectory_csv(traj):
    """Long-format mode trajectory: t, l, theta_re, theta_im, G_re, G_im."""
    rows = []
    for s in traj.samples:
        t_txt = fmt(s.t)
        for i in range(s.L):
            rows.append((t_txt, str(i + 1),
                         fmt(s.theta[i].real), fmt(s.theta[i].imag),
                         fmt(s.G[i].real), fmt(s.G[i].imag)))
    return csv_body(("t", "l", "theta_re", "theta_im", "G_re", "G_im"), rows)


def write_trajectory_csv(path, traj):
    atomic_write_text(path, trajectory_csv(traj))


def _sanitize(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return _sanitize(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(obj, (np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_sanitize(v) for v in obj.tolist()]
    if isinstance(obj, complex):
        return {"re": _sanitize(obj.real), "im": _sanitize(obj.imag)}
    return obj


def write_json_report(path, schema, payload):
    """Serialize a report tree with a top-level schema tag and sorted keys.

    Non-finite floats become the strings "inf"/"-inf"/"nan" (JSON has no
    representation for them); numpy scalars and dataclasses are unwrapped.
    """
    doc = {"schema": schema}
    doc.update(payload)
    atomic_write_text(path, json.dumps(_sanitize(doc), indent=2, sort_keys=True) + "\n")
