"""JSON/CSV schemas and deterministic number formatting.

Spec JSON::

    {"gamma": [re, im], "sigma": s, "zeros": [[re, im], ...],
     "tail_im_sum_diverges": false, "label": "..."}

Floats are always written with 17 significant digits (``'.17g'``), so output
is byte-stable and round-trips exactly.
"""

import csv
import json
import math
from importlib import resources

import numpy as np

from .debranges import DeBrangesSpec
from .errors import SampleAlignmentError, SpecParseError, ValidationError
from .inner import InnerFunctionSpec

_SPEC_KEYS = {"gamma", "sigma", "zeros", "tail_im_sum_diverges", "label"}


def fmt(x):
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} cannot be serialised")
    # fold -0.0 into 0 so signed zeros never show up in diffs
    return format(x + 0.0, ".17g")


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent=2):
    return _encode(obj, indent, 0) + "\n"


def pair(z):
    z = complex(z)
    return [z.real, z.imag]


def _complex_field(value, name):
    if not (isinstance(value, (list, tuple)) and len(value) == 2):
        raise SpecParseError(f"{name} must be a [re, im] pair")
    try:
        re, im = float(value[0]), float(value[1])
    except (TypeError, ValueError):
        raise SpecParseError(f"{name} must contain two numbers") from None
    return complex(re, im)


def spec_from_dict(data):
    if not isinstance(data, dict):
        raise SpecParseError("spec must be a JSON object")
    unknown = set(data) - _SPEC_KEYS
    if unknown:
        raise SpecParseError(f"unknown spec fields: {sorted(unknown)}")
    for key in ("gamma", "sigma", "zeros"):
        if key not in data:
            raise SpecParseError(f"missing field {key!r}")
    gamma = _complex_field(data["gamma"], "gamma")
    if isinstance(data["sigma"], bool) or not isinstance(data["sigma"], (int, float)):
        raise SpecParseError("sigma must be a number")
    if not isinstance(data["zeros"], list):
        raise SpecParseError("zeros must be an array of [re, im] pairs")
    zeros = [_complex_field(z, f"zeros[{k}]") for k, z in enumerate(data["zeros"])]
    tail = data.get("tail_im_sum_diverges", False)
    if not isinstance(tail, bool):
        raise SpecParseError("tail_im_sum_diverges must be a boolean")
    label = data.get("label", "")
    if not isinstance(label, str):
        raise SpecParseError("label must be a string")
    return InnerFunctionSpec(gamma, data["sigma"], tuple(zeros), tail, label)


def spec_to_dict(spec):
    return {
        "gamma": pair(spec.gamma),
        "sigma": spec.sigma,
        "zeros": [pair(z) for z in spec.zeros],
        "tail_im_sum_diverges": spec.tail_im_sum_diverges,
        "label": spec.label,
    }


def parse_spec_text(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"malformed JSON: {exc}") from None
    return spec_from_dict(data)


def parse_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecParseError(f"cannot read spec file: {exc}", code="SPEC_MISSING") from None
    return parse_spec_text(text)


def bundled_spec_names():
    root = resources.files("modelspace") / "data" / "specs"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_bundled(name):
    root = resources.files("modelspace") / "data" / "specs"
    return parse_spec_text((root / f"{name}.json").read_text(encoding="utf-8"))


def debranges_to_dict(e):
    return {
        "gamma_E": pair(e.gamma_E),
        "sigma_E": e.sigma_E,
        "zeros_conj": [pair(z) for z in e.zeros_conj],
        "convergence_exponents": e.convergence_exponents,
        "G": 1,
    }


def debranges_from_dict(data):
    try:
        if data.get("G", 1) != 1:
            raise SpecParseError("only G = 1 is supported")
        return DeBrangesSpec(
            _complex_field(data["gamma_E"], "gamma_E"),
            float(data["sigma_E"]),
            tuple(_complex_field(z, "zeros_conj") for z in data["zeros_conj"]),
            bool(data.get("convergence_exponents", False)),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise SpecParseError(f"malformed de Branges spec: {exc}") from None


def parse_debranges(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SpecParseError(f"cannot read de Branges file: {exc}", code="SPEC_MISSING") from None
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"malformed JSON: {exc}") from None
    return debranges_from_dict(data)


def write_csv(fh, header, rows):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, (str, int, np.integer)) else fmt(v) for v in row])


def read_samples(path):
    """Samples CSV with header ``lambda,re,im`` -> list of (x, complex value)."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise ValidationError(f"cannot read samples file: {exc}", code="SAMPLES_MISSING") from None
    out = []
    for k, row in enumerate(rows):
        try:
            out.append((float(row["lambda"]), complex(float(row["re"]), float(row["im"]))))
        except (KeyError, TypeError, ValueError):
            raise SampleAlignmentError(f"samples row {k} must provide numeric lambda, re, im") from None
    return out
