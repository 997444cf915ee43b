"""JSON/CSV encoding. Rationals become "p/q" strings, complex numbers [re, im]
pairs, and JSON output is key-sorted so equal inputs give identical bytes."""
import csv
import io
import json
import math
from fractions import Fraction

import numpy as np

from .core import SiftableSample, SieveSystem


def to_jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError("cannot serialise %r" % (type(obj),))


def dumps(obj):
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _freeze(v):
    return tuple(_freeze(x) for x in v) if isinstance(v, list) else v


def system_to_json(system):
    return {
        "labels": list(system.labels),
        "quotients": [list(system.quotients[l]) for l in system.labels],
        "densities": [[str(system.densities[l][y]) for y in system.quotients[l]]
                      for l in system.labels],
        "sieving_sets": [sorted((system.quotients[l].index(y) for y in system.sieving_sets[l]))
                         for l in system.labels],
    }


def system_from_json(data):
    labels = [_freeze(l) for l in data["labels"]]
    quotients, dens, omegas = {}, {}, {}
    for l, ys, ds, om in zip(labels, data["quotients"], data["densities"], data["sieving_sets"]):
        ys = tuple(_freeze(y) for y in ys)
        quotients[l] = ys
        dens[l] = {y: Fraction(d) for y, d in zip(ys, ds)}
        omegas[l] = {ys[i] for i in om}
    return SieveSystem(tuple(labels), quotients, dens, omegas)


def sample_to_json(sample, labels):
    return {
        "items": [to_jsonable(x) for x in sample.items],
        "weights": [str(w) for w in sample.weights],
        "values": [[to_jsonable(v) for v in sample.values[l]] for l in labels],
    }


def sample_from_json(data, labels):
    labels = [_freeze(l) for l in labels]
    return SiftableSample(
        [_freeze(x) for x in data["items"]],
        [Fraction(w) for w in data["weights"]],
        {l: [_freeze(v) for v in vals] for l, vals in zip(labels, data["values"])},
    )


def _cell(v):
    v = to_jsonable(v)
    if isinstance(v, list):
        return ";".join(str(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return "" if v is None else v


def to_csv(rows):
    rows = list(rows)
    if not rows:
        return ""
    fields = []
    for r in rows:
        for k in r:
            if k not in fields:
                fields.append(k)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _cell(r.get(k)) for k in fields})
    return buf.getvalue()
