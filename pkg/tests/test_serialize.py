import json
from fractions import Fraction
from math import inf

import numpy as np
from hypothesis import given, settings, strategies as st

from sievelab.classical import IntervalSpec, interval_sample, interval_system
from sievelab.core import SieveSupport, gram_delta, sifted_measure
from sievelab.instances import random_instance
from sievelab.serialize import (dumps, sample_from_json, sample_to_json, system_from_json,
                                system_to_json, to_csv, to_jsonable)


def test_scalars():
    assert to_jsonable(Fraction(3, 4)) == "3/4"
    assert to_jsonable(inf) == "inf"
    assert to_jsonable(1 + 2j) == [1.0, 2.0]
    assert to_jsonable(np.int64(5)) == 5 and isinstance(to_jsonable(np.bool_(True)), bool)
    assert to_jsonable({3, 1, 2}) == [1, 2, 3]


def test_dumps_deterministic():
    a = dumps({"b": Fraction(1, 3), "a": [1, 2]})
    b = dumps({"a": [1, 2], "b": Fraction(1, 3)})
    assert a == b and a.endswith("\n")
    assert json.loads(a) == {"a": [1, 2], "b": "1/3"}


@settings(max_examples=40)
@given(st.integers(0, 2 ** 32 - 1))
def test_roundtrip(seed):
    sample, system = random_instance(np.random.default_rng(seed))
    sys2 = system_from_json(json.loads(dumps(system_to_json(system))))
    assert sys2 == system
    s2 = sample_from_json(json.loads(dumps(sample_to_json(sample, system.labels))), system.labels)
    assert s2 == sample
    assert sifted_measure(s2, sys2) == sifted_measure(sample, system)


def test_tuple_values_roundtrip():
    system = interval_system([2, 3], r=2)
    sample = interval_sample(IntervalSpec(0, 3, 2), [2, 3])
    assert system_from_json(json.loads(dumps(system_to_json(system)))) == system
    back = sample_from_json(json.loads(dumps(sample_to_json(sample, [2, 3]))), [2, 3])
    assert back == sample


def test_gram_json_schema():
    system = interval_system([3])
    sample = interval_sample(IntervalSpec(0, 5), [3])
    gd = gram_delta(sample, system, SieveSupport.singletons([3]))
    data = json.loads(dumps(gd))
    assert set(data) == {"index", "matrix", "top_eigenvalue"}
    m = np.array(data["matrix"])
    assert m.shape == (3, 3, 2)
    assert np.allclose(m[..., 0] + 1j * m[..., 1], gd.matrix)


def test_csv():
    out = to_csv([{"a": Fraction(1, 2), "b": [1, 2]}, {"a": 3, "c": None}])
    assert out.splitlines() == ["a,b,c", "1/2,1;2,", "3,,"]
    assert to_csv([]) == ""
