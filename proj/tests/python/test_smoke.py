"""Smoke tests for the python bindings; run with PYTHONPATH set to the build
tree (ctest does this) or after pip installation."""

import json
import math

import hyperfell as hf


def test_scene_membership():
    s = hf.builtin_scene("ex42")
    assert s.dim == 3
    assert s.contains([-1.0, -2.0, -1.0])  # on the front face
    assert not s.contains([-1.0, -2.0, 0.5])
    assert s.leq([-1.0, -1.0, -1.0], [0.0, 0.0, 0.0])
    assert not s.leq([0.0, 0.0, 0.0], [-1.0, -1.0, -1.0])


def test_scene_roundtrip():
    s = hf.builtin_scene("ex41")
    text = hf.print_scene(s)
    s2 = hf.parse_scene(text)
    assert hf.print_scene(s2) == text
    try:
        hf.parse_scene("region bad dim 2 { x3 <= 0 } order coordinatewise")
    except ValueError as e:
        assert "x3" in str(e)
    else:
        raise AssertionError("expected a parse error")


def test_meets_and_joins():
    m = hf.meet_ex42([-1.0, -0.5, 0.0], [-0.25, -2.0, 0.0])
    assert max(abs(a - b) for a, b in zip(m, [-1.0, -2.0, -1.0])) < 1e-12
    j = hf.join_ex35([-0.5, -0.5, -0.25], [-0.5, -1.0, 0.0])
    assert max(abs(a - b) for a, b in zip(j, [-0.5, -0.5, 0.0])) < 1e-12


def test_hausdorff_distance():
    assert hf.hausdorff_distance([[0.0, 0.0]], [[3.0, 4.0]]) == 5.0
    d = hf.hausdorff_distance([[0.0, 0.0], [1.0, 0.0]], [[0.0, 1.0]])
    assert abs(d - math.sqrt(2.0)) < 1e-12


def test_probe_and_classify():
    s = hf.builtin_scene("ex41")
    v = json.loads(hf.probe(s, "fell", [0.5, 0.5], [0.25, 0.25], 12, 32))
    assert v["status"] == "CONVERGES_AT_RESOLUTION"
    c = json.loads(hf.classify(s, [0.5, 0.5]))
    assert c["status"] == "UPPER_COMPACT_BOUNDED"


def test_repro_ex25():
    rep = json.loads(hf.run_repro("ex25", True))
    assert rep["example"] == "ex25"
    assert rep["all_matched"] is True


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"{name}: ok")
    print("python smoke tests passed")
