import os
from pathlib import Path

import pytest

import holim_engine as he

SAMPLES = Path(os.environ.get("HLE_SAMPLES", Path(__file__).resolve().parents[2] / "samples"))


def test_holim_of_the_cospan():
    report = he.run_file(SAMPLES / "cospan.hle", "holim D")
    assert report["betti"] == {"-1": 1}
    assert report["command"] == "holim"
    assert "bousfield-kan" in report["provenance"]


def test_end_and_verdicts():
    assert he.run_file(SAMPLES / "hom_end.hle", "end H")["size"] == 2
    assert he.run_file(SAMPLES / "hoinitial.hle", "hoinitial i")["verdict"] == "pass"
    assert he.run_file(SAMPLES / "hoinitial.hle", "hoinitial j")["verdict"] == "fail"


def test_errors_carry_their_kind():
    with pytest.raises(he.EngineError) as info:
        he.run("category L { objects: a; arrows: t: a -> a }", "nerve L")
    assert info.value.kind == "NotLoopFree"
    with pytest.raises(he.EngineError) as info:
        he.run("", "holim D")
    assert info.value.kind == "UnknownBinding"


def test_bindings_and_canonical_form():
    text = (SAMPLES / "kan.hle").read_text()
    kinds = he.bindings(text)
    assert kinds["Z2"] == "category"
    assert kinds["H"] == "finset-diagram"
    printed = he.canonical(text)
    assert he.canonical(printed) == printed


def test_betti():
    assert he.betti(0, [1, 1], [[[1]]]) == {0: 0, 1: 0}
    assert he.betti(0, [1, 2, 1], [[[1, "-1"]], [[0], [0]]]) == {0: 0, 1: 1, 2: 1}


def test_verify_is_deterministic():
    assert "pullback-oracle" in he.suite_names()
    a = he.verify("reedy-frames", seed=3, threads=1)
    b = he.verify("reedy-frames", seed=3, threads=4)
    assert a == b
    assert a[0]["verdict"] == "pass"
