"""Smoke tests for the python bindings: session round trips and a few known
invariant values computed through the extension module."""

import json

import pytest

import torhom

LINE_SESSION = """
field Q
ring R = poly(x:1, y:1) / (x*y*(x-y)) primes (x); (y); (x-y) split base=() f=x*y*(x-y) dim 1 reduced
module M = coker R [[x]]
module Ny = coker R [[y]]
module N = dsum M Ny Ny
module k = coker R [[x, y]]
"""


def test_run_session_reports_theta():
    report = torhom.run(LINE_SESSION + "theta M N\nlength k\n")
    assert report["schema"] == 1
    results = report["results"]
    assert len(results) == 2
    assert results[0]["command"] == "theta"
    assert results[0]["ok"] is True
    assert results[0]["value"] == 0
    assert results[1]["length"] == 1


def test_session_object_commands():
    s = torhom.Session(LINE_SESSION)
    theta = json.loads(s.command("theta M M"))
    assert theta["value"] == -2
    tor = json.loads(s.command("tor M M 1"))
    assert tor["length"] == 2
    cls = json.loads(s.command("class M"))
    assert cls["is_zero_class"] is False


def test_parse_errors_raise():
    with pytest.raises(torhom.TorhomError):
        torhom.Session("module M = coker R [[x]]\n")  # R never declared


def test_reports_are_deterministic():
    a = torhom.run_session(LINE_SESSION + "theta M N\n")
    b = torhom.run_session(LINE_SESSION + "theta M N\n")
    assert a == b


def test_mf_session():
    text = """
field Q
ring S = poly(x:4, y:5, z:6) / (x*z - y^2, x^3 - z^2) primes (x*z - y^2, x^3 - z^2) split base=(x*z - y^2) f=x^3 - z^2 dim 1 reduced
mf MF = verify S [[-z, x]; [x^2, -z]] [[z, x]; [x^2, z]]
hw MF
"""
    report = torhom.run(text, max_index=12)
    mf, hw = report["results"]
    assert mf["valid"] is True and mf["reduced"] is True
    assert hw["tensor_dual_torsion"] is True
    assert hw["consistent_with_conjecture"] is True
