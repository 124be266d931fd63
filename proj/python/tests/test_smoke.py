import pytest

import autseq


def test_sequences():
    t = autseq.builtin_sequence("t")
    assert t.prefix(8) == [0, 1, 1, 0, 1, 0, 0, 1]
    assert t[3] == 0
    assert "rbar" in autseq.builtin_sequence_names()
    with pytest.raises(autseq.InputError):
        autseq.builtin_sequence("nope")


def test_compile():
    t = autseq.builtin_sequence("t")
    p = autseq.compile("T[i] = T[j] & i < j", {"T": t}, ["i", "j"])
    assert p.free_vars == ["i", "j"]
    assert p.holds([1, 2])
    assert not p.holds([0, 1])
    assert autseq.compile("E i (T[i] = T[i+1] & T[i+1] = T[i+2])", {"T": t}).truth() is False
    with pytest.raises(autseq.InputError):
        autseq.compile("2*n = m")


def test_factorization():
    t = autseq.builtin_sequence("t")
    assert autseq.marker_bits(t, 18) == "100101000100000001"
    assert autseq.term_starts(t, 40) == [0, 3, 5, 9, 17, 33]
    assert autseq.factorization_finite(autseq.builtin_sequence("tbar")) == "[0..0],[1..inf)"
    assert autseq.factorization_finite(t) is None
    assert autseq.prefix_factorization(t, 8) == [(0, 2), (3, 4), (5, 7)]


def test_counts_and_synthesis():
    t = autseq.builtin_sequence("t")
    lyn = autseq.count_representation(t, "lyndon")
    assert [lyn(n) for n in range(1, 11)] == [2, 1, 2, 1, 2, 2, 0, 1, 0, 1]
    assert autseq.count_representation(t, "primitive")(4) == 8
    assert autseq.count_representation(t, "terms")(3) == 2
    again = autseq.LinearRepresentation.from_text(lyn.to_text())
    assert again(12) == lyn(12)

    r = autseq.synthesize(autseq.count_representation(autseq.builtin_sequence("r"), "lyndon"))
    assert r["outcome"] == "dfao"
    assert r["max_output"] == 8
    assert r["dfao"][5] == 6

    grow = autseq.synthesize(autseq.count_representation(t, "primitive"), 10000)
    assert grow["outcome"] == "unbounded"


def test_oracle():
    assert autseq.oracle.duval([0, 1, 1, 0, 1, 0, 0, 1]) == [[0, 1, 1], [0, 1], [0, 0, 1]]
    assert autseq.oracle.is_lyndon([0, 0, 1, 1])
    assert not autseq.oracle.is_primitive([0, 1, 0, 1])
    assert autseq.oracle.least_suffix([0, 1, 1, 0]) == 3
