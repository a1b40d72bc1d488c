import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudocircles.codes import (
    LEFT,
    MINUS,
    PLUS,
    RIGHT,
    Arrangement,
    CodeError,
    arcs,
    mirror,
    parse_arrangement,
    relabel,
    reorient,
    restrict,
    rotate_start,
    validate,
)
from pseudocircles.families import gen_C1, gen_C2, gen_C3, generate

from support import corpus


def text_code(arr, label):
    return " ".join(f"{lab}{'+' if sg == PLUS else '-'}" for lab, sg in arr.code(label))


def test_c2_circle_three_reads_as_in_the_worked_example():
    arr = gen_C2(5)
    assert text_code(arr, 3) == "1+ 2+ 4- 5- 5+ 4+ 2- 1-"
    assert "".join(map(str, arr.unsigned(3))) == "12455421"


def test_rotate_start():
    arr = rotate_start(gen_C2(5), 3, 2)
    assert text_code(arr, 3) == "4- 5- 5+ 4+ 2- 1- 1+ 2+"
    # other circles are untouched
    assert all(arr.code(c) == gen_C2(5).code(c) for c in (1, 2, 4, 5))


def test_arcs_example():
    view = arcs(gen_C2(5), 3, 1)
    assert view.side_tags[0] == RIGHT
    assert [f"{l}{'+' if s > 0 else '-'}" for l, s in view.arcs[0]] == [
        "2+", "4-", "5-", "5+", "4+", "2-",
    ]
    assert view.arcs[1] == ()
    assert view.side_of(4) == RIGHT


def test_arcs_left_tag_and_split_label():
    view = arcs(gen_C2(5), 2, 4)
    # circle 2 reads 1+ 3- 4- 5- 5+ 4+ 3+ 1-
    assert view.side_tags == (LEFT, RIGHT)
    assert view.side_of(5) == LEFT
    assert view.side_of(3) == RIGHT
    # a Krupp triple alternates, so the third circle is split
    assert arcs(gen_C1(3), 1, 2).side_of(3) is None
    with pytest.raises(CodeError):
        arcs(gen_C2(5), 2, 2)


def test_reorient_c2_3():
    # by hand: reverse circle 1 and flip its signs, then flip every sign of 1
    out = reorient(gen_C2(3), 1)
    assert text_code(out, 1) == "2- 3- 3+ 2+"
    assert text_code(out, 2) == "1- 3- 3+ 1+"
    assert text_code(out, 3) == "1- 2+ 2- 1+"
    assert validate(out).ok


def test_validate_names_circle_with_flipped_sign():
    arr = gen_C2(4)
    codes = {c: list(arr.code(c)) for c in arr.labels}
    lab, sg = codes[3][0]
    codes[3][0] = (lab, -sg)
    report = validate(Arrangement(codes))
    assert not report.ok
    assert any("circle 3" in v for v in report.violations)


@pytest.mark.parametrize(
    "codes, fragment",
    [
        ({1: [(2, PLUS), (2, MINUS)], 2: [(1, PLUS)]}, "circle 2"),
        ({1: [(2, PLUS), (2, MINUS), (1, PLUS)], 2: [(1, PLUS), (1, MINUS)]}, "own label"),
        ({1: [(3, PLUS), (3, MINUS)], 2: [(1, PLUS), (1, MINUS)]}, "unknown label 3"),
        (
            {1: [(2, PLUS), (2, MINUS), (2, PLUS), (2, MINUS)], 2: [(1, PLUS), (1, MINUS)]},
            "appears 4 times",
        ),
    ],
)
def test_validate_violations(codes, fragment):
    report = validate(Arrangement(codes))
    assert not report.ok
    assert any(fragment in v for v in report.violations), report.violations


def test_text_and_json_round_trip():
    arr = gen_C3(4)
    assert Arrangement.from_text(arr.to_text()) == arr
    assert parse_arrangement(arr.to_json()) == arr
    assert json.loads(arr.to_json()) == arr.to_dict()


@pytest.mark.parametrize("text", ["1: 2* 2-\n2: 1+ 1-\n", "x: 2+\n", "1: 2+ 2-\n1: 2+ 2-\n", "{"])
def test_malformed_text(text):
    with pytest.raises(CodeError):
        parse_arrangement(text)


def test_restrict_moves_start_and_rejects_unknown():
    arr = restrict(rotate_start(gen_C2(5), 3, 1), [3, 4, 5])
    assert text_code(arr, 3) == "4- 5- 5+ 4+"
    with pytest.raises(CodeError):
        restrict(gen_C2(3), [1, 9])
    with pytest.raises(CodeError):
        restrict(gen_C2(3), [])


def test_relabel_must_be_injective():
    with pytest.raises(CodeError):
        relabel(gen_C2(3), {1: 1, 2: 1, 3: 2})
    with pytest.raises(CodeError):
        relabel(gen_C2(3), {1: 1, 2: 2})


arrangements = st.sampled_from([arr for _, arr in corpus()])


@settings(max_examples=60, deadline=None)
@given(arrangements, st.data())
def test_operations_preserve_validity(arr, data):
    c = data.draw(st.sampled_from(arr.labels))
    k = data.draw(st.integers(-20, 20))
    for out in (reorient(arr, c), rotate_start(arr, c, k), mirror(arr)):
        assert validate(out).ok
    subset = data.draw(st.sets(st.sampled_from(arr.labels), min_size=1))
    assert validate(restrict(arr, subset)).ok


@settings(max_examples=60, deadline=None)
@given(arrangements, st.data())
def test_involutions(arr, data):
    c = data.draw(st.sampled_from(arr.labels))
    assert reorient(reorient(arr, c), c) == arr
    assert mirror(mirror(arr)) == arr
    k = data.draw(st.integers(0, 30))
    n = len(arr.code(c)) or 1
    assert rotate_start(rotate_start(arr, c, k), c, n - k % n) == arr


@settings(max_examples=60, deadline=None)
@given(arrangements, st.randoms(use_true_random=False))
def test_restrict_commutes_with_relabel(arr, rnd):
    labels = list(arr.labels)
    images = labels[:]
    rnd.shuffle(images)
    pi = dict(zip(labels, images))
    subset = [lab for lab in labels if rnd.random() < 0.6] or labels[:1]
    left = relabel(restrict(arr, subset), {s: pi[s] for s in subset})
    right = restrict(relabel(arr, pi), [pi[s] for s in subset])
    assert left == right


@settings(max_examples=40, deadline=None)
@given(arrangements)
def test_round_trip_property(arr):
    assert parse_arrangement(arr.to_text()) == arr
    assert parse_arrangement(arr.to_json()) == arr


def test_generated_families_are_valid():
    for family in ("C1", "C2", "C3"):
        for m in range(1, 10):
            assert validate(generate(family, m)).ok, (family, m)
