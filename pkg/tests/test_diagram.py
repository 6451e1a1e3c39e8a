import json

import pytest

from knotcert.braids import braid_closure, random_knot_diagram, torus_diagram
from knotcert.diagram import (
    DiagramError,
    checkerboard,
    faces,
    mirror,
    parse_pd,
    strands,
    wirtinger,
)

TREFOIL_TEXT = "X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]"
FIGURE_EIGHT_TEXT = "X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)"


def labels(d):
    return sorted(x for c in d.crossings for x in c)


def test_empty_is_unknot():
    d = parse_pd("")
    assert d.n == 0 and d.is_trivial


def test_trefoil_parse():
    d = parse_pd(TREFOIL_TEXT)
    assert d.n == 3
    assert labels(d) == sorted(list(range(1, 7)) * 2)
    assert abs(d.writhe) == 3


@pytest.mark.parametrize("text", [
    "X(1,1,2,1)",                        # label three times
    "X(1,2,3,4)",                        # labels appear once
    "X(4,1,3,2), X(2,3,1,4)",            # Hopf link: two components
    "X(1,2,3", "Y(1,2,3,4)", "X(1,2,3,4,5), X(1,2,3,4)", "X(a,b,c,d)",
    '{"pd": 5}', '{"nope": []}',
])
def test_rejects_bad_input(text):
    with pytest.raises(DiagramError):
        parse_pd(text)


def test_json_form_matches_text():
    d = parse_pd(TREFOIL_TEXT)
    assert parse_pd(json.dumps(d.to_json())) == d
    assert parse_pd(d.to_text()) == d


def test_labels_normalized():
    shifted = ", ".join(
        "X(%s)" % ",".join(str(x + 100) for x in c) for c in parse_pd(FIGURE_EIGHT_TEXT).crossings
    )
    assert parse_pd(shifted) == parse_pd(FIGURE_EIGHT_TEXT)
    d = parse_pd(FIGURE_EIGHT_TEXT)
    # arc k+1 follows arc k: the under strand of each crossing runs k -> k+1
    m = 2 * d.n
    for a, _b, c, _d in d.crossings:
        assert c == a % m + 1


def test_signs_and_mirror():
    d = torus_diagram(3, 2)
    assert d.signs == (1, 1, 1)
    md = mirror(d)
    assert md.signs == (-1, -1, -1)
    assert mirror(md) == d
    f8 = parse_pd(FIGURE_EIGHT_TEXT)
    assert f8.writhe == 0


def test_wirtinger_shape():
    import random

    rng = random.Random(2)
    for _ in range(30):
        s = rng.randint(2, 4)
        n = rng.randrange(s - 1, 12, 1)
        if (n - s + 1) % 2:
            n += 1
        d = random_knot_diagram(rng, n, s)
        w = wirtinger(d)
        assert w.ngens == d.n and len(w.relations) == d.n
        assert w.meridian == ((0, 1),)
        assert len(w.longitude) <= 2 * d.n
        assert sum(e for _, e in w.longitude) == 0
        st = strands(d)
        assert st[1] == 0 and set(st.values()) == set(range(d.n))


def test_wirtinger_needs_crossing():
    with pytest.raises(DiagramError):
        wirtinger(parse_pd(""))


def test_checkerboard_counts():
    for d in (torus_diagram(3, 2), parse_pd(FIGURE_EIGHT_TEXT), torus_diagram(4, 3),
              braid_closure([1, 1, 1, 2, -1, 2], 3)):
        assert len(faces(d)) == d.n + 2
        for flip in (False, True):
            cb = checkerboard(d, flip)
            assert len(cb.white) + sum(cb.shaded) == d.n + 2
            assert all(e in (1, -1) for e in cb.eta)
            assert set(cb.types) <= {"I", "II"}
        assert len(checkerboard(d).white) <= d.n + 1


def test_random_diagram_parity_guard():
    import random

    with pytest.raises(ValueError):
        random_knot_diagram(random.Random(0), 3, 3)
