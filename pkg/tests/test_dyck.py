import pytest

from braidarr import (
    DyckPath,
    coeff_trunk,
    enumerate_paths,
    parse,
    path_compartments,
    path_rl_maxima,
    path_to_tree,
    primitive_parts,
    total_trees,
    tree_to_path,
)
from braidarr.dyck import (
    from_text,
    path_from_json,
    path_to_json,
    statistic_distribution,
    to_text,
)
from braidarr.enumeration import admissible_trees
from braidarr.offsets import catalan

from conftest import DYCK_STEPS


def fig_path():
    return DyckPath(1, DYCK_STEPS)


# ---------------------------------------------------------------------------
# validation


def test_validation():
    DyckPath(1, (1, -1))
    with pytest.raises(ValueError):
        DyckPath(0, ())
    with pytest.raises(ValueError):
        DyckPath(1, (1, -1, -1))  # too many downs
    with pytest.raises(ValueError):
        DyckPath(1, (-1, 1))  # dips below the axis
    with pytest.raises(ValueError):
        DyckPath(1, (1, 1, -1, -1))  # duplicate labels
    with pytest.raises(ValueError):
        DyckPath(2, (1, -1))  # needs two downs per up
    p = fig_path()
    assert p.n == 7
    assert p.is_standard()
    assert not DyckPath(1, (3, -1)).is_standard()


def test_text_and_json_roundtrip():
    p = fig_path()
    text = to_text(p)
    assert text == "+4 +7 +2 - - +6 - - +3 +1 - - +5 -"
    assert from_text(text, 1) == p
    payload = path_to_json(p)
    assert payload["m"] == 1 and payload["n"] == 7
    assert payload["steps"][0] == {"up": 4} and payload["steps"][3] == "down"
    assert path_from_json(payload) == p
    with pytest.raises(ValueError):
        from_text("+1 x", 1)


def test_path_json_schema():
    import json
    from importlib import resources

    import jsonschema

    schema = json.loads(
        resources.files("braidarr.schemas").joinpath("path.schema.json").read_text()
    )
    jsonschema.validate(path_to_json(fig_path()), schema)


# ---------------------------------------------------------------------------
# enumeration


def test_path_counts():
    assert len(list(enumerate_paths(1, 1))) == 1
    assert len(list(enumerate_paths(1, 2))) == 4
    assert len(list(enumerate_paths(1, 3))) == 30
    for m in (1, 2):
        for n in (1, 2, 3, 4):
            paths = list(enumerate_paths(m, n))
            assert len(paths) == total_trees(m, n), (m, n)
            assert len(set(paths)) == len(paths)
            assert all(p.is_standard() for p in paths)


# ---------------------------------------------------------------------------
# statistics


def test_primitive_parts_example():
    parts = primitive_parts(fig_path())
    assert len(parts) == 3
    assert [sorted(p.labels()) for p in parts] == [[2, 4, 6, 7], [1, 3], [5]]
    # concatenating the parts restores the path
    steps = tuple(s for p in parts for s in p.steps)
    assert steps == DYCK_STEPS


def test_primitive_parts_trivial():
    assert len(primitive_parts(DyckPath(1, (1, -1)))) == 1
    # interior strictly positive: a single part
    assert len(primitive_parts(DyckPath(1, (2, 1, -1, -1)))) == 1


def test_compartments_example():
    assert path_compartments(fig_path()) == 2
    assert path_compartments(DyckPath(1, (1, -1))) == 1


def test_rl_maxima_example():
    assert path_rl_maxima(fig_path()) == 2  # labels 4, 7, 2 before the drop
    assert path_rl_maxima(DyckPath(1, (1, -1))) == 1


def test_statistic_distributions():
    assert statistic_distribution(1, 3, "compartments") == {1: 20, 2: 9, 3: 1}
    assert statistic_distribution(1, 3, "rl-maxima") == {1: 20, 2: 9, 3: 1}
    for m in (1, 2):
        for n in (1, 2, 3, 4):
            row = tuple(coeff_trunk(m, n, j) for j in range(1, n + 1))
            for stat in ("compartments", "rl-maxima"):
                dist = statistic_distribution(m, n, stat)
                assert tuple(dist.get(j, 0) for j in range(1, n + 1)) == row


# ---------------------------------------------------------------------------
# bijection with trees


def test_tree_to_path_tiny():
    assert tree_to_path(parse("(1:*,*)")).steps == (1, -1)
    assert tree_to_path(parse("(2:(1:*,*),*)")).steps == (2, -1, 1, -1)
    assert tree_to_path(parse("(1:*,(2:*,*))")).steps == (1, 2, -1, -1)


def test_roundtrip_tree_path_tree():
    for m in (1, 2):
        for n in (1, 2, 3):
            for t in admissible_trees(catalan(m), n):
                assert path_to_tree(tree_to_path(t)) == t


def test_roundtrip_path_tree_path():
    for m in (1, 2):
        for n in (1, 2, 3, 4):
            for p in enumerate_paths(m, n):
                assert tree_to_path(path_to_tree(p)) == p


def test_bijection_image_is_everything():
    images = {tree_to_path(t) for t in admissible_trees(catalan(2), 3)}
    assert images == set(enumerate_paths(2, 3))


def test_path_to_tree_m_mismatch():
    p = DyckPath(1, (1, -1))
    with pytest.raises(ValueError):
        path_to_tree(p, m=2)
    assert path_to_tree(p, m=1) == parse("(1:*,*)")
