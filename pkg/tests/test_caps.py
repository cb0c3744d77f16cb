from __future__ import annotations

import pytest

from iterline.caps import Caps


def test_defaults_and_dict():
    d = Caps().to_dict()
    assert d == {"max_vertices": 200_000, "max_depth": 12, "oracle_vertex_cap": 2000,
                 "collapsible_edge_cap": 14, "search_budget": 2_000_000}


def test_caps_must_be_positive():
    with pytest.raises(ValueError):
        Caps(max_depth=0)


def test_env_overrides():
    caps = Caps().with_env({"ITERLINE_MAX_DEPTH": "5", "OTHER": "1"})
    assert caps.max_depth == 5 and caps.max_vertices == 200_000
    with pytest.raises(ValueError, match="integer"):
        Caps().with_env({"ITERLINE_MAX_DEPTH": "five"})
