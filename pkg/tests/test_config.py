import pytest

from cellstrat.config import Caps, caps_from_env, check_cap, parse_caps
from cellstrat.errors import SizeLimitError


def test_parse_caps():
    caps = parse_caps("coset=5, oracle_columns=7")
    assert caps.coset == 5 and caps.oracle_columns == 7 and caps.basis == Caps().basis
    assert parse_caps("") == Caps()
    with pytest.raises(ValueError):
        parse_caps("nonsense=3")
    with pytest.raises(ValueError):
        parse_caps("coset")


def test_env():
    assert caps_from_env({}) == Caps()
    assert caps_from_env({"CELLSTRAT_CAPS": "group=11"}).group == 11


def test_replace_ignores_none():
    assert Caps().replace(basis=None, coset=3) == Caps(coset=3)


def test_check_cap():
    check_cap("x", 3, 3)
    with pytest.raises(SizeLimitError):
        check_cap("x", 4, 3)
