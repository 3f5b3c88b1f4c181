from __future__ import annotations

import pytest

from anticopypaster.errors import (
    ConfigSyntax,
    InvalidSensitivity,
    InvalidSetting,
    UnknownKeyword,
    UnknownSubmetric,
)
from anticopypaster.metrics import KEYWORD_CATALOGUE, Submetric
from anticopypaster.settings import default_settings, load_settings


def test_empty_object_yields_all_defaults():
    settings = load_settings("{}")
    assert settings.min_duplicate_methods == 2
    assert settings.delay_seconds == 10
    assert settings.sensitivity == {
        "keyword": 50, "coupling": 50, "complexity": 50, "size": 50,
    }
    assert settings.near_match_threshold == 0.8
    assert settings.search_scope == "project"
    assert settings.keywords == KEYWORD_CATALOGUE
    assert all(f.enabled and not f.required for f in settings.flags.values())
    assert settings == default_settings()


def test_partial_override_keeps_other_defaults():
    settings = load_settings('{"nearMatchThreshold": 0.9}')
    assert settings.near_match_threshold == 0.9
    assert settings.delay_seconds == 10
    assert settings.min_duplicate_methods == 2


def test_sensitivity_out_of_range_is_rejected():
    with pytest.raises(InvalidSensitivity):
        load_settings('{"sensitivity": {"size": 150}}')
    with pytest.raises(InvalidSensitivity):
        load_settings('{"sensitivity": {"size": 0}}')


def test_unknown_category_is_rejected():
    with pytest.raises(InvalidSetting):
        load_settings('{"sensitivity": {"sizes": 50}}')


def test_unknown_submetric_name_is_rejected():
    with pytest.raises(UnknownSubmetric):
        load_settings('{"submetrics": {"size.loc": {"enabled": true}}}')


def test_unknown_keyword_is_rejected():
    with pytest.raises(UnknownKeyword):
        load_settings('{"keywords": ["if", "public"]}')


def test_malformed_json_is_a_config_syntax_error():
    with pytest.raises(ConfigSyntax):
        load_settings("{not json")


def test_required_forces_enabled():
    settings = load_settings(
        '{"submetrics": {"keyword.total": {"enabled": false, "required": true}}}'
    )
    flags = settings.flags[Submetric.KEYWORD_TOTAL]
    assert flags.required and flags.enabled


def test_keyword_subset_is_honored():
    settings = load_settings('{"keywords": ["if", "while"]}')
    assert settings.keywords == frozenset({"if", "while"})


def test_domain_checks_on_scalar_settings():
    with pytest.raises(InvalidSetting):
        load_settings('{"minDuplicateMethods": 0}')
    with pytest.raises(InvalidSetting):
        load_settings('{"delaySeconds": -1}')
    with pytest.raises(InvalidSetting):
        load_settings('{"nearMatchThreshold": 0}')
    with pytest.raises(InvalidSetting):
        load_settings('{"searchScope": "workspace"}')
    with pytest.raises(InvalidSetting):
        load_settings('{"unknownKey": 1}')
