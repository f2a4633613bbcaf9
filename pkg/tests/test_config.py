"""Tests for the flat key=value config format and its validation."""

import pytest

from norm_dynamics.config import (
    DEFAULT_A_VALUES,
    KNOWN_KEYS,
    MODELS,
    RunConfig,
    load_config,
    parse_config_text,
    validate_config,
)
from norm_dynamics.errors import ConfigParseError, ConfigValidationError


def build(text):
    return validate_config(parse_config_text(text))


# ---------------------------------------------------------------------------
# raw parsing


class TestParsing:
    def test_equals_and_colon_separators(self):
        raw = parse_config_text("model = phase\nalpha: 3.5\n")
        assert raw == {"model": "phase", "alpha": "3.5"}

    def test_comments_and_blank_lines_skipped(self):
        text = "# leading comment\n\nmodel = basin\n; other comment style\n  \nseed = 4\n"
        raw = parse_config_text(text)
        assert raw == {"model": "basin", "seed": "4"}

    def test_missing_separator_reports_line_number(self):
        with pytest.raises(ConfigParseError, match="line 2"):
            parse_config_text("model = phase\njust some words\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigParseError, match="duplicate"):
            parse_config_text("model = phase\nmodel = basin\n")

    def test_bad_key_characters_rejected(self):
        with pytest.raises(ConfigParseError, match="bad key"):
            parse_config_text("mo del = phase\n")

    def test_empty_value_rejected(self):
        with pytest.raises(ConfigParseError, match="no value"):
            parse_config_text("model =\n")

    def test_first_separator_wins(self):
        # a colon before an equals sign splits at the colon
        raw = parse_config_text("norm: I-norm\n")
        assert raw["norm"] == "I-norm"


# ---------------------------------------------------------------------------
# validation and defaults


class TestValidation:
    def test_minimal_config_gets_defaults(self):
        config = build("model = phase\n")
        assert config.model == "phase"
        assert config.alpha == 2.0 and config.beta == 2.0
        assert config.epsilon == 0.1 and config.chi == 0.05
        assert config.c_hat == 1.0
        assert config.wj_mode == "exact"
        assert config.payoff_mode == "substitution"
        assert config.resolution == 21
        assert config.a_values == DEFAULT_A_VALUES
        assert config.seed == 0
        assert config.output is None and config.output_base == "phase"
        assert not config.uses_explicit_stats

    def test_model_required(self):
        with pytest.raises(ConfigValidationError, match="model"):
            build("alpha = 2\n")

    def test_unknown_model_rejected(self):
        with pytest.raises(ConfigValidationError, match="model"):
            build("model = frobnicate\n")

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigValidationError, match="alpa"):
            build("model = phase\nalpa = 2\n")

    def test_every_model_name_is_known(self):
        for model in MODELS:
            config = build(f"model = {model}\n")
            assert config.model == model

    def test_bias_sum_constraint_enforced(self):
        with pytest.raises(ConfigValidationError, match="epsilon/chi"):
            build("model = phase\nepsilon = 0.6\nchi = 0.5\n")

    def test_alpha_zero_rejected(self):
        with pytest.raises(ConfigValidationError, match="alpha"):
            build("model = phase\nalpha = 0\n")

    def test_non_numeric_value_rejected(self):
        with pytest.raises(ConfigValidationError, match="c_hat"):
            build("model = phase\nc_hat = lots\n")

    def test_non_integer_resolution_rejected(self):
        with pytest.raises(ConfigValidationError, match="resolution"):
            build("model = basin\nresolution = 7.5\n")

    def test_wj_mode_alias_normalized(self):
        config = build("model = phase\nwj_mode = paper-mean\n")
        assert config.wj_mode == "mean"

    def test_wj_mode_unknown_rejected(self):
        with pytest.raises(ConfigValidationError, match="wj_mode"):
            build("model = phase\nwj_mode = approximate\n")

    def test_payoff_mode_checked(self):
        config = build("model = phase\npayoff_mode = fixed-belief\n")
        assert config.payoff_mode == "fixed-belief"
        with pytest.raises(ConfigValidationError, match="payoff_mode"):
            build("model = phase\npayoff_mode = blended\n")

    def test_norm_checked(self):
        config = build("model = m2-failure\nnorm = C-norm\n")
        assert config.norm == "C-norm"
        with pytest.raises(ConfigValidationError, match="norm"):
            build("model = m2-failure\nnorm = alphabetical\n")


class TestExplicitStats:
    def test_full_triple_accepted(self):
        config = build("model = phase\nw_j = 0.5\nb_j = 0.6875\nb_s = 0.6875\n")
        assert config.uses_explicit_stats
        resolved = config.resolved()
        assert resolved["w_j"] == 0.5
        assert "alpha" not in resolved

    def test_partial_triple_rejected(self):
        with pytest.raises(ConfigValidationError, match="all three"):
            build("model = phase\nw_j = 0.5\n")

    def test_mixing_with_prior_rejected(self):
        text = "model = phase\nalpha = 2\nw_j = 0.5\nb_j = 0.6875\nb_s = 0.6875\n"
        with pytest.raises(ConfigValidationError, match="mutually exclusive"):
            build(text)

    def test_density_models_refuse_explicit_stats(self):
        for model in ("m2-failure", "derive-prior"):
            text = f"model = {model}\nw_j = 0.5\nb_j = 0.6875\nb_s = 0.6875\n"
            with pytest.raises(ConfigValidationError, match="density"):
                build(text)

    def test_out_of_range_stats_rejected(self):
        with pytest.raises(ConfigValidationError, match="w_j/b_j/b_s"):
            build("model = phase\nw_j = 0.5\nb_j = 0.4\nb_s = 0.6875\n")


class TestRangeChecks:
    @pytest.mark.parametrize(
        "line,field",
        [
            ("c_hat = -0.5", "c_hat"),
            ("resolution = 1", "resolution"),
            ("mu_min = 0.9\nmu_max = 0.2", "mu_min/mu_max"),
            ("mu_min = 0", "mu_min/mu_max"),
            ("mu_steps = 0", "mu_steps"),
            ("c_hat_min = -0.1", "c_hat_min/c_hat_max"),
            ("c_hat_steps = 0", "c_hat_steps"),
            ("family_sum = 0", "family_sum"),
            ("mc_samples = -5", "mc_samples"),
            ("seed = -1", "seed"),
            ("step = 0", "integrator"),
            ("max_time = -2", "integrator"),
            ("corner_tol = 0.7", "integrator"),
        ],
    )
    def test_out_of_range_rejected(self, line, field):
        with pytest.raises(ConfigValidationError, match=field.split("/")[0]):
            build(f"model = basin\n{line}\n")

    def test_a_values_parsed_with_commas_or_spaces(self):
        config = build("model = basin-sweep\na_values = 30, 50 70\n")
        assert config.a_values == (30.0, 50.0, 70.0)

    def test_output_must_be_bare_stem(self):
        config = build("model = phase\noutput = run1\n")
        assert config.output_base == "run1"
        with pytest.raises(ConfigValidationError, match="output"):
            build("model = phase\noutput = sub/run1\n")


class TestResolvedAndLoad:
    def test_resolved_covers_known_numeric_keys(self):
        config = build("model = basin\nseed = 9\n")
        resolved = config.resolved()
        assert resolved["seed"] == 9
        assert resolved["alpha"] == 2.0 and resolved["beta"] == 2.0
        # every key in the mapping is a real config key or the output stem
        assert set(resolved) <= (KNOWN_KEYS | {"output"})

    def test_integrator_mirrors_scalar_settings(self):
        config = build("model = basin\nstep = 0.02\nmax_time = 50\n")
        integ = config.integrator()
        assert integ.step == 0.02 and integ.max_time == 50.0

    def test_load_config_round_trip(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("model = derive-prior\nalpha = 8\nbeta = 2\n")
        config = load_config(path)
        assert isinstance(config, RunConfig)
        assert config.model == "derive-prior"
        assert config.alpha == 8.0 and config.beta == 2.0
