import csv
import io
import json

import pytest

from mdsarray.code import build_code
from mdsarray.errors import TooLarge, UnsupportedRadius, WrongMatrixKind
from mdsarray.harness import (
    STAT_FIELDS,
    Path,
    TrialConfig,
    TrialStats,
    draw_errors,
    exhaustive_check,
    pattern_count,
    run_trials,
    stats_csv,
    stats_json,
    trial_rng,
)
from mdsarray.matrices import MatrixSpec
from mdsarray.presets import preset

EX32 = preset("ex32")


def test_zero_errors_always_succeed():
    s = run_trials(TrialConfig(preset("ex43"), 0, 50, seed=1))
    assert (s.successes, s.failures, s.miscorrections) == (50, 0, 0)
    assert s.outcomes == ()


def test_two_errors_on_vandermonde_code():
    s = run_trials(TrialConfig(EX32, 2, 1000, seed=77))
    assert s.successes == 1000 and s.miscorrections == 0
    assert s.trials == 1000


def test_reproducible_including_counters():
    cfg = TrialConfig(EX32, 2, 200, seed=5)
    assert run_trials(cfg) == run_trials(cfg)
    assert run_trials(cfg) != run_trials(TrialConfig(EX32, 2, 200, seed=6))


def test_independent_of_job_count():
    cfg = TrialConfig(EX32, 2, 120, seed=9)
    assert run_trials(cfg, jobs=3, keep_outcomes=True) == run_trials(cfg, keep_outcomes=True)


def test_trials_are_keyed_by_index():
    a = draw_errors(EX32, 2, trial_rng(3, 17))
    b = draw_errors(EX32, 2, trial_rng(3, 17))
    assert a == b
    assert len({p for p, _ in a}) == 2 and all(e for _, e in a)


def test_fast_path_saves_zech_evaluations():
    g = run_trials(TrialConfig(EX32, 2, 300, 4, Path.GENERIC, "info"), keep_outcomes=True)
    f = run_trials(TrialConfig(EX32, 2, 300, 4, Path.VANDERMONDE_FAST, "info"), keep_outcomes=True)
    assert g.outcomes == f.outcomes
    assert f.zech_evals < g.zech_evals
    assert f.successes == g.successes == 300


def test_hypothesis_path():
    s = run_trials(TrialConfig(preset("ex43"), 2, 100, 2, Path.HYPOTHESIS))
    assert s.successes == 100
    assert s.linear_solves > 0


def test_fast_path_rejects_cauchy():
    with pytest.raises(WrongMatrixKind):
        run_trials(TrialConfig(preset("ex43"), 2, 5, 1, Path.VANDERMONDE_FAST))


def test_config_validation():
    with pytest.raises(UnsupportedRadius):
        TrialConfig(EX32, 3, 10)
    with pytest.raises(ValueError):
        TrialConfig(EX32, 1, 0)
    with pytest.raises(ValueError):
        TrialConfig(EX32, 1, 10, region="parity")
    with pytest.raises(UnsupportedRadius):
        run_trials(TrialConfig(EX32, 2, 10, radius=1))


@pytest.mark.parametrize("name, t, count", [("ex42", 1, 28), ("c625", 2, 777), ("ex42", 0, 1)])
def test_exhaustive(name, t, count):
    p = preset(name)
    assert pattern_count(p, t) == count
    s = exhaustive_check(p, t)
    assert s.trials == count and s.successes == count


def test_exhaustive_oracle_path():
    s = exhaustive_check(preset("c625"), 2, path=Path.HYPOTHESIS)
    assert s.successes == 777


def test_exhaustive_limit():
    big = build_code(8, 6, 6, 0b100011101, MatrixSpec.vandermonde(range(1, 7)), trusted=True)
    assert pattern_count(big, 3) > 10**7
    with pytest.raises(TooLarge):
        exhaustive_check(big, 3)


def test_output_formats():
    s = TrialStats(3, 1, 0, 10, 20, 2, 0.5)
    rows = [("ex32", Path.GENERIC, s), ("ex32", Path.VANDERMONDE_FAST, s)]
    parsed = list(csv.DictReader(io.StringIO(stats_csv(rows))))
    assert list(parsed[0]) == ["config", "path", *STAT_FIELDS]
    assert parsed[1]["path"] == "fast" and parsed[0]["successes"] == "3"
    doc = json.loads(stats_json(rows))
    assert set(doc[0]) == set(parsed[0])
    assert doc[0]["wall_time"] == 0.5


def test_path_parse():
    assert Path.parse("fast") is Path.VANDERMONDE_FAST
    assert Path.parse("GENERIC") is Path.GENERIC
    with pytest.raises(ValueError):
        Path.parse("quick")
