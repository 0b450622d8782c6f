import pytest

from ordercone.campaign import CLAIMS, parse_dims, plan_trials, run_campaign


def test_parse_dims():
    assert parse_dims("2..4") == [2, 3, 4]
    assert parse_dims("2,5") == [2, 5]
    assert parse_dims("3") == [3]
    with pytest.raises(ValueError):
        parse_dims("0..2")


def test_plan_covers_all_kinds_and_dims():
    plan = plan_trials(list(range(2, 7)), 40, seed=1)
    assert {k for _, k, _, _ in plan} == {"simplicial", "direct-sum", "l1", "random"}
    assert {d for _, _, d, _ in plan} == {2, 3, 4, 5, 6}
    assert all(d >= 3 for _, k, d, _ in plan if k == "l1")


def test_small_campaign_is_clean_and_deterministic():
    a = run_campaign(dims=[2, 3], trials=8, seed=3, probes=8, threads=1)
    assert a.exit_code == 0 and a.fail_count == 0
    assert set(a.to_json()["claims"]) == set(CLAIMS)
    b = run_campaign(dims=[2, 3], trials=8, seed=3, probes=8, threads=2)
    strip = lambda r: {k: v for k, v in r.to_json().items() if k != "timings"}  # noqa: E731
    assert strip(a) == strip(b)


def test_single_orthant_trial_passes():
    r = run_campaign(dims=[2], trials=1, seed=1, kinds=("orthant",), threads=1)
    assert r.exit_code == 0
    assert r.counts["order_projection_is_band"]["pass"] == 1


def test_sabotage_produces_sorted_failures():
    r = run_campaign(dims=[2, 3], trials=4, seed=2, probes=4, sabotage="flip-disjoint", threads=1)
    assert r.exit_code == 1 and r.fail_count == len(r.failures) > 0
    hashes = [f["instance_hash"] for f in r.failures]
    assert hashes == sorted(hashes)


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_campaign(trials=0)
    with pytest.raises(ValueError):
        run_campaign(trials=1, sabotage="nope")
