import statistics

import pytest

from randgenus.anneal import AnnealConfig
from randgenus.experiments import (
    CSV_COLUMNS,
    ExperimentRecord,
    check_alpha_identity,
    read_records_csv,
    records_to_csv,
    run_sweep,
    summarize,
    summary_to_csv,
    summary_to_gnuplot,
)

QUICK = AnnealConfig(moves_per_edge=30, temperature_steps=20)


def test_alpha_identity_examples():
    triangle = ExperimentRecord(2, 3, 0, 0, "exact", 0, 0, F=2, E=3)
    assert check_alpha_identity(triangle)
    theta = ExperimentRecord(3, 2, 0, 0, "exact", 1, 1, F=1, E=3)
    assert theta.alpha == 0.5 and check_alpha_identity(theta)
    corrupted = ExperimentRecord(3, 2, 0, 0, "exact", 1, 1, F=3, E=3)
    assert not check_alpha_identity(corrupted)
    assert not check_alpha_identity(ExperimentRecord(3, 4, 0, 0, "bounds-only", 0, 1, E=6))


def test_two_regular_sweep_is_flat():
    records = run_sweep(2, [3, 5, 8], 5, seed=1)
    assert all(r.genus_upper == 0 and r.alpha == 0 and r.status == "ok" for r in records)


def test_sweep_records_are_consistent():
    records = run_sweep(3, [6, 8], 6, seed=4)
    assert [(r.n, r.sample) for r in records] == [(n, s) for n in (6, 8) for s in range(6)]
    for r in records:
        assert r.E == 3 * r.n // 2
        assert r.f_over_e == r.F / r.E and r.alpha == r.genus_upper / r.n
        assert r.mode == "exact" and r.genus_lower == r.genus_upper
        assert 0 <= r.alpha <= ((r.E - r.n + 1) // 2) / r.n
        assert check_alpha_identity(r)


def test_sweep_is_deterministic():
    a = records_to_csv(run_sweep(3, [6, 8], 4, seed=9), timing=False)
    b = records_to_csv(run_sweep(3, [6, 8], 4, seed=9, workers=2), timing=False)
    assert a == b
    assert a.splitlines()[0] == ",".join(CSV_COLUMNS)


def test_anneal_beyond_exact_max():
    records = run_sweep(3, [8, 18], 2, seed=3, exact_max=10, anneal=QUICK)
    modes = {r.n: r.mode for r in records}
    assert modes == {8: "exact", 18: "heuristic"}
    assert all(check_alpha_identity(r) for r in records)


def test_budget_overrun_recorded_not_dropped():
    records = run_sweep(3, [16], 3, seed=5, budget=10, anneal=QUICK)
    assert len(records) == 3
    assert all(r.status == "budget_exceeded" and r.mode == "heuristic" for r in records)
    assert all(check_alpha_identity(r) for r in records)


def test_sampler_failure_recorded(monkeypatch):
    from randgenus import experiments
    from randgenus.random_graph import SamplingError

    def refuse(cfg):
        raise SamplingError("too rare")

    monkeypatch.setattr(experiments, "sample_regular", refuse)
    (rec,) = run_sweep(3, [8], 1, seed=0)
    assert rec.mode == "bounds-only" and rec.status == "error: too rare"
    assert rec.F is None and not rec.witness_backed
    row = dict(zip(CSV_COLUMNS, rec.row(timing=False)))
    assert row["genus_upper"] == "" and row["f_over_e"] == ""


def test_search_failure_keeps_bounds(monkeypatch):
    from randgenus import experiments

    def broken(*args, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setattr(experiments, "exact_genus", broken)
    (rec,) = run_sweep(3, [8], 1, seed=0)
    assert rec.mode == "bounds-only" and rec.status == "error: boom"
    assert rec.genus_lower == 0 and rec.genus_upper == 2


def test_bad_sweep_arguments():
    with pytest.raises(ValueError):
        run_sweep(3, [8, 6], 1, 0)
    with pytest.raises(ValueError):
        run_sweep(3, [5], 1, 0)
    with pytest.raises(ValueError):
        run_sweep(3, [6], 1, 0, mode="magic")


def test_csv_round_trip():
    records = run_sweep(3, [6], 3, seed=2)
    text = records_to_csv(records)
    back = read_records_csv(text)
    assert [(r.n, r.sample, r.seed, r.F, r.genus_upper) for r in back] == \
           [(r.n, r.sample, r.seed, r.F, r.genus_upper) for r in records]
    assert records_to_csv(back, timing=False) == records_to_csv(records, timing=False)


def test_summarize_single_record():
    rec = ExperimentRecord(3, 6, 0, 0, "exact", 1, 1, F=3, E=9)
    (row,) = summarize([rec])
    assert row.alpha_mean == rec.alpha and row.alpha_std == 0
    assert row.alpha_asymptote == 0.25


def test_summarize_groups_and_exports():
    records = run_sweep(3, [6, 8, 10], 5, seed=7)
    rows = summarize(records)
    assert [r.n for r in rows] == [6, 8, 10]
    assert all(r.alpha_asymptote == 0.25 and r.records == 5 for r in rows)
    for r in rows:
        alphas = [x.alpha for x in records if x.n == r.n]
        assert r.alpha_mean == pytest.approx(statistics.fmean(alphas))
    assert summary_to_csv(rows).count("\n") == 4
    plot = summary_to_gnuplot(rows).splitlines()
    assert plot[0].startswith("#") and len(plot) == 4
    with pytest.raises(ValueError):
        summarize([])


def test_f_over_e_decreases_with_n():
    # exact at n=6 against annealing at n=30, over several base seeds
    wins = 0
    for seed in range(5):
        records = run_sweep(3, [6, 30], 6, seed=seed, exact_max=6, anneal=QUICK)
        small, large = summarize(records)
        wins += large.f_over_e_mean < small.f_over_e_mean
    assert wins >= 4


def test_cycle_census_stable_in_n():
    def mean_cycles(n):
        records = run_sweep(3, [n], 100, seed=11, mode="anneal",
                            anneal=AnnealConfig(moves_per_edge=1, temperature_steps=1))
        return statistics.fmean(r.cycles_le_m for r in records)
    small, large = mean_cycles(10), mean_cycles(14)
    assert abs(small - large) <= 0.3 * large
