import pandas as pd

from mf_reduction.statistics import (COLUMNS, depth_statistics, get_depth_metrics, inverse_depth_ok, log_wandb,
                                     product_depth_ok, sample_signed_words)


class RecordingRun:
    def __init__(self):
        self.logged = []

    def log(self, metrics):
        self.logged.append(metrics)


def test_sampling_is_seeded(braid3):
    first = sample_signed_words(braid3.presentation, 30, 8, seed=7)
    assert first == sample_signed_words(braid3.presentation, 30, 8, seed=7)
    assert len(first) == 30
    assert all(len(w) <= 8 for w in first)
    assert all(0 <= letter.atom < 2 for w in first for letter in w)


def test_depth_bounds():
    assert inverse_depth_ok(0, 0)
    assert inverse_depth_ok(1, 2) and not inverse_depth_ok(1, 0)
    assert inverse_depth_ok(2, 1) and not inverse_depth_ok(2, 3)
    assert product_depth_ok(0, 3, 3) and not product_depth_ok(0, 3, 2)
    assert product_depth_ok(1, 1, 1) and not product_depth_ok(1, 1, 2)
    assert product_depth_ok(2, 2, 4)
    assert not product_depth_ok(4, 1, 1)


def test_depth_statistics(braid3):
    words = sample_signed_words(braid3.presentation, 15, 6, seed=1)
    df = depth_statistics(braid3, words)
    assert list(df.columns) == COLUMNS
    assert len(df) == 15
    assert (df["depth"] <= 2).all()
    metrics = get_depth_metrics(df)
    assert metrics["samples"] == 15
    assert metrics["max_depth"] <= 2
    assert metrics["inverse_depth_ok"] and metrics["product_depth_ok"]
    assert sum(int(pair.split(":")[1]) for pair in metrics["depth_histogram"].split(",")) == 15


def test_empty_and_logged_metrics():
    assert get_depth_metrics(pd.DataFrame(columns=COLUMNS)) == {"samples": 0}
    run = RecordingRun()
    log_wandb(run, {"samples": 3})
    assert run.logged == [{"samples": 3}]
