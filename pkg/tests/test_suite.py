import json

from gl3trace import suite


def test_forced_tolerance_fails_gracefully():
    r = suite.criterion_9(suite.SuiteConfig(quad_tol=1e-30))
    assert not r.passed
    for name in ("jm0", "jm21", "jm0T", "jm21T"):
        entry = r.measured[name]
        assert "tolerance not met" in entry["error"]
        assert entry["refinement_change"] >= 0 and entry["value"] == entry["value"]


def test_seed_changes_samples_not_verdicts():
    a = suite.SuiteConfig(seed=0, samples=800, hull_specs=40, orbit_pairs=40)
    b = suite.SuiteConfig(seed=17, samples=800, hull_specs=40, orbit_pairs=40)
    only = {1, 2, 3, 4, 5, 6, 7, 8}
    ra, rb = suite.run_suite(a, only), suite.run_suite(b, only)
    assert [r.passed for r in ra] == [r.passed for r in rb] == [True] * 8


def test_report_is_reproducible_without_timing():
    cfg = suite.SuiteConfig(samples=300, hull_specs=10, orbit_pairs=10)
    one = json.dumps(suite.suite_report(suite.run_suite(cfg, {1, 4, 5}), cfg), sort_keys=True)
    two = json.dumps(suite.suite_report(suite.run_suite(cfg, {1, 4, 5}), cfg), sort_keys=True)
    assert one == two and "seconds" not in one
    timed = suite.suite_report(suite.run_suite(cfg, {3}), cfg, timing=True)
    assert "seconds" in timed["criteria"][0]


def test_corpus_has_fifty_labelled_matrices():
    corpus = suite.orbit_corpus(0)
    assert len(corpus) == 50
    assert {k.value for _, k, _, _ in corpus} == {"EllipticG", "Elliptic21", "SplitRegular", "TwoEqual", "Central"}
