import random

import pytest

import rsrepair


def test_toy_schemes_validate_and_repair():
    schemes = rsrepair.toy(101)
    assert len(schemes) == 4
    rng = random.Random(5)
    for s in schemes:
        assert s.t == 2 and s.s == 51
        assert rsrepair.validate(s)["valid"]
        for _ in range(20):
            word = rsrepair.encode(s, [rng.randrange(101), rng.randrange(101)])
            cells = rsrepair.messages(s, [word[h] for h in s.helpers])
            assert rsrepair.repair(s, cells) == word[s.failed]


def test_invalid_scheme_has_counterexample():
    s = rsrepair.toy(101)[0].with_t(40)
    v = rsrepair.validate(s)
    assert not v["valid"]
    assert len(v["counterexample"]) <= 2


def test_budget_error():
    with pytest.raises(rsrepair.BudgetExceeded):
        rsrepair.validate(rsrepair.toy(10007)[0], budget=10)


def test_calibrated_halved_scheme():
    s = rsrepair.halved(8, 2, 3, 10007, failed=0, helpers=[4, 5, 6])
    assert s.t >= 2
    assert s.per_helper_bits < 14
    assert rsrepair.validate(s)["valid"]
    cal = rsrepair.calibrate(s)
    assert cal["t"] == s.t and cal["valid"]


def test_bounds_and_search():
    b = rsrepair.bounds(1009, 4, 2, 3, 20)
    assert b["total_bits"] == 18
    assert rsrepair.improved_bound_consistency(501, 10007, 2, 3)
    a = rsrepair.search(4, 3, 1009, 6, trials=20, seed=3)
    assert a == rsrepair.search(4, 3, 1009, 6, trials=20, seed=3, workers=3)


def test_run_matches_cli_document():
    code, doc = rsrepair.run("verify-toy", p=101)
    assert code == 0
    assert list(doc) == ["config", "schemes", "bounds", "summary", "timing"]
    assert all(s["valid"] for s in doc["schemes"])
    code, _ = rsrepair.run("verify-toy", p=100)
    assert code == 1
