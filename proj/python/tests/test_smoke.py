import pytest

import chromalg


def test_schema_constant():
    assert chromalg.REPORT_SCHEMA == "chromalg.report/1"


def test_fgl_suite_passes():
    r = chromalg.run("fgl")
    assert r["schema"] == chromalg.REPORT_SCHEMA
    assert r["ok"]
    assert all(c["status"] == "pass" for c in r["checks"])


def test_honda_p_series_is_monomial():
    ps = chromalg.p_series("honda", p=3, n=2, N=20)
    assert ps["series"]["terms"] == [{"exp": [9], "coeff": "1"}]


def test_honda_law_starts_with_x_plus_y():
    F = chromalg.law("honda", p=3, n=1, N=6)
    linear = [t for t in F["series"]["terms"] if sum(t["exp"]) == 1]
    assert sorted(t["exp"] for t in linear) == [[0, 1], [1, 0]]


def test_solver_verifies():
    iso = chromalg.solve(p=3, n=1, xdeg=10, uprec=6)
    assert iso["verified"]
    assert iso["N"] == 11
    assert iso["tower"].startswith(iso["base"].split("[")[0])


def test_spaces_report_is_deterministic():
    a = chromalg.run("spaces", seed=5)
    b = chromalg.run("spaces", seed=5)
    assert a == b and a["ok"]


def test_bad_prime_raises():
    with pytest.raises(chromalg.ChromalgError, match="ConfigError"):
        chromalg.run("fgl", p=4)
    with pytest.raises(ValueError):
        chromalg.law("nonsense")


def test_coaction_tables_mention_lens_model():
    assert "rho(y)" in chromalg.coaction_tables(3, 1)
