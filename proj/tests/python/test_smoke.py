import pytest

import artifact


def test_homology_dims():
    j = artifact.homology(p=5, L=2, M=1, r=2, window=4)
    deg = j["relative_derham"][0]["degrees"]
    assert [deg[k]["dims_mod_p"] for k in ("-1", "0", "1")] == [5, 9, 4]
    assert j["schema_version"] == 1


def test_hc0_is_z25_per_monomial():
    j = artifact.homology(p=5, L=3, M=1, n=0, window=4)
    assert j["bold"]["0"]["HC_bold"]["torsion"] == ["25"] * 5
    assert j["pass"]


def test_verify_psi_and_hkr():
    assert artifact.verify_psi(p=7, n_max=3, window=4)["pass"]
    assert artifact.verify_hkr(n_max=2)["pass"]


def test_mult_table():
    t = artifact.mult_table(r_max=2)
    assert t["table"]["passed"]
    assert {e["op"] for e in t["table"]["entries"]} == {"dlog", "bott"}


def test_suite_subset():
    r = artifact.suite(["dennis", "5"])
    assert r["pass"]
    assert [c["id"] for c in r["criteria"]] == [5, 6]
    assert "psi" in artifact.suite_keys()


def test_usage_errors():
    with pytest.raises(artifact.UsageError):
        artifact.homology(M=0)
    code, out, err = artifact.run_cli(["homology", "--M", "0"])
    assert code == 2 and "--M" in err
