import json

import pytest

from arrangia import verify
from arrangia.patterns import der1_pattern_counts


class TestRunCheck:
    def test_table_row_312(self):
        assert der1_pattern_counts((3, 1, 2), 10) == list(verify.TABLE1[(3, 1, 2)])
        result = verify.run_check("TAB-1", n_max=6)
        assert result.passed and result.witness is None

    def test_extensional_swap_small(self):
        result = verify.run_check("THM-1.2", n_max=5, k_max=2)
        assert result.passed

    def test_slot_series_trivial_order(self):
        result = verify.run_check("THM-4.4", u_order=0)
        assert result.passed

    def test_unknown_id(self):
        with pytest.raises(ValueError):
            verify.run_check("THM-9.9")

    def test_result_shape(self):
        result = verify.run_check("GF-INIT")
        payload = json.loads(result.to_json())
        assert payload["check"] == "GF-INIT"
        assert payload["status"] == "pass"
        assert payload["witness"] is None
        assert payload["seconds"] >= 0


class TestRunAll:
    def test_quick_profile(self):
        results = verify.run_all("quick")
        assert len(results) >= 15
        assert [r.check_id for r in results] == sorted(verify.CHECKS)
        failures = [r for r in results if not r.passed]
        assert not failures, [f"{r.check_id}: {r.witness}" for r in failures]

    def test_unknown_profile(self):
        with pytest.raises(ValueError):
            verify.run_all("")

    def test_profiles_cover_all_checks(self):
        assert set(verify.QUICK_PARAMS) == set(verify.CHECKS)
        assert set(verify.FULL_PARAMS) == set(verify.CHECKS)


class TestBruteTables:
    def test_derangement_counts(self):
        # fix = 0 block sizes against the subfactorial recurrence
        sub = [1, 0]
        for n in range(2, 8):
            sub.append((n - 1) * (sub[-1] + sub[-2]))
        for n in range(0, 8):
            total = sum(
                count
                for (des, xdes, fx), count in verify.perm_stats_table(n).items()
                if fx == 0
            )
            assert total == sub[n]

    def test_des_dez_table_total(self):
        from math import factorial

        for n in range(0, 7):
            assert sum(verify.des_dez_table(n).values()) == factorial(n)


class TestReproducibility:
    def test_same_params_same_result(self):
        first = verify.run_check("GR-ROUNDTRIP", n_max=4, m_max=2)
        second = verify.run_check("GR-ROUNDTRIP", n_max=4, m_max=2)
        assert (first.check_id, first.status, first.params, first.witness) == (
            second.check_id,
            second.status,
            second.params,
            second.witness,
        )
