"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every comparison is exact integer or rational arithmetic (tolerance 0).
Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

from arrangia import verify


def _run(criterion: str, check_id: str, **params) -> None:
    result = verify.run_check(check_id, **params)
    marker = "PASS" if result.passed else "FAIL"
    print(f"ACCEPTANCE {criterion} [{check_id}] {marker} ({result.seconds:.1f}s)")
    assert result.passed, f"{criterion}: {result.witness}"


def test_criterion_01_table_rows():
    # all six pattern rows, lengths 1..10, exact
    _run("C01-table-rows", "TAB-1", n_max=10)


def test_criterion_02_algebraic_gf_for_321():
    # closed form matches the counts coefficientwise to x^10
    _run("C02-321-series", "THM-1.3", n_max=10)


def test_criterion_03_three_color_closed_form():
    # C(n+2) - 2^n for all six patterns, n <= 7
    _run("C03-three-color", "THM-5.1", n_max=7)


def test_criterion_04_corner_triangle():
    # 2/(n+1) C(n+1, k+2) C(n-2, k) for four patterns, n <= 9
    _run("C04-corner-triangle", "THM-5.2", n_max=9)


def test_criterion_05_peaks_equidistribution():
    # des over two-color 321-avoiders vs interior peaks, n <= 9
    _run("C05-peaks", "THM-5.4", n_max=9)


def test_criterion_06_123_descent_polynomials():
    # six printed polynomials plus series match to x^8
    _run("C06-123-descents", "EQ-123-2DES", series_order=8)


def test_criterion_07_series_initial_values():
    _run("C07-initial-values", "GF-INIT")


def test_criterion_08_composition_identity():
    # composed derangement series reproduces the permutation series to u^8
    _run("C08-composition", "THM-4.2", u_order=8)


def test_criterion_09_slot_series_identity():
    # (1-t) sum of t^m rho(S_m((1-t)u)) vs brute force, u^7, m <= 6
    _run("C09-slot-series", "THM-4.4", u_order=7, m_max=6)


def test_criterion_10_descent_block_closed_forms():
    # five closed forms vs (xdes, fix) enumeration, n <= 9
    _run("C10-descent-blocks", "P-FORMS", n_max=9)


def test_criterion_11_decrease_value_identity():
    # symbolic equality, alphabets 0..2, lengths <= 6
    _run("C11-decrease-value", "THM-4.10", m_max=2, n_max=6)


def test_criterion_12_genocchi_counts():
    # both kinds at m <= 4 (the full verify profile extends to m = 5)
    _run("C12-genocchi-first", "GEN-1", m_max=4)
    _run("C12-genocchi-second", "GEN-2", m_max=4)


def test_criterion_13_extensional_equidistributions():
    # descent-set and double-descent multiset identities, n <= 6, k <= 3
    _run("C13-descent-sets", "THM-1.1", n_max=6, k_max=3)
    _run("C13-descent-pairs", "THM-1.2", n_max=6, k_max=3)


def test_criterion_14_slot_swap_constructive():
    # involution + invariants over all arrangements, n <= 6, k <= 3
    _run("C14-slot-swap", "PSI-K", n_max=6, k_max=3)


def test_criterion_15_standardization_roundtrips():
    # word and pair roundtrips, fixture rows, position correspondences
    _run("C15-standardization", "GR-ROUNDTRIP", n_max=6, m_max=3)


def test_criterion_16_dyck_layer():
    # path bijection, statistic transport (n <= 8), hill-free series to x^9
    _run("C16-dyck-layer", "DYCK-LAYER", n_max=8, hill_order=9)


def test_criterion_17_quadratic_equation_layer():
    # narayana series n <= 8; two-color quadratic n <= 7
    _run("C17-quadratics", "NARAYANA", nara_n=8, eq312_n=7)
