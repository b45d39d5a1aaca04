from weylkit.checks import (
    SUITES,
    check_demazure_modules,
    check_endomorphisms,
    check_root_data,
    check_twisted_leibniz,
    run_suite,
)


def test_root_data_suite():
    r = check_root_data()
    assert r.ok, r.witness
    assert r.summary["G2"]["order"] == 12 and r.summary["B3"]["positive_roots"] == 9


def test_property_checks():
    for fn in (check_twisted_leibniz, check_endomorphisms, check_demazure_modules):
        r = fn()
        assert r.ok, (r.name, r.witness)


def test_endomorphisms_widen_the_slice_for_b2():
    r = check_endomorphisms(types=(("B", 2),), degree=2)
    assert r.ok and r.summary["B2"]["slice_degree"] == 4


def test_suite_names():
    assert set(SUITES) == {"rootsys", "nilhecke", "envelope", "ideals", "centralizer"}
    assert all(r.ok for r in run_suite("ideals", [("A", 1)]))


def test_results_serialize_without_timings():
    data = check_root_data(types=(("A", 1),)).to_json()
    assert set(data) == {"name", "ok", "summary", "witness"}
