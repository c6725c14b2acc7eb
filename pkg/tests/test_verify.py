from egl.verify import claims, run_suite


def test_claim_ids_unique_and_suites():
    cs = claims()
    ids = [c.id for c in cs]
    assert len(ids) == len(set(ids))
    assert {c.suite for c in cs} == {"core", "extended"}
    assert {c.id for c in cs if c.suite == "extended"} == {"faudree3.e_group", "threegen.order_3_9.e_status"}


def test_small_budget_is_inconclusive():
    (res,) = run_suite("extended", budget=1000, only=["faudree3.e_group"])
    assert res.verdict == "inconclusive"
    assert "budget" in res.detail


def test_core_subset_passes():
    seen = []
    results = run_suite("core", only=["q8", "d8", "faudree2", "oracle"], progress=seen.append)
    assert [r.id for r in results] == [r.id for r in seen]
    assert all(r.verdict == "pass" for r in results), [(r.id, r.detail) for r in results]
    d = results[0].as_dict()
    assert "seconds" not in d and d["verdict"] == "pass"
