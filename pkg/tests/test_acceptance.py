"""Acceptance criteria, one test per criterion.

Each test runs a registered verification suite, prints one PASS/FAIL line
and enforces the stated time limit (no limit given: None).
"""
import time

import pytest

from higherlim import corpus as cp

CRITERIA = [
    (1, "icM-acyclic", 60, 10),
    (2, "op-vanishing", 120, 10),
    (3, "reduction", 300, 5),
    (4, "sylow-order-p", 30, 1),
    (5, "cofinality", None, 1),
    (6, "fixed-point-acyclic", None, 5),
    (7, "centralizer-vanishing", None, 5),
    (8, "vanishing-bound", None, 1),
    (9, "towers", 300, 1),
    (10, "spectral", None, 6),
    (11, "wreath", 600, 1),
    (12, "category-laws", None, 1),
]

# instances a criterion names explicitly
REQUIRED = {
    2: ["C2/p=2/F2^1", "C3/p=3/F3^1", "S4/p=2/F2^1", "S3/p=3/F3^1"],
    3: ["S3/p=3/Q=C3", "S4/p=2/Q=V4"],
    6: ["S4/p=2/perm"],
}


@pytest.mark.parametrize("k, suite, limit, min_count", CRITERIA,
                         ids=[f"criterion{c[0]}-{c[1]}" for c in CRITERIA])
def test_criterion(k, suite, limit, min_count):
    t0 = time.perf_counter()
    rep = cp.run_suite(suite)
    dt = time.perf_counter() - t0
    ok = rep["pass"] and rep["count"] >= min_count and not rep["failures"]
    in_time = limit is None or dt < limit
    lim = "none" if limit is None else f"{limit} s"
    print(f"CRITERION {k} {suite}: {'PASS' if ok and in_time else 'FAIL'} "
          f"({rep['count']} instances, {dt:.1f} s, limit {lim})", flush=True)
    assert rep.get("error") is None, rep.get("error")
    assert rep["failures"] == []
    assert rep["pass"] is True
    assert rep["count"] >= min_count
    assert in_time, f"{suite} took {dt:.1f} s (limit {limit} s)"
    names = {r.get("instance") for r in rep["instances"]}
    assert set(REQUIRED.get(k, [])) <= names
    if k == 6:
        s4 = next(r for r in rep["instances"] if r["instance"] == "S4/p=2/perm")
        assert s4["got"][0] == 1
    if k == 4:
        inst = rep["instances"]
        assert len(inst) == 2 and all(r["got"] == [0, 2, 0, 0] for r in inst)
    if k == 10:
        grids = {r["instance"]: r for r in rep["instances"]}
        assert grids["LHS C4/C2 grid"]["got"] == [[1] * 4] * 4
        assert grids["LHS C4/C2 abutment"]["got"] == [1] * 4
