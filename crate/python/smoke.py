"""Smoke test for the Python bindings.

Build and install first:
    pip install --no-build-isolation -e crates/relkit-py
then run `python3 python/smoke.py`. Exits non-zero on the first failure.
"""

import json

import relkit


def main():
    ws = relkit.Workspace.corpus()
    assert len(ws) >= 30, len(ws)
    assert ws.validate() == [], ws.validate()

    tmax = ws.monad("TMAX")
    assert tmax.obj_map == [2, 2] and tmax.root == "J01"
    assert tmax.validate() == []

    kl = tmax.kleisli()
    assert kl.homs == [[1, 1], [1, 1]], kl.homs
    em, carriers = ws.monad("TCL").eilenberg_moore()
    assert carriers == [1, 2], carriers
    assert em.validate() == []

    for name in ("TMAX", "TCL", "triv(J01)", "INC1_E0_SWAP"):
        t = ws.monad(name)
        assert t.kleisli_resolution().induced_monad() == t, name
        assert t.em_resolution().induced_monad() == t, name

    holds, report = ws.monad("TCL").certify_em()
    assert holds and json.loads(report)["verdict"] == "CERTIFIED", report
    holds, _ = tmax.certify_kleisli()
    assert holds

    assert len(ws.enumerate_monads("INC1", max_t=2)) == 5
    assert ws.count_morphisms("triv(J01)", "TMAX") == 1

    interior = ws.comonad("INT")
    assert interior.validate() == []
    assert interior.dual().dual() == interior
    _, co_carriers = interior.co_eilenberg_moore()
    assert co_carriers == [0, 1], co_carriers
    assert tmax.dual().dual() == tmax

    adj = ws.adjunction("COREFL")
    for kind in ("hom_iso", "universal_arrow", "unit_counit", "couniversal"):
        bundle = json.loads(adj.to_json(kind))
        assert bundle["items"][-1]["data"]["presentation"] == kind

    code, out = relkit.run(["enumerate", "monads", "INC1", "--max-t", "2"])
    assert code == 0 and json.loads(out)["count"] == 5
    code, _ = relkit.run(["check", "dense", "J01"])
    assert code == 1

    try:
        ws.monad("NOPE")
    except relkit.RelkitError as e:
        assert "missing reference" in str(e), e
    else:
        raise AssertionError("lookup of a missing monad succeeded")
    try:
        ws.monad("TCL").eilenberg_moore(budget=1)
    except relkit.BudgetExceeded:
        pass
    else:
        raise AssertionError("budget of 1 was not exceeded")

    reloaded = relkit.Workspace.from_json(tmax.to_json())
    assert reloaded.monad("TMAX") == tmax

    print("python smoke: ok")


if __name__ == "__main__":
    main()
