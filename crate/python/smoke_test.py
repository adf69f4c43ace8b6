"""Smoke test for the Python bindings.

Build and install first:

    maturin develop -m crates/py/Cargo.toml   # or: pip install ./crates/py
    python python/smoke_test.py
"""

import leafage

FANO = [
    ["x1", "x2", "x3"], ["x1", "x4", "x5"], ["x1", "x6", "x7"], ["x2", "x4", "x6"],
    ["x2", "x5", "x7"], ["x3", "x4", "x7"], ["x3", "x5", "x6"],
]


def main():
    g = leafage.Graph.example()
    assert len(g) == 11 and len(g.edges) == 15
    assert g.is_chordal()
    assert len(g.maximal_cliques()) == 9
    assert leafage.Graph.parse(g.to_edge_list()) == g

    c4 = leafage.Graph([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    report = leafage.check(c4)
    assert not report["chordal"] and report["cycle"] == ["a", "b", "c", "d"]

    run = leafage.leafage(g)
    assert run["leafage"] == 3
    assert all(it["leaves_before"] == it["leaves_after"] + 1 for it in run["iterations"])

    cert = leafage.vertex_leafage(g)
    assert cert["vertex_leafage"] == 2
    assert list(cert) == ["leafage", "vertex_leafage", "tree_edges", "per_vertex_leaves", "branch_edge_set"]
    assert leafage.vertex_leafage(g, budget_mode="paper") is None

    opt = leafage.simultaneous_optimum(g)
    assert (opt["leafage"], opt["vertex_leafage"]) == (3, 2)
    assert leafage.model_dot(g).startswith("graph model {")

    exact = leafage.oracle(g)
    assert (exact["leafage"], exact["vertex_leafage"], exact["tree_count"]) == (3, 2, 180)
    try:
        leafage.oracle(g, limit=10)
    except leafage.OracleLimitError:
        pass
    else:
        raise AssertionError("limit not enforced")

    k4 = leafage.Graph([("a", "b"), ("a", "c"), ("b", "c")])
    assert leafage.leafage(k4)["leafage"] == 0

    inst = leafage.NaeInstance(FANO)
    assert inst.solve() is None
    verdict = inst.verify()
    assert verdict["holds"] and verdict["vertex_leafage"] == 4
    gadget = leafage.NaeInstance.parse("a b c\na b d\na c d\nb c d\n").gadget()
    assert gadget.is_chordal() and len(gadget) == 4 + 4 + 2

    r = leafage.Graph.random_chordal(8, 0.5, 3)
    assert r == leafage.Graph.random_chordal(8, 0.5, 3) and r.is_chordal()
    assert leafage.leafage(r)["leafage"] == leafage.oracle(r)["leafage"]

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
