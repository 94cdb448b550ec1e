"""Regenerate the shipped fixtures (offline helper, needs networkx)."""

import hashlib
import json
from pathlib import Path

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

from htorus.embedder import RotationConstraint, constrained_embed, euler_genus
from htorus.graph import Graph, k3n_with_bracers, write_graph6

DATA = Path(__file__).resolve().parents[1] / "src" / "htorus" / "data"


def corpus() -> None:
    lines = [">>graph6<<"]
    for G in graph_atlas_g():
        if 1 <= G.number_of_nodes() <= 6 and nx.is_connected(G):
            g = Graph(G.number_of_nodes(), sorted(tuple(sorted(e)) for e in G.edges()))
            lines.append(write_graph6(g))
    (DATA / "connected_le6.g6").write_text("\n".join(lines) + "\n", encoding="ascii")


def fig4() -> None:
    g = k3n_with_bracers(6, [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)])
    cons = {}
    for j in range(6):
        w = 3 + j
        ec, ea, eb = g.edge_id(2, w), g.edge_id(0, w), g.edge_id(1, w)
        cons[w] = RotationConstraint("fixed", (ec, ea, eb) if j % 2 == 0 else (ec, eb, ea))
    res = constrained_embed(g, cons, 1)
    assert res.status == "found" and euler_genus(g, res.rotation) == 1
    doc = {"graph6": write_graph6(g), "edges": [list(e) for e in g.edges],
           "labels": {"a": 0, "b": 1, "c": 2, "claws": list(range(3, 9))},
           "rotations": res.rotation.to_json(), "genus": 1}
    (DATA / "fig4_k36_k3.json").write_text(json.dumps(doc, indent=1) + "\n", encoding="ascii")


def golden() -> None:
    from htorus.graph import complete, complete_bipartite
    from htorus.solver import solve_sphere, solve_torus

    docs = {
        "k4_sphere": solve_sphere(complete(4)).certificate,
        "k5_torus": solve_torus(complete(5)).certificate,
        "k33_torus": solve_torus(complete_bipartite(3, 3)).certificate,
        "k7_torus": solve_torus(complete(7)).certificate,
    }
    out = {name: s.to_dict() for name, s in docs.items()}
    (DATA / "golden_certificates.json").write_text(json.dumps(out, indent=1, sort_keys=True) + "\n",
                                                   encoding="ascii")


if __name__ == "__main__":
    corpus()
    fig4()
    golden()
    for p in sorted(DATA.iterdir()):
        print(p.name, hashlib.sha256(p.read_bytes()).hexdigest())
