"""Two routes to the reinforcement number: direct search over added edges and minimum deficiency."""
from preinforce import eta_graph, mu_graph, r_p
from preinforce.graph_core import enumerate_trees, path_graph, random_connected_graph

G = path_graph(7)
for p in (1, 2):
    by_def = r_p(G, p, method="definition")
    by_eta = r_p(G, p, method="eta")
    print(f"P_7, p={p}: definition {by_def.value} via {by_def.witness_edges}, eta {by_eta.value} via {by_eta.witness_edges}")

# eta picks a set X one smaller than gamma and counts the missing domination.
w = eta_graph(G, 2)
print(f"eta_2(P_7) = {w.total} with X = {sorted(w.X)}, deficiencies {w.deficiencies}")

# mu bounds r from above; on trees with r = 1 the two agree.
tight = sum(1 for T in enumerate_trees(9) if r_p(T, 2).value == mu_graph(T, 2).graph_min)
print(f"trees on 9 vertices with r_2 = mu_2: {tight} of {sum(1 for _ in enumerate_trees(9))}")

# The two routes also agree off trees.
H = random_connected_graph(8, 2, seed=7)
print(f"random graph, p=1: definition {r_p(H, 1, method='definition').value}, eta {r_p(H, 1, method='eta').value}")
