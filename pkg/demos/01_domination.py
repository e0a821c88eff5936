"""p-domination on small graphs: minimum sets, uniqueness and private neighbours."""
from preinforce import gamma_p, private_neighbors, uniqueness_report
from preinforce.family import build_block
from preinforce.graph_core import from_edge_list, path_graph

# A path needs every other vertex once p = 2 forces both ends in.
P7 = path_graph(7)
for p in (1, 2):
    cert = gamma_p(P7, p, all_sets=True)
    print(f"P_7, p={p}: gamma = {cert.value}, {cert.count} minimum set(s), e.g. {sorted(cert.witness)}")

# The F_2 gadget for p = 3 has a single minimum 3-dominating set.
F2, A = build_block("F", 3)
cert = gamma_p(F2, 3)
print(f"F_2: gamma_3 = {cert.value}, unique = {cert.unique}, tracked set agrees: {cert.witness == A}")
for x in sorted(cert.witness):
    print(f"  PN_3({x}) = {sorted(private_neighbors(F2, 3, cert.witness, x))}")

# Two adjacent stars: the local uniqueness test names the vertex that breaks it.
double = from_edge_list(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
D = gamma_p(double, 2).witness
verdict = uniqueness_report(double, 2, D)
print(f"double star, p=2: D = {sorted(D)}, unique = {verdict.unique}, offender = {verdict.offender}")
