"""The 31-vertex fixture tree with p = 2."""
from preinforce import gamma_p, r_p
from preinforce.graph_core import to_dot
from preinforce.verifier import FIGURE1_EXPECTED, figure1_tree, figure1_values

values = figure1_values()
for key, want in FIGURE1_EXPECTED.items():
    mark = "" if values[key] == want else f"   (listed as {want})"
    print(f"{key:>12} = {values[key]}{mark}")

# r_2 comes out as 2; the witness edges make that easy to confirm by hand.
T = figure1_tree()
res = r_p(T, 2)
print("edges added:", res.witness_edges, "verified:", res.witness_verified)
print("gamma_2 before and after:", gamma_p(T, 2).value, gamma_p(T.add_edges(res.witness_edges), 2, guard=26).value)

print(to_dot(T, name="fixture", highlight=gamma_p(T, 2).witness)[:120], "...")
