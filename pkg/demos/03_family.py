"""Building members of the extremal family and recognising them again."""
from preinforce import r_p
from preinforce.graph_core import path_graph
from preinforce.family import (
    ConstructionTrace,
    applicable_steps,
    apply_operation,
    generate_member,
    initial_tree,
    recognize,
    replay_trace,
    trace_code,
)

p = 3
# Grow by hand: at each stage take the last step whose preconditions hold.
T, A = initial_tree(p)
steps = []
for op in ("O1", "O3", "O4"):
    step = [s for s in applicable_steps(T, A, p, p + 2) if s.op == op][-1]
    T, A = apply_operation(T, A, p, step.op, step.y, step.t)
    steps.append(step)
    print(f"applied {step.op} at {step.y}" + (f" with t={step.t}" if step.t else ""))
trace = ConstructionTrace(p, tuple(steps))
print(f"the grown tree has {T.n} vertices, tracked set of size {len(A)}, r_3 = {r_p(T, p).value}")

# recognize peels blocks off again; its trace need not match ours, but it rebuilds the same tree.
found = recognize(T, p)
print("recognised as", [(s.op, s.y, s.t) for s in found.steps])
print("same tree:", trace_code(found) == trace_code(trace))

# Seeded sampling is reproducible.
G1, t1 = generate_member(p, 5, seed=11)
G2, t2 = generate_member(p, 5, seed=11)
print(f"seed 11: {G1.n} vertices, identical on rerun: {t1 == t2 and G1.edges == G2.edges}")

# A tree outside the family.
print("P_7 recognised:", recognize(path_graph(7), p))
