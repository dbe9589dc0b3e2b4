"""
Checking extraction trees
=========================

Each trace/filler/host triple has to follow the same structural and
feature-passing constraints.  Break one and the linter names the clause.
"""
from ftag import bundled_grammar, lint_extraction_pair
from ftag.trees import evolve

g = bundled_grammar("bundled")
triples = [
    ("beta_np_eps", "beta_extraposed", "alpha_arrive"),
    ("beta_to_stranded", "beta_where", "alpha_walk"),
    ("beta_vp_obj_eps", "beta_which_book", "alpha_forget_who_wrote"),
]
for names in triples:
    print(names, lint_extraction_pair(*(g.trees[n] for n in names)))

# flip the trace tree's root bottom to displ_const=-
eps = g.trees["beta_np_eps"]
bad_root = evolve(eps.root, bottom=eps.root.bottom.set("displ_const", "-"))
mutated = evolve(eps, root=bad_root)
for v in lint_extraction_pair(mutated, g.trees["beta_extraposed"], g.trees["alpha_arrive"]):
    print(f"clause ({v.rule}) {v.tree}@{list(v.address)}: {v.message}")
