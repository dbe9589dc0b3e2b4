"""
John walked to Philadelphia
===========================

Four elementary trees, two substitutions and one adjunction.
"""
from ftag import adjoin, bundled_grammar, finalize, instantiate, parse, substitute
from ftag.features import fresh_ids

g = bundled_grammar("figure1")
for name, tree in g.trees.items():
    print(f"{name:20} {tree.kind:10} anchors={list(tree.anchors)}")

# compose by hand; every instantiation gets fresh variables
fresh = fresh_ids("t")
walked = instantiate(g.trees["alpha_walked"], fresh)
step1 = substitute(walked, (1,), instantiate(g.trees["alpha_john"], fresh))
pp = instantiate(g.trees["beta_to_pp"], fresh)
step2 = substitute(pp, (2, 2), instantiate(g.trees["alpha_philadelphia"], fresh))
step3 = adjoin(step1, (2,), step2)  # the PP tree wraps the VP of step 1
print(finalize(step3).bracket())

# the parser finds the same derivation from the words alone
(d, final), = parse(g, ["john", "walked", "to", "philadelphia"]).derivations
print(d.pretty())
for record in d.records():
    print(" ", record.describe(g))
