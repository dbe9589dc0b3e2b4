"""
Two displacements in one clause
===============================

"which book" leaves an object trace through displ_const_index while "who"
binds the subject trace inside the host tree.  The two indices differ.
"""
from ftag import bundled_grammar, parse, tokenize
from ftag.coindex import c_commands, fillers, traces, unbound_traces

g = bundled_grammar("bundled")
(d, final), = parse(g, tokenize("I knew which book the students would forget who wrote")).derivations
print(d.pretty())
print(final.bracket())

tr, fl = traces(final), fillers(final)
for taddr, idx in sorted(tr.items()):
    (faddr,) = [a for a, i in fl.items() if i == idx]
    print(f"trace {idx} at {taddr} bound by filler at {faddr}:",
          c_commands(final, faddr, taddr))
print("unbound:", unbound_traces(final))
