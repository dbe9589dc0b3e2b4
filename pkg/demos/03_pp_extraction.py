"""
Stranded prepositions
=====================

"to" and "from" head auxiliary trees that carry the trace.  Without a
wh-phrase the clause root is left with an unresolved displ_const clash.
"""
from ftag import bundled_grammar, explain, parse, tokenize

g = bundled_grammar("ppx")

for s in ["Where did Mary walk to", "Which gate did you leave from", "Did Mary walk to"]:
    result = parse(g, tokenize(s))
    print(f"{len(result)} parse(s): {s}")
    for _, final in result.derivations:
        print("   ", final.bracket(show_features=True))

for diag in explain(g, tokenize("Did Mary walk to")):
    print("rejected", diag.derivation, "->", diag)
