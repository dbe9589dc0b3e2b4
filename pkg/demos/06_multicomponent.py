"""
The same trees from tree sets
=============================

The multi-component grammars drop the displ_const features and attach each
trace with its filler as one tree-local set.  Both grammars should build
the same trees once features are erased and indices renamed.
"""
from ftag import bundled_grammar, compare, language_sample, mc_parse, parse, tokenize

ftag = bundled_grammar("extraposition")
mc = bundled_grammar("extraposition.mctag")

tokens = tokenize("A man arrived who knew Mary")
(_, a), = parse(ftag, tokens).derivations
(d, b), = mc_parse(mc, tokens)
print(d)  # set members carry the set name
print(compare(a, b))

# the two string languages, up to six words
left, right = language_sample(ftag, 6), language_sample(mc, 6)
print(len(left), len(right), left == right)
for s in sorted(left)[:5]:
    print("  ", " ".join(s))

pp, pp_mc = bundled_grammar("ppx"), bundled_grammar("ppx.mctag")
print(sorted(" ".join(s) for s in language_sample(pp, 8)) ==
      sorted(" ".join(s) for s in language_sample(pp_mc, 8)))
