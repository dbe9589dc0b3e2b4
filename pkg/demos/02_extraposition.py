"""
Extraposition with features instead of tree sets
================================================

The trace tree and the extraposed clause are separate auxiliary trees.
displ_const and displ_const_index make them meet in one elementary tree.
"""
from ftag import bundled_grammar, finalize, parse, parse_derivation, realize, tokenize
from ftag.coindex import fillers, traces
from ftag.composer import Rejected

g = bundled_grammar("bundled")

sentences = [
    "A man arrived",
    "A man arrived who knew Mary",
    "John gave everyone a hard time who knew Mary",
    "I told John yesterday that I wanted pizza",
]
for s in sentences:
    result = parse(g, tokenize(s))
    print(f"{len(result)} parse(s): {s}")
    for d, final in result.derivations:
        print("   ", d)
        print("   ", final.bracket())
        print("    traces", traces(final), "fillers", fillers(final))

# either half alone leaves a displ_const clash; the failing node depends on
# which half is missing
halves = {
    "clause without trace": "(alpha_arrive (sub 1 alpha_a_man) "
                            "(adj . (beta_extraposed (sub 2.2.2 alpha_mary))))",
    "trace without clause": "(alpha_arrive (sub 1 (alpha_a_man (adj . beta_np_eps))))",
}
for label, text in halves.items():
    try:
        finalize(realize(g, parse_derivation(text)))
    except Rejected as exc:
        print(f"{label}: {exc.describe()}")
