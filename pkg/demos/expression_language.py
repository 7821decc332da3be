"""The text syntax for box complexes, and what the CLI does with it.

Intervals use standard bracket notation, "x" is the cartesian product, and
"|", "&", "\\", "!" are union, intersection, difference, and complement.
"""

import json

from boxmeasure import evaluate, mu, parse, parse_defs, print_expr
from boxmeasure.dsl import cli_main

# ---------------------------------------------------------------------
# Parse, inspect, evaluate.
# ---------------------------------------------------------------------
for src in ("[0,1) x [0,1)",
            "[0,3),[0,3] \\ (1,2),(1,2)",
            "!((0,inf))",
            "translate(scale([0,1], 2), 5)"):
    e = parse(src)
    a = evaluate(e)
    print(f"{src:35s} -> {print_expr(e):35s} mu = {mu(a).mu}")

# Precedence: & binds tighter than |, and ! prefixes a whole product chain.
print(f"\nA | B & C parses as: {parse('A | B & C').kind}(..., intersect)")
print(f"!A x B parses as: {parse('!A x B').kind}(product)")

# ---------------------------------------------------------------------
# Named definitions, as in a --defs file.
# ---------------------------------------------------------------------
env = parse_defs("""
sq   = [0,1] x [0,1]          # the unit square
ring = scale(sq, 3) \\ (1,2),(1,2)
""")
print(f"\nring from definitions: mu = {mu(env['ring']).mu}")

# ---------------------------------------------------------------------
# The same operations through the command line entry point.
# ---------------------------------------------------------------------
print("\n$ boxmeasure measure '[0,1] x [0,1]'")
cli_main(["measure", "[0,1] x [0,1]"])

print("\n$ boxmeasure compare '(0,1)' '[0,1]'")
cli_main(["compare", "(0,1)", "[0,1]"])

print("\n$ boxmeasure find-n --poly 0,1.41421356237 --epsilon 0.05")
cli_main(["find-n", "--poly", "0,1.41421356237", "--epsilon", "0.05"])

print("\n$ boxmeasure measure '[0,1] x [0,1]' --json")
cli_main(["measure", "[0,1] x [0,1]", "--json"])

# Machine-readable output round-trips through the documented schemas.
print("\nJSON schema of a measure result:")
print(json.dumps(mu(env["sq"]).to_json(), indent=2))
