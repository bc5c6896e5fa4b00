"""
Octonion multiplication and its failure of associativity
=========================================================

Builds the multiplication table, looks at a few products, and counts how
many basis triples associate.
"""
import itertools

from octo_stokes import (
    Associativity,
    Octonion,
    associator,
    build_cayley_table,
    classification_census,
    classify_basis_triple,
    enumerate_fano_lines,
    grouped_pair_count,
    multiply,
)

e = [Octonion.basis(i) for i in range(8)]

# The table is built from four identities plus e_i^2 = -1 and
# anticommutativity, then certified on first use.
table = build_cayley_table()
for i in range(8):
    print("  ".join(f"{str(table[i][j]):>3}" for j in range(8)))
print("certificate:", table.certificate()[:16], "...")

# e7 = (e1 e2) e3, but grouping the other way flips the sign
print("(e1 e2) e3 =", multiply(multiply(e[1], e[2]), e[3]))
print("e1 (e2 e3) =", multiply(e[1], multiply(e[2], e[3])))
print("[e1, e2, e3] =", associator(e[1], e[2], e[3]))

# Triples on a line of the Fano plane still associate
print("[e1, e2, e4] =", associator(e[1], e[2], e[4]))

assoc, anti = classification_census()
print(f"{assoc} associative + {anti} anti-associative = {assoc + anti} ordered triples")
print("grouped sums:", grouped_pair_count())
print("lines:", sorted(sorted(line) for line in enumerate_fano_lines()))

# A few anti-associative triples
anti_triples = [t for t in itertools.product(range(8), repeat=3)
                if classify_basis_triple(*t) is Associativity.ANTI_ASSOCIATIVE]
print("first anti-associative triples:", anti_triples[:6])
