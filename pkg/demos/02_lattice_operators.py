"""
Fields on hZ^8 and discrete Cauchy-Riemann operators
=====================================================

Sparse octonion-valued fields, forward/backward differences, the left and
right Cauchy-Riemann operators, and summation by parts.
"""
from octo_stokes import (
    Octonion,
    backward_diff,
    cr_backward_left,
    cr_forward_left,
    cr_forward_right,
    field_from_entries,
    forward_diff,
    pointwise_product,
    random_field,
    volume_sum,
)

origin = (0,) * 8
e = [Octonion.basis(i) for i in range(8)]

# A point mass at the origin
delta = field_from_entries(1, [(origin, e[3])])
print("backward difference along e2:")
for m, value in backward_diff(delta, 2).items():
    print("  ", m, value)

# D+ of a real point mass spreads to the eight downstream neighbours
print("D+ delta at the origin:", cr_forward_left(field_from_entries(1, [(origin, e[0])]))[origin])

# Multiplying e_j from the right differs from the left once values are imaginary
d1 = field_from_entries(1, [(origin, e[1])])
print("left : ", cr_forward_left(d1)[origin])
print("right:", cr_forward_right(d1)[origin])

# Random fields are reproducible from their seed
f = random_field(seed=42, radius=1, coeff_bound=3)
print(f, "first entry:", next(f.items()))
print("support after D-:", len(cr_backward_left(f)))

# Summation by parts: sum (forward_j u) v = -sum u (backward_j v)
u = random_field(1, 1, 3).real_part()
v = random_field(2, 1, 3).real_part()
for j in range(8):
    left = volume_sum(pointwise_product(forward_diff(u, j), v))
    right = volume_sum(pointwise_product(u, backward_diff(v, j)))
    print(f"j={j}: {left[0]:>6} = -({right[0]})")
