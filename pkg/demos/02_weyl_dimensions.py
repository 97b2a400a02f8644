# Representation degrees from the root data, and their growth along [tZ].
from transference import (dim_scaling_limit, floor_weight, make_product, make_sphere, make_su2,
                          weyl_dim)

s2, s4, su2 = make_sphere(2), make_sphere(4), make_su2()

print("S^2 degrees:", [weyl_dim(s2, n) for n in range(8)])      # 2n + 1
print("S^4 degrees:", [weyl_dim(s4, n) for n in range(8)])
print("SU(2) degrees:", [weyl_dim(su2, n) for n in range(8)])   # (n + 1)^2

prod = make_product(s2, su2)
print("S^2 x SU(2) at (3, 2):", weyl_dim(prod, (3, 2)), "= 7 * 9")

# d_[tZ] grows like t^{#positive roots} times a polynomial in Z
for model in (s2, s4, su2, prod):
    z = (1.3,) * model.rank
    limit = dim_scaling_limit(model, z)
    for t in (1e2, 1e4):
        ratio = weyl_dim(model, floor_weight(t, z).weight) / t ** model.positive_root_count
        print(f"{model.name:22s} t={t:8.0f}  ratio={ratio:.6f}  limit={limit:.6f}")
