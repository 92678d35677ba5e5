# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Gaps of abelian groups
#
# For A = Z^r + Z_{d_1} + ... + Z_{d_k} the deficiency, the Schur
# multiplicator and the Betti numbers all have closed forms. The F-gap
# b_1 - b_2 - def measures how far the best presentation is from what
# homology allows.

# %%
from rosekit import abelian as ab
from rosekit.abelian import FgAbelianGroup, parse_abelian

# %%
A = parse_abelian("Z_2 + Z_2")
print("def", ab.deficiency(A), " H_2", ab.schur_multiplicator(A))
for field in ("Q", 2, 3):
    print(ab.gap(A, field).as_dict())

# %% [markdown]
# The closed forms are checked against homology computed from scratch: a
# tensor product of circles and truncated lens-space chain complexes.

# %%
for text in ["Z^2", "Z + Z_6", "Z_2 + Z_4 + Z_12", "Z^2 + Z_3 + Z_3"]:
    A = parse_abelian(text)
    H = ab.kunneth_oracle(A)
    print(f"{text:>18}: H_2 oracle = {H.group(2):<22} closed form = {ab.schur_multiplicator(A)}")

# %% [markdown]
# Over Q the gap vanishes exactly for free abelian and cyclic groups.

# %%
rows = []
for r in range(3):
    for d in [(), (2,), (6,), (2, 2), (2, 6), (3, 3, 3)]:
        A = FgAbelianGroup(r, d)
        rows.append((str(A), ab.gap(A, "Q").gap, ab.gap(A, 2).gap, ab.gap(A, 3).gap))
for row in rows:
    print("%-22s gap(Q)=%d gap(F_2)=%d gap(F_3)=%d" % row)

# %% [markdown]
# The F_p gap drops from the rational one by the p-rank of the torsion in
# H_2.

# %%
A = parse_abelian("Z + Z_2 + Z_6")
for p in (2, 3, 5):
    print(p, ab.gap(A, p).gap, ab.gap(A, "Q").gap, ab.relation_gap_check(A, p))

# %% [markdown]
# Which abelian groups are fundamental groups of mod-p roses or of mod-p
# acyclic spaces?

# %%
for text in ["Z + Z_3", "Z^2", "Z_6", "Z + Z_4"]:
    A = parse_abelian(text)
    print(text, {p: (ab.realizable_as(A, "rose", p), ab.realizable_as(A, "acyclic", p)) for p in (2, 3, 5)})
