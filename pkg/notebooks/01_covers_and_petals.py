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
# # Covers of roses
#
# A finite 2-complex is a mod-p homology rose with m petals when its F_p
# homology looks like a wedge of m circles. Here we build regular
# (Z_p)^r-covers of presentation complexes and watch the petal count.

# %%
from rosekit import CoverSpec, build_cover, catalog, homology, rose_check
from rosekit.chain import betti_numbers, euler_characteristic
from rosekit.covers import deck_action_on_h1, subnormal_series
from rosekit.grouppres import FiniteAbelianGroup, epimorphisms_to, parse_epimorphism, presentation_complex
from rosekit.modrep import decompose

# %% [markdown]
# Start with the free group on two letters and its double cover.

# %%
F2 = catalog("free", n=2)
phi = parse_epimorphism("Z2: a->1, b->0", F2.n)
cover = build_cover(CoverSpec.from_epimorphism(F2, phi))
print(cover.complex)
print(homology(cover.complex))

# %% [markdown]
# A rose with m petals covered by (Z_p)^r is again a rose, now with
# p^r (m - 1) + 1 petals. Check a few cases.

# %%
for m, p, r in [(2, 2, 1), (2, 3, 1), (3, 2, 2), (2, 3, 2)]:
    P = catalog("free", n=m)
    G = FiniteAbelianGroup((p,) * r)
    psi = next(epimorphisms_to(P, G))
    X = build_cover(CoverSpec.from_epimorphism(P, psi)).complex
    print(f"m={m} p={p} r={r}: betti {betti_numbers(X, p)}, formula {p ** r * (m - 1) + 1}")

# %% [markdown]
# Torsion prime to p does not matter. The circle with a Z_3 summand glued
# on is a mod-2 rose with one petal, and so is its double cover.

# %%
from rosekit import FinitePresentation

P = FinitePresentation.from_strings(2, ["b b b"])
psi = parse_epimorphism("Z2: a->1, b->0", 2)
X = build_cover(CoverSpec.from_epimorphism(P, psi)).complex
print(rose_check(presentation_complex(P), 2))
print(rose_check(X, 2))

# %% [markdown]
# The torus is not a rose, and neither is any of its covers.

# %%
T = catalog("torus")
X = build_cover(CoverSpec.from_epimorphism(T, parse_epimorphism("Z3: a->1, b->0", 2))).complex
print(rose_check(X, 3), "| chi:", euler_characteristic(X))

# %% [markdown]
# ## Iterating
#
# Taking the kernel of a map onto Z_2 again and again gives a chain of
# subgroups whose first Betti numbers grow as 2^i + 1.

# %%
for i, stage in enumerate(subnormal_series(F2, 2, 4)):
    print(i, stage.presentation.n, "generators", "b1 =", stage.b1, "b2 =", stage.b2)

# %% [markdown]
# ## The deck action
#
# Translation by the generator of Z_p acts on H_1 of the cover. As a
# module over F_p[Z_p] it splits as one trivial block plus -chi(base) free
# blocks of size p.

# %%
F3 = catalog("free", n=3)
for p in (2, 3, 5):
    X = build_cover(CoverSpec.from_epimorphism(F3, parse_epimorphism(f"Z{p}: a->1", 3)))
    T = deck_action_on_h1(X, (1,), p)
    print(p, decompose(T), "  chi(base) =", euler_characteristic(presentation_complex(F3)))
