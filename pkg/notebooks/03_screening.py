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
# # Ledgers and screening
#
# Given a presentation we can always compute its deficiency and the Betti
# numbers of its complex. The Morse inequality def <= b_1 - b_2 must hold
# over every field.

# %%
from rosekit import catalog, deficiency_ledger, screen_d2_conditions
from rosekit.abelian import FgAbelianGroup
from rosekit.roselab import QuotientData

# %%
for name, params in [("swan", {"k": 1}), ("swan", {"k": 2}), ("Q", {"n": 1, "k": 3, "l": 1})]:
    P = catalog(name, **params)
    print(deficiency_ledger(P, ["Q", 2, 3, 7]))
    print()

# %% [markdown]
# A known value of b_2 of the group turns the ledger into an upper bound
# on the gap. For Z_2 + Z_2 the canonical complex has b_2 = 1 over Q while
# the group has b_2 = 0, so the rational gap is at most 1. The closed form
# says it is exactly 1.

# %%
P = catalog("abelian", r=0, d=(2, 2))
print(deficiency_ledger(P, ["Q"], {"Q": 0}))

# %% [markdown]
# ## Screening an extension
#
# For a candidate extension with quotient Γ the report walks a checklist.
# Conditions the toolkit can decide are marked computed. Anything that
# would need an unbounded search is left unchecked unless supplied.

# %%
print(screen_d2_conditions(catalog("free", n=2), QuotientData(abelian=FgAbelianGroup(2))))

# %%
G1 = catalog("swan", k=1)
print(screen_d2_conditions(G1, QuotientData(presentation=G1, supplied={"perfect_kernel": False})))
