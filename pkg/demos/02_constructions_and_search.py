"""
Short rulers from finite fields
===============================

Singer, Bose and Ruzsa give Sidon sets modulo m.  Dilating by a unit and
cutting out k cyclically consecutive residues gives integer rulers; the
shortest ones found bound s_k from above.
"""

import time

from sidonkit import exhaustive_optimal, theorem1_bound
from sidonkit.constructions import bose, ruzsa, singer
from sidonkit.search import SearchConfig, best_k_window, run_search

for s in (singer(5), bose(5), ruzsa(7)):
    print(f"{s.provenance():22s} {s.residues}")

#
d, w = best_k_window(singer(2), 3)
print("singer(2), k=3 ->", d, w.elements)

# exact values for small k, by branch and bound
for k in range(2, 11):
    sk, wit = exhaustive_optimal(k)
    print(f"s_{k} = {sk:3d}   {wit}")

# the search over q <= 61
t0 = time.monotonic()
table = run_search(SearchConfig(q_max=61, k_min=8, k_max=40))
print(f"search took {time.monotonic() - t0:.1f}s")
for k in (8, 10, 11, 12, 20, 30, 40):
    rec = table[k]
    print(f"k={k:3d}  D_k={rec.diameter:5d}  b_k >= {rec.bk_decimal()}  "
          f"({rec.construction} q={rec.q} c={rec.dilation})  lower bound {theorem1_bound(k).ceil()}")
