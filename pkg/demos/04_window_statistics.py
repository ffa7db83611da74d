"""
Variance, missing differences, and where the variance lives
===========================================================

For the best rulers found by the search, with T = ceil(k^1.5):
V/k^2.5, 2S/k^2.5 and the share of V coming from the two edge ranges.
"""

from fractions import Fraction

from sidonkit.exact import ceil_tau_k32
from sidonkit.search import SearchConfig, run_search
from sidonkit.windows import edge_variance_fraction, s_statistic, v_statistic, window_profile

table = run_search(SearchConfig(q_max=83, k_min=30, k_max=84))

print("   k      T   V/k^2.5  2S/k^2.5  edge share")
for k in range(30, 85, 6):
    s = table[k].witness()
    T = ceil_tau_k32(Fraction(1), k)
    V = v_statistic(window_profile(s, T))
    S = s_statistic(s, T)
    scale = k ** 2.5
    print(f"{k:4d} {T:6d} {float(V) / scale:9.4f} {2 * S / scale:9.4f} {float(edge_variance_fraction(s, T)):11.4f}")

# the profile itself for one of them
s = table[48].witness()
prof = window_profile(s, ceil_tau_k32(Fraction(1), 48))
print("mean count", float(prof.mean))
print("first windows", prof.counts[:20].tolist())
