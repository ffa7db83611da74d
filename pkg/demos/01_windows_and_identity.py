"""
Window counts and the exact diameter identity
=============================================

Slide a window of length T across a Sidon set and count the marks inside.
The spread of those counts (V) and the small differences the set misses (S)
pin down the diameter exactly.
"""

from fractions import Fraction

from sidonkit import SidonSet, et_identity_check, s_statistic, v_statistic, window_profile
from sidonkit.constructions import singer

# a small ruler first
A = SidonSet((0, 1, 3, 7))
prof = window_profile(A, 5)
print("A_j  :", prof.counts.tolist())
print("sum  :", prof.total, "= k*T =", A.k * 5)

V = v_statistic(prof)
S = s_statistic(A, 5)
print("V =", V, " S =", S)

# diam = k^2 T^2 / (T(T+k-1) - (2S+V)) - T
k, T = A.k, 5
print("rebuilt diameter:", Fraction(k * k * T * T) / (T * (T + k - 1) - (2 * S + V)) - T)

# the residual is exactly zero for every Sidon set and every T
ruler = singer(13).lift()
print("k =", ruler.k, "diameter =", ruler.diameter)
for T in (1, 10, 47, 200, ruler.diameter):
    print(f"  T={T:4d}  residual {et_identity_check(ruler, T)}")
