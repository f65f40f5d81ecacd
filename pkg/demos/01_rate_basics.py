# %% [markdown]
# # Computation rate of one effective channel
#
# The base station wants to decode an integer combination `a` of the users'
# codewords. How fast the users may transmit depends on how close the
# (scaled) effective channel is to `a`.

# %%
import numpy as np

from irs_cf import (
    CoefficientVector,
    computation_rate_beta,
    computation_rate_direct,
    computation_rate_solve,
    optimal_beta,
)

a = CoefficientVector([1, 1])
snr = 10 ** 0.5  # 5 dB

# %% A channel matching `a` up to scale gives a large rate...
for h in ([1.0, 1.0], [2.0, 2.0], [1.0, 0.2], [1.0, -1.0]):
    r = computation_rate_direct(a, h, snr)
    print(f"h = {h!s:12}  rate = {r:.4f} bits")

# %% ...and the receiver scaling beta that achieves it has a closed form.
h = np.array([0.9 + 0.3j, 1.1 - 0.2j])
beta = optimal_beta(h, a, snr)
print("optimal beta:", beta)
print("rate at optimal beta :", computation_rate_beta(a, h, snr, beta))
print("rate, closed form    :", computation_rate_direct(a, h, snr))
print("rate, dense solve    :", computation_rate_solve(a, h, snr))

# %% Any other beta does worse.
for delta in (0.05, 0.2, 0.5j):
    print(f"beta + {delta}: {computation_rate_beta(a, h, snr, beta + delta):.4f} bits")
