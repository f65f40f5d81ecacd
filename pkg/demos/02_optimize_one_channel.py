# %% [markdown]
# # Tuning the IRS phases on one channel draw
#
# Draw a K=2, M=20 Rayleigh channel, then compare random phase settings
# against alternating optimization (closed-form beta, gradient steps on the
# phases).

# %%
import numpy as np

from irs_cf import (
    AOConfig,
    SystemParams,
    ao_optimize,
    no_irs_rate,
    random_phase_rates,
    random_phases,
    sample_channel,
    substream,
)

params = SystemParams.from_db(num_users=2, num_irs_elements=20, snr_db=5)
chan = sample_channel(params, substream(2021, 0, 0))
a, snr = params.coeffs, params.snr_linear

print("no IRS           :", round(no_irs_rate(chan, a, snr), 4))
rnd = random_phase_rates(chan, a, snr, 50, substream(2021, 0, 2))
print("random phases    : mean %.4f, best of 50 %.4f" % (rnd.mean(), rnd.max()))

# %% One AO run: the trace is non-decreasing by construction.
res = ao_optimize(chan, a, snr, random_phases(substream(2021, 0, 1, 0), 20))
for e in res.trace[:5] + res.trace[-2:]:
    print(f"sweep {e.iteration:3d}  |beta| = {abs(e.beta):.4f}  rate = {e.rate_bits:.4f}")
print("converged:", res.converged)

# %% A longer budget keeps creeping upward: the beta and phase updates are
# tightly coupled, so each sweep only moves a little.
for cap in (10, 50, 200, 1000):
    r = ao_optimize(chan, a, snr, random_phases(substream(2021, 0, 1, 0), 20),
                    AOConfig(max_ao_iters=cap))
    print(f"max_ao_iters={cap:5d}: rate {r.rate_bits:.4f}  converged={r.converged}")
