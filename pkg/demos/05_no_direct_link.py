# %% [markdown]
# # No direct link
#
# With h = 0 the users reach the base station only through the surface.
# Without an IRS nothing is decodable; with one, the AO rate behaves much
# like the direct-link case.

# %%
from irs_cf import EvalConfig, MethodId, SweepSpec, SweepVariable, SystemParams, run_sweep

cfg = EvalConfig(num_chnl_realz=30, num_init_point=5,
                 methods=(MethodId.NO_IRS, MethodId.AO_AVG, MethodId.RND_PHZ_MAX))
base = SystemParams.from_db(2, 4, 5, direct_link_enabled=False)
table = run_sweep(SweepSpec(base, SweepVariable.NUM_IRS_ELEMENTS, (4, 8, 16, 32), cfg))
for M, st in table.rows:
    print(f"M={M:2d}  {st.method.value:>9}  {st.mean_bits:.3f} +- {st.stderr_bits:.3f}")

# %% The same sweep from the command line writes a CSV:
#
#     irs-cf-sim --sweep-m 4,8,16,32 --snr-db 5 --no-direct-link \
#         --realizations 30 --inits 5 --out ndl.csv
