# %% [markdown]
# # Rate versus SNR, with and without an IRS
#
# K = 2 users, a = [1, 1], M = 20 IRS elements. AoAvg averages the AO rate
# over random initial phases, then over channel draws. Kept small so it
# runs in well under a minute; raise `num_chnl_realz` for smoother curves.

# %%
from irs_cf import EvalConfig, MethodId, SweepSpec, SweepVariable, SystemParams, run_sweep

cfg = EvalConfig(num_chnl_realz=40, num_init_point=5,
                 methods=(MethodId.NO_IRS, MethodId.AO_AVG))
base = SystemParams.from_db(2, 20, 0)
table = run_sweep(SweepSpec(base, SweepVariable.SNR_DB, (0, 5, 10, 15, 20), cfg))

print(f"{'SNR dB':>6}  {'method':>6}  mean   stderr")
for snr_db, st in table.rows:
    print(f"{snr_db:6.0f}  {st.method.value:>6}  {st.mean_bits:.3f}  {st.stderr_bits:.3f}")

# %% Optional plot
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    x = (0, 5, 10, 15, 20)
    for m in cfg.methods:
        plt.plot(x, table.means(m), marker="o", label=m.value)
    plt.xlabel("SNR [dB]")
    plt.ylabel("computation rate [bits]")
    plt.legend()
    plt.savefig("rate_vs_snr.png", dpi=120)
    print("saved rate_vs_snr.png")
