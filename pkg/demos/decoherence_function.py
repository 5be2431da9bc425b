"""The decoherence function of the kicked top, from its correlation sums.

A chaotic environment forgets its own past after about one kick, so the
double sum over correlations grows quadratically only for a few steps before
settling into linear growth, exactly like a many-body bath with a short
memory. The run below accumulates f(n), fits a*n + b*n^2 over the early
window, and extracts the phenomenological plateau and decay constants.

Run from the repository root:  python3 demos/decoherence_function.py
"""

from dataclasses import replace

from topbath import load_config, run_fn_scenario

cfg = load_config("configs/fn.conf")
cfg = replace(cfg, n_steps=1000, outputs="runs/demo_fn")

art = run_fn_scenario(cfg)
print(f"records written to {art.records_path}")
print()

fs = art.columns["f_scaled"]
print("scaled decoherence function f(n)/j^2:")
for n in (1, 2, 5, 10, 50, 200, 1000):
    print(f"  n = {n:4d}   f = {fs[n]:10.4f}   fit {art.columns['f_fit_scaled'][n]:10.4f}")
print()

print(f"fit over n in [{cfg.fit_n_min}, {cfg.fit_n_max}]:")
print(f"  a = {art.fit.a:.4f}, b = {art.fit.b:.3e}, rms residual = {art.fit.rms_residual:.3f}")
print()

print("phenomenological constants (covariance plateau and per-kick decay):")
print(f"  c0 = {art.pheno.c0:.4f}  gamma = {art.pheno.gamma:.3f}")
print()

early = (fs[10] - fs[9]) / (fs[1] - fs[0])
late = (fs[1000] - fs[600]) / 400.0
print(f"growth rate after ten kicks vs the first kick: {early:.0f}x (convex start)")
print(f"late per-kick slope: {late:.3f} (steady linear growth)")
