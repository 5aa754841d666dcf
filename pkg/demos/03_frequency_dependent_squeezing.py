"""Frequency-dependent squeezing with a single filter cavity.

A detuned cavity rotates the reflected quadratures by a
frequency-dependent angle.  Reflecting the squeezed vacuum off such a
cavity before injection (pre-filtering) or the output before detection
(post-filtering) realizes the angle dependences that cancel back-action.
The demo compares the ideal curves with real cavities of increasing
loss, and prints the loss budget rules of thumb.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ifonoise.filters import (
    FilterCavityConfig,
    design_rates,
    filtered_sum_noise,
    ideal_filtered_psd,
    loss_limited_minimum,
    loss_thresholds,
)
from ifonoise.interferometer import J_ALIGO, caves_psd, sql_strain
from ifonoise.twophoton import db_to_r

MASS, ARM = 40.0, 4000.0
GAMMA = 2 * np.pi * 500
ETA_D = 0.95
R = float(db_to_r(10.0))

f = np.logspace(np.log10(5), np.log10(5000), 400)
omega = 2 * np.pi * f

gf1, df = design_rates("post", J_ALIGO, GAMMA, R, ETA_D)
print(f"design rates: gamma_f = delta_f = {gf1:.1f} s^-1 "
      f"(gamma_f0 = {np.sqrt(J_ALIGO / GAMMA):.1f} s^-1)")
tight, crude = loss_thresholds(J_ALIGO, GAMMA, ETA_D)
print(f"specific-loss thresholds: useful below {tight:.1e} 1/m, "
      f"pointless above {crude:.1e} 1/m")

fig, ax = plt.subplots(figsize=(7.5, 5))
ax.loglog(f, np.sqrt(caves_psd(J_ALIGO, GAMMA, MASS, ARM, 0.0, ETA_D, omega)),
          label="no squeezing")
ax.loglog(f, np.sqrt(caves_psd(J_ALIGO, GAMMA, MASS, ARM, R, ETA_D, omega)),
          label="10 dB, fixed angle")
ax.loglog(f, np.sqrt(ideal_filtered_psd("post", J_ALIGO, GAMMA, MASS, ARM, R,
                                        ETA_D, omega)),
          "k:", label="ideal frequency-dependent angle")
for loss in (1e-9, 1e-7, 1e-6):
    fc = FilterCavityConfig.from_rates(gf1, df, 299792458.0 * loss / 4, length=50.0)
    s = filtered_sum_noise("post", fc, J_ALIGO, GAMMA, MASS, ARM, R, ETA_D, omega)
    ax.loglog(f, np.sqrt(s), label=f"filter cavity, $A_f/L_f$ = {loss:g}/m")
ax.loglog(f, np.sqrt(sql_strain(MASS, ARM, omega)), "k--", label="SQL")
ax.set_xlabel("frequency [Hz]")
ax.set_ylabel(r"$\sqrt{S^h}$  [1/$\sqrt{\rm Hz}$]")
ax.set_title("post-filtering with a single 50 m cavity")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig("demo03_filter.png", dpi=130)
print("wrote demo03_filter.png")

s_min, k_opt = loss_limited_minimum(MASS, ARM, R, ETA_D, 2 * np.pi * 100)
xi = np.sqrt(s_min / sql_strain(MASS, ARM, 2 * np.pi * 100))
print(f"loss floor with 10 dB squeezing: xi_min = {xi:.3f} at K = {k_opt:.2f}")
