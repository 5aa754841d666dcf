"""Standard quantum limits and the simple quantum meter.

Sweeps the measurement strength of a minimum-uncertainty meter on a free
mass and shows that the family of sum-noise curves envelopes the SQL;
then shows the narrow-band gain a harmonic oscillator buys near its
resonance, in all three normalizations.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ifonoise.baselines import Probe, sql, sqm_sum_noise

MASS = 40.0  # kg
ARM = 4000.0  # m

f = np.logspace(0, 3.5, 400)
omega = 2 * np.pi * f

free = Probe("free-mass", mass=MASS)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.2))

# --- family of meters of different strength versus the SQL envelope
for fq in (30.0, 100.0, 300.0):
    s = sqm_sum_noise(free, 2 * np.pi * fq, omega)
    ax1.loglog(f, np.sqrt(s), label=f"$\\Omega_q/2\\pi$ = {fq:g} Hz")
ax1.loglog(f, np.sqrt(sql(free, "F", omega)), "k--", label="SQL")
ax1.set_xlabel("frequency [Hz]")
ax1.set_ylabel(r"$\sqrt{S^F}$  [N/$\sqrt{\rm Hz}$]")
ax1.set_title("free mass: strength sweep envelopes the SQL")
ax1.legend()

# --- oscillator: cheap narrow-band gain below the free-mass SQL
osc = Probe("oscillator", mass=MASS, omega0=2 * np.pi * 100)
for fq in (20.0, 50.0):
    s = sqm_sum_noise(osc, 2 * np.pi * fq, omega)
    ax2.loglog(f, np.sqrt(s), label=f"oscillator, $\\Omega_q/2\\pi$ = {fq:g} Hz")
ax2.loglog(f, np.sqrt(sql(free, "F", omega)), "k--", label="free-mass SQL")
ax2.set_xlabel("frequency [Hz]")
ax2.set_title("harmonic oscillator dips under the free-mass SQL")
ax2.legend()

fig.tight_layout()
fig.savefig("demo01_sql.png", dpi=130)
print("wrote demo01_sql.png")

# the textbook numbers at 100 Hz
om100 = 2 * np.pi * 100
print(f"free-mass SQL at 100 Hz:  force  {sql(free, 'F', om100):.3e}  N^2 s")
print(f"                          strain {sql(free, 'h', om100, arm_length=ARM):.3e}  1/Hz")
print(f"                          displ. {sql(free, 'x', om100):.3e}  m^2 s")
print(f"matched meter (Omega_q = Omega) touches the SQL: "
      f"{sqm_sum_noise(free, om100, om100) / sql(free, 'F', om100):.6f}")
