"""Bob's measurement statistics for binary coherent modulation.

Walks through the building blocks: the two-Gaussian density of the
effective channels, the error rate of each channel, and how trusted
detector noise reshapes both. Saves a figure next to this script.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cvqkd import (
    ChannelParams,
    SignalParams,
    adaptive_quad,
    channel_density,
    error_rate,
    eve_overlap,
    integration_limit,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

signal = SignalParams(alpha=1.0)
beta = np.linspace(0.0, 4.0, 600)

fig, (ax_density, ax_error) = plt.subplots(1, 2, figsize=(10, 4))

for eta, delta, style in [(1.0, 0.0, "-"), (0.5, 0.0, "--"), (0.5, 0.3, ":")]:
    channel = ChannelParams(eta=eta, delta=delta)
    label = rf"$\eta={eta}$, $\delta={delta}$"
    ax_density.plot(beta, channel_density(signal, channel, beta), style, label=label)
    ax_error.plot(beta, error_rate(signal, channel, beta), style, label=label)

    # the channel-label density integrates to one on [0, inf)
    total = adaptive_quad(
        lambda b: channel_density(signal, channel, b),
        0.0,
        integration_limit(signal, channel),
    )
    print(f"eta={eta:4.2f} delta={delta:3.1f}: "
          f"density mass = {total:.12f}, "
          f"Eve overlap = {eve_overlap(signal, channel):.6f}")

ax_density.set_xlabel(r"$\beta_x$")
ax_density.set_ylabel(r"$p_c(\beta_x)$")
ax_density.set_title("channel-use density")
ax_density.legend()

ax_error.set_xlabel(r"$\beta_x$")
ax_error.set_ylabel(r"$e(\beta_x)$")
ax_error.set_title("per-channel error rate")
ax_error.axhline(0.5, color="grey", lw=0.5)
ax_error.legend()

fig.tight_layout()
target = OUT / "channel_statistics.png"
fig.savefig(target, dpi=150)
print(f"wrote {target}")
