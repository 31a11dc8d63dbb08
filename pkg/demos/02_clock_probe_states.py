#!/usr/bin/env python3
"""Which bosonic probe state makes the best portable phase reference?

A qubit rides along with a single-mode probe; without a shared clock the
joint state dephases into total-excitation sectors.  We scan squeezed,
displaced vacuum probes over (mean energy, displacement fraction x) where
x = alpha^2 / <N>: x = 0 is a squeezed vacuum (useless, parity-even support),
x = 1 is a coherent state (nearly optimal).
"""

from twirlqfi import (
    QrfStateSpec,
    coherent_qfi_hypergeometric,
    example1_qfi_closed_form,
    mean_occupation,
    qrf_amplitudes,
)

TRUNCATION = 600

print("dephased QFI over (mean energy, displacement fraction x)\n")
x_grid = (0.0, 0.25, 0.5, 0.75, 1.0)
print("  <N>   " + "".join(f"  x={x:4.2f}" for x in x_grid))
for mean in (0.5, 1.0, 2.0, 4.0, 8.0):
    row = [f"{mean:5.1f}  "]
    for x in x_grid:
        spec = QrfStateSpec.from_mean_energy(mean, x)
        probe = qrf_amplitudes(spec, TRUNCATION)
        row.append(f"  {example1_qfi_closed_form(probe.amplitudes):6.4f}")
    print("".join(row))

print("\nfixed energy: displacement always beats squeezing (monotone in x);")
print("the x = 0 column vanishes because a squeezed vacuum only occupies even")
print("Fock states, so neighbouring-sector coherences never form.\n")

mean = 4.0
probe = qrf_amplitudes(QrfStateSpec.from_mean_energy(mean, 1.0), TRUNCATION)
print(f"coherent probe, <N> = {mean}: occupation check {mean_occupation(probe):.6f}")
print(f"  closed form (amplitudes)      : {example1_qfi_closed_form(probe.amplitudes):.10f}")
print(f"  hypergeometric expression     : {coherent_qfi_hypergeometric(mean):.10f}")
print(f"  large-energy asymptote 1-C/(x+1), C = 1/4: {1 - 0.25 / (mean + 1):.10f}")
