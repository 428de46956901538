"""Two extreme contact regimes: explosion versus cubic slowdown.

With quadratically accelerating rates lambda_k = c k^2 the expected time
to infect everyone stays below pi^2/(6c) no matter how large the crowd:
rapid intermingling overruns any population in bounded expected time.
With suppressed rates lambda_k = c / k^2 the expected time grows like
n^3/(3c), far exceeding the population size.
"""

import math

from purebirth import explosion_study, power_law, powerlaw_expected_time

print("accelerating rates lambda_k = k^2 (c = 1):")
for n in (10, 100, 1000, 100000):
    report = powerlaw_expected_time(1.0, 2, n)
    print(f"  n = {n:>6d}  E(T) = {report.value:.6f}  "
          f"(limit pi^2/6 = {report.limit:.6f}, tail < {report.tail_bound:.1e})")

study = explosion_study(power_law(1.0, 2.0, 1000), 1, 10_000, master_seed=7)
print(f"  simulated cap-1000 hitting time over 10,000 replicates: "
      f"{study.summary.mean:.4f} +/- {study.summary.std_error:.4f}")
print(f"  analytic partial sum: {study.analytic_mean:.4f}\n")

print("suppressed rates lambda_k = 1/k^2:")
for n in (10, 100, 1000, 10000):
    report = powerlaw_expected_time(1.0, -2, n)
    print(f"  n = {n:>6d}  E(T) = {report.value:>18.1f}  "
          f"~ n^3/3 = {report.growth:.3e}")
ratio = (powerlaw_expected_time(1.0, -2, 20000).value
         / powerlaw_expected_time(1.0, -2, 10000).value)
print(f"  doubling n multiplies E(T) by {ratio:.4f} (cubic growth -> 8)")
