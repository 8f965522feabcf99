"""Empirical privacy auditing of full-batch DP-SGD in the final-model setting.

Subpackages by responsibility:

- stats: normal CDF/quantile and Clopper-Pearson bounds
- accountant: Gaussian-DP accounting and mu <-> (eps, delta) conversion
- nn: minimal dense/conv classifier with hand-derived gradients
- dpsgd: full-batch DP-SGD training (per-example clipping + Gaussian noise)
- crafting: canary construction and adversarial audit-sample optimization
- auditor: threshold sweep, error-rate bounding and empirical epsilon
- datasets / config / harness / cli: experiment orchestration and I/O
"""

__version__ = "0.1.0"
