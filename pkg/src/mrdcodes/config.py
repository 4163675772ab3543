"""Default budgets and the deterministic seed.

Every exhaustive kernel is guarded by an explicit budget; exceeding one
raises :class:`~mrdcodes.errors.BudgetExceededError` rather than silently
sampling.  All budgets can be overridden per call.
"""

# Largest field for which the full discrete-log table is built.
DLOG_TABLE_BUDGET = 2**22

# Largest code (number of words) scanned by the exhaustive distance kernel.
EXHAUSTIVE_CODE_BUDGET = 2**20

# Largest (q^n-1)^2 * n * lambda*n grid for automorphism-triple scans.
AUT_ENUM_BUDGET = 2**26

# Largest invertible-map count enumerated by the full equivalence search.
FULL_SEARCH_GL_BUDGET = 2**16

# Largest affine solution space enumerated when completing a bijection.
SOLUTION_SPACE_BUDGET = 2**16

# Retries of the seeded randomized completion once enumeration is too big.
RANDOM_COMPLETION_RETRIES = 256

# Seed for every randomized fallback; fixed so runs are reproducible.
DEFAULT_SEED = 0x5EED
