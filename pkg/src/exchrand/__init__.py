"""Exchangeable random structures: Polya urns, Chinese restaurant processes,
their exact laws, and Poisson-Dirichlet block-weight machinery, with
built-in oracle and statistical verification suites."""

from .crp import (
    CrpParams,
    Partition,
    SeatingState,
    crp_next_probs,
    crp_sample,
    crp_validate,
    enumerate_partitions,
    ewens_log_pmf,
    ewens_pitman_log_pmf,
    theta_zero_log_pmf,
)
from .errors import DomainError, InvalidParameterError, UnknownSuiteError
from .numkern import SignedLogValue, falling, gamma_ratio_asymptotic, gen_binom, rising
from .polya import (
    CountVector,
    LabelSequence,
    UrnParams,
    aggregate_simplex,
    dirichlet_log_density,
    normalize_subvector,
    polya_count_log_pmf,
    polya_next_probs,
    polya_sample,
    polya_seq_log_pmf,
)
from .rngdist import (
    RandomSource,
    SimplexVector,
    sample_beta,
    sample_categorical,
    sample_dirichlet_gamma,
    sample_dirichlet_stick,
    sample_gamma,
)
from .verify import (
    TestReport,
    check_exchangeability_exact,
    chi_square_stat,
    ks_stat,
    oracle_crp_partition_pmf,
    oracle_polya_seq_pmf,
    run_suite,
)
from .weights import (
    RankedWeights,
    WeightSequence,
    block_count_prob,
    correlation_mc_estimate,
    empirical_block_weights,
    gem_sample,
    rank_weights,
    rho_k,
)

__version__ = "0.1.0"
