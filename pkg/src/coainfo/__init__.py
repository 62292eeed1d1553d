"""Information-theoretic analysis of double-entry accounting classification.

A coded transaction ledger defines a communication channel from economic
events to (debit, credit) account pairs. Truncating the hierarchical account
codes aggregates the classification; this package measures what that
aggregation costs in entropy, mutual information and symmetric uncertainty.
"""

from .analysis import (
    ComparisonTable,
    LevelReport,
    LevelRow,
    compare_periods,
    max_classifications,
    sweep_levels,
)
from .channel import (
    ClassificationChannel,
    ClassificationLabel,
    Distribution,
    JointDistribution,
    build_channel,
    joint_distribution,
    load_channel_csv,
    log_matrix,
    log_vector,
    make_theoretical_channel,
    output_distribution,
    posterior_matrix,
)
from .codes import (
    AccountCode,
    CodeSchema,
    format_code,
    parse_account_code,
    truncate_to_level,
)
from .errors import (
    CoaInfoError,
    CrossCheckFailure,
    CsvParseError,
    DimensionMismatch,
    DuplicateAccountError,
    DuplicateEventConflict,
    EmptyLedger,
    InputError,
    InternalCheckError,
    LevelOutOfRange,
    MalformedCode,
    NegativeBeyondTolerance,
    RowNotStochastic,
    SchemaMismatch,
    TooFewAccounts,
    ZeroOutputProbability,
)
from .ledger import (
    EventFrequencyTable,
    EventRow,
    Ledger,
    TransactionRecord,
    load_frequency_table_csv,
    load_ledger_csv,
    split_periods,
    tally_events,
)
from .measures import (
    MeasureSet,
    conditional_entropy,
    conditional_entropy_direct,
    conditional_entropy_vector,
    entropy,
    joint_entropy,
    measure_channel,
    mutual_information,
    mutual_information_direct,
    symmetric_uncertainty,
)

__version__ = "0.1.0"
