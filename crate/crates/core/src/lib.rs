//! Generalized Novelli–Pak–Stoyanovskii sorting on Young tableaux.
//!
//! The crate sorts fillings of a Young diagram with the jeu-de-taquin style
//! algorithm driven by an arbitrary standard tableau, traces every exchange,
//! and aggregates exact statistics (complexity, exchange numbers, drop
//! functions, signed exit numbers) over all fillings of a shape. The
//! [`theory`] module recomputes those statistics from recursions and closed
//! forms so the two routes can be compared.
//!
//! Counting code is generic over the exact integer type ([`scalar::Count`]);
//! the aliases below fix it to `BigInt`, with `i64` variants for speed.

pub mod checks;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod nps;
pub mod partition;
pub mod report;
pub mod scalar;
pub mod stats;
pub mod tableau;
pub mod theory;
pub mod verify;

pub use error::{Error, Result};
pub use nps::{beta, drop_records, find_active_cell, sort, step, DropRecord, SortTrace, Sorter, Transposition};
pub use partition::{
    alpha, cell_stats, conjugate, count_hook_functions, dropping_zone, neighbors, syt_count, Cell, CellStats,
    HookFunction, Neighbors, Partition,
};
pub use stats::{
    aggregate, aggregate_exhaustive, aggregate_sampled, complexity, complexity_from_beta, complexity_from_exchange,
    is_uniform, Aggregator, Mode, Tally,
};
pub use tableau::{all_strip_orders, column_order, conjugate_tableau, row_order, strip_order, StripChoice, Tableau};

/// Arbitrary-precision integer used by the default aliases.
pub type Int = num_bigint::BigInt;
/// Exact rational over [`Int`].
pub type Rational = num_rational::Ratio<Int>;

pub type Aggregate = stats::Aggregate<Int>;
pub type ExchangeTables = stats::ExchangeTables<Int>;
pub type DistributionVector = stats::DistributionVector<Int>;
pub type HeightTotals = stats::HeightTotals<Int>;
pub type DropTable = stats::DropTable<Int>;
pub type SignedExitTable = stats::SignedExitTable<Int>;
pub type FischerMatrix = theory::FischerMatrix<Int>;
pub type TheoryReport = theory::TheoryReport<Int>;

/// `i64` counterparts, exact for every shape that can be enumerated.
pub type Aggregate64 = stats::Aggregate<i64>;
pub type Rational64 = num_rational::Ratio<i64>;
