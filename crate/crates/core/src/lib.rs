pub mod automata;
pub mod codes;
pub mod corpus;
pub mod flowops;
pub mod karoubi;
pub mod pseudowords;
pub mod semigroups;
pub mod series;
pub mod shifts;
pub mod suites;
pub mod words;

/// Exact zeta series.
pub type ZetaSeries = series::PowerSeries<num_rational::BigRational>;
/// Floating-point series for quick estimates.
pub type ZetaSeriesF64 = series::PowerSeries<f64>;
/// Small exact series, exact while numerators and denominators fit in `i64`.
pub type ZetaSeriesRatio = series::PowerSeries<num_rational::Ratio<i64>>;
