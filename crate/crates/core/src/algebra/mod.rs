//! Free-group words and their Magnus expansions.

mod series;
mod word;

pub use series::{
    magnus_expand, series_coefficient, series_mod, Monomial, ResidueSeries, TruncatedSeries,
};
pub use word::{word_inverse, word_multiply, GroupWord, Letter};
