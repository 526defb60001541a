//! Milnor's algorithm and μ-invariant tables.

mod eta;
pub(crate) mod invariants;
mod wirtinger;

pub use eta::{eta_table, EtaTable};
pub use invariants::{
    delta, delta_sequences, gcd_all, link_invariants, link_invariants_from, longitude_series,
    longitudes, mu, mu_table, mu_values, residue, sequences, LinkInvariant, MilnorTable, Sequence,
};
pub use wirtinger::{wirtinger, ArcLetter, WirtingerData};
