//! Criteria for links, evaluated on a string-link representative of the
//! closure.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::diagram::StringLinkDiagram;
use crate::error::{Error, Result};
use crate::milnor::{link_invariants_from, mu_table, sequences, LinkInvariant};

/// `(Δ^{(n)}(I), μ̄^{(n)}(I))` for every non-repeated `I` of length `m`.
fn top_invariants(d: &StringLinkDiagram, n: u64) -> Result<Vec<LinkInvariant>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let m = d.component_count();
    let full: Vec<_> = sequences(m, m, true)
        .into_iter()
        .filter(|s| s.len() == m)
        .collect();
    if m < 2 {
        // Length-one sequences: Δ is the gcd of an empty set and μ vanishes.
        return Ok(full
            .into_iter()
            .map(|sequence| LinkInvariant {
                sequence,
                delta_n: BigInt::from(n),
                mu_bar_n: BigInt::zero(),
            })
            .collect());
    }
    let table = mu_table(d, m, true)?;
    full.iter()
        .map(|s| link_invariants_from(&table, s, n))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialityReport {
    pub trivial: bool,
    /// Every sequence with `Δ^{(n)} != n` or `μ̄^{(n)} != 0`.
    pub failures: Vec<LinkInvariant>,
}

/// Whether the closure of `d` is (2n+lh)-equivalent to the trivial link.
pub fn link_trivial_2n_lh(d: &StringLinkDiagram, n: u64) -> Result<TrivialityReport> {
    let n_big = BigInt::from(n);
    let failures: Vec<LinkInvariant> = top_invariants(d, n)?
        .into_iter()
        .filter(|inv| inv.delta_n != n_big || !inv.mu_bar_n.is_zero())
        .collect();
    Ok(TrivialityReport {
        trivial: failures.is_empty(),
        failures,
    })
}

/// Compares closures through `μ̄^{(n)}`; valid only when `Δ^{(n)} = n` on
/// every non-repeated sequence of length `m` for both links.
pub fn link_equivalent_2n_lh(a: &StringLinkDiagram, b: &StringLinkDiagram, n: u64) -> Result<bool> {
    if a.component_count() != b.component_count() {
        return Err(Error::ComponentMismatch {
            left: a.component_count(),
            right: b.component_count(),
        });
    }
    let n_big = BigInt::from(n);
    let ia = top_invariants(a, n)?;
    let ib = top_invariants(b, n)?;
    if let Some(bad) = ia.iter().chain(&ib).find(|inv| inv.delta_n != n_big) {
        return Err(Error::Inapplicable {
            sequence: bad.sequence.clone(),
            delta_n: bad.delta_n.clone(),
            n,
        });
    }
    Ok(ia.iter().zip(&ib).all(|(x, y)| x.mu_bar_n == y.mu_bar_n))
}
