use crate::diagram::{ArcId, StringLinkDiagram};

/// Signed Wirtinger generator `a_arc^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArcLetter {
    pub arc: ArcId,
    pub exponent: i8,
}

/// Wirtinger relations of a diagram in the form
/// `a_{i,j+1} = u_{ij}^{-1} a_{ij} u_{ij}` with `u_{ij} = b^ε`, where `b` is
/// the over-arc and `ε` the sign of the crossing ending arc `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WirtingerData {
    u: Vec<Vec<ArcLetter>>,
    self_writhe: Vec<i64>,
}

impl WirtingerData {
    pub fn component_count(&self) -> usize {
        self.u.len()
    }

    pub fn arc_count(&self, component: usize) -> usize {
        self.u[component - 1].len() + 1
    }

    /// `u_{i1}, ..., u_{i,r(i)-1}`.
    pub fn u(&self, component: usize) -> &[ArcLetter] {
        &self.u[component - 1]
    }

    /// `v_{ij} = u_{i1} ⋯ u_{ij}` as an unreduced letter sequence.
    pub fn v(&self, component: usize, j: usize) -> &[ArcLetter] {
        &self.u[component - 1][..j]
    }

    pub fn self_writhe(&self, component: usize) -> i64 {
        self.self_writhe[component - 1]
    }
}

pub fn wirtinger(d: &StringLinkDiagram) -> WirtingerData {
    let crossings = d.crossings();
    let u = (1..=d.component_count())
        .map(|i| {
            d.under_crossings(i)
                .into_iter()
                .map(|c| ArcLetter {
                    arc: crossings[c].over_arc,
                    exponent: crossings[c].sign,
                })
                .collect()
        })
        .collect();
    WirtingerData {
        u,
        self_writhe: d.self_writhes(),
    }
}
