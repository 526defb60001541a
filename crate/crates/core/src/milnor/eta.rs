//! Milnor's homomorphisms `η_q`, evaluated on Magnus expansions.
//!
//! `η_1(a_ij) = a_i1`, `η_{q+1}(a_i1) = a_i1` and
//! `η_{q+1}(a_{i,j+1}) = η_q(v_ij^{-1} a_i1 v_ij)`. Iterating on words makes
//! them grow exponentially in `q`, so each arc instead carries the truncated
//! series `E(φ η_q(a_ij))` together with the series of its inverse; the
//! recursion only ever multiplies those.

use super::wirtinger::{ArcLetter, WirtingerData};
use crate::algebra::TruncatedSeries;
use crate::diagram::ArcId;

#[derive(Debug, Clone)]
struct ArcImage {
    forward: TruncatedSeries,
    inverse: TruncatedSeries,
}

/// `E(φ η_q(a_ij))` for every arc, truncated at `degree_bound`.
#[derive(Debug, Clone)]
pub struct EtaTable {
    depth: usize,
    degree_bound: usize,
    images: Vec<Vec<ArcImage>>,
}

impl EtaTable {
    /// Runs the recursion `depth - 1` times from `η_1`. Coefficients of
    /// degree `< depth` are exact; higher ones are still settling.
    pub fn compute(w: &WirtingerData, depth: usize, degree_bound: usize) -> Self {
        assert!(depth >= 1, "η_q is defined for q >= 1");
        let m = w.component_count();
        let meridians: Vec<ArcImage> = (1..=m)
            .map(|i| ArcImage {
                forward: TruncatedSeries::meridian(i, degree_bound),
                inverse: TruncatedSeries::meridian_inverse(i, degree_bound),
            })
            .collect();
        let mut images: Vec<Vec<ArcImage>> = (1..=m)
            .map(|i| vec![meridians[i - 1].clone(); w.arc_count(i)])
            .collect();

        for _ in 1..depth {
            let mut next = Vec::with_capacity(m);
            for i in 1..=m {
                let base = &meridians[i - 1];
                let mut column = Vec::with_capacity(w.arc_count(i));
                column.push(base.clone());
                let mut v = TruncatedSeries::one(degree_bound);
                let mut v_inv = TruncatedSeries::one(degree_bound);
                for letter in w.u(i) {
                    let (f, g) = letter_images(&images, letter);
                    v = &v * f;
                    v_inv = g * &v_inv;
                    column.push(ArcImage {
                        forward: conjugate(&v_inv, &base.forward, &v),
                        inverse: conjugate(&v_inv, &base.inverse, &v),
                    });
                }
                next.push(column);
            }
            images = next;
        }
        EtaTable {
            depth,
            degree_bound,
            images,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn entry(&self, arc: ArcId) -> &TruncatedSeries {
        &self.images[arc.component - 1][arc.index - 1].forward
    }

    pub fn inverse_entry(&self, arc: ArcId) -> &TruncatedSeries {
        &self.images[arc.component - 1][arc.index - 1].inverse
    }

    /// `E(φ η_q(v_{i,r(i)-1}))`.
    pub fn longitude_word(&self, w: &WirtingerData, component: usize) -> TruncatedSeries {
        let mut v = TruncatedSeries::one(self.degree_bound);
        for letter in w.u(component) {
            let (f, _) = letter_images(&self.images, letter);
            v = &v * f;
        }
        v
    }

    /// Preferred longitude `E(φ η_q(a_i1^s v_{i,r(i)-1}))` with
    /// `s = -self_writhe(i)`, which kills the framing contribution.
    pub fn preferred_longitude(&self, w: &WirtingerData, component: usize) -> TruncatedSeries {
        let framing = TruncatedSeries::meridian_power(
            component,
            -w.self_writhe(component),
            self.degree_bound,
        );
        &framing * &self.longitude_word(w, component)
    }
}

fn letter_images<'a>(
    images: &'a [Vec<ArcImage>],
    letter: &ArcLetter,
) -> (&'a TruncatedSeries, &'a TruncatedSeries) {
    let img = &images[letter.arc.component - 1][letter.arc.index - 1];
    if letter.exponent > 0 {
        (&img.forward, &img.inverse)
    } else {
        (&img.inverse, &img.forward)
    }
}

/// `left · middle · right` where `middle = 1 + rest`; saves the product of
/// `left · right`, which is 1.
fn conjugate(
    left: &TruncatedSeries,
    middle: &TruncatedSeries,
    right: &TruncatedSeries,
) -> TruncatedSeries {
    let mut rest = middle.clone();
    rest.add_term(crate::algebra::Monomial::one(), -middle.constant());
    let mut out = &(left * &rest) * right;
    out.add_term(crate::algebra::Monomial::one(), middle.constant());
    out
}

/// `η_q` images: `q - 1` applications of the recursion, series kept to
/// degree `q`.
pub fn eta_table(w: &WirtingerData, q: usize) -> EtaTable {
    EtaTable::compute(w, q, q)
}
