use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::generators::{generator_braid, generator_matrix};
use super::injection::{canonical_injections, enumerate_F, group_order, Injection};
use crate::diagram::{braid_to_diagram, BraidWord, StringLinkDiagram};
use crate::error::{Error, Result};
use crate::milnor::{mu_values, Sequence};

/// Largest group [`enumerate_classes`] will list.
pub const ENUMERATION_LIMIT: u64 = 10_000;

/// Exponents `y_π ∈ [0, n)` for every `π ∈ F_2 ∪ … ∪ F_m`, in canonical
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    m: usize,
    n: u64,
    exponents: Vec<(Injection, u64)>,
}

impl CanonicalForm {
    pub fn identity(m: usize, n: u64) -> Result<Self> {
        Self::from_exponents(m, n, vec![0; canonical_injections(m).len()])
    }

    /// Exponents listed in canonical injection order.
    pub fn from_exponents(m: usize, n: u64, ys: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let injections = canonical_injections(m);
        if ys.len() != injections.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} exponents for m = {m}, got {}",
                injections.len(),
                ys.len()
            )));
        }
        if let Some(bad) = ys.iter().find(|&&y| y >= n) {
            return Err(Error::InvalidArgument(format!(
                "exponent {bad} is not below n = {n}"
            )));
        }
        Ok(CanonicalForm {
            m,
            n,
            exponents: injections.into_iter().zip(ys).collect(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn exponents(&self) -> &[(Injection, u64)] {
        &self.exponents
    }

    pub fn exponent(&self, pi: &Injection) -> Option<u64> {
        self.exponents
            .iter()
            .find(|(p, _)| p == pi)
            .map(|&(_, y)| y)
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&(_, y)| y == 0)
    }

    /// `Π_π V_π^{y_π}`, lower levels first, each level in canonical order.
    pub fn representative_braid(&self) -> Result<BraidWord> {
        let mut braid = BraidWord::trivial(self.m);
        for (pi, y) in &self.exponents {
            if *y > 0 {
                braid = braid.then(&generator_braid(pi, self.m, *y as i64)?)?;
            }
        }
        Ok(braid)
    }

    pub fn representative(&self) -> Result<StringLinkDiagram> {
        braid_to_diagram(&self.representative_braid()?)
    }

    fn check_compatible(&self, other: &CanonicalForm) -> Result<()> {
        if self.m != other.m || self.n != other.n {
            return Err(Error::FormMismatch {
                m1: self.m,
                n1: self.n,
                m2: other.m,
                n2: other.n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} n={}:", self.m, self.n)?;
        for (pi, y) in &self.exponents {
            write!(f, " {pi}^{y}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ExponentRecord {
    pi: Injection,
    y: u64,
}

#[derive(Serialize, Deserialize)]
struct FormRecord {
    m: usize,
    n: u64,
    exponents: Vec<ExponentRecord>,
}

impl Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        FormRecord {
            m: self.m,
            n: self.n,
            exponents: self
                .exponents
                .iter()
                .map(|(pi, y)| ExponentRecord {
                    pi: pi.clone(),
                    y: *y,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let record = FormRecord::deserialize(deserializer)?;
        let expected = canonical_injections(record.m);
        let listed: Vec<Injection> = record.exponents.iter().map(|e| e.pi.clone()).collect();
        if listed != expected {
            return Err(serde::de::Error::custom(
                "injections are not in canonical order",
            ));
        }
        CanonicalForm::from_exponents(
            record.m,
            record.n,
            record.exponents.iter().map(|e| e.y).collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

/// Sequences `π(1) … π(k)` for `π ∈ F_2 ∪ … ∪ F_m`, in canonical order.
pub fn canonical_sequences(m: usize) -> Vec<Sequence> {
    canonical_injections(m)
        .iter()
        .map(Injection::sequence)
        .collect()
}

/// Canonical form of `d` modulo 2n-moves and link-homotopy.
pub fn canonical_form(d: &StringLinkDiagram, n: u64) -> Result<CanonicalForm> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let m = d.component_count();
    let all_seqs = canonical_sequences(m);
    let target = mu_values(d, &all_seqs)?;
    let modulus = BigInt::from(n);

    let mut partial = BraidWord::trivial(m);
    let mut ys = Vec::with_capacity(all_seqs.len());
    let mut offset = 0;
    for k in 1..m {
        let level = enumerate_F(m, k + 1)?;
        let seqs: Vec<Sequence> = level.iter().map(Injection::sequence).collect();
        let matrix = generator_matrix(m, k)?;
        let current = mu_values(&braid_to_diagram(&partial)?, &seqs)?;
        let defect: Vec<BigInt> = target[offset..offset + seqs.len()]
            .iter()
            .zip(&current)
            .map(|(t, c)| t - c)
            .collect();
        let x = matrix.solve(&defect)?;
        for (pi, xi) in level.iter().zip(&x) {
            let y = xi.mod_floor(&modulus).to_u64().expect("residue below n");
            if y > 0 {
                partial = partial.then(&generator_braid(pi, m, y as i64)?)?;
            }
            ys.push(y);
        }
        offset += seqs.len();
    }

    let form = CanonicalForm::from_exponents(m, n, ys)?;
    let reached = mu_values(&braid_to_diagram(&partial)?, &all_seqs)?;
    for ((s, a), b) in all_seqs.iter().zip(&target).zip(&reached) {
        if !(a - b).mod_floor(&modulus).is_zero() {
            return Err(Error::Inconsistency(format!(
                "representative misses μ({s}) mod {n}: {a} vs {b}"
            )));
        }
    }
    Ok(form)
}

/// A sequence on which two string links differ modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub sequence: Sequence,
    #[serde(serialize_with = "crate::milnor::invariants::decimal")]
    pub mu_a: BigInt,
    #[serde(serialize_with = "crate::milnor::invariants::decimal")]
    pub mu_b: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub form_a: CanonicalForm,
    pub form_b: CanonicalForm,
    pub witness: Option<Witness>,
}

/// Decides (2n+lh)-equivalence by comparing canonical forms.
pub fn equivalent_2n_lh(
    a: &StringLinkDiagram,
    b: &StringLinkDiagram,
    n: u64,
) -> Result<Equivalence> {
    if a.component_count() != b.component_count() {
        return Err(Error::ComponentMismatch {
            left: a.component_count(),
            right: b.component_count(),
        });
    }
    let form_a = canonical_form(a, n)?;
    let form_b = canonical_form(b, n)?;
    if form_a == form_b {
        return Ok(Equivalence {
            equivalent: true,
            form_a,
            form_b,
            witness: None,
        });
    }
    let seqs = canonical_sequences(a.component_count());
    let mu_a = mu_values(a, &seqs)?;
    let mu_b = mu_values(b, &seqs)?;
    let modulus = BigInt::from(n);
    let witness = seqs
        .into_iter()
        .zip(mu_a.into_iter().zip(mu_b))
        .find(|(_, (x, y))| !(x - y).mod_floor(&modulus).is_zero())
        .map(|(sequence, (mu_a, mu_b))| Witness {
            sequence,
            mu_a,
            mu_b,
        })
        .ok_or_else(|| {
            Error::Inconsistency("canonical forms differ but no sequence separates them".into())
        })?;
    Ok(Equivalence {
        equivalent: false,
        form_a,
        form_b,
        witness: Some(witness),
    })
}

pub fn class_multiply(f: &CanonicalForm, g: &CanonicalForm) -> Result<CanonicalForm> {
    f.check_compatible(g)?;
    let product = f.representative_braid()?.then(&g.representative_braid()?)?;
    canonical_form(&braid_to_diagram(&product)?, f.n)
}

pub fn class_inverse(f: &CanonicalForm) -> Result<CanonicalForm> {
    canonical_form(
        &braid_to_diagram(&f.representative_braid()?.inverse())?,
        f.n,
    )
}

/// Smallest `r >= 1` with `f^r` the identity.
pub fn class_order(f: &CanonicalForm) -> Result<u64> {
    let mut power = f.clone();
    let mut r = 1;
    while !power.is_identity() {
        power = class_multiply(&power, f)?;
        r += 1;
    }
    Ok(r)
}

/// Every class for `(m, n)`, as exponent tuples in lexicographic order.
pub fn enumerate_classes(m: usize, n: u64) -> Result<Vec<CanonicalForm>> {
    let order = group_order(m, n)?;
    if order > BigInt::from(ENUMERATION_LIMIT) {
        return Err(Error::InvalidArgument(format!(
            "group of order {order} exceeds the enumeration limit {ENUMERATION_LIMIT}"
        )));
    }
    let len = canonical_injections(m).len();
    let total = order.to_u64().expect("below the limit");
    (0..total)
        .map(|mut index| {
            let mut ys = vec![0; len];
            for slot in ys.iter_mut().rev() {
                *slot = index % n;
                index /= n;
            }
            CanonicalForm::from_exponents(m, n, ys)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupWord;
    use crate::diagram::{parse_braid, winding_to_diagram, WindingWord};

    fn braid(s: &str) -> StringLinkDiagram {
        braid_to_diagram(&parse_braid(s).unwrap()).unwrap()
    }

    fn borromean() -> StringLinkDiagram {
        let w = GroupWord::generator(1).commutator(&GroupWord::generator(2));
        winding_to_diagram(&WindingWord::new(3, w).unwrap(), 3).unwrap()
    }

    #[test]
    fn trivial_has_zero_exponents() {
        for n in 1..4 {
            let f = canonical_form(&StringLinkDiagram::trivial(3), n).unwrap();
            assert!(f.is_identity());
            assert_eq!(f.exponents().len(), 4);
        }
    }

    #[test]
    fn full_twists_reduce_mod_n() {
        let f = canonical_form(&braid("m=2: s1^8"), 3).unwrap();
        assert_eq!(f.exponents()[0].1, 1);
        let f = canonical_form(&braid("m=2: s1^-2"), 5).unwrap();
        assert_eq!(f.exponents()[0].1, 4);
    }

    #[test]
    fn borromean_form() {
        let f = canonical_form(&borromean(), 2).unwrap();
        let ys: Vec<u64> = f.exponents().iter().map(|e| e.1).collect();
        assert_eq!(ys, vec![0, 0, 0, 1]);
    }

    #[test]
    fn equivalence_with_witness() {
        let e = equivalent_2n_lh(&braid("m=2: s1^4"), &braid("m=2:"), 2).unwrap();
        assert!(e.equivalent);
        let e = equivalent_2n_lh(&borromean(), &StringLinkDiagram::trivial(3), 2).unwrap();
        assert!(!e.equivalent);
        assert_eq!(e.witness.unwrap().sequence.to_string(), "123");
        assert!(equivalent_2n_lh(&braid("m=2:"), &braid("m=3:"), 2).is_err());
    }

    #[test]
    fn group_operations_on_two_components() {
        let one = CanonicalForm::from_exponents(2, 3, vec![1]).unwrap();
        let two = class_multiply(&one, &one).unwrap();
        assert_eq!(two.exponents()[0].1, 2);
        let f = CanonicalForm::from_exponents(2, 5, vec![2]).unwrap();
        assert_eq!(class_inverse(&f).unwrap().exponents()[0].1, 3);
        assert_eq!(class_order(&f).unwrap(), 5);
        let id = CanonicalForm::identity(2, 5).unwrap();
        assert_eq!(class_multiply(&f, &id).unwrap(), f);
        assert!(class_multiply(&f, &one).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = CanonicalForm::from_exponents(3, 2, vec![1, 0, 1, 1]).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(
            text,
            r#"{"m":3,"n":2,"exponents":[{"pi":[1,2],"y":1},{"pi":[1,3],"y":0},{"pi":[2,3],"y":1},{"pi":[1,2,3],"y":1}]}"#
        );
        let back: CanonicalForm = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert!(
            serde_json::from_str::<CanonicalForm>(&text.replace("\"y\":1}]", "\"y\":2}]")).is_err()
        );
    }

    #[test]
    fn enumeration_size() {
        assert_eq!(enumerate_classes(3, 2).unwrap().len(), 16);
        assert_eq!(enumerate_classes(2, 6).unwrap().len(), 6);
        assert!(enumerate_classes(4, 3).is_err());
    }
}
