use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::eta::EtaTable;
use super::wirtinger::{wirtinger, WirtingerData};
use crate::algebra::{Monomial, TruncatedSeries};
use crate::diagram::StringLinkDiagram;
use crate::error::{Error, Result};

/// Index sequence `I = j_1 ... j_k i`; the last index picks the longitude.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Sequence(Vec<usize>);

impl Sequence {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidArgument(
                "a sequence needs at least one index".into(),
            ));
        }
        if indices.contains(&0) {
            return Err(Error::InvalidArgument(
                "sequence indices are 1-based".into(),
            ));
        }
        Ok(Sequence(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("sequences are nonempty")
    }

    pub fn prefix(&self) -> &[usize] {
        &self.0[..self.0.len() - 1]
    }

    pub fn is_non_repeated(&self) -> bool {
        let mut seen = self.0.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn max_index(&self) -> usize {
        *self.0.iter().max().expect("sequences are nonempty")
    }

    fn check_range(&self, m: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i > m) {
            Some(&index) => Err(Error::IndexOutOfRange { index, max: m }),
            None => Ok(()),
        }
    }
}

impl TryFrom<Vec<usize>> for Sequence {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Sequence::new(v)
    }
}

impl From<Sequence> for Vec<usize> {
    fn from(s: Sequence) -> Self {
        s.0
    }
}

impl fmt::Display for Sequence {
    /// `123` when every index is a single digit, `1,10,2` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().all(|&i| i < 10) {
            ""
        } else {
            ","
        };
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let syntax = |position: usize, message: &str| Error::Syntax {
            position,
            message: message.to_string(),
        };
        let indices: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| {
                    p.trim()
                        .parse()
                        .map_err(|_| syntax(0, "expected comma-separated integers"))
                })
                .collect::<Result<_>>()?
        } else {
            s.char_indices()
                .map(|(pos, c)| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| syntax(pos, "expected a digit"))
                })
                .collect::<Result<_>>()?
        };
        Sequence::new(indices)
    }
}

/// Preferred longitudes of all components, exact up to `degree_bound`.
pub fn longitudes(d: &StringLinkDiagram, degree_bound: usize) -> Vec<TruncatedSeries> {
    let w = wirtinger(d);
    longitudes_from(&w, degree_bound)
}

fn longitudes_from(w: &WirtingerData, degree_bound: usize) -> Vec<TruncatedSeries> {
    // η_{d+1} is exact modulo the (d+1)-th lower central term, so its Magnus
    // expansion is exact through degree d.
    let table = EtaTable::compute(w, degree_bound + 1, degree_bound);
    (1..=w.component_count())
        .map(|i| table.preferred_longitude(w, i))
        .collect()
}

/// `E(λ_i)` computed at depth `q`, truncated at degree `q - 1` (the part
/// that is already exact).
pub fn longitude_series(
    d: &StringLinkDiagram,
    component: usize,
    q: usize,
) -> Result<TruncatedSeries> {
    if q < 2 {
        return Err(Error::InvalidArgument(
            "longitude depth must be at least 2".into(),
        ));
    }
    if component == 0 || component > d.component_count() {
        return Err(Error::IndexOutOfRange {
            index: component,
            max: d.component_count(),
        });
    }
    let w = wirtinger(d);
    let table = EtaTable::compute(&w, q, q - 1);
    Ok(table.preferred_longitude(&w, component))
}

/// `μ(I)`: the coefficient of `X_{j_1} ⋯ X_{j_k}` in `E(λ_i)` for
/// `I = j_1 ... j_k i`; zero for sequences of length one.
pub fn mu(d: &StringLinkDiagram, seq: &Sequence) -> Result<BigInt> {
    seq.check_range(d.component_count())?;
    if seq.len() == 1 {
        return Ok(BigInt::zero());
    }
    let lambda = longitude_series(d, seq.last(), seq.len())?;
    lambda.coefficient(&Monomial::new(seq.prefix()))
}

/// Finite table of μ-invariants, all sequences up to `max_length`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorTable {
    component_count: usize,
    max_length: usize,
    non_repeated_only: bool,
    entries: BTreeMap<Sequence, BigInt>,
}

impl MilnorTable {
    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn non_repeated_only(&self) -> bool {
        self.non_repeated_only
    }

    pub fn get(&self, seq: &Sequence) -> Option<&BigInt> {
        self.entries.get(seq)
    }

    pub fn value(&self, seq: &Sequence) -> Result<&BigInt> {
        self.entries
            .get(seq)
            .ok_or_else(|| Error::MissingEntry(seq.clone()))
    }

    /// Entries ordered by length, then lexicographically.
    pub fn entries(&self) -> Vec<(&Sequence, &BigInt)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
        v
    }

    pub fn nonzero(&self) -> Vec<(&Sequence, &BigInt)> {
        self.entries()
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `[{"sequence": [..], "value": ".."}, ...]`; values are strings so
    /// consumers never lose precision.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries()
                .into_iter()
                .map(
                    |(s, v)| serde_json::json!({ "sequence": s.indices(), "value": v.to_string() }),
                )
                .collect(),
        )
    }
}

/// All sequences over `1..=m` of length `1..=max_length`, optionally only
/// those with distinct indices; ordered by length then lexicographically.
pub fn sequences(m: usize, max_length: usize, non_repeated_only: bool) -> Vec<Sequence> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_length {
        let mut next = Vec::new();
        for prefix in &frontier {
            for i in 1..=m {
                if non_repeated_only && prefix.contains(&i) {
                    continue;
                }
                let mut s = prefix.clone();
                s.push(i);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned().map(Sequence));
        frontier = next;
    }
    out
}

pub fn mu_table(
    d: &StringLinkDiagram,
    max_length: usize,
    non_repeated_only: bool,
) -> Result<MilnorTable> {
    let m = d.component_count();
    if max_length < 2 {
        return Err(Error::InvalidArgument(
            "max_length must be at least 2".into(),
        ));
    }
    if non_repeated_only && max_length > m {
        return Err(Error::InvalidArgument(format!(
            "non-repeated sequences have length at most {m}"
        )));
    }
    let lambdas = longitudes(d, max_length - 1);
    let mut entries = BTreeMap::new();
    for seq in sequences(m, max_length, non_repeated_only) {
        let value = if seq.len() == 1 {
            BigInt::zero()
        } else {
            lambdas[seq.last() - 1].coefficient(&Monomial::new(seq.prefix()))?
        };
        entries.insert(seq, value);
    }
    Ok(MilnorTable {
        component_count: m,
        max_length,
        non_repeated_only,
        entries,
    })
}

/// Values of `μ` on selected sequences, sharing one longitude computation.
pub fn mu_values(d: &StringLinkDiagram, seqs: &[Sequence]) -> Result<Vec<BigInt>> {
    let m = d.component_count();
    let longest = seqs.iter().map(Sequence::len).max().unwrap_or(1);
    for s in seqs {
        s.check_range(m)?;
    }
    if longest < 2 {
        return Ok(vec![BigInt::zero(); seqs.len()]);
    }
    let lambdas = longitudes(d, longest - 1);
    seqs.iter()
        .map(|s| {
            if s.len() == 1 {
                Ok(BigInt::zero())
            } else {
                lambdas[s.last() - 1].coefficient(&Monomial::new(s.prefix()))
            }
        })
        .collect()
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// `r mod g` in `[0, g)`; modulo zero returns `r` itself.
pub fn residue(r: &BigInt, g: &BigInt) -> BigInt {
    if g.is_zero() {
        r.clone()
    } else {
        r.mod_floor(&g.abs())
    }
}

/// Sequences obtained from `I` by deleting at least one index and rotating
/// what remains cyclically.
pub fn delta_sequences(seq: &Sequence) -> Vec<Sequence> {
    let n = seq.len();
    let mut out = std::collections::BTreeSet::new();
    for mask in 1u64..(1u64 << n) - 1 {
        let kept: Vec<usize> = (0..n)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| seq.0[b])
            .collect();
        for r in 0..kept.len() {
            let mut rotated = kept[r..].to_vec();
            rotated.extend_from_slice(&kept[..r]);
            out.insert(Sequence(rotated));
        }
    }
    out.into_iter().collect()
}

/// `Δ(I)`: gcd of `μ(J)` over the sequences of [`delta_sequences`].
pub fn delta(table: &MilnorTable, seq: &Sequence) -> Result<BigInt> {
    if seq.len() > table.max_length {
        return Err(Error::MissingEntry(seq.clone()));
    }
    let subs = delta_sequences(seq);
    let values = subs
        .iter()
        .map(|j| table.value(j))
        .collect::<Result<Vec<_>>>()?;
    Ok(gcd_all(values))
}

/// Closure invariants `(Δ^{(n)}(I), μ̄^{(n)}(I))` of the link obtained by
/// closing `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkInvariant {
    pub sequence: Sequence,
    #[serde(serialize_with = "decimal")]
    pub delta_n: BigInt,
    #[serde(serialize_with = "decimal")]
    pub mu_bar_n: BigInt,
}

pub(crate) fn decimal<S: serde::Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn link_invariants(d: &StringLinkDiagram, seq: &Sequence, n: u64) -> Result<LinkInvariant> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    seq.check_range(d.component_count())?;
    let table = mu_table(d, seq.len().max(2), seq.is_non_repeated())?;
    link_invariants_from(&table, seq, n)
}

pub fn link_invariants_from(table: &MilnorTable, seq: &Sequence, n: u64) -> Result<LinkInvariant> {
    let delta = delta(table, seq)?;
    let delta_n = delta.gcd(&BigInt::from(n));
    let mu = table.value(seq)?;
    Ok(LinkInvariant {
        sequence: seq.clone(),
        mu_bar_n: residue(mu, &delta_n),
        delta_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Sequence {
        s.parse().unwrap()
    }

    #[test]
    fn sequence_parsing_and_display() {
        assert_eq!(seq("112").indices(), &[1, 1, 2]);
        assert_eq!(seq("1,10,2").indices(), &[1, 10, 2]);
        assert_eq!(seq("1,10,2").to_string(), "1,10,2");
        assert_eq!(seq("312").to_string(), "312");
        assert!("".parse::<Sequence>().is_err());
        assert!("1a".parse::<Sequence>().is_err());
        assert!("102".parse::<Sequence>().is_err());
        assert!(seq("123").is_non_repeated());
        assert!(!seq("121").is_non_repeated());
    }

    #[test]
    fn sequence_enumeration_counts() {
        assert_eq!(sequences(3, 3, false).len(), 3 + 9 + 27);
        assert_eq!(sequences(3, 3, true).len(), 3 + 6 + 6);
        assert_eq!(sequences(2, 2, true)[2], seq("12"));
    }

    #[test]
    fn delta_sequence_enumeration() {
        let subs: Vec<String> = delta_sequences(&seq("112"))
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(subs, vec!["1", "11", "12", "2", "21"]);
        let subs = delta_sequences(&seq("123"));
        // 3 singletons, 3 pairs each with 2 rotations.
        assert_eq!(subs.len(), 9);
        assert!(delta_sequences(&seq("1")).is_empty());
    }

    #[test]
    fn residues() {
        assert_eq!(
            residue(&BigInt::from(-3), &BigInt::from(4)),
            BigInt::from(1)
        );
        assert_eq!(residue(&BigInt::from(7), &BigInt::zero()), BigInt::from(7));
        assert_eq!(gcd_all(&[]), BigInt::zero());
        assert_eq!(
            gcd_all(&[BigInt::zero(), BigInt::from(6), BigInt::from(-4)]),
            BigInt::from(2)
        );
    }

    #[test]
    fn link_invariant_json() {
        let inv = LinkInvariant {
            sequence: seq("123"),
            delta_n: BigInt::from(2),
            mu_bar_n: BigInt::from(-1),
        };
        assert_eq!(
            serde_json::to_value(&inv).unwrap(),
            serde_json::json!({"sequence": [1, 2, 3], "delta_n": "2", "mu_bar_n": "-1"})
        );
    }
}
