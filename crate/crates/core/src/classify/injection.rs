use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::milnor::Sequence;

/// Injection `π: {1..k} → {1..m}` with `π(i) < π(k-1) < π(k)` for `i <= k-2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Injection(Vec<usize>);

impl Injection {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let invalid = |reason: &str| {
            Err(Error::InvalidInjection {
                values: values.clone(),
                reason: reason.to_string(),
            })
        };
        let k = values.len();
        if k < 2 {
            return invalid("needs at least two values");
        }
        if values.contains(&0) {
            return invalid("values are 1-based");
        }
        let mut sorted = values.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return invalid("values must be distinct");
        }
        if values[k - 2] > values[k - 1] {
            return invalid("π(k-1) must be smaller than π(k)");
        }
        if values[..k - 2].iter().any(|&v| v > values[k - 2]) {
            return invalid("π(i) must be smaller than π(k-1) for i <= k-2");
        }
        Ok(Injection(values))
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn max_value(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    /// The carrier component `π(k)` of the generator `V_π`.
    pub fn carrier(&self) -> usize {
        self.max_value()
    }

    /// `π(1) π(2) ... π(k)`.
    pub fn sequence(&self) -> Sequence {
        Sequence::new(self.0.clone()).expect("injections are nonempty")
    }
}

impl TryFrom<Vec<usize>> for Injection {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Injection::new(v)
    }
}

impl From<Injection> for Vec<usize> {
    fn from(p: Injection) -> Self {
        p.0
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `F_k` for `m` components, ordered by `(π(k), π(k-1), π(1..k-2))`.
#[allow(non_snake_case)]
pub fn enumerate_F(m: usize, k: usize) -> Result<Vec<Injection>> {
    if k < 2 || k > m {
        return Err(Error::InvalidArgument(format!(
            "F_k needs 2 <= k <= m, got k={k}, m={m}"
        )));
    }
    let mut out = Vec::new();
    for top in k..=m {
        for second in (k - 1)..top {
            let mut prefix = Vec::with_capacity(k);
            arrangements(second - 1, k - 2, &mut prefix, &mut |head| {
                let mut values = head.to_vec();
                values.push(second);
                values.push(top);
                out.push(Injection(values));
            });
        }
    }
    Ok(out)
}

/// Calls `f` on every ordered selection of `len` distinct values from
/// `1..=below`, in lexicographic order.
fn arrangements(below: usize, len: usize, prefix: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if prefix.len() == len {
        f(prefix);
        return;
    }
    for v in 1..=below {
        if !prefix.contains(&v) {
            prefix.push(v);
            arrangements(below, len, prefix, f);
            prefix.pop();
        }
    }
}

/// Every `F_k`, `k = 2..=m`, concatenated in increasing `k`.
pub fn canonical_injections(m: usize) -> Vec<Injection> {
    (2..=m)
        .flat_map(|k| enumerate_F(m, k).expect("k is in range"))
        .collect()
}

/// `s_m = Σ_{r=2}^{m} (r-2)! C(m, r)`.
pub fn s_value(m: usize) -> u64 {
    (2..=m as u64)
        .map(|r| factorial(r - 2) * binomial(m as u64, r))
        .sum()
}

/// `n^{s_m}`.
pub fn group_order(m: usize, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let s = u32::try_from(s_value(m))
        .map_err(|_| Error::InvalidArgument(format!("s_{m} is too large")))?;
    Ok(num_traits::pow::Pow::pow(BigInt::from(n), s))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
