use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::injection::{enumerate_F, Injection};
use crate::algebra::GroupWord;
use crate::diagram::{braid_to_diagram, winding_braid, BraidWord, StringLinkDiagram, WindingWord};
use crate::error::{Error, Result};
use crate::milnor::{mu_values, Sequence};

/// `[[…[α_{π(k-1)}, α_{π(k-2)}], …], α_{π(1)}]`, inverted when `k` is odd.
///
/// The only monomial ending in `X_{π(k-1)}` in its Magnus expansion is
/// `X_{π(1)} ⋯ X_{π(k-1)}`, with coefficient `+1` after the sign fix, so
/// generator matrices come out as the identity.
pub fn generator_word(pi: &Injection) -> GroupWord {
    let v = pi.values();
    let k = v.len();
    let word = v[..k - 2]
        .iter()
        .rev()
        .fold(GroupWord::generator(v[k - 2]), |acc, &j| {
            acc.commutator(&GroupWord::generator(j))
        });
    if k % 2 == 1 {
        word.inverse()
    } else {
        word
    }
}

fn check_fits(pi: &Injection, m: usize) -> Result<()> {
    if pi.max_value() > m {
        return Err(Error::InvalidInjection {
            values: pi.values().to_vec(),
            reason: format!("values exceed m = {m}"),
        });
    }
    Ok(())
}

/// `V_π^exponent` as a pure braid: carrier `π(k)` wound by the generator
/// word raised to `exponent`.
pub fn generator_braid(pi: &Injection, m: usize, exponent: i64) -> Result<BraidWord> {
    check_fits(pi, m)?;
    let word = generator_word(pi).pow(exponent);
    winding_braid(&WindingWord::new(pi.carrier(), word)?, m)
}

#[allow(non_snake_case)]
pub fn generator_V(pi: &Injection, m: usize) -> Result<StringLinkDiagram> {
    braid_to_diagram(&generator_braid(pi, m, 1)?)
}

/// `M[π'][π] = μ_{V_π}(π'(1) … π'(k+1))` over `π, π' ∈ F_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    m: usize,
    k: usize,
    injections: Vec<Injection>,
    entries: Vec<Vec<BigInt>>,
}

impl GeneratorMatrix {
    /// Computes the matrix and checks `|det| = 1`.
    pub fn compute(m: usize, k: usize) -> Result<Self> {
        if k == 0 || k + 1 > m {
            return Err(Error::InvalidArgument(format!(
                "generator matrices need 1 <= k <= m-1, got k={k}, m={m}"
            )));
        }
        let injections = enumerate_F(m, k + 1)?;
        let seqs: Vec<Sequence> = injections.iter().map(Injection::sequence).collect();
        let mut entries = vec![vec![BigInt::zero(); injections.len()]; injections.len()];
        for (col, pi) in injections.iter().enumerate() {
            let values = mu_values(&generator_V(pi, m)?, &seqs)?;
            for (row, v) in values.into_iter().enumerate() {
                entries[row][col] = v;
            }
        }
        Self::from_parts(m, k, injections, entries)
    }

    fn from_parts(
        m: usize,
        k: usize,
        injections: Vec<Injection>,
        entries: Vec<Vec<BigInt>>,
    ) -> Result<Self> {
        let matrix = GeneratorMatrix {
            m,
            k,
            injections,
            entries,
        };
        let det = matrix.determinant();
        if det.abs() != BigInt::one() {
            return Err(Error::Inconsistency(format!(
                "generator matrix for m={m}, k={k} has determinant {det}"
            )));
        }
        Ok(matrix)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn injections(&self) -> &[Injection] {
        &self.injections
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn determinant(&self) -> BigInt {
        let mut a = self.entries.clone();
        let mut rhs = vec![BigInt::zero(); a.len()];
        triangularize(&mut a, &mut rhs)
    }

    /// The unique integer `x` with `M x = b`.
    pub fn solve(&self, b: &[BigInt]) -> Result<Vec<BigInt>> {
        if b.len() != self.size() {
            return Err(Error::InvalidArgument(format!(
                "right-hand side has {} entries, matrix has {}",
                b.len(),
                self.size()
            )));
        }
        let mut a = self.entries.clone();
        let mut rhs = b.to_vec();
        let det = triangularize(&mut a, &mut rhs);
        if det.abs() != BigInt::one() {
            return Err(Error::Inconsistency(format!(
                "determinant {det} is not a unit"
            )));
        }
        let n = a.len();
        let mut x = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let mut acc = rhs[i].clone();
            for j in i + 1..n {
                acc -= &a[i][j] * &x[j];
            }
            // Diagonal entries of a unimodular triangular matrix are ±1.
            x[i] = acc * &a[i][i];
        }
        Ok(x)
    }
}

/// Integer row reduction to upper-triangular form using only swaps and
/// integer row additions, applied to `rhs` alongside. Returns the
/// determinant.
fn triangularize(a: &mut [Vec<BigInt>], rhs: &mut [BigInt]) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    for col in 0..n {
        loop {
            let pivot = (col..n)
                .filter(|&r| !a[r][col].is_zero())
                .min_by(|&r, &s| a[r][col].abs().cmp(&a[s][col].abs()));
            let Some(p) = pivot else {
                return BigInt::zero();
            };
            if p != col {
                a.swap(p, col);
                rhs.swap(p, col);
                sign = -sign;
            }
            let mut done = true;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let q = a[r][col].div_floor(&a[col][col]);
                let (top, bottom) = a.split_at_mut(r);
                for (target, source) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *target -= &q * source;
                }
                let delta = &q * &rhs[col];
                rhs[r] -= delta;
                if !a[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
    }
    (0..n).fold(sign, |acc, i| acc * &a[i][i])
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    m: usize,
    k: usize,
    injections: Vec<Injection>,
    entries: Vec<Vec<String>>,
}

const CACHE_VERSION: u32 = 1;

type MatrixMap = BTreeMap<(usize, usize), Arc<GeneratorMatrix>>;

fn memory_cache() -> &'static Mutex<MatrixMap> {
    static CACHE: OnceLock<Mutex<MatrixMap>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

fn cache_dir() -> &'static Mutex<Option<PathBuf>> {
    static DIR: OnceLock<Mutex<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(|| Mutex::new(None))
}

/// Directory where generator matrices are persisted as versioned JSON.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir().lock().expect("cache lock") = dir;
}

fn cache_path(dir: &Path, m: usize, k: usize) -> PathBuf {
    dir.join(format!("generator-matrix-v{CACHE_VERSION}-m{m}-k{k}.json"))
}

/// Reads a persisted matrix; anything stale or malformed is ignored.
fn load(dir: &Path, m: usize, k: usize) -> Option<GeneratorMatrix> {
    let text = std::fs::read_to_string(cache_path(dir, m, k)).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.version != CACHE_VERSION || file.m != m || file.k != k {
        return None;
    }
    if file.injections != enumerate_F(m, k + 1).ok()? {
        return None;
    }
    let entries = file
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.parse().ok())
                .collect::<Option<Vec<BigInt>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    if entries.len() != file.injections.len() || entries.iter().any(|r| r.len() != entries.len()) {
        return None;
    }
    GeneratorMatrix::from_parts(m, k, file.injections, entries).ok()
}

fn store(dir: &Path, matrix: &GeneratorMatrix) -> Result<()> {
    let file = CacheFile {
        version: CACHE_VERSION,
        m: matrix.m,
        k: matrix.k,
        injections: matrix.injections.clone(),
        entries: matrix
            .entries
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect(),
    };
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(
        cache_path(dir, matrix.m, matrix.k),
        serde_json::to_string_pretty(&file)?,
    )
    .map_err(|e| Error::Io(e.to_string()))
}

/// Cached [`GeneratorMatrix::compute`]; each `(m, k)` is computed once.
pub fn generator_matrix(m: usize, k: usize) -> Result<Arc<GeneratorMatrix>> {
    if let Some(found) = memory_cache().lock().expect("cache lock").get(&(m, k)) {
        return Ok(Arc::clone(found));
    }
    let dir = cache_dir().lock().expect("cache lock").clone();
    let matrix = match dir.as_deref().and_then(|d| load(d, m, k)) {
        Some(found) => found,
        None => {
            let computed = GeneratorMatrix::compute(m, k)?;
            if let Some(d) = &dir {
                store(d, &computed)?;
            }
            computed
        }
    };
    let mut cache = memory_cache().lock().expect("cache lock");
    Ok(Arc::clone(
        cache.entry((m, k)).or_insert_with(|| Arc::new(matrix)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::magnus_expand;
    use crate::algebra::Monomial;
    use crate::milnor::mu;

    fn inj(v: &[usize]) -> Injection {
        Injection::new(v.to_vec()).unwrap()
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn generator_words_have_unit_leading_coefficient() {
        let w = generator_word(&inj(&[2, 1, 3, 4]));
        let e = magnus_expand(&w, 3);
        assert_eq!(
            e.coefficient(&Monomial::new(&[2, 1, 3])).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            e.coefficient(&Monomial::new(&[1, 2, 3])).unwrap(),
            BigInt::zero()
        );
        assert_eq!(
            e.coefficient(&Monomial::new(&[2, 1])).unwrap(),
            BigInt::zero()
        );
        let borromean = GroupWord::generator(1).commutator(&GroupWord::generator(2));
        assert_eq!(generator_word(&inj(&[1, 2, 3])), borromean);
        assert_eq!(generator_word(&inj(&[1, 2])), GroupWord::generator(1));
    }

    #[test]
    fn generator_invariants() {
        let v12 = generator_V(&inj(&[1, 2]), 2).unwrap();
        assert_eq!(mu(&v12, &"12".parse().unwrap()).unwrap(), BigInt::one());

        for m in [3, 4] {
            let v = generator_V(&inj(&[1, 2, 3]), m).unwrap();
            assert_eq!(mu(&v, &"123".parse().unwrap()).unwrap(), BigInt::one());
            for s in ["12", "13", "23", "21", "31", "32"] {
                assert_eq!(mu(&v, &s.parse().unwrap()).unwrap(), BigInt::zero());
            }
            if m == 4 {
                for s in ["14", "124", "1234", "4123"] {
                    assert_eq!(mu(&v, &s.parse().unwrap()).unwrap(), BigInt::zero());
                }
            }
        }
        assert!(generator_V(&inj(&[1, 2, 3]), 2).is_err());
    }

    #[test]
    fn small_matrices() {
        let m = GeneratorMatrix::compute(2, 1).unwrap();
        assert_eq!(m.entries(), ints(&[&[1]]).as_slice());
        let m = GeneratorMatrix::compute(3, 1).unwrap();
        assert_eq!(
            m.entries(),
            ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).as_slice()
        );
        let m = GeneratorMatrix::compute(3, 2).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m.entries()[0][0].abs(), BigInt::one());
        assert!(GeneratorMatrix::compute(3, 3).is_err());
    }

    #[test]
    fn integer_elimination() {
        let m = GeneratorMatrix {
            m: 0,
            k: 0,
            injections: vec![],
            entries: ints(&[&[2, 3], &[1, 2]]),
        };
        assert_eq!(m.determinant(), BigInt::one());
        let x = m.solve(&[BigInt::from(7), BigInt::from(4)]).unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(1)]);

        let m = GeneratorMatrix {
            m: 0,
            k: 0,
            injections: vec![],
            entries: ints(&[&[0, 1, 0], &[1, 0, 0], &[5, -3, 1]]),
        };
        assert_eq!(m.determinant(), -BigInt::one());
        let x = m
            .solve(&[BigInt::from(1), BigInt::from(2), BigInt::from(0)])
            .unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(1), BigInt::from(-7)]);

        let singular = GeneratorMatrix {
            m: 0,
            k: 0,
            injections: vec![],
            entries: ints(&[&[2, 0], &[0, 1]]),
        };
        assert_eq!(singular.determinant(), BigInt::from(2));
        assert!(singular.solve(&[BigInt::one(), BigInt::one()]).is_err());
    }

    #[test]
    fn persisted_matrices_round_trip() {
        let dir = std::env::temp_dir().join(format!("milnor-cache-test-{}", std::process::id()));
        let computed = GeneratorMatrix::compute(3, 1).unwrap();
        store(&dir, &computed).unwrap();
        assert_eq!(load(&dir, 3, 1), Some(computed));
        std::fs::write(cache_path(&dir, 3, 1), "{\"version\": 0}").unwrap();
        assert_eq!(load(&dir, 3, 1), None);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
