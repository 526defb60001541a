//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Randomized criteria use fixed seeds.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use milnor_core::classify::{
    canonical_form, canonical_injections, canonical_sequences, class_inverse, class_multiply,
    class_order, enumerate_classes, equivalent_2n_lh, link_trivial_2n_lh, s_value, CanonicalForm,
    GeneratorMatrix,
};
use milnor_core::diagram::{braid_to_diagram, insert_2n_move_at, StringLinkDiagram};
use milnor_core::milnor::{mu, mu_values, sequences, Sequence};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn seq(s: &str) -> Sequence {
    s.parse().unwrap()
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn congruent(a: &BigInt, b: &BigInt, n: u64) -> bool {
    (a - b).mod_floor(&BigInt::from(n)).is_zero()
}

fn criterion_1() -> Outcome {
    let d = common::braid("m=2: s1^4");
    let v = mu(&d, &seq("112")).map_err(|e| e.to_string())?;
    ensure(v == BigInt::one(), || format!("μ(112) = {v}, expected 1"))?;
    // σ_1^4 is one 4-move away from 1_2: length-2 invariants agree mod 2,
    // the length-3 invariant does not.
    let trivial = StringLinkDiagram::trivial(2);
    for s in ["12", "21", "11"] {
        let a = mu(&d, &seq(s)).unwrap();
        let b = mu(&trivial, &seq(s)).unwrap();
        ensure(congruent(&a, &b, 2), || format!("μ({s}) differs mod 2"))?;
    }
    ensure(!congruent(&v, &BigInt::zero(), 2), || {
        "μ(112) ≡ 0 mod 2".into()
    })?;
    Ok(format!(
        "μ(112) = {v}, {v} mod 2 = {}",
        v.mod_floor(&BigInt::from(2))
    ))
}

fn criterion_2() -> Outcome {
    let d = common::braid("m=2: s1^8");
    let v = mu(&d, &seq("211")).map_err(|e| e.to_string())?;
    ensure(v == BigInt::from(10), || {
        format!("μ(211) = {v}, expected 10")
    })?;
    ensure(!congruent(&v, &BigInt::zero(), 4), || {
        "μ(211) ≡ 0 mod 4".into()
    })?;
    Ok(format!(
        "μ(211) = {v}, {v} mod 4 = {}",
        v.mod_floor(&BigInt::from(4))
    ))
}

fn criterion_3() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let mut checked = 0;
    for case in 0..200 {
        let m = rng.gen_range(2..=4);
        let (b, d) = common::random_pure_diagram(&mut rng, m, 16);
        for i in 1..=m {
            for j in 1..=m {
                if i == j {
                    continue;
                }
                let s = Sequence::new(vec![i, j]).unwrap();
                let got = mu(&d, &s).map_err(|e| e.to_string())?;
                let want = BigInt::from(common::linking_oracle(&b, i, j));
                ensure(got == want, || {
                    format!("case {case}: {b}: μ({s}) = {got}, oracle {want}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("200 braids, {checked} pairs"))
}

fn non_repeated_values(
    d: &StringLinkDiagram,
    max_len: usize,
    repeats: bool,
) -> Vec<(Sequence, BigInt)> {
    let m = d.component_count();
    let seqs: Vec<Sequence> = sequences(m, max_len, !repeats);
    let values = mu_values(d, &seqs).unwrap();
    seqs.into_iter().zip(values).collect()
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    for case in 0..100 {
        let n = rng.gen_range(2..=4u64);
        let m = rng.gen_range(2..=4);
        let b = common::random_pure_braid(&mut rng, m, 12);
        let at = rng.gen_range(0..=b.len());
        let pos = rng.gen_range(1..m);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let moved = insert_2n_move_at(&b, at, pos, n, sign).map_err(|e| e.to_string())?;
        let x = non_repeated_values(&braid_to_diagram(&b).unwrap(), m, false);
        let y = non_repeated_values(&braid_to_diagram(&moved).unwrap(), m, false);
        for ((s, a), (_, c)) in x.iter().zip(&y) {
            ensure(congruent(a, c, n), || {
                format!("case {case}: {b} vs {moved}: μ({s}) = {a} vs {c} mod {n}")
            })?;
        }
    }
    Ok("100 pairs, n in {2,3,4}, m in {2,3,4}".into())
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    for p in [2u64, 3] {
        for case in 0..50 {
            let m = rng.gen_range(2..=4);
            let b = common::random_pure_braid(&mut rng, m, 12);
            let at = rng.gen_range(0..=b.len());
            let pos = rng.gen_range(1..m);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let moved = insert_2n_move_at(&b, at, pos, p, sign).map_err(|e| e.to_string())?;
            let x = non_repeated_values(&braid_to_diagram(&b).unwrap(), p as usize, true);
            let y = non_repeated_values(&braid_to_diagram(&moved).unwrap(), p as usize, true);
            for ((s, a), (_, c)) in x.iter().zip(&y) {
                ensure(congruent(a, c, p), || {
                    format!("p={p} case {case}: {b} vs {moved}: μ({s}) = {a} vs {c}")
                })?;
            }
        }
    }
    Ok("50 pairs each for p = 2, 3".into())
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    for case in 0..100 {
        let m = rng.gen_range(2..=4);
        let n = rng.gen_range(2..=3u64);
        let (b, d) = common::random_pure_diagram(&mut rng, m, 12);
        let form = canonical_form(&d, n).map_err(|e| format!("case {case}: {e}"))?;
        let rep = form.representative().unwrap();
        let seqs = canonical_sequences(m);
        let x = mu_values(&d, &seqs).unwrap();
        let y = mu_values(&rep, &seqs).unwrap();
        for ((s, a), c) in seqs.iter().zip(&x).zip(&y) {
            ensure(congruent(a, c, n), || {
                format!("case {case}: {b}: μ({s}) = {a} vs {c} mod {n}")
            })?;
        }
        let e = equivalent_2n_lh(&d, &rep, n).unwrap();
        ensure(e.equivalent, || {
            format!("case {case}: {b} not equivalent to its representative")
        })?;
    }
    Ok("100 braids, m <= 4, n in {2,3}".into())
}

fn criterion_7() -> Outcome {
    let classes = enumerate_classes(3, 2).map_err(|e| e.to_string())?;
    ensure(classes.len() == 16, || format!("{} classes", classes.len()))?;
    let set: BTreeSet<&CanonicalForm> = classes.iter().collect();
    ensure(set.len() == 16, || "classes are not distinct".into())?;

    let index: BTreeMap<&CanonicalForm, usize> =
        classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut table = vec![vec![0usize; 16]; 16];
    for (i, f) in classes.iter().enumerate() {
        for (j, g) in classes.iter().enumerate() {
            let h = class_multiply(f, g).map_err(|e| e.to_string())?;
            table[i][j] = *index
                .get(&h)
                .ok_or_else(|| format!("{f} * {g} = {h} is not a class"))?;
        }
    }
    let identity = CanonicalForm::identity(3, 2).unwrap();
    let e = index[&identity];
    for i in 0..16 {
        ensure(table[i][e] == i && table[e][i] == i, || {
            format!("identity fails on {}", classes[i])
        })?;
        let inv = class_inverse(&classes[i]).unwrap();
        ensure(table[i][index[&inv]] == e, || {
            format!("inverse fails on {}", classes[i])
        })?;
        for j in 0..16 {
            for k in 0..16 {
                ensure(table[table[i][j]][k] == table[i][table[j][k]], || {
                    format!("associativity fails on ({i}, {j}, {k})")
                })?;
            }
        }
    }
    for (slot, pi) in canonical_injections(3).iter().enumerate() {
        let mut ys = vec![0; 4];
        ys[slot] = 1;
        let v = CanonicalForm::from_exponents(3, 2, ys).unwrap();
        let order = class_order(&v).unwrap();
        ensure(order == 2, || format!("V_{pi} has order {order}"))?;
    }
    for n in 1..=6u64 {
        let classes = enumerate_classes(2, n).unwrap();
        ensure(classes.len() as u64 == n, || {
            format!("m=2, n={n}: {} classes", classes.len())
        })?;
        if n > 1 {
            let order = class_order(&classes[1]).unwrap();
            ensure(order == n, || {
                format!("m=2, n={n}: generator has order {order}")
            })?;
        }
    }
    Ok("16 classes at (3,2), 4096 triples associative; cyclic of order n at m=2, n <= 6".into())
}

fn criterion_8() -> Outcome {
    let mut sizes = Vec::new();
    for m in 2..=5 {
        for k in 1..m {
            let g = GeneratorMatrix::compute(m, k).map_err(|e| e.to_string())?;
            let det = g.determinant();
            ensure(det.abs() == BigInt::one(), || {
                format!("m={m}, k={k}: det {det}")
            })?;
            sizes.push(g.size());
        }
    }
    Ok(format!("{} matrices, sizes {sizes:?}", sizes.len()))
}

fn criterion_9() -> Outcome {
    let r = link_trivial_2n_lh(&common::borromean(), 2).map_err(|e| e.to_string())?;
    ensure(!r.trivial, || {
        "Borromean closure reported trivial at n=2".into()
    })?;
    let first = r.failures.first().map(|f| f.sequence.to_string());
    ensure(first.as_deref() == Some("123"), || {
        format!("first witness {first:?}")
    })?;
    for n in 1..=5 {
        let t = link_trivial_2n_lh(&StringLinkDiagram::trivial(3), n).unwrap();
        ensure(t.trivial, || format!("trivial link not trivial at n={n}"))?;
    }
    Ok("Borromean witness 123; trivial link trivial for n = 1..5".into())
}

fn criterion_10() -> Outcome {
    let got: Vec<u64> = (2..=5).map(s_value).collect();
    ensure(got == vec![1, 4, 12, 36], || format!("s_2..s_5 = {got:?}"))?;
    Ok(format!("s_2..s_5 = {got:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("σ1^4: μ(112) = 1, not 0 mod 2", criterion_1),
        ("σ1^8: μ(211) = 10, not 0 mod 4", criterion_2),
        ("length-2 μ equals the linking-number oracle", criterion_3),
        ("2n-moves preserve non-repeated μ mod n", criterion_4),
        ("2p-moves preserve all μ of length <= p mod p", criterion_5),
        ("canonical representatives are sound", criterion_6),
        ("group structure of the classes", criterion_7),
        ("generator matrices are unimodular", criterion_8),
        ("link triviality criterion", criterion_9),
        ("s_m table", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!(
                "PASS {:>2} {name}: {detail} ({:.2?})",
                i + 1,
                start.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({:.2?})", i + 1, start.elapsed());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
