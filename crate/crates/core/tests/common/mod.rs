#![allow(dead_code)]

use milnor_core::algebra::GroupWord;
use milnor_core::diagram::{
    braid_to_diagram, winding_to_diagram, BraidLetter, BraidWord, StringLinkDiagram, WindingWord,
};
use rand::Rng;

fn random_letter(rng: &mut impl Rng, strands: usize) -> BraidLetter {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    BraidLetter::new(rng.gen_range(1..strands), sign)
}

/// Random pure braid of length at most `max_len` (at least 2): a product of
/// conjugates `c σ_p^{±2} c^{-1}`.
pub fn random_pure_braid(rng: &mut impl Rng, strands: usize, max_len: usize) -> BraidWord {
    let mut letters = Vec::new();
    loop {
        let room = max_len - letters.len();
        if room < 2 || (!letters.is_empty() && rng.gen_bool(0.25)) {
            break;
        }
        let c_len = rng.gen_range(0..=(room - 2) / 2);
        let c: Vec<BraidLetter> = (0..c_len).map(|_| random_letter(rng, strands)).collect();
        let core = random_letter(rng, strands);
        letters.extend(c.iter().copied());
        letters.push(core);
        letters.push(core);
        letters.extend(
            c.iter()
                .rev()
                .map(|l| BraidLetter::new(l.position, -l.sign)),
        );
    }
    let b = BraidWord::new(strands, letters).expect("positions are in range");
    assert!(b.is_pure());
    b
}

pub fn random_pure_diagram(
    rng: &mut impl Rng,
    strands: usize,
    max_len: usize,
) -> (BraidWord, StringLinkDiagram) {
    let b = random_pure_braid(rng, strands, max_len);
    let d = braid_to_diagram(&b).unwrap();
    (b, d)
}

/// Braid on `m + 2` strands whose plat closure is a string link in which
/// component `m` runs up, down and up again: pure braids around the
/// routing block `σ_{m+1}^{±1} σ_m^{±1}`.
pub fn random_plat_braid(rng: &mut impl Rng, m: usize, max_len: usize) -> BraidWord {
    let strands = m + 2;
    let lower = random_pure_braid(rng, strands, max_len / 2);
    let upper = random_pure_braid(rng, strands, max_len / 2);
    let s1 = if rng.gen_bool(0.5) { 1 } else { -1 };
    let s2 = if rng.gen_bool(0.5) { 1 } else { -1 };
    let route = BraidWord::new(
        strands,
        vec![BraidLetter::new(m + 1, s1), BraidLetter::new(m, s2)],
    )
    .unwrap();
    lower.then(&route).unwrap().then(&upper).unwrap()
}

/// Half the signed number of crossings between strands `i` and `j`, read
/// directly off the braid word.
pub fn linking_oracle(b: &BraidWord, i: usize, j: usize) -> i64 {
    let mut at: Vec<usize> = (1..=b.strand_count()).collect();
    let mut total = 0i64;
    for l in b.letters() {
        let pair = (at[l.position - 1], at[l.position]);
        if pair == (i, j) || pair == (j, i) {
            total += l.sign as i64;
        }
        at.swap(l.position - 1, l.position);
    }
    assert_eq!(
        total % 2,
        0,
        "pure braids cross each pair an even number of times"
    );
    total / 2
}

/// Carrier 3 wound by `[α_1, α_2]`.
pub fn borromean() -> StringLinkDiagram {
    let w = GroupWord::generator(1).commutator(&GroupWord::generator(2));
    winding_to_diagram(&WindingWord::new(3, w).unwrap(), 3).unwrap()
}

pub fn braid(text: &str) -> StringLinkDiagram {
    braid_to_diagram(&milnor_core::diagram::parse_braid(text).unwrap()).unwrap()
}
