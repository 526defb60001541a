//! Diagrams drawn from braid words.
//!
//! Every diagram this crate constructs is a braid on some number of strands,
//! possibly with a cup at the bottom and a cap at the top that reroute one
//! component through extra strands. Tracing the braid gives each strand its
//! pass sequence; components are then concatenations of strands, some of
//! which are travelled downward.

use serde::{Deserialize, Serialize};

use super::braid::{BraidLetter, BraidWord};
use super::link::{Pass, StringLinkDiagram};
use crate::algebra::GroupWord;
use crate::error::{Error, Result};

/// A piece of a component: the braid strand that starts at bottom position
/// `start`, travelled upward or downward.
#[derive(Debug, Clone, Copy)]
struct StrandRun {
    start: usize,
    upward: bool,
}

fn trace(braid: &BraidWord, components: &[Vec<StrandRun>]) -> StringLinkDiagram {
    let strands = braid.strand_count();
    let mut at: Vec<usize> = (1..=strands).collect();
    let mut events: Vec<Vec<(usize, bool)>> = vec![Vec::new(); strands + 1];
    let mut letter_sign = Vec::with_capacity(braid.len());
    let mut over_under = Vec::with_capacity(braid.len());
    for (c, l) in braid.letters().iter().enumerate() {
        let left = at[l.position - 1];
        let right = at[l.position];
        let (over, under) = if l.sign > 0 {
            (left, right)
        } else {
            (right, left)
        };
        events[over].push((c, true));
        events[under].push((c, false));
        letter_sign.push(l.sign);
        over_under.push((over, under));
        at.swap(l.position - 1, l.position);
    }

    let mut direction = vec![true; strands + 1];
    for comp in components {
        for run in comp {
            direction[run.start] = run.upward;
        }
    }
    // Reversing either strand mirrors the crossing's handedness.
    let signs = letter_sign
        .iter()
        .zip(&over_under)
        .map(|(&s, &(o, u))| {
            let flip = (direction[o] != direction[u]) as i8;
            if flip == 1 {
                -s
            } else {
                s
            }
        })
        .collect();

    let passes = components
        .iter()
        .map(|comp| {
            let mut out = Vec::new();
            for run in comp {
                let ev = &events[run.start];
                let iter: Box<dyn Iterator<Item = &(usize, bool)>> = if run.upward {
                    Box::new(ev.iter())
                } else {
                    Box::new(ev.iter().rev())
                };
                out.extend(iter.map(|&(crossing, over)| Pass { crossing, over }));
            }
            out
        })
        .collect();
    StringLinkDiagram::from_passes(passes, signs).expect("traced braids are well formed")
}

/// Diagram of a pure braid: one crossing per letter, components numbered by
/// their bottom positions.
pub fn braid_to_diagram(b: &BraidWord) -> Result<StringLinkDiagram> {
    b.check_pure()?;
    let components: Vec<Vec<StrandRun>> = (1..=b.strand_count())
        .map(|start| {
            vec![StrandRun {
                start,
                upward: true,
            }]
        })
        .collect();
    Ok(trace(b, &components))
}

/// String link drawn from a braid on `m + 2` strands with a cup joining
/// bottom positions `m+1, m+2` and a cap joining top positions `m+1, m+2`.
///
/// One component is rerouted up, through the cap, down, through the cup and
/// up again, so it can cross itself. The strand starting at bottom position
/// `i <= m` must end, after the reroute, at top position `i`.
pub fn plat_to_diagram(b: &BraidWord) -> Result<StringLinkDiagram> {
    let strands = b.strand_count();
    if strands < 3 {
        return Err(Error::InvalidArgument(
            "a plat diagram needs at least three strands".into(),
        ));
    }
    let m = strands - 2;
    let perm = b.permutation();
    let mut inverse = vec![0; strands + 1];
    for (start, &top) in perm.iter().enumerate() {
        inverse[top] = start + 1;
    }
    let partner = |p: usize| if p == m + 1 { m + 2 } else { m + 1 };
    let invalid = |msg: String| Err(Error::InvalidDiagram(msg));

    let mut used = vec![false; strands + 1];
    let mut components = Vec::with_capacity(m);
    for i in 1..=m {
        let mut runs = vec![StrandRun {
            start: i,
            upward: true,
        }];
        used[i] = true;
        let mut top = perm[i - 1];
        if top > m {
            let down = inverse[partner(top)];
            if down <= m {
                return invalid(format!(
                    "component {i} turns down the cap and reaches bottom endpoint {down}"
                ));
            }
            let up = partner(down);
            runs.push(StrandRun {
                start: down,
                upward: false,
            });
            runs.push(StrandRun {
                start: up,
                upward: true,
            });
            used[down] = true;
            used[up] = true;
            top = perm[up - 1];
        }
        if top != i {
            return invalid(format!("component {i} ends at top position {top}"));
        }
        components.push(runs);
    }
    if used.iter().skip(1).any(|u| !u) {
        return invalid("cup and cap close up into a circle".into());
    }
    Ok(trace(b, &components))
}

/// Carrier component `carrier` whose longitude is prescribed by `word` in
/// the meridians of the other components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WindingWord {
    pub carrier: usize,
    pub word: GroupWord,
}

impl WindingWord {
    pub fn new(carrier: usize, word: GroupWord) -> Result<Self> {
        if word.mentions(carrier) {
            return Err(Error::WordMentionsCarrier { carrier });
        }
        Ok(WindingWord { carrier, word })
    }
}

/// Pure braid in which only the carrier moves: for each unit letter
/// `α_j^ε` the carrier travels in front of the strands between it and `j`,
/// clasps `j` with two crossings of sign `ε`, and travels back in front.
/// All other strands stay vertical and the carrier never crosses itself.
pub fn winding_braid(w: &WindingWord, m: usize) -> Result<BraidWord> {
    let c = w.carrier;
    if m < 2 {
        return Err(Error::InvalidArgument(
            "a winding needs at least two components".into(),
        ));
    }
    if c == 0 || c > m {
        return Err(Error::IndexOutOfRange { index: c, max: m });
    }
    if w.word.mentions(c) {
        return Err(Error::WordMentionsCarrier { carrier: c });
    }
    if let Some(bad) = w
        .word
        .letters()
        .iter()
        .find(|l| l.generator == 0 || l.generator > m)
    {
        return Err(Error::IndexOutOfRange {
            index: bad.generator,
            max: m,
        });
    }
    let mut letters = Vec::new();
    for (j, eps) in w.word.unit_letters() {
        let eps = eps as i8;
        if j < c {
            // Right strand moving left in front is a negative letter.
            for p in (j + 1..c).rev() {
                letters.push(BraidLetter::new(p, -1));
            }
            letters.push(BraidLetter::new(j, eps));
            letters.push(BraidLetter::new(j, eps));
            for p in j + 1..c {
                letters.push(BraidLetter::new(p, 1));
            }
        } else {
            for p in c..j - 1 {
                letters.push(BraidLetter::new(p, 1));
            }
            letters.push(BraidLetter::new(j - 1, eps));
            letters.push(BraidLetter::new(j - 1, eps));
            for p in (c..j - 1).rev() {
                letters.push(BraidLetter::new(p, -1));
            }
        }
    }
    BraidWord::new(m, letters)
}

pub fn winding_to_diagram(w: &WindingWord, m: usize) -> Result<StringLinkDiagram> {
    braid_to_diagram(&winding_braid(w, m)?)
}
