//! String link diagrams.
//!
//! A diagram is stored as, for each component, the sequence of crossings it
//! meets while travelling along its orientation, each tagged over or under.
//! Arcs are derived from that: a new arc begins after every under-pass, so
//! component `i` has `1 + (number of under-passes)` arcs, labelled `(i, 1)`
//! from the bottom endpoint onward.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arc `(component, index)`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct ArcId {
    pub component: usize,
    pub index: usize,
}

impl ArcId {
    pub fn new(component: usize, index: usize) -> Self {
        ArcId { component, index }
    }
}

impl From<[usize; 2]> for ArcId {
    fn from(v: [usize; 2]) -> Self {
        ArcId::new(v[0], v[1])
    }
}

impl From<ArcId> for [usize; 2] {
    fn from(a: ArcId) -> Self {
        [a.component, a.index]
    }
}

/// Wirtinger data of one crossing: the understrand runs from `under_in` to
/// `under_out` beneath `over_arc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub over_arc: ArcId,
    pub under_in: ArcId,
    pub under_out: ArcId,
    pub sign: i8,
}

/// One traversal of a crossing by a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pass {
    pub crossing: usize,
    pub over: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringLinkDiagram {
    passes: Vec<Vec<Pass>>,
    signs: Vec<i8>,
}

impl StringLinkDiagram {
    /// The trivial string link `1_m`.
    pub fn trivial(m: usize) -> Self {
        StringLinkDiagram {
            passes: vec![Vec::new(); m],
            signs: Vec::new(),
        }
    }

    /// Builds a diagram from per-component pass sequences and crossing signs.
    /// Every crossing must be passed exactly once over and once under.
    pub fn from_passes(passes: Vec<Vec<Pass>>, signs: Vec<i8>) -> Result<Self> {
        if passes.is_empty() {
            return Err(Error::InvalidDiagram("no components".into()));
        }
        let mut seen = vec![(0u8, 0u8); signs.len()];
        for comp in &passes {
            for p in comp {
                let slot = seen.get_mut(p.crossing).ok_or_else(|| {
                    Error::InvalidDiagram(format!(
                        "pass references unknown crossing {}",
                        p.crossing
                    ))
                })?;
                if p.over {
                    slot.0 += 1;
                } else {
                    slot.1 += 1;
                }
            }
        }
        for (c, &(over, under)) in seen.iter().enumerate() {
            if over != 1 || under != 1 {
                return Err(Error::InvalidDiagram(format!(
                    "crossing {c} is passed over {over} and under {under} times"
                )));
            }
        }
        if let Some(c) = signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidDiagram(format!(
                "crossing {c} has sign {}",
                signs[c]
            )));
        }
        Ok(StringLinkDiagram { passes, signs })
    }

    pub fn component_count(&self) -> usize {
        self.passes.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn passes(&self, component: usize) -> &[Pass] {
        &self.passes[component - 1]
    }

    pub fn sign(&self, crossing: usize) -> i8 {
        self.signs[crossing]
    }

    /// `r(i)`, the number of arcs of component `i`.
    pub fn arc_count(&self, component: usize) -> usize {
        1 + self.passes[component - 1]
            .iter()
            .filter(|p| !p.over)
            .count()
    }

    pub fn arc_counts(&self) -> Vec<usize> {
        (1..=self.component_count())
            .map(|i| self.arc_count(i))
            .collect()
    }

    /// Signed count of crossings whose two passes both lie on `component`.
    pub fn self_writhe(&self, component: usize) -> i64 {
        let owners = self.owners();
        self.passes[component - 1]
            .iter()
            .filter(|p| p.over && owners[p.crossing].1 == component)
            .map(|p| self.signs[p.crossing] as i64)
            .sum()
    }

    pub fn self_writhes(&self) -> Vec<i64> {
        (1..=self.component_count())
            .map(|i| self.self_writhe(i))
            .collect()
    }

    /// `(over component, under component)` for every crossing.
    pub fn owners(&self) -> Vec<(usize, usize)> {
        let mut owners = vec![(0, 0); self.signs.len()];
        for (i, comp) in self.passes.iter().enumerate() {
            for p in comp {
                if p.over {
                    owners[p.crossing].0 = i + 1;
                } else {
                    owners[p.crossing].1 = i + 1;
                }
            }
        }
        owners
    }

    /// Crossing records in crossing-id order.
    pub fn crossings(&self) -> Vec<Crossing> {
        let mut over = vec![ArcId::new(0, 0); self.signs.len()];
        let mut under = vec![ArcId::new(0, 0); self.signs.len()];
        for (i, comp) in self.passes.iter().enumerate() {
            let mut arc = 1;
            for p in comp {
                if p.over {
                    over[p.crossing] = ArcId::new(i + 1, arc);
                } else {
                    under[p.crossing] = ArcId::new(i + 1, arc);
                    arc += 1;
                }
            }
        }
        (0..self.signs.len())
            .map(|c| Crossing {
                over_arc: over[c],
                under_in: under[c],
                under_out: ArcId::new(under[c].component, under[c].index + 1),
                sign: self.signs[c],
            })
            .collect()
    }

    /// Crossings consumed along `component`, in order: entry `j-1` is the
    /// crossing where arc `(component, j)` ends.
    pub fn under_crossings(&self, component: usize) -> Vec<usize> {
        self.passes[component - 1]
            .iter()
            .filter(|p| !p.over)
            .map(|p| p.crossing)
            .collect()
    }

    /// Signed count of crossings between components `i` and `j`, i.e. twice
    /// their linking number.
    pub fn signed_crossings_between(&self, i: usize, j: usize) -> i64 {
        self.owners()
            .iter()
            .zip(&self.signs)
            .filter(|((o, u), _)| (*o == i && *u == j) || (*o == j && *u == i))
            .map(|(_, &s)| s as i64)
            .sum()
    }

    /// Renumbers crossings in order of first appearance (component 1 first),
    /// giving a canonical form for diagrams that differ only in crossing ids.
    pub fn canonical(&self) -> StringLinkDiagram {
        let mut relabel = vec![usize::MAX; self.signs.len()];
        let mut next = 0;
        for comp in &self.passes {
            for p in comp {
                if relabel[p.crossing] == usize::MAX {
                    relabel[p.crossing] = next;
                    next += 1;
                }
            }
        }
        let mut signs = vec![0; self.signs.len()];
        for (old, &new) in relabel.iter().enumerate() {
            signs[new] = self.signs[old];
        }
        StringLinkDiagram {
            passes: self
                .passes
                .iter()
                .map(|comp| {
                    comp.iter()
                        .map(|p| Pass {
                            crossing: relabel[p.crossing],
                            over: p.over,
                        })
                        .collect()
                })
                .collect(),
            signs,
        }
    }
}

/// Places `b` above `a`. The last arc of each component of `a` fuses with
/// the first arc of the same component of `b`.
pub fn stack(a: &StringLinkDiagram, b: &StringLinkDiagram) -> Result<StringLinkDiagram> {
    if a.component_count() != b.component_count() {
        return Err(Error::ComponentMismatch {
            left: a.component_count(),
            right: b.component_count(),
        });
    }
    let offset = a.signs.len();
    let passes = a
        .passes
        .iter()
        .zip(&b.passes)
        .map(|(pa, pb)| {
            let mut comp = pa.clone();
            comp.extend(pb.iter().map(|p| Pass {
                crossing: p.crossing + offset,
                over: p.over,
            }));
            comp
        })
        .collect();
    let mut signs = a.signs.clone();
    signs.extend_from_slice(&b.signs);
    Ok(StringLinkDiagram { passes, signs })
}

/// Changes a self-crossing: the over and under strands swap and the sign
/// flips. Crossings between distinct components are rejected, since
/// changing those is not a link-homotopy.
pub fn self_crossing_change(d: &StringLinkDiagram, crossing: usize) -> Result<StringLinkDiagram> {
    if crossing >= d.crossing_count() {
        return Err(Error::IndexOutOfRange {
            index: crossing,
            max: d.crossing_count().saturating_sub(1),
        });
    }
    let (over, under) = d.owners()[crossing];
    if over != under {
        return Err(Error::NotSelfCrossing {
            crossing,
            over,
            under,
        });
    }
    let mut out = d.clone();
    for p in out.passes[over - 1].iter_mut() {
        if p.crossing == crossing {
            p.over = !p.over;
        }
    }
    out.signs[crossing] = -out.signs[crossing];
    Ok(out)
}
