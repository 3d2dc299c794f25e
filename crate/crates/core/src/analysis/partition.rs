use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{ColoredCycle, ColoredPermutation};

/// Beyond this many cycles the number of pairings explodes.
pub const MAX_PARTITION_CYCLES: usize = 12;

/// A block of a cycle partition, as indices into the cycle list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Single(usize),
    Pair(usize, usize),
}

impl Part {
    pub fn cycles(&self) -> Vec<usize> {
        match *self {
            Part::Single(a) => vec![a],
            Part::Pair(a, b) => vec![a, b],
        }
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, Part::Pair(..))
    }
}

/// A partition of the cycles of `g` into singletons and pairs of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePartition {
    element: ColoredPermutation,
    cycles: Vec<ColoredCycle>,
    parts: Vec<Part>,
}

impl CyclePartition {
    /// Checks that `parts` covers the cycles of `g` exactly once with equal-length pairs.
    pub fn new(element: &ColoredPermutation, mut parts: Vec<Part>) -> Result<Self> {
        let cycles = element.cycles();
        let mut seen = vec![false; cycles.len()];
        for part in &mut parts {
            if let Part::Pair(a, b) = *part {
                if a > b {
                    *part = Part::Pair(b, a);
                }
                if a == b {
                    return Err(Error::InvalidElement(format!("cycle {a} paired with itself")));
                }
            }
            for c in part.cycles() {
                if c >= cycles.len() || seen[c] {
                    return Err(Error::InvalidElement(format!("cycle {c} missing or repeated")));
                }
                seen[c] = true;
            }
            if let Part::Pair(a, b) = *part {
                if cycles[a].len() != cycles[b].len() {
                    return Err(Error::InvalidElement("paired cycles differ in length".into()));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidElement("partition does not cover every cycle".into()));
        }
        parts.sort_by_key(|p| p.cycles()[0]);
        Ok(CyclePartition {
            element: element.clone(),
            cycles,
            parts,
        })
    }

    pub fn element(&self) -> &ColoredPermutation {
        &self.element
    }

    pub fn cycles(&self) -> &[ColoredCycle] {
        &self.cycles
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    /// `ℓ(π)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of the cycles in a part.
    pub fn cycle_length(&self, part: &Part) -> usize {
        self.cycles[part.cycles()[0]].len()
    }

    /// Total support size of a part: `d` for a singleton, `2d` for a pair.
    pub fn part_size(&self, part: &Part) -> usize {
        part.cycles().iter().map(|&c| self.cycles[c].len()).sum()
    }

    /// `z(s)`, the color of a part, in `Z_r`.
    pub fn part_color(&self, part: &Part) -> u32 {
        let r = self.element.r();
        part.cycles().iter().map(|&c| self.cycles[c].color()).sum::<u32>() % r
    }

    /// `pair_j(π)` for every `j` that occurs.
    pub fn pair_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for part in &self.parts {
            if part.is_pair() {
                *counts.entry(self.cycle_length(part)).or_insert(0) += 1;
            }
        }
        counts
    }

    /// `r^{ℓ(π)} Π_j j^{pair_j(π)}`.
    pub fn weight(&self) -> Result<u128> {
        let r = self.element.r() as u128;
        let mut w: u128 = 1;
        for part in &self.parts {
            w = w.checked_mul(r).ok_or(Error::Overflow)?;
            if part.is_pair() {
                w = w.checked_mul(self.cycle_length(part) as u128).ok_or(Error::Overflow)?;
            }
        }
        Ok(w)
    }

    pub fn has_even_singleton(&self) -> bool {
        self.parts
            .iter()
            .any(|p| !p.is_pair() && self.cycle_length(p) % 2 == 0)
    }

    /// Elements of the support of each cycle, in cycle order.
    pub fn support(&self, cycle: usize) -> &[usize] {
        self.cycles[cycle].support()
    }
}

/// All partitions of the cycles of `g` into singletons and equal-length pairs.
pub fn pi21(g: &ColoredPermutation) -> Result<Vec<CyclePartition>> {
    let cycles = g.cycles();
    if cycles.len() > MAX_PARTITION_CYCLES {
        return Err(Error::SizeBound {
            size: cycles.len() as u128,
            bound: MAX_PARTITION_CYCLES as u128,
        });
    }
    let lengths: Vec<usize> = cycles.iter().map(ColoredCycle::len).collect();
    let mut out = Vec::new();
    let mut used = vec![false; lengths.len()];
    let mut parts = Vec::new();
    pairings(&lengths, &mut used, &mut parts, &mut out);
    Ok(out
        .into_iter()
        .map(|parts| CyclePartition {
            element: g.clone(),
            cycles: cycles.clone(),
            parts,
        })
        .collect())
}

fn pairings(lengths: &[usize], used: &mut [bool], parts: &mut Vec<Part>, out: &mut Vec<Vec<Part>>) {
    let Some(first) = used.iter().position(|u| !u) else {
        out.push(parts.clone());
        return;
    };
    used[first] = true;
    parts.push(Part::Single(first));
    pairings(lengths, used, parts, out);
    parts.pop();
    for other in first + 1..lengths.len() {
        if !used[other] && lengths[other] == lengths[first] {
            used[other] = true;
            parts.push(Part::Pair(first, other));
            pairings(lengths, used, parts, out);
            parts.pop();
            used[other] = false;
        }
    }
    used[first] = false;
}

/// The partition `π(w)` induced by an involution `|w|` commuting with `|g|`.
pub fn partition_of(g: &ColoredPermutation, w: &ColoredPermutation) -> Result<CyclePartition> {
    let cycles = g.cycles();
    let mut owner = vec![0usize; g.n()];
    for (c, cycle) in cycles.iter().enumerate() {
        for &i in cycle.support() {
            owner[i] = c;
        }
    }
    let mut parts = Vec::new();
    for (c, cycle) in cycles.iter().enumerate() {
        let other = owner[w.image(cycle.support()[0])];
        if other == c {
            parts.push(Part::Single(c));
        } else if other > c {
            parts.push(Part::Pair(c, other));
        }
    }
    CyclePartition::new(g, parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const G9: &str = "[(1,4),(2,2),(0,8),(2,1),(1,5),(0,7),(0,6),(2,9),(1,3)]";

    fn brute_count(lengths: &[usize]) -> usize {
        // set partitions into blocks of size <= 2 with equal lengths inside blocks
        fn go(rest: &[usize]) -> usize {
            match rest.split_first() {
                None => 1,
                Some((&a, tail)) => {
                    let mut total = go(tail);
                    for k in 0..tail.len() {
                        if tail[k] == a {
                            let mut t = tail.to_vec();
                            t.remove(k);
                            total += go(&t);
                        }
                    }
                    total
                }
            }
        }
        go(lengths)
    }

    #[test]
    fn g9_has_four_partitions() {
        let g = ColoredPermutation::parse_window(3, G9).unwrap();
        assert_eq!(g.cycles().len(), 5);
        let all = pi21(&g).unwrap();
        assert_eq!(all.len(), 4);
        let weights: Vec<u128> = all.iter().map(|p| p.weight().unwrap()).collect();
        assert!(weights.contains(&243));
    }

    #[test]
    fn distinct_lengths_give_one_partition() {
        let g = ColoredPermutation::from_perm(2, vec![1, 2, 0, 4, 3, 5]).unwrap();
        let all = pi21(&g).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].parts().iter().all(|p| !p.is_pair()));
    }

    #[test]
    fn two_transpositions() {
        let g = ColoredPermutation::from_perm(2, vec![1, 0, 3, 2]).unwrap();
        assert_eq!(pi21(&g).unwrap().len(), 2);
    }

    #[test]
    fn counts_match_direct_recursion() {
        let g = ColoredPermutation::from_perm(3, vec![0, 1, 2, 4, 3, 6, 5, 7]).unwrap();
        let lengths: Vec<usize> = g.cycles().iter().map(|c| c.len()).collect();
        assert_eq!(pi21(&g).unwrap().len(), brute_count(&lengths));
        let id = ColoredPermutation::identity(1, 6);
        assert_eq!(pi21(&id).unwrap().len(), 76);
    }

    #[test]
    fn guard_on_many_cycles() {
        let id = ColoredPermutation::identity(2, 13);
        assert!(matches!(pi21(&id), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn partition_statistics() {
        let g = ColoredPermutation::new(4, vec![1, 0, 3, 2, 4], vec![1, 2, 3, 0, 2]).unwrap();
        let p = CyclePartition::new(&g, vec![Part::Pair(1, 0), Part::Single(2)]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.pair_counts().get(&2), Some(&1));
        assert_eq!(p.part_color(&p.parts()[0]), 2);
        assert_eq!(p.part_size(&p.parts()[0]), 4);
        assert_eq!(p.weight().unwrap(), 32);
        assert!(!p.has_even_singleton());
        assert!(CyclePartition::new(&g, vec![Part::Pair(0, 2), Part::Single(1)]).is_err());
        assert!(CyclePartition::new(&g, vec![Part::Single(0)]).is_err());
    }
}
