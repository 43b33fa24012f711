//! Families `W_0, …, W_p` of index sets grown by a chooser: `W_0 = {∅}` and
//! each `w ∈ W_{i-1}` is extended by `p-i+1` distinct new indices.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Supplies the extension indices (1-based) for a set `w` at level `i`.
pub trait WChooser {
    fn choose(&mut self, level: usize, w: &BTreeSet<usize>, count: usize) -> Vec<usize>;
}

impl<F> WChooser for F
where
    F: FnMut(usize, &BTreeSet<usize>, usize) -> Vec<usize>,
{
    fn choose(&mut self, level: usize, w: &BTreeSet<usize>, count: usize) -> Vec<usize> {
        self(level, w, count)
    }
}

/// Picks the smallest indices not in `w`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FirstFree;

impl WChooser for FirstFree {
    fn choose(&mut self, _level: usize, w: &BTreeSet<usize>, count: usize) -> Vec<usize> {
        (1..).filter(|i| !w.contains(i)).take(count).collect()
    }
}

/// Picks uniformly among the indices `1..=n` not in `w`.
#[derive(Debug, Clone)]
pub struct SeededChooser {
    n: usize,
    rng: ChaCha8Rng,
}

impl SeededChooser {
    pub fn new(n: usize, seed: u64) -> Self {
        SeededChooser { n, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl WChooser for SeededChooser {
    fn choose(&mut self, _level: usize, w: &BTreeSet<usize>, count: usize) -> Vec<usize> {
        let free: Vec<usize> = (1..=self.n).filter(|i| !w.contains(i)).collect();
        free.choose_multiple(&mut self.rng, count).copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WFamily {
    pub level: usize,
    pub sets: BTreeSet<BTreeSet<usize>>,
}

impl WFamily {
    pub fn size(&self) -> usize {
        self.sets.len()
    }
}

pub fn build_w_sets(p: usize, chooser: &mut impl WChooser) -> Result<Vec<WFamily>> {
    let mut families = vec![WFamily { level: 0, sets: BTreeSet::from([BTreeSet::new()]) }];
    for level in 1..=p {
        let count = p - level + 1;
        let mut next = BTreeSet::new();
        for w in &families[level - 1].sets {
            let picks = chooser.choose(level, w, count);
            if picks.len() != count {
                return Err(Error::ChooserContract(format!(
                    "asked for {count} indices at level {level}, got {}",
                    picks.len()
                )));
            }
            let distinct: BTreeSet<usize> = picks.iter().copied().collect();
            if distinct.len() != count {
                return Err(Error::ChooserContract(format!("duplicate indices {picks:?} at level {level}")));
            }
            if let Some(bad) = picks.iter().find(|i| w.contains(i) || **i == 0) {
                return Err(Error::ChooserContract(format!("index {bad} is already in {w:?} or not 1-based")));
            }
            for i in picks {
                let mut ext = w.clone();
                ext.insert(i);
                next.insert(ext);
            }
        }
        families.push(WFamily { level, sets: next });
    }
    Ok(families)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segments::binomial_u64;

    #[test]
    fn scripted_chooser() {
        let mut chooser = |level: usize, _w: &BTreeSet<usize>, _count: usize| -> Vec<usize> {
            if level == 1 {
                vec![1, 2]
            } else {
                vec![3]
            }
        };
        let fam = build_w_sets(2, &mut chooser).unwrap();
        let sizes: Vec<usize> = fam.iter().map(WFamily::size).collect();
        assert_eq!(sizes, vec![1, 2, 2]);
        assert_eq!(fam[2].sets, BTreeSet::from([BTreeSet::from([1, 3]), BTreeSet::from([2, 3])]));
    }

    #[test]
    fn base_case() {
        let fam = build_w_sets(0, &mut FirstFree).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].size(), 1);
    }

    #[test]
    fn first_free_hits_bound_exactly() {
        for p in 0..7 {
            let fam = build_w_sets(p, &mut FirstFree).unwrap();
            for (i, f) in fam.iter().enumerate() {
                assert!(f.size() as u64 >= binomial_u64(p as u64, i as u64).unwrap());
            }
        }
    }

    #[test]
    fn contract_violations() {
        let mut dup = |_: usize, _: &BTreeSet<usize>, c: usize| vec![1; c];
        assert!(matches!(build_w_sets(3, &mut dup), Err(Error::ChooserContract(_))));
        let mut inside = |l: usize, w: &BTreeSet<usize>, c: usize| -> Vec<usize> {
            if l == 1 {
                (1..=c).collect()
            } else {
                let mut v: Vec<usize> = w.iter().copied().take(1).collect();
                v.extend(100..100 + c - 1);
                v
            }
        };
        assert!(matches!(build_w_sets(3, &mut inside), Err(Error::ChooserContract(_))));
        let mut short = |_: usize, _: &BTreeSet<usize>, _: usize| vec![1];
        assert!(matches!(build_w_sets(2, &mut short), Err(Error::ChooserContract(_))));
    }
}
