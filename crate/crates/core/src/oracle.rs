//! Bounded brute force over subgroup words, used as independent ground truth.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groups::NormalForm;
use crate::membership::GroupPair;
use crate::words::{Generator, Letter, Word};

pub const DEFAULT_ENTRY_CAP: usize = 10_000_000;

/// Every element of `H` reachable by a subgroup word of length at most `bound`,
/// keyed by normal form, with the shortest (then lexicographically least)
/// certificate reaching it.
#[derive(Debug, Clone)]
pub struct OracleTable {
    pair: GroupPair,
    bound: usize,
    entries: HashMap<NormalForm, Word>,
    layers: Vec<Vec<NormalForm>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes(Word),
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistortionRow {
    /// Subgroup word length at which the elements were first reached.
    pub length: usize,
    pub count: usize,
    pub min_ambient: usize,
    pub max_ambient: usize,
    /// Elements whose normal form is shorter than `length`.
    pub compressed: usize,
}

pub fn enumerate_subgroup(pair: &GroupPair, bound: usize) -> Result<OracleTable> {
    enumerate_subgroup_capped(pair, bound, DEFAULT_ENTRY_CAP)
}

pub fn enumerate_subgroup_capped(
    pair: &GroupPair,
    bound: usize,
    cap: usize,
) -> Result<OracleTable> {
    let group = pair.group();
    let mut letters = Vec::new();
    for i in 1..=pair.rank() {
        for inverse in [false, true] {
            let l = Letter::new(Generator::h(i), inverse);
            let nf = group.normalize(&pair.expand(&Word::from_letter(l))?)?;
            letters.push((l, nf));
        }
    }

    let mut entries = HashMap::new();
    entries.insert(NormalForm::identity(), Word::empty());
    let mut layers = vec![vec![NormalForm::identity()]];
    let mut frontier = vec![(Word::empty(), NormalForm::identity())];

    for _ in 0..bound {
        let mut next = Vec::new();
        for (cert, nf) in &frontier {
            let last = cert.letters().last().copied();
            for (l, step) in &letters {
                if last == Some(l.inv()) {
                    continue;
                }
                let target = group.compose(nf, step)?;
                if entries.contains_key(&target) {
                    continue;
                }
                if entries.len() >= cap {
                    return Err(Error::Resource(format!(
                        "oracle table exceeded {cap} entries"
                    )));
                }
                let c = cert.mul(&Word::from_letter(*l));
                entries.insert(target.clone(), c.clone());
                next.push((c, target));
            }
        }
        layers.push(next.iter().map(|(_, nf)| nf.clone()).collect());
        frontier = next;
    }

    Ok(OracleTable {
        pair: pair.clone(),
        bound,
        entries,
        layers,
    })
}

impl OracleTable {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, nf: &NormalForm) -> Option<&Word> {
        self.entries.get(nf)
    }

    pub fn contains(&self, nf: &NormalForm) -> bool {
        self.entries.contains_key(nf)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NormalForm, &Word)> {
        self.entries.iter()
    }

    /// Elements first reached with a certificate of length `len`.
    pub fn layer(&self, len: usize) -> &[NormalForm] {
        self.layers.get(len).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Entries sorted by normal form.
    pub fn sorted(&self) -> Vec<(&NormalForm, &Word)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort();
        v
    }

    pub fn lookup(&self, g: &Word) -> Result<OracleAnswer> {
        let nf = self.pair.group().normalize(g)?;
        Ok(match self.entries.get(&nf) {
            Some(c) => OracleAnswer::Yes(c.clone()),
            None => OracleAnswer::Unknown,
        })
    }

    pub fn distortion(&self) -> Vec<DistortionRow> {
        self.layers
            .iter()
            .enumerate()
            .map(|(length, layer)| {
                let lens = layer.iter().map(NormalForm::len);
                DistortionRow {
                    length,
                    count: layer.len(),
                    min_ambient: lens.clone().min().unwrap_or(0),
                    max_ambient: lens.clone().max().unwrap_or(0),
                    compressed: lens.filter(|&n| n < length).count(),
                }
            })
            .collect()
    }
}

pub fn oracle_member(table: &OracleTable, g: &Word) -> Result<OracleAnswer> {
    table.lookup(g)
}

pub fn distortion_table(pair: &GroupPair, bound: usize) -> Result<Vec<DistortionRow>> {
    Ok(enumerate_subgroup(pair, bound)?.distortion())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::word_of;

    #[test]
    fn empty_bound_is_identity_only() {
        let t = enumerate_subgroup(&GroupPair::hydra(2).unwrap(), 0).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.contains(&NormalForm::identity()));
    }

    #[test]
    fn first_layer_is_generators_and_inverses() {
        let pair = GroupPair::hydra(2).unwrap();
        let t = enumerate_subgroup(&pair, 1).unwrap();
        assert_eq!(t.len(), 5);
        let g = pair.group();
        for w in [
            word_of(&[(Generator::a(1), 1), (Generator::T, 1)]),
            word_of(&[(Generator::T, -1), (Generator::a(1), -1)]),
            word_of(&[(Generator::a(2), 1), (Generator::T, 1)]),
            word_of(&[(Generator::T, -1), (Generator::a(2), -1)]),
        ] {
            assert!(t.contains(&g.normalize(&w).unwrap()), "{w}");
        }
    }

    #[test]
    fn entry_cap() {
        let pair = GroupPair::hydra(2).unwrap();
        let err = enumerate_subgroup_capped(&pair, 4, 10).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn certificates_are_lexicographically_least() {
        let pair = GroupPair::hydra(2).unwrap();
        let t = enumerate_subgroup(&pair, 4).unwrap();
        let ab = pair
            .group()
            .normalize(
                &pair
                    .expand(&word_of(&[(Generator::h(1), 1), (Generator::h(2), 1)]))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(t.get(&ab).unwrap().to_string(), "h1 h2");
        // h1 h1 is reached only by itself
        let aa = pair
            .group()
            .normalize(&word_of(&[(Generator::a(1), 2), (Generator::T, 2)]))
            .unwrap();
        assert_eq!(t.get(&aa).unwrap().to_string(), "h1^2");
    }
}
