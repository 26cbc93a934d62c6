//! Line-oriented key-value files describing a group, a subgroup, or both.
//!
//! ```text
//! k = 2
//! w2 = "a1"
//! r = [1, 1]
//! ```
//!
//! `w1` is always trivial and may be omitted. [`SpecFile::to_text`] writes the
//! canonical form, which reads back to identical bytes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::expr::{format, parse_word_bounded};
use crate::groups::GroupSpec;
use crate::membership::SubgroupSpec;
use crate::words::Word;

pub const MAX_RANK: u32 = 64;
const WORD_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecFile {
    pub group: Option<GroupSpec>,
    pub subgroup: Option<SubgroupSpec>,
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::Spec(e.message().to_string()))?;

        let k = match table.get("k") {
            None => None,
            Some(v) => {
                let k = v
                    .as_integer()
                    .ok_or_else(|| Error::Spec("k must be an integer".into()))?;
                if !(1..=MAX_RANK as i64).contains(&k) {
                    return Err(Error::Spec(format!("k must lie in 1..={MAX_RANK}")));
                }
                Some(k as u32)
            }
        };

        for key in table.keys() {
            let known = key == "k"
                || key == "r"
                || key
                    .strip_prefix('w')
                    .and_then(|i| i.parse::<u32>().ok())
                    .is_some_and(|i| {
                        k.is_some_and(|k| (1..=k).contains(&i)) && key == &format!("w{i}")
                    });
            if !known {
                return Err(Error::Spec(format!("unexpected key '{key}'")));
            }
        }

        let group = match k {
            None => None,
            Some(k) => {
                let mut words = Vec::with_capacity(k as usize);
                for i in 1..=k {
                    let key = format!("w{i}");
                    let w = match table.get(&key) {
                        None if i == 1 => Word::empty(),
                        None => return Err(Error::Spec(format!("missing key '{key}'"))),
                        Some(v) => {
                            let s = v
                                .as_str()
                                .ok_or_else(|| Error::Spec(format!("{key} must be a string")))?;
                            parse_word_bounded(s, WORD_LIMIT)?
                        }
                    };
                    words.push(w);
                }
                Some(GroupSpec::new(k, words)?)
            }
        };

        let subgroup = match table.get("r") {
            None => None,
            Some(v) => {
                let arr = v
                    .as_array()
                    .ok_or_else(|| Error::Spec("r must be an array of integers".into()))?;
                let r = arr
                    .iter()
                    .map(|x| {
                        x.as_integer()
                            .ok_or_else(|| Error::Spec("r must be an array of integers".into()))
                    })
                    .collect::<Result<Vec<i64>>>()?;
                Some(SubgroupSpec::new(r)?)
            }
        };

        if let (Some(g), Some(s)) = (&group, &subgroup) {
            if g.rank() != s.rank() {
                return Err(Error::Spec(format!(
                    "r has {} entries but k = {}",
                    s.rank(),
                    g.rank()
                )));
            }
        }
        Ok(SpecFile { group, subgroup })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(g) = &self.group {
            writeln!(out, "k = {}", g.rank()).expect("string write");
            for i in 2..=g.rank() {
                writeln!(out, "w{i} = \"{}\"", format(g.w(i))).expect("string write");
            }
        }
        if let Some(s) = &self.subgroup {
            let r: Vec<String> = s.exponents().iter().map(i64::to_string).collect();
            writeln!(out, "r = [{}]", r.join(", ")).expect("string write");
        }
        out
    }
}

/// `hydra<k>` presets.
pub fn preset(name: &str) -> Option<Result<GroupSpec>> {
    let k: u32 = name.strip_prefix("hydra")?.parse().ok()?;
    if k == 0 || k > MAX_RANK {
        return Some(Err(Error::Spec(format!(
            "hydra rank must lie in 1..={MAX_RANK}"
        ))));
    }
    Some(GroupSpec::hydra(k))
}

/// Inline subgroup argument such as `r=1,0`.
pub fn parse_inline_subgroup(text: &str) -> Result<SubgroupSpec> {
    let body = text
        .trim()
        .strip_prefix('r')
        .map(str::trim_start)
        .and_then(|s| s.strip_prefix('='))
        .ok_or_else(|| Error::Spec(format!("expected 'r=..', got '{text}'")))?;
    let r = body
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::Spec(format!("bad exponent '{}'", x.trim())))
        })
        .collect::<Result<Vec<i64>>>()?;
    SubgroupSpec::new(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::word_of;
    use crate::words::Generator;

    #[test]
    fn canonical_round_trip() {
        for text in [
            "k = 2\nw2 = \"a1\"\nr = [1, 1]\n",
            "k = 3\nw2 = \"a1^2\"\nw3 = \"a1 a2\"\n",
            "r = [1, 0]\n",
            "k = 2\nw2 = \"1\"\nr = [0, 3]\n",
            "",
        ] {
            assert_eq!(SpecFile::parse(text).unwrap().to_text(), text);
        }
    }

    #[test]
    fn non_canonical_input() {
        let f = SpecFile::parse("r=[1,1]\n# comment\nw2 = \"a1 a1\"\nw1 = \"\"\nk=2").unwrap();
        let g = f.group.as_ref().unwrap();
        assert_eq!(g.w(2), &word_of(&[(Generator::a(1), 2)]));
        assert_eq!(f.to_text(), "k = 2\nw2 = \"a1^2\"\nr = [1, 1]\n");
    }

    #[test]
    fn rejects_bad_files() {
        for text in [
            "k = 0",
            "k = 2",
            "k = 2\nw2 = \"a2\"",
            "k = 2\nw2 = \"a1^-1\"",
            "k = 2\nw3 = \"a1\"\nw2 = \"a1\"",
            "k = 2\nw2 = \"a1\"\nr = [1]",
            "r = [-1]",
            "r = []",
            "k = \"two\"",
            "x = 1",
            "k = 2\nw2 = \"a1\"\nw02 = \"a1\"",
            "k = 2\nw2 = \"(a1\"",
            "k =",
        ] {
            assert!(SpecFile::parse(text).is_err(), "{text:?}");
        }
    }

    #[test]
    fn presets() {
        assert_eq!(
            preset("hydra3").unwrap().unwrap(),
            GroupSpec::hydra(3).unwrap()
        );
        assert!(preset("hydra0").unwrap().is_err());
        assert!(preset("hydra").is_none());
        assert!(preset("g2").is_none());
    }

    #[test]
    fn inline_subgroup() {
        assert_eq!(parse_inline_subgroup("r=1,0").unwrap().exponents(), &[1, 0]);
        assert_eq!(
            parse_inline_subgroup(" r = 2, 3 ").unwrap().exponents(),
            &[2, 3]
        );
        assert!(parse_inline_subgroup("1,0").is_err());
        assert!(parse_inline_subgroup("r=1,x").is_err());
        assert!(parse_inline_subgroup("r=-1").is_err());
    }
}
