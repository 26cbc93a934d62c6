//! Word problems in `Gamma = <G, p | [h, p] = 1, h in H>` and in the double
//! `Gamma' = G *_H ~G`, reduced to subgroup membership in `G`.

use std::fmt;

use crate::error::{Error, Result};
use crate::maps;
use crate::membership::{transport_witness, GroupPair, MembershipResult};
use crate::words::{Alphabet, Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Trivial,
    NonTrivial,
    Undecided(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Trivial => f.write_str("Trivial"),
            Verdict::NonTrivial => f.write_str("NonTrivial"),
            Verdict::Undecided(why) => write!(f, "Undecided: {why}"),
        }
    }
}

/// Which candidate pinch is tried first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PinchOrder {
    #[default]
    LeftToRight,
    RightToLeft,
}

/// Outcome of Britton reduction: the terminal word and the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnnReduction {
    pub word: Word,
    pub pinches: usize,
    pub verdict: Verdict,
}

pub fn hnn_decide(pair: &GroupPair, w: &Word) -> Result<Verdict> {
    Ok(hnn_reduce(pair, w, PinchOrder::LeftToRight)?.verdict)
}

/// Deletes pinches `p^e g p^-e` with `g` in `H` until none remain.
pub fn hnn_reduce(pair: &GroupPair, w: &Word, order: PinchOrder) -> Result<HnnReduction> {
    Alphabet::hnn(pair.rank()).check(w)?;
    let mut word = w.clone();
    let mut pinches = 0;
    'outer: loop {
        let stable: Vec<usize> = word
            .letters()
            .iter()
            .enumerate()
            .filter(|(_, l)| l.gen == Generator::P)
            .map(|(i, _)| i)
            .collect();
        let mut candidates: Vec<(usize, usize)> = stable
            .windows(2)
            .map(|w| (w[0], w[1]))
            .filter(|&(i, j)| word.letters()[i].inverse != word.letters()[j].inverse)
            .collect();
        if order == PinchOrder::RightToLeft {
            candidates.reverse();
        }
        for (i, j) in candidates {
            let inner = Word::reduce(word.letters()[i + 1..j].iter().copied())?;
            match pair.member(&inner)? {
                MembershipResult::Member(_) => {
                    let kept = word
                        .letters()
                        .iter()
                        .enumerate()
                        .filter(|&(x, _)| x != i && x != j)
                        .map(|(_, l)| *l);
                    word = Word::reduce_bounded(kept, pair.group().max_length())?;
                    pinches += 1;
                    continue 'outer;
                }
                MembershipResult::NonMember(_) => {}
                MembershipResult::Undecided(why) => {
                    return Ok(HnnReduction {
                        word,
                        pinches,
                        verdict: Verdict::Undecided(why),
                    })
                }
            }
        }
        let verdict = if !stable.is_empty() {
            Verdict::NonTrivial
        } else if pair.group().is_trivial(&word)? {
            Verdict::Trivial
        } else {
            Verdict::NonTrivial
        };
        return Ok(HnnReduction {
            word,
            pinches,
            verdict,
        });
    }
}

/// A word of the double split into alternating factor syllables; letters are
/// stored unmirrored with the factor recorded alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamWord {
    syllables: Vec<(bool, Word)>,
}

impl AmalgamWord {
    pub fn from_word(w: &Word, rank: u32) -> Result<Self> {
        Alphabet::double(rank).check(w)?;
        let mut syllables: Vec<(bool, Vec<_>)> = Vec::new();
        for &l in w.letters() {
            let plain = Letter::new(
                Generator {
                    kind: l.gen.kind,
                    mirrored: false,
                },
                l.inverse,
            );
            match syllables.last_mut() {
                Some((m, s)) if *m == l.gen.mirrored => s.push(plain),
                _ => syllables.push((l.gen.mirrored, vec![plain])),
            }
        }
        let syllables = syllables
            .into_iter()
            .map(|(m, s)| Ok((m, Word::reduce(s)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(AmalgamWord { syllables })
    }

    pub fn syllables(&self) -> &[(bool, Word)] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn to_word(&self) -> Word {
        let parts: Vec<Word> = self
            .syllables
            .iter()
            .map(|(m, s)| if *m { s.toggle_mirror() } else { s.clone() })
            .collect();
        Word::product(parts.iter())
    }

    /// Drops empty syllables and merges equal-factor neighbours.
    fn tidy(&mut self) {
        let mut out: Vec<(bool, Word)> = Vec::new();
        for (m, s) in self.syllables.drain(..) {
            if s.is_empty() {
                continue;
            }
            match out.last_mut() {
                Some((lm, ls)) if *lm == m => {
                    *ls = ls.mul(&s);
                    if ls.is_empty() {
                        out.pop();
                    }
                }
                _ => out.push((m, s)),
            }
        }
        self.syllables = out;
    }
}

/// One rewrite of the amalgam reduction, kept for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyllableRewrite {
    pub index: usize,
    pub before: Word,
    /// The same element written in the other factor.
    pub after: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamReduction {
    pub word: AmalgamWord,
    pub rewrites: Vec<SyllableRewrite>,
    pub verdict: Verdict,
}

pub fn amalgam_decide(pair: &GroupPair, w: &Word) -> Result<Verdict> {
    Ok(amalgam_reduce(pair, w)?.verdict)
}

/// Moves subgroup syllables across the amalgamation until every syllable lies
/// outside `H` or a single syllable remains.
pub fn amalgam_reduce(pair: &GroupPair, w: &Word) -> Result<AmalgamReduction> {
    let mut word = AmalgamWord::from_word(w, pair.rank())?;
    word.tidy();
    let mut rewrites = Vec::new();
    loop {
        match word.len() {
            0 => {
                return Ok(AmalgamReduction {
                    word,
                    rewrites,
                    verdict: Verdict::Trivial,
                })
            }
            1 => {
                let verdict = if pair.group().is_trivial(&word.syllables[0].1)? {
                    Verdict::Trivial
                } else {
                    Verdict::NonTrivial
                };
                return Ok(AmalgamReduction {
                    word,
                    rewrites,
                    verdict,
                });
            }
            _ => {}
        }
        let mut hit = None;
        for (idx, (_, s)) in word.syllables.iter().enumerate() {
            match pair.member(s)? {
                MembershipResult::Member(cert) => {
                    hit = Some((idx, cert));
                    break;
                }
                MembershipResult::NonMember(_) => {}
                MembershipResult::Undecided(why) => {
                    return Ok(AmalgamReduction {
                        word,
                        rewrites,
                        verdict: Verdict::Undecided(why),
                    })
                }
            }
        }
        let Some((idx, cert)) = hit else {
            return Ok(AmalgamReduction {
                word,
                rewrites,
                verdict: Verdict::NonTrivial,
            });
        };
        let before_len = word.len();
        let (factor, before) = word.syllables[idx].clone();
        // the certificate re-expands to the same element of H in either copy
        let after = pair.expand(&cert)?;
        word.syllables[idx] = (!factor, after.clone());
        word.tidy();
        debug_assert!(word.len() < before_len);
        if word.len() >= before_len {
            return Err(Error::Certificate(
                "amalgam rewrite did not shorten the syllable sequence".into(),
            ));
        }
        rewrites.push(SyllableRewrite {
            index: idx,
            before,
            after,
        });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    Hnn,
    Amalgam,
}

/// An element outside `H` that no finite quotient separates from `H`.
pub fn stored_witness(pair: &GroupPair) -> Result<Word> {
    let g = pair.group();
    let r = pair.subgroup().exponents();
    if g.rank() == 2 && g.is_hydra() {
        if r == [1, 1] {
            return Ok(maps::bks_pullback());
        }
        if r[1] == 0 && (1..=3).contains(&r[0]) {
            return Ok(maps::commutator_witness());
        }
    }
    match transport_witness(pair) {
        Ok((w, MembershipResult::NonMember(_))) => Ok(w),
        _ => Err(Error::Unsupported(format!(
            "no stored non-separability witness for {} in this group",
            pair.subgroup()
        ))),
    }
}

/// `[p, g]` or `g^-1 ~g` for the stored witness `g`; nontrivial, yet trivial in
/// every finite quotient.
pub fn rf_witness(kind: WitnessKind, pair: &GroupPair) -> Result<Word> {
    let g = stored_witness(pair)?;
    Ok(match kind {
        WitnessKind::Hnn => Word::commutator(&Word::p(), &g),
        WitnessKind::Amalgam => g.inverse().mul(&g.toggle_mirror()),
    })
}
