//! Free-group words over the letters used throughout the crate.
//!
//! A [`Word`] is always freely reduced. Equality of words is literal equality
//! of their letter sequences, so two words are equal in the free group exactly
//! when they compare equal here.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default guard on word length. Iterates of the fiber automorphism grow very
/// quickly, so anything longer than this is reported as a resource error.
pub const DEFAULT_MAX_LENGTH: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    /// Fiber generator `a_i`, indexed from 1.
    A(u32),
    /// The cyclic letter `t`.
    T,
    /// Stable letter of the HNN extension.
    P,
    /// Formal subgroup generator `h_i`, used in certificates.
    H(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    /// Letter of the second copy in an amalgamated double.
    pub mirrored: bool,
}

impl Generator {
    pub const T: Generator = Generator::plain(GenKind::T);
    pub const P: Generator = Generator::plain(GenKind::P);

    pub const fn plain(kind: GenKind) -> Self {
        Generator {
            kind,
            mirrored: false,
        }
    }

    pub const fn a(i: u32) -> Self {
        Generator::plain(GenKind::A(i))
    }

    pub const fn h(i: u32) -> Self {
        Generator::plain(GenKind::H(i))
    }

    pub fn toggle_mirror(self) -> Self {
        Generator {
            mirrored: !self.mirrored,
            ..self
        }
    }

    /// Index of an `a` letter, if this is one.
    pub fn a_index(self) -> Option<u32> {
        match self.kind {
            GenKind::A(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mirrored {
            f.write_str("~")?;
        }
        match self.kind {
            GenKind::A(i) => write!(f, "a{i}"),
            GenKind::T => f.write_str("t"),
            GenKind::P => f.write_str("p"),
            GenKind::H(i) => write!(f, "h{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: Generator, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gen)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// The set of generators a word may be drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    pub rank: u32,
    pub t: bool,
    pub p: bool,
    pub mirror: bool,
    /// Only the formal subgroup letters `h_1..h_rank`.
    pub subgroup: bool,
}

impl Alphabet {
    /// `a_1..a_k, t`.
    pub fn group(rank: u32) -> Self {
        Alphabet {
            rank,
            t: true,
            p: false,
            mirror: false,
            subgroup: false,
        }
    }

    pub fn fiber(rank: u32) -> Self {
        Alphabet {
            t: false,
            ..Alphabet::group(rank)
        }
    }

    pub fn hnn(rank: u32) -> Self {
        Alphabet {
            p: true,
            ..Alphabet::group(rank)
        }
    }

    pub fn double(rank: u32) -> Self {
        Alphabet {
            mirror: true,
            ..Alphabet::group(rank)
        }
    }

    pub fn subgroup(rank: u32) -> Self {
        Alphabet {
            rank,
            t: false,
            p: false,
            mirror: false,
            subgroup: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::Spec("alphabet rank must be at least 1".into()));
        }
        if self.subgroup && (self.t || self.p || self.mirror) {
            return Err(Error::Spec(
                "subgroup alphabets carry only h letters".into(),
            ));
        }
        Ok(())
    }

    pub fn contains(&self, g: Generator) -> bool {
        if g.mirrored && !self.mirror {
            return false;
        }
        match g.kind {
            GenKind::A(i) => !self.subgroup && (1..=self.rank).contains(&i),
            GenKind::T => self.t,
            GenKind::P => self.p && !g.mirrored,
            GenKind::H(i) => self.subgroup && (1..=self.rank).contains(&i),
        }
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|l| !self.contains(l.gen)) {
            None => Ok(()),
            Some(l) => Err(Error::Alphabet {
                letter: l.gen.to_string(),
                alphabet: self.to_string(),
            }),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.subgroup { 'h' } else { 'a' };
        write!(f, "{{{letter}1..{letter}{}", self.rank)?;
        if self.t {
            f.write_str(", t")?;
        }
        if self.p {
            f.write_str(", p")?;
        }
        if self.mirror {
            f.write_str(", mirrored copy")?;
        }
        f.write_str("}")
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn gen(g: Generator) -> Self {
        Word::from_letter(Letter::new(g, false))
    }

    pub fn a(i: u32) -> Self {
        Word::gen(Generator::a(i))
    }

    pub fn t() -> Self {
        Word::gen(Generator::T)
    }

    pub fn p() -> Self {
        Word::gen(Generator::P)
    }

    pub fn h(i: u32) -> Self {
        Word::gen(Generator::h(i))
    }

    /// `g^n` for a single generator.
    pub fn gen_pow(g: Generator, n: i64) -> Self {
        let l = Letter::new(g, n < 0);
        Word(vec![l; n.unsigned_abs() as usize])
    }

    /// Freely reduces `raw` under the default length guard.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Result<Self> {
        Word::reduce_bounded(raw, DEFAULT_MAX_LENGTH)
    }

    /// Freely reduces `raw`, failing if the reduced word is longer than `limit`.
    pub fn reduce_bounded(raw: impl IntoIterator<Item = Letter>, limit: usize) -> Result<Self> {
        let mut out: Vec<Letter> = Vec::new();
        for l in raw {
            push_reduced(&mut out, l);
            // the stack can shrink again later, so allow some slack before bailing
            if out.len() > limit.saturating_mul(2) {
                return Err(Error::LengthLimit {
                    len: out.len(),
                    limit,
                });
            }
        }
        if out.len() > limit {
            return Err(Error::LengthLimit {
                len: out.len(),
                limit,
            });
        }
        Ok(Word(out))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Product `self * other`, reduced.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.reserve(other.len());
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn mul_bounded(&self, other: &Word, limit: usize) -> Result<Word> {
        let w = self.mul(other);
        if w.len() > limit {
            return Err(Error::LengthLimit {
                len: w.len(),
                limit,
            });
        }
        Ok(w)
    }

    /// Reduced product of a sequence of words.
    pub fn product<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut out = Vec::new();
        for p in parts {
            for &l in &p.0 {
                push_reduced(&mut out, l);
            }
        }
        Word(out)
    }

    /// `self^n`, using the cyclic reduction so the length check is exact.
    pub fn pow(&self, n: i64, limit: usize) -> Result<Word> {
        if n == 0 || self.is_empty() {
            return Ok(Word::empty());
        }
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let (prefix, core) = base.cyclic_split();
        let reps = n.unsigned_abs();
        let len = (core.len() as u64)
            .checked_mul(reps)
            .and_then(|x| x.checked_add(2 * prefix.len() as u64))
            .ok_or(Error::Overflow("word power length"))?;
        if len > limit as u64 {
            return Err(Error::LengthLimit {
                len: usize::try_from(len).unwrap_or(usize::MAX),
                limit,
            });
        }
        let mut out = Vec::with_capacity(len as usize);
        out.extend_from_slice(&prefix.0);
        for _ in 0..reps {
            out.extend_from_slice(&core.0);
        }
        out.extend(prefix.0.iter().rev().map(|l| l.inv()));
        Ok(Word(out))
    }

    /// Splits a reduced word as `c * v * c^-1` with `v` cyclically reduced.
    pub fn cyclic_split(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut i = 0;
        while 2 * i + 1 < n && self.0[i].cancels(self.0[n - 1 - i]) {
            i += 1;
        }
        (Word(self.0[..i].to_vec()), Word(self.0[i..n - i].to_vec()))
    }

    /// `b^-1 * self * b`.
    pub fn conj(&self, b: &Word) -> Word {
        Word::product([&b.inverse(), self, b])
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        Word::product([&x.inverse(), &y.inverse(), x, y])
    }

    /// Signed number of occurrences of `g`.
    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.0.iter().filter(|l| l.gen == g).map(|l| l.sign()).sum()
    }

    /// Largest `i` such that `a_i` occurs.
    pub fn top_level(&self) -> Option<u32> {
        self.0.iter().filter_map(|l| l.gen.a_index()).max()
    }

    pub fn contains_gen(&self, g: Generator) -> bool {
        self.0.iter().any(|l| l.gen == g)
    }

    /// True if every letter is a positive power of a generator.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.inverse)
    }

    /// Swaps the mirrored tag on every letter.
    pub fn toggle_mirror(&self) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter::new(l.gen.toggle_mirror(), l.inverse))
                .collect(),
        )
    }

    /// Deletes every occurrence of `g`.
    pub fn erase(&self, g: Generator) -> Word {
        Word::product([&Word(
            self.0.iter().copied().filter(|l| l.gen != g).collect(),
        )])
    }

    /// Groups the letters into maximal runs `(generator, exponent)`.
    pub fn runs(&self) -> Vec<(Generator, i64)> {
        let mut runs: Vec<(Generator, i64)> = Vec::new();
        for l in &self.0 {
            match runs.last_mut() {
                Some((g, e)) if *g == l.gen => *e += l.sign(),
                _ => runs.push((l.gen, l.sign())),
            }
        }
        runs
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    match out.last() {
        Some(&last) if last.cancels(l) => {
            out.pop();
        }
        _ => out.push(l),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.runs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A homomorphism from a free group, given by the images of its generators.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    images: BTreeMap<Generator, Word>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn with(mut self, g: Generator, image: Word) -> Self {
        self.images.insert(g, image);
        self
    }

    pub fn insert(&mut self, g: Generator, image: Word) {
        self.images.insert(g, image);
    }

    pub fn image(&self, g: Generator) -> Option<&Word> {
        self.images.get(&g)
    }

    pub fn domain(&self) -> impl Iterator<Item = Generator> + '_ {
        self.images.keys().copied()
    }

    /// Checks that every generator of `alphabet` has an image.
    pub fn is_total_on(&self, gens: impl IntoIterator<Item = Generator>) -> bool {
        gens.into_iter().all(|g| self.images.contains_key(&g))
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.apply_bounded(w, DEFAULT_MAX_LENGTH)
    }

    pub fn apply_bounded(&self, w: &Word, limit: usize) -> Result<Word> {
        let mut out: Vec<Letter> = Vec::new();
        for l in w.letters() {
            let img = self.images.get(&l.gen).ok_or_else(|| Error::Alphabet {
                letter: l.gen.to_string(),
                alphabet: "substitution domain".into(),
            })?;
            if l.inverse {
                for &x in img.0.iter().rev() {
                    push_reduced(&mut out, x.inv());
                }
            } else {
                for &x in &img.0 {
                    push_reduced(&mut out, x);
                }
            }
            if out.len() > limit.saturating_mul(2) {
                return Err(Error::LengthLimit {
                    len: out.len(),
                    limit,
                });
            }
        }
        if out.len() > limit {
            return Err(Error::LengthLimit {
                len: out.len(),
                limit,
            });
        }
        Ok(Word(out))
    }
}
