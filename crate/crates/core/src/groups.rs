//! Triangular free-by-cyclic groups `G_k(w) = <a_1..a_k, t | a_i^t = a_i w_i>`.
//!
//! Conjugation by `t` acts on the free fiber `F(a_1..a_k)` by the automorphism
//! `theta(a_i) = a_i w_i`. Every element has a unique normal form `t^r u` with
//! `u` a reduced fiber word, which gives an exact solution to the word problem.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::words::{Alphabet, GenKind, Generator, Letter, Substitution, Word, DEFAULT_MAX_LENGTH};

#[derive(Clone)]
pub struct GroupSpec {
    k: u32,
    w: Vec<Word>,
    theta: Substitution,
    theta_inv: Substitution,
    max_length: usize,
    // phi(j, m) keyed by (j, m); shared between clones
    phi_cache: Arc<Mutex<HashMap<(u32, i64), Word>>>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.w == other.w
    }
}

impl Eq for GroupSpec {}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupSpec")
            .field("k", &self.k)
            .field(
                "w",
                &self.w.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// The element `t^t_exp * u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub t_exp: i64,
    pub u: Word,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm {
            t_exp: 0,
            u: Word::empty(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.t_exp == 0 && self.u.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word::gen_pow(Generator::T, self.t_exp).mul(&self.u)
    }

    /// Length of the word `t^r u`.
    pub fn len(&self) -> usize {
        self.t_exp.unsigned_abs() as usize + self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t_exp, self.u)
    }
}

impl GroupSpec {
    /// Checks a defining vector `w` and builds the spec.
    pub fn new(k: u32, w: Vec<Word>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Spec("rank k must be at least 1".into()));
        }
        if w.len() != k as usize {
            return Err(Error::Spec(format!(
                "expected {k} defining words, got {}",
                w.len()
            )));
        }
        for (idx, wi) in w.iter().enumerate() {
            let i = idx as u32 + 1;
            if !wi.is_positive() {
                return Err(Error::Spec(format!("w{i} = {wi} is not a positive word")));
            }
            if let Some(l) = wi
                .letters()
                .iter()
                .find(|l| l.gen.mirrored || !matches!(l.gen.kind, GenKind::A(j) if j < i))
            {
                return Err(Error::Spec(format!(
                    "w{i} may only use a1..a{}, found {}",
                    i - 1,
                    l.gen
                )));
            }
        }

        let mut theta = Substitution::new();
        let mut theta_inv = Substitution::new();
        for (idx, wi) in w.iter().enumerate() {
            let i = idx as u32 + 1;
            let a = Word::a(i);
            theta.insert(Generator::a(i), a.mul(wi));
            // theta^-1(a_i) = a_i theta^-1(w_i)^-1; w_i only uses letters already done
            let back = theta_inv.apply(wi)?;
            theta_inv.insert(Generator::a(i), a.mul(&back.inverse()));
        }

        Ok(GroupSpec {
            k,
            w,
            theta,
            theta_inv,
            max_length: DEFAULT_MAX_LENGTH,
            phi_cache: Arc::default(),
        })
    }

    /// The hydra group `G_k`: `w_1 = 1`, `w_i = a_{i-1}`.
    pub fn hydra(k: u32) -> Result<Self> {
        let w = (1..=k)
            .map(|i| {
                if i == 1 {
                    Word::empty()
                } else {
                    Word::a(i - 1)
                }
            })
            .collect();
        GroupSpec::new(k, w)
    }

    pub fn with_max_length(mut self, max_length: usize) -> Self {
        self.max_length = max_length;
        self
    }

    pub fn rank(&self) -> u32 {
        self.k
    }

    /// `w_i`, 1-indexed.
    pub fn w(&self, i: u32) -> &Word {
        &self.w[i as usize - 1]
    }

    pub fn defining_words(&self) -> &[Word] {
        &self.w
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::group(self.k)
    }

    pub fn is_hydra(&self) -> bool {
        (1..=self.k).all(|i| {
            let expect = if i == 1 {
                Word::empty()
            } else {
                Word::a(i - 1)
            };
            *self.w(i) == expect
        })
    }

    /// The single-step automorphism `theta` on fiber letters.
    pub fn theta(&self) -> &Substitution {
        &self.theta
    }

    pub fn theta_inverse(&self) -> &Substitution {
        &self.theta_inv
    }

    fn check_fiber(&self, w: &Word) -> Result<()> {
        Alphabet::fiber(self.k).check(w)
    }

    /// `theta^m(w)` for a fiber word `w`.
    pub fn theta_pow(&self, m: i64, w: &Word) -> Result<Word> {
        self.check_fiber(w)?;
        self.theta_pow_unchecked(m, w)
    }

    fn theta_pow_unchecked(&self, m: i64, w: &Word) -> Result<Word> {
        if m == 0 || w.is_empty() {
            return Ok(w.clone());
        }
        if m == 1 {
            return self.theta.apply_bounded(w, self.max_length);
        }
        if m == -1 {
            return self.theta_inv.apply_bounded(w, self.max_length);
        }
        let top = w.top_level().unwrap_or(0);
        let mut images = Substitution::new();
        for j in 1..=top {
            if w.contains_gen(Generator::a(j)) {
                let img = Word::a(j).mul(&self.phi_rel(j, m)?);
                images.insert(Generator::a(j), img);
            }
        }
        images.apply_bounded(w, self.max_length)
    }

    /// The word `phi(j, m)` with `theta^m(a_j) = a_j * phi(j, m)`.
    ///
    /// Satisfies `phi(j, m1 + m2) = phi(j, m1) * theta^m1(phi(j, m2))`; values are
    /// built by halving `m` and cached per `(j, m)`.
    pub fn phi_rel(&self, j: u32, m: i64) -> Result<Word> {
        if j == 0 || j > self.k {
            return Err(Error::Spec(format!("level {j} outside 1..={}", self.k)));
        }
        if m == 0 || self.w(j).is_empty() {
            return Ok(Word::empty());
        }
        if m == 1 {
            return Ok(self.w(j).clone());
        }
        if m == -1 {
            // theta^-1(a_j) = a_j * theta^-1(w_j)^-1
            let img = self
                .theta_inv
                .image(Generator::a(j))
                .expect("total on a-letters");
            return Ok(Word::a(j).inverse().mul(img));
        }
        if let Some(hit) = self.phi_cache.lock().expect("phi cache").get(&(j, m)) {
            return Ok(hit.clone());
        }
        let half = m / 2;
        let first = self.phi_rel(j, half)?;
        let second = self.phi_rel(j, m - half)?;
        let moved = self.theta_pow_unchecked(half, &second)?;
        let out = first.mul_bounded(&moved, self.max_length)?;
        self.phi_cache
            .lock()
            .expect("phi cache")
            .insert((j, m), out.clone());
        Ok(out)
    }

    /// Free-by-cyclic normal form of a word over `a_1..a_k, t`.
    pub fn normalize(&self, w: &Word) -> Result<NormalForm> {
        self.alphabet().check(w)?;
        let mut r: i64 = 0;
        let mut u = Word::empty();
        for (g, e) in w.runs() {
            match g.kind {
                // t^r u t^e = t^(r+e) theta^e(u)
                GenKind::T => {
                    u = self.theta_pow_unchecked(e, &u)?;
                    r = r.checked_add(e).ok_or(Error::Overflow("t-exponent"))?;
                }
                _ => {
                    u = u.mul_bounded(&Word::gen_pow(g, e), self.max_length)?;
                }
            }
        }
        Ok(NormalForm { t_exp: r, u })
    }

    /// Normal form of the product of two normal forms.
    pub fn compose(&self, x: &NormalForm, y: &NormalForm) -> Result<NormalForm> {
        let moved = self.theta_pow_unchecked(y.t_exp, &x.u)?;
        Ok(NormalForm {
            t_exp: x
                .t_exp
                .checked_add(y.t_exp)
                .ok_or(Error::Overflow("t-exponent"))?,
            u: moved.mul_bounded(&y.u, self.max_length)?,
        })
    }

    pub fn equal(&self, w1: &Word, w2: &Word) -> Result<bool> {
        Ok(self.normalize(w1)? == self.normalize(w2)?)
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        Ok(self.normalize(w)?.is_identity())
    }

    /// Image in the abelianization `<a_2, t | [a_2, t]>` of the hydra group `G_2`,
    /// returned as `(a_2 exponent, t exponent)`.
    pub fn abelianize(&self, w: &Word) -> Result<(i64, i64)> {
        if !(self.k == 2 && self.is_hydra()) {
            return Err(Error::Unsupported(
                "abelianization is only provided for the hydra group G_2".into(),
            ));
        }
        self.alphabet().check(w)?;
        Ok((
            w.exponent_sum(Generator::a(2)),
            w.exponent_sum(Generator::T),
        ))
    }
}

/// `t_i = a_2^-i t a_2^i`.
pub fn t_word(i: i64) -> Word {
    Word::t().conj(&Word::gen_pow(Generator::a(2), i))
}

/// Builds a word over `a_1..a_k, t` from `(generator, exponent)` pairs; test helper
/// and shorthand for fixed displays.
pub fn word_of(parts: &[(Generator, i64)]) -> Word {
    let letters = parts
        .iter()
        .flat_map(|&(g, e)| std::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize));
    Word::reduce(letters).expect("short literal word")
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: Generator = Generator::T;
    const A1: Generator = Generator::a(1);
    const A2: Generator = Generator::a(2);
    const A3: Generator = Generator::a(3);

    fn a1_pow(n: i64) -> Word {
        Word::gen_pow(A1, n)
    }

    /// m-fold application of the one-step automorphism; independent of `phi_rel`.
    fn theta_iterated(g: &GroupSpec, m: i64, w: &Word) -> Word {
        let step = if m >= 0 { g.theta() } else { g.theta_inverse() };
        (0..m.abs()).fold(w.clone(), |acc, _| step.apply(&acc).unwrap())
    }

    #[test]
    fn validate_spec_examples() {
        assert!(GroupSpec::new(2, vec![Word::empty(), Word::a(1)]).is_ok());
        assert!(GroupSpec::new(2, vec![Word::empty(), Word::a(1).inverse()]).is_err());
        assert!(GroupSpec::new(3, vec![Word::empty(), Word::a(1), Word::a(2)]).is_ok());
        // letters must come from strictly lower levels
        assert!(GroupSpec::new(2, vec![Word::empty(), Word::a(2)]).is_err());
        assert!(GroupSpec::new(2, vec![Word::a(1), Word::empty()]).is_err());
        assert!(GroupSpec::new(2, vec![Word::empty(), Word::t()]).is_err());
        assert!(GroupSpec::new(2, vec![Word::empty()]).is_err());
        assert!(GroupSpec::new(0, vec![]).is_err());
        assert!(GroupSpec::hydra(3).unwrap().is_hydra());
    }

    #[test]
    fn theta_on_hydra_g2() {
        let g = GroupSpec::hydra(2).unwrap();
        assert_eq!(
            g.theta_pow(1, &Word::a(2)).unwrap(),
            word_of(&[(A2, 1), (A1, 1)])
        );
        let back = g.theta_pow(-1, &Word::a(2)).unwrap();
        assert_eq!(back, word_of(&[(A2, 1), (A1, -1)]));
        assert_eq!(g.theta_pow(1, &back).unwrap(), Word::a(2));
        for m in -6..=6 {
            assert_eq!(g.theta_pow(m, &Word::a(1)).unwrap(), Word::a(1));
        }
    }

    #[test]
    fn phi_rel_hydra_g2_is_a1_power() {
        let g = GroupSpec::hydra(2).unwrap();
        for m in -5..=5 {
            assert_eq!(g.phi_rel(2, m).unwrap(), a1_pow(m), "m = {m}");
            let direct = theta_iterated(&g, m, &Word::a(2));
            assert_eq!(direct, Word::a(2).mul(&a1_pow(m)));
        }
        assert_eq!(g.phi_rel(1, 7).unwrap(), Word::empty());
    }

    #[test]
    fn phi_rel_hydra_g3_matches_iteration() {
        let g = GroupSpec::hydra(3).unwrap();
        let expect = word_of(&[(A2, 2), (A1, 1)]);
        assert_eq!(g.phi_rel(3, 2).unwrap(), expect);
        for m in -7..=7 {
            let direct = theta_iterated(&g, m, &Word::a(3));
            assert_eq!(direct.letters()[0].gen, A3);
            let stripped = Word::a(3).inverse().mul(&direct);
            assert_eq!(g.phi_rel(3, m).unwrap(), stripped, "m = {m}");
        }
    }

    #[test]
    fn theta_pow_matches_iteration_for_generalized_spec() {
        let w3 = word_of(&[(A1, 2), (A2, 1), (A1, 1)]);
        let g = GroupSpec::new(3, vec![Word::empty(), a1_pow(2), w3]).unwrap();
        let x = word_of(&[(A3, 1), (A1, -1), (A2, -2), (A3, -1), (A2, 1)]);
        for m in -5..=5 {
            assert_eq!(
                g.theta_pow(m, &x).unwrap(),
                theta_iterated(&g, m, &x),
                "m = {m}"
            );
        }
    }

    #[test]
    fn theta_growth_hits_the_guard() {
        let g = GroupSpec::hydra(4).unwrap().with_max_length(5_000);
        let err = g.theta_pow(200, &Word::a(4)).unwrap_err();
        assert!(err.is_resource(), "{err:?}");
    }

    #[test]
    fn normalize_examples() {
        let g = GroupSpec::hydra(2).unwrap();
        let nf = g.normalize(&word_of(&[(A1, 1), (T, 1)])).unwrap();
        assert_eq!(
            nf,
            NormalForm {
                t_exp: 1,
                u: Word::a(1)
            }
        );

        let lhs = word_of(&[(T, 1), (A2, 1), (A1, 1)]);
        let nf = g.normalize(&lhs).unwrap();
        // t a2 a1 = a2 t, whose normal form keeps the a1 on the fiber side
        assert_eq!(
            nf,
            NormalForm {
                t_exp: 1,
                u: word_of(&[(A2, 1), (A1, 1)])
            }
        );
        assert!(g.equal(&lhs, &word_of(&[(A2, 1), (T, 1)])).unwrap());

        // the commutator witness [t^-1, a2^-2 t^-1 a2^2]
        let inner = word_of(&[(A2, -2), (T, -1), (A2, 2)]);
        let w = Word::commutator(&Word::t().inverse(), &inner);
        let nf = g.normalize(&w).unwrap();
        let expect = word_of(&[
            (A1, 1),
            (A2, -1),
            (A1, -1),
            (A2, 1),
            (A1, -1),
            (A2, -1),
            (A1, 1),
            (A2, 1),
        ]);
        assert_eq!(
            nf,
            NormalForm {
                t_exp: 0,
                u: expect
            }
        );
    }

    #[test]
    fn equality_examples() {
        let g = GroupSpec::hydra(2).unwrap();
        let conj = word_of(&[(T, -1), (A2, 1), (T, 1)]);
        assert!(g.equal(&conj, &word_of(&[(A2, 1), (A1, 1)])).unwrap());
        assert!(g
            .equal(&word_of(&[(A1, 1), (T, 1)]), &word_of(&[(T, 1), (A1, 1)]))
            .unwrap());
        assert!(!g
            .equal(&word_of(&[(A2, 1), (T, 1)]), &word_of(&[(T, 1), (A2, 1)]))
            .unwrap());
    }

    #[test]
    fn abelianization() {
        let g = GroupSpec::hydra(2).unwrap();
        for r in -3..=3 {
            assert_eq!(g.abelianize(&word_of(&[(A1, 1), (T, r)])).unwrap(), (0, r));
        }
        assert_eq!(g.abelianize(&Word::a(2)).unwrap(), (1, 0));
        assert!(GroupSpec::hydra(3)
            .unwrap()
            .abelianize(&Word::a(1))
            .is_err());
    }

    #[test]
    fn t_family() {
        let g = GroupSpec::hydra(2).unwrap();
        assert_eq!(t_word(0), Word::t());
        let prod = t_word(1).inverse().mul(&t_word(0));
        assert!(g.equal(&prod, &Word::a(1)).unwrap());
        for m in -3..=3 {
            let c = Word::commutator(&t_word(m), &t_word(m + 1));
            assert!(g.is_trivial(&c).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn rejects_foreign_letters() {
        let g = GroupSpec::hydra(2).unwrap();
        assert!(g.normalize(&Word::a(3)).is_err());
        assert!(g.normalize(&Word::p()).is_err());
        assert!(g.theta_pow(1, &Word::t()).is_err());
    }
}
