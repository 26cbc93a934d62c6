//! Membership in `H_k(r) = <a_1 t^r_1, ..., a_k t^r_k>` via piece decompositions.
//!
//! A fiber word is cut into pieces at its highest letter `a_j`: a cut before every
//! `a_j` and after every `a_j^-1`. Reading `t^p u` left to right, each piece `pi`
//! moves the current exponent `p` to the unique `q` with `t^p pi` in `H t^q`
//! (when one exists). The element `t^r u` is in `H` exactly when the walk starting
//! at `p = r` ends at `q = 0`.
//!
//! With `g_j = a_j t^r_j` and `a_j^-1 t^p a_j = t^p phi(j, p)^-1` the steps are:
//!
//! * `a_j v`: `t^p a_j v = g_j t^(p - r_j) phi(j,p)^-1 v`, recurse one level down.
//! * `v a_j^-1`: `q` solves `reach(p, v phi(j, q), j - 1) = q - r_j`. At level 2
//!   this is linear in `q`; higher levels search a window around `p`.
//! * `a_j v a_j^-1`: the prefix rewrite followed by the suffix step.
//!
//! Every step also produces a certificate over `h_1..h_k`, and a `Member` verdict
//! is only returned after the certificate re-expands to the queried element.

use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{GroupSpec, NormalForm};
use crate::maps;
use crate::words::{Alphabet, Generator, Substitution, Word};

pub const DEFAULT_WINDOW: i64 = 64;

/// The exponent vector `r` of `H_k(r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubgroupSpec {
    r: Vec<i64>,
}

impl SubgroupSpec {
    pub fn new(r: Vec<i64>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::Spec("subgroup needs at least one exponent".into()));
        }
        if let Some((i, ri)) = r.iter().enumerate().find(|(_, &ri)| ri < 0) {
            return Err(Error::Spec(format!("r{} = {ri} is negative", i + 1)));
        }
        Ok(SubgroupSpec { r })
    }

    /// `H_k = <a_1 t, ..., a_k t>`.
    pub fn classic(k: u32) -> Self {
        SubgroupSpec {
            r: vec![1; k as usize],
        }
    }

    pub fn rank(&self) -> u32 {
        self.r.len() as u32
    }

    /// `r_i`, 1-indexed.
    pub fn r(&self, i: u32) -> i64 {
        self.r[i as usize - 1]
    }

    pub fn exponents(&self) -> &[i64] {
        &self.r
    }

    pub fn is_classic(&self) -> bool {
        self.r.iter().all(|&x| x == 1)
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.r.iter().map(|x| x.to_string()).collect();
        write!(f, "H_{}({})", self.r.len(), parts.join(","))
    }
}

/// One piece of a decomposition at `level`: optional leading `a_level`, a core
/// over lower letters, optional trailing `a_level^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub level: u32,
    pub prefix: bool,
    pub core: Word,
    pub suffix: bool,
}

impl Piece {
    pub fn word(&self) -> Word {
        let top = Word::a(self.level);
        let mut w = Word::empty();
        if self.prefix {
            w = top.clone();
        }
        w = w.mul(&self.core);
        if self.suffix {
            w = w.mul(&top.inverse());
        }
        w
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.word())
    }
}

/// Splits `u` into pieces relative to `a_level`.
pub fn pieces(u: &Word, level: u32) -> Vec<Piece> {
    let top = Generator::a(level);
    let mut out = Vec::new();
    let mut cur: Option<Piece> = None;
    let fresh = |prefix| Piece {
        level,
        prefix,
        core: Word::empty(),
        suffix: false,
    };
    for &l in u.letters() {
        if l.gen == top && !l.inverse {
            out.extend(cur.take());
            cur = Some(fresh(true));
        } else if l.gen == top {
            let mut p = cur.take().unwrap_or_else(|| fresh(false));
            p.suffix = true;
            out.push(p);
        } else {
            let p = cur.get_or_insert_with(|| fresh(false));
            p.core = p.core.mul(&Word::from_letter(l));
        }
    }
    out.extend(cur);
    out
}

/// Result of one coset step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reach {
    /// `t^p u = expand(cert) t^q`.
    Coset {
        q: i64,
        cert: Word,
    },
    NoCoset(String),
    Undecided(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipResult {
    /// Certificate over `h_1..h_k`, already verified.
    Member(Word),
    NonMember(String),
    Undecided(String),
}

impl MembershipResult {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipResult::Member(_))
    }

    pub fn is_non_member(&self) -> bool {
        matches!(self, MembershipResult::NonMember(_))
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, MembershipResult::Undecided(_))
    }
}

impl fmt::Display for MembershipResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipResult::Member(c) => write!(f, "Member: {c}"),
            MembershipResult::NonMember(why) => write!(f, "NonMember: {why}"),
            MembershipResult::Undecided(why) => write!(f, "Undecided: {why}"),
        }
    }
}

/// A group `G_k(w)` together with a subgroup `H_k(r)`.
#[derive(Debug, Clone)]
pub struct GroupPair {
    group: GroupSpec,
    sub: SubgroupSpec,
    window: i64,
    expansion: Substitution,
}

impl GroupPair {
    pub fn new(group: GroupSpec, sub: SubgroupSpec) -> Result<Self> {
        if group.rank() != sub.rank() {
            return Err(Error::Spec(format!(
                "subgroup has {} generators but the group has rank {}",
                sub.rank(),
                group.rank()
            )));
        }
        let mut expansion = Substitution::new();
        for i in 1..=group.rank() {
            let img = Word::a(i).mul(&Word::gen_pow(Generator::T, sub.r(i)));
            expansion.insert(Generator::h(i), img);
        }
        Ok(GroupPair {
            group,
            sub,
            window: DEFAULT_WINDOW,
            expansion,
        })
    }

    /// Classic hydra pair `(G_k, H_k)`.
    pub fn hydra(k: u32) -> Result<Self> {
        GroupPair::new(GroupSpec::hydra(k)?, SubgroupSpec::classic(k))
    }

    /// `(G_2, H_2(r1, r2))` for the hydra group `G_2`.
    pub fn hydra2(r1: i64, r2: i64) -> Result<Self> {
        GroupPair::new(GroupSpec::hydra(2)?, SubgroupSpec::new(vec![r1, r2])?)
    }

    pub fn with_window(mut self, window: i64) -> Self {
        self.window = window.max(0);
        self
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn subgroup(&self) -> &SubgroupSpec {
        &self.sub
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn rank(&self) -> u32 {
        self.group.rank()
    }

    /// `h_i -> a_i t^r_i`.
    pub fn expansion(&self) -> &Substitution {
        &self.expansion
    }

    pub fn expand(&self, cert: &Word) -> Result<Word> {
        Alphabet::subgroup(self.rank()).check(cert)?;
        self.expansion.apply_bounded(cert, self.group.max_length())
    }

    /// Configurations whose structural assumptions are covered by the oracle tests
    /// shipped with this crate.
    pub fn is_validated(&self) -> bool {
        let g = &self.group;
        if g.is_hydra() && self.sub.is_classic() {
            return true;
        }
        if g.rank() == 2 {
            let e = g.w(2).len();
            return e <= 2 && self.sub.exponents().iter().all(|&r| r <= 3);
        }
        false
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.is_validated() {
            out.push(format!(
                "warning: {} in this group is outside the validated configurations; \
                 verdicts rely on the piece recursion remaining exact here",
                self.sub
            ));
        }
        out
    }

    /// `h` letters exponentiated.
    fn h_pow(i: u32, n: i64) -> Word {
        Word::gen_pow(Generator::h(i), n)
    }

    /// The unique `q` with `t^p u` in `H t^q`, where `u` is a fiber word.
    pub fn reach(&self, p: i64, u: &Word) -> Result<Reach> {
        Alphabet::fiber(self.rank()).check(u)?;
        self.reach_at(p, u, u.top_level().unwrap_or(0))
    }

    /// Same as [`GroupPair::reach`] with the decomposition level given explicitly;
    /// letters above `level` are rejected.
    pub fn reach_level(&self, p: i64, u: &Word, level: u32) -> Result<Reach> {
        Alphabet::fiber(self.rank()).check(u)?;
        if u.top_level().unwrap_or(0) > level {
            return Err(Error::Spec(format!("{u} has letters above level {level}")));
        }
        self.reach_at(p, u, level)
    }

    fn reach_at(&self, p: i64, u: &Word, level: u32) -> Result<Reach> {
        let top = match u.top_level() {
            None => {
                return Ok(Reach::Coset {
                    q: p,
                    cert: Word::empty(),
                })
            }
            Some(top) => top.min(level),
        };
        if top == 1 {
            let n = u.exponent_sum(Generator::a(1));
            let q = n
                .checked_mul(self.sub.r(1))
                .and_then(|x| p.checked_sub(x))
                .ok_or(Error::Overflow("coset exponent"))?;
            return Ok(Reach::Coset {
                q,
                cert: Self::h_pow(1, n),
            });
        }
        let mut cur = p;
        let mut cert = Word::empty();
        let split = pieces(u, top);
        let many = split.len() > 1;
        for (idx, piece) in split.iter().enumerate() {
            match self.step(cur, piece)? {
                Reach::Coset { q, cert: c } => {
                    cur = q;
                    cert = cert.mul(&c);
                }
                Reach::NoCoset(why) if many => {
                    return Ok(Reach::NoCoset(format!("piece {} {piece}: {why}", idx + 1)))
                }
                other @ Reach::NoCoset(_) => return Ok(other),
                Reach::Undecided(why) => {
                    return Ok(Reach::Undecided(format!(
                        "piece {} {piece}: {why}",
                        idx + 1
                    )))
                }
            }
        }
        Ok(Reach::Coset { q: cur, cert })
    }

    fn step(&self, p: i64, piece: &Piece) -> Result<Reach> {
        let j = piece.level;
        if !piece.prefix && !piece.suffix {
            return self.reach_at(p, &piece.core, j - 1);
        }
        let (p, core, lead) = if piece.prefix {
            // t^p a_j v = g_j t^(p - r_j) phi(j,p)^-1 v
            let shifted = p
                .checked_sub(self.sub.r(j))
                .ok_or(Error::Overflow("coset exponent"))?;
            let v = self.group.phi_rel(j, p)?.inverse().mul(&piece.core);
            (shifted, v, Self::h_pow(j, 1))
        } else {
            (p, piece.core.clone(), Word::empty())
        };
        let inner = if piece.suffix {
            self.suffix_step(p, &core, j)?
        } else {
            self.reach_at(p, &core, j - 1)?
        };
        Ok(match inner {
            Reach::Coset { q, cert } => Reach::Coset {
                q,
                cert: lead.mul(&cert),
            },
            other => other,
        })
    }

    /// Finds `q` with `t^p v a_j^-1` in `H t^q`.
    fn suffix_step(&self, p: i64, v: &Word, j: u32) -> Result<Reach> {
        let r_j = self.sub.r(j);
        let attempt = |q: i64| -> Result<Option<Word>> {
            let rhs = v.mul_bounded(&self.group.phi_rel(j, q)?, self.group.max_length())?;
            let target = q
                .checked_sub(r_j)
                .ok_or(Error::Overflow("coset exponent"))?;
            Ok(match self.reach_at(p, &rhs, j - 1)? {
                Reach::Coset { q: got, cert } if got == target => {
                    Some(cert.mul(&Self::h_pow(j, -1)))
                }
                _ => None,
            })
        };

        if j == 2 {
            // v = a_1^n and phi(2, q) = a_1^(e q): q (1 + e r_1) = p + r_2 - n r_1
            let n = v.exponent_sum(Generator::a(1));
            let e = self.group.w(2).exponent_sum(Generator::a(1));
            let r_1 = self.sub.r(1);
            let num = n
                .checked_mul(r_1)
                .and_then(|x| p.checked_add(r_j)?.checked_sub(x))
                .ok_or(Error::Overflow("coset exponent"))?;
            let den = e
                .checked_mul(r_1)
                .and_then(|x| x.checked_add(1))
                .ok_or(Error::Overflow("coset exponent"))?;
            if num % den != 0 {
                return Ok(Reach::NoCoset(format!(
                    "q = {} not integral",
                    Fraction::new(num, den)
                )));
            }
            let q = num / den;
            return match attempt(q)? {
                Some(cert) => Ok(Reach::Coset { q, cert }),
                None => Err(Error::Certificate(format!(
                    "closed-form coset q = {q} failed verification at level 2"
                ))),
            };
        }

        let mut skipped = 0usize;
        for q in window_order(p, self.window) {
            match attempt(q) {
                Ok(Some(cert)) => return Ok(Reach::Coset { q, cert }),
                Ok(None) => {}
                Err(e) if e.is_resource() => skipped += 1,
                Err(e) => return Err(e),
            }
        }
        let mut why = format!(
            "no coset for the suffix step at level {j} with q in [{}, {}]",
            p.saturating_sub(self.window),
            p.saturating_add(self.window)
        );
        if skipped > 0 {
            why.push_str(&format!(" ({skipped} candidates exceeded resource limits)"));
        }
        Ok(Reach::Undecided(why))
    }

    /// Decides whether `g` lies in the subgroup.
    pub fn member(&self, g: &Word) -> Result<MembershipResult> {
        let nf = self.group.normalize(g)?;
        self.member_nf(&nf)
    }

    pub fn member_nf(&self, nf: &NormalForm) -> Result<MembershipResult> {
        let reach = self.reach_at(nf.t_exp, &nf.u, nf.u.top_level().unwrap_or(0))?;
        Ok(match reach {
            Reach::Coset { q: 0, cert } => {
                self.verify(&cert, nf)?;
                MembershipResult::Member(cert)
            }
            Reach::Coset { q, .. } => MembershipResult::NonMember(format!(
                "the piece walk ends in the coset H t^{q}, and no nonzero power of t lies in H"
            )),
            Reach::NoCoset(why) => MembershipResult::NonMember(why),
            Reach::Undecided(why) => MembershipResult::Undecided(why),
        })
    }

    /// Checks that `cert` re-expands to the element with normal form `nf`.
    pub fn verify(&self, cert: &Word, nf: &NormalForm) -> Result<()> {
        let expanded = self.group.normalize(&self.expand(cert)?)?;
        if expanded != *nf {
            return Err(Error::Certificate(format!(
                "{cert} expands to {expanded}, expected {nf}"
            )));
        }
        Ok(())
    }

    /// Certificate over `h_1..h_k` for a member element.
    pub fn express(&self, g: &Word) -> Result<Word> {
        match self.member(g)? {
            MembershipResult::Member(c) => Ok(c),
            MembershipResult::NonMember(why) => Err(Error::NotMember(why)),
            MembershipResult::Undecided(why) => Err(Error::Undecided(why)),
        }
    }
}

/// `p, p+1, p-1, p+2, p-2, ...` out to distance `w`.
fn window_order(p: i64, w: i64) -> impl Iterator<Item = i64> {
    std::iter::once(p).chain(
        (1..=w).flat_map(move |d| [p.checked_add(d), p.checked_sub(d)].into_iter().flatten()),
    )
}

struct Fraction(i64, i64);

impl Fraction {
    fn new(num: i64, den: i64) -> Self {
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        let (num, den) = (num / g, den / g);
        if den < 0 {
            Fraction(-num, -den)
        } else {
            Fraction(num, den)
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0, self.1)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Non-separability witness for `H_k(r)` in `G_k(w)` when `w = (1, .., 1, w_c, ..)`.
///
/// `<w_c, a_c, t>` is a copy of `G_2` (via `a_1 -> w_c`, `a_2 -> a_c`) meeting
/// `H_k(r)` in the image of `H_2(S, r_c)` with `S = sum_{i<c} [w_c]_i r_i`.
/// The witness is built in `G_2` and pushed forward; its status is decided
/// against `H_2(S, r_c)` inside that copy.
pub fn transport_witness(pair: &GroupPair) -> Result<(Word, MembershipResult)> {
    let group = pair.group();
    let c = (1..=group.rank())
        .find(|&i| !group.w(i).is_empty())
        .ok_or_else(|| {
            Error::Unsupported(
                "every w_i is trivial, so G is F_k x Z and the subgroup is separable".into(),
            )
        })?;
    let w_c = group.w(c);
    let mut sum: i64 = 0;
    for i in 1..c {
        let term = w_c
            .exponent_sum(Generator::a(i))
            .checked_mul(pair.subgroup().r(i))
            .ok_or(Error::Overflow("index sum"))?;
        sum = sum.checked_add(term).ok_or(Error::Overflow("index sum"))?;
    }
    if sum == 0 {
        return Err(Error::Unsupported(format!(
            "sum of [w_{c}]_i r_i over i < {c} is 0; separability of this case is open"
        )));
    }
    let r_c = pair.subgroup().r(c);
    let inner = GroupPair::hydra2(sum, r_c)?.with_window(pair.window());
    let local = if sum == 1 && r_c == 1 {
        maps::bks_pullback()
    } else {
        // a_2 -> a_2 t^r_c carries H_2(S, 0) onto H_2(S, r_c)
        maps::eta(r_c + 1).apply(&maps::commutator_witness())?
    };
    let status = inner.member(&local)?;
    let pushed = maps::embed(c, w_c).apply_bounded(&local, group.max_length())?;
    Ok((pushed, status))
}
