//! Executable checks of the identities behind the non-separability argument.
//!
//! Each [`CheckItem`] expands into a list of [`Claim`]s: equalities in a group,
//! normal forms, and membership verdicts. The harness evaluates every claim and
//! reports the first one that fails.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expr::parse_word;
use crate::groups::{t_word, GroupSpec, NormalForm};
use crate::maps::{commutator_witness, embed, eta, phi};
use crate::membership::{GroupPair, MembershipResult};
use crate::words::{Substitution, Word};

/// Inputs shared by every item. Swapping in a different `phi` is how the
/// harness itself is tested.
#[derive(Debug, Clone)]
pub struct SuiteContext {
    pub phi: Substitution,
}

impl Default for SuiteContext {
    fn default() -> Self {
        SuiteContext { phi: phi() }
    }
}

#[derive(Debug, Clone)]
pub enum Claim {
    Equal {
        group: GroupSpec,
        lhs: Word,
        rhs: Word,
    },
    NormalForm {
        group: GroupSpec,
        word: Word,
        expected: NormalForm,
    },
    Member {
        pair: GroupPair,
        word: Word,
    },
    /// Non-membership whose reason mentions `reason`.
    NonMember {
        pair: GroupPair,
        word: Word,
        reason: String,
    },
    Abelianizes {
        word: Word,
        a2: i64,
        t: i64,
    },
}

impl Claim {
    fn check(&self) -> std::result::Result<(), String> {
        let fail = |e: Error| e.to_string();
        match self {
            Claim::Equal { group, lhs, rhs } => {
                if group.equal(lhs, rhs).map_err(fail)? {
                    Ok(())
                } else {
                    Err(format!("{lhs} != {rhs}"))
                }
            }
            Claim::NormalForm {
                group,
                word,
                expected,
            } => {
                let nf = group.normalize(word).map_err(fail)?;
                if nf == *expected {
                    Ok(())
                } else {
                    Err(format!(
                        "normal form of {word} is {nf}, expected {expected}"
                    ))
                }
            }
            Claim::Member { pair, word } => match pair.member(word).map_err(fail)? {
                MembershipResult::Member(_) => Ok(()),
                other => Err(format!("{word} in {}: {other}", pair.subgroup())),
            },
            Claim::NonMember { pair, word, reason } => match pair.member(word).map_err(fail)? {
                MembershipResult::NonMember(why) if why.contains(reason.as_str()) => Ok(()),
                other => Err(format!(
                    "{word} in {}: {other} (expected NonMember mentioning '{reason}')",
                    pair.subgroup()
                )),
            },
            Claim::Abelianizes { word, a2, t } => {
                let g = GroupSpec::hydra(2).map_err(fail)?;
                let got = g.abelianize(word).map_err(fail)?;
                if got == (*a2, *t) {
                    Ok(())
                } else {
                    Err(format!(
                        "{word} abelianizes to {got:?}, expected ({a2}, {t})"
                    ))
                }
            }
        }
    }
}

pub struct CheckItem {
    pub id: &'static str,
    pub description: &'static str,
    pub claims: fn(&SuiteContext) -> Result<Vec<Claim>>,
}

#[derive(Debug, Clone)]
pub struct ItemResult {
    pub id: &'static str,
    pub description: &'static str,
    pub checked: usize,
    /// First failing claim, if any.
    pub failure: Option<String>,
    pub elapsed: Duration,
}

impl ItemResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub items: Vec<ItemResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(ItemResult::passed)
    }

    pub fn passed(&self) -> usize {
        self.items.iter().filter(|i| i.passed()).count()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            match &item.failure {
                None => writeln!(
                    f,
                    "PASS {} ({} checks): {}",
                    item.id, item.checked, item.description
                )?,
                Some(why) => writeln!(f, "FAIL {}: {}\n  {why}", item.id, item.description)?,
            }
        }
        writeln!(f, "passed={} total={}", self.passed(), self.items.len())
    }
}

pub fn run_suite(filter: Option<&str>) -> SuiteReport {
    run_suite_with(&SuiteContext::default(), filter)
}

pub fn run_suite_with(ctx: &SuiteContext, filter: Option<&str>) -> SuiteReport {
    let items: Vec<&CheckItem> = ITEMS
        .iter()
        .filter(|i| filter.is_none_or(|f| i.id.contains(f)))
        .collect();
    let items = items
        .par_iter()
        .map(|item| {
            let start = Instant::now();
            let (checked, failure) = match (item.claims)(ctx) {
                Err(e) => (0, Some(e.to_string())),
                Ok(claims) => {
                    let failure = claims.iter().find_map(|c| c.check().err());
                    (claims.len(), failure)
                }
            };
            ItemResult {
                id: item.id,
                description: item.description,
                checked,
                failure,
                elapsed: start.elapsed(),
            }
        })
        .collect();
    SuiteReport { items }
}

pub static ITEMS: &[CheckItem] = &[
    CheckItem {
        id: "phi-endomorphism",
        description: "phi respects [a1, t] = 1 and [a2, t] = a1",
        claims: phi_endomorphism,
    },
    CheckItem {
        id: "phi-surjective",
        description: "a1, a2 and t all lie in the image of phi",
        claims: phi_surjective,
    },
    CheckItem {
        id: "phi-subgroup-images",
        description: "phi(a1 t) = t a2^-1 t^-2 a2 and phi(a2 t) = a2^-1",
        claims: phi_subgroup_images,
    },
    CheckItem {
        id: "phi-commuting-conjugate",
        description: "t commutes with a2^-1 t^-1 a2",
        claims: phi_commuting_conjugate,
    },
    CheckItem {
        id: "phi-bks-relabeling",
        description:
            "phi(H_2) matches <alpha^-1, y alpha^-1 y^-2 alpha> under alpha=a2, beta=a1, y=t",
        claims: phi_bks_relabeling,
    },
    CheckItem {
        id: "eta-images",
        description: "eta_s fixes a1 t^r and sends a2 t to a2 t^s",
        claims: eta_images,
    },
    CheckItem {
        id: "t-family-basics",
        description: "t_1^-1 t_0 = a1 and the witness equals [t_0^-1, t_2^-1]",
        claims: t_family_basics,
    },
    CheckItem {
        id: "t-family-subgroup-generators",
        description: "(a1 t^r)^(a2^(i-1)) = t_i^-1 t_(i-1)^(r+1), and these lie in H_2(r,0)",
        claims: t_family_subgroup_generators,
    },
    CheckItem {
        id: "telescoping-conjugation",
        description: "telescoping products and t_0-conjugates of t_i^-1 t_(i-1)^(r+1) for i < 0",
        claims: telescoping_conjugation,
    },
    CheckItem {
        id: "t-family-commutation",
        description: "[t_m, t_(m+1)] = 1",
        claims: t_family_commutation,
    },
    CheckItem {
        id: "witness-normal-form",
        description: "normal form of [t^-1, a2^-2 t^-1 a2^2] and its non-membership in H_2(r,0)",
        claims: witness_normal_form,
    },
    CheckItem {
        id: "embedding-relations",
        description: "w_c^t = w_c and a_c^t = a_c w_c when w_1..w_(c-1) are trivial",
        claims: embedding_relations,
    },
    CheckItem {
        id: "abelianization-images",
        description: "H_2(r,0) abelianizes onto <t^r, a2>",
        claims: abelianization_images,
    },
];

fn w(text: &str) -> Word {
    parse_word(text).expect("suite words are well formed")
}

fn g2() -> Result<GroupSpec> {
    GroupSpec::hydra(2)
}

fn h2r0(r: i64) -> Result<GroupPair> {
    GroupPair::hydra2(r, 0)
}

fn eq(group: &GroupSpec, lhs: Word, rhs: Word) -> Claim {
    Claim::Equal {
        group: group.clone(),
        lhs,
        rhs,
    }
}

fn t_pow(i: i64, e: i64) -> Result<Word> {
    t_word(i).pow(e, 1 << 20)
}

fn phi_endomorphism(ctx: &SuiteContext) -> Result<Vec<Claim>> {
    let g = g2()?;
    let f = |s: &str| ctx.phi.apply(&w(s));
    Ok(vec![
        eq(&g, Word::commutator(&f("a1")?, &f("t")?), Word::empty()),
        eq(&g, Word::commutator(&f("a2")?, &f("t")?), f("a1")?),
    ])
}

fn phi_surjective(ctx: &SuiteContext) -> Result<Vec<Claim>> {
    let g = g2()?;
    let f = |s: &str| ctx.phi.apply(&w(s));
    Ok(vec![
        eq(&g, f("a1")?, w("a1")),
        eq(&g, f("(a2 t)^-1")?, w("a2")),
        eq(&g, f("t^-1 a1")?, w("t")),
    ])
}

fn phi_subgroup_images(ctx: &SuiteContext) -> Result<Vec<Claim>> {
    let g = g2()?;
    let f = |s: &str| ctx.phi.apply(&w(s));
    Ok(vec![
        eq(&g, f("a1 t")?, w("a1 a2^-1 t^-1 a2")),
        eq(&g, f("a1 t")?, w("[a2, t] a2^-1 t^-1 a2")),
        eq(&g, f("a1 t")?, w("(a2^-1 t^-1 a2) t (a2^-1 t^-1 a2)")),
        eq(&g, f("a1 t")?, w("t a2^-1 t^-2 a2")),
        eq(&g, f("a2 t")?, w("a2^-1")),
    ])
}

fn phi_commuting_conjugate(_: &SuiteContext) -> Result<Vec<Claim>> {
    Ok(vec![eq(&g2()?, w("[t, a2^-1 t^-1 a2]"), Word::empty())])
}

fn phi_bks_relabeling(ctx: &SuiteContext) -> Result<Vec<Claim>> {
    let g = g2()?;
    let f = |s: &str| ctx.phi.apply(&w(s));
    // alpha, beta, y written directly as a2, a1, t
    Ok(vec![
        eq(&g, f("a2 t")?, w("a2^-1")),
        eq(&g, f("a1 t")?, w("t a2^-1 t^-2 a2")),
        eq(&g, w("a2^t"), w("a2 a1")),
        eq(&g, w("a1^t"), w("a1")),
    ])
}

fn eta_images(_: &SuiteContext) -> Result<Vec<Claim>> {
    let g = g2()?;
    let mut out = Vec::new();
    for s in 1..=3 {
        let e = eta(s);
        out.push(eq(&g, e.apply(&w("a1"))?, w("a1")));
        out.push(eq(&g, e.apply(&w("[a1, t]"))?, Word::empty()));
        out.push(eq(&g, e.apply(&w("[a2, t]"))?, e.apply(&w("a1"))?));
        out.push(eq(
            &g,
            e.apply(&w("a2 t"))?,
            Word::a(2).mul(&Word::t().pow(s, 16)?),
        ));
        for r in 0..=3 {
            let x = Word::a(1).mul(&Word::t().pow(r, 16)?);
            out.push(eq(&g, e.apply(&x)?, x));
        }
    }
    Ok(out)
}

fn t_family_basics(_: &SuiteContext) -> Result<Vec<Claim>> {
    let g = g2()?;
    Ok(vec![
        eq(&g, w("[a2, t]"), w("a1")),
        eq(&g, t_word(1).inverse().mul(&t_word(0)), w("a1")),
        eq(
            &g,
            commutator_witness(),
            Word::commutator(&t_word(0).inverse(), &t_word(2).inverse()),
        ),
    ])
}

fn t_family_subgroup_generators(_: &SuiteContext) -> Result<Vec<Claim>> {
    let g = g2()?;
    let mut out = Vec::new();
    for r in 1..=3 {
        let pair = h2r0(r)?;
        let gen = Word::a(1).mul(&Word::t().pow(r, 16)?);
        for i in -2..=3 {
            let target = t_word(i).inverse().mul(&t_pow(i - 1, r + 1)?);
            out.push(eq(
                &g,
                gen.conj(&Word::a(2).pow(i - 1, 16)?),
                target.clone(),
            ));
            out.push(Claim::Member {
                pair: pair.clone(),
                word: target,
            });
        }
    }
    Ok(out)
}

fn telescoping_conjugation(_: &SuiteContext) -> Result<Vec<Claim>> {
    let g = g2()?;
    let mut out = Vec::new();
    for r in 1..=2i64 {
        let pair = h2r0(r)?;
        for i in [-1i64, -2] {
            // exponent (r+1)^|i|
            let big = (r + 1).pow(i.unsigned_abs() as u32);
            let x = t_word(0).inverse().mul(&t_pow(i, big)?);
            let mut product = Word::empty();
            for j in (i..=-1).rev() {
                let factor = t_word(j + 1).inverse().mul(&t_pow(j, r + 1)?);
                let e = (r + 1).pow(j.unsigned_abs() as u32 - 1);
                product = product.mul(&factor.pow(e, 1 << 20)?);
            }
            out.push(eq(&g, x.clone(), product));
            out.push(Claim::Member {
                pair: pair.clone(),
                word: x.clone(),
            });

            let z = t_pow(i, big)?.mul(&t_word(0).inverse());
            out.push(Claim::Member {
                pair: pair.clone(),
                word: z.clone(),
            });

            let y = t_word(i).inverse().mul(&t_pow(i - 1, r + 1)?);
            let t0 = t_word(0);
            let up = t0.inverse().mul(&y).mul(&t0);
            let down = t0.mul(&y).mul(&t0.inverse());
            out.push(eq(&g, up.clone(), x.mul(&y).mul(&x.inverse())));
            out.push(eq(&g, down.clone(), z.inverse().mul(&y).mul(&z)));
            out.push(Claim::Member {
                pair: pair.clone(),
                word: up,
            });
            out.push(Claim::Member {
                pair: pair.clone(),
                word: down,
            });
        }
    }
    Ok(out)
}

fn t_family_commutation(_: &SuiteContext) -> Result<Vec<Claim>> {
    let g = g2()?;
    Ok((-3..=3)
        .map(|m| {
            eq(
                &g,
                Word::commutator(&t_word(m), &t_word(m + 1)),
                Word::empty(),
            )
        })
        .collect())
}

fn witness_normal_form(_: &SuiteContext) -> Result<Vec<Claim>> {
    let g = g2()?;
    let mut out = vec![Claim::NormalForm {
        group: g,
        word: commutator_witness(),
        expected: NormalForm {
            t_exp: 0,
            u: w("a1 a2^-1 a1^-1 a2 a1^-1 a2^-1 a1 a2"),
        },
    }];
    for r in 1..=3 {
        out.push(Claim::NonMember {
            pair: h2r0(r)?,
            word: commutator_witness(),
            reason: format!("{r}/{} not integral", r + 1),
        });
    }
    Ok(out)
}

fn embedding_relations(_: &SuiteContext) -> Result<Vec<Claim>> {
    let groups = [
        GroupSpec::hydra(2)?,
        GroupSpec::hydra(3)?,
        GroupSpec::new(2, vec![Word::empty(), w("a1^2")])?,
        GroupSpec::new(2, vec![Word::empty(), w("a1^3")])?,
        GroupSpec::new(3, vec![Word::empty(), Word::empty(), w("a1 a2")])?,
        GroupSpec::new(3, vec![Word::empty(), Word::empty(), w("a2^2 a1")])?,
        GroupSpec::new(4, vec![Word::empty(), Word::empty(), w("a2"), w("a3 a1")])?,
    ];
    let mut out = Vec::new();
    for g in groups {
        let c = (1..=g.rank())
            .find(|&i| !g.w(i).is_empty())
            .expect("each listed group has a nontrivial defining word");
        let wc = g.w(c).clone();
        let ac = Word::a(c);
        out.push(eq(&g, wc.conj(&Word::t()), wc.clone()));
        out.push(eq(&g, ac.conj(&Word::t()), ac.mul(&wc)));
        let e = embed(c, &wc);
        out.push(eq(&g, e.apply(&w("[a1, t]"))?, Word::empty()));
        out.push(eq(&g, e.apply(&w("[a2, t]"))?, e.apply(&w("a1"))?));
    }
    Ok(out)
}

fn abelianization_images(_: &SuiteContext) -> Result<Vec<Claim>> {
    let mut out = vec![
        Claim::Abelianizes {
            word: w("a1"),
            a2: 0,
            t: 0,
        },
        Claim::Abelianizes {
            word: w("a2"),
            a2: 1,
            t: 0,
        },
    ];
    for r in 1..=3 {
        let pair = h2r0(r)?;
        for i in 1..=2 {
            let gen = pair.expand(&Word::h(i))?;
            let (a2, t) = if i == 1 { (0, r) } else { (1, 0) };
            out.push(Claim::Abelianizes { word: gen, a2, t });
        }
    }
    Ok(out)
}
