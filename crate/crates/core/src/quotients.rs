//! Homomorphisms to symmetric groups and separation experiments.
//!
//! Permutations act on the right: in a product `x * y`, `x` is applied first.
//! A word `x_1 x_2 ... x_n` therefore maps to `f(x_1) * f(x_2) * ... * f(x_n)`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::membership::{GroupPair, MembershipResult};
use crate::words::{GenKind, Word};

/// Hard upper bound on permutation degree.
pub const MAX_DEGREE: usize = 16;
pub const DEFAULT_DEGREE_CAP: usize = 6;
pub const DEFAULT_RANK_CAP: u32 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    n: u8,
    // entries past `n` stay fixed so derived equality is exact
    img: [u8; MAX_DEGREE],
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} exceeds {MAX_DEGREE}");
        let mut img = [0u8; MAX_DEGREE];
        for (i, x) in img.iter_mut().enumerate() {
            *x = i as u8;
        }
        Perm { n: n as u8, img }
    }

    /// From 0-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::Resource(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut p = Perm::identity(n);
        for (i, &x) in images.iter().enumerate() {
            if x >= n || seen[x] {
                return Err(Error::Spec(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
            p.img[i] = x as u8;
        }
        Ok(p)
    }

    /// From disjoint cycles written with 1-based points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                if x == 0 || y == 0 || x > n || y > n {
                    return Err(Error::Spec(format!("cycle point outside 1..={n}")));
                }
                images[x - 1] = y - 1;
            }
        }
        Perm::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        let mut out = *self;
        for i in 0..self.degree() {
            out.img[i] = other.img[self.img[i] as usize];
        }
        out
    }

    pub fn inverse(&self) -> Perm {
        let mut out = *self;
        for i in 0..self.degree() {
            out.img[self.img[i] as usize] = i as u8;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        (0..self.degree()).all(|i| self.img[i] as usize == i)
    }

    /// All of `S_n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        loop {
            out.push(Perm::from_images(&cur).expect("valid"));
            // next permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation with 1-based points; the identity prints as `()`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.apply(x);
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// A homomorphism `G_k(w) -> S_n` given by the images of `a_1..a_k, t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermHom {
    degree: usize,
    // a_1..a_k then t
    images: Vec<Perm>,
}

impl PermHom {
    /// Builds a homomorphism, rejecting image tuples that violate a relation.
    pub fn new(group: &GroupSpec, a_images: Vec<Perm>, t_image: Perm) -> Result<Self> {
        let degree = t_image.degree();
        if a_images.len() != group.rank() as usize || a_images.iter().any(|p| p.degree() != degree)
        {
            return Err(Error::Spec("image tuple does not match the group".into()));
        }
        let mut images = a_images;
        images.push(t_image);
        let hom = PermHom { degree, images };
        if !hom.satisfies(group) {
            return Err(Error::Spec("images violate a defining relation".into()));
        }
        Ok(hom)
    }

    pub fn trivial(group: &GroupSpec, n: usize) -> Self {
        PermHom {
            degree: n,
            images: vec![Perm::identity(n); group.rank() as usize + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn a_image(&self, i: u32) -> &Perm {
        &self.images[i as usize - 1]
    }

    pub fn t_image(&self) -> &Perm {
        self.images.last().expect("t image")
    }

    pub fn eval(&self, w: &Word) -> Result<Perm> {
        let mut acc = Perm::identity(self.degree);
        for l in w.letters() {
            let base = match l.gen.kind {
                GenKind::A(i) if !l.gen.mirrored && (i as usize) < self.images.len() && i > 0 => {
                    &self.images[i as usize - 1]
                }
                GenKind::T if !l.gen.mirrored => self.t_image(),
                _ => {
                    return Err(Error::Alphabet {
                        letter: l.gen.to_string(),
                        alphabet: "homomorphism domain".into(),
                    })
                }
            };
            acc = if l.inverse {
                acc.then(&base.inverse())
            } else {
                acc.then(base)
            };
        }
        Ok(acc)
    }

    /// Checks `t^-1 a_i t = a_i w_i` for every `i`.
    pub fn satisfies(&self, group: &GroupSpec) -> bool {
        (1..=group.rank()).all(|i| relation_holds(&self.images, self.t_image(), group, i))
    }
}

impl fmt::Display for PermHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.images.len() - 1;
        for (i, p) in self.images[..k].iter().enumerate() {
            write!(f, "a{}={p} ", i + 1)?;
        }
        write!(f, "t={}", self.t_image())
    }
}

fn eval_prefix(a_images: &[Perm], w: &Word, n: usize) -> Perm {
    let mut acc = Perm::identity(n);
    for l in w.letters() {
        let i = l.gen.a_index().expect("defining words use a-letters") as usize;
        let p = a_images[i - 1];
        acc = acc.then(&if l.inverse { p.inverse() } else { p });
    }
    acc
}

fn relation_holds(a_images: &[Perm], t: &Perm, group: &GroupSpec, i: u32) -> bool {
    let a = a_images[i as usize - 1];
    let lhs = t.inverse().then(&a).then(t);
    let rhs = a.then(&eval_prefix(a_images, group.w(i), t.degree()));
    lhs == rhs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanLimits {
    pub max_degree: usize,
    pub max_rank: u32,
}

impl Default for ScanLimits {
    fn default() -> Self {
        ScanLimits {
            max_degree: DEFAULT_DEGREE_CAP,
            max_rank: DEFAULT_RANK_CAP,
        }
    }
}

impl ScanLimits {
    fn check(&self, group: &GroupSpec, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Spec("degree must be at least 1".into()));
        }
        if n > self.max_degree.min(MAX_DEGREE) {
            return Err(Error::Resource(format!(
                "degree {n} exceeds the cap of {}",
                self.max_degree.min(MAX_DEGREE)
            )));
        }
        if group.rank() > self.max_rank {
            return Err(Error::Resource(format!(
                "rank {} exceeds the cap of {}",
                group.rank(),
                self.max_rank
            )));
        }
        Ok(())
    }
}

/// Every homomorphism `G_k(w) -> S_n`, ordered by `(t, a_1, ..., a_k)` images.
///
/// Images are chosen level by level and each relation is checked as soon as
/// the letters it mentions are assigned.
pub fn enumerate_homs(group: &GroupSpec, n: usize, limits: &ScanLimits) -> Result<Vec<PermHom>> {
    limits.check(group, n)?;
    let all = Perm::all(n);
    let k = group.rank();
    let per_t: Vec<Vec<PermHom>> = all
        .par_iter()
        .map(|t| {
            let mut out = Vec::new();
            let mut stack: Vec<Perm> = Vec::with_capacity(k as usize);
            extend(group, t, &all, &mut stack, &mut out);
            out
        })
        .collect();
    Ok(per_t.into_iter().flatten().collect())
}

fn extend(
    group: &GroupSpec,
    t: &Perm,
    all: &[Perm],
    stack: &mut Vec<Perm>,
    out: &mut Vec<PermHom>,
) {
    let level = stack.len() as u32 + 1;
    if level > group.rank() {
        let mut images = stack.clone();
        images.push(*t);
        out.push(PermHom {
            degree: t.degree(),
            images,
        });
        return;
    }
    for a in all {
        stack.push(*a);
        if relation_holds(stack, t, group, level) {
            extend(group, t, all, stack, out);
        }
        stack.pop();
    }
}

/// Subgroup generated by `gens`, as a sorted set.
pub fn closure(gens: &[Perm], n: usize) -> BTreeSet<Perm> {
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Image of the subgroup generators `a_i t^r_i` under `hom`.
pub fn subgroup_images(hom: &PermHom, pair: &GroupPair) -> Result<Vec<Perm>> {
    (1..=pair.rank())
        .map(|i| hom.eval(&pair.expand(&Word::h(i))?))
        .collect()
}

/// True iff `hom(g)` lies outside `hom(H)`.
pub fn separates(hom: &PermHom, pair: &GroupPair, g: &Word) -> Result<bool> {
    let image = hom.eval(g)?;
    let sub = closure(&subgroup_images(hom, pair)?, hom.degree());
    Ok(!sub.contains(&image))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    pub homs: usize,
    pub separating: Vec<PermHom>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub degrees: Vec<DegreeReport>,
    /// Membership verdict for the probed element, computed whenever some
    /// homomorphism separates it.
    pub cross_check: Option<MembershipResult>,
}

impl ScanReport {
    pub fn total_separating(&self) -> usize {
        self.degrees.iter().map(|d| d.separating.len()).sum()
    }

    /// The `degree=.. homs=.. separating=..` summary lines.
    pub fn summary(&self) -> String {
        self.degrees
            .iter()
            .map(|d| {
                format!(
                    "degree={} homs={} separating={}\n",
                    d.degree,
                    d.homs,
                    d.separating.len()
                )
            })
            .collect()
    }
}

/// Looks for a homomorphism to `S_n`, `n <= n_max`, separating `g` from `H`.
pub fn scan(pair: &GroupPair, g: &Word, n_max: usize, limits: &ScanLimits) -> Result<ScanReport> {
    pair.group().alphabet().check(g)?;
    limits.check(pair.group(), n_max)?;
    let mut degrees = Vec::new();
    for n in 1..=n_max {
        let start = Instant::now();
        let homs = enumerate_homs(pair.group(), n, limits)?;
        let flags = homs
            .par_iter()
            .map(|h| separates(h, pair, g))
            .collect::<Result<Vec<bool>>>()?;
        let mut separating: Vec<PermHom> = homs
            .iter()
            .zip(flags)
            .filter(|(_, s)| *s)
            .map(|(h, _)| h.clone())
            .collect();
        separating.sort();
        for h in &separating {
            if !h.satisfies(pair.group()) || !separates(h, pair, g)? {
                return Err(Error::Certificate(format!(
                    "separating homomorphism {h} failed re-verification"
                )));
            }
        }
        degrees.push(DegreeReport {
            degree: n,
            homs: homs.len(),
            separating,
            elapsed: start.elapsed(),
        });
    }
    let mut report = ScanReport {
        degrees,
        cross_check: None,
    };
    if report.total_separating() > 0 {
        let verdict = pair.member(g)?;
        if verdict.is_member() {
            return Err(Error::Certificate(
                "a finite quotient separates an element the decider places in H".into(),
            ));
        }
        report.cross_check = Some(verdict);
    }
    Ok(report)
}
