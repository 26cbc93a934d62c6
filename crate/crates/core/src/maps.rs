//! Named endomorphisms of `G_2` and the fixed witness words built from them.

use crate::words::{Generator, Substitution, Word};

const A1: Generator = Generator::a(1);
const A2: Generator = Generator::a(2);
const T: Generator = Generator::T;

fn w(parts: &[(Generator, i64)]) -> Word {
    Word::product(
        parts
            .iter()
            .map(|&(g, e)| Word::gen_pow(g, e))
            .collect::<Vec<_>>()
            .iter(),
    )
}

/// The automorphism of `G_2` carrying `H_2` onto `<a_2^-1, t a_2^-1 t^-2 a_2>`:
/// `a_1 -> a_1`, `a_2 -> a_2^-2 t a_2`, `t -> a_1 t^-1`.
pub fn phi() -> Substitution {
    Substitution::new()
        .with(A1, Word::a(1))
        .with(A2, w(&[(A2, -2), (T, 1), (A2, 1)]))
        .with(T, w(&[(A1, 1), (T, -1)]))
}

/// Inverse of [`phi`]: `a_1 -> a_1`, `a_2 -> t^-1 a_2^-1`, `t -> a_1 t^-1`.
pub fn phi_inverse() -> Substitution {
    Substitution::new()
        .with(A1, Word::a(1))
        .with(A2, w(&[(T, -1), (A2, -1)]))
        .with(T, w(&[(A1, 1), (T, -1)]))
}

/// `eta_s`: `a_1 -> a_1`, `a_2 -> a_2 t^(s-1)`, `t -> t`.
///
/// Sends `a_1 t^r -> a_1 t^r` and `a_2 t -> a_2 t^s`, so it carries `H_2(r, 1)`
/// onto `H_2(r, s)`.
pub fn eta(s: i64) -> Substitution {
    Substitution::new()
        .with(A1, Word::a(1))
        .with(A2, w(&[(A2, 1), (T, s - 1)]))
        .with(T, Word::t())
}

/// Embedding of `G_2` as `<w_c, a_c, t>`: `a_1 -> w_c`, `a_2 -> a_c`, `t -> t`.
pub fn embed(c: u32, w_c: &Word) -> Substitution {
    Substitution::new()
        .with(A1, w_c.clone())
        .with(A2, Word::a(c))
        .with(T, Word::t())
}

/// `[t^-1, a_2^-2 t^-1 a_2^2]`, the element of `G_2` outside `H_2(r, 0)` that no
/// finite quotient separates from it.
pub fn commutator_witness() -> Word {
    Word::commutator(&Word::t().inverse(), &w(&[(A2, -2), (T, -1), (A2, 2)]))
}

/// Pull-back of [`commutator_witness`] along [`phi`]; lies outside `H_2`.
pub fn bks_pullback() -> Word {
    phi_inverse()
        .apply(&commutator_witness())
        .expect("short fixed word")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;

    #[test]
    fn phi_images() {
        assert_eq!(phi().apply(&Word::a(1)).unwrap(), Word::a(1));
        assert_eq!(phi().apply(&Word::t()).unwrap().to_string(), "a1 t^-1");
    }

    #[test]
    fn phi_inverse_is_inverse_on_generators() {
        let g = GroupSpec::hydra(2).unwrap();
        for x in [Word::a(1), Word::a(2), Word::t()] {
            let there = phi().apply(&x).unwrap();
            let back = phi_inverse().apply(&there).unwrap();
            assert!(g.equal(&back, &x).unwrap(), "{x}");
            let back = phi().apply(&phi_inverse().apply(&x).unwrap()).unwrap();
            assert!(g.equal(&back, &x).unwrap(), "{x}");
        }
    }

    #[test]
    fn phi_is_a_homomorphism_on_random_products() {
        let s = phi();
        let u = w(&[(A1, 2), (T, -1), (A2, 1)]);
        let v = w(&[(A2, -3), (T, 2), (A1, -1)]);
        let lhs = s.apply(&u.mul(&v)).unwrap();
        let rhs = s.apply(&u).unwrap().mul(&s.apply(&v).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn witness_text() {
        assert_eq!(
            commutator_witness().to_string(),
            "t a2^-2 t a2^2 t^-1 a2^-2 t^-1 a2^2"
        );
    }
}
