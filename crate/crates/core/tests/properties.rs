use hydra_core::expr::{format, parse, parse_word};
use hydra_core::extensions::{hnn_reduce, PinchOrder};
use hydra_core::spec_file::SpecFile;
use hydra_core::{
    GenKind, Generator, GroupPair, GroupSpec, Letter, MembershipResult, SubgroupSpec, Word,
};
use proptest::prelude::*;

fn letter(alphabet: Vec<Generator>) -> impl Strategy<Value = Letter> {
    (prop::sample::select(alphabet), any::<bool>()).prop_map(|(g, inv)| Letter::new(g, inv))
}

fn word_over(alphabet: Vec<Generator>, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(alphabet), 0..max).prop_map(|ls| Word::reduce(ls).unwrap())
}

fn g2_letters() -> Vec<Generator> {
    vec![Generator::a(1), Generator::a(2), Generator::T]
}

fn any_letters() -> Vec<Generator> {
    vec![
        Generator::a(1),
        Generator::a(2),
        Generator::a(11),
        Generator::T,
        Generator::P,
        Generator::h(1),
        Generator::h(3),
        Generator::a(1).toggle_mirror(),
        Generator::a(2).toggle_mirror(),
        Generator::T.toggle_mirror(),
    ]
}

fn h_word(k: u32, max: usize) -> impl Strategy<Value = Word> {
    word_over((1..=k).map(Generator::h).collect(), max)
}

fn is_freely_reduced(w: &Word) -> bool {
    w.letters().windows(2).all(|p| p[0] != p[1].inv())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn format_round_trips(w in word_over(any_letters(), 24)) {
        prop_assert_eq!(parse_word(&format(&w)).unwrap(), w);
    }

    #[test]
    fn products_stay_reduced(x in word_over(any_letters(), 16), y in word_over(any_letters(), 16)) {
        let xy = x.mul(&y);
        prop_assert!(is_freely_reduced(&xy));
        prop_assert_eq!(xy.mul(&y.inverse()), x.clone());
        prop_assert!(x.mul(&x.inverse()).is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multiplication_is_associative(
        x in word_over(any_letters(), 10),
        y in word_over(any_letters(), 10),
        z in word_over(any_letters(), 10),
    ) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn powers_agree_with_repeated_products(x in word_over(g2_letters(), 8), n in -5i64..=5) {
        let mut expected = Word::empty();
        let step = if n >= 0 { x.clone() } else { x.inverse() };
        for _ in 0..n.unsigned_abs() {
            expected = expected.mul(&step);
        }
        prop_assert_eq!(x.pow(n, 1000).unwrap(), expected);
    }

    #[test]
    fn parse_format_parse_is_stable(
        x in word_over(g2_letters(), 6),
        y in word_over(g2_letters(), 6),
        n in -3i64..=3,
    ) {
        let text = format!("[{}, ({})^{n}] ({})^({})", format(&x), format(&y), format(&y), format(&x));
        let once = parse_word(&text).unwrap();
        prop_assert_eq!(parse_word(&format(&once)).unwrap(), once);
        prop_assert!(parse(&text).is_ok());
    }

    #[test]
    fn normal_forms_compose(x in word_over(g2_letters(), 10), y in word_over(g2_letters(), 10)) {
        let g = GroupSpec::hydra(2).unwrap();
        let (nx, ny) = (g.normalize(&x).unwrap(), g.normalize(&y).unwrap());
        prop_assert_eq!(g.compose(&nx, &ny).unwrap(), g.normalize(&x.mul(&y)).unwrap());
        prop_assert_eq!(g.normalize(&nx.to_word()).unwrap(), nx.clone());
        prop_assert!(g.is_trivial(&x.mul(&nx.to_word().inverse())).unwrap());
    }

    #[test]
    fn theta_inverse_undoes_theta(x in word_over(vec![Generator::a(1), Generator::a(2), Generator::a(3)], 10)) {
        let g = GroupSpec::hydra(3).unwrap();
        let there = g.theta().apply(&x).unwrap();
        prop_assert_eq!(g.theta_inverse().apply(&there).unwrap(), x.clone());
        prop_assert_eq!(g.theta_pow(-2, &g.theta_pow(2, &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn subgroup_products_are_members(c in h_word(2, 8), r1 in 0i64..=3, r2 in 0i64..=3) {
        let pair = GroupPair::hydra2(r1, r2).unwrap();
        let g = pair.expand(&c).unwrap();
        match pair.member(&g).unwrap() {
            MembershipResult::Member(cert) => {
                prop_assert!(pair.group().equal(&pair.expand(&cert).unwrap(), &g).unwrap());
            }
            other => prop_assert!(false, "{} in {}: {}", c, pair.subgroup(), other),
        }
    }

    #[test]
    fn membership_respects_cosets(c in h_word(2, 6), x in word_over(g2_letters(), 8)) {
        // x and h x have the same verdict
        let pair = GroupPair::hydra(2).unwrap();
        let hx = pair.expand(&c).unwrap().mul(&x);
        let a = pair.member(&x).unwrap();
        let b = pair.member(&hx).unwrap();
        prop_assert_eq!(a.is_member(), b.is_member());
        prop_assert!(!a.is_undecided() && !b.is_undecided());
    }

    #[test]
    fn hydra3_agrees_with_hydra2_on_g2_words(c in h_word(2, 6), x in word_over(g2_letters(), 8), pick in any::<bool>()) {
        let h2 = GroupPair::hydra(2).unwrap();
        let h3 = GroupPair::hydra(3).unwrap();
        let g = if pick { h2.expand(&c).unwrap() } else { x };
        let a = h2.member(&g).unwrap();
        let b = h3.member(&g).unwrap();
        prop_assert_eq!(a.is_member(), b.is_member(), "{}: {} / {}", g, a, b);
        prop_assert!(!b.is_undecided());
    }

    #[test]
    fn pinch_order_does_not_change_the_verdict(
        parts in prop::collection::vec((h_word(2, 4), word_over(g2_letters(), 4), any::<bool>()), 1..4)
    ) {
        let pair = GroupPair::hydra(2).unwrap();
        let mut w = Word::empty();
        for (h, x, inv) in &parts {
            let p = if *inv { Word::p().inverse() } else { Word::p() };
            w = w.mul(&p).mul(&pair.expand(h).unwrap()).mul(&p.inverse()).mul(x);
        }
        let ltr = hnn_reduce(&pair, &w, PinchOrder::LeftToRight).unwrap();
        let rtl = hnn_reduce(&pair, &w, PinchOrder::RightToLeft).unwrap();
        prop_assert_eq!(ltr.verdict, rtl.verdict);
    }

    #[test]
    fn spec_files_round_trip(
        k in 1u32..=4,
        seeds in prop::collection::vec(prop::collection::vec(0u32..8, 0..4), 4),
        r in prop::collection::vec(0i64..5, 4),
        with_r in any::<bool>(),
    ) {
        let mut words = vec![Word::empty()];
        for i in 2..=k {
            let parts: Vec<Word> = seeds[i as usize - 1]
                .iter()
                .map(|&s| Word::a(1 + s % (i - 1)))
                .collect();
            words.push(Word::product(parts.iter()));
        }
        let group = GroupSpec::new(k, words).unwrap();
        let subgroup = with_r.then(|| SubgroupSpec::new(r[..k as usize].to_vec()).unwrap());
        let file = SpecFile { group: Some(group), subgroup };
        let text = file.to_text();
        let back = SpecFile::parse(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_text(), text);
    }
}

#[test]
fn generator_kinds_display_distinctly() {
    let shown: Vec<String> = [GenKind::A(1), GenKind::T, GenKind::P, GenKind::H(1)]
        .into_iter()
        .map(|k| Generator::plain(k).to_string())
        .collect();
    assert_eq!(shown, ["a1", "t", "p", "h1"]);
}
