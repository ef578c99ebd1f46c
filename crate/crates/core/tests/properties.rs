//! Randomized laws of the word algebra, the strand projection, the combed
//! normal form, and the coset-band factorisation, checked over generated
//! inputs.

use braidforge_core::braid::{
    artin_action, braid_words_equal, coset_band_factorisation, expand_pure_word,
    permutation_coset_word, project_to_permutation, BraidWord,
};
use braidforge_core::comb::{comb, PureWord};
use braidforge_core::parse::parse_word;
use braidforge_core::word::{Alphabet, FreeWord, Gen};
use proptest::prelude::*;

fn braid_letters(n: u16) -> Vec<Gen> {
    (1..n).map(Gen::Sigma).collect()
}

fn band_letters(n: u16) -> Vec<Gen> {
    let mut out = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            out.push(Gen::Band(i, j));
        }
    }
    out
}

/// A word built from up to `max_syllables` random syllables over `letters`,
/// with exponents in `-3..=3`.
fn word_over(letters: Vec<Gen>, max_syllables: usize) -> impl Strategy<Value = FreeWord> {
    let choices = letters.len();
    prop::collection::vec((0..choices, -3i64..=3), 0..=max_syllables).prop_map(move |syllables| {
        let mut w = FreeWord::identity();
        for (idx, e) in syllables {
            w.push(letters[idx], e);
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn a_word_cancels_its_inverse(w in word_over(band_letters(4), 10)) {
        let mut product = w.clone();
        product.push_word(&w.inverse());
        prop_assert!(product.is_identity());
    }

    #[test]
    fn display_and_parse_are_inverse(w in word_over(band_letters(4), 10)) {
        let reparsed = parse_word(&w.to_string(), &Alphabet::pure(4)).unwrap();
        prop_assert_eq!(reparsed, w);
    }

    #[test]
    fn projection_is_multiplicative(
        u in word_over(braid_letters(4), 8),
        v in word_over(braid_letters(4), 8),
    ) {
        let bu = BraidWord::new(4, u).unwrap();
        let bv = BraidWord::new(4, v).unwrap();
        let product = bu.multiply(&bv).unwrap();
        let direct = project_to_permutation(&product);
        let composed = project_to_permutation(&bu).then(&project_to_permutation(&bv));
        prop_assert_eq!(direct, composed);
    }

    #[test]
    fn strand_action_respects_composition(
        u in word_over(braid_letters(4), 6),
        v in word_over(braid_letters(4), 6),
    ) {
        let bu = BraidWord::new(4, u).unwrap();
        let bv = BraidWord::new(4, v).unwrap();
        let product = bu.multiply(&bv).unwrap();
        let direct = artin_action(&product);
        let composed = artin_action(&bu).then(&artin_action(&bv));
        for i in 1..=4 {
            prop_assert_eq!(direct.image(i), composed.image(i));
        }
    }

    #[test]
    fn equality_oracle_absorbs_a_braid_relator(
        w in word_over(braid_letters(4), 8),
        k in 1u16..3,
        cut in 0usize..=24,
    ) {
        // The two-generator relator s(k) s(k+1) s(k) s(k+1)^-1 s(k)^-1 s(k+1)^-1
        // spliced anywhere must not change the element.
        let mut relator = FreeWord::identity();
        relator.push(Gen::Sigma(k), 1);
        relator.push(Gen::Sigma(k + 1), 1);
        relator.push(Gen::Sigma(k), 1);
        relator.push(Gen::Sigma(k + 1), -1);
        relator.push(Gen::Sigma(k), -1);
        relator.push(Gen::Sigma(k + 1), -1);

        let letters: Vec<(Gen, i8)> = w.letters().collect();
        let pos = cut.min(letters.len());
        let mut spliced = FreeWord::identity();
        for &(g, s) in &letters[..pos] {
            spliced.push(g, i64::from(s));
        }
        spliced.push_word(&relator);
        for &(g, s) in &letters[pos..] {
            spliced.push(g, i64::from(s));
        }

        let original = BraidWord::new(4, w).unwrap();
        let with_relator = BraidWord::new(4, spliced).unwrap();
        prop_assert!(braid_words_equal(&original, &with_relator).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn combing_preserves_the_element(w in word_over(band_letters(3), 8)) {
        let pure = PureWord::new(3, w.clone()).unwrap();
        let combed = comb(&pure).unwrap();
        let back = combed.as_pure_word();
        let lhs = expand_pure_word(&w, 3).unwrap();
        let rhs = expand_pure_word(back.word(), 3).unwrap();
        prop_assert!(braid_words_equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn factorisation_reconstructs_the_braid(w in word_over(braid_letters(4), 6)) {
        let braid = BraidWord::new(4, w).unwrap();
        let (perm, bands) = coset_band_factorisation(&braid).unwrap();
        prop_assert_eq!(&project_to_permutation(&braid), &perm);
        let coset = permutation_coset_word(&perm);
        let recombined = coset.multiply(&expand_pure_word(&bands, 4).unwrap()).unwrap();
        prop_assert!(braid_words_equal(&recombined, &braid).unwrap());
    }
}
