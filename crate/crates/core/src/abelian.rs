//! Exponent vectors: images of pure words in the abelianised group, the
//! integer matrices induced by generator maps, and the two obstruction
//! arguments that live entirely in this quotient.
//!
//! The abelianisation of the pure group on `n` strands is free abelian on the
//! band classes, one coordinate per pair `(i,j)`, ordered `(1,2), (1,3),
//! (2,3), (1,4), ...` to match the band alphabet.  The full twist maps to the
//! all-ones vector, so "equal up to a central factor" becomes "equal up to a
//! multiple of all-ones".

use std::fmt;

use itertools::Itertools;

use crate::auto::{tau_map, w_map, GeneratorMap, Image};
use crate::braid::{braid_words_equal, full_twist_word, BraidWord};
use crate::comb::PureWord;
use crate::error::{Error, Result};
use crate::word::{AlphabetKind, FreeWord, Gen};

/// Canonical pair order: `(1,2), (1,3), (2,3), (1,4), (2,4), (3,4), ...`.
pub fn canonical_pairs(n: u16) -> impl Iterator<Item = (u16, u16)> {
    (2..=n).flat_map(|j| (1..j).map(move |i| (i, j)))
}

/// Position of the pair `(i,j)` in the canonical order.
pub fn pair_index(i: u16, j: u16) -> usize {
    debug_assert!(0 < i && i < j);
    let j = usize::from(j);
    let i = usize::from(i);
    (j - 1) * (j - 2) / 2 + (i - 1)
}

/// Number of pairs on `n` strands.
pub fn pair_count(n: u16) -> usize {
    let n = usize::from(n);
    n * (n - 1) / 2
}

/// An element of the abelianised pure group: one exponent per band class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianVector {
    n: u16,
    entries: Vec<i64>,
}

impl AbelianVector {
    pub fn zero(n: u16) -> AbelianVector {
        AbelianVector {
            n,
            entries: vec![0; pair_count(n)],
        }
    }

    /// The class of the single band `A(i,j)`.
    pub fn basis(n: u16, i: u16, j: u16) -> Result<AbelianVector> {
        if !(0 < i && i < j && j <= n) {
            return Err(Error::BadIndex {
                what: format!("pair ({i},{j}) on {n} strands"),
            });
        }
        let mut v = AbelianVector::zero(n);
        v.entries[pair_index(i, j)] = 1;
        Ok(v)
    }

    /// The class of the full twist.
    pub fn all_ones(n: u16) -> AbelianVector {
        AbelianVector {
            n,
            entries: vec![1; pair_count(n)],
        }
    }

    pub fn strands(&self) -> u16 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: u16, j: u16) -> i64 {
        self.entries[pair_index(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &AbelianVector) -> AbelianVector {
        debug_assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        AbelianVector { n: self.n, entries }
    }

    pub fn sub(&self, other: &AbelianVector) -> AbelianVector {
        debug_assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        AbelianVector { n: self.n, entries }
    }

    pub fn neg(&self) -> AbelianVector {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> AbelianVector {
        AbelianVector {
            n: self.n,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }
}

impl fmt::Display for AbelianVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, j) in canonical_pairs(self.n) {
            let c = self.get(i, j);
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if c.abs() != 1 {
                write!(f, "{} ", c.abs())?;
            }
            write!(f, "e({i},{j})")?;
            first = false;
        }
        Ok(())
    }
}

/// Exponent-sum image of a pure word.
pub fn abelianize(w: &PureWord) -> AbelianVector {
    let n = w.strands();
    let mut v = AbelianVector::zero(n);
    for (idx, (i, j)) in canonical_pairs(n).enumerate() {
        v.entries[idx] = w.word().exponent_sum(&Gen::band(i, j));
    }
    v
}

/// Exponent-sum image of a `word * z^twist` element over the pure alphabet.
pub fn abelianize_image(n: u16, img: &Image) -> Result<AbelianVector> {
    let base = abelianize(&PureWord::new(n, img.word.clone())?);
    Ok(if img.twist == 0 {
        base
    } else {
        base.add(&AbelianVector::all_ones(n).scale(img.twist))
    })
}

/// An integer matrix acting on abelian vectors, one column per band class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianMatrix {
    n: u16,
    cols: Vec<AbelianVector>,
}

impl AbelianMatrix {
    pub fn identity(n: u16) -> AbelianMatrix {
        let cols = canonical_pairs(n)
            .map(|(i, j)| AbelianVector::basis(n, i, j).expect("valid pair"))
            .collect();
        AbelianMatrix { n, cols }
    }

    pub fn strands(&self) -> u16 {
        self.n
    }

    pub fn col(&self, i: u16, j: u16) -> &AbelianVector {
        &self.cols[pair_index(i, j)]
    }

    /// Matrix-vector application.
    pub fn apply(&self, v: &AbelianVector) -> AbelianVector {
        let mut out = AbelianVector::zero(self.n);
        for (col, &c) in self.cols.iter().zip(v.entries.iter()) {
            if c != 0 {
                out = out.add(&col.scale(c));
            }
        }
        out
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &AbelianMatrix) -> AbelianMatrix {
        debug_assert_eq!(self.n, rhs.n);
        let cols = rhs.cols.iter().map(|c| self.apply(c)).collect();
        AbelianMatrix { n: self.n, cols }
    }

    pub fn is_identity(&self) -> bool {
        *self == AbelianMatrix::identity(self.n)
    }

    pub fn is_neg_identity(&self) -> bool {
        self.cols
            .iter()
            .zip(AbelianMatrix::identity(self.n).cols.iter())
            .all(|(a, b)| *a == b.neg())
    }

    /// True iff every column is a standard basis vector and the columns are
    /// pairwise distinct — the matrix permutes the band classes.
    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.cols.len()];
        for col in &self.cols {
            let mut hit = None;
            for (idx, &x) in col.entries.iter().enumerate() {
                match (x, hit) {
                    (0, _) => {}
                    (1, None) => hit = Some(idx),
                    _ => return false,
                }
            }
            match hit {
                Some(idx) if !seen[idx] => seen[idx] = true,
                _ => return false,
            }
        }
        true
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> i128 {
        let d = self.cols.len();
        let mut m: Vec<Vec<i128>> = (0..d)
            .map(|row| {
                (0..d)
                    .map(|col| i128::from(self.cols[col].entries[row]))
                    .collect()
            })
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..d {
            if m[k][k] == 0 {
                let Some(swap) = (k + 1..d).find(|&r| m[r][k] != 0) else {
                    return 0;
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for r in k + 1..d {
                for c in k + 1..d {
                    m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) / prev;
                }
                m[r][k] = 0;
            }
            prev = m[k][k];
        }
        sign * m[d - 1][d - 1]
    }
}

impl fmt::Display for AbelianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in canonical_pairs(self.n) {
            writeln!(f, "A({i},{j}) -> {}", self.col(i, j))?;
        }
        Ok(())
    }
}

/// The matrix a generator map induces on the abelianisation.
pub fn induced_matrix(f: &GeneratorMap) -> Result<AbelianMatrix> {
    let AlphabetKind::Pure(n) = f.alphabet().kind() else {
        return Err(Error::BadAutomorphismArgs {
            name: "induced_matrix".into(),
            reason: "induced matrices are defined over the pure alphabet".into(),
        });
    };
    let mut cols = Vec::with_capacity(pair_count(n));
    for (_, img) in f.images() {
        cols.push(abelianize_image(n, img)?);
    }
    Ok(AbelianMatrix { n, cols })
}

/// Decision data for [`signed_generator_mod_center_test`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGeneratorForm {
    pub pair: (u16, u16),
    pub sign: i64,
    pub center_power: i64,
}

/// Does `v = sign * e(pair) + center_power * all_ones` for some pair and
/// `sign = ±1`?  Exact: for each candidate pair, the center power is forced
/// by any other coordinate, so no search bound is involved.
pub fn signed_generator_mod_center_form(v: &AbelianVector) -> Option<SignedGeneratorForm> {
    let n = v.strands();
    for (i, j) in canonical_pairs(n) {
        let idx = pair_index(i, j);
        // All coordinates away from (i,j) must share one value: the center power.
        let mut beta = None;
        let mut consistent = true;
        for (k, &x) in v.entries.iter().enumerate() {
            if k == idx {
                continue;
            }
            match beta {
                None => beta = Some(x),
                Some(b) if b == x => {}
                Some(_) => {
                    consistent = false;
                    break;
                }
            }
        }
        if !consistent {
            continue;
        }
        // One-dimensional case (n = 2): the center power is a free choice,
        // so any value within one of some beta qualifies; pick beta so the
        // residual is +1.
        let beta = beta.unwrap_or(v.entries[idx] - 1);
        let sign = v.entries[idx] - beta;
        if sign == 1 || sign == -1 {
            return Some(SignedGeneratorForm {
                pair: (i, j),
                sign,
                center_power: beta,
            });
        }
    }
    None
}

/// Boolean form of [`signed_generator_mod_center_form`].
pub fn signed_generator_mod_center_test(v: &AbelianVector) -> bool {
    signed_generator_mod_center_form(v).is_some()
}

/// Evidence that the twist-free companion of the last mapping-class
/// generator escapes the span of signed band classes modulo the center.
#[derive(Debug, Clone)]
pub struct WnObstructionReport {
    pub n: u16,
    /// Exponent vector of the image of `A(1,n)`.
    pub witness: AbelianVector,
    /// Whether the witness still has signed-generator-mod-center form.
    pub form_found: Option<SignedGeneratorForm>,
}

impl WnObstructionReport {
    /// The obstruction holds when no signed form exists.
    pub fn obstruction_holds(&self) -> bool {
        self.form_found.is_none()
    }
}

/// Compute the exponent vector of `w(A(1,n))` and run the signed-form test.
/// For `n >= 4` the form must fail; `n = 3` is the scale at which it still
/// succeeds, which callers can use as a negative control.
pub fn verify_wn_obstruction(n: u16) -> Result<WnObstructionReport> {
    if n < 3 {
        return Err(Error::BadIndex {
            what: format!("w obstruction needs n >= 3, got {n}"),
        });
    }
    let w = w_map(n)?;
    let img = w.fwd.image(&Gen::band(1, n))?;
    let witness = abelianize_image(n, img)?;
    let form_found = signed_generator_mod_center_form(&witness);
    Ok(WnObstructionReport {
        n,
        witness,
        form_found,
    })
}

/// Arithmetic showing the crossing inverter sends the full twist to its
/// inverse.
#[derive(Debug, Clone)]
pub struct CenterInversionReport {
    pub n: u16,
    /// Total crossing exponent sum of the full twist: `n(n-1)`.
    pub twist_exponent_sum: i64,
    /// The same sum after inverting every crossing: `-n(n-1)`.
    pub inverted_exponent_sum: i64,
    /// The inverted word is still central (commutes with every crossing).
    pub inverted_is_central: bool,
    /// Direct oracle comparison with the inverse of the full twist.
    pub equals_twist_inverse: bool,
}

impl CenterInversionReport {
    pub fn inverts(&self) -> bool {
        self.inverted_is_central
            && self.equals_twist_inverse
            && self.twist_exponent_sum == -self.inverted_exponent_sum
            && self.twist_exponent_sum != 0
    }
}

fn total_sigma_exponent(w: &BraidWord) -> i64 {
    (1..w.strands())
        .map(|i| w.word().exponent_sum(&Gen::Sigma(i)))
        .sum()
}

/// Push the full twist through the crossing inverter and certify inversion:
/// the image is central, has opposite exponent sum, and equals the inverse
/// of the full twist under the strand-action oracle.
pub fn verify_center_inversion(n: u16) -> Result<CenterInversionReport> {
    if n < 2 {
        return Err(Error::BadIndex {
            what: format!("center inversion needs n >= 2, got {n}"),
        });
    }
    let z = full_twist_word(n);
    let tau = tau_map(n)?;
    let image = tau.fwd.apply_word(z.word())?;
    let tau_z = BraidWord::new(n, image.word)?;

    let mut central = true;
    for i in 1..n {
        let s = FreeWord::gen(Gen::Sigma(i));
        let mut left = tau_z.word().clone();
        left.push_word(&s);
        let mut right = s.clone();
        right.push_word(tau_z.word());
        if !braid_words_equal(&BraidWord::new(n, left)?, &BraidWord::new(n, right)?)? {
            central = false;
            break;
        }
    }
    let equals_inverse = braid_words_equal(&tau_z, &z.inverse())?;
    Ok(CenterInversionReport {
        n,
        twist_exponent_sum: total_sigma_exponent(&z),
        inverted_exponent_sum: total_sigma_exponent(&tau_z),
        inverted_is_central: central,
        equals_twist_inverse: equals_inverse,
    })
}

/// Enumeration evidence that no strand permutation rescues the center
/// inverter on the abelianisation.
#[derive(Debug, Clone)]
pub struct Theta0ObstructionReport {
    pub n: u16,
    pub permutations_checked: usize,
    /// A permutation under which `-e(pi{1,3})` equals `e(1,3)` exactly, if any.
    pub exact_fix: Option<Vec<u16>>,
    /// A permutation under which they agree up to a multiple of all-ones, if any.
    pub mod_center_fix: Option<Vec<u16>>,
    /// Without the inversion, the identity permutation does fix `e(1,3)`.
    pub control_without_inversion: bool,
}

impl Theta0ObstructionReport {
    pub fn obstruction_holds(&self) -> bool {
        self.exact_fix.is_none() && self.mod_center_fix.is_none() && self.control_without_inversion
    }
}

/// For every permutation `pi` of the strands, compare `-e(pi{1,3})` with
/// `e(1,3)`, both exactly and modulo the all-ones class.  An extension of
/// the center inverter would make some permutation close this gap; none does
/// once there are at least three band classes.
pub fn verify_theta0_obstruction(n: u16) -> Result<Theta0ObstructionReport> {
    if !(3..=6).contains(&n) {
        return Err(Error::BadIndex {
            what: format!("strand-permutation enumeration supports 3..=6, got {n}"),
        });
    }
    let target = AbelianVector::basis(n, 1, 3)?;
    let mut exact_fix = None;
    let mut mod_center_fix = None;
    let mut checked = 0usize;
    for perm in (1..=n).permutations(usize::from(n)) {
        checked += 1;
        let (a, b) = (perm[0], perm[2]);
        let (p, q) = if a < b { (a, b) } else { (b, a) };
        let moved = AbelianVector::basis(n, p, q)?.neg();
        if moved == target && exact_fix.is_none() {
            exact_fix = Some(perm.clone());
        }
        // Equal mod center: the difference is a constant vector.
        let diff = moved.sub(&target);
        let first = diff.entries()[0];
        if diff.entries().iter().all(|&x| x == first) && mod_center_fix.is_none() {
            mod_center_fix = Some(perm.clone());
        }
    }
    let control = AbelianVector::basis(n, 1, 3)? == target;
    Ok(Theta0ObstructionReport {
        n,
        permutations_checked: checked,
        exact_fix,
        mod_center_fix,
        control_without_inversion: control,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auto::{eps_map, phi_map, psi_map, pure_catalog, s_map, t_map, EqualityMode};
    use crate::comb::z_pure_word;
    use crate::parse::parse_word;
    use crate::word::Alphabet;

    fn vector_of(n: u16, text: &str) -> AbelianVector {
        let w = parse_word(text, &Alphabet::pure(n)).expect("parses");
        abelianize(&PureWord::new(n, w).expect("valid"))
    }

    #[test]
    fn conjugates_vanish_and_the_full_twist_is_all_ones() {
        assert_eq!(
            vector_of(3, "A(1,2) A(1,3) A(1,2)^-1"),
            AbelianVector::basis(3, 1, 3).expect("valid")
        );
        for n in 2..=6 {
            assert_eq!(abelianize(&z_pure_word(n)), AbelianVector::all_ones(n));
        }
    }

    #[test]
    fn abelianize_is_additive_on_products() {
        let a = vector_of(4, "A(1,2) A(2,4)^3");
        let b = vector_of(4, "A(2,4)^-1 A(3,4)");
        assert_eq!(a.add(&b), vector_of(4, "A(1,2) A(2,4)^2 A(3,4)"));
    }

    #[test]
    fn induced_matrix_of_the_identity_is_the_identity() {
        let id = GeneratorMap::identity(Alphabet::pure(4));
        assert!(induced_matrix(&id).expect("pure domain").is_identity());
    }

    #[test]
    fn crossing_conjugation_induces_a_permutation_matrix() {
        for n in [3u16, 4, 5] {
            for k in 1..n {
                let m = induced_matrix(&s_map(n, k).expect("valid").fwd).expect("pure domain");
                assert!(m.is_permutation(), "s({k}) at n={n}");
            }
        }
    }

    #[test]
    fn crossing_inversion_restricts_to_minus_identity() {
        for n in [3u16, 4, 5] {
            let m = induced_matrix(&t_map(n).expect("valid").fwd).expect("pure domain");
            assert!(m.is_neg_identity(), "t at n={n}");
        }
    }

    #[test]
    fn every_catalog_map_has_unimodular_induced_matrix() {
        for n in [3u16, 4, 5] {
            for (name, pair) in pure_catalog(n).expect("catalog builds") {
                let det = induced_matrix(&pair.fwd)
                    .expect("pure domain")
                    .determinant();
                assert!(det == 1 || det == -1, "{name} at n={n}: det {det}");
            }
        }
    }

    #[test]
    fn induced_matrices_compose_contravariantly_in_application_order() {
        let f = eps_map(4).expect("valid").fwd;
        let g = psi_map(4).expect("valid").fwd;
        let fg = f.then(&g).expect("composes");
        let lhs = induced_matrix(&fg).expect("pure domain");
        let rhs = induced_matrix(&g)
            .expect("pure domain")
            .mul(&induced_matrix(&f).expect("pure domain"));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn induced_matrix_sees_through_central_twists() {
        let phi = phi_map(4, 1, 3).expect("valid");
        let m = induced_matrix(&phi.fwd).expect("pure domain");
        // A(1,2) -> A(1,2) z: its column is e(1,2) + all-ones.
        let expect = AbelianVector::basis(4, 1, 2)
            .expect("valid")
            .add(&AbelianVector::all_ones(4));
        assert_eq!(*m.col(1, 2), expect);
        // phi and its inverse multiply to the identity matrix.
        assert!(m
            .mul(&induced_matrix(&phi.inv).expect("pure domain"))
            .is_identity());
    }

    #[test]
    fn signed_form_test_accepts_the_documented_instances() {
        let e12 = AbelianVector::basis(4, 1, 2).expect("valid");
        let form = signed_generator_mod_center_form(&e12).expect("plain basis vector");
        assert_eq!((form.pair, form.sign, form.center_power), ((1, 2), 1, 0));

        let shifted =
            AbelianVector::all_ones(4).add(&AbelianVector::basis(4, 2, 3).expect("valid"));
        let form = signed_generator_mod_center_form(&shifted).expect("ones plus basis");
        assert_eq!((form.pair, form.sign, form.center_power), ((2, 3), 1, 1));

        let negated = AbelianVector::basis(4, 1, 4).expect("valid").neg();
        let form = signed_generator_mod_center_form(&negated).expect("negative basis vector");
        assert_eq!((form.pair, form.sign, form.center_power), ((1, 4), -1, 0));
    }

    #[test]
    fn signed_form_test_is_stable_under_central_shifts() {
        let v = AbelianVector::basis(5, 2, 4).expect("valid").neg();
        for k in [-3i64, -1, 0, 2, 7] {
            let shifted = v.add(&AbelianVector::all_ones(5).scale(k));
            let form = signed_generator_mod_center_form(&shifted).expect("still signed");
            assert_eq!((form.pair, form.sign), ((2, 4), -1));
            assert_eq!(form.center_power, k);
        }
        let not_signed = AbelianVector::basis(5, 1, 2)
            .expect("valid")
            .add(&AbelianVector::basis(5, 1, 3).expect("valid").scale(-1));
        for k in [-2i64, 0, 5] {
            let shifted = not_signed.add(&AbelianVector::all_ones(5).scale(k));
            assert!(!signed_generator_mod_center_test(&shifted));
        }
    }

    #[test]
    fn w_image_of_the_top_band_fails_the_signed_form_from_four_strands_up() {
        for n in [4u16, 5, 6] {
            let report = verify_wn_obstruction(n).expect("in range");
            assert!(report.obstruction_holds(), "n={n}: {}", report.witness);
            // The witness is minus the sum of the first strand's classes.
            let mut expect = AbelianVector::zero(n);
            for j in 2..=n {
                expect = expect.sub(&AbelianVector::basis(n, 1, j).expect("valid"));
            }
            assert_eq!(report.witness, expect);
        }
    }

    #[test]
    fn at_three_strands_the_w_image_still_has_signed_form() {
        let report = verify_wn_obstruction(3).expect("in range");
        let form = report
            .form_found
            .expect("three strands is below the obstruction");
        assert_eq!((form.pair, form.sign, form.center_power), ((2, 3), 1, -1));
    }

    #[test]
    fn crossing_inverter_sends_the_full_twist_to_its_inverse() {
        for n in 2..=6 {
            let report = verify_center_inversion(n).expect("in range");
            assert!(report.inverts(), "n={n}");
            let expect = i64::from(n) * (i64::from(n) - 1);
            assert_eq!(report.twist_exponent_sum, expect);
            assert_eq!(report.inverted_exponent_sum, -expect);
        }
    }

    #[test]
    fn no_strand_permutation_repairs_the_inverted_band_class() {
        for n in 3..=6 {
            let report = verify_theta0_obstruction(n).expect("in range");
            assert!(report.obstruction_holds(), "n={n}");
            let expect: usize = (1..=usize::from(n)).product();
            assert_eq!(report.permutations_checked, expect);
        }
    }

    #[test]
    fn catalog_twist_behaviour_matches_the_induced_matrix_on_all_ones() {
        // psi inverts the full twist; eps fixes it.
        let ones = AbelianVector::all_ones(4);
        let psi = induced_matrix(&psi_map(4).expect("valid").fwd).expect("pure domain");
        assert_eq!(psi.apply(&ones), ones.neg());
        let eps = induced_matrix(&eps_map(4).expect("valid").fwd).expect("pure domain");
        assert_eq!(eps.apply(&ones), ones);
        // And the exact group-level statement behind the psi row.
        let pair = psi_map(4).expect("valid");
        let sq = pair.fwd.then(&pair.fwd).expect("composes");
        assert!(sq
            .equal(
                &GeneratorMap::identity(Alphabet::pure(4)),
                EqualityMode::Exact
            )
            .expect("comparable"));
    }
}
