//! Endomorphisms of braid-like groups given by generator images, plus the
//! catalog of named maps this crate can verify.
//!
//! A [`GeneratorMap`] sends each generator of its alphabet to an [`Image`]:
//! a word in the same alphabet together with an integer power of the central
//! full twist (meaningful only over the pure alphabet, where `z` denotes the
//! full twist).  Keeping the central power symbolic mirrors how the maps are
//! usually written (`A(1,2) z^-2`) and keeps composition exact.
//!
//! Composition is left to right throughout: `f.then(g)` applies `f` first.
//! Where a printed identity is order-sensitive, callers can evaluate an
//! expression under either convention via [`ComposeOrder`] and report which
//! one validates.

use std::collections::HashMap;
use std::fmt;

use crate::braid::{braid_words_equal, BraidWord};
use crate::comb::{
    center_split, comb_with_budget, rule_conjugate, z_pure_word, CentralWord, PureWord,
};
use crate::error::{Error, Result};
use crate::word::{basis_letter, Alphabet, AlphabetKind, FreeWord, Gen};

/// Syllable budget used for internal normalisation during composition.
const COMPOSE_BUDGET: usize = 200_000;

/// Above this letter count a freshly composed pure image is renormalised via
/// the combed form, which caps representative growth at the element's
/// intrinsic size.
const NORMALIZE_THRESHOLD: usize = 24;

/// A codomain element: `word * z^twist`, with `z` the full twist.
///
/// Over non-pure alphabets the twist must be zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub word: FreeWord,
    pub twist: i64,
}

impl Image {
    pub fn plain(word: FreeWord) -> Image {
        Image { word, twist: 0 }
    }

    pub fn generator(g: Gen) -> Image {
        Image::plain(FreeWord::gen(g))
    }

    pub fn twisted(word: FreeWord, twist: i64) -> Image {
        Image { word, twist }
    }

    /// Concatenation of elements.  Sound because the twist denotes a central
    /// factor, so it can always be slid to the end.
    pub fn mul(&self, other: &Image) -> Image {
        let mut word = self.word.clone();
        word.push_word(&other.word);
        Image {
            word,
            twist: self.twist + other.twist,
        }
    }

    pub fn pow(&self, k: i64) -> Image {
        Image {
            word: self.word.pow(k),
            twist: self.twist * k,
        }
    }

    pub fn inverse(&self) -> Image {
        Image {
            word: self.word.inverse(),
            twist: -self.twist,
        }
    }
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist == 0 {
            write!(f, "{}", self.word)
        } else if self.word.is_identity() {
            write!(f, "z^{}", self.twist)
        } else {
            write!(f, "{} z^{}", self.word, self.twist)
        }
    }
}

/// An endomorphism presented by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    alphabet: Alphabet,
    images: Vec<Image>,
}

/// How two maps are compared: as maps on the group, or as maps on the
/// quotient by the center.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityMode {
    Exact,
    ModCenter,
}

impl GeneratorMap {
    pub fn identity(alphabet: Alphabet) -> GeneratorMap {
        let images = alphabet
            .symbols()
            .iter()
            .map(|&g| Image::generator(g))
            .collect();
        GeneratorMap { alphabet, images }
    }

    pub fn from_images(alphabet: Alphabet, images: Vec<Image>) -> Result<GeneratorMap> {
        if images.len() != alphabet.rank() {
            return Err(Error::BadAutomorphismArgs {
                name: "generator map".into(),
                reason: format!(
                    "expected {} images for {}, got {}",
                    alphabet.rank(),
                    alphabet,
                    images.len()
                ),
            });
        }
        let pure = matches!(alphabet.kind(), AlphabetKind::Pure(_));
        for (slot, img) in images.iter().enumerate() {
            if !img.word.fits(&alphabet) {
                return Err(Error::OutsideAlphabet {
                    gen: format!("image of {}", alphabet.symbols()[slot]),
                    alphabet: alphabet.to_string(),
                });
            }
            if img.twist != 0 && !pure {
                return Err(Error::BadAutomorphismArgs {
                    name: "generator map".into(),
                    reason: "central twist is only meaningful over the pure alphabet".into(),
                });
            }
        }
        Ok(GeneratorMap { alphabet, images })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn strands(&self) -> Option<u16> {
        match self.alphabet.kind() {
            AlphabetKind::Braid(n) | AlphabetKind::Pure(n) | AlphabetKind::PureColumn(n) => Some(n),
            AlphabetKind::Free(_) => None,
        }
    }

    pub fn image(&self, g: &Gen) -> Result<&Image> {
        self.alphabet
            .symbols()
            .iter()
            .position(|s| s == g)
            .map(|idx| &self.images[idx])
            .ok_or_else(|| Error::OutsideAlphabet {
                gen: g.to_string(),
                alphabet: self.alphabet.to_string(),
            })
    }

    pub fn images(&self) -> impl Iterator<Item = (&Gen, &Image)> {
        self.alphabet.symbols().iter().zip(self.images.iter())
    }

    /// Substitute images letterwise through a word.
    pub fn apply_word(&self, w: &FreeWord) -> Result<Image> {
        let mut word = FreeWord::identity();
        let mut twist = 0i64;
        for &(g, e) in w.syllables() {
            let img = self.image(&g)?;
            word.push_word_pow(&img.word, e);
            twist += img.twist * e;
        }
        Ok(Image { word, twist })
    }

    /// Apply to an element written as `word * z^twist`.
    pub fn apply_image(&self, x: &Image) -> Result<Image> {
        let mut out = self.apply_word(&x.word)?;
        if x.twist != 0 {
            let z = self.center_image()?;
            out = out.mul(&z.pow(x.twist));
        }
        Ok(out)
    }

    /// Image of the full twist under this map (pure alphabet only).
    pub fn center_image(&self) -> Result<Image> {
        match self.alphabet.kind() {
            AlphabetKind::Pure(n) => self.apply_word(z_pure_word(n).word()),
            _ => Err(Error::BadAutomorphismArgs {
                name: "center_image".into(),
                reason: "the full twist lives in the pure alphabet".into(),
            }),
        }
    }

    /// Left-to-right composition: apply `self`, then `other`.
    pub fn then(&self, other: &GeneratorMap) -> Result<GeneratorMap> {
        if self.alphabet != other.alphabet {
            return Err(Error::BadAutomorphismArgs {
                name: "compose".into(),
                reason: format!("alphabet mismatch: {} vs {}", self.alphabet, other.alphabet),
            });
        }
        let needs_center = self.images.iter().any(|img| img.twist != 0);
        let z = if needs_center {
            Some(other.center_image()?)
        } else {
            None
        };
        let mut images = Vec::with_capacity(self.images.len());
        for img in &self.images {
            let mut out = other.apply_word(&img.word)?;
            if img.twist != 0 {
                out = out.mul(&z.as_ref().expect("center image prepared").pow(img.twist));
            }
            out.word = self.normalize(out.word)?;
            images.push(out);
        }
        Ok(GeneratorMap {
            alphabet: self.alphabet.clone(),
            images,
        })
    }

    /// Cap representative growth: long pure words are replaced by their
    /// combed normal form, which is canonical for the group element.
    fn normalize(&self, word: FreeWord) -> Result<FreeWord> {
        if word.letter_len() <= NORMALIZE_THRESHOLD {
            return Ok(word);
        }
        match self.alphabet.kind() {
            AlphabetKind::Pure(n) => {
                let combed = comb_with_budget(&PureWord::new(n, word)?, COMPOSE_BUDGET)?;
                Ok(combed.as_pure_word().into_word())
            }
            _ => Ok(word),
        }
    }

    /// Equality of a single pair of images, in the given mode.
    fn images_equal(&self, a: &Image, b: &Image, mode: EqualityMode) -> Result<bool> {
        match self.alphabet.kind() {
            AlphabetKind::Pure(n) => {
                let pa = PureWord::new(n, a.word.clone())?;
                let pb = PureWord::new(n, b.word.clone())?;
                match (center_split(&pa, &pb)?, mode) {
                    (Some(k), EqualityMode::Exact) => Ok(k == b.twist - a.twist),
                    (Some(_), EqualityMode::ModCenter) => Ok(true),
                    (None, _) => Ok(false),
                }
            }
            AlphabetKind::Braid(n) => braid_words_equal(
                &BraidWord::new(n, a.word.clone())?,
                &BraidWord::new(n, b.word.clone())?,
            ),
            AlphabetKind::PureColumn(_) | AlphabetKind::Free(_) => {
                Ok(a.word == b.word && a.twist == b.twist)
            }
        }
    }

    /// Imagewise equality of two maps.
    pub fn equal(&self, other: &GeneratorMap, mode: EqualityMode) -> Result<bool> {
        if self.alphabet != other.alphabet {
            return Err(Error::BadAutomorphismArgs {
                name: "equal".into(),
                reason: format!("alphabet mismatch: {} vs {}", self.alphabet, other.alphabet),
            });
        }
        for (a, b) in self.images.iter().zip(other.images.iter()) {
            if !self.images_equal(a, b, mode)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First generator on which the two maps differ, with both images.
    pub fn first_difference(
        &self,
        other: &GeneratorMap,
        mode: EqualityMode,
    ) -> Result<Option<String>> {
        for ((g, a), b) in self.images().zip(other.images.iter()) {
            if !self.images_equal(a, b, mode)? {
                return Ok(Some(format!("{g}: {a} vs {b}")));
            }
        }
        Ok(None)
    }

    /// For maps equal mod center: the central gap per generator, i.e. the
    /// `c` with `self(g) = other(g) * z^c`.
    pub fn central_gaps(&self, other: &GeneratorMap) -> Result<Vec<(Gen, i64)>> {
        let AlphabetKind::Pure(n) = self.alphabet.kind() else {
            return Err(Error::BadAutomorphismArgs {
                name: "central_gaps".into(),
                reason: "central gaps require the pure alphabet".into(),
            });
        };
        let mut gaps = Vec::new();
        for ((g, a), b) in self.images().zip(other.images.iter()) {
            let pa = PureWord::new(n, a.word.clone())?;
            let pb = PureWord::new(n, b.word.clone())?;
            let Some(k) = center_split(&pa, &pb)? else {
                return Err(Error::BadAutomorphismArgs {
                    name: "central_gaps".into(),
                    reason: format!("maps differ beyond the center at {g}"),
                });
            };
            gaps.push((*g, k + a.twist - b.twist));
        }
        Ok(gaps)
    }

    /// Render an image as a `CentralWord` for display (pure alphabet).
    pub fn image_as_central(&self, g: &Gen) -> Result<CentralWord> {
        let AlphabetKind::Pure(n) = self.alphabet.kind() else {
            return Err(Error::BadAutomorphismArgs {
                name: "image_as_central".into(),
                reason: "central display requires the pure alphabet".into(),
            });
        };
        let img = self.image(g)?;
        CentralWord::new(n, img.word.clone(), img.twist)
    }
}

impl fmt::Display for GeneratorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, img) in self.images() {
            if !first {
                f.write_str("; ")?;
            }
            write!(f, "{g} -> {img}")?;
            first = false;
        }
        Ok(())
    }
}

/// A map bundled with its two-sided inverse.
///
/// Carrying the inverse makes negative powers in expressions exact, and the
/// verification suite checks `f;f^-1 = f^-1;f = id` for every catalog entry.
#[derive(Debug, Clone)]
pub struct AutoPair {
    pub fwd: GeneratorMap,
    pub inv: GeneratorMap,
}

impl AutoPair {
    pub fn identity(alphabet: Alphabet) -> AutoPair {
        let id = GeneratorMap::identity(alphabet);
        AutoPair {
            fwd: id.clone(),
            inv: id,
        }
    }

    pub fn involution(map: GeneratorMap) -> AutoPair {
        AutoPair {
            fwd: map.clone(),
            inv: map,
        }
    }

    pub fn new(fwd: GeneratorMap, inv: GeneratorMap) -> AutoPair {
        AutoPair { fwd, inv }
    }

    pub fn inverse(&self) -> AutoPair {
        AutoPair {
            fwd: self.inv.clone(),
            inv: self.fwd.clone(),
        }
    }

    pub fn then(&self, other: &AutoPair) -> Result<AutoPair> {
        Ok(AutoPair {
            fwd: self.fwd.then(&other.fwd)?,
            inv: other.inv.then(&self.inv)?,
        })
    }

    pub fn pow(&self, k: i64) -> Result<AutoPair> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = AutoPair::identity(self.fwd.alphabet().clone());
        for _ in 0..k.unsigned_abs() {
            out = out.then(&base)?;
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// The catalog.
// ---------------------------------------------------------------------------

fn a(i: u16, j: u16) -> Gen {
    Gen::band(i, j)
}

fn pure_pairs(n: u16) -> impl Iterator<Item = (u16, u16)> {
    (2..=n).flat_map(|j| (1..j).map(move |i| (i, j)))
}

fn check_n(name: &str, n: u16, min: u16) -> Result<()> {
    if n < min {
        return Err(Error::BadAutomorphismArgs {
            name: name.into(),
            reason: format!("needs at least {min} strands, got {n}"),
        });
    }
    Ok(())
}

/// Crossing inverter on the braid alphabet: every `s_i` goes to its inverse.
pub fn tau_map(n: u16) -> Result<AutoPair> {
    check_n("tau", n, 2)?;
    let alphabet = Alphabet::braid(n);
    let images = (1..n)
        .map(|i| Image::plain(FreeWord::gen_pow(Gen::Sigma(i), -1)))
        .collect();
    Ok(AutoPair::involution(GeneratorMap::from_images(
        alphabet, images,
    )?))
}

/// Restriction of the crossing inverter to the pure subgroup:
/// `A(i,j) -> d^-1 A(i,j)^-1 d` with `d = A(i,j) A(i+1,j) ... A(j-1,j)`.
pub fn t_map(n: u16) -> Result<AutoPair> {
    check_n("t", n, 2)?;
    let alphabet = Alphabet::pure(n);
    let mut images = Vec::new();
    for (i, j) in pure_pairs(n) {
        let mut d = FreeWord::identity();
        for r in i..j {
            d.push(a(r, j), 1);
        }
        let img = FreeWord::gen_pow(a(i, j), -1).conjugated_by(&d);
        images.push(Image::plain(img));
    }
    Ok(AutoPair::involution(GeneratorMap::from_images(
        alphabet, images,
    )?))
}

/// Conjugation by the crossing `s_k`, restricted to the pure subgroup.
pub fn s_map(n: u16, k: u16) -> Result<AutoPair> {
    check_n("s", n, 2)?;
    if k == 0 || k >= n {
        return Err(Error::BadAutomorphismArgs {
            name: "s".into(),
            reason: format!("crossing index must lie in 1..={}, got {k}", n - 1),
        });
    }
    let alphabet = Alphabet::pure(n);
    let build = |e: i8| -> Result<GeneratorMap> {
        let mut images = Vec::new();
        for (i, j) in pure_pairs(n) {
            images.push(Image::plain(crate::braid::sigma_action_on_pure(
                k,
                e,
                (i, j),
                n,
            )?));
        }
        GeneratorMap::from_images(alphabet.clone(), images)
    };
    Ok(AutoPair::new(build(1)?, build(-1)?))
}

/// The central map `A(1,2) -> A(1,2) z^-2`, all other generators fixed.
/// It inverts the full twist.
pub fn psi_map(n: u16) -> Result<AutoPair> {
    check_n("psi", n, 2)?;
    let alphabet = Alphabet::pure(n);
    let images = pure_pairs(n)
        .map(|(i, j)| {
            let twist = if (i, j) == (1, 2) { -2 } else { 0 };
            Image::twisted(FreeWord::gen(a(i, j)), twist)
        })
        .collect();
    Ok(AutoPair::involution(GeneratorMap::from_images(
        alphabet, images,
    )?))
}

/// Canonical order-two central map: trivial on the quotient by the center,
/// inverts the full twist.  Same generator images as [`psi_map`].
pub fn theta0_map(n: u16) -> Result<AutoPair> {
    psi_map(n).map_err(|_| Error::BadAutomorphismArgs {
        name: "theta0".into(),
        reason: format!("needs at least 2 strands, got {n}"),
    })
}

/// The central twist family: `A(1,2) -> A(1,2) z`, `A(i,j) -> A(i,j) z^-1`,
/// defined for `{i,j} != {1,2}`.
pub fn phi_map(n: u16, i: u16, j: u16) -> Result<AutoPair> {
    check_n("phi", n, 3)?;
    if !(i < j && j <= n) || (i, j) == (1, 2) {
        return Err(Error::BadAutomorphismArgs {
            name: "phi".into(),
            reason: format!("needs a pair (i,j) with i<j<={n} and (i,j) != (1,2), got ({i},{j})"),
        });
    }
    let alphabet = Alphabet::pure(n);
    let build = |sign: i64| -> Result<GeneratorMap> {
        let images = pure_pairs(n)
            .map(|(p, q)| {
                let twist = if (p, q) == (1, 2) {
                    sign
                } else if (p, q) == (i, j) {
                    -sign
                } else {
                    0
                };
                Image::twisted(FreeWord::gen(a(p, q)), twist)
            })
            .collect();
        GeneratorMap::from_images(alphabet.clone(), images)
    };
    Ok(AutoPair::new(build(1)?, build(-1)?))
}

/// The product `A(1,i) ... A(i-1,i) A(i,i+1) ... A(i,n-1)`: every band
/// touching strand `i` except those reaching strand `n`.
fn spoke_product(i: u16, n: u16) -> FreeWord {
    let mut c = FreeWord::identity();
    for r in 1..i {
        c.push(a(r, i), 1);
    }
    for r in i + 1..n {
        c.push(a(i, r), 1);
    }
    c
}

/// The mapping-class generators acting on the pure alphabet.
///
/// For `k <= n-1, k != 2` this is crossing conjugation written with short
/// conjugators; `k = 2` and `k = n` have their own tables, the latter two
/// carrying explicit central factors.
pub fn omega_map(n: u16, k: u16) -> Result<AutoPair> {
    check_n("omega", n, 2)?;
    if k == 0 || k > n {
        return Err(Error::BadAutomorphismArgs {
            name: "omega".into(),
            reason: format!("index must lie in 1..={n}, got {k}"),
        });
    }
    let alphabet = Alphabet::pure(n);
    if k == n {
        // Last generator: inverts the bands reaching strand n, with a
        // central correction on the first two.
        let fwd = pure_pairs(n)
            .map(|(i, j)| {
                if j != n {
                    return Image::generator(a(i, j));
                }
                let mut w = FreeWord::gen(a(i, n));
                w.push_word(&spoke_product(i, n));
                let twist = if i <= 2 { 1 } else { 0 };
                Image::twisted(w.inverse(), twist)
            })
            .collect();
        let inv = pure_pairs(n)
            .map(|(i, j)| {
                if j != n {
                    return Image::generator(a(i, j));
                }
                let mut w = FreeWord::gen_pow(a(i, n), -1);
                w.push_word(&spoke_product(i, n).inverse());
                let twist = if i <= 2 { 1 } else { 0 };
                Image::twisted(w, twist)
            })
            .collect();
        return Ok(AutoPair::new(
            GeneratorMap::from_images(alphabet.clone(), fwd)?,
            GeneratorMap::from_images(alphabet, inv)?,
        ));
    }
    if k == 2 {
        check_n("omega", n, 3)?;
        let y = FreeWord::gen(a(2, 3));
        let fwd = pure_pairs(n)
            .map(|(i, j)| match (i, j) {
                (1, 2) => Image::twisted(FreeWord::gen(a(1, 3)).conjugated_by(&y), 1),
                (1, 3) => Image::twisted(FreeWord::gen(a(1, 2)), -1),
                (2, j) if j >= 4 => Image::plain(FreeWord::gen(a(3, j)).conjugated_by(&y)),
                (3, j) if j >= 4 => Image::generator(a(2, j)),
                _ => Image::generator(a(i, j)),
            })
            .collect();
        let inv = pure_pairs(n)
            .map(|(i, j)| match (i, j) {
                (1, 2) => Image::twisted(FreeWord::gen(a(1, 3)), 1),
                (1, 3) => Image::twisted(FreeWord::gen(a(1, 2)).conjugated_by(&y.inverse()), -1),
                (2, j) if j >= 4 => Image::generator(a(3, j)),
                (3, j) if j >= 4 => {
                    Image::plain(FreeWord::gen(a(2, j)).conjugated_by(&y.inverse()))
                }
                _ => Image::generator(a(i, j)),
            })
            .collect();
        return Ok(AutoPair::new(
            GeneratorMap::from_images(alphabet.clone(), fwd)?,
            GeneratorMap::from_images(alphabet, inv)?,
        ));
    }
    // Generic rows: short-conjugator form of crossing conjugation.
    let fwd = pure_pairs(n)
        .map(|(i, j)| {
            if k + 1 == i {
                Image::generator(a(i - 1, j))
            } else if k == i && j > i + 1 {
                Image::plain(FreeWord::gen(a(i + 1, j)).conjugated_by(&FreeWord::gen(a(i, i + 1))))
            } else if k + 1 == j && j > i + 1 {
                Image::generator(a(i, j - 1))
            } else if k == j {
                Image::plain(FreeWord::gen(a(i, j + 1)).conjugated_by(&FreeWord::gen(a(j, j + 1))))
            } else {
                Image::generator(a(i, j))
            }
        })
        .collect();
    let fwd = GeneratorMap::from_images(alphabet.clone(), fwd)?;
    // The group element is crossing conjugation, so the crossing table at
    // the opposite sign inverts it.
    let inv = s_map(n, k)?.inv;
    Ok(AutoPair::new(fwd, inv))
}

/// The reflection generator: `A(1,2) -> A(1,2)^-1 z^2`, and otherwise
/// `A(i,j) -> d^-1 A(i,j)^-1 d` with `d = A(i+1,j) ... A(j-1,j)`.
pub fn eps_map(n: u16) -> Result<AutoPair> {
    check_n("eps", n, 2)?;
    let alphabet = Alphabet::pure(n);
    let images = pure_pairs(n)
        .map(|(i, j)| {
            if (i, j) == (1, 2) {
                return Image::twisted(FreeWord::gen_pow(a(1, 2), -1), 2);
            }
            let mut d = FreeWord::identity();
            for r in i + 1..j {
                d.push(a(r, j), 1);
            }
            Image::plain(FreeWord::gen_pow(a(i, j), -1).conjugated_by(&d))
        })
        .collect();
    Ok(AutoPair::involution(GeneratorMap::from_images(
        alphabet, images,
    )?))
}

/// The twist-free companion of the last mapping-class generator:
/// `A(i,n) -> (A(i,n) * spoke_i)^-1`, lower bands fixed.
pub fn w_map(n: u16) -> Result<AutoPair> {
    check_n("w", n, 2)?;
    let alphabet = Alphabet::pure(n);
    let fwd = pure_pairs(n)
        .map(|(i, j)| {
            if j != n {
                return Image::generator(a(i, j));
            }
            let mut w = FreeWord::gen(a(i, n));
            w.push_word(&spoke_product(i, n));
            Image::plain(w.inverse())
        })
        .collect();
    let inv = pure_pairs(n)
        .map(|(i, j)| {
            if j != n {
                return Image::generator(a(i, j));
            }
            let mut w = FreeWord::gen_pow(a(i, n), -1);
            w.push_word(&spoke_product(i, n).inverse());
            Image::plain(w)
        })
        .collect();
    Ok(AutoPair::new(
        GeneratorMap::from_images(alphabet.clone(), fwd)?,
        GeneratorMap::from_images(alphabet, inv)?,
    ))
}

fn require_three(name: &str, n: u16) -> Result<()> {
    if n != 3 {
        return Err(Error::BadAutomorphismArgs {
            name: name.into(),
            reason: format!("defined on 3 strands only, got {n}"),
        });
    }
    Ok(())
}

/// Three-strand coordinates: inverts the center coordinate, fixes `x`, `y`.
pub fn theta_map(n: u16) -> Result<AutoPair> {
    require_three("theta", n)?;
    let alphabet = Alphabet::pure(3);
    let images = vec![
        Image::twisted(FreeWord::gen(a(1, 2)), -2),
        Image::generator(a(1, 3)),
        Image::generator(a(2, 3)),
    ];
    Ok(AutoPair::involution(GeneratorMap::from_images(
        alphabet, images,
    )?))
}

/// Three-strand coordinates: `x -> x z`, the rest fixed.
pub fn xi_map(n: u16) -> Result<AutoPair> {
    require_three("xi", n)?;
    let alphabet = Alphabet::pure(3);
    let build = |sign: i64| -> Result<GeneratorMap> {
        GeneratorMap::from_images(
            alphabet.clone(),
            vec![
                Image::twisted(FreeWord::gen(a(1, 2)), -sign),
                Image::twisted(FreeWord::gen(a(1, 3)), sign),
                Image::generator(a(2, 3)),
            ],
        )
    };
    Ok(AutoPair::new(build(1)?, build(-1)?))
}

/// Three-strand coordinates: `y -> y z`, the rest fixed.
pub fn eta_map(n: u16) -> Result<AutoPair> {
    require_three("eta", n)?;
    let alphabet = Alphabet::pure(3);
    let build = |sign: i64| -> Result<GeneratorMap> {
        GeneratorMap::from_images(
            alphabet.clone(),
            vec![
                Image::twisted(FreeWord::gen(a(1, 2)), -sign),
                Image::generator(a(1, 3)),
                Image::twisted(FreeWord::gen(a(2, 3)), sign),
            ],
        )
    };
    Ok(AutoPair::new(build(1)?, build(-1)?))
}

/// Rank-two free alphabet used by the two-generator maps.
pub fn free_two() -> Alphabet {
    Alphabet::basis(2)
}

fn f2_gen(i: u16) -> Gen {
    basis_letter(i)
}

/// Swap of the two free generators.
pub fn rho_f2() -> Result<AutoPair> {
    let images = vec![Image::generator(f2_gen(2)), Image::generator(f2_gen(1))];
    Ok(AutoPair::involution(GeneratorMap::from_images(
        free_two(),
        images,
    )?))
}

/// Inversion of the first free generator.
pub fn sigma_f2() -> Result<AutoPair> {
    let images = vec![
        Image::plain(FreeWord::gen_pow(f2_gen(1), -1)),
        Image::generator(f2_gen(2)),
    ];
    Ok(AutoPair::involution(GeneratorMap::from_images(
        free_two(),
        images,
    )?))
}

/// The transvection `x1 -> x1 x2`.
pub fn nu_f2() -> Result<AutoPair> {
    let build = |sign: i64| -> Result<GeneratorMap> {
        let mut w = FreeWord::gen(f2_gen(1));
        w.push(f2_gen(2), sign);
        GeneratorMap::from_images(
            free_two(),
            vec![Image::plain(w), Image::generator(f2_gen(2))],
        )
    };
    Ok(AutoPair::new(build(1)?, build(-1)?))
}

/// Translate a rank-two free word into the `x = A(1,3)`, `y = A(2,3)`
/// coordinates of the three-strand pure group.
pub fn f2_word_to_bands(w: &FreeWord) -> FreeWord {
    w.substitute(|g| {
        if *g == f2_gen(1) {
            FreeWord::gen(a(1, 3))
        } else {
            FreeWord::gen(a(2, 3))
        }
    })
}

/// The unique lift of a rank-two map to three strands that fixes the full
/// twist: `x`, `y` as given, and `A(1,2) -> z * f(y)^-1 f(x)^-1`.
pub fn lift_f2(pair: &AutoPair) -> Result<AutoPair> {
    let lift_one = |map: &GeneratorMap| -> Result<GeneratorMap> {
        let fx = f2_word_to_bands(&map.image(&f2_gen(1))?.word);
        let fy = f2_word_to_bands(&map.image(&f2_gen(2))?.word);
        let mut head = fy.inverse();
        head.push_word(&fx.inverse());
        GeneratorMap::from_images(
            Alphabet::pure(3),
            vec![Image::twisted(head, 1), Image::plain(fx), Image::plain(fy)],
        )
    };
    Ok(AutoPair::new(lift_one(&pair.fwd)?, lift_one(&pair.inv)?))
}

/// Lift of the generator swap, corrected to fix the full twist:
/// `A(1,2) -> A(2,3) A(1,2) A(2,3)^-1`.
pub fn rho_p3(n: u16) -> Result<AutoPair> {
    require_three("rho", n)?;
    let y = FreeWord::gen(a(2, 3));
    let images = vec![
        Image::plain(FreeWord::gen(a(1, 2)).conjugated_by(&y.inverse())),
        Image::generator(a(2, 3)),
        Image::generator(a(1, 3)),
    ];
    Ok(AutoPair::involution(GeneratorMap::from_images(
        Alphabet::pure(3),
        images,
    )?))
}

/// Lift of first-generator inversion: `A(1,2) -> A(1,2) A(1,3)^2`.
pub fn sigma_p3(n: u16) -> Result<AutoPair> {
    require_three("sigma", n)?;
    let mut head = FreeWord::gen(a(1, 2));
    head.push(a(1, 3), 2);
    let images = vec![
        Image::plain(head),
        Image::plain(FreeWord::gen_pow(a(1, 3), -1)),
        Image::generator(a(2, 3)),
    ];
    Ok(AutoPair::involution(GeneratorMap::from_images(
        Alphabet::pure(3),
        images,
    )?))
}

/// Lift of the transvection: `A(1,2) -> A(2,3)^-1 A(1,2)`.
pub fn nu_p3(n: u16) -> Result<AutoPair> {
    require_three("nu", n)?;
    let build = |sign: i64| -> Result<GeneratorMap> {
        let mut head = FreeWord::gen_pow(a(2, 3), -sign);
        head.push(a(1, 2), 1);
        let mut x_img = FreeWord::gen(a(1, 3));
        x_img.push(a(2, 3), sign);
        GeneratorMap::from_images(
            Alphabet::pure(3),
            vec![
                Image::plain(head),
                Image::plain(x_img),
                Image::generator(a(2, 3)),
            ],
        )
    };
    Ok(AutoPair::new(build(1)?, build(-1)?))
}

/// A three-strand map that kills no generator yet admits no lift one strand
/// up: `A(1,2) -> A(1,2) A(1,3) A(2,3)^-1 A(1,3)^-1`, `A(1,3) -> A(1,3) A(2,3)`.
/// As a group map it coincides with [`nu_p3`], written differently.
pub fn nonliftable_p3_map() -> Result<GeneratorMap> {
    let mut first = FreeWord::gen(a(1, 2));
    first.push(a(1, 3), 1);
    first.push(a(2, 3), -1);
    first.push(a(1, 3), -1);
    let mut second = FreeWord::gen(a(1, 3));
    second.push(a(2, 3), 1);
    GeneratorMap::from_images(
        Alphabet::pure(3),
        vec![
            Image::plain(first),
            Image::plain(second),
            Image::generator(a(2, 3)),
        ],
    )
}

// ---------------------------------------------------------------------------
// Relator enumeration and homomorphism checking.
// ---------------------------------------------------------------------------

/// One defining relation, as a pair of words with equal images required.
#[derive(Debug, Clone)]
pub struct Relator {
    pub family: &'static str,
    pub lhs: FreeWord,
    pub rhs: FreeWord,
}

/// The defining relations of the pure group on the band alphabet: for every
/// conjugator `A(r,s)` and target `A(k,j)` with `r < s < j`, the conjugate
/// `A(r,s)^-1 A(k,j) A(r,s)` equals its rewritten form.
pub fn pure_relators(n: u16) -> Result<Vec<Relator>> {
    let mut out = Vec::new();
    for j in 2..=n {
        for k in 1..j {
            for s in 2..j {
                for r in 1..s {
                    let family = if s == k {
                        "conjugator-ends-at-target"
                    } else if r == k {
                        "conjugator-starts-at-target"
                    } else if r < k && k < s {
                        "conjugator-straddles-target"
                    } else {
                        "disjoint-commuting"
                    };
                    let lhs = FreeWord::gen(a(k, j)).conjugated_by(&FreeWord::gen(a(r, s)));
                    let rhs = rule_conjugate((k, j), (r, s), 1)?;
                    out.push(Relator { family, lhs, rhs });
                }
            }
        }
    }
    Ok(out)
}

/// The braid and far-commutation relations on the crossing alphabet.
pub fn braid_relators(n: u16) -> Vec<Relator> {
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let (si, sj) = (Gen::Sigma(i), Gen::Sigma(i + 1));
        let mut lhs = FreeWord::gen(si);
        lhs.push(sj, 1);
        lhs.push(si, 1);
        let mut rhs = FreeWord::gen(sj);
        rhs.push(si, 1);
        rhs.push(sj, 1);
        out.push(Relator {
            family: "adjacent-braid",
            lhs,
            rhs,
        });
    }
    for i in 1..n {
        for j in i + 2..n {
            let (si, sj) = (Gen::Sigma(i), Gen::Sigma(j));
            let mut lhs = FreeWord::gen(si);
            lhs.push(sj, 1);
            let mut rhs = FreeWord::gen(sj);
            rhs.push(si, 1);
            out.push(Relator {
                family: "far-commutation",
                lhs,
                rhs,
            });
        }
    }
    out
}

/// Outcome of checking every defining relation under a map.
#[derive(Debug, Clone)]
pub struct HomomorphismReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Push every defining relation of the domain through `f` and test that both
/// sides stay equal.  Free domains have no relations and pass vacuously.
pub fn verify_homomorphism(f: &GeneratorMap) -> Result<HomomorphismReport> {
    let relators = match f.alphabet().kind() {
        AlphabetKind::Pure(n) => pure_relators(n)?,
        AlphabetKind::Braid(n) => braid_relators(n),
        AlphabetKind::PureColumn(_) | AlphabetKind::Free(_) => Vec::new(),
    };
    let mut failures = Vec::new();
    for rel in &relators {
        let left = f.apply_word(&rel.lhs)?;
        let right = f.apply_word(&rel.rhs)?;
        if !f.images_equal(&left, &right, EqualityMode::Exact)? {
            failures.push(format!(
                "{}: images of {} and {} disagree",
                rel.family, rel.lhs, rel.rhs
            ));
        }
    }
    Ok(HomomorphismReport {
        checked: relators.len(),
        failures,
    })
}

// ---------------------------------------------------------------------------
// The expression language.
// ---------------------------------------------------------------------------

/// Which group an expression acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Braid,
    Pure,
    FreeRank2,
}

impl GroupKind {
    pub fn alphabet(self, n: u16) -> Alphabet {
        match self {
            GroupKind::Braid => Alphabet::braid(n),
            GroupKind::Pure => Alphabet::pure(n),
            GroupKind::FreeRank2 => free_two(),
        }
    }
}

/// Reading direction for a factor sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComposeOrder {
    /// `f;g` applies `f` first (the default).
    LeftToRight,
    /// `f;g` applies `g` first.
    RightToLeft,
}

/// Parsed form of an automorphism expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutoExpr {
    Name { name: String, args: Vec<i64> },
    Pow(Box<AutoExpr>, i64),
    Seq(Vec<AutoExpr>),
}

impl fmt::Display for AutoExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutoExpr::Name { name, args } => {
                f.write_str(name)?;
                if !args.is_empty() {
                    write!(f, "({}", args[0])?;
                    for x in &args[1..] {
                        write!(f, ",{x}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
            AutoExpr::Pow(e, k) => match **e {
                AutoExpr::Name { .. } => write!(f, "{e}^{k}"),
                _ => write!(f, "({e})^{k}"),
            },
            AutoExpr::Seq(parts) => {
                for (idx, p) in parts.iter().enumerate() {
                    if idx > 0 {
                        f.write_str(" ; ")?;
                    }
                    match p {
                        AutoExpr::Seq(_) => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

struct ExprParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn new(text: &'a str) -> ExprParser<'a> {
        ExprParser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn fail(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            at: self.pos,
            reason: reason.into(),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') || self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.fail("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.fail("integer out of range"))
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(format!("expected {:?}", b as char)))
        }
    }

    fn factor(&mut self) -> Result<AutoExpr> {
        let mut node = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                inner
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos])
                    .expect("ascii name")
                    .to_string();
                let mut args = Vec::new();
                if self.peek() == Some(b'(') {
                    self.pos += 1;
                    args.push(self.integer()?);
                    if self.peek() == Some(b',') {
                        self.pos += 1;
                        args.push(self.integer()?);
                    }
                    self.expect(b')')?;
                }
                AutoExpr::Name { name, args }
            }
            _ => return Err(self.fail("expected a name or a parenthesised expression")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            node = AutoExpr::Pow(Box::new(node), k);
        }
        Ok(node)
    }

    fn expr(&mut self) -> Result<AutoExpr> {
        let mut parts = vec![self.factor()?];
        while self.peek() == Some(b';') {
            self.pos += 1;
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("nonempty")
        } else {
            AutoExpr::Seq(parts)
        })
    }
}

/// Parse an automorphism expression such as `t ; eps` or `(s(1) ; w)^2`.
pub fn parse_auto_expr(text: &str) -> Result<AutoExpr> {
    let mut p = ExprParser::new(text);
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(Error::Parse {
            at: p.pos,
            reason: "trailing input after expression".into(),
        });
    }
    Ok(e)
}

fn expect_args(name: &str, args: &[i64], want: usize) -> Result<()> {
    if args.len() != want {
        return Err(Error::BadAutomorphismArgs {
            name: name.into(),
            reason: format!("expected {want} argument(s), got {}", args.len()),
        });
    }
    Ok(())
}

fn small(name: &str, x: i64) -> Result<u16> {
    u16::try_from(x).map_err(|_| Error::BadAutomorphismArgs {
        name: name.into(),
        reason: format!("argument {x} out of range"),
    })
}

/// Resolve a catalog name to a map/inverse pair over the given group.
pub fn named_automorphism(name: &str, args: &[i64], n: u16, group: GroupKind) -> Result<AutoPair> {
    match (group, name) {
        (GroupKind::Braid, "tau") => {
            expect_args(name, args, 0)?;
            tau_map(n)
        }
        (GroupKind::Pure, "t") => {
            expect_args(name, args, 0)?;
            t_map(n)
        }
        (GroupKind::Pure, "s") => {
            expect_args(name, args, 1)?;
            s_map(n, small(name, args[0])?)
        }
        (GroupKind::Pure, "psi") => {
            expect_args(name, args, 0)?;
            psi_map(n)
        }
        (GroupKind::Pure, "theta0") => {
            expect_args(name, args, 0)?;
            theta0_map(n)
        }
        (GroupKind::Pure, "phi") => {
            expect_args(name, args, 2)?;
            phi_map(n, small(name, args[0])?, small(name, args[1])?)
        }
        (GroupKind::Pure, "omega") => {
            expect_args(name, args, 1)?;
            omega_map(n, small(name, args[0])?)
        }
        (GroupKind::Pure, "eps") => {
            expect_args(name, args, 0)?;
            eps_map(n)
        }
        (GroupKind::Pure, "w") => {
            expect_args(name, args, 0)?;
            w_map(n)
        }
        (GroupKind::Pure, "theta") => {
            expect_args(name, args, 0)?;
            theta_map(n)
        }
        (GroupKind::Pure, "xi") => {
            expect_args(name, args, 0)?;
            xi_map(n)
        }
        (GroupKind::Pure, "eta") => {
            expect_args(name, args, 0)?;
            eta_map(n)
        }
        (GroupKind::Pure, "rho") => {
            expect_args(name, args, 0)?;
            rho_p3(n)
        }
        (GroupKind::Pure, "sigma") => {
            expect_args(name, args, 0)?;
            sigma_p3(n)
        }
        (GroupKind::Pure, "nu") => {
            expect_args(name, args, 0)?;
            nu_p3(n)
        }
        (GroupKind::FreeRank2, "rho") => {
            expect_args(name, args, 0)?;
            rho_f2()
        }
        (GroupKind::FreeRank2, "sigma") => {
            expect_args(name, args, 0)?;
            sigma_f2()
        }
        (GroupKind::FreeRank2, "nu") => {
            expect_args(name, args, 0)?;
            nu_f2()
        }
        _ => Err(Error::UnknownAutomorphism {
            name: format!("{name} (over {group:?})"),
        }),
    }
}

/// Evaluate an expression to a map/inverse pair.
pub fn evaluate(
    expr: &AutoExpr,
    n: u16,
    group: GroupKind,
    order: ComposeOrder,
) -> Result<AutoPair> {
    match expr {
        AutoExpr::Name { name, args } => named_automorphism(name, args, n, group),
        AutoExpr::Pow(inner, k) => evaluate(inner, n, group, order)?.pow(*k),
        AutoExpr::Seq(parts) => {
            let mut acc = AutoPair::identity(group.alphabet(n));
            let evaluated: Vec<AutoPair> = parts
                .iter()
                .map(|p| evaluate(p, n, group, order))
                .collect::<Result<_>>()?;
            let iter: Box<dyn Iterator<Item = &AutoPair>> = match order {
                ComposeOrder::LeftToRight => Box::new(evaluated.iter()),
                ComposeOrder::RightToLeft => Box::new(evaluated.iter().rev()),
            };
            for p in iter {
                acc = acc.then(p)?;
            }
            Ok(acc)
        }
    }
}

/// Result of comparing two automorphism expressions.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub holds: bool,
    pub mode: EqualityMode,
    pub order: ComposeOrder,
    /// For mod-center comparisons that hold: the central gap per generator.
    pub central_gaps: Option<Vec<(Gen, i64)>>,
    /// On failure: the first generator where the sides disagree.
    pub witness: Option<String>,
}

/// Evaluate `lhs` and `rhs` (identity when absent) and compare them.
pub fn verify_relation(
    lhs: &AutoExpr,
    rhs: Option<&AutoExpr>,
    n: u16,
    group: GroupKind,
    mode: EqualityMode,
    order: ComposeOrder,
) -> Result<RelationReport> {
    let left = evaluate(lhs, n, group, order)?;
    let right = match rhs {
        Some(e) => evaluate(e, n, group, order)?,
        None => AutoPair::identity(group.alphabet(n)),
    };
    let holds = left.fwd.equal(&right.fwd, mode)?;
    let central_gaps = if holds && mode == EqualityMode::ModCenter {
        Some(left.fwd.central_gaps(&right.fwd)?)
    } else {
        None
    };
    let witness = if holds {
        None
    } else {
        left.fwd.first_difference(&right.fwd, mode)?
    };
    Ok(RelationReport {
        holds,
        mode,
        order,
        central_gaps,
        witness,
    })
}

/// The named maps defined over the pure alphabet at a given strand count,
/// keyed by the expression that denotes them.
pub fn pure_catalog(n: u16) -> Result<Vec<(String, AutoPair)>> {
    let mut out: Vec<(String, AutoPair)> = vec![
        ("psi".into(), psi_map(n)?),
        ("theta0".into(), theta0_map(n)?),
        ("t".into(), t_map(n)?),
        ("eps".into(), eps_map(n)?),
        ("w".into(), w_map(n)?),
    ];
    for k in 1..n {
        out.push((format!("s({k})"), s_map(n, k)?));
    }
    for k in 1..=n {
        out.push((format!("omega({k})"), omega_map(n, k)?));
    }
    for (i, j) in pure_pairs(n) {
        if (i, j) != (1, 2) {
            out.push((format!("phi({i},{j})"), phi_map(n, i, j)?));
        }
    }
    if n == 3 {
        for name in ["theta", "xi", "eta", "rho", "sigma", "nu"] {
            out.push((
                name.into(),
                named_automorphism(name, &[], 3, GroupKind::Pure)?,
            ));
        }
    }
    Ok(out)
}

/// Memoized catalog lookup keyed by rendered expression text, for suites
/// that evaluate many relation words over the same strand count.
pub struct CatalogCache {
    n: u16,
    group: GroupKind,
    cache: HashMap<String, AutoPair>,
}

impl CatalogCache {
    pub fn new(n: u16, group: GroupKind) -> CatalogCache {
        CatalogCache {
            n,
            group,
            cache: HashMap::new(),
        }
    }

    pub fn get(&mut self, expr_text: &str) -> Result<AutoPair> {
        if let Some(hit) = self.cache.get(expr_text) {
            return Ok(hit.clone());
        }
        let expr = parse_auto_expr(expr_text)?;
        let pair = evaluate(&expr, self.n, self.group, ComposeOrder::LeftToRight)?;
        self.cache.insert(expr_text.to_string(), pair.clone());
        Ok(pair)
    }
}
