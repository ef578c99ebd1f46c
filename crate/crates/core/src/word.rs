//! Free words over a generator alphabet.
//!
//! A [`FreeWord`] is a freely reduced word stored as run-length syllables
//! `(generator, exponent)`.  Reduction is the only normalization applied here;
//! group relations (braid relations, commutation of the center, ...) live in
//! the layers above.  Three symbol families cover every group in the crate:
//! braid generators `s i`, band generators `A(i,j)` and named free letters.

use std::fmt;

use arrayvec::ArrayString;

use crate::error::{Error, Result};

/// Short inline name for a free letter (`x`, `y`, `x3`, ...).
pub type LetterName = ArrayString<8>;

/// One generator symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    /// Elementary braid crossing `s i` (strand `i` over `i+1`), `i >= 1`.
    Sigma(u16),
    /// Band generator `A(i,j)`, the pure braid where strand `j` loops around
    /// strand `i`; always `1 <= i < j`.
    Band(u16, u16),
    /// A letter of an abstract free group.
    Letter(LetterName),
}

impl Gen {
    /// Band generator `A(i,j)`; panics unless `i < j`.
    pub fn band(i: u16, j: u16) -> Gen {
        assert!(
            0 < i && i < j,
            "band generator needs 1 <= i < j, got ({i},{j})"
        );
        Gen::Band(i, j)
    }

    /// Free letter with the given short name; panics if the name is too long.
    pub fn letter(name: &str) -> Gen {
        Gen::Letter(LetterName::from(name).expect("letter name longer than 8 bytes"))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Sigma(i) => write!(f, "s{i}"),
            Gen::Band(i, j) => write!(f, "A({i},{j})"),
            Gen::Letter(name) => f.write_str(name),
        }
    }
}

/// Which group a set of symbols presents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlphabetKind {
    /// Braid group on `n` strands: `s1 .. s(n-1)`.
    Braid(u16),
    /// Pure braid group on `n` strands: all `A(i,j)` with `j <= n`.
    Pure(u16),
    /// The free subgroup of a pure braid group generated by one column
    /// `A(1,j) .. A(j-1,j)` of band generators.
    PureColumn(u16),
    /// Plain free group on named letters.
    Free(u16),
}

/// A declared generator alphabet: the symbols a parsed word may use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    kind: AlphabetKind,
    symbols: Vec<Gen>,
}

impl Alphabet {
    /// Braid alphabet `s1 .. s(n-1)`.
    pub fn braid(n: u16) -> Alphabet {
        Alphabet {
            kind: AlphabetKind::Braid(n),
            symbols: (1..n).map(Gen::Sigma).collect(),
        }
    }

    /// Pure braid alphabet: every `A(i,j)` with `1 <= i < j <= n`.
    pub fn pure(n: u16) -> Alphabet {
        let mut symbols = Vec::new();
        for j in 2..=n {
            for i in 1..j {
                symbols.push(Gen::Band(i, j));
            }
        }
        Alphabet {
            kind: AlphabetKind::Pure(n),
            symbols,
        }
    }

    /// The column alphabet `A(1,j) .. A(j-1,j)`, a free basis.
    pub fn pure_column(j: u16) -> Alphabet {
        Alphabet {
            kind: AlphabetKind::PureColumn(j),
            symbols: (1..j).map(|i| Gen::Band(i, j)).collect(),
        }
    }

    /// Free alphabet on explicitly named letters.
    pub fn free(names: &[&str]) -> Result<Alphabet> {
        let mut symbols = Vec::new();
        for name in names {
            symbols.push(checked_letter(name)?);
        }
        Ok(Alphabet {
            kind: AlphabetKind::Free(names.len() as u16),
            symbols,
        })
    }

    /// Free alphabet `x1 .. xn`, the basis the braid group acts on.
    pub fn basis(n: u16) -> Alphabet {
        Alphabet {
            kind: AlphabetKind::Free(n),
            symbols: (1..=n).map(basis_letter).collect(),
        }
    }

    /// Same alphabet plus one extra named letter (e.g. a symbol for the
    /// full twist next to the band generators).
    pub fn with_letter(mut self, name: &str) -> Result<Alphabet> {
        let gen = checked_letter(name)?;
        if !self.symbols.contains(&gen) {
            self.symbols.push(gen);
        }
        Ok(self)
    }

    pub fn kind(&self) -> AlphabetKind {
        self.kind
    }

    pub fn symbols(&self) -> &[Gen] {
        &self.symbols
    }

    pub fn contains(&self, gen: &Gen) -> bool {
        self.symbols.contains(gen)
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.symbols.len()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AlphabetKind::Braid(n) => write!(f, "braid({n})"),
            AlphabetKind::Pure(n) => write!(f, "pure({n})"),
            AlphabetKind::PureColumn(j) => write!(f, "column({j})"),
            AlphabetKind::Free(r) => write!(f, "free({r})"),
        }
    }
}

/// The letter `x{i}` of the standard free basis.
pub fn basis_letter(i: u16) -> Gen {
    let mut name = LetterName::new();
    fmt::Write::write_fmt(&mut name, format_args!("x{i}")).expect("basis index too wide");
    Gen::Letter(name)
}

fn checked_letter(name: &str) -> Result<Gen> {
    let ok_shape = !name.is_empty()
        && name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    // `s<digits>` and `A` would collide with the builtin token forms.
    let reserved = name == "A"
        || (name.starts_with('s')
            && name.len() > 1
            && name[1..].chars().all(|c| c.is_ascii_digit()));
    if !ok_shape || reserved || name.len() > 8 {
        return Err(Error::Parse {
            at: 0,
            reason: format!("invalid letter name {name:?}"),
        });
    }
    Ok(Gen::letter(name))
}

/// A freely reduced word: adjacent syllables carry distinct generators and
/// every exponent is nonzero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    syllables: Vec<(Gen, i64)>,
}

impl FreeWord {
    /// The empty word.
    pub fn identity() -> FreeWord {
        FreeWord::default()
    }

    /// Single generator.
    pub fn gen(g: Gen) -> FreeWord {
        FreeWord::gen_pow(g, 1)
    }

    /// `g^e` (the empty word when `e == 0`).
    pub fn gen_pow(g: Gen, e: i64) -> FreeWord {
        let mut w = FreeWord::identity();
        w.push(g, e);
        w
    }

    /// Free reduction of an arbitrary syllable sequence.
    pub fn reduced(syllables: impl IntoIterator<Item = (Gen, i64)>) -> FreeWord {
        let mut w = FreeWord::identity();
        for (g, e) in syllables {
            w.push(g, e);
        }
        w
    }

    /// Append `g^e`, cancelling against the current tail.
    pub fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((g, e));
    }

    /// Append a whole word, cancelling at the seam.
    pub fn push_word(&mut self, other: &FreeWord) {
        for &(g, e) in &other.syllables {
            self.push(g, e);
        }
    }

    /// Append `other^e`.
    pub fn push_word_pow(&mut self, other: &FreeWord, e: i64) {
        if e >= 0 {
            for _ in 0..e {
                self.push_word(other);
            }
        } else {
            let inv = other.inverse();
            for _ in 0..-e {
                self.push_word(&inv);
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[(Gen, i64)] {
        &self.syllables
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    /// Word length counted in single letters.
    pub fn letter_len(&self) -> usize {
        self.syllables
            .iter()
            .map(|&(_, e)| e.unsigned_abs() as usize)
            .sum()
    }

    /// Letters left to right, one `(generator, ±1)` per crossing.
    pub fn letters(&self) -> impl Iterator<Item = (Gen, i8)> + '_ {
        self.syllables.iter().flat_map(|&(g, e)| {
            let sign = if e > 0 { 1i8 } else { -1i8 };
            std::iter::repeat_n((g, sign), e.unsigned_abs() as usize)
        })
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// `self^k`.
    pub fn pow(&self, k: i64) -> FreeWord {
        let mut w = FreeWord::identity();
        w.push_word_pow(self, k);
        w
    }

    /// `x^-1 self x`.
    pub fn conjugated_by(&self, x: &FreeWord) -> FreeWord {
        let mut w = x.inverse();
        w.push_word(self);
        w.push_word(x);
        w
    }

    /// Commutator `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        let mut w = a.inverse();
        w.push_word(&b.inverse());
        w.push_word(a);
        w.push_word(b);
        w
    }

    /// Net exponent of `g` in the word.
    pub fn exponent_sum(&self, g: &Gen) -> i64 {
        self.syllables
            .iter()
            .filter(|(h, _)| h == g)
            .map(|&(_, e)| e)
            .sum()
    }

    /// Image under `gen -> image(gen)`, freely reduced.
    pub fn substitute(&self, mut image: impl FnMut(&Gen) -> FreeWord) -> FreeWord {
        let mut out = FreeWord::identity();
        for &(g, e) in &self.syllables {
            out.push_word_pow(&image(&g), e);
        }
        out
    }

    /// True if every symbol lies in `alphabet`.
    pub fn fits(&self, alphabet: &Alphabet) -> bool {
        self.syllables.iter().all(|(g, _)| alphabet.contains(g))
    }
}

impl std::ops::Mul for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        w.push_word(rhs);
        w
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (idx, (g, e)) in self.syllables.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Gen {
        Gen::letter("x")
    }

    fn y() -> Gen {
        Gen::letter("y")
    }

    #[test]
    fn reduction_cancels_across_syllables() {
        // x y y^-1 x -> x^2
        let w = FreeWord::reduced([(x(), 1), (y(), 1), (y(), -1), (x(), 1)]);
        assert_eq!(w.syllables(), &[(x(), 2)]);

        // full collapse
        let w = FreeWord::reduced([(x(), 1), (y(), 2), (y(), -2), (x(), -1)]);
        assert!(w.is_identity());
    }

    #[test]
    fn multiply_cancels_at_the_seam() {
        let a = FreeWord::reduced([(x(), 1), (y(), 3)]);
        let b = FreeWord::reduced([(y(), -3), (x(), 1)]);
        assert_eq!((&a * &b).syllables(), &[(x(), 2)]);
    }

    #[test]
    fn inverse_is_an_involution_and_kills_the_word() {
        let w = FreeWord::reduced([(x(), 2), (y(), -1), (x(), 1)]);
        assert_eq!(w.inverse().inverse(), w);
        assert!((&w * &w.inverse()).is_identity());
    }

    #[test]
    fn pow_and_exponent_sum() {
        let w = FreeWord::reduced([(x(), 1), (y(), 1)]);
        let cube = w.pow(3);
        assert_eq!(cube.letter_len(), 6);
        assert_eq!(cube.exponent_sum(&x()), 3);
        assert_eq!(w.pow(-2), w.inverse().pow(2));
        assert!(w.pow(0).is_identity());
    }

    #[test]
    fn conjugation_and_commutator_shapes() {
        let a = FreeWord::gen(x());
        let b = FreeWord::gen(y());
        // y^x = x^-1 y x
        assert_eq!(
            b.conjugated_by(&a).syllables(),
            &[(x(), -1), (y(), 1), (x(), 1)]
        );
        // [x, x] = 1
        assert!(FreeWord::commutator(&a, &a).is_identity());
        assert_eq!(FreeWord::commutator(&a, &b).letter_len(), 4);
    }

    #[test]
    fn substitute_reduces_the_result() {
        // x -> y y^-1 collapses to the identity
        let w = FreeWord::reduced([(x(), 5)]);
        let image = w.substitute(|_| FreeWord::reduced([(y(), 1), (y(), -1)]));
        assert!(image.is_identity());
    }

    #[test]
    fn alphabets_enumerate_their_generators() {
        assert_eq!(Alphabet::braid(4).symbols().len(), 3);
        assert_eq!(Alphabet::pure(4).symbols().len(), 6);
        assert_eq!(
            Alphabet::pure_column(4).symbols(),
            &[Gen::band(1, 4), Gen::band(2, 4), Gen::band(3, 4)]
        );
        assert_eq!(Alphabet::basis(3).symbols()[2], Gen::letter("x3"));
    }

    #[test]
    fn reserved_letter_names_are_rejected() {
        assert!(Alphabet::free(&["x", "y"]).is_ok());
        assert!(Alphabet::free(&["s1"]).is_err());
        assert!(Alphabet::free(&["A"]).is_err());
        assert!(Alphabet::free(&["3x"]).is_err());
        assert!(Alphabet::free(&[""]).is_err());
    }

    #[test]
    fn display_forms() {
        let w = FreeWord::reduced([(Gen::Sigma(2), 1), (Gen::band(1, 3), -2)]);
        assert_eq!(w.to_string(), "s2 A(1,3)^-2");
        assert_eq!(FreeWord::identity().to_string(), "1");
    }
}
