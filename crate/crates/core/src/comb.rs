//! Combed normal form for pure braids.
//!
//! The pure braid group on `n` strands splits as an iterated semidirect
//! product of free groups: the bands ending on strand `j` (column `j`)
//! generate a free group, and every element factors uniquely as
//! `u_n u_(n-1) .. u_2` with `u_j` a word in column `j`.  Combing a word
//! means pushing lower-column letters rightward through higher columns,
//! rewriting with [`rule_conjugate`] as they pass.  Because each `u_j` lives
//! in a free group, the combed form is a normal form and decides equality.
//!
//! The center of the pure braid group is the full twist; [`z_pure_word`]
//! spells it in bands, [`CentralWord`] carries an explicit twist power next
//! to a band word, and [`center_split`] measures by how many twists two
//! words differ.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::parse::parse_word;
use crate::word::{Alphabet, FreeWord, Gen};

/// Default cap on intermediate word growth while combing.
pub const DEFAULT_BUDGET: usize = 200_000;

/// A word in the band generators `A(i,j)`, `j <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureWord {
    n: u16,
    word: FreeWord,
}

impl PureWord {
    pub fn new(n: u16, word: FreeWord) -> Result<PureWord> {
        for &(g, _) in word.syllables() {
            match g {
                Gen::Band(i, j) if 1 <= i && i < j && j <= n => {}
                other => {
                    return Err(Error::OutsideAlphabet {
                        gen: other.to_string(),
                        alphabet: Alphabet::pure(n).to_string(),
                    })
                }
            }
        }
        Ok(PureWord { n, word })
    }

    /// Parse over the band alphabet for `n` strands.
    pub fn parse(n: u16, text: &str) -> Result<PureWord> {
        Ok(PureWord {
            n,
            word: parse_word(text, &Alphabet::pure(n))?,
        })
    }

    pub fn identity(n: u16) -> PureWord {
        PureWord {
            n,
            word: FreeWord::identity(),
        }
    }

    pub fn gen_pow(n: u16, i: u16, j: u16, e: i64) -> Result<PureWord> {
        PureWord::new(n, FreeWord::gen_pow(Gen::band(i, j), e))
    }

    pub fn strands(&self) -> u16 {
        self.n
    }

    pub fn word(&self) -> &FreeWord {
        &self.word
    }

    pub fn into_word(self) -> FreeWord {
        self.word
    }

    pub fn multiply(&self, other: &PureWord) -> Result<PureWord> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(PureWord {
            n: self.n,
            word: &self.word * &other.word,
        })
    }

    pub fn inverse(&self) -> PureWord {
        PureWord {
            n: self.n,
            word: self.word.inverse(),
        }
    }

    pub fn pow(&self, k: i64) -> PureWord {
        PureWord {
            n: self.n,
            word: self.word.pow(k),
        }
    }

    /// `x^-1 self x`.
    pub fn conjugated_by(&self, x: &PureWord) -> Result<PureWord> {
        if self.n != x.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: x.n,
            });
        }
        Ok(PureWord {
            n: self.n,
            word: self.word.conjugated_by(&x.word),
        })
    }
}

impl fmt::Display for PureWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// `A(1,j) A(2,j) .. A(j-1,j)`: column `j` swept in one block.
pub fn column_product(j: u16) -> FreeWord {
    FreeWord::reduced((1..j).map(|i| (Gen::band(i, j), 1)))
}

/// The full twist spelled in bands, column by column:
/// `A(1,2) (A(1,3) A(2,3)) .. (A(1,n) .. A(n-1,n))`.
pub fn z_pure_word(n: u16) -> PureWord {
    let mut word = FreeWord::identity();
    for j in 2..=n {
        word.push_word(&column_product(j));
    }
    PureWord { n, word }
}

/// Conjugation inside the column structure:
/// `rule_conjugate((k, j), (r, s), e)` is `A(r,s)^-e A(k,j) A(r,s)^e`
/// written as a word in column `j` (it needs `s <= j`; only `e = ±1`).
///
/// The five shapes below cover every admissible index pattern: the
/// conjugator either shares the column (`s = j`), hangs off the target's
/// lower strand (`s = k` or `r = k`), straddles it (`r < k < s`), or is
/// disjoint/nested and commutes.
pub fn rule_conjugate((k, j): (u16, u16), (r, s): (u16, u16), e: i8) -> Result<FreeWord> {
    if !(1 <= k && k < j) || !(1 <= r && r < s) || s > j {
        return Err(Error::BadIndex {
            what: format!("rule_conjugate target A({k},{j}), conjugator A({r},{s})"),
        });
    }
    if e != 1 && e != -1 {
        return Err(Error::BadIndex {
            what: format!("conjugator exponent {e} must be +1 or -1"),
        });
    }
    let e = i64::from(e);
    let a = Gen::band;
    let target = FreeWord::gen(a(k, j));
    let word = if s == j {
        // same column: the free group sorts it out
        target.conjugated_by(&FreeWord::gen_pow(a(r, j), e))
    } else if s == k {
        // conjugator ends on the target's lower strand
        let c = FreeWord::reduced([(a(r, j), 1), (a(k, j), 1)]).pow(e);
        target.conjugated_by(&c.inverse())
    } else if r == k {
        // conjugator starts on the target's lower strand
        let c = FreeWord::reduced([(a(k, j), 1), (a(s, j), 1)]).pow(e);
        target.conjugated_by(&c.inverse())
    } else if r < k && k < s {
        // conjugator straddles the target's lower strand
        let c = FreeWord::commutator(
            &FreeWord::gen_pow(a(r, j), -e),
            &FreeWord::gen_pow(a(s, j), -e),
        )
        .pow(e);
        target.conjugated_by(&c.inverse())
    } else {
        // k < r or s < k: the bands are unlinked and commute
        target
    };
    Ok(word)
}

/// The combed form `u_n u_(n-1) .. u_2` of a pure braid; `component(j)` is
/// the column-`j` factor as a reduced free word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombedPureBraid {
    n: u16,
    /// `components[0]` is `u_n`, the last entry is `u_2`.
    components: Vec<FreeWord>,
}

impl CombedPureBraid {
    pub fn identity(n: u16) -> CombedPureBraid {
        let levels = usize::from(n.saturating_sub(1));
        CombedPureBraid {
            n,
            components: vec![FreeWord::identity(); levels],
        }
    }

    pub fn strands(&self) -> u16 {
        self.n
    }

    /// The factor in column `j`, for `2 <= j <= n`.
    pub fn component(&self, j: u16) -> &FreeWord {
        assert!(
            (2..=self.n).contains(&j),
            "no column {j} on {} strands",
            self.n
        );
        &self.components[usize::from(self.n - j)]
    }

    /// All factors, top column first.
    pub fn components(&self) -> &[FreeWord] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(FreeWord::is_identity)
    }

    /// Multiply the factors back into one band word.
    pub fn as_pure_word(&self) -> PureWord {
        let mut word = FreeWord::identity();
        for c in &self.components {
            word.push_word(c);
        }
        PureWord { n: self.n, word }
    }

    /// Total syllables across the factors.
    pub fn size(&self) -> usize {
        self.components.iter().map(FreeWord::syllable_count).sum()
    }
}

impl fmt::Display for CombedPureBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("1");
        }
        for (idx, c) in self.components.iter().enumerate() {
            if idx > 0 {
                f.write_str("; ")?;
            }
            write!(f, "u{} = {c}", self.n - idx as u16)?;
        }
        Ok(())
    }
}

/// Letter-level rewriting engine shared by [`comb`] and [`combed_multiply`].
/// Rule lookups are memoized per call.
struct Comber {
    budget: usize,
    memo: HashMap<(u16, u16, i8, u16, u16), FreeWord>,
}

impl Comber {
    fn new(budget: usize) -> Comber {
        Comber {
            budget,
            memo: HashMap::new(),
        }
    }

    fn check(&self, len: usize) -> Result<()> {
        if len > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                reached: len,
            });
        }
        Ok(())
    }

    /// `A(r,s)^beta w A(r,s)^-beta` for a column-`j` word `w`.
    fn conjugate_by_letter(
        &mut self,
        w: &FreeWord,
        (r, s): (u16, u16),
        beta: i8,
        j: u16,
    ) -> Result<FreeWord> {
        let mut out = FreeWord::identity();
        for &(g, exp) in w.syllables() {
            let Gen::Band(k, _) = g else {
                unreachable!("column words hold bands only")
            };
            let key = (r, s, beta, k, j);
            if let Entry::Vacant(slot) = self.memo.entry(key) {
                // conjugating by A(r,s)^beta is the rule at exponent -beta
                slot.insert(rule_conjugate((k, j), (r, s), -beta)?);
            }
            out.push_word_pow(&self.memo[&key], exp);
            self.check(out.syllable_count())?;
        }
        Ok(out)
    }

    /// `c w c^-1` where `w` lives in column `j` and `c` in the columns below.
    fn conjugate_by_word(&mut self, w: &FreeWord, c: &FreeWord, j: u16) -> Result<FreeWord> {
        let mut out = w.clone();
        let letters: Vec<(Gen, i8)> = c.letters().collect();
        for &(g, beta) in letters.iter().rev() {
            let Gen::Band(r, s) = g else {
                unreachable!("band conjugator expected")
            };
            out = self.conjugate_by_letter(&out, (r, s), beta, j)?;
        }
        Ok(out)
    }

    /// Split off the top column: returns `(u_j, rest)` with `w = u_j * rest`
    /// and `rest` free of column-`j` letters.
    fn split_top(&mut self, w: &FreeWord, j: u16) -> Result<(FreeWord, FreeWord)> {
        let mut top = FreeWord::identity();
        let mut rest = FreeWord::identity();
        for &(g, exp) in w.syllables() {
            let Gen::Band(_, col) = g else {
                unreachable!("band word expected")
            };
            if col == j {
                // the lower letters seen so far slide right past this one
                let contribution = self.conjugate_by_word(&FreeWord::gen_pow(g, exp), &rest, j)?;
                top.push_word(&contribution);
                self.check(top.syllable_count())?;
            } else {
                rest.push(g, exp);
            }
        }
        Ok((top, rest))
    }
}

/// Comb a pure braid word with the default growth budget.
pub fn comb(w: &PureWord) -> Result<CombedPureBraid> {
    comb_with_budget(w, DEFAULT_BUDGET)
}

/// Rewrite `c^-1 w c` as a word in column-`j` bands, where `w` uses only
/// column-`j` bands and every band in `c` has its top strand at most `j`.
///
/// This exposes the combing engine's conjugation rules for callers that work
/// inside a single free factor, e.g. subgroup computations.
pub fn conjugate_column_word(
    w: &FreeWord,
    c: &FreeWord,
    j: u16,
    budget: usize,
) -> Result<FreeWord> {
    for &(g, _) in w.syllables() {
        match g {
            Gen::Band(_, col) if col == j => {}
            _ => {
                return Err(Error::BadIndex {
                    what: format!("{g} is not a column-{j} band"),
                })
            }
        }
    }
    for &(g, _) in c.syllables() {
        match g {
            Gen::Band(_, s) if s <= j => {}
            _ => {
                return Err(Error::BadIndex {
                    what: format!("conjugator letter {g} reaches above column {j}"),
                })
            }
        }
    }
    let mut comber = Comber::new(budget);
    comber.conjugate_by_word(w, &c.inverse(), j)
}

/// Comb with an explicit growth budget (syllables per intermediate word).
pub fn comb_with_budget(w: &PureWord, budget: usize) -> Result<CombedPureBraid> {
    let n = w.strands();
    let mut comber = Comber::new(budget);
    let mut components = Vec::with_capacity(usize::from(n.saturating_sub(1)));
    let mut rest = w.word().clone();
    for j in (3..=n).rev() {
        let (top, lower) = comber.split_top(&rest, j)?;
        components.push(top);
        rest = lower;
    }
    if n >= 2 {
        components.push(rest);
    }
    Ok(CombedPureBraid { n, components })
}

/// Product of two combed forms, computed column by column: the lower part of
/// `a` slides right through each factor of `b`, so
/// `r_j = a_j * (c_j b_j c_j^-1)` with `c_j = a_(j-1) .. a_2`.
pub fn combed_multiply(a: &CombedPureBraid, b: &CombedPureBraid) -> Result<CombedPureBraid> {
    combed_multiply_with_budget(a, b, DEFAULT_BUDGET)
}

pub fn combed_multiply_with_budget(
    a: &CombedPureBraid,
    b: &CombedPureBraid,
    budget: usize,
) -> Result<CombedPureBraid> {
    if a.n != b.n {
        return Err(Error::StrandMismatch {
            left: a.n,
            right: b.n,
        });
    }
    let n = a.n;
    let mut comber = Comber::new(budget);
    let mut components = Vec::with_capacity(usize::from(n.saturating_sub(1)));
    for j in (3..=n).rev() {
        let mut c = FreeWord::identity();
        for level in (2..j).rev() {
            c.push_word(a.component(level));
        }
        let pushed = comber.conjugate_by_word(b.component(j), &c, j)?;
        let mut r = a.component(j).clone();
        r.push_word(&pushed);
        components.push(r);
    }
    if n >= 2 {
        components.push(a.component(2) * b.component(2));
    }
    Ok(CombedPureBraid { n, components })
}

/// Net band exponents in canonical pair order, the cheap necessary
/// condition for equality.
fn band_exponents(w: &PureWord) -> Vec<i64> {
    let mut out = Vec::new();
    for j in 2..=w.n {
        for i in 1..j {
            out.push(w.word.exponent_sum(&Gen::Band(i, j)));
        }
    }
    out
}

/// Equality in the pure braid group, decided by combing both sides.
pub fn pure_equal(a: &PureWord, b: &PureWord) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::StrandMismatch {
            left: a.n,
            right: b.n,
        });
    }
    if band_exponents(a) != band_exponents(b) {
        return Ok(false);
    }
    Ok(comb(a)? == comb(b)?)
}

/// If `a = b * z^k` for the full twist `z`, return `k`; `None` when the two
/// words do not differ by a central twist.
pub fn center_split(a: &PureWord, b: &PureWord) -> Result<Option<i64>> {
    if a.n != b.n {
        return Err(Error::StrandMismatch {
            left: a.n,
            right: b.n,
        });
    }
    if a.n < 2 {
        return Ok(Some(0));
    }
    // the twist abelianizes to (1, 1, .., 1), so the gap must be constant
    let (va, vb) = (band_exponents(a), band_exponents(b));
    let mut k = None;
    for (idx, &x) in va.iter().enumerate() {
        let d = x - vb[idx];
        match k {
            None => k = Some(d),
            Some(prev) if prev != d => return Ok(None),
            _ => {}
        }
    }
    let k = k.unwrap_or(0);
    let candidate = b.multiply(&z_pure_word(a.n).pow(k))?;
    if pure_equal(a, &candidate)? {
        Ok(Some(k))
    } else {
        Ok(None)
    }
}

/// A band word times an explicit power of the full twist.  Because the twist
/// is central, these multiply componentwise; the twist only needs expanding
/// when a genuine band word is required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralWord {
    n: u16,
    word: FreeWord,
    twist: i64,
}

impl CentralWord {
    pub fn identity(n: u16) -> CentralWord {
        CentralWord {
            n,
            word: FreeWord::identity(),
            twist: 0,
        }
    }

    pub fn new(n: u16, word: FreeWord, twist: i64) -> Result<CentralWord> {
        let word = PureWord::new(n, word)?.into_word();
        Ok(CentralWord { n, word, twist })
    }

    pub fn from_pure(w: &PureWord) -> CentralWord {
        CentralWord {
            n: w.n,
            word: w.word.clone(),
            twist: 0,
        }
    }

    /// Parse band generators plus the extra token `z` for the full twist.
    /// `z` commutes with everything, so its syllables are pulled out into
    /// the twist exponent wherever they sit.
    pub fn parse(n: u16, text: &str) -> Result<CentralWord> {
        let alphabet = Alphabet::pure(n).with_letter("z")?;
        let raw = parse_word(text, &alphabet)?;
        let mut word = FreeWord::identity();
        let mut twist = 0;
        for &(g, e) in raw.syllables() {
            match g {
                Gen::Letter(_) => twist += e,
                band => word.push(band, e),
            }
        }
        Ok(CentralWord { n, word, twist })
    }

    pub fn strands(&self) -> u16 {
        self.n
    }

    pub fn band_part(&self) -> &FreeWord {
        &self.word
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn multiply(&self, other: &CentralWord) -> Result<CentralWord> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(CentralWord {
            n: self.n,
            word: &self.word * &other.word,
            twist: self.twist + other.twist,
        })
    }

    pub fn inverse(&self) -> CentralWord {
        CentralWord {
            n: self.n,
            word: self.word.inverse(),
            twist: -self.twist,
        }
    }

    pub fn pow(&self, k: i64) -> CentralWord {
        CentralWord {
            n: self.n,
            word: self.word.pow(k),
            twist: self.twist * k,
        }
    }

    /// Expand the twist into bands, yielding an ordinary pure word.
    pub fn expand(&self) -> PureWord {
        let mut word = self.word.clone();
        word.push_word(&z_pure_word(self.n).word.pow(self.twist));
        PureWord { n: self.n, word }
    }
}

impl fmt::Display for CentralWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.word.is_identity(), self.twist) {
            (true, 0) => f.write_str("1"),
            (true, 1) => f.write_str("z"),
            (true, t) => write!(f, "z^{t}"),
            (false, 0) => self.word.fmt(f),
            (false, 1) => write!(f, "{} z", self.word),
            (false, t) => write!(f, "{} z^{t}", self.word),
        }
    }
}

/// A 3-strand pure braid in product coordinates: the group is (center) x
/// (free group on `x = A(1,3)`, `y = A(2,3)`), and `A(1,2) = z y^-1 x^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P3Element {
    twist: i64,
    tail: FreeWord,
}

impl P3Element {
    pub fn new(twist: i64, tail: FreeWord) -> P3Element {
        P3Element { twist, tail }
    }

    pub fn identity() -> P3Element {
        P3Element {
            twist: 0,
            tail: FreeWord::identity(),
        }
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// The free-group part, a word in the letters `x` and `y`.
    pub fn tail(&self) -> &FreeWord {
        &self.tail
    }

    pub fn multiply(&self, other: &P3Element) -> P3Element {
        P3Element {
            twist: self.twist + other.twist,
            tail: &self.tail * &other.tail,
        }
    }

    pub fn inverse(&self) -> P3Element {
        P3Element {
            twist: -self.twist,
            tail: self.tail.inverse(),
        }
    }

    pub fn pow(&self, k: i64) -> P3Element {
        P3Element {
            twist: self.twist * k,
            tail: self.tail.pow(k),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.twist == 0 && self.tail.is_identity()
    }
}

impl fmt::Display for P3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.tail.is_identity(), self.twist) {
            (true, 0) => f.write_str("1"),
            (true, 1) => f.write_str("z"),
            (true, t) => write!(f, "z^{t}"),
            (false, 0) => self.tail.fmt(f),
            (false, 1) => write!(f, "{} z", self.tail),
            (false, t) => write!(f, "{} z^{t}", self.tail),
        }
    }
}

/// Rewrite a 3-strand band word in product coordinates.  This is exact, so
/// two words are equal in the group iff their coordinates match.
pub fn p3_coordinates(w: &PureWord) -> Result<P3Element> {
    if w.strands() != 3 {
        return Err(Error::StrandMismatch {
            left: w.strands(),
            right: 3,
        });
    }
    let x = Gen::letter("x");
    let y = Gen::letter("y");
    // A(1,2) = z (x y)^-1, central part split off
    let a12_tail = FreeWord::reduced([(y, -1), (x, -1)]);
    let mut twist = 0;
    let mut tail = FreeWord::identity();
    for &(g, e) in w.word().syllables() {
        match g {
            Gen::Band(1, 2) => {
                twist += e;
                tail.push_word_pow(&a12_tail, e);
            }
            Gen::Band(1, 3) => tail.push(x, e),
            Gen::Band(2, 3) => tail.push(y, e),
            other => unreachable!("unexpected band {other} in a 3-strand word"),
        }
    }
    Ok(P3Element { twist, tail })
}

/// Back from coordinates to a band word (tail letters, then expanded twist).
pub fn p3_from_coordinates(e: &P3Element) -> PureWord {
    let mut word = FreeWord::identity();
    for &(g, exp) in e.tail.syllables() {
        let band = match g {
            Gen::Letter(name) if &name == "x" => Gen::band(1, 3),
            Gen::Letter(name) if &name == "y" => Gen::band(2, 3),
            other => panic!("coordinate tail may only hold x and y, found {other}"),
        };
        word.push(band, exp);
    }
    word.push_word(&z_pure_word(3).word.pow(e.twist));
    PureWord { n: 3, word }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{braid_words_equal, expand_pure_word, full_twist_word};

    fn pure(n: u16, text: &str) -> PureWord {
        PureWord::parse(n, text).unwrap()
    }

    #[test]
    fn full_twist_spelling_matches_the_crossing_form() {
        for n in 2..=4u16 {
            let bands = expand_pure_word(z_pure_word(n).word(), n).unwrap();
            assert!(
                braid_words_equal(&bands, &full_twist_word(n)).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn conjugation_rules_give_frozen_words() {
        // conjugator below the column
        assert_eq!(
            rule_conjugate((1, 3), (1, 2), 1).unwrap().to_string(),
            "A(1,3) A(2,3) A(1,3) A(2,3)^-1 A(1,3)^-1"
        );
        assert_eq!(
            rule_conjugate((1, 3), (1, 2), -1).unwrap().to_string(),
            "A(2,3)^-1 A(1,3) A(2,3)"
        );
        assert_eq!(
            rule_conjugate((2, 3), (1, 2), 1).unwrap().to_string(),
            "A(1,3) A(2,3) A(1,3)^-1"
        );
        // same column: literal conjugation
        assert_eq!(
            rule_conjugate((2, 4), (1, 4), 1).unwrap().to_string(),
            "A(1,4)^-1 A(2,4) A(1,4)"
        );
        // unlinked bands commute
        assert_eq!(
            rule_conjugate((1, 4), (2, 3), 1).unwrap().to_string(),
            "A(1,4)"
        );
        assert_eq!(
            rule_conjugate((3, 4), (1, 2), -1).unwrap().to_string(),
            "A(3,4)"
        );
        // conjugator ending on the lower strand of the target
        assert_eq!(
            rule_conjugate((3, 4), (1, 3), 1).unwrap().to_string(),
            "A(1,4) A(3,4) A(1,4)^-1"
        );
        assert!(rule_conjugate((1, 3), (1, 4), 1).is_err());
        assert!(rule_conjugate((0, 3), (1, 2), 1).is_err());
        assert!(rule_conjugate((1, 3), (1, 2), 2).is_err());
    }

    #[test]
    fn conjugation_rules_match_the_crossing_oracle() {
        // every (target, conjugator, sign) pattern on up to 5 strands
        for n in 3..=5u16 {
            for j in 2..=n {
                for k in 1..j {
                    for s in 2..=j {
                        for r in 1..s {
                            for e in [1i8, -1] {
                                let word = rule_conjugate((k, j), (r, s), e).unwrap();
                                let lhs = {
                                    let conj = FreeWord::gen_pow(Gen::band(r, s), i64::from(e));
                                    FreeWord::gen(Gen::band(k, j)).conjugated_by(&conj)
                                };
                                assert!(
                                    braid_words_equal(
                                        &expand_pure_word(&lhs, n).unwrap(),
                                        &expand_pure_word(&word, n).unwrap()
                                    )
                                    .unwrap(),
                                    "A({k},{j}) by A({r},{s})^{e} on {n} strands"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn combing_splits_a_conjugate() {
        let combed = comb(&pure(3, "A(1,2) A(1,3) A(1,2)^-1")).unwrap();
        assert_eq!(combed.component(3).to_string(), "A(2,3)^-1 A(1,3) A(2,3)");
        assert!(combed.component(2).is_identity());
        assert_eq!(combed.to_string(), "u3 = A(2,3)^-1 A(1,3) A(2,3); u2 = 1");
    }

    #[test]
    fn combing_is_ordering_sensitive() {
        let already_sorted = comb(&pure(3, "A(1,3) A(1,2)")).unwrap();
        assert_eq!(already_sorted.component(3).to_string(), "A(1,3)");
        assert_eq!(already_sorted.component(2).to_string(), "A(1,2)");

        let reversed = comb(&pure(3, "A(1,2) A(1,3)")).unwrap();
        assert_eq!(reversed.component(3).to_string(), "A(2,3)^-1 A(1,3) A(2,3)");
        assert_eq!(reversed.component(2).to_string(), "A(1,2)");
    }

    #[test]
    fn full_twist_combs_to_the_column_products() {
        for n in 2..=6u16 {
            let combed = comb(&z_pure_word(n)).unwrap();
            for j in 2..=n {
                assert_eq!(*combed.component(j), column_product(j), "u{j} at n = {n}");
            }
        }
    }

    #[test]
    fn combed_form_solves_the_word_problem() {
        // the two spellings of the full twist commute with A(1,2)
        let z = z_pure_word(3);
        let a12 = pure(3, "A(1,2)");
        let left = a12.multiply(&z).unwrap();
        let right = z.multiply(&a12).unwrap();
        assert!(pure_equal(&left, &right).unwrap());

        // but A(1,2) and A(1,3) do not commute
        assert!(!pure_equal(&pure(3, "A(1,2) A(1,3)"), &pure(3, "A(1,3) A(1,2)")).unwrap());

        // inverse spelled through the rules collapses to the identity
        let w = pure(4, "A(1,3) A(2,4)^2 A(1,2)^-1 A(3,4)");
        let product = w.multiply(&w.inverse()).unwrap();
        assert!(comb(&product).unwrap().is_identity());
    }

    #[test]
    fn combed_multiply_agrees_with_comb_of_the_product() {
        let words = [
            pure(4, "A(1,2) A(1,4) A(2,3)^-1"),
            pure(4, "A(3,4) A(1,3)^2 A(2,4)^-1 A(1,2)"),
            pure(4, "A(2,3) A(1,4)^-2"),
        ];
        for a in &words {
            for b in &words {
                let combined = combed_multiply(&comb(a).unwrap(), &comb(b).unwrap()).unwrap();
                let direct = comb(&a.multiply(b).unwrap()).unwrap();
                assert_eq!(combined, direct);
            }
        }
    }

    #[test]
    fn budget_guard_trips_on_tiny_budgets() {
        let w = pure(4, "A(1,2)^3 A(1,4) A(2,3)^4 A(2,4) A(1,3)^-5 A(3,4)");
        match comb_with_budget(&w, 4) {
            Err(Error::BudgetExceeded { budget: 4, .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!(comb(&w).is_ok());
    }

    #[test]
    fn center_split_measures_twist_gaps() {
        let w = pure(4, "A(1,3) A(2,4)^-1");
        let shifted = w.multiply(&z_pure_word(4).pow(3)).unwrap();
        assert_eq!(center_split(&shifted, &w).unwrap(), Some(3));
        assert_eq!(center_split(&w, &shifted).unwrap(), Some(-3));
        assert_eq!(center_split(&w, &w).unwrap(), Some(0));
        // same abelianization, different element: caught by the exact check
        let a = pure(3, "A(1,2) A(1,3)");
        let b = pure(3, "A(1,3) A(1,2)");
        assert_eq!(center_split(&a, &b).unwrap(), None);
        assert_eq!(
            center_split(&pure(3, "A(1,3)"), &pure(3, "A(2,3)")).unwrap(),
            None
        );
    }

    #[test]
    fn central_words_carry_the_twist_symbolically() {
        let w = CentralWord::parse(4, "A(1,2) z^-2").unwrap();
        assert_eq!(w.twist(), -2);
        assert_eq!(w.to_string(), "A(1,2) z^-2");
        // z commutes through the band part on parse
        let mixed = CentralWord::parse(4, "z^-1 A(1,2) z^2 A(1,3) z^-3").unwrap();
        assert_eq!(mixed.twist(), -2);
        assert_eq!(mixed.band_part().to_string(), "A(1,2) A(1,3)");
        assert!(pure_equal(
            &w.expand(),
            &CentralWord::parse(4, "z^-2 A(1,2)").unwrap().expand()
        )
        .unwrap());

        let product = w.multiply(&w.inverse()).unwrap();
        assert!(comb(&product.expand()).unwrap().is_identity());
        assert_eq!(CentralWord::identity(5).to_string(), "1");
        assert_eq!(CentralWord::parse(3, "z").unwrap().to_string(), "z");
    }

    #[test]
    fn p3_coordinates_round_trip() {
        let a12 = pure(3, "A(1,2)");
        let coords = p3_coordinates(&a12).unwrap();
        assert_eq!(coords.twist(), 1);
        assert_eq!(coords.tail().to_string(), "y^-1 x^-1");
        assert_eq!(coords.to_string(), "y^-1 x^-1 z");
        assert!(pure_equal(&p3_from_coordinates(&coords), &a12).unwrap());

        let z = z_pure_word(3);
        let zc = p3_coordinates(&z).unwrap();
        assert_eq!((zc.twist(), zc.tail().is_identity()), (1, true));

        // coordinates are a faithful normal form
        let w = pure(3, "A(2,3) A(1,2)^-1 A(1,3)^2");
        let back = p3_from_coordinates(&p3_coordinates(&w).unwrap());
        assert!(pure_equal(&back, &w).unwrap());
        assert!(
            p3_coordinates(&pure(3, "A(1,2) A(1,3) A(1,2)^-1 A(1,3)^-1"))
                .unwrap()
                .twist()
                == 0
        );
    }

    #[test]
    fn p3_coordinates_multiply_like_the_group() {
        let words = [
            pure(3, "A(1,2) A(2,3)"),
            pure(3, "A(1,3)^-1 A(1,2)"),
            pure(3, "A(2,3)^2 A(1,3)"),
        ];
        for a in &words {
            for b in &words {
                let prod = p3_coordinates(&a.multiply(b).unwrap()).unwrap();
                let split = p3_coordinates(a)
                    .unwrap()
                    .multiply(&p3_coordinates(b).unwrap());
                assert_eq!(prod, split);
            }
        }
    }
}
