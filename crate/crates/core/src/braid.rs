//! Braid words and the tools that make them computable: the permutation a
//! braid induces on strand endpoints, the faithful action on a free group
//! (the equality oracle everything else is checked against), and the
//! conjugation table describing how crossings move band generators around.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{basis_letter, Alphabet, FreeWord, Gen};

/// A word in the crossings `s1 .. s(n-1)` of the braid group on `n` strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    n: u16,
    word: FreeWord,
}

impl BraidWord {
    /// Wrap a free word, checking that every symbol is a crossing on `n` strands.
    pub fn new(n: u16, word: FreeWord) -> Result<BraidWord> {
        for &(g, _) in word.syllables() {
            match g {
                Gen::Sigma(i) if (1..n).contains(&i) => {}
                other => {
                    return Err(Error::OutsideAlphabet {
                        gen: other.to_string(),
                        alphabet: Alphabet::braid(n).to_string(),
                    })
                }
            }
        }
        Ok(BraidWord { n, word })
    }

    pub fn identity(n: u16) -> BraidWord {
        BraidWord {
            n,
            word: FreeWord::identity(),
        }
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

    pub fn multiply(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(BraidWord {
            n: self.n,
            word: &self.word * &other.word,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            word: self.word.inverse(),
        }
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        BraidWord {
            n: self.n,
            word: self.word.pow(k),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// A permutation of the strands `1..=n`, acting on the right: points flow
/// through factors left to right, so `(a.then(b)).apply(p) == b.apply(a.apply(p))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: u16) -> Permutation {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition `(i j)`.
    pub fn transposition(n: u16, i: u16, j: u16) -> Permutation {
        assert!(i >= 1 && j >= 1 && i <= n && j <= n && i != j);
        let mut p = Permutation::identity(n);
        p.images.swap(usize::from(i) - 1, usize::from(j) - 1);
        p
    }

    /// Build from 1-based images; checks bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Permutation> {
        let n = images.len() as u16;
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v < 1 || v > n || seen[usize::from(v) - 1] {
                return Err(Error::BadIndex {
                    what: format!("images {images:?} are not a permutation"),
                });
            }
            seen[usize::from(v) - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> u16 {
        self.images.len() as u16
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.images[usize::from(point) - 1]
    }

    /// Composite that applies `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.images.len(), other.images.len());
        Permutation {
            images: self.images.iter().map(|&v| other.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (idx, &v) in self.images.iter().enumerate() {
            images[usize::from(v) - 1] = idx as u16 + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(idx, &v)| usize::from(v) == idx + 1)
    }

    /// The unordered pair `{i, j}` pushed through the permutation.
    pub fn apply_pair(&self, i: u16, j: u16) -> (u16, u16) {
        let (a, b) = (self.apply(i), self.apply(j));
        (a.min(b), a.max(b))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (idx, v) in self.images.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Endomorphism of the free group on `x1 .. xrank`, given by basis images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroupEndo {
    images: Vec<FreeWord>,
}

impl FreeGroupEndo {
    pub fn identity(rank: u16) -> FreeGroupEndo {
        FreeGroupEndo {
            images: (1..=rank).map(|i| FreeWord::gen(basis_letter(i))).collect(),
        }
    }

    pub fn from_images(images: Vec<FreeWord>) -> FreeGroupEndo {
        FreeGroupEndo { images }
    }

    pub fn rank(&self) -> u16 {
        self.images.len() as u16
    }

    /// Image of the basis letter `x{i}` (1-based).
    pub fn image(&self, i: u16) -> &FreeWord {
        &self.images[usize::from(i) - 1]
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(|g| match g {
            Gen::Letter(name) if name.starts_with('x') => {
                let i: u16 = name[1..].parse().expect("basis letter index");
                self.image(i).clone()
            }
            other => panic!("free endomorphism applied to non-basis symbol {other}"),
        })
    }

    /// Composite that applies `self` first, then `other`.
    pub fn then(&self, other: &FreeGroupEndo) -> FreeGroupEndo {
        FreeGroupEndo {
            images: self.images.iter().map(|w| other.apply(w)).collect(),
        }
    }
}

/// The action of one crossing on the free basis: `s i` sends
/// `x_i -> x_i x_{i+1} x_i^-1` and `x_{i+1} -> x_i`, fixing the rest;
/// the inverse crossing sends `x_i -> x_{i+1}` and
/// `x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}`.
fn crossing_endo(n: u16, i: u16, sign: i8) -> FreeGroupEndo {
    let xi = basis_letter(i);
    let xj = basis_letter(i + 1);
    let mut endo = FreeGroupEndo::identity(n);
    if sign > 0 {
        endo.images[usize::from(i) - 1] = FreeWord::reduced([(xi, 1), (xj, 1), (xi, -1)]);
        endo.images[usize::from(i)] = FreeWord::gen(xi);
    } else {
        endo.images[usize::from(i) - 1] = FreeWord::gen(xj);
        endo.images[usize::from(i)] = FreeWord::reduced([(xj, -1), (xi, 1), (xj, 1)]);
    }
    endo
}

/// The induced automorphism of the free group on `x1 .. xn`.  This action is
/// faithful, which makes [`braid_words_equal`] a true equality test.
pub fn artin_action(braid: &BraidWord) -> FreeGroupEndo {
    let mut acc = FreeGroupEndo::identity(braid.strands());
    for (g, sign) in braid.word().letters() {
        let Gen::Sigma(i) = g else {
            unreachable!("braid words hold crossings only")
        };
        acc = acc.then(&crossing_endo(braid.strands(), i, sign));
    }
    acc
}

/// Equality in the braid group, decided through the free-group action.
pub fn braid_words_equal(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    if a.strands() != b.strands() {
        return Err(Error::StrandMismatch {
            left: a.strands(),
            right: b.strands(),
        });
    }
    Ok(artin_action(a) == artin_action(b))
}

/// The strand permutation a braid induces (crossing `s i` maps to `(i i+1)`).
pub fn project_to_permutation(braid: &BraidWord) -> Permutation {
    let mut acc = Permutation::identity(braid.strands());
    for &(g, e) in braid.word().syllables() {
        let Gen::Sigma(i) = g else {
            unreachable!("braid words hold crossings only")
        };
        if e.rem_euclid(2) == 1 {
            acc = acc.then(&Permutation::transposition(braid.strands(), i, i + 1));
        }
    }
    acc
}

/// The band generator `A(i,j)` spelled in crossings:
/// `s(j-1) .. s(i+1) s(i)^2 s(i+1)^-1 .. s(j-1)^-1`.
pub fn expand_pure_generator(i: u16, j: u16, n: u16) -> Result<BraidWord> {
    check_band(i, j, n)?;
    let mut word = FreeWord::identity();
    for k in ((i + 1)..j).rev() {
        word.push(Gen::Sigma(k), 1);
    }
    word.push(Gen::Sigma(i), 2);
    for k in (i + 1)..j {
        word.push(Gen::Sigma(k), -1);
    }
    BraidWord::new(n, word)
}

/// A word in band generators rewritten as a braid word.
pub fn expand_pure_word(word: &FreeWord, n: u16) -> Result<BraidWord> {
    let mut out = FreeWord::identity();
    for &(g, e) in word.syllables() {
        let Gen::Band(i, j) = g else {
            return Err(Error::OutsideAlphabet {
                gen: g.to_string(),
                alphabet: Alphabet::pure(n).to_string(),
            });
        };
        out.push_word_pow(expand_pure_generator(i, j, n)?.word(), e);
    }
    BraidWord::new(n, out)
}

/// The full twist `(s1 s2 .. s(n-1))^n`, which generates the center of the
/// braid group (and of its pure subgroup for `n >= 3`).
pub fn full_twist_word(n: u16) -> BraidWord {
    let mut round = FreeWord::identity();
    for i in 1..n {
        round.push(Gen::Sigma(i), 1);
    }
    BraidWord {
        n,
        word: round.pow(i64::from(n)),
    }
}

/// How a crossing conjugates a band generator:
/// `sigma_action_on_pure(k, e, (i, j), n)` returns `s(k)^-e A(i,j) s(k)^e`
/// as a word in band generators.  Only `e = 1` and `e = -1` are meaningful.
///
/// Every case stays inside the band alphabet because `k <= n-1` forces
/// `j+1 <= n` in the one case that raises the column index.
pub fn sigma_action_on_pure(k: u16, e: i8, (i, j): (u16, u16), n: u16) -> Result<FreeWord> {
    check_band(i, j, n)?;
    if !(1..n).contains(&k) {
        return Err(Error::BadIndex {
            what: format!("crossing s{k} needs 1 <= k <= {}", n - 1),
        });
    }
    if e != 1 && e != -1 {
        return Err(Error::BadIndex {
            what: format!("crossing exponent {e} must be +1 or -1"),
        });
    }
    let a = |i, j| Gen::band(i, j);
    let one = |g| FreeWord::gen(g);
    let word = if k == i && j == i + 1 {
        // s(i) commutes with its own square
        one(a(i, j))
    } else if k == i - 1 {
        if e > 0 {
            one(a(i - 1, j))
        } else {
            // A(i,j)^-1 A(i-1,j) A(i,j)
            one(a(i - 1, j)).conjugated_by(&FreeWord::gen(a(i, j)))
        }
    } else if k == i {
        if e > 0 {
            // A(i+1,j) [A(i,i+1)^-1, A(i,j)^-1]
            let comm = FreeWord::commutator(
                &FreeWord::gen_pow(a(i, i + 1), -1),
                &FreeWord::gen_pow(a(i, j), -1),
            );
            &one(a(i + 1, j)) * &comm
        } else {
            one(a(i + 1, j))
        }
    } else if k == j - 1 {
        if e > 0 {
            one(a(i, j - 1))
        } else {
            // A(i,j-1) [A(i,j)^-1, A(j-1,j)^-1]
            let comm = FreeWord::commutator(
                &FreeWord::gen_pow(a(i, j), -1),
                &FreeWord::gen_pow(a(j - 1, j), -1),
            );
            &one(a(i, j - 1)) * &comm
        }
    } else if k == j {
        if e > 0 {
            // A(i,j) A(i,j+1) A(i,j)^-1
            one(a(i, j + 1)).conjugated_by(&FreeWord::gen_pow(a(i, j), -1))
        } else {
            one(a(i, j + 1))
        }
    } else {
        one(a(i, j))
    };
    Ok(word)
}

fn check_band(i: u16, j: u16, n: u16) -> Result<()> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::BadIndex {
            what: format!("band A({i},{j}) needs 1 <= i < j <= {n}"),
        });
    }
    Ok(())
}

/// The lexicographically first positive crossing word inducing `perm`:
/// repeatedly crossing the leftmost adjacent inversion of what remains
/// spells the permutation in `inversion-count` letters.
pub fn permutation_coset_word(perm: &Permutation) -> BraidWord {
    let n = perm.degree();
    let mut word = FreeWord::identity();
    let mut rest = perm.clone();
    loop {
        let descent = (1..n).find(|&k| rest.apply(k) > rest.apply(k + 1));
        let Some(k) = descent else { break };
        word.push(Gen::Sigma(k), 1);
        rest = Permutation::transposition(n, k, k + 1).then(&rest);
    }
    BraidWord { n, word }
}

/// Pull the conjugator out of a free-group image of the shape
/// `c^-1 x{m} c`, canonicalised by dropping any leading `x{m}` power of
/// `c` (conjugators are only determined up to one).
fn strand_conjugator(endo: &FreeGroupEndo, m: u16) -> Result<FreeWord> {
    let image = endo.image(m);
    let letters: Vec<(Gen, i8)> = image.letters().collect();
    if letters.len().is_multiple_of(2) {
        return Err(Error::Rewrite(format!(
            "image of x{m} has even length {}, so it cannot be a conjugate of x{m}",
            letters.len()
        )));
    }
    let mid = letters.len() / 2;
    if letters[mid] != (basis_letter(m), 1) {
        return Err(Error::Rewrite(format!(
            "image of x{m} is not a conjugate of x{m}: {image}"
        )));
    }
    let tail = FreeWord::reduced(letters[mid + 1..].iter().map(|&(g, e)| (g, i64::from(e))));
    let head = FreeWord::reduced(letters[..mid].iter().map(|&(g, e)| (g, i64::from(e))));
    if head != tail.inverse() {
        return Err(Error::Rewrite(format!(
            "image of x{m} is not a clean conjugate: {image}"
        )));
    }
    Ok(drop_leading_power(&tail, basis_letter(m)))
}

/// Strip one leading power of `g` (the whole syllable) off a reduced word.
fn drop_leading_power(w: &FreeWord, g: Gen) -> FreeWord {
    match w.syllables().first() {
        Some(&(first, _)) if first == g => FreeWord::reduced(w.syllables().iter().skip(1).copied()),
        _ => w.clone(),
    }
}

/// Forget the strand starting at position `m`: crossings the tracked strand
/// takes part in are dropped, every other crossing keeps its sign with
/// positions above the tracked strand shifted down by one.  On pure inputs
/// this is the strand-forgetting homomorphism, so the result only uses
/// crossings `s1 .. s(m-2)`.
fn delete_strand(braid: &BraidWord, m: u16) -> BraidWord {
    let mut p = m;
    let mut word = FreeWord::identity();
    for (g, e) in braid.word().letters() {
        let Gen::Sigma(j) = g else {
            unreachable!("braid words hold crossings only")
        };
        if p == j {
            p = j + 1;
        } else if p == j + 1 {
            p = j;
        } else if j > p {
            word.push(Gen::Sigma(j - 1), i64::from(e));
        } else {
            word.push(Gen::Sigma(j), i64::from(e));
        }
    }
    BraidWord { n: braid.n, word }
}

/// Conjugate a band word by a crossing word: returns the band form of
/// `prefix * bands * prefix^-1`, pushing one crossing at a time through the
/// conjugation table.
fn conjugate_bands_by_crossings(
    bands: &FreeWord,
    prefix: &[(Gen, i8)],
    n: u16,
) -> Result<FreeWord> {
    let mut out = bands.clone();
    for &(g, e) in prefix.iter().rev() {
        let Gen::Sigma(k) = g else {
            unreachable!("braid words hold crossings only")
        };
        let mut next = FreeWord::identity();
        for &(band, pow) in out.syllables() {
            let Gen::Band(i, j) = band else {
                unreachable!("band words hold band generators only")
            };
            // the table spells s(k)^-e A s(k)^e, so the flipped sign wraps
            // the crossing around the left instead
            next.push_word_pow(&sigma_action_on_pure(k, -e, (i, j), n)?, pow);
        }
        out = next;
    }
    Ok(out)
}

/// How many peel states the column search may visit before giving up.
const COLUMN_SEARCH_BUDGET: usize = 50_000;

/// Rebuild the column-`m` band word of a kernel element (a pure braid that
/// becomes trivial when strand `m` is forgotten) from its `x{m}`-conjugator.
///
/// If the column word ends in the letter `l`, the conjugator of the rest is
/// `c_{l^-1} * A(l^-1)(conjugator)` up to a leading `x{m}` power, so each
/// candidate last letter can be peeled exactly.  Peeling the true letter may
/// temporarily *lengthen* the conjugator, so no greedy rule suffices; the
/// search instead orders states by conjugator length and backtracks.  States
/// are distinct free-group elements, so the state graph is a tree and the
/// search cannot cycle; a budget keeps adversarial inputs bounded.
fn column_band_word(n: u16, m: u16, gamma: &FreeWord) -> Result<FreeWord> {
    struct Candidate {
        gen: Gen,
        exponent: i64,
        inverse_conjugator: FreeWord,
        undo: FreeGroupEndo,
    }
    let mut candidates = Vec::new();
    for i in 1..m {
        for exponent in [1i64, -1] {
            let letter = expand_pure_generator(i, m, n)?.pow(exponent);
            let undo = artin_action(&letter.inverse());
            let inverse_conjugator = strand_conjugator(&undo, m)?;
            candidates.push(Candidate {
                gen: Gen::band(i, m),
                exponent,
                inverse_conjugator,
                undo,
            });
        }
    }
    let xm = basis_letter(m);
    let start = drop_leading_power(gamma, xm);
    if start.is_identity() {
        return Ok(FreeWord::identity());
    }
    // Arena of search states: the conjugator still to unwind, the state it
    // was reached from, and which candidate letter was peeled to get here.
    let mut nodes: Vec<(FreeWord, usize, usize)> = vec![(start.clone(), usize::MAX, usize::MAX)];
    let mut visited: HashSet<FreeWord> = HashSet::from([start]);
    let mut queue: BinaryHeap<Reverse<(usize, usize)>> = BinaryHeap::new();
    queue.push(Reverse((nodes[0].0.letter_len(), 0)));
    let mut expanded = 0usize;
    while let Some(Reverse((_, at))) = queue.pop() {
        expanded += 1;
        if expanded > COLUMN_SEARCH_BUDGET {
            return Err(Error::Rewrite(format!(
                "column extraction for strand {m} exceeded its search budget"
            )));
        }
        let current = nodes[at].0.clone();
        for (cidx, cand) in candidates.iter().enumerate() {
            let next =
                drop_leading_power(&(&cand.inverse_conjugator * &cand.undo.apply(&current)), xm);
            if next.is_identity() {
                // Walking the peels back from here to the root lists the
                // column word's letters first to last.
                let mut letters: Vec<(Gen, i64)> = vec![(cand.gen, cand.exponent)];
                let mut step = at;
                while step != 0 {
                    let (_, parent, via) = nodes[step];
                    letters.push((candidates[via].gen, candidates[via].exponent));
                    step = parent;
                }
                return Ok(FreeWord::reduced(letters));
            }
            if visited.insert(next.clone()) {
                let idx = nodes.len();
                nodes.push((next.clone(), at, cidx));
                queue.push(Reverse((next.letter_len(), idx)));
            }
        }
    }
    Err(Error::Rewrite(format!(
        "column extraction for strand {m} exhausted every reachable state"
    )))
}

/// The recursive worker behind [`band_form`]; the input word must be pure.
///
/// Whenever two prefixes of the word induce the same permutation, the piece
/// between them is pure, so it converts on its own and re-enters as a
/// table-conjugated factor, leaving a shorter word.  A word none of whose
/// proper prefixes repeat a permutation splits instead along its top strand:
/// forgetting that strand gives a shorter pure word, and the quotient is a
/// kernel element whose column word the conjugator search recovers.
fn band_form_reduced(braid: &BraidWord) -> Result<FreeWord> {
    let n = braid.strands();
    let mut out = FreeWord::identity();
    let mut current = braid.word().clone();
    loop {
        if current.is_identity() {
            return Ok(out);
        }
        let letters: Vec<(Gen, i8)> = current.letters().collect();
        let mut seen: HashMap<Permutation, usize> = HashMap::new();
        let mut pi = Permutation::identity(n);
        seen.insert(pi.clone(), 0);
        let mut repeat = None;
        for (t, &(g, _)) in letters.iter().enumerate() {
            let Gen::Sigma(k) = g else {
                unreachable!("braid words hold crossings only")
            };
            pi = pi.then(&Permutation::transposition(n, k, k + 1));
            match seen.entry(pi.clone()) {
                Entry::Occupied(entry) => {
                    repeat = Some((*entry.get(), t + 1));
                    break;
                }
                Entry::Vacant(entry) => {
                    entry.insert(t + 1);
                }
            }
        }
        let Some((s, t)) = repeat else {
            return Err(Error::Rewrite(
                "a pure word must revisit a prefix permutation".into(),
            ));
        };
        if s == 0 && t == letters.len() {
            // No proper pure piece: take the top strand apart.
            let m = 1 + letters
                .iter()
                .map(|&(g, _)| match g {
                    Gen::Sigma(k) => k,
                    _ => unreachable!("braid words hold crossings only"),
                })
                .max()
                .expect("the word is nonempty here");
            let whole = BraidWord { n, word: current };
            let deleted = delete_strand(&whole, m);
            let kernel = deleted.inverse().multiply(&whole)?;
            let gamma = strand_conjugator(&artin_action(&kernel), m)?;
            let column = column_band_word(n, m, &gamma)?;
            out.push_word(&band_form_reduced(&deleted)?);
            out.push_word(&column);
            return Ok(out);
        }
        let chunk = FreeWord::reduced(letters[s..t].iter().map(|&(g, e)| (g, i64::from(e))));
        let inner = band_form_reduced(&BraidWord { n, word: chunk })?;
        out.push_word(&conjugate_bands_by_crossings(&inner, &letters[..s], n)?);
        current = FreeWord::reduced(
            letters[..s]
                .iter()
                .chain(letters[t..].iter())
                .map(|&(g, e)| (g, i64::from(e))),
        );
    }
}

/// A pure crossing word rewritten in the band generators.
///
/// The result is checked against the action oracle before it is returned,
/// so a successful return is a certificate.
pub fn band_form(braid: &BraidWord) -> Result<FreeWord> {
    let n = braid.strands();
    let perm = project_to_permutation(braid);
    if !perm.is_identity() {
        return Err(Error::NotPure {
            permutation: perm.to_string(),
        });
    }
    let out = band_form_reduced(braid)?;
    if !braid_words_equal(&expand_pure_word(&out, n)?, braid)? {
        return Err(Error::Rewrite(
            "band rewriting does not reproduce the input braid".into(),
        ));
    }
    Ok(out)
}

/// Canonical factorisation of an arbitrary braid word: the coset word of
/// its permutation times a pure remainder in band generators.  Two braid
/// words are equal exactly when their factorisations agree (after combing
/// the band parts).
pub fn coset_band_factorisation(braid: &BraidWord) -> Result<(Permutation, FreeWord)> {
    let perm = project_to_permutation(braid);
    let coset = permutation_coset_word(&perm);
    let pure = coset.inverse().multiply(braid)?;
    Ok((perm, band_form(&pure)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_word;

    fn braid(n: u16, text: &str) -> BraidWord {
        BraidWord::new(n, parse_word(text, &Alphabet::braid(n)).unwrap()).unwrap()
    }

    #[test]
    fn crossing_action_on_the_basis() {
        let endo = artin_action(&braid(3, "s1"));
        assert_eq!(endo.image(1).to_string(), "x1 x2 x1^-1");
        assert_eq!(endo.image(2).to_string(), "x1");
        assert_eq!(endo.image(3).to_string(), "x3");

        let endo = artin_action(&braid(3, "s1^-1"));
        assert_eq!(endo.image(1).to_string(), "x2");
        assert_eq!(endo.image(2).to_string(), "x2^-1 x1 x2");
    }

    #[test]
    fn action_respects_inverses_and_the_braid_relations() {
        assert!(braid_words_equal(&braid(3, "s1 s1^-1"), &BraidWord::identity(3)).unwrap());
        assert!(braid_words_equal(&braid(3, "s1 s2 s1"), &braid(3, "s2 s1 s2")).unwrap());
        assert!(braid_words_equal(&braid(4, "s1 s3"), &braid(4, "s3 s1")).unwrap());
        assert!(!braid_words_equal(&braid(3, "s1 s2"), &braid(3, "s2 s1")).unwrap());
        assert!(matches!(
            braid_words_equal(&braid(3, "s1"), &braid(4, "s1")),
            Err(Error::StrandMismatch { .. })
        ));
    }

    #[test]
    fn action_fixes_the_boundary_product() {
        // x1 x2 .. xn is the boundary of the punctured disk; every braid fixes it.
        for n in 2..=5u16 {
            let boundary = FreeWord::reduced((1..=n).map(|i| (basis_letter(i), 1)));
            let mut word = FreeWord::identity();
            for i in 1..n {
                word.push(Gen::Sigma(i), if i % 2 == 0 { -1 } else { 1 });
                word.push(Gen::Sigma(1), 2);
            }
            let endo = artin_action(&BraidWord::new(n, word).unwrap());
            assert_eq!(endo.apply(&boundary), boundary, "n = {n}");
        }
    }

    #[test]
    fn band_generators_expand_as_expected() {
        assert_eq!(expand_pure_generator(1, 2, 3).unwrap().to_string(), "s1^2");
        assert_eq!(
            expand_pure_generator(1, 3, 3).unwrap().to_string(),
            "s2 s1^2 s2^-1"
        );
        assert_eq!(
            expand_pure_generator(2, 4, 4).unwrap().to_string(),
            "s3 s2^2 s3^-1"
        );
        assert!(expand_pure_generator(2, 2, 4).is_err());
        assert!(expand_pure_generator(1, 5, 4).is_err());
    }

    #[test]
    fn band_generators_are_pure() {
        for n in 2..=5u16 {
            for j in 2..=n {
                for i in 1..j {
                    let b = expand_pure_generator(i, j, n).unwrap();
                    assert!(project_to_permutation(&b).is_identity());
                }
            }
        }
    }

    #[test]
    fn permutation_projection_acts_left_to_right() {
        let p = project_to_permutation(&braid(3, "s1 s2"));
        assert_eq!((p.apply(1), p.apply(2), p.apply(3)), (3, 1, 2));
        // even powers of a crossing do not move strands
        assert!(project_to_permutation(&braid(3, "s1^2 s2^-2")).is_identity());
        let p = project_to_permutation(&braid(4, "s3^-1"));
        assert_eq!(p.apply_pair(3, 4), (3, 4));
        assert_eq!(p.apply_pair(2, 3), (2, 4));
    }

    #[test]
    fn full_twist_is_pure_and_central() {
        for n in 2..=4u16 {
            let z = full_twist_word(n);
            assert_eq!(z.word().letter_len(), usize::from(n) * usize::from(n - 1));
            assert!(project_to_permutation(&z).is_identity());
            for i in 1..n {
                let s = BraidWord::new(n, FreeWord::gen(Gen::Sigma(i))).unwrap();
                assert!(
                    braid_words_equal(&z.multiply(&s).unwrap(), &s.multiply(&z).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn crossing_conjugation_table_matches_the_action() {
        // every table row against the faithful action; larger n run in the
        // verification suite
        for n in 3..=4u16 {
            for k in 1..n {
                for e in [1i8, -1] {
                    for j in 2..=n {
                        for i in 1..j {
                            let row = sigma_action_on_pure(k, e, (i, j), n).unwrap();
                            let lhs = {
                                let mut w = FreeWord::gen_pow(Gen::Sigma(k), -i64::from(e));
                                w.push_word(expand_pure_generator(i, j, n).unwrap().word());
                                w.push(Gen::Sigma(k), i64::from(e));
                                BraidWord::new(n, w).unwrap()
                            };
                            let rhs = expand_pure_word(&row, n).unwrap();
                            assert!(
                                braid_words_equal(&lhs, &rhs).unwrap(),
                                "row failed: s{k}^{} on A({i},{j}) with n={n}",
                                -e
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn table_rejects_out_of_range_input() {
        assert!(sigma_action_on_pure(4, 1, (1, 2), 4).is_err());
        assert!(sigma_action_on_pure(0, 1, (1, 2), 4).is_err());
        assert!(sigma_action_on_pure(1, 2, (1, 2), 4).is_err());
        assert!(sigma_action_on_pure(1, 1, (2, 2), 4).is_err());
    }

    #[test]
    fn coset_words_realise_every_permutation_minimally() {
        let n = 4u16;
        let mut seen = std::collections::HashSet::new();
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    for d in 1..=n {
                        let Ok(p) = Permutation::from_images(vec![a, b, c, d]) else {
                            continue;
                        };
                        let w = permutation_coset_word(&p);
                        assert_eq!(project_to_permutation(&w), p);
                        let inversions = (1..=n)
                            .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
                            .filter(|&(i, j)| p.apply(i) > p.apply(j))
                            .count();
                        assert_eq!(w.word().letter_len(), inversions);
                        seen.insert(w.to_string());
                    }
                }
            }
        }
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn band_form_recovers_crossing_squares_exactly() {
        for n in 2..=5u16 {
            for k in 1..n {
                let square = BraidWord::new(n, FreeWord::gen_pow(Gen::Sigma(k), 2)).unwrap();
                assert_eq!(
                    band_form(&square).unwrap().to_string(),
                    format!("A({k},{})", k + 1)
                );
            }
        }
        assert_eq!(
            band_form(&braid(3, "s2 s1^2 s2^-1")).unwrap().to_string(),
            "A(1,3)"
        );
    }

    #[test]
    fn band_form_round_trips_band_words() {
        let words = [
            (3, "A(1,2) A(1,3)^-1 A(2,3)"),
            (4, "A(1,4) A(2,3)^2 A(1,2)^-1 A(3,4)"),
            (4, "A(2,4)^-1 A(1,3) A(2,4) A(1,2) A(1,4)^-2"),
            (5, "A(1,5) A(2,4)^-1 A(3,5) A(1,2) A(4,5)^3 A(2,3)^-1"),
        ];
        for (n, text) in words {
            let original = parse_word(text, &Alphabet::pure(n)).unwrap();
            let expanded = expand_pure_word(&original, n).unwrap();
            let recovered = band_form(&expanded).unwrap();
            assert!(
                braid_words_equal(&expand_pure_word(&recovered, n).unwrap(), &expanded).unwrap()
            );
            assert_eq!(band_form(&expanded).unwrap(), recovered);
        }
    }

    #[test]
    fn band_form_rejects_impure_braids() {
        assert!(matches!(
            band_form(&braid(3, "s1")),
            Err(Error::NotPure { .. })
        ));
        assert!(matches!(
            band_form(&braid(4, "s1 s2 s3")),
            Err(Error::NotPure { .. })
        ));
    }

    #[test]
    fn factorisation_splits_permutation_from_pure_remainder() {
        let (perm, bands) = coset_band_factorisation(&braid(3, "s1^3")).unwrap();
        assert_eq!(perm, Permutation::transposition(3, 1, 2));
        assert_eq!(bands.to_string(), "A(1,2)");

        let (perm, bands) = coset_band_factorisation(&braid(3, "s1 s2 s1")).unwrap();
        assert_eq!(perm.to_string(), "[3 2 1]");
        assert!(bands.is_identity());

        // the full twist is pure, so its coset word is empty
        let (perm, bands) = coset_band_factorisation(&full_twist_word(4)).unwrap();
        assert!(perm.is_identity());
        let rebuilt = expand_pure_word(&bands, 4).unwrap();
        assert!(braid_words_equal(&rebuilt, &full_twist_word(4)).unwrap());
    }
}
