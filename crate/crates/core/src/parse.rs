//! Text form of words.
//!
//! Tokens are whitespace separated: `s2`, `A(1,3)`, a declared letter name,
//! each optionally followed by `^<exponent>`.  `1` is the empty word.  The
//! [`std::fmt::Display`] impl on [`FreeWord`] prints the same syntax back, so
//! `parse_word(&w.to_string(), a) == w` for any word that fits alphabet `a`.

use crate::error::{Error, Result};
use crate::word::{Alphabet, FreeWord, Gen, LetterName};

/// Parse a word over the given alphabet.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<FreeWord> {
    let mut syllables = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        if bytes[pos].is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let end = chunk_end(bytes, pos);
        let chunk = &text[start..end];
        pos = end;
        if chunk == "1" {
            continue;
        }
        let (gen, rest_at) = parse_generator(chunk, start)?;
        if !alphabet.contains(&gen) {
            return Err(Error::OutsideAlphabet {
                gen: gen.to_string(),
                alphabet: alphabet.to_string(),
            });
        }
        let exponent = parse_exponent(chunk, rest_at - start, start)?;
        syllables.push((gen, exponent));
    }
    Ok(FreeWord::reduced(syllables))
}

fn chunk_end(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    pos
}

/// Parse the generator part of a chunk; returns it plus the byte offset
/// (within the whole input) where the exponent part starts.
fn parse_generator(chunk: &str, at: usize) -> Result<(Gen, usize)> {
    let bytes = chunk.as_bytes();
    if bytes[0] == b's' && bytes.len() > 1 && bytes[1].is_ascii_digit() {
        let (i, used) = read_index(&chunk[1..], at + 1)?;
        if i == 0 {
            return Err(Error::BadIndex {
                what: format!("s0 at byte {at}"),
            });
        }
        return Ok((Gen::Sigma(i), at + 1 + used));
    }
    if bytes[0] == b'A' {
        if bytes.len() < 2 || bytes[1] != b'(' {
            return Err(Error::Parse {
                at,
                reason: "expected `A(i,j)`".into(),
            });
        }
        let close = chunk.find(')').ok_or(Error::Parse {
            at,
            reason: "unclosed `A(`".into(),
        })?;
        let inner = &chunk[2..close];
        let comma = inner.find(',').ok_or(Error::Parse {
            at,
            reason: "expected `A(i,j)` with a comma".into(),
        })?;
        let (i, used_i) = read_index(&inner[..comma], at + 2)?;
        if used_i != comma {
            return Err(Error::Parse {
                at: at + 2 + used_i,
                reason: "junk in `A(i,j)`".into(),
            });
        }
        let (j, used_j) = read_index(&inner[comma + 1..], at + 3 + comma)?;
        if used_j != inner.len() - comma - 1 {
            return Err(Error::Parse {
                at: at + 3 + comma + used_j,
                reason: "junk in `A(i,j)`".into(),
            });
        }
        if i == 0 || i >= j {
            return Err(Error::BadIndex {
                what: format!("A({i},{j}) needs 1 <= i < j"),
            });
        }
        return Ok((Gen::Band(i, j), at + close + 1));
    }
    if bytes[0].is_ascii_alphabetic() {
        let end = chunk
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(chunk.len());
        let name = &chunk[..end];
        let name = LetterName::from(name).map_err(|_| Error::Parse {
            at,
            reason: format!("letter name {name:?} too long"),
        })?;
        return Ok((Gen::Letter(name), at + name.len()));
    }
    Err(Error::Parse {
        at,
        reason: format!("unrecognized token {chunk:?}"),
    })
}

fn read_index(text: &str, at: usize) -> Result<(u16, usize)> {
    let digits: String = text.chars().take_while(|c| c.is_ascii_digit()).collect();
    if digits.is_empty() {
        return Err(Error::Parse {
            at,
            reason: "expected a strand index".into(),
        });
    }
    let value = digits.parse::<u16>().map_err(|_| Error::Parse {
        at,
        reason: format!("index {digits} out of range"),
    })?;
    Ok((value, digits.len()))
}

/// Parse the `^<int>` tail of a chunk (empty tail means exponent 1).
fn parse_exponent(chunk: &str, from: usize, at: usize) -> Result<i64> {
    let tail = &chunk[from..];
    if tail.is_empty() {
        return Ok(1);
    }
    let Some(body) = tail.strip_prefix('^') else {
        return Err(Error::Parse {
            at: at + from,
            reason: format!("unexpected {tail:?} after generator"),
        });
    };
    let value = body.parse::<i64>().map_err(|_| Error::Parse {
        at: at + from + 1,
        reason: format!("bad exponent {body:?}"),
    })?;
    if value == 0 {
        return Err(Error::ZeroExponent { at: at + from + 1 });
    }
    Ok(value)
}
