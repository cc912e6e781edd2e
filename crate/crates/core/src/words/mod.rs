//! Reduced words in a free group F_d and the word families used
//! throughout the lab.
//!
//! Generators are numbered from 1. Words are kept freely reduced at all
//! times: no letter is ever adjacent to its own inverse. The commutator
//! convention is `[u, v] = u v u^-1 v^-1`.

mod parse;

pub use parse::parse;

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Default cap on the Thom word index; lengths roughly triple per step,
/// so w_14 is already a few million letters.
pub const THOM_CAP: u32 = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator x{gen} exceeds declared rank {rank}")]
    GeneratorOutOfRank { gen: u32, rank: u32 },
    #[error("substitution expects {expected} image words, got {got}")]
    SubstitutionArity { expected: usize, got: usize },
    #[error("the identity word has no proper-power decomposition")]
    IdentityHasNoRoot,
    #[error("Engel words need at least one trailing y (k >= 1)")]
    EngelIndexZero,
    #[error("Thom word index {k} exceeds the cap {cap}")]
    ThomCapExceeded { k: u32, cap: u32 },
}

/// One letter of a word: a generator index (from 1) and a sign.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Letter {
    gen: u32,
    sign: i8,
}

impl Letter {
    /// `sign` must be +1 or -1 and `gen` at least 1.
    pub fn new(gen: u32, sign: i8) -> Letter {
        assert!(gen >= 1, "generator indices start at 1");
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        Letter { gen, sign }
    }

    pub fn generator(self) -> u32 {
        self.gen
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, sign: -self.sign }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign == -other.sign
    }
}

/// A freely reduced word in the free group on `rank` generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    rank: u32,
    letters: Vec<Letter>,
}

impl Word {
    /// The empty word in F_rank.
    pub fn identity(rank: u32) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// The single-letter word x_i.
    pub fn generator(i: u32) -> Word {
        Word { rank: i, letters: vec![Letter::new(i, 1)] }
    }

    /// Builds a word from raw letters, freely reducing as it goes.
    /// The rank is raised to cover every letter if needed.
    pub fn from_letters(rank: u32, letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        let mut max_gen = 0;
        for l in letters {
            max_gen = max_gen.max(l.gen);
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { rank: rank.max(max_gen), letters: out }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same word regarded in a larger free group.
    pub fn with_rank(&self, rank: u32) -> Result<Word, WordError> {
        if rank < self.min_rank() {
            return Err(WordError::GeneratorOutOfRank { gen: self.min_rank(), rank });
        }
        Ok(Word { rank, letters: self.letters.clone() })
    }

    /// Largest generator index actually used (0 for the identity).
    pub fn min_rank(&self) -> u32 {
        self.letters.iter().map(|l| l.gen).max().unwrap_or(0)
    }

    /// Set of generator indices that occur in the word.
    pub fn support(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.letters.iter().map(|l| l.gen).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Concatenation u·v, reduced at the seam. The rank is the max of the two.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            match letters.last() {
                Some(&last) if last.cancels(l) => {
                    letters.pop();
                }
                _ => letters.push(l),
            }
        }
        Word { rank: self.rank.max(other.rank), letters }
    }

    /// w^-1: letters reversed, signs flipped. Already reduced.
    pub fn inverse(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// w^k for any integer k (k = 0 gives the identity).
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Signed letter count per generator; all zeros exactly when the word
    /// lies in the derived subgroup [F, F].
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.rank as usize];
        for l in &self.letters {
            sums[(l.gen - 1) as usize] += l.sign as i64;
        }
        sums
    }

    /// Writes the word as c·r·c^-1 with r cyclically reduced; returns
    /// (prefix c, core r).
    fn cyclic_reduction(&self) -> (Word, Word) {
        let mut lo = 0usize;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo].cancels(self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        let prefix = Word { rank: self.rank, letters: self.letters[..lo].to_vec() };
        let core = Word { rank: self.rank, letters: self.letters[lo..hi].to_vec() };
        (prefix, core)
    }

    /// Maximal decomposition w = root^k (as reduced words, conjugating
    /// prefix reattached). k = 1 means w is not a proper power.
    pub fn proper_power_root(&self) -> Result<(Word, u32), WordError> {
        if self.is_identity() {
            return Err(WordError::IdentityHasNoRoot);
        }
        let (prefix, core) = self.cyclic_reduction();
        let m = core.letters.len();
        debug_assert!(m > 0);
        for d in 1..=m {
            if m % d != 0 {
                continue;
            }
            let periodic = (d..m).all(|i| core.letters[i] == core.letters[i - d]);
            if periodic {
                let root_core = Word { rank: self.rank, letters: core.letters[..d].to_vec() };
                let root = prefix.concat(&root_core).concat(&prefix.inverse());
                return Ok((root, (m / d) as u32));
            }
        }
        unreachable!("d = m is always a period");
    }

    /// Replaces generator i by images[i-1] throughout and reduces.
    pub fn substitute(&self, images: &[Word]) -> Result<Word, WordError> {
        if images.len() != self.rank as usize {
            return Err(WordError::SubstitutionArity {
                expected: self.rank as usize,
                got: images.len(),
            });
        }
        let rank = images.iter().map(|w| w.rank).max().unwrap_or(0);
        let mut out = Word::identity(rank);
        for l in &self.letters {
            let img = &images[(l.gen - 1) as usize];
            if l.sign > 0 {
                out = out.concat(img);
            } else {
                out = out.concat(&img.inverse());
            }
        }
        Ok(out)
    }

    /// Canonical text form: explicit `*` between factors, `^k` for runs,
    /// generators named x, y, z, u, v then x6, x7, ...
    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1usize;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let exp = run as i64 * l.sign as i64;
            if exp == 1 {
                parts.push(generator_name(l.gen));
            } else {
                parts.push(format!("{}^{}", generator_name(l.gen), exp));
            }
            i += run;
        }
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn generator_name(i: u32) -> String {
    match i {
        1 => "x".into(),
        2 => "y".into(),
        3 => "z".into(),
        4 => "u".into(),
        5 => "v".into(),
        n => format!("x{n}"),
    }
}

/// `[u, v] = u v u^-1 v^-1`, reduced.
pub fn commutator(u: &Word, v: &Word) -> Word {
    u.concat(v).concat(&u.inverse()).concat(&v.inverse())
}

/// Engel word e_k = [x, y, y, ..., y] with k trailing y's:
/// e_1 = [x, y], e_k = [e_{k-1}, y].
pub fn engel_word(k: u32) -> Result<Word, WordError> {
    if k == 0 {
        return Err(WordError::EngelIndexZero);
    }
    let y = Word::generator(2);
    let mut w = commutator(&Word::generator(1), &y);
    for _ in 1..k {
        w = commutator(&w, &y);
    }
    Ok(w)
}

/// Thom's almost-law sequence:
/// w_0 = [x, y], w_1 = [w_0, x], and for i >= 1
/// w_{2i-1} = [w_{2i-2}, x^i], w_{2i} = [w_{2i-1}, y·w_{2i-1}·y^-1].
///
/// Lengths grow roughly 3x per step, hence the cap.
pub fn thom_word(k: u32) -> Result<Word, WordError> {
    thom_word_with_cap(k, THOM_CAP)
}

pub fn thom_word_with_cap(k: u32, cap: u32) -> Result<Word, WordError> {
    if k > cap {
        return Err(WordError::ThomCapExceeded { k, cap });
    }
    let x = Word::generator(1);
    let y = Word::generator(2);
    let mut w = commutator(&x, &y);
    let mut idx = 0u32;
    let mut i = 1i64;
    while idx < k {
        // w_{2i-1} from w_{2i-2}
        w = commutator(&w, &x.pow(i));
        idx += 1;
        if idx == k {
            break;
        }
        // w_{2i} from w_{2i-1}
        let conj = y.concat(&w).concat(&y.inverse());
        w = commutator(&w, &conj);
        idx += 1;
        i += 1;
    }
    debug_assert!(!w.is_identity());
    Ok(w)
}

/// The simplest member of the Jambor-Liebeck-O'Brien family of words that
/// are non-surjective on infinitely many PSL(2,p). In this crate's
/// commutator convention it reads x^2·[x^2, y]^2 (the source construction
/// writes it with left-normed commutators as x^2·[x^-2, y^-1]^2).
pub fn jlo_word() -> Word {
    let x = Word::generator(1);
    let y = Word::generator(2);
    let c = commutator(&x.pow(2), &y);
    x.pow(2).concat(&c).concat(&c)
}
