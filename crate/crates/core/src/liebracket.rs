//! The bracket map (X, Y) -> XY - YX on 2x2 matrix Lie algebras over
//! F_p, as a sanity mirror of the group-level word experiments: the
//! image is always inside the traceless matrices, and the question is
//! whether it fills them and in how many summands.
//!
//! Everything is brute force over all pairs. gl2 has p^4 elements and
//! sl2 has p^3, so the prime cap keeps the pair count near 10^9 at worst.

use crate::par;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const BRACKET_PRIME_CAP: u32 = 13;

#[derive(Debug, Error)]
pub enum BracketError {
    #[error("{p} is not prime")]
    NotPrime { p: u32 },
    #[error("prime {p} exceeds the cap {cap}")]
    PrimeTooLarge { p: u32, cap: u32 },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LieSpace {
    /// All 2x2 matrices.
    Gl,
    /// Traceless 2x2 matrices.
    Sl,
}

impl std::fmt::Display for LieSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LieSpace::Gl => "gl2",
            LieSpace::Sl => "sl2",
        })
    }
}

impl std::str::FromStr for LieSpace {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gl" | "gl2" => Ok(LieSpace::Gl),
            "sl" | "sl2" => Ok(LieSpace::Sl),
            other => Err(format!("unknown Lie algebra '{other}', expected gl2 or sl2")),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BracketWidth {
    /// k-fold sums of brackets reach every traceless matrix.
    Covers { width: u32 },
    /// Iterated sums stabilized on a proper subgroup.
    Stalls { stabilized_at: u32, span_size: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketReport {
    pub p: u32,
    pub space: LieSpace,
    pub pairs: u64,
    pub image_size: usize,
    /// Number of traceless matrices, p^3.
    pub traceless_count: usize,
    pub covers_traceless: bool,
    pub width: BracketWidth,
}

type Mat = [u32; 4];

fn mul(p: u32, a: &Mat, b: &Mat) -> Mat {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

fn bracket(p: u32, a: &Mat, b: &Mat) -> Mat {
    let ab = mul(p, a, b);
    let ba = mul(p, b, a);
    [
        (ab[0] + p - ba[0]) % p,
        (ab[1] + p - ba[1]) % p,
        (ab[2] + p - ba[2]) % p,
        (ab[3] + p - ba[3]) % p,
    ]
}

/// Encode a traceless matrix [[a, b], [c, -a]] as (a*p + b)*p + c.
fn encode_traceless(p: u32, m: &Mat) -> usize {
    debug_assert_eq!((m[0] + m[3]) % p, 0, "bracket left the traceless space");
    ((m[0] * p + m[1]) * p + m[2]) as usize
}

fn elements(p: u32, space: LieSpace) -> Vec<Mat> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                match space {
                    LieSpace::Gl => {
                        for d in 0..p {
                            out.push([a, b, c, d]);
                        }
                    }
                    LieSpace::Sl => out.push([a, b, c, (p - a) % p]),
                }
            }
        }
    }
    out
}

struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet { words: vec![0; len.div_ceil(64)], len }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn union_with(&mut self, other: &BitSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_full(&self) -> bool {
        self.count() == self.len
    }

    fn iter_set(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

fn check_prime(p: u32) -> Result<(), BracketError> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(BracketError::NotPrime { p });
    }
    if p > BRACKET_PRIME_CAP {
        return Err(BracketError::PrimeTooLarge { p, cap: BRACKET_PRIME_CAP });
    }
    Ok(())
}

pub fn bracket_image(p: u32, space: LieSpace) -> Result<BracketReport, BracketError> {
    check_prime(p)?;
    let elems = elements(p, space);
    let size = (p * p * p) as usize;
    let partials = par::map_collect(&elems, |x| {
        let mut marks = BitSet::new(size);
        for y in &elems {
            marks.insert(encode_traceless(p, &bracket(p, x, y)));
        }
        marks
    });
    let mut image = BitSet::new(size);
    for m in &partials {
        image.union_with(m);
    }
    let image_size = image.count();
    let covers = image.is_full();
    let width = bracket_width(p, &image);
    Ok(BracketReport {
        p,
        space,
        pairs: (elems.len() as u64) * (elems.len() as u64),
        image_size,
        traceless_count: size,
        covers_traceless: covers,
        width,
    })
}

/// Iterated sumsets of the image inside the additive group of traceless
/// matrices. The image contains 0 = [x,x], so the chain is monotone and
/// stabilizes; report either the first k covering everything or the
/// stall point.
fn bracket_width(p: u32, image: &BitSet) -> BracketWidth {
    let size = image.len;
    let decode = |i: usize| -> (u32, u32, u32) {
        let i = i as u32;
        (i / (p * p), (i / p) % p, i % p)
    };
    let base: Vec<usize> = image.iter_set().collect();
    let mut current = BitSet::new(size);
    current.union_with(image);
    let mut k = 1u32;
    loop {
        if current.is_full() {
            return BracketWidth::Covers { width: k };
        }
        let mut next = BitSet::new(size);
        next.union_with(&current);
        for i in current.iter_set() {
            let (a1, b1, c1) = decode(i);
            for &j in &base {
                let (a2, b2, c2) = decode(j);
                let idx = (((a1 + a2) % p) * p + (b1 + b2) % p) * p + (c1 + c2) % p;
                next.insert(idx as usize);
            }
        }
        if next.count() == current.count() {
            return BracketWidth::Stalls { stabilized_at: k, span_size: current.count() };
        }
        current = next;
        k += 1;
    }
}
