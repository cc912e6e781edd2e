//! Enumerative analysis of word maps on finite groups: images, fiber
//! counts, word width, Waring-type products of images, and chirality of
//! the fiber function.
//!
//! Two evaluation modes:
//!
//! * pruned: the first variable ranges over conjugacy class
//!   representatives only, the rest over the whole group. Images and
//!   fibers are conjugation-equivariant, so this is exact and cuts the
//!   cost by a factor of |G| / #classes.
//! * naive: full enumeration of |G|^d tuples. Quadratically slower;
//!   kept as an independent cross-check of the pruned path.

use crate::fingroups::{build_group, ClassTable, CompiledWord, FiniteGroup, GroupError, GroupSpec};
use crate::words::Word;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::time::Instant;
use thiserror::Error;

/// Upper bound on (word evaluations) x (word length) per run.
pub const ENUM_COST_CAP: u128 = 10_000_000_000;

/// Enumeration handles words in at most this many variables.
pub const MAX_ENUM_RANK: u32 = 3;

/// Three-variable enumeration is only allowed on groups this small.
pub const RANK3_ORDER_CAP: usize = 1_000;

/// Give up on width iteration beyond this many product steps.
pub const DEFAULT_WIDTH_CAP: u32 = 32;

#[derive(Debug, Error)]
pub enum ImagingError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("enumeration cost {cost} exceeds the cap {cap}")]
    CostCapExceeded { cost: u128, cap: u128 },
    #[error("cannot enumerate a word of rank {rank} (max {max})")]
    RankTooLarge { rank: u32, max: u32 },
    #[error("rank-3 enumeration needs |G| <= {max}, got {order}")]
    RankThreeOrder { order: usize, max: usize },
    #[error("product factors must use disjoint variables; x{gen} repeats")]
    OverlappingSupport { gen: u32 },
    #[error("image products take 2 or 3 factors, got {got}")]
    ProductArity { got: usize },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMode {
    Pruned,
    Naive,
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalMode::Pruned => "pruned",
            EvalMode::Naive => "naive",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupSummary {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    pub order: usize,
}

impl GroupSummary {
    pub fn new(g: &FiniteGroup) -> GroupSummary {
        let (n, p, degree) = match *g.spec() {
            GroupSpec::Gl { n, p } | GroupSpec::Sl { n, p } | GroupSpec::Psl { n, p } => {
                (Some(n), Some(p), None)
            }
            GroupSpec::Perm { degree, .. } => (None, None, Some(degree)),
        };
        GroupSummary { kind: g.spec().kind().to_string(), n, p, degree, order: g.order() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassSummary {
    pub class_id: u32,
    pub rep_index: u32,
    pub element_order: u32,
    pub class_size: usize,
}

fn class_summary(ct: &ClassTable, c: u32) -> ClassSummary {
    ClassSummary {
        class_id: c,
        rep_index: ct.rep(c),
        element_order: ct.element_order(c),
        class_size: ct.size(c),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ImageReport {
    pub word: String,
    pub group: GroupSummary,
    /// Number of elements in the image.
    pub image_count: usize,
    /// Classes contained in the image, ascending by class id.
    pub image_classes: Vec<ClassSummary>,
    pub surjective: bool,
    pub missed_classes: Vec<ClassSummary>,
    pub mode: EvalMode,
    pub threads: usize,
    /// Word evaluations performed.
    pub tuples: u64,
    pub timing_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiberEntry {
    pub class: ClassSummary,
    /// Number of preimage tuples of any single element of the class.
    pub value: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiberReport {
    pub word: String,
    pub group: GroupSummary,
    pub fibers: Vec<FiberEntry>,
    pub mode: EvalMode,
    pub threads: usize,
    pub tuples: u64,
    pub timing_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WidthOutcome {
    /// Every element is a product of `width` image values.
    Finite {
        width: u32,
    },
    /// Image powers stabilized on a proper subgroup; no power covers G.
    Infinite {
        stabilized_at: u32,
        subgroup_order: usize,
    },
    ExceedsCap {
        cap: u32,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WidthReport {
    pub word: String,
    pub group: GroupSummary,
    pub outcome: WidthOutcome,
    /// |Im(w)^k| for k = 1, 2, ... as far as the iteration ran.
    pub power_sizes: Vec<usize>,
    pub mode: EvalMode,
    pub threads: usize,
    pub timing_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WaringReport {
    pub words: Vec<String>,
    pub group: GroupSummary,
    /// Sizes of Im(w1), Im(w1)Im(w2), ... cumulatively.
    pub product_sizes: Vec<usize>,
    pub covers_group: bool,
    /// True when only central classes are missed, if any.
    pub covers_noncentral: bool,
    pub missed_classes: Vec<ClassSummary>,
    pub mode: EvalMode,
    pub threads: usize,
    pub timing_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChiralityWitness {
    pub class: ClassSummary,
    pub inverse_class: ClassSummary,
    pub fiber: u64,
    pub inverse_fiber: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChiralityReport {
    pub word: String,
    pub group: GroupSummary,
    /// True when some class and its inverse class have different fibers,
    /// i.e. the fiber function distinguishes a from a^-1.
    pub weakly_chiral: bool,
    pub witnesses: Vec<ChiralityWitness>,
    pub fibers: Vec<FiberEntry>,
    pub mode: EvalMode,
    pub threads: usize,
    pub tuples: u64,
    pub timing_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanRow {
    pub group: String,
    pub p: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surjective: Option<bool>,
    pub missed_classes: Vec<ClassSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub word: String,
    pub mode: EvalMode,
    pub threads: usize,
    pub rows: Vec<ScanRow>,
    pub timing_ms: u64,
}

/// Lifts rank-0 (identity) words into F_1 so enumeration has one slot.
fn normalize(w: &Word) -> Word {
    if w.rank() == 0 {
        w.with_rank(1).expect("raising rank cannot fail")
    } else {
        w.clone()
    }
}

fn check_cost(g: &FiniteGroup, w: &Word, mode: EvalMode) -> Result<(), ImagingError> {
    let d = w.rank();
    if d > MAX_ENUM_RANK {
        return Err(ImagingError::RankTooLarge { rank: d, max: MAX_ENUM_RANK });
    }
    if d == 3 && g.order() > RANK3_ORDER_CAP {
        return Err(ImagingError::RankThreeOrder { order: g.order(), max: RANK3_ORDER_CAP });
    }
    let order = g.order() as u128;
    let evals = match mode {
        EvalMode::Pruned => g.classes().count() as u128 * order.pow(d - 1),
        EvalMode::Naive => order.pow(d),
    };
    let cost = evals * w.len().max(1) as u128;
    if cost > ENUM_COST_CAP {
        return Err(ImagingError::CostCapExceeded { cost, cap: ENUM_COST_CAP });
    }
    Ok(())
}

/// Class marking of the image set, plus the number of evaluations.
fn image_marks(
    g: &FiniteGroup,
    w: &Word,
    mode: EvalMode,
) -> Result<(Vec<bool>, u64), ImagingError> {
    let w = normalize(w);
    check_cost(g, &w, mode)?;
    let ct = g.classes();
    let nclasses = ct.count();
    let cw = CompiledWord::new(&w);
    let order = g.order() as u32;
    let d = w.rank();

    let marks = match mode {
        EvalMode::Pruned => {
            let reps: Vec<u32> = (0..nclasses as u32).map(|c| ct.rep(c)).collect();
            let partials = crate::par::map_collect(&reps, |&r| {
                let mut m = vec![false; nclasses];
                match d {
                    1 => {
                        m[ct.class_of(g.eval_compiled(&cw, &[r])) as usize] = true;
                    }
                    2 => {
                        for y in 0..order {
                            m[ct.class_of(g.eval_compiled(&cw, &[r, y])) as usize] = true;
                        }
                    }
                    _ => {
                        for y in 0..order {
                            for z in 0..order {
                                m[ct.class_of(g.eval_compiled(&cw, &[r, y, z])) as usize] = true;
                            }
                        }
                    }
                }
                m
            });
            merge_marks(nclasses, partials)
        }
        EvalMode::Naive => {
            let elem_marks = naive_element_marks(g, &cw, d);
            // the image of a word map is a union of conjugacy classes;
            // anything else means the evaluator is broken
            let mut m = vec![false; nclasses];
            for c in 0..nclasses as u32 {
                let hit = ct.members(c).iter().filter(|&&e| elem_marks[e as usize]).count();
                assert!(
                    hit == 0 || hit == ct.size(c),
                    "naive image is not conjugation-closed on class {c}"
                );
                m[c as usize] = hit > 0;
            }
            m
        }
    };

    assert!(marks[ct.class_of(g.identity()) as usize], "image must contain the identity");
    let evals = match mode {
        EvalMode::Pruned => nclasses as u64 * (g.order() as u64).pow(d - 1),
        EvalMode::Naive => (g.order() as u64).pow(d),
    };
    Ok((marks, evals))
}

fn merge_marks(nclasses: usize, partials: Vec<Vec<bool>>) -> Vec<bool> {
    let mut out = vec![false; nclasses];
    for part in partials {
        for (o, p) in out.iter_mut().zip(part) {
            *o |= p;
        }
    }
    out
}

/// Element marking by brute force, parallel over blocks of the first
/// coordinate.
fn naive_element_marks(g: &FiniteGroup, cw: &CompiledWord, d: u32) -> Vec<bool> {
    let order = g.order() as u32;
    let blocks = 4 * crate::par::thread_count().max(1);
    let block = g.order().div_ceil(blocks);
    let ranges: Vec<(u32, u32)> = (0..blocks)
        .map(|i| {
            let lo = (i * block).min(g.order()) as u32;
            let hi = ((i + 1) * block).min(g.order()) as u32;
            (lo, hi)
        })
        .filter(|(lo, hi)| lo < hi)
        .collect();
    let partials = crate::par::map_collect(&ranges, |&(lo, hi)| {
        let mut m = vec![false; g.order()];
        for x in lo..hi {
            match d {
                1 => m[g.eval_compiled(cw, &[x]) as usize] = true,
                2 => {
                    for y in 0..order {
                        m[g.eval_compiled(cw, &[x, y]) as usize] = true;
                    }
                }
                _ => {
                    for y in 0..order {
                        for z in 0..order {
                            m[g.eval_compiled(cw, &[x, y, z]) as usize] = true;
                        }
                    }
                }
            }
        }
        m
    });
    let mut out = vec![false; g.order()];
    for part in partials {
        for (o, p) in out.iter_mut().zip(part) {
            *o |= p;
        }
    }
    out
}

fn marked_classes(ct: &ClassTable, marks: &[bool]) -> Vec<ClassSummary> {
    (0..ct.count() as u32).filter(|&c| marks[c as usize]).map(|c| class_summary(ct, c)).collect()
}

fn unmarked_classes(ct: &ClassTable, marks: &[bool]) -> Vec<ClassSummary> {
    (0..ct.count() as u32).filter(|&c| !marks[c as usize]).map(|c| class_summary(ct, c)).collect()
}

fn marked_size(ct: &ClassTable, marks: &[bool]) -> usize {
    (0..ct.count() as u32).filter(|&c| marks[c as usize]).map(|c| ct.size(c)).sum()
}

pub fn image(g: &FiniteGroup, w: &Word, mode: EvalMode) -> Result<ImageReport, ImagingError> {
    let start = Instant::now();
    let (marks, tuples) = image_marks(g, w, mode)?;
    let ct = g.classes();
    let image_classes = marked_classes(ct, &marks);
    let missed_classes = unmarked_classes(ct, &marks);
    Ok(ImageReport {
        word: w.render(),
        group: GroupSummary::new(g),
        image_count: marked_size(ct, &marks),
        surjective: missed_classes.is_empty(),
        image_classes,
        missed_classes,
        mode,
        threads: crate::par::thread_count(),
        tuples,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

/// Per-class fiber values; `values[c]` is the number of preimage tuples
/// of any one element of class c. Exactness checks are built in: class
/// totals must divide evenly and the values must add up to |G|^d.
fn fiber_values(
    g: &FiniteGroup,
    w: &Word,
    mode: EvalMode,
) -> Result<(Vec<u64>, u64), ImagingError> {
    let w = normalize(w);
    check_cost(g, &w, mode)?;
    let ct = g.classes();
    let nclasses = ct.count();
    let cw = CompiledWord::new(&w);
    let order = g.order() as u32;
    let d = w.rank();

    let values: Vec<u64> = match mode {
        EvalMode::Pruned => {
            let reps: Vec<u32> = (0..nclasses as u32).map(|c| ct.rep(c)).collect();
            let partials = crate::par::map_collect(&reps, |&r| {
                let mut counts = vec![0u64; nclasses];
                match d {
                    1 => counts[ct.class_of(g.eval_compiled(&cw, &[r])) as usize] += 1,
                    2 => {
                        for y in 0..order {
                            counts[ct.class_of(g.eval_compiled(&cw, &[r, y])) as usize] += 1;
                        }
                    }
                    _ => {
                        for y in 0..order {
                            for z in 0..order {
                                counts[ct.class_of(g.eval_compiled(&cw, &[r, y, z])) as usize] += 1;
                            }
                        }
                    }
                }
                counts
            });
            let mut totals = vec![0u64; nclasses];
            for (c, counts) in partials.into_iter().enumerate() {
                let size = ct.size(c as u32) as u64;
                for (t, n) in totals.iter_mut().zip(counts) {
                    *t += size * n;
                }
            }
            totals
                .iter()
                .enumerate()
                .map(|(c, &t)| {
                    let size = ct.size(c as u32) as u64;
                    assert!(
                        t % size == 0,
                        "fiber total {t} of class {c} is not a multiple of the class size {size}"
                    );
                    t / size
                })
                .collect()
        }
        EvalMode::Naive => {
            let per_element = naive_element_counts(g, &cw, d);
            (0..nclasses as u32)
                .map(|c| {
                    let m = ct.members(c);
                    let v = per_element[m[0] as usize];
                    assert!(
                        m.iter().all(|&e| per_element[e as usize] == v),
                        "naive fibers are not constant on class {c}"
                    );
                    v
                })
                .collect()
        }
    };

    let total: u128 =
        (0..nclasses as u32).map(|c| values[c as usize] as u128 * ct.size(c) as u128).sum();
    assert_eq!(total, (g.order() as u128).pow(d), "fibers must account for every tuple");
    let evals = match mode {
        EvalMode::Pruned => nclasses as u64 * (g.order() as u64).pow(d - 1),
        EvalMode::Naive => (g.order() as u64).pow(d),
    };
    Ok((values, evals))
}

fn naive_element_counts(g: &FiniteGroup, cw: &CompiledWord, d: u32) -> Vec<u64> {
    let order = g.order() as u32;
    let blocks = 4 * crate::par::thread_count().max(1);
    let block = g.order().div_ceil(blocks);
    let ranges: Vec<(u32, u32)> = (0..blocks)
        .map(|i| {
            let lo = (i * block).min(g.order()) as u32;
            let hi = ((i + 1) * block).min(g.order()) as u32;
            (lo, hi)
        })
        .filter(|(lo, hi)| lo < hi)
        .collect();
    let partials = crate::par::map_collect(&ranges, |&(lo, hi)| {
        let mut counts = vec![0u64; g.order()];
        for x in lo..hi {
            match d {
                1 => counts[g.eval_compiled(cw, &[x]) as usize] += 1,
                2 => {
                    for y in 0..order {
                        counts[g.eval_compiled(cw, &[x, y]) as usize] += 1;
                    }
                }
                _ => {
                    for y in 0..order {
                        for z in 0..order {
                            counts[g.eval_compiled(cw, &[x, y, z]) as usize] += 1;
                        }
                    }
                }
            }
        }
        counts
    });
    let mut out = vec![0u64; g.order()];
    for part in partials {
        for (o, p) in out.iter_mut().zip(part) {
            *o += p;
        }
    }
    out
}

pub fn fibers(g: &FiniteGroup, w: &Word, mode: EvalMode) -> Result<FiberReport, ImagingError> {
    let start = Instant::now();
    let (values, tuples) = fiber_values(g, w, mode)?;
    let ct = g.classes();
    Ok(FiberReport {
        word: w.render(),
        group: GroupSummary::new(g),
        fibers: (0..ct.count() as u32)
            .map(|c| FiberEntry { class: class_summary(ct, c), value: values[c as usize] })
            .collect(),
        mode,
        threads: crate::par::thread_count(),
        tuples,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn chirality(
    g: &FiniteGroup,
    w: &Word,
    mode: EvalMode,
) -> Result<ChiralityReport, ImagingError> {
    let start = Instant::now();
    let (values, tuples) = fiber_values(g, w, mode)?;
    let ct = g.classes();
    let mut witnesses = Vec::new();
    for c in 0..ct.count() as u32 {
        let ic = ct.inverse_class(c);
        if c <= ic && values[c as usize] != values[ic as usize] {
            witnesses.push(ChiralityWitness {
                class: class_summary(ct, c),
                inverse_class: class_summary(ct, ic),
                fiber: values[c as usize],
                inverse_fiber: values[ic as usize],
            });
        }
    }
    Ok(ChiralityReport {
        word: w.render(),
        group: GroupSummary::new(g),
        weakly_chiral: !witnesses.is_empty(),
        witnesses,
        fibers: (0..ct.count() as u32)
            .map(|c| FiberEntry { class: class_summary(ct, c), value: values[c as usize] })
            .collect(),
        mode,
        threads: crate::par::thread_count(),
        tuples,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

/// Elements of the set marked by classes (ascending element index).
fn marked_elements(ct: &ClassTable, marks: &[bool]) -> Vec<u32> {
    let mut out = Vec::new();
    for c in 0..ct.count() as u32 {
        if marks[c as usize] {
            out.extend_from_slice(ct.members(c));
        }
    }
    out.sort_unstable();
    out
}

/// Class marking of A * B where both sets are conjugation-closed: it
/// suffices to multiply class representatives of A by all elements of B.
fn product_marks(g: &FiniteGroup, a: &[bool], b_elems: &[u32]) -> Vec<bool> {
    let ct = g.classes();
    let nclasses = ct.count();
    let reps: Vec<u32> =
        (0..nclasses as u32).filter(|&c| a[c as usize]).map(|c| ct.rep(c)).collect();
    let partials = crate::par::map_collect(&reps, |&r| {
        let mut m = vec![false; nclasses];
        for &t in b_elems {
            m[ct.class_of(g.mul(r, t)) as usize] = true;
        }
        m
    });
    merge_marks(nclasses, partials)
}

pub fn width(
    g: &FiniteGroup,
    w: &Word,
    mode: EvalMode,
    cap: u32,
) -> Result<WidthReport, ImagingError> {
    let start = Instant::now();
    let (img, _) = image_marks(g, w, mode)?;
    let ct = g.classes();
    let img_elems = marked_elements(ct, &img);

    let mut current = img.clone();
    let mut power_sizes = vec![marked_size(ct, &current)];
    let mut outcome = None;
    if power_sizes[0] == g.order() {
        outcome = Some(WidthOutcome::Finite { width: 1 });
    }
    let mut k = 1;
    while outcome.is_none() {
        if k >= cap {
            outcome = Some(WidthOutcome::ExceedsCap { cap });
            break;
        }
        k += 1;
        let step = product_marks(g, &current, &img_elems);
        let next: Vec<bool> = current.iter().zip(&step).map(|(&a, &b)| a | b).collect();
        if next == current {
            // 1 is in the image, so the powers are nested; a fixed point
            // is the subgroup generated by the image
            outcome = Some(WidthOutcome::Infinite {
                stabilized_at: k - 1,
                subgroup_order: marked_size(ct, &current),
            });
            break;
        }
        current = next;
        power_sizes.push(marked_size(ct, &current));
        if *power_sizes.last().unwrap() == g.order() {
            outcome = Some(WidthOutcome::Finite { width: k });
        }
    }

    Ok(WidthReport {
        word: w.render(),
        group: GroupSummary::new(g),
        outcome: outcome.unwrap(),
        power_sizes,
        mode,
        threads: crate::par::thread_count(),
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

/// Renames the generators of a word onto 1..k, k = support size; the
/// image set is unchanged and enumeration no longer pays for unused
/// variable slots.
fn compress_support(w: &Word) -> Word {
    let support = w.support();
    let images: Vec<Word> = (1..=w.rank())
        .map(|gen| match support.iter().position(|&s| s == gen) {
            Some(pos) => Word::generator(pos as u32 + 1),
            None => Word::identity(0),
        })
        .collect();
    w.substitute(&images).expect("arity matches rank")
}

pub fn waring_check(
    g: &FiniteGroup,
    words: &[Word],
    mode: EvalMode,
) -> Result<WaringReport, ImagingError> {
    let start = Instant::now();
    if !(2..=3).contains(&words.len()) {
        return Err(ImagingError::ProductArity { got: words.len() });
    }
    let mut seen: Vec<u32> = Vec::new();
    for w in words {
        for gen in w.support() {
            if seen.contains(&gen) {
                return Err(ImagingError::OverlappingSupport { gen });
            }
            seen.push(gen);
        }
    }

    let ct = g.classes();
    let mut product: Option<Vec<bool>> = None;
    let mut product_sizes = Vec::new();
    for w in words {
        let (marks, _) = image_marks(g, &compress_support(w), mode)?;
        product = Some(match product {
            None => marks,
            Some(acc) => {
                let factor_elems = marked_elements(ct, &marks);
                product_marks(g, &acc, &factor_elems)
            }
        });
        product_sizes.push(marked_size(ct, product.as_ref().unwrap()));
    }
    let final_marks = product.unwrap();
    let missed_classes = unmarked_classes(ct, &final_marks);
    let covers_group = missed_classes.is_empty();
    let covers_noncentral = missed_classes.iter().all(|c| c.class_size == 1);
    Ok(WaringReport {
        words: words.iter().map(|w| w.render()).collect(),
        group: GroupSummary::new(g),
        product_sizes,
        covers_group,
        covers_noncentral,
        missed_classes,
        mode,
        threads: crate::par::thread_count(),
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

/// Image check of one word across the family PSL(2, p); failures on
/// individual rows (build caps, cost caps) are recorded, not fatal.
pub fn surjectivity_scan(w: &Word, primes: &[u32], mode: EvalMode) -> ScanReport {
    let start = Instant::now();
    let rows = primes
        .iter()
        .map(|&p| {
            let row_start = Instant::now();
            let spec = GroupSpec::Psl { n: 2, p };
            let outcome = build_group(&spec)
                .map_err(ImagingError::from)
                .and_then(|g| image(&g, w, mode).map(|rep| (g.order(), rep)));
            match outcome {
                Ok((order, rep)) => ScanRow {
                    group: spec.to_string(),
                    p,
                    order: Some(order),
                    surjective: Some(rep.surjective),
                    missed_classes: rep.missed_classes,
                    error: None,
                    timing_ms: row_start.elapsed().as_millis() as u64,
                },
                Err(e) => ScanRow {
                    group: spec.to_string(),
                    p,
                    order: None,
                    surjective: None,
                    missed_classes: Vec::new(),
                    error: Some(e.to_string()),
                    timing_ms: row_start.elapsed().as_millis() as u64,
                },
            }
        })
        .collect();
    ScanReport {
        word: w.render(),
        mode,
        threads: crate::par::thread_count(),
        rows,
        timing_ms: start.elapsed().as_millis() as u64,
    }
}
